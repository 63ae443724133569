#include <ddec/edge_pipeline.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace ddec {

namespace {

struct FloatImage {
    int width;
    int height;
    std::vector<double> v;

    FloatImage(int w, int h) : width(w), height(h), v(static_cast<std::size_t>(w) * h, 0.0) {}
    double& at(int x, int y) { return v[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return v[static_cast<std::size_t>(y) * width + x]; }
    double clamped(int x, int y) const { return at(std::clamp(x, 0, width - 1), std::clamp(y, 0, height - 1)); }
};

std::vector<double> gaussian_kernel(double sigma)
{
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
        sum += k[i + radius];
    }
    for (auto& w : k)
        w /= sum;
    return k;
}

// Separable blur with replicated borders.
FloatImage smooth(const GrayImage& img, double sigma)
{
    const auto k = gaussian_kernel(sigma);
    const int radius = static_cast<int>(k.size() / 2);
    const int w = img.width();
    const int h = img.height();

    FloatImage rows(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += k[i + radius] * img.at(std::clamp(x + i, 0, w - 1), y);
            rows.at(x, y) = acc;
        }
    }
    FloatImage out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += k[i + radius] * rows.clamped(x, y + i);
            out.at(x, y) = acc;
        }
    }
    return out;
}

} // namespace

EdgeMap canny_edges(const GrayImage& img, const CannyParams& params)
{
    params.validate();
    const int w = img.width();
    const int h = img.height();
    if (w < 3 || h < 3)
        return EdgeMap(w, h);

    const FloatImage s = smooth(img, params.gaussian_sigma);

    FloatImage gx(w, h);
    FloatImage gy(w, h);
    FloatImage mag(w, h);
    double max_mag = 0.0;
    for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
            const double dx = (s.at(x + 1, y - 1) + 2 * s.at(x + 1, y) + s.at(x + 1, y + 1))
                - (s.at(x - 1, y - 1) + 2 * s.at(x - 1, y) + s.at(x - 1, y + 1));
            const double dy = (s.at(x - 1, y + 1) + 2 * s.at(x, y + 1) + s.at(x + 1, y + 1))
                - (s.at(x - 1, y - 1) + 2 * s.at(x, y - 1) + s.at(x + 1, y - 1));
            gx.at(x, y) = dx;
            gy.at(x, y) = dy;
            mag.at(x, y) = std::hypot(dx, dy);
            max_mag = std::max(max_mag, mag.at(x, y));
        }
    }
    // Flat or nearly flat images carry no edges; the floor absorbs blur round-off.
    if (max_mag < 1e-6)
        return EdgeMap(w, h);

    // Magnitudes within tol are treated as equal so that symmetric ridges
    // (two equally strong columns) are thinned to one pixel deterministically.
    const double tol = 1e-9 * max_mag;

    FloatImage nms(w, h);
    for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
            const double m = mag.at(x, y);
            if (m <= tol)
                continue;
            double angle = std::atan2(gy.at(x, y), gx.at(x, y)) * 180.0 / M_PI;
            if (angle < 0)
                angle += 180.0;
            int ox = 0;
            int oy = 0;
            if (angle < 22.5 || angle >= 157.5) {
                ox = 1;
            }
            else if (angle < 67.5) {
                ox = 1;
                oy = 1;
            }
            else if (angle < 112.5) {
                oy = 1;
            }
            else {
                ox = -1;
                oy = 1;
            }
            const double behind = mag.at(x - ox, y - oy);
            const double ahead = mag.at(x + ox, y + oy);
            if (m > behind + tol && m >= ahead - tol)
                nms.at(x, y) = m;
        }
    }

    const double high = params.high_threshold * max_mag;
    const double low = params.low_threshold * max_mag;

    std::vector<std::uint8_t> mask(static_cast<std::size_t>(w) * h, 0);
    std::vector<Pixel> stack;
    for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
            if (nms.at(x, y) > 0.0 && nms.at(x, y) >= high && mask[static_cast<std::size_t>(y) * w + x] == 0) {
                mask[static_cast<std::size_t>(y) * w + x] = 1;
                stack.push_back({x, y});
                while (!stack.empty()) {
                    const Pixel p = stack.back();
                    stack.pop_back();
                    for (int dy = -1; dy <= 1; ++dy) {
                        for (int dx = -1; dx <= 1; ++dx) {
                            const int nx = p.x + dx;
                            const int ny = p.y + dy;
                            if (nx < 1 || ny < 1 || nx >= w - 1 || ny >= h - 1)
                                continue;
                            auto& m = mask[static_cast<std::size_t>(ny) * w + nx];
                            if (m == 0 && nms.at(nx, ny) > 0.0 && nms.at(nx, ny) >= low) {
                                m = 1;
                                stack.push_back({nx, ny});
                            }
                        }
                    }
                }
            }
        }
    }
    return EdgeMap(w, h, std::move(mask));
}

} // namespace ddec

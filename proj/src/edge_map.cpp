#include <ddec/edge_pipeline.hpp>

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace ddec {

namespace {

void check_dims(int width, int height)
{
    if (width < 1 || height < 1)
        throw std::invalid_argument("image dimensions must be at least 1x1");
}

} // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill) : _width(width), _height(height)
{
    check_dims(width, height);
    _data.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> data)
    : _width(width), _height(height), _data(std::move(data))
{
    check_dims(width, height);
    if (_data.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("GrayImage: data length does not match width*height");
}

EdgeMap::EdgeMap(int width, int height) : EdgeMap(width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0), 0)) {}

EdgeMap::EdgeMap(int width, int height, std::vector<std::uint8_t> mask)
    : _width(width), _height(height), _mask(std::move(mask))
{
    check_dims(width, height);
    if (_mask.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("EdgeMap: mask length does not match width*height");
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            auto& m = _mask[static_cast<std::size_t>(y) * width + x];
            if (m != 0) {
                m = 1;
                _points.push_back({x, y});
            }
        }
    }
}

EdgeMap EdgeMap::from_points(int width, int height, std::span<const Pixel> pixels)
{
    check_dims(width, height);
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(width) * height, 0);
    for (const auto& p : pixels) {
        if (p.x >= 0 && p.y >= 0 && p.x < width && p.y < height)
            mask[static_cast<std::size_t>(p.y) * width + p.x] = 1;
    }
    return EdgeMap(width, height, std::move(mask));
}

void CannyParams::validate() const
{
    if (!(gaussian_sigma > 0.0))
        throw std::invalid_argument("CannyParams: gaussian_sigma must be positive");
    if (!(low_threshold >= 0.0 && low_threshold <= high_threshold && high_threshold <= 1.0))
        throw std::invalid_argument("CannyParams: thresholds must satisfy 0 <= low <= high <= 1");
}

} // namespace ddec

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddec {

/// Integer pixel coordinate. x is the column, y the row, origin top-left.
struct Pixel {
    int x = 0;
    int y = 0;

    friend bool operator==(const Pixel&, const Pixel&) = default;
    friend auto operator<=>(const Pixel&, const Pixel&) = default;
};

/// Failure to read, parse or write an image file.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 8-bit grayscale raster, row-major.
class GrayImage {
public:
    GrayImage(int width, int height, std::uint8_t fill = 0);
    GrayImage(int width, int height, std::vector<std::uint8_t> data);

    int width() const { return _width; }
    int height() const { return _height; }
    std::span<const std::uint8_t> data() const { return _data; }

    std::uint8_t at(int x, int y) const { return _data[static_cast<std::size_t>(y) * _width + x]; }
    void set(int x, int y, std::uint8_t v) { _data[static_cast<std::size_t>(y) * _width + x] = v; }
    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < _width && y < _height; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    int _width;
    int _height;
    std::vector<std::uint8_t> _data;
};

/// Binary edge raster together with its row-major list of edge points.
///
/// The point list is the search space of the detector: a candidate circle is a
/// triplet of 1-based indices into points(). Construction always rebuilds the
/// list from the mask, so the ordering is a pure function of the mask.
class EdgeMap {
public:
    EdgeMap(int width, int height);
    EdgeMap(int width, int height, std::vector<std::uint8_t> mask);
    /// Pixels outside the frame are dropped.
    static EdgeMap from_points(int width, int height, std::span<const Pixel> pixels);

    int width() const { return _width; }
    int height() const { return _height; }
    std::size_t np() const { return _points.size(); }
    std::span<const Pixel> points() const { return _points; }
    std::span<const std::uint8_t> mask() const { return _mask; }

    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < _width && y < _height; }
    bool is_edge(int x, int y) const { return contains(x, y) && _mask[static_cast<std::size_t>(y) * _width + x] != 0; }

    friend bool operator==(const EdgeMap&, const EdgeMap&) = default;

private:
    int _width;
    int _height;
    std::vector<std::uint8_t> _mask;
    std::vector<Pixel> _points;
};

struct CannyParams {
    double gaussian_sigma = 1.4;
    /// Fractions of the maximum gradient magnitude.
    double low_threshold = 0.1;
    double high_threshold = 0.3;

    void validate() const;
};

GrayImage load_gray_image(const std::filesystem::path& path);
EdgeMap load_edge_map(const std::filesystem::path& path);

enum class NetpbmEncoding { ascii, binary };

void save_gray_image(const GrayImage& img, const std::filesystem::path& path, NetpbmEncoding enc = NetpbmEncoding::binary);
void save_edge_map(const EdgeMap& edges, const std::filesystem::path& path, NetpbmEncoding enc = NetpbmEncoding::binary);

/// Gaussian smoothing, Sobel gradients, non-maximum suppression and
/// hysteresis thresholding. Thresholds are relative to the largest gradient
/// magnitude in the image; the outermost pixel ring is never an edge.
EdgeMap canny_edges(const GrayImage& img, const CannyParams& params = {});

} // namespace ddec

// Netpbm (PBM P1/P4, PGM P2/P5) readers and writers.

#include <ddec/edge_pipeline.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

namespace ddec {

namespace {

class HeaderReader {
public:
    HeaderReader(const std::string& bytes, const std::string& origin) : _bytes(bytes), _origin(origin) {}

    std::string magic()
    {
        if (_bytes.size() < 2 || _bytes[0] != 'P')
            fail("not a Netpbm file");
        _pos = 2;
        return _bytes.substr(0, 2);
    }

    long number()
    {
        skip_space_and_comments();
        if (_pos >= _bytes.size() || !std::isdigit(static_cast<unsigned char>(_bytes[_pos])))
            fail("malformed header: expected a decimal number");
        long v = 0;
        while (_pos < _bytes.size() && std::isdigit(static_cast<unsigned char>(_bytes[_pos]))) {
            v = v * 10 + (_bytes[_pos] - '0');
            if (v > 1'000'000'000)
                fail("malformed header: number out of range");
            ++_pos;
        }
        return v;
    }

    // Binary rasters start after exactly one whitespace character.
    void end_of_header()
    {
        if (_pos >= _bytes.size() || !std::isspace(static_cast<unsigned char>(_bytes[_pos])))
            fail("malformed header: missing whitespace before raster");
        ++_pos;
    }

    void skip_space_and_comments()
    {
        while (_pos < _bytes.size()) {
            const char c = _bytes[_pos];
            if (c == '#') {
                while (_pos < _bytes.size() && _bytes[_pos] != '\n' && _bytes[_pos] != '\r')
                    ++_pos;
            }
            else if (std::isspace(static_cast<unsigned char>(c))) {
                ++_pos;
            }
            else {
                break;
            }
        }
    }

    // P1 rasters may pack digits without separators.
    int bit()
    {
        skip_space_and_comments();
        if (_pos >= _bytes.size())
            fail("truncated raster");
        const char c = _bytes[_pos++];
        if (c != '0' && c != '1')
            fail("malformed PBM raster: expected 0 or 1");
        return c - '0';
    }

    std::size_t pos() const { return _pos; }
    std::size_t remaining() const { return _bytes.size() - _pos; }

    [[noreturn]] void fail(const std::string& what) const { throw IoError(_origin + ": " + what); }

private:
    const std::string& _bytes;
    std::string _origin;
    std::size_t _pos = 0;
};

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(path.string() + ": cannot open file");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw IoError(path.string() + ": read error");
    return bytes;
}

void write_file(const std::filesystem::path& path, const std::string& bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError(path.string() + ": cannot open file for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError(path.string() + ": write error");
}

struct RawRaster {
    int width = 0;
    int height = 0;
    // Either a bit raster (PBM, 1 = black) or samples with a maxval (PGM).
    bool bitmap = false;
    long maxval = 1;
    std::vector<std::uint16_t> samples;
};

RawRaster decode(const std::filesystem::path& path)
{
    const std::string bytes = read_file(path);
    HeaderReader hdr(bytes, path.string());
    const std::string magic = hdr.magic();
    if (magic != "P1" && magic != "P2" && magic != "P4" && magic != "P5")
        hdr.fail("unsupported format " + magic + " (expected P1, P2, P4 or P5)");

    RawRaster raw;
    raw.bitmap = magic == "P1" || magic == "P4";
    const long w = hdr.number();
    const long h = hdr.number();
    if (w < 1 || h < 1 || w * h > 400'000'000L)
        hdr.fail("malformed header: invalid dimensions");
    raw.width = static_cast<int>(w);
    raw.height = static_cast<int>(h);
    if (!raw.bitmap) {
        raw.maxval = hdr.number();
        if (raw.maxval < 1 || raw.maxval > 65535)
            hdr.fail("malformed header: maxval must be in [1, 65535]");
    }

    const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    raw.samples.resize(n);

    if (magic == "P1") {
        for (std::size_t i = 0; i < n; ++i)
            raw.samples[i] = static_cast<std::uint16_t>(hdr.bit());
    }
    else if (magic == "P2") {
        for (std::size_t i = 0; i < n; ++i) {
            const long v = hdr.number();
            if (v > raw.maxval)
                hdr.fail("sample exceeds maxval");
            raw.samples[i] = static_cast<std::uint16_t>(v);
        }
    }
    else if (magic == "P4") {
        hdr.end_of_header();
        const std::size_t row_bytes = (static_cast<std::size_t>(w) + 7) / 8;
        if (hdr.remaining() < row_bytes * static_cast<std::size_t>(h))
            hdr.fail("truncated raster");
        const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + hdr.pos());
        for (long y = 0; y < h; ++y) {
            for (long x = 0; x < w; ++x) {
                const unsigned char byte = p[static_cast<std::size_t>(y) * row_bytes + static_cast<std::size_t>(x) / 8];
                raw.samples[static_cast<std::size_t>(y) * w + x] = (byte >> (7 - (x % 8))) & 1u;
            }
        }
    }
    else {
        hdr.end_of_header();
        const std::size_t bps = raw.maxval > 255 ? 2 : 1;
        if (hdr.remaining() < n * bps)
            hdr.fail("truncated raster");
        const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + hdr.pos());
        for (std::size_t i = 0; i < n; ++i) {
            const unsigned v = bps == 2 ? (static_cast<unsigned>(p[2 * i]) << 8) | p[2 * i + 1] : p[i];
            if (v > static_cast<unsigned>(raw.maxval))
                hdr.fail("sample exceeds maxval");
            raw.samples[i] = static_cast<std::uint16_t>(v);
        }
    }
    return raw;
}

} // namespace

GrayImage load_gray_image(const std::filesystem::path& path)
{
    RawRaster raw = decode(path);
    if (raw.bitmap)
        throw IoError(path.string() + ": expected a PGM (P2/P5) grayscale image, got a PBM bitmap");
    std::vector<std::uint8_t> data(raw.samples.size());
    const auto maxval = static_cast<std::uint64_t>(raw.maxval);
    for (std::size_t i = 0; i < data.size(); ++i) {
        // round(v * 255 / maxval), halves rounded up
        data[i] = static_cast<std::uint8_t>((2 * 255 * static_cast<std::uint64_t>(raw.samples[i]) + maxval) / (2 * maxval));
    }
    return GrayImage(raw.width, raw.height, std::move(data));
}

EdgeMap load_edge_map(const std::filesystem::path& path)
{
    RawRaster raw = decode(path);
    std::vector<std::uint8_t> mask(raw.samples.size());
    for (std::size_t i = 0; i < mask.size(); ++i)
        mask[i] = raw.samples[i] != 0 ? 1 : 0;
    return EdgeMap(raw.width, raw.height, std::move(mask));
}

void save_gray_image(const GrayImage& img, const std::filesystem::path& path, NetpbmEncoding enc)
{
    std::ostringstream out;
    const auto data = img.data();
    if (enc == NetpbmEncoding::binary) {
        out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
        out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    }
    else {
        out << "P2\n" << img.width() << ' ' << img.height() << "\n255\n";
        for (int y = 0; y < img.height(); ++y) {
            for (int x = 0; x < img.width(); ++x)
                out << (x ? " " : "") << static_cast<int>(img.at(x, y));
            out << '\n';
        }
    }
    write_file(path, out.str());
}

void save_edge_map(const EdgeMap& edges, const std::filesystem::path& path, NetpbmEncoding enc)
{
    std::ostringstream out;
    const int w = edges.width();
    const int h = edges.height();
    if (enc == NetpbmEncoding::binary) {
        out << "P4\n" << w << ' ' << h << '\n';
        const std::size_t row_bytes = (static_cast<std::size_t>(w) + 7) / 8;
        std::string row(row_bytes, '\0');
        for (int y = 0; y < h; ++y) {
            std::fill(row.begin(), row.end(), '\0');
            for (int x = 0; x < w; ++x) {
                if (edges.is_edge(x, y))
                    row[static_cast<std::size_t>(x) / 8] = static_cast<char>(static_cast<unsigned char>(row[x / 8]) | (0x80u >> (x % 8)));
            }
            out << row;
        }
    }
    else {
        out << "P1\n" << w << ' ' << h << '\n';
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x)
                out << (x ? " " : "") << (edges.is_edge(x, y) ? '1' : '0');
            out << '\n';
        }
    }
    write_file(path, out.str());
}

} // namespace ddec

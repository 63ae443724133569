#include "support.hpp"

#include <ddec/edge_pipeline.hpp>

#include <doctest.h>

#include <cmath>

using namespace ddec;

TEST_CASE("plain PGM with comments decodes")
{
    testing::TempDir dir;
    testing::write_bytes(dir / "a.pgm", "P2\n# a comment\n3 3 # trailing\n255\n0 0 0\n0 0 0\n0 0 0\n");
    const GrayImage img = load_gray_image(dir / "a.pgm");
    CHECK(img == GrayImage(3, 3, 0));
}

TEST_CASE("16-bit PGM is rescaled to 8 bits")
{
    testing::TempDir dir;
    // Big-endian samples 0, 65535, 32768, 257.
    std::string raw = "P5\n2 2\n65535\n";
    raw += std::string("\x00\x00\xff\xff\x80\x00\x01\x01", 8);
    testing::write_bytes(dir / "wide.pgm", raw);
    const GrayImage img = load_gray_image(dir / "wide.pgm");
    // v * 255 / 65535: 0, 255, 127.50..., 1.0
    CHECK(img.at(0, 0) == 0);
    CHECK(img.at(1, 0) == 255);
    CHECK(img.at(0, 1) == 128);
    CHECK(img.at(1, 1) == 1);
}

TEST_CASE("plain 16-bit maxval")
{
    testing::TempDir dir;
    testing::write_bytes(dir / "p.pgm", "P2 2 1 1000 500 1000\n");
    const GrayImage img = load_gray_image(dir / "p.pgm");
    CHECK(img.at(0, 0) == 128); // 127.5 rounds up
    CHECK(img.at(1, 0) == 255);
}

TEST_CASE("missing and malformed files raise IoError")
{
    testing::TempDir dir;
    CHECK_THROWS_AS(load_gray_image(dir / "nope.pgm"), IoError);
    CHECK_THROWS_AS(load_edge_map(dir / "nope.pbm"), IoError);
    testing::write_bytes(dir / "bad.pgm", "P7\n1 1\n255\n\0");
    CHECK_THROWS_AS(load_gray_image(dir / "bad.pgm"), IoError);
    testing::write_bytes(dir / "short.pgm", "P5\n4 4\n255\nab");
    CHECK_THROWS_AS(load_gray_image(dir / "short.pgm"), IoError);
    testing::write_bytes(dir / "range.pgm", "P2\n1 1\n10\n11\n");
    CHECK_THROWS_AS(load_gray_image(dir / "range.pgm"), IoError);
}

TEST_CASE("PBM decode: points in row-major order")
{
    testing::TempDir dir;
    testing::write_bytes(dir / "three.pbm", "P1\n# three set pixels\n4 3\n0 0 0 1\n1 0 0 0\n0 0 1 0\n");
    const EdgeMap e = load_edge_map(dir / "three.pbm");
    REQUIRE(e.np() == 3);
    CHECK(e.points()[0] == Pixel{3, 0});
    CHECK(e.points()[1] == Pixel{0, 1});
    CHECK(e.points()[2] == Pixel{2, 2});

    testing::write_bytes(dir / "zero.pbm", "P1\n2 2\n0000\n");
    CHECK(load_edge_map(dir / "zero.pbm").np() == 0);
}

TEST_CASE("raw PBM rows are padded to whole bytes")
{
    testing::TempDir dir;
    // Width 10: two bytes per row. Row 0 sets x=0 and x=9, row 1 sets x=8.
    std::string raw = "P4\n10 2\n";
    raw += std::string("\x80\x40\x00\x80", 4);
    testing::write_bytes(dir / "pad.pbm", raw);
    const EdgeMap e = load_edge_map(dir / "pad.pbm");
    REQUIRE(e.np() == 3);
    CHECK(e.points()[0] == Pixel{0, 0});
    CHECK(e.points()[1] == Pixel{9, 0});
    CHECK(e.points()[2] == Pixel{8, 1});
}

TEST_CASE("edge map and image round trips")
{
    testing::TempDir dir;
    std::vector<std::uint8_t> mask(13 * 7);
    std::mt19937 gen(5);
    for (auto& m : mask)
        m = gen() % 3 == 0;
    const EdgeMap e(13, 7, mask);
    for (const auto enc : {NetpbmEncoding::ascii, NetpbmEncoding::binary}) {
        save_edge_map(e, dir / "e.pbm", enc);
        CHECK(load_edge_map(dir / "e.pbm") == e);
    }

    std::vector<std::uint8_t> pix(9 * 5);
    for (auto& p : pix)
        p = static_cast<std::uint8_t>(gen());
    const GrayImage img(9, 5, pix);
    for (const auto enc : {NetpbmEncoding::ascii, NetpbmEncoding::binary}) {
        save_gray_image(img, dir / "g.pgm", enc);
        CHECK(load_gray_image(dir / "g.pgm") == img);
    }
}

TEST_CASE("gray PGM loads as an edge map with nonzero as edge")
{
    testing::TempDir dir;
    testing::write_bytes(dir / "g.pgm", "P2\n3 1\n255\n0 7 255\n");
    const EdgeMap e = load_edge_map(dir / "g.pgm");
    CHECK(e.np() == 2);
}

TEST_CASE("EdgeMap::from_points sorts, deduplicates and clips")
{
    const std::vector<Pixel> pts{{2, 1}, {0, 0}, {2, 1}, {1, 0}};
    const EdgeMap e = EdgeMap::from_points(3, 2, pts);
    REQUIRE(e.np() == 3);
    CHECK(e.points()[0] == Pixel{0, 0});
    CHECK(e.points()[1] == Pixel{1, 0});
    CHECK(e.points()[2] == Pixel{2, 1});
    CHECK(EdgeMap::from_points(3, 2, std::vector<Pixel>{{3, 0}, {-1, 1}, {1, 1}}).np() == 1);
}

TEST_CASE("canny: constant image has no edges")
{
    CHECK(canny_edges(GrayImage(20, 20, 128)).np() == 0);
    CHECK(canny_edges(GrayImage(2, 2, 0)).np() == 0);
}

TEST_CASE("canny: vertical step gives a single one-pixel line")
{
    std::vector<std::uint8_t> pix(8 * 8);
    for (int y = 0; y < 8; ++y)
        for (int x = 4; x < 8; ++x)
            pix[y * 8 + x] = 255;
    const EdgeMap e = canny_edges(GrayImage(8, 8, pix));
    // The step sits between columns 3 and 4; the two columns carry equal
    // gradient by symmetry, so exactly one survives suppression.
    REQUIRE(e.np() == 6);
    const int column = e.points()[0].x;
    CHECK((column == 3 || column == 4));
    int row = 1;
    for (const auto& p : e.points()) {
        CHECK(p.x == column);
        CHECK(p.y == row++);
    }
}

TEST_CASE("canny: filled disk edges hug the circumference")
{
    std::vector<std::uint8_t> pix(200 * 200, 0);
    for (int y = 0; y < 200; ++y)
        for (int x = 0; x < 200; ++x)
            if ((x - 100) * (x - 100) + (y - 100) * (y - 100) <= 50 * 50)
                pix[y * 200 + x] = 255;
    const EdgeMap e = canny_edges(GrayImage(200, 200, pix));
    CHECK(e.np() > 250);
    for (const auto& p : e.points())
        CHECK(std::abs(std::hypot(p.x - 100.0, p.y - 100.0) - 50.0) <= 2.0);
}

TEST_CASE("canny params are validated")
{
    CannyParams p;
    p.low_threshold = 0.5;
    p.high_threshold = 0.2;
    CHECK_THROWS(p.validate());
    CHECK_THROWS(canny_edges(GrayImage(5, 5), p));
}

#include <doctest.h>

#include <filesystem>
#include <random>
#include <string>

#include "../support.hpp"
#include "scriptid/error.hpp"
#include "scriptid/raster.hpp"

using namespace scriptid;

namespace {

FormatError::Kind kind_of(std::string_view bytes) {
  try {
    decode_pnm(bytes);
  } catch (const FormatError& e) {
    return e.kind();
  }
  FAIL("decode_pnm accepted malformed input");
  return FormatError::Kind::BadPayload;
}

}  // namespace

TEST_CASE("raster dimensions must be positive") {
  CHECK_THROWS_AS(BinaryRaster(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(BinaryRaster(3, -1), std::invalid_argument);
  BinaryRaster img(4, 2);
  CHECK(img.ink_count() == 0);
  CHECK_FALSE(img.sample(-1, 0));
  CHECK_FALSE(img.sample(2, 0));
  img.fill_rect(-5, -5, 10, 10);
  CHECK(img.ink_count() == 8);
}

TEST_CASE("plain bitmap decodes cell by cell") {
  const auto img = std::get<BinaryRaster>(decode_pnm("P1 3 2\n1 0 1\n0 1 0\n"));
  CHECK(img.width() == 3);
  CHECK(img.height() == 2);
  CHECK(img.ink(0, 0));
  CHECK_FALSE(img.ink(0, 1));
  CHECK(img.ink(0, 2));
  CHECK(img.ink(1, 1));
  CHECK(img.ink_count() == 3);

  const auto packed = std::get<BinaryRaster>(decode_pnm("P1\n# comment\n3 2\n101010"));
  CHECK(packed == img);
}

TEST_CASE("malformed maps are classified") {
  CHECK(kind_of("") == FormatError::Kind::MalformedHeader);
  CHECK(kind_of("P7 1 1 1") == FormatError::Kind::MalformedHeader);
  CHECK(kind_of("P1 4") == FormatError::Kind::MalformedHeader);
  CHECK(kind_of("P1 -4 4 1") == FormatError::Kind::MalformedHeader);
  CHECK(kind_of("P1 4 4\n1 0 1 0 1 0 1 0") == FormatError::Kind::TruncatedPayload);
  CHECK(kind_of("P1 2 1\n1 7") == FormatError::Kind::BadPayload);
  CHECK(kind_of("P2 2 1 255\n10 300") == FormatError::Kind::BadPayload);
  CHECK(kind_of(std::string("P4 9 2\n") + '\xff') == FormatError::Kind::TruncatedPayload);
  CHECK(kind_of("P5 2 2 255\nab") == FormatError::Kind::TruncatedPayload);
}

TEST_CASE("raw bitmap rows are byte padded") {
  BinaryRaster img(11, 3);
  img.set(0, 0);
  img.set(1, 10);
  img.set(2, 7);
  img.set(2, 8);
  const std::string bytes = encode_pnm(img);
  const std::string header = "P4\n11 3\n";
  REQUIRE(bytes.size() == header.size() + 3 * 2);
  CHECK(bytes.substr(0, header.size()) == header);
  CHECK(static_cast<unsigned char>(bytes[header.size()]) == 0x80);
  CHECK(static_cast<unsigned char>(bytes[header.size() + 3]) == 0x20);
  CHECK(static_cast<unsigned char>(bytes[header.size() + 4]) == 0x01);
  CHECK(static_cast<unsigned char>(bytes[header.size() + 5]) == 0x80);
  CHECK(std::get<BinaryRaster>(decode_pnm(bytes)) == img);
  CHECK(std::get<BinaryRaster>(decode_pnm(encode_pnm(img, PnmFormat::PlainBitmap))) == img);
}

TEST_CASE("graymaps round trip and scale") {
  GrayRaster gray(3, 2, 0);
  gray.set(0, 1, 200);
  gray.set(1, 2, 127);
  CHECK(std::get<GrayRaster>(decode_pnm(encode_pnm(gray))) == gray);
  CHECK(std::get<GrayRaster>(decode_pnm(encode_pnm(gray, PnmFormat::PlainGraymap))) == gray);

  const auto scaled = std::get<GrayRaster>(decode_pnm("P2 2 1 15\n0 15"));
  CHECK(scaled.at(0, 0) == 0);
  CHECK(scaled.at(0, 1) == 255);

  const std::string wide = std::string("P5 2 1 65535\n") + '\xff' + '\xff' + '\x00' + '\x00';
  const auto deep = std::get<GrayRaster>(decode_pnm(wide));
  CHECK(deep.at(0, 0) == 255);
  CHECK(deep.at(0, 1) == 0);
}

TEST_CASE("files round trip and missing files are I/O errors") {
  const auto dir = std::filesystem::temp_directory_path() / "scriptid_raster_test";
  std::filesystem::create_directories(dir);
  BinaryRaster img(5, 4);
  img.fill_rect(1, 1, 2, 3);
  save(img, dir / "a.pbm");
  CHECK(load_binary(dir / "a.pbm") == img);

  GrayRaster gray(2, 2, 255);
  gray.set(1, 1, 0);
  save(gray, dir / "b.pgm");
  const BinaryRaster bin = load_binary(dir / "b.pgm");
  CHECK(bin.ink_count() == 1);
  CHECK(bin.ink(1, 1));

  CHECK_THROWS_AS(load(dir / "missing.pbm"), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("binarize counts dark cells") {
  CHECK(binarize(GrayRaster(7, 5, 255)).ink_count() == 0);
  CHECK(binarize(GrayRaster(7, 5, 0)).ink_count() == 35);

  for (int phase = 0; phase < 2; ++phase) {
    GrayRaster board(7, 5, 255);
    int dark = 0;
    for (int r = 0; r < 5; ++r) {
      for (int c = 0; c < 7; ++c) {
        if ((r + c + phase) % 2 == 0) {
          board.set(r, c, 0);
          ++dark;
        }
      }
    }
    CHECK(binarize(board).ink_count() == static_cast<std::size_t>(dark));
  }

  GrayRaster edge(2, 1, 128);
  edge.set(0, 0, 127);
  const BinaryRaster b = binarize(edge, 128);
  CHECK(b.ink(0, 0));
  CHECK_FALSE(b.ink(0, 1));
}

TEST_CASE("dilation by a square") {
  BinaryRaster dot(11, 11);
  dot.set(5, 5);
  CHECK(dilate(dot, 0) == dot);
  const BinaryRaster grown = dilate(dot, 1);
  CHECK(grown.ink_count() == 9);
  for (int r = 4; r <= 6; ++r) {
    for (int c = 4; c <= 6; ++c) CHECK(grown.ink(r, c));
  }

  BinaryRaster pair(10, 5);
  pair.set(2, 3);
  pair.set(2, 5);
  const BinaryRaster joined = dilate(pair, 1);
  CHECK(joined.ink_count() == 15);
  CHECK(testing::count_regions(joined, true, true) == 1);

  CHECK_THROWS_AS(dilate(dot, -1), std::invalid_argument);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const BinaryRaster img = testing::random_raster(rng, 30);
    const int radius = static_cast<int>(rng() % 4);
    CHECK(dilate(img, radius) == testing::brute_dilate(img, radius));
  }
}

TEST_CASE("pad, crop and translate") {
  BinaryRaster img(3, 3);
  img.set(0, 0);
  img.set(2, 1);
  const BinaryRaster padded = pad(img, 2);
  CHECK(padded.width() == 7);
  CHECK(padded.height() == 7);
  CHECK(padded.ink(2, 2));
  CHECK(padded.ink(4, 3));
  CHECK(padded.ink_count() == 2);

  const BinaryRaster strip = crop_rows(padded, 4, 4);
  CHECK(strip.height() == 1);
  CHECK(strip.ink(0, 3));

  const BinaryRaster moved = translate(img, 1, 1);
  CHECK(moved.ink(1, 1));
  CHECK_FALSE(moved.ink(0, 0));
  CHECK(moved.ink_count() == 1);  // (2,1) moved off the raster
}

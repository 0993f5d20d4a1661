#include <doctest.h>

#include <algorithm>
#include <set>

#include "../support.hpp"
#include "scriptid/error.hpp"
#include "scriptid/layout.hpp"

using namespace scriptid;

TEST_CASE("lines split at blank rows") {
  CHECK(extract_lines(BinaryRaster(20, 20)).empty());

  BinaryRaster page(30, 60);
  page.fill_rect(10, 2, 20, 25);
  page.fill_rect(40, 5, 50, 20);
  const auto lines = extract_lines(page);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == LineBand{10, 20});
  CHECK(lines[1] == LineBand{40, 50});
}

TEST_CASE("short gaps do not split a line") {
  BinaryRaster page(10, 12);
  page.fill_rect(1, 0, 4, 9);
  page.fill_rect(6, 0, 9, 9);  // row 5 blank
  CHECK(extract_lines(page, {2, 0.0}).size() == 1);
  CHECK(extract_lines(page, {1, 0.0}).size() == 2);

  BinaryRaster wide(10, 12);
  wide.fill_rect(1, 0, 4, 9);
  wide.fill_rect(7, 0, 9, 9);  // rows 5-6 blank
  CHECK(extract_lines(wide, {2, 0.0}).size() == 2);
  CHECK(extract_lines(wide, {3, 0.0}).size() == 1);
}

TEST_CASE("thin bands fold into the nearest line") {
  BinaryRaster page(20, 60);
  page.fill_rect(2, 4, 4, 6);     // dots, 3 rows, 6 blank rows above the body
  page.fill_rect(11, 0, 21, 19);  // body, 11 rows
  page.fill_rect(38, 0, 48, 19);  // second line
  CHECK(extract_lines(page, {2, 0.0}).size() == 3);
  const auto lines = extract_lines(page, {2, 0.6});
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == LineBand{2, 21});
  CHECK(lines[1] == LineBand{38, 48});
}

TEST_CASE("baselines bound the dense band") {
  BinaryRaster bar(20, 30);
  bar.fill_rect(10, 0, 12, 19);
  CHECK(estimate_baselines(bar) == Baselines{10, 12});

  BinaryRaster stroke(10, 10);
  stroke.fill_rect(7, 2, 7, 8);
  CHECK(estimate_baselines(stroke) == Baselines{7, 7});

  BinaryRaster word(40, 40);
  word.fill_rect(20, 0, 30, 39);
  word.fill_rect(5, 3, 19, 4);  // sparse ascender
  const Baselines b = estimate_baselines(word);
  CHECK(b.upper_row == 20);
  CHECK(b.lower_row == 30);
  CHECK(b.band_height() == 10);
  CHECK(b.in_band(25));
  CHECK_FALSE(b.in_band(19));

  CHECK_THROWS_AS(estimate_baselines(BinaryRaster(5, 5)), NoInkError);
}

TEST_CASE("baseline run must reach the peak") {
  // A wide run at 60% of the peak and a narrow run at the peak.
  BinaryRaster img(10, 20);
  img.fill_rect(0, 0, 7, 5);
  img.fill_rect(12, 0, 13, 9);
  CHECK(estimate_baselines(img) == Baselines{12, 13});
}

TEST_CASE("alpha widens or narrows the band") {
  BinaryRaster img(10, 12);
  img.fill_rect(2, 0, 3, 3);  // 4 wide
  img.fill_rect(4, 0, 8, 9);  // 10 wide
  CHECK(estimate_baselines(img, {0.5}) == Baselines{4, 8});
  CHECK(estimate_baselines(img, {0.3}) == Baselines{2, 8});
}

TEST_CASE("PAWs from components") {
  BinaryRaster one(20, 12);
  one.fill_rect(4, 2, 8, 15);
  CHECK(segment_paws(one).size() == 1);

  BinaryRaster three(40, 12);
  three.fill_rect(4, 2, 8, 8);
  three.fill_rect(4, 12, 8, 20);
  three.fill_rect(4, 25, 8, 35);
  const auto paws = segment_paws(three, Baselines{4, 8});
  REQUIRE(paws.size() == 3);
  CHECK(paws[0].bbox.min_col == 25);  // rightmost first
  CHECK(paws[2].bbox.min_col == 2);
  for (std::size_t i = 0; i < paws.size(); ++i) CHECK(paws[i].order_index == static_cast<int>(i));

  CHECK(segment_paws(BinaryRaster(5, 5)).empty());
}

TEST_CASE("dots join the body they overlap") {
  BinaryRaster img(40, 24);
  img.fill_rect(8, 2, 14, 16);
  img.fill_rect(8, 22, 14, 36);
  img.fill_rect(2, 14, 4, 18);    // overlaps left body by 3 columns, right by 0
  img.fill_rect(18, 24, 20, 26);  // below the right body
  const Baselines b{8, 14};
  const auto paws = segment_paws(img, b);
  REQUIRE(paws.size() == 2);
  CHECK(paws[0].attached_components.size() == 1);
  CHECK(paws[1].attached_components.size() == 1);
  CHECK(paws[1].bbox.min_row == 2);
  CHECK(paws[0].bbox.max_row == 20);

  // PAW pixels partition the ink.
  std::set<Point> seen;
  std::size_t total = 0;
  for (const Paw& paw : paws) {
    total += paw.pixels.size();
    seen.insert(paw.pixels.begin(), paw.pixels.end());
  }
  CHECK(total == img.ink_count());
  CHECK(seen.size() == total);
}

TEST_CASE("overlap ties go to the nearest centroid") {
  BinaryRaster img(40, 24);
  img.fill_rect(8, 2, 14, 10);
  img.fill_rect(8, 12, 20, 30);
  img.fill_rect(2, 9, 4, 13);  // 2 columns over each body
  const auto paws = segment_paws(img, Baselines{8, 14});
  REQUIRE(paws.size() == 2);
  // The left body's centroid (col 6) is nearer to the dot (col 11) than the
  // right one's (col 21).
  CHECK(paws[1].attached_components.size() == 1);
  CHECK(paws[0].attached_components.empty());
}

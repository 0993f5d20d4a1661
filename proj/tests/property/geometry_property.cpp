#include <doctest.h>

#include <random>

#include "../support.hpp"
#include "scriptid/geometry.hpp"
#include "scriptid/layout.hpp"

using namespace scriptid;

namespace {

constexpr int kRasters = 1000;

bool subset(const BinaryRaster& a, const BinaryRaster& b) {
  for (int r = 0; r < a.height(); ++r) {
    for (int c = 0; c < a.width(); ++c) {
      if (a.ink(r, c) && !b.ink(r, c)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("geometry invariants over random rasters") {
  std::mt19937_64 rng(20240611);
  int mass = 0, outer = 0, inner = 0, monotone = 0, merge = 0, walks = 0;
  for (int i = 0; i < kRasters; ++i) {
    const BinaryRaster img = testing::random_raster(rng, 64);
    const auto ink = static_cast<long long>(img.ink_count());
    if (project(img, Axis::Horizontal).total() != ink || project(img, Axis::Vertical).total() != ink) {
      ++mass;
    }

    const auto chains = trace_contours(img);
    int outers = 0;
    int inners = 0;
    for (const ContourChain& chain : chains) {
      (chain.polarity == Polarity::Outer ? outers : inners)++;
      for (const Point& p : chain.points) {
        if (!img.sample(p)) ++walks;
      }
    }
    if (outers != testing::count_regions(img, true, true)) ++outer;
    if (inners != testing::count_holes(img)) ++inner;

    const int radius = static_cast<int>(rng() % 3);
    const BinaryRaster grown = dilate(img, radius);
    if (!subset(img, grown)) ++monotone;
    if (testing::count_regions(grown, true, true) > testing::count_regions(img, true, true)) ++merge;
  }
  CHECK(mass == 0);
  CHECK(outer == 0);
  CHECK(inner == 0);
  CHECK(monotone == 0);
  CHECK(merge == 0);
  CHECK(walks == 0);
}

TEST_CASE("baselines shift with the word") {
  std::mt19937_64 rng(99);
  int failures = 0;
  for (int i = 0; i < kRasters; ++i) {
    BinaryRaster img = testing::random_raster(rng, 48);
    if (img.ink_count() == 0) img.set(0, 0);
    const int k = 1 + static_cast<int>(rng() % 16);
    // Room below so the shift keeps every row.
    BinaryRaster tall(img.width(), img.height() + k);
    for (int r = 0; r < img.height(); ++r) {
      for (int c = 0; c < img.width(); ++c) tall.set(r, c, img.ink(r, c));
    }
    const BinaryRaster moved = translate(tall, k, 0);
    const Baselines a = estimate_baselines(img);
    const Baselines b = estimate_baselines(moved);
    if (b.upper_row != a.upper_row + k || b.lower_row != a.lower_row + k) ++failures;

    const auto rows = project(img, Axis::Horizontal).counts;
    const int peak = *std::max_element(rows.begin(), rows.end());
    bool has_peak = false;
    for (int r = a.upper_row; r <= a.lower_row; ++r) has_peak = has_peak || rows[r] == peak;
    if (!has_peak || a.upper_row > a.lower_row) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("lines contain ink and PAWs partition it") {
  std::mt19937_64 rng(5);
  int failures = 0;
  for (int i = 0; i < 300; ++i) {
    const BinaryRaster img = testing::random_raster(rng, 40);
    for (const LineBand& band : extract_lines(img, {2, 0.0})) {
      long long ink = 0;
      for (int r = band.top_row; r <= band.bottom_row; ++r) {
        for (int c = 0; c < img.width(); ++c) ink += img.ink(r, c);
      }
      if (ink == 0) ++failures;
    }
    std::size_t pixels = 0;
    for (const Paw& paw : segment_paws(img)) pixels += paw.pixels.size();
    if (pixels != img.ink_count()) ++failures;
  }
  CHECK(failures == 0);
}

#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "scriptid/geometry.hpp"
#include "scriptid/raster.hpp"

namespace testing {

// '#' is ink, anything else background. Rows must have equal length.
inline scriptid::BinaryRaster art(const std::vector<std::string>& rows) {
  scriptid::BinaryRaster img(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()));
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      if (rows[r][c] == '#') img.set(r, c);
    }
  }
  return img;
}

inline scriptid::BinaryRaster random_raster(std::mt19937_64& rng, int max_side = 64) {
  std::uniform_int_distribution<int> side(1, max_side);
  const int w = side(rng);
  const int h = side(rng);
  const double density = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
  std::bernoulli_distribution ink(density);
  scriptid::BinaryRaster img(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (ink(rng)) img.set(r, c);
    }
  }
  return img;
}

// Flood fill with a plain stack; `eight` picks the neighbourhood. Cells
// outside the raster are treated as `outside_value`.
inline int count_regions(const scriptid::BinaryRaster& img, bool value, bool eight) {
  const int w = img.width();
  const int h = img.height();
  std::vector<char> seen(static_cast<std::size_t>(w) * h, 0);
  int regions = 0;
  for (int r0 = 0; r0 < h; ++r0) {
    for (int c0 = 0; c0 < w; ++c0) {
      if (img.ink(r0, c0) != value || seen[r0 * w + c0]) continue;
      ++regions;
      std::vector<std::pair<int, int>> stack{{r0, c0}};
      seen[r0 * w + c0] = 1;
      while (!stack.empty()) {
        auto [r, c] = stack.back();
        stack.pop_back();
        for (int dr = -1; dr <= 1; ++dr) {
          for (int dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) continue;
            if (!eight && dr != 0 && dc != 0) continue;
            const int nr = r + dr;
            const int nc = c + dc;
            if (nr < 0 || nc < 0 || nr >= h || nc >= w) continue;
            if (img.ink(nr, nc) != value || seen[nr * w + nc]) continue;
            seen[nr * w + nc] = 1;
            stack.push_back({nr, nc});
          }
        }
      }
    }
  }
  return regions;
}

// Holes: 4-connected background regions that do not touch the border.
// Padding by one cell merges every border-touching region into one.
inline int count_holes(const scriptid::BinaryRaster& img) {
  const scriptid::BinaryRaster padded = scriptid::pad(img, 1);
  return count_regions(padded, false, false) - 1;
}

// Ink cells with a 4-neighbour outside the ink (image border counts as background).
inline int count_boundary_pixels(const scriptid::BinaryRaster& img) {
  int n = 0;
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      if (!img.ink(r, c)) continue;
      if (!img.sample(r - 1, c) || !img.sample(r + 1, c) || !img.sample(r, c - 1) ||
          !img.sample(r, c + 1)) {
        ++n;
      }
    }
  }
  return n;
}

inline scriptid::BinaryRaster brute_dilate(const scriptid::BinaryRaster& img, int radius) {
  scriptid::BinaryRaster out(img.width(), img.height());
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      bool any = false;
      for (int dr = -radius; dr <= radius && !any; ++dr) {
        for (int dc = -radius; dc <= radius && !any; ++dc) any = img.sample(r + dr, c + dc);
      }
      if (any) out.set(r, c);
    }
  }
  return out;
}

}  // namespace testing

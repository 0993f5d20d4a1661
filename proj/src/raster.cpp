#include "scriptid/raster.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace scriptid {

BinaryRaster::BinaryRaster(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("raster dimensions must be positive");
  }
  cells_.assign(static_cast<std::size_t>(width) * height, 0);
}

void BinaryRaster::fill_rect(int top, int left, int bottom, int right, bool value) noexcept {
  top = std::max(top, 0);
  left = std::max(left, 0);
  bottom = std::min(bottom, height_ - 1);
  right = std::min(right, width_ - 1);
  for (int r = top; r <= bottom; ++r) {
    for (int c = left; c <= right; ++c) set(r, c, value);
  }
}

std::size_t BinaryRaster::ink_count() const noexcept {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

GrayRaster::GrayRaster(int width, int height, std::uint8_t fill) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("raster dimensions must be positive");
  }
  cells_.assign(static_cast<std::size_t>(width) * height, fill);
}

BinaryRaster binarize(const GrayRaster& img, int threshold) {
  BinaryRaster out(img.width(), img.height());
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      if (img.at(r, c) < threshold) out.set(r, c);
    }
  }
  return out;
}

namespace {

// One axis of the separable square dilation: out[i] is set when any input
// cell in [i - radius, i + radius] along the axis is set.
void dilate_line(const std::vector<int>& prefix, int radius, int n, std::vector<bool>& out) {
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - radius);
    const int hi = std::min(n - 1, i + radius);
    out[i] = prefix[hi + 1] - prefix[lo] > 0;
  }
}

}  // namespace

BinaryRaster dilate(const BinaryRaster& img, int radius) {
  if (radius < 0) throw std::invalid_argument("dilation radius must be non-negative");
  if (radius == 0) return img;

  const int w = img.width();
  const int h = img.height();
  BinaryRaster horizontal(w, h);
  std::vector<int> prefix;
  std::vector<bool> line;

  prefix.resize(w + 1);
  line.resize(w);
  for (int r = 0; r < h; ++r) {
    prefix[0] = 0;
    for (int c = 0; c < w; ++c) prefix[c + 1] = prefix[c] + (img.ink(r, c) ? 1 : 0);
    dilate_line(prefix, radius, w, line);
    for (int c = 0; c < w; ++c) horizontal.set(r, c, line[c]);
  }

  BinaryRaster out(w, h);
  prefix.assign(h + 1, 0);
  line.assign(h, false);
  for (int c = 0; c < w; ++c) {
    for (int r = 0; r < h; ++r) prefix[r + 1] = prefix[r] + (horizontal.ink(r, c) ? 1 : 0);
    dilate_line(prefix, radius, h, line);
    for (int r = 0; r < h; ++r) out.set(r, c, line[r]);
  }
  return out;
}

BinaryRaster pad(const BinaryRaster& img, int margin) {
  if (margin < 0) throw std::invalid_argument("padding must be non-negative");
  BinaryRaster out(img.width() + 2 * margin, img.height() + 2 * margin);
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      if (img.ink(r, c)) out.set(r + margin, c + margin);
    }
  }
  return out;
}

BinaryRaster crop_rows(const BinaryRaster& img, int top, int bottom) {
  if (top < 0 || bottom >= img.height() || top > bottom) {
    throw std::out_of_range("row range outside raster");
  }
  BinaryRaster out(img.width(), bottom - top + 1);
  for (int r = top; r <= bottom; ++r) {
    for (int c = 0; c < img.width(); ++c) {
      if (img.ink(r, c)) out.set(r - top, c);
    }
  }
  return out;
}

BinaryRaster translate(const BinaryRaster& img, int drow, int dcol) {
  BinaryRaster out(img.width(), img.height());
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      if (img.ink(r, c) && out.contains(r + drow, c + dcol)) out.set(r + drow, c + dcol);
    }
  }
  return out;
}

}  // namespace scriptid

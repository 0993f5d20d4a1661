#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace scriptid {

struct Point {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const Point&, const Point&) = default;
};

/// Rectangular ink/background grid. Ink is stored as one byte per cell,
/// row-major, top row first.
class BinaryRaster {
 public:
  /// Throws std::invalid_argument unless width and height are positive.
  BinaryRaster(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool contains(int row, int col) const noexcept {
    return row >= 0 && row < height_ && col >= 0 && col < width_;
  }
  bool contains(Point p) const noexcept { return contains(p.row, p.col); }

  // Unchecked access.
  bool ink(int row, int col) const noexcept {
    return cells_[static_cast<std::size_t>(row) * width_ + col] != 0;
  }
  bool ink(Point p) const noexcept { return ink(p.row, p.col); }

  /// Out-of-bounds cells read as background.
  bool sample(int row, int col) const noexcept { return contains(row, col) && ink(row, col); }
  bool sample(Point p) const noexcept { return sample(p.row, p.col); }

  void set(int row, int col, bool value = true) noexcept {
    cells_[static_cast<std::size_t>(row) * width_ + col] = value ? 1 : 0;
  }
  void set(Point p, bool value = true) noexcept { set(p.row, p.col, value); }

  /// Sets every cell of the inclusive rectangle, clipped to the raster.
  void fill_rect(int top, int left, int bottom, int right, bool value = true) noexcept;

  std::size_t ink_count() const noexcept;
  std::span<const std::uint8_t> cells() const noexcept { return cells_; }

  friend bool operator==(const BinaryRaster&, const BinaryRaster&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> cells_;
};

class GrayRaster {
 public:
  GrayRaster(int width, int height, std::uint8_t fill = 255);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  std::uint8_t at(int row, int col) const noexcept {
    return cells_[static_cast<std::size_t>(row) * width_ + col];
  }
  void set(int row, int col, std::uint8_t value) noexcept {
    cells_[static_cast<std::size_t>(row) * width_ + col] = value;
  }
  std::span<const std::uint8_t> cells() const noexcept { return cells_; }

  friend bool operator==(const GrayRaster&, const GrayRaster&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> cells_;
};

/// Dark-on-light: a cell is ink iff its intensity is strictly below threshold.
BinaryRaster binarize(const GrayRaster& img, int threshold = 128);

/// Union of the input ink with every cell within Chebyshev distance `radius`
/// of an ink cell (square structuring element). Dimensions are unchanged.
BinaryRaster dilate(const BinaryRaster& img, int radius = 1);

/// Copy of `img` surrounded by `margin` background cells on every side.
BinaryRaster pad(const BinaryRaster& img, int margin);

/// Inclusive row range [top, bottom] over the full width.
BinaryRaster crop_rows(const BinaryRaster& img, int top, int bottom);

/// Shifted copy: cell (r, c) of the result is cell (r - dr, c - dc) of img.
BinaryRaster translate(const BinaryRaster& img, int drow, int dcol);

// ---------------------------------------------------------------------------
// Portable bitmap / graymap I/O (P1, P2, P4, P5).

enum class PnmFormat { PlainBitmap, PlainGraymap, RawBitmap, RawGraymap };

using Image = std::variant<GrayRaster, BinaryRaster>;

Image decode_pnm(std::string_view bytes);
Image load(const std::filesystem::path& path);

/// Loads any supported map and binarizes graymaps at `threshold`.
BinaryRaster load_binary(const std::filesystem::path& path, int threshold = 128);

std::string encode_pnm(const BinaryRaster& img, PnmFormat format = PnmFormat::RawBitmap);
std::string encode_pnm(const GrayRaster& img, PnmFormat format = PnmFormat::RawGraymap);

void save(const BinaryRaster& img, const std::filesystem::path& path,
          PnmFormat format = PnmFormat::RawBitmap);
void save(const GrayRaster& img, const std::filesystem::path& path,
          PnmFormat format = PnmFormat::RawGraymap);

}  // namespace scriptid

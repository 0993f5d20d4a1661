#pragma once

#include <vector>

#include "scriptid/geometry.hpp"
#include "scriptid/raster.hpp"

namespace scriptid {

/// Upper and lower baseline rows. They split a word into the ascender zone
/// (rows < upper_row), the body band [upper_row, lower_row] and the
/// descender zone (rows > lower_row).
struct Baselines {
  int upper_row = 0;
  int lower_row = 0;

  int band_height() const noexcept { return lower_row - upper_row; }
  bool in_band(int row) const noexcept { return row >= upper_row && row <= lower_row; }

  friend bool operator==(const Baselines&, const Baselines&) = default;
};

struct LineBand {
  int top_row = 0;
  int bottom_row = 0;

  int height() const noexcept { return bottom_row - top_row + 1; }

  friend bool operator==(const LineBand&, const LineBand&) = default;
};

struct LineOptions {
  /// Blank-row runs shorter than this do not split a line.
  int merge_gap = 2;
  /// Bands shorter than this fraction of the tallest band are folded into the
  /// nearest neighbouring band (isolated rows of dots above or below a line).
  /// 0 disables the step.
  double attach_fraction = 0.0;
};

struct BaselineOptions {
  /// Rows whose projection reaches alpha * max count as body rows.
  double alpha = 0.5;
};

/// A piece of word: one body component plus the diacritic components attached
/// to it. order_index 0 is the rightmost PAW (Arabic reading order).
struct Paw {
  int order_index = 0;
  BoundingBox bbox;
  std::vector<Point> pixels;  // raster order
  int body_component = -1;    // -1 for a PAW made only of diacritic-zone shapes
  std::vector<int> attached_components;
};

std::vector<LineBand> extract_lines(const BinaryRaster& page, const LineOptions& options = {});

/// Baselines from the horizontal projection: the widest run of rows whose count
/// is at least alpha * max among the runs that reach the maximum.
/// Throws NoInkError on a blank raster.
Baselines estimate_baselines(const BinaryRaster& word, const BaselineOptions& options = {});

/// Components whose rows lie entirely above upper_row or entirely below
/// lower_row are attached to the body component with the largest column
/// overlap (ties: nearest centroid). Returns PAWs right-to-left.
std::vector<Paw> segment_paws(const BinaryRaster& line, const Baselines& baselines);
std::vector<Paw> segment_paws(const ComponentMap& components, const Baselines& baselines);
/// Estimates the baselines first; a blank line gives no PAWs.
std::vector<Paw> segment_paws(const BinaryRaster& line, const BaselineOptions& options = {});

}  // namespace scriptid

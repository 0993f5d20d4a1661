#pragma once

#include <cstdint>
#include <vector>

#include "scriptid/raster.hpp"

namespace scriptid {

enum class Axis { Horizontal, Vertical };

/// Ink count per row (horizontal) or per column (vertical).
struct ProjectionProfile {
  Axis axis = Axis::Horizontal;
  std::vector<int> counts;

  long long total() const noexcept;
};

ProjectionProfile project(const BinaryRaster& img, Axis axis);

/// Inclusive pixel rectangle.
struct BoundingBox {
  int min_row = 0;
  int min_col = 0;
  int max_row = -1;
  int max_col = -1;

  int width() const noexcept { return max_col - min_col + 1; }
  int height() const noexcept { return max_row - min_row + 1; }
  bool empty() const noexcept { return max_row < min_row || max_col < min_col; }
  void extend(Point p) noexcept;
  void extend(const BoundingBox& other) noexcept;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct Component {
  int id = 0;
  std::vector<Point> pixels;  // raster order
  BoundingBox bbox;
};

/// 8-connected ink components plus a per-cell label map (-1 = background).
/// Components are ordered by (bbox.min_col, bbox.min_row) and id equals the
/// index in that order.
struct ComponentMap {
  int width = 0;
  int height = 0;
  std::vector<Component> components;
  std::vector<int> labels;

  int label_at(int row, int col) const noexcept {
    return labels[static_cast<std::size_t>(row) * width + col];
  }
  int label_at(Point p) const noexcept { return label_at(p.row, p.col); }
};

ComponentMap label_components(const BinaryRaster& img);
std::vector<Component> connected_components(const BinaryRaster& img);

/// 4-connected background regions that do not touch the raster border,
/// ordered by their first pixel in raster order.
std::vector<Component> find_holes(const BinaryRaster& img);

enum class Polarity { Outer, Inner };

struct ContourChain {
  std::vector<Point> points;
  bool closed = true;
  Polarity polarity = Polarity::Outer;
  int component = -1;  // id of the ink component the border belongs to
  int hole = -1;       // index into find_holes() for inner chains

  std::size_t length() const noexcept { return points.size(); }
};

/// Border following over 8-connected ink. Each component yields one outer
/// chain and each hole one inner chain. Chains are emitted per component in
/// component order: the outer chain first, then the inner chains of the holes
/// it encloses in hole order. A pixel is recorded once per visit, so spurs
/// are counted on the way out and on the way back.
std::vector<ContourChain> trace_contours(const BinaryRaster& img);
std::vector<ContourChain> trace_contours(const BinaryRaster& img, const ComponentMap& components,
                                         const std::vector<Component>& holes);

/// Follows one border starting at `start`, an ink pixel, with `background` a
/// background 8-neighbour of it. Used for outer borders (background = west
/// neighbour of the first pixel in raster order) and hole borders
/// (background = first hole pixel, east of start).
std::vector<Point> follow_border(const BinaryRaster& img, Point start, Point background);

inline bool are_8_neighbours(Point a, Point b) noexcept {
  const int dr = a.row - b.row;
  const int dc = a.col - b.col;
  return (dr != 0 || dc != 0) && dr >= -1 && dr <= 1 && dc >= -1 && dc <= 1;
}

}  // namespace scriptid

#include "scriptid/geometry.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace scriptid {

long long ProjectionProfile::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), 0LL);
}

ProjectionProfile project(const BinaryRaster& img, Axis axis) {
  ProjectionProfile profile;
  profile.axis = axis;
  profile.counts.assign(axis == Axis::Horizontal ? img.height() : img.width(), 0);
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      if (img.ink(r, c)) ++profile.counts[axis == Axis::Horizontal ? r : c];
    }
  }
  return profile;
}

void BoundingBox::extend(Point p) noexcept {
  if (empty()) {
    *this = BoundingBox{p.row, p.col, p.row, p.col};
    return;
  }
  min_row = std::min(min_row, p.row);
  min_col = std::min(min_col, p.col);
  max_row = std::max(max_row, p.row);
  max_col = std::max(max_col, p.col);
}

void BoundingBox::extend(const BoundingBox& other) noexcept {
  if (other.empty()) return;
  extend(Point{other.min_row, other.min_col});
  extend(Point{other.max_row, other.max_col});
}

namespace {

constexpr std::array<Point, 8> kEight{{{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                       {0, 1},   {1, -1}, {1, 0},  {1, 1}}};
constexpr std::array<Point, 4> kFour{{{-1, 0}, {0, -1}, {0, 1}, {1, 0}}};

// Flood fill of cells equal to `value`, labelling into `labels`. Returns the
// pixels in raster order.
template <typename Offsets>
std::vector<Point> flood(const BinaryRaster& img, Point seed, bool value, const Offsets& offsets,
                         std::vector<int>& labels, int label) {
  std::vector<Point> pixels;
  std::vector<Point> stack{seed};
  labels[static_cast<std::size_t>(seed.row) * img.width() + seed.col] = label;
  while (!stack.empty()) {
    const Point p = stack.back();
    stack.pop_back();
    pixels.push_back(p);
    for (const Point d : offsets) {
      const Point q{p.row + d.row, p.col + d.col};
      if (!img.contains(q) || img.ink(q) != value) continue;
      int& slot = labels[static_cast<std::size_t>(q.row) * img.width() + q.col];
      if (slot != -1) continue;
      slot = label;
      stack.push_back(q);
    }
  }
  std::sort(pixels.begin(), pixels.end());
  return pixels;
}

BoundingBox bounds_of(const std::vector<Point>& pixels) {
  BoundingBox box;
  for (const Point p : pixels) box.extend(p);
  return box;
}

}  // namespace

ComponentMap label_components(const BinaryRaster& img) {
  ComponentMap map;
  map.width = img.width();
  map.height = img.height();
  std::vector<int> scratch(static_cast<std::size_t>(img.width()) * img.height(), -1);

  std::vector<Component> found;
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      if (!img.ink(r, c) || scratch[static_cast<std::size_t>(r) * img.width() + c] != -1) continue;
      Component comp;
      comp.pixels = flood(img, {r, c}, true, kEight, scratch, static_cast<int>(found.size()));
      comp.bbox = bounds_of(comp.pixels);
      found.push_back(std::move(comp));
    }
  }

  std::vector<int> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ba = found[a].bbox;
    const auto& bb = found[b].bbox;
    return std::pair(ba.min_col, ba.min_row) < std::pair(bb.min_col, bb.min_row);
  });

  map.labels.assign(scratch.size(), -1);
  map.components.reserve(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    Component comp = std::move(found[order[i]]);
    comp.id = static_cast<int>(i);
    for (const Point p : comp.pixels) {
      map.labels[static_cast<std::size_t>(p.row) * img.width() + p.col] = comp.id;
    }
    map.components.push_back(std::move(comp));
  }
  return map;
}

std::vector<Component> connected_components(const BinaryRaster& img) {
  return label_components(img).components;
}

std::vector<Component> find_holes(const BinaryRaster& img) {
  std::vector<int> labels(static_cast<std::size_t>(img.width()) * img.height(), -1);
  std::vector<Component> holes;
  int next_label = 0;
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      if (img.ink(r, c) || labels[static_cast<std::size_t>(r) * img.width() + c] != -1) continue;
      std::vector<Point> region = flood(img, {r, c}, false, kFour, labels, next_label++);
      const BoundingBox box = bounds_of(region);
      const bool touches_border = box.min_row == 0 || box.min_col == 0 ||
                                  box.max_row == img.height() - 1 ||
                                  box.max_col == img.width() - 1;
      if (touches_border) continue;
      Component hole;
      hole.id = static_cast<int>(holes.size());
      hole.pixels = std::move(region);
      hole.bbox = box;
      holes.push_back(std::move(hole));
    }
  }
  return holes;
}

namespace {

// Neighbour directions in clockwise order on screen (rows grow downward).
constexpr std::array<Point, 8> kRing{{{0, 1}, {1, 1}, {1, 0}, {1, -1},
                                      {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}}};

int direction(Point from, Point to) {
  const Point d{to.row - from.row, to.col - from.col};
  for (int i = 0; i < 8; ++i) {
    if (kRing[i] == d) return i;
  }
  return -1;
}

Point step(Point p, int dir) { return {p.row + kRing[dir].row, p.col + kRing[dir].col}; }

}  // namespace

std::vector<Point> follow_border(const BinaryRaster& img, Point start, Point background) {
  std::vector<Point> chain;
  const int first_dir = direction(start, background);

  // The clockwise sweep from the background neighbour finds the border pixel
  // that precedes `start`; reaching it again with `start` next closes the chain.
  int last_dir = -1;
  for (int k = 0; k < 8; ++k) {
    const int dir = (first_dir + k) % 8;
    if (img.sample(step(start, dir))) {
      last_dir = dir;
      break;
    }
  }
  if (last_dir < 0) {
    chain.push_back(start);
    return chain;
  }
  const Point last = step(start, last_dir);

  Point previous = last;
  Point current = start;
  for (;;) {
    const int back = direction(current, previous);
    Point next = previous;
    for (int k = 1; k <= 8; ++k) {
      const int dir = ((back - k) % 8 + 8) % 8;
      const Point candidate = step(current, dir);
      if (img.sample(candidate)) {
        next = candidate;
        break;
      }
    }
    chain.push_back(current);
    if (current == last && next == start) break;
    previous = current;
    current = next;
  }
  return chain;
}

std::vector<ContourChain> trace_contours(const BinaryRaster& img, const ComponentMap& components,
                                         const std::vector<Component>& holes) {
  std::vector<std::vector<int>> holes_of(components.components.size());
  for (const Component& hole : holes) {
    const Point first = hole.pixels.front();
    // The west neighbour of a hole's first raster pixel is always ink.
    holes_of[components.label_at(first.row, first.col - 1)].push_back(hole.id);
  }

  std::vector<ContourChain> chains;
  for (const Component& comp : components.components) {
    const Point start = comp.pixels.front();
    ContourChain outer;
    outer.points = follow_border(img, start, {start.row, start.col - 1});
    outer.polarity = Polarity::Outer;
    outer.component = comp.id;
    chains.push_back(std::move(outer));

    for (const int hole_id : holes_of[comp.id]) {
      const Point first = holes[hole_id].pixels.front();
      ContourChain inner;
      inner.points = follow_border(img, {first.row, first.col - 1}, first);
      inner.polarity = Polarity::Inner;
      inner.component = comp.id;
      inner.hole = hole_id;
      chains.push_back(std::move(inner));
    }
  }
  return chains;
}

std::vector<ContourChain> trace_contours(const BinaryRaster& img) {
  return trace_contours(img, label_components(img), find_holes(img));
}

}  // namespace scriptid

#include "scriptid/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "scriptid/error.hpp"

namespace scriptid {

std::vector<LineBand> extract_lines(const BinaryRaster& page, const LineOptions& options) {
  const ProjectionProfile rows = project(page, Axis::Horizontal);

  std::vector<LineBand> bands;
  for (int r = 0; r < page.height(); ++r) {
    if (rows.counts[r] == 0) continue;
    if (!bands.empty() && r - bands.back().bottom_row - 1 < std::max(options.merge_gap, 1)) {
      bands.back().bottom_row = r;
    } else {
      bands.push_back({r, r});
    }
  }

  if (options.attach_fraction <= 0.0 || bands.size() < 2) return bands;

  // Fold short bands, shortest first, into whichever neighbour is closer.
  // The limit comes from the bands as found, so folding cannot grow it.
  int tallest = 0;
  for (const LineBand& b : bands) tallest = std::max(tallest, b.height());
  const double limit = options.attach_fraction * tallest;
  for (;;) {
    std::size_t pick = bands.size();
    for (std::size_t i = 0; i < bands.size(); ++i) {
      if (bands[i].height() < limit &&
          (pick == bands.size() || bands[i].height() < bands[pick].height())) {
        pick = i;
      }
    }
    if (pick == bands.size() || bands.size() < 2) break;

    const int gap_up = pick > 0 ? bands[pick].top_row - bands[pick - 1].bottom_row
                                : std::numeric_limits<int>::max();
    const int gap_down = pick + 1 < bands.size() ? bands[pick + 1].top_row - bands[pick].bottom_row
                                                 : std::numeric_limits<int>::max();
    if (gap_down <= gap_up) {
      bands[pick + 1].top_row = bands[pick].top_row;
    } else {
      bands[pick - 1].bottom_row = bands[pick].bottom_row;
    }
    bands.erase(bands.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return bands;
}

Baselines estimate_baselines(const BinaryRaster& word, const BaselineOptions& options) {
  const ProjectionProfile rows = project(word, Axis::Horizontal);
  const int peak = *std::max_element(rows.counts.begin(), rows.counts.end());
  if (peak == 0) throw NoInkError("cannot estimate baselines of a blank raster");

  const double floor = options.alpha * peak;
  Baselines best{-1, -1};
  int r = 0;
  const int h = word.height();
  while (r < h) {
    if (rows.counts[r] < floor || rows.counts[r] == 0) {
      ++r;
      continue;
    }
    const int start = r;
    bool reaches_peak = false;
    while (r < h && rows.counts[r] >= floor && rows.counts[r] > 0) {
      reaches_peak = reaches_peak || rows.counts[r] == peak;
      ++r;
    }
    const int end = r - 1;
    if (reaches_peak && (best.upper_row < 0 || end - start > best.band_height())) {
      best = {start, end};
    }
  }
  return best;
}

namespace {

double centroid_distance(const Component& a, const Component& b) {
  auto centroid = [](const Component& c) {
    double row = 0.0;
    double col = 0.0;
    for (const Point p : c.pixels) {
      row += p.row;
      col += p.col;
    }
    const auto n = static_cast<double>(c.pixels.size());
    return std::pair(row / n, col / n);
  };
  const auto [ar, ac] = centroid(a);
  const auto [br, bc] = centroid(b);
  return std::hypot(ar - br, ac - bc);
}

int column_overlap(const BoundingBox& a, const BoundingBox& b) {
  return std::max(0, std::min(a.max_col, b.max_col) - std::max(a.min_col, b.min_col) + 1);
}

}  // namespace

std::vector<Paw> segment_paws(const ComponentMap& components, const Baselines& baselines) {
  const auto& comps = components.components;
  std::vector<int> bodies;
  std::vector<int> marks;
  for (const Component& c : comps) {
    const bool diacritic_zone =
        c.bbox.max_row < baselines.upper_row || c.bbox.min_row > baselines.lower_row;
    (diacritic_zone ? marks : bodies).push_back(c.id);
  }

  std::vector<Paw> paws;
  if (bodies.empty()) {
    for (const int id : marks) {
      Paw paw;
      paw.attached_components.push_back(id);
      paws.push_back(std::move(paw));
    }
  } else {
    for (const int id : bodies) {
      Paw paw;
      paw.body_component = id;
      paws.push_back(std::move(paw));
    }
    for (const int id : marks) {
      std::size_t best = 0;
      int best_overlap = -1;
      double best_distance = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < bodies.size(); ++i) {
        const int overlap = column_overlap(comps[id].bbox, comps[bodies[i]].bbox);
        const double distance = centroid_distance(comps[id], comps[bodies[i]]);
        if (overlap > best_overlap || (overlap == best_overlap && distance < best_distance)) {
          best = i;
          best_overlap = overlap;
          best_distance = distance;
        }
      }
      paws[best].attached_components.push_back(id);
    }
  }

  for (Paw& paw : paws) {
    if (paw.body_component >= 0) {
      paw.pixels = comps[paw.body_component].pixels;
      paw.bbox = comps[paw.body_component].bbox;
    }
    for (const int id : paw.attached_components) {
      paw.pixels.insert(paw.pixels.end(), comps[id].pixels.begin(), comps[id].pixels.end());
      paw.bbox.extend(comps[id].bbox);
    }
    std::sort(paw.pixels.begin(), paw.pixels.end());
  }

  std::stable_sort(paws.begin(), paws.end(), [](const Paw& a, const Paw& b) {
    if (a.bbox.max_col != b.bbox.max_col) return a.bbox.max_col > b.bbox.max_col;
    return a.bbox.min_row < b.bbox.min_row;
  });
  for (std::size_t i = 0; i < paws.size(); ++i) paws[i].order_index = static_cast<int>(i);
  return paws;
}

std::vector<Paw> segment_paws(const BinaryRaster& line, const Baselines& baselines) {
  return segment_paws(label_components(line), baselines);
}

std::vector<Paw> segment_paws(const BinaryRaster& line, const BaselineOptions& options) {
  if (line.ink_count() == 0) return {};
  return segment_paws(line, estimate_baselines(line, options));
}

}  // namespace scriptid

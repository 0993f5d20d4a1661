#include "scriptid/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "scriptid/error.hpp"

namespace scriptid {

char to_char(FeatureKind kind) noexcept {
  switch (kind) {
    case FeatureKind::H: return 'H';
    case FeatureKind::J: return 'J';
    case FeatureKind::P: return 'P';
    case FeatureKind::Q: return 'Q';
    case FeatureKind::B: return 'B';
  }
  return '?';
}

std::optional<FeatureKind> feature_from_char(char ch) noexcept {
  for (const FeatureKind kind : kFeatureKinds) {
    if (to_char(kind) == ch) return kind;
  }
  return std::nullopt;
}

char to_char(Position position) noexcept {
  switch (position) {
    case Position::D: return 'D';
    case Position::M: return 'M';
    case Position::F: return 'F';
    case Position::I: return 'I';
  }
  return '?';
}

FeatureThresholds FeatureThresholds::for_baselines(const Baselines& baselines,
                                                   int diacritic_max_contour) {
  const int band = baselines.band_height();
  return {2 * band, band, diacritic_max_contour};
}

int FeatureSet::total_hits() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

void FeatureSet::add(const FeatureHit& hit) {
  ++at(counts, hit.kind);
  hits.push_back(hit);
}

void FeatureSet::merge(const FeatureSet& other) {
  const int offset = nb_paws;
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  for (FeatureHit hit : other.hits) {
    if (hit.paw_index >= 0) hit.paw_index += offset;
    hits.push_back(hit);
  }
  for (PawLayout layout : other.paws) {
    layout.order_index += offset;
    paws.push_back(std::move(layout));
  }
  nb_paws += other.nb_paws;
  diagnostics.oversize_loops += other.diagnostics.oversize_loops;
  diagnostics.rejected_loops += other.diagnostics.rejected_loops;
  diagnostics.oversize_closed += other.diagnostics.oversize_closed;
}

std::string FeatureSet::position_string() const {
  std::string out;
  for (const PawLayout& paw : paws) {
    if (!out.empty()) out += " | ";
    for (std::size_t z = 0; z < paw.zones.size(); ++z) {
      if (z > 0) out += ' ';
      std::string letters;
      for (const FeatureHit& hit : hits) {
        if (hit.paw_index == paw.order_index && hit.zone == static_cast<int>(z)) {
          letters += to_char(hit.kind);
        }
      }
      std::sort(letters.begin(), letters.end());
      out += letters;
      out += to_char(paw.zones[z].position);
    }
  }
  return out;
}

namespace {

Point centroid(std::span<const Point> points) {
  double row = 0.0;
  double col = 0.0;
  for (const Point p : points) {
    row += p.row;
    col += p.col;
  }
  const auto n = static_cast<double>(points.size());
  return {static_cast<int>(std::lround(row / n)), static_cast<int>(std::lround(col / n))};
}

bool wholly_above(const ContourChain& chain, int row) {
  return std::all_of(chain.points.begin(), chain.points.end(),
                     [row](Point p) { return p.row < row; });
}

bool wholly_below(const ContourChain& chain, int row) {
  return std::all_of(chain.points.begin(), chain.points.end(),
                     [row](Point p) { return p.row > row; });
}

bool touches_band(const ContourChain& chain, const Baselines& baselines) {
  return std::any_of(chain.points.begin(), chain.points.end(),
                     [&](Point p) { return baselines.in_band(p.row); });
}

}  // namespace

DiacriticHits detect_diacritics(std::span<const ContourChain> chains, const Baselines& baselines,
                                const FeatureThresholds& thresholds) {
  DiacriticHits out;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    const ContourChain& chain = chains[i];
    if (chain.polarity != Polarity::Outer || !chain.closed) continue;
    if (static_cast<int>(chain.length()) >= thresholds.diacritic_max_contour) continue;
    FeatureHit hit;
    hit.location = centroid(chain.points);
    hit.chain = static_cast<int>(i);
    if (wholly_above(chain, baselines.upper_row)) {
      hit.kind = FeatureKind::P;
      out.upper.push_back(hit);
    } else if (wholly_below(chain, baselines.lower_row)) {
      hit.kind = FeatureKind::Q;
      out.lower.push_back(hit);
    }
  }
  return out;
}

namespace {

struct LoopCheck {
  bool confirmed = false;
  Point center;
};

// Isolates the word part owning `chain`, checks the chain is one of its hole
// borders, then fills the hole with ink and checks the border is gone.
LoopCheck confirm_loop(const ComponentMap& parts, const ContourChain& chain) {
  const Component& part = parts.components[chain.component];
  const BoundingBox& box = part.bbox;
  // One background cell of margin keeps the part's outside connected to the border.
  const int top = box.min_row - 1;
  const int left = box.min_col - 1;
  BinaryRaster isolated(box.width() + 2, box.height() + 2);
  for (const Point p : part.pixels) isolated.set(p.row - top, p.col - left);

  std::vector<Point> local(chain.points);
  for (Point& p : local) p = {p.row - top, p.col - left};

  const auto before = trace_contours(isolated);
  const auto has_border = [&](const std::vector<ContourChain>& traced) {
    return std::any_of(traced.begin(), traced.end(), [&](const ContourChain& c) {
      return c.polarity == Polarity::Inner && c.points == local;
    });
  };
  if (!has_border(before)) return {};

  // The hole's first raster pixel sits east of the hole border's start.
  const Point seed{local.front().row, local.front().col + 1};
  if (!isolated.contains(seed) || isolated.ink(seed)) return {};
  std::vector<Point> hole;
  std::vector<Point> stack{seed};
  BinaryRaster stained = isolated;
  stained.set(seed);
  while (!stack.empty()) {
    const Point p = stack.back();
    stack.pop_back();
    hole.push_back(p);
    for (const Point d : {Point{-1, 0}, Point{1, 0}, Point{0, -1}, Point{0, 1}}) {
      const Point q{p.row + d.row, p.col + d.col};
      if (!stained.contains(q) || stained.ink(q)) continue;
      stained.set(q);
      stack.push_back(q);
    }
  }
  const auto after = trace_contours(stained);
  if (has_border(after)) return {};

  Point center = centroid(hole);
  return {true, {center.row + top, center.col + left}};
}

}  // namespace

LoopHits detect_loops(std::span<const ContourChain> chains, const BinaryRaster& word,
                      const Baselines& baselines, const FeatureThresholds& thresholds) {
  LoopHits out;
  std::optional<ComponentMap> parts;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    const ContourChain& chain = chains[i];
    if (chain.polarity != Polarity::Inner || !touches_band(chain, baselines)) continue;
    if (static_cast<int>(chain.length()) >= thresholds.diacritic_max_contour) {
      ++out.oversize;
      continue;
    }
    if (!parts) parts = label_components(word);
    const LoopCheck check = confirm_loop(*parts, chain);
    if (!check.confirmed) {
      ++out.rejected;
      continue;
    }
    FeatureHit hit;
    hit.kind = FeatureKind::B;
    hit.location = check.center;
    hit.chain = static_cast<int>(i);
    out.loops.push_back(hit);
  }
  return out;
}

namespace {

BinaryRaster mask_of_hits(const BinaryRaster& word, const ComponentMap& components,
                          std::span<const ContourChain> chains, const DiacriticHits& hits) {
  BinaryRaster mask(word.width(), word.height());
  for (const auto* group : {&hits.upper, &hits.lower}) {
    for (const FeatureHit& hit : *group) {
      for (const Point p : components.components[chains[hit.chain].component].pixels) {
        mask.set(p);
      }
    }
  }
  return mask;
}

// 8-connected regions of the ink selected by `keep`.
template <typename Keep>
std::vector<Component> regions_where(const BinaryRaster& word, const BinaryRaster& excluded,
                                     Keep keep) {
  BinaryRaster selected(word.width(), word.height());
  bool any = false;
  for (int r = 0; r < word.height(); ++r) {
    if (!keep(r)) continue;
    for (int c = 0; c < word.width(); ++c) {
      if (word.ink(r, c) && !excluded.ink(r, c)) {
        selected.set(r, c);
        any = true;
      }
    }
  }
  if (!any) return {};
  return connected_components(selected);
}

}  // namespace

BinaryRaster diacritic_mask(const BinaryRaster& word, const Baselines& baselines,
                            const FeatureThresholds& thresholds) {
  const ComponentMap components = label_components(word);
  const auto chains = trace_contours(word, components, find_holes(word));
  return mask_of_hits(word, components, chains, detect_diacritics(chains, baselines, thresholds));
}

std::vector<FeatureHit> detect_poles(const BinaryRaster& word, const Baselines& baselines,
                                     const FeatureThresholds& thresholds,
                                     const BinaryRaster& excluded) {
  const int limit = baselines.upper_row - thresholds.marge_h;
  std::vector<FeatureHit> out;
  for (const Component& region : regions_where(word, excluded, [&](int r) { return r < limit; })) {
    FeatureHit hit;
    hit.kind = FeatureKind::H;
    hit.location = region.pixels.front();
    out.push_back(hit);
  }
  return out;
}

std::vector<FeatureHit> detect_poles(const BinaryRaster& word, const Baselines& baselines,
                                     const FeatureThresholds& thresholds) {
  return detect_poles(word, baselines, thresholds, diacritic_mask(word, baselines, thresholds));
}

std::vector<FeatureHit> detect_jambs(const BinaryRaster& word, const Baselines& baselines,
                                     const FeatureThresholds& thresholds,
                                     const BinaryRaster& excluded) {
  const int limit = baselines.lower_row + thresholds.marge_j;
  std::vector<FeatureHit> out;
  for (const Component& region : regions_where(word, excluded, [&](int r) { return r > limit; })) {
    FeatureHit hit;
    hit.kind = FeatureKind::J;
    hit.location = region.pixels.back();
    out.push_back(hit);
  }
  return out;
}

std::vector<FeatureHit> detect_jambs(const BinaryRaster& word, const Baselines& baselines,
                                     const FeatureThresholds& thresholds) {
  return detect_jambs(word, baselines, thresholds, diacritic_mask(word, baselines, thresholds));
}

std::vector<ColumnInterval> letter_zones(const Paw& paw, const Baselines& baselines,
                                         double delimiter_fraction) {
  if (paw.bbox.empty()) return {};
  const int first_col = paw.bbox.min_col;
  std::vector<int> counts(paw.bbox.width(), 0);
  for (const Point p : paw.pixels) {
    if (baselines.in_band(p.row)) ++counts[p.col - first_col];
  }
  const auto body_begin = std::find_if(counts.begin(), counts.end(), [](int n) { return n > 0; });
  if (body_begin == counts.end()) return {{paw.bbox.min_col, paw.bbox.max_col}};
  const int lo = static_cast<int>(body_begin - counts.begin());
  const int hi = static_cast<int>(counts.rend() - std::find_if(counts.rbegin(), counts.rend(),
                                                               [](int n) { return n > 0; })) - 1;
  const int peak = *std::max_element(counts.begin(), counts.end());
  const double floor = delimiter_fraction * peak;

  std::vector<ColumnInterval> zones;
  int zone_start = lo;
  int i = lo;
  while (i <= hi) {
    if (counts[i] > floor) {
      ++i;
      continue;
    }
    int j = i;
    while (j <= hi && counts[j] <= floor) ++j;
    // A low run touching either end of the body belongs to the edge letter.
    if (i > lo && j <= hi) {
      zones.push_back({zone_start + first_col, i - 1 + first_col});
      zone_start = j;
    }
    i = j;
  }
  zones.push_back({zone_start + first_col, hi + first_col});
  std::reverse(zones.begin(), zones.end());
  return zones;
}

std::vector<Position> detect_positions(const BinaryRaster& word, const Baselines& baselines,
                                       std::span<const ColumnInterval> zones, int window) {
  const auto band_ink = [&](int from_col, int to_col) {
    int n = 0;
    for (int r = std::max(baselines.upper_row, 0);
         r <= std::min(baselines.lower_row, word.height() - 1); ++r) {
      for (int c = std::max(from_col, 0); c <= std::min(to_col, word.width() - 1); ++c) {
        n += word.ink(r, c) ? 1 : 0;
      }
    }
    return n;
  };

  std::vector<Position> out;
  out.reserve(zones.size());
  for (const ColumnInterval& zone : zones) {
    const bool left = band_ink(zone.first_col - window, zone.first_col - 1) > 0;
    const bool right = band_ink(zone.last_col + 1, zone.last_col + window) > 0;
    if (left && !right) {
      out.push_back(Position::D);
    } else if (left && right) {
      out.push_back(Position::M);
    } else if (right) {
      out.push_back(Position::F);
    } else {
      out.push_back(Position::I);
    }
  }
  return out;
}

namespace {

int nearest_zone(const PawLayout& layout, int col) {
  int best = -1;
  int best_distance = std::numeric_limits<int>::max();
  for (std::size_t z = 0; z < layout.zones.size(); ++z) {
    const ColumnInterval& iv = layout.zones[z].columns;
    const int distance = col < iv.first_col ? iv.first_col - col
                         : col > iv.last_col ? col - iv.last_col
                                             : 0;
    if (distance < best_distance) {
      best = static_cast<int>(z);
      best_distance = distance;
    }
  }
  return best;
}

}  // namespace

FeatureSet extract_features(const BinaryRaster& word, const Baselines& baselines,
                            const ExtractOptions& options) {
  if (word.ink_count() == 0) throw NoInkError("cannot extract features from a blank word");
  if (options.dilation_radius < 0) throw std::invalid_argument("dilation radius must be >= 0");

  // Padding keeps dilated shapes from being clipped by the raster edge.
  const int margin = options.dilation_radius + 1;
  const BinaryRaster original = pad(word, margin);
  const Baselines band{baselines.upper_row + margin, baselines.lower_row + margin};
  const FeatureThresholds thresholds =
      FeatureThresholds::for_baselines(band, options.diacritic_max_contour);

  const BinaryRaster expanded = dilate(original, options.dilation_radius);
  const ComponentMap expanded_parts = label_components(expanded);
  const std::vector<Component> holes = find_holes(expanded);
  const std::vector<ContourChain> chains = trace_contours(expanded, expanded_parts, holes);

  FeatureSet out;
  const DiacriticHits dots = detect_diacritics(chains, band, thresholds);
  const LoopHits loops = detect_loops(chains, expanded, band, thresholds);
  out.diagnostics.oversize_loops = loops.oversize;
  out.diagnostics.rejected_loops = loops.rejected;
  for (const ContourChain& chain : chains) {
    if (chain.polarity == Polarity::Outer &&
        static_cast<int>(chain.length()) >= thresholds.diacritic_max_contour &&
        (wholly_above(chain, band.upper_row) || wholly_below(chain, band.lower_row))) {
      ++out.diagnostics.oversize_closed;
    }
  }

  // Dots are excluded from pole/jamb candidates in the undilated word.
  BinaryRaster excluded = mask_of_hits(expanded, expanded_parts, chains, dots);
  for (int r = 0; r < excluded.height(); ++r) {
    for (int c = 0; c < excluded.width(); ++c) {
      if (excluded.ink(r, c) && !original.ink(r, c)) excluded.set(r, c, false);
    }
  }
  const auto poles = detect_poles(original, band, thresholds, excluded);
  const auto jambs = detect_jambs(original, band, thresholds, excluded);

  const ComponentMap parts = label_components(original);
  const std::vector<Paw> paws = segment_paws(parts, band);
  out.nb_paws = static_cast<int>(paws.size());

  std::vector<int> paw_of(original.cells().size(), -1);
  for (const Paw& paw : paws) {
    for (const Point p : paw.pixels) {
      paw_of[static_cast<std::size_t>(p.row) * original.width() + p.col] = paw.order_index;
    }
    PawLayout layout;
    layout.order_index = paw.order_index;
    layout.bbox = paw.bbox;
    const auto zones = letter_zones(paw, band, options.delimiter_fraction);
    const auto positions = detect_positions(original, band, zones, options.position_window);
    for (std::size_t z = 0; z < zones.size(); ++z) layout.zones.push_back({zones[z], positions[z]});
    out.paws.push_back(std::move(layout));
  }

  const auto paw_at = [&](Point p) {
    return paw_of[static_cast<std::size_t>(p.row) * original.width() + p.col];
  };
  // A dilated part may cover several original parts; its first original pixel
  // in raster order decides.
  const auto paw_of_chain = [&](int chain) {
    for (const Point p : expanded_parts.components[chains[chain].component].pixels) {
      if (original.ink(p)) return paw_at(p);
    }
    return -1;
  };

  std::vector<FeatureHit> hits;
  for (FeatureHit hit : dots.upper) {
    hit.paw_index = paw_of_chain(hit.chain);
    hits.push_back(hit);
  }
  for (FeatureHit hit : dots.lower) {
    hit.paw_index = paw_of_chain(hit.chain);
    hits.push_back(hit);
  }
  for (FeatureHit hit : loops.loops) {
    hit.paw_index = paw_of_chain(hit.chain);
    hits.push_back(hit);
  }
  for (const auto* group : {&poles, &jambs}) {
    for (FeatureHit hit : *group) {
      hit.paw_index = paw_at(hit.location);
      hits.push_back(hit);
    }
  }

  for (FeatureHit& hit : hits) {
    if (hit.paw_index >= 0) {
      const PawLayout& layout = out.paws[hit.paw_index];
      hit.zone = nearest_zone(layout, hit.location.col);
      if (hit.zone >= 0) hit.position = layout.zones[hit.zone].position;
    }
    hit.location = {hit.location.row - margin, hit.location.col - margin};
  }
  std::stable_sort(hits.begin(), hits.end(), [](const FeatureHit& a, const FeatureHit& b) {
    if (a.paw_index != b.paw_index) return a.paw_index < b.paw_index;
    if (a.location.col != b.location.col) return a.location.col > b.location.col;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.location.row < b.location.row;
  });
  for (const FeatureHit& hit : hits) out.add(hit);

  for (PawLayout& layout : out.paws) {
    layout.bbox = {layout.bbox.min_row - margin, layout.bbox.min_col - margin,
                   layout.bbox.max_row - margin, layout.bbox.max_col - margin};
    for (LetterZone& zone : layout.zones) {
      zone.columns.first_col -= margin;
      zone.columns.last_col -= margin;
    }
  }
  return out;
}

}  // namespace scriptid

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scriptid/geometry.hpp"
#include "scriptid/layout.hpp"
#include "scriptid/raster.hpp"

namespace scriptid {

/// The five structural primitives.
///   H  pole / ascender        J  jamb / descender
///   P  upper diacritic dot    Q  lower diacritic dot
///   B  loop
enum class FeatureKind { H, J, P, Q, B };

inline constexpr std::array<FeatureKind, 5> kFeatureKinds{FeatureKind::H, FeatureKind::J,
                                                          FeatureKind::P, FeatureKind::Q,
                                                          FeatureKind::B};

char to_char(FeatureKind kind) noexcept;
std::optional<FeatureKind> feature_from_char(char ch) noexcept;

/// Counts indexed by FeatureKind.
using FeatureCounts = std::array<int, 5>;

inline int& at(FeatureCounts& counts, FeatureKind kind) noexcept {
  return counts[static_cast<std::size_t>(kind)];
}
inline int at(const FeatureCounts& counts, FeatureKind kind) noexcept {
  return counts[static_cast<std::size_t>(kind)];
}

/// Letter position inside a PAW: start, middle, end, isolated.
enum class Position { D, M, F, I };

char to_char(Position position) noexcept;

struct FeatureThresholds {
  int marge_h = 0;
  int marge_j = 0;
  int diacritic_max_contour = 60;

  /// marge_h = 2 * band height, marge_j = band height.
  static FeatureThresholds for_baselines(const Baselines& baselines, int diacritic_max_contour = 60);
};

struct FeatureHit {
  FeatureKind kind = FeatureKind::H;
  Point location;
  int paw_index = -1;
  int zone = -1;  // index into the PAW's letter zones
  Position position = Position::I;
  int chain = -1;  // contour chain behind P/Q/B hits, -1 for H/J
};

struct ColumnInterval {
  int first_col = 0;
  int last_col = 0;

  friend bool operator==(const ColumnInterval&, const ColumnInterval&) = default;
};

struct LetterZone {
  ColumnInterval columns;
  Position position = Position::I;
};

struct PawLayout {
  int order_index = 0;
  BoundingBox bbox;
  std::vector<LetterZone> zones;  // right to left
};

struct FeatureDiagnostics {
  int oversize_loops = 0;       // holes in the band whose contour reached the cap
  int rejected_loops = 0;       // holes that failed the inclusion check
  int oversize_closed = 0;      // short-zone closed contours too long for a dot
};

struct FeatureSet {
  FeatureCounts counts{};
  int nb_paws = 0;
  std::vector<FeatureHit> hits;
  std::vector<PawLayout> paws;
  FeatureDiagnostics diagnostics;

  int count(FeatureKind kind) const noexcept { return at(counts, kind); }
  int total_hits() const noexcept;

  /// Per-PAW tokens, e.g. "HI | HD HM BHF | HI | PD BPF": PAWs right to left,
  /// letters right to left, each token the sorted feature letters of the
  /// letter followed by its position.
  std::string position_string() const;

  void add(const FeatureHit& hit);
  /// Sums counts and PAWs, appends hits and layouts with PAW indices shifted.
  void merge(const FeatureSet& other);
};

struct ExtractOptions {
  int dilation_radius = 1;
  int diacritic_max_contour = 60;
  /// Columns inspected on each side of a letter zone.
  int position_window = 2;
  /// Zone delimiters are local minima of the band projection at or below this
  /// fraction of the PAW's maximum.
  double delimiter_fraction = 1.0 / 3.0;
};

struct DiacriticHits {
  std::vector<FeatureHit> upper;
  std::vector<FeatureHit> lower;
};

/// Closed outer chains shorter than the cap lying wholly above the upper
/// baseline (P) or wholly below the lower one (Q).
DiacriticHits detect_diacritics(std::span<const ContourChain> chains, const Baselines& baselines,
                                const FeatureThresholds& thresholds);

struct LoopHits {
  std::vector<FeatureHit> loops;
  int oversize = 0;
  int rejected = 0;
};

/// Inner chains with a point in the band and fewer points than the cap,
/// confirmed by filling the hole inside its isolated word part and checking
/// that the chain disappears. `word` is the raster the chains were traced from.
LoopHits detect_loops(std::span<const ContourChain> chains, const BinaryRaster& word,
                      const Baselines& baselines, const FeatureThresholds& thresholds);

/// Ink belonging to diacritic-classified components of `word` (radius 0).
BinaryRaster diacritic_mask(const BinaryRaster& word, const Baselines& baselines,
                            const FeatureThresholds& thresholds);

/// One H per 8-connected region of non-excluded ink strictly more than
/// marge_h rows above upper_row, located at its topmost pixel.
std::vector<FeatureHit> detect_poles(const BinaryRaster& word, const Baselines& baselines,
                                     const FeatureThresholds& thresholds,
                                     const BinaryRaster& excluded);
std::vector<FeatureHit> detect_poles(const BinaryRaster& word, const Baselines& baselines,
                                     const FeatureThresholds& thresholds);

/// One J per 8-connected region of non-excluded ink strictly more than
/// marge_j rows below lower_row, located at its bottom pixel.
std::vector<FeatureHit> detect_jambs(const BinaryRaster& word, const Baselines& baselines,
                                     const FeatureThresholds& thresholds,
                                     const BinaryRaster& excluded);
std::vector<FeatureHit> detect_jambs(const BinaryRaster& word, const Baselines& baselines,
                                     const FeatureThresholds& thresholds);

/// Letter zones of one PAW: the body columns split at local minima of the
/// band projection that do not exceed delimiter_fraction of its maximum.
std::vector<ColumnInterval> letter_zones(const Paw& paw, const Baselines& baselines,
                                         double delimiter_fraction = 1.0 / 3.0);

/// Ink count in the band within `window` columns outside each zone boundary.
/// left > 0, right = 0 -> D; both -> M; right only -> F; neither -> I.
std::vector<Position> detect_positions(const BinaryRaster& word, const Baselines& baselines,
                                       std::span<const ColumnInterval> zones, int window = 2);

/// Full per-word pipeline. Throws NoInkError on a blank word.
FeatureSet extract_features(const BinaryRaster& word, const Baselines& baselines,
                            const ExtractOptions& options = {});

}  // namespace scriptid

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scriptid/classify.hpp"
#include "scriptid/eval.hpp"
#include "scriptid/features.hpp"
#include "scriptid/layout.hpp"
#include "scriptid/raster.hpp"

namespace scriptid {

enum class PrimitiveKind { BodyRun, Bar, Tail, Dot, Ring };
enum class Zone { Above, Band, Below };

/// One drawing instruction. A body-run opens a letter; every other primitive
/// attaches to the most recent letter.
struct Primitive {
  PrimitiveKind kind = PrimitiveKind::BodyRun;
  int size = 0;            // body-run width, bar height, tail depth, ring diameter
  Zone zone = Zone::Band;  // dots and rings
  bool joined = false;     // body-run: ligature to the previous letter, same PAW

  static Primitive body(int width, bool joined = false) {
    return {PrimitiveKind::BodyRun, width, Zone::Band, joined};
  }
  static Primitive bar(int height) { return {PrimitiveKind::Bar, height, Zone::Above, false}; }
  static Primitive tail(int depth) { return {PrimitiveKind::Tail, depth, Zone::Below, false}; }
  static Primitive dot(Zone zone) { return {PrimitiveKind::Dot, 3, zone, false}; }
  static Primitive ring(int diameter, Zone zone) {
    return {PrimitiveKind::Ring, diameter, zone, false};
  }
};

/// Strokes are listed in reading order, so the first letter is drawn rightmost.
struct GlyphSpec {
  int band_height = 10;  // lower_row - upper_row
  std::vector<Primitive> strokes;
  std::uint64_t seed = 0;
  int canvas_width = 0;   // 0 fits the layout
  int canvas_height = 0;  // 0 fits the layout
};

struct SyntheticWord {
  BinaryRaster raster{1, 1};
  FeatureSet expected;
  Baselines band;
};

struct SyntheticPage {
  BinaryRaster raster{1, 1};
  FeatureSet expected;
  std::vector<Baselines> line_bands;
  std::string script;
};

struct PageSpec {
  int lines = 4;
  int paws_per_line = 24;
};

/// Draws the glyph. Expected features follow from the primitives alone:
/// a bar is H iff taller than 2 * band_height, a tail is J iff deeper than
/// band_height, dots and zone rings are P/Q, band rings are B.
/// Throws SynthError when the layout is invalid or exceeds a fixed canvas.
SyntheticWord generate(const GlyphSpec& spec);

/// Words whose corpus-wide per-PAW feature frequencies follow the profile.
std::vector<SyntheticWord> generate_corpus(const ScriptProfile& profile, int n_words,
                                           std::uint64_t seed);

/// Lines of PAWs stacked into a page, each line stratified to the profile.
SyntheticPage generate_page(const ScriptProfile& profile, const PageSpec& spec,
                            std::uint64_t seed);

/// Turns round(fraction * width * height) uniformly drawn cells to background.
BinaryRaster add_salt_noise(const BinaryRaster& img, double fraction, std::uint64_t seed);

/// Writes `<prefix>_<nnnn>.pbm` files (P4) and `ground_truth.txt` into `dir`.
std::vector<GroundTruth> save_corpus(const std::filesystem::path& dir,
                                     std::span<const SyntheticWord> words,
                                     const std::optional<std::string>& script,
                                     const std::string& prefix = "word");
std::vector<GroundTruth> save_corpus(const std::filesystem::path& dir,
                                     std::span<const SyntheticPage> pages,
                                     const std::string& prefix = "page");

}  // namespace scriptid

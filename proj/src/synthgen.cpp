#include "scriptid/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>

#include "scriptid/error.hpp"

namespace scriptid {

namespace {

constexpr int kCanvasMargin = 4;
constexpr int kLetterPad = 4;   // body columns left and right of the slots
constexpr int kSlotSpacing = 6;
constexpr int kLigature = 6;    // columns between joined letters
constexpr int kPawGap = 10;
constexpr int kZoneGap = 6;     // blank rows between the band and a dot or ring
constexpr int kStrokeWidth = 2;
constexpr int kDotSize = 3;
constexpr int kLineGap = 8;

struct Letter {
  int width = 0;
  int paw = 0;
  int index_in_paw = 0;
  std::vector<Primitive> attachments;
  int left = 0;  // filled during placement
};

int slot_width(const Primitive& p) {
  switch (p.kind) {
    case PrimitiveKind::Bar:
    case PrimitiveKind::Tail: return kStrokeWidth;
    case PrimitiveKind::Dot: return kDotSize;
    case PrimitiveKind::Ring: return p.size;
    case PrimitiveKind::BodyRun: break;
  }
  return 0;
}

int extent_above(const Primitive& p) {
  if (p.kind == PrimitiveKind::Bar) return p.size;
  if (p.zone != Zone::Above) return 0;
  if (p.kind == PrimitiveKind::Dot) return kZoneGap + kDotSize;
  if (p.kind == PrimitiveKind::Ring) return kZoneGap + p.size;
  return 0;
}

int extent_below(const Primitive& p) {
  if (p.kind == PrimitiveKind::Tail) return p.size;
  if (p.zone != Zone::Below) return 0;
  if (p.kind == PrimitiveKind::Dot) return kZoneGap + kDotSize;
  if (p.kind == PrimitiveKind::Ring) return kZoneGap + p.size;
  return 0;
}

void validate(const Primitive& p, int band) {
  switch (p.kind) {
    case PrimitiveKind::BodyRun:
      if (p.size < 1) throw SynthError("body-run width must be positive");
      break;
    case PrimitiveKind::Bar:
    case PrimitiveKind::Tail:
      if (p.size < 1) throw SynthError("bar height and tail depth must be positive");
      break;
    case PrimitiveKind::Dot:
      if (p.zone == Zone::Band) throw SynthError("dots go above or below the band");
      break;
    case PrimitiveKind::Ring:
      if (p.zone == Zone::Band) {
        if (p.size < 5 || p.size > std::min(band + 1, 16)) {
          throw SynthError("band ring diameter must lie in 5..min(band height + 1, 16)");
        }
        // The hole must not read as a letter boundary in the band projection.
        if (3 * (p.size - 2) >= 2 * (band + 1)) {
          throw SynthError("band ring too large for the band height");
        }
      } else if (p.size < 3 || p.size > 12) {
        throw SynthError("zone ring diameter must lie in 3..12");
      }
      break;
  }
}

Position position_in_paw(int index, int count) {
  if (count == 1) return Position::I;
  if (index == 0) return Position::D;
  if (index == count - 1) return Position::F;
  return Position::M;
}

}  // namespace

SyntheticWord generate(const GlyphSpec& spec) {
  const int band = spec.band_height;
  if (band < 5) throw SynthError("band height must be at least 5");

  std::vector<Letter> letters;
  int paw_count = 0;
  for (const Primitive& p : spec.strokes) {
    validate(p, band);
    if (p.kind == PrimitiveKind::BodyRun) {
      Letter letter;
      letter.width = p.size;
      if (p.joined && !letters.empty()) {
        letter.paw = letters.back().paw;
        letter.index_in_paw = letters.back().index_in_paw + 1;
      } else {
        if (p.joined) throw SynthError("first body-run cannot be joined");
        letter.paw = paw_count++;
      }
      letters.push_back(std::move(letter));
    } else {
      if (letters.empty()) throw SynthError("primitive before any body-run");
      letters.back().attachments.push_back(p);
    }
  }
  if (letters.empty()) throw SynthError("spec has no body-run");

  std::mt19937_64 rng(spec.seed);
  int above = 0;
  int below = 0;
  for (Letter& letter : letters) {
    int slots = 0;
    for (const Primitive& p : letter.attachments) {
      slots += slot_width(p);
      above = std::max(above, extent_above(p));
      below = std::max(below, extent_below(p));
    }
    if (!letter.attachments.empty()) {
      slots += kSlotSpacing * (static_cast<int>(letter.attachments.size()) - 1);
    }
    const int jitter = static_cast<int>(rng() % 3);
    letter.width = std::max(letter.width, 2 * kLetterPad + slots) + jitter;
  }
  std::vector<int> paw_sizes(paw_count, 0);
  for (const Letter& letter : letters) ++paw_sizes[letter.paw];

  int content_width = 0;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    content_width += letters[i].width;
    if (i > 0) content_width += letters[i].paw == letters[i - 1].paw ? kLigature : kPawGap;
  }
  const int upper = kCanvasMargin + above;
  const int lower = upper + band;
  const int need_width = content_width + 2 * kCanvasMargin;
  const int need_height = lower + below + kCanvasMargin + 1;
  const int width = spec.canvas_width > 0 ? spec.canvas_width : need_width;
  const int height = spec.canvas_height > 0 ? spec.canvas_height : need_height;
  if (width < need_width || height < need_height) {
    throw SynthError("primitive out of canvas: layout needs " + std::to_string(need_width) + "x" +
                     std::to_string(need_height));
  }

  SyntheticWord word;
  word.raster = BinaryRaster(width, height);
  word.band = {upper, lower};
  BinaryRaster& img = word.raster;
  FeatureSet& expected = word.expected;
  expected.nb_paws = paw_count;
  expected.paws.resize(paw_count);
  for (int i = 0; i < paw_count; ++i) expected.paws[i].order_index = i;

  // Covers each drawn rectangle in its PAW's bounding box.
  const auto draw = [&](int paw, int top, int left, int bottom, int right_col, bool value = true) {
    img.fill_rect(top, left, bottom, right_col, value);
    if (value) {
      expected.paws[paw].bbox.extend(Point{top, left});
      expected.paws[paw].bbox.extend(Point{bottom, right_col});
    }
  };

  int right = width - 1 - kCanvasMargin;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    Letter& letter = letters[i];
    if (i > 0) {
      const bool joined = letter.paw == letters[i - 1].paw;
      right = letters[i - 1].left - 1 - (joined ? kLigature : kPawGap);
      if (joined) draw(letter.paw, lower - 1, right + 1, lower, letters[i - 1].left - 1);
    }
    letter.left = right - letter.width + 1;
    draw(letter.paw, upper, letter.left, lower, right);

    PawLayout& layout = expected.paws[letter.paw];
    const int zone = static_cast<int>(layout.zones.size());
    const Position position = position_in_paw(letter.index_in_paw, paw_sizes[letter.paw]);
    layout.zones.push_back({{letter.left, right}, position});

    const auto record = [&](FeatureKind kind, Point where) {
      FeatureHit hit;
      hit.kind = kind;
      hit.location = where;
      hit.paw_index = letter.paw;
      hit.zone = zone;
      hit.position = position;
      expected.add(hit);
    };

    int col = letter.left + kLetterPad;
    for (const Primitive& p : letter.attachments) {
      const int w = slot_width(p);
      switch (p.kind) {
        case PrimitiveKind::Bar:
          draw(letter.paw, upper - p.size, col, upper - 1, col + w - 1);
          if (p.size > 2 * band) record(FeatureKind::H, {upper - p.size, col});
          break;
        case PrimitiveKind::Tail:
          draw(letter.paw, lower + 1, col, lower + p.size, col + w - 1);
          if (p.size > band) record(FeatureKind::J, {lower + p.size, col + w - 1});
          break;
        case PrimitiveKind::Dot:
        case PrimitiveKind::Ring: {
          if (p.zone == Zone::Band) {
            const int hole = p.size - 2;
            const int top = upper + (band + 1 - hole) / 2;
            draw(letter.paw, top, col + 1, top + hole - 1, col + hole, false);
            record(FeatureKind::B, {top + hole / 2, col + 1 + hole / 2});
            break;
          }
          const int top = p.zone == Zone::Above ? upper - kZoneGap - w : lower + kZoneGap + 1;
          draw(letter.paw, top, col, top + w - 1, col + w - 1);
          if (p.kind == PrimitiveKind::Ring) {
            img.fill_rect(top + 1, col + 1, top + w - 2, col + w - 2, false);
          }
          record(p.zone == Zone::Above ? FeatureKind::P : FeatureKind::Q,
                 {top + w / 2, col + w / 2});
          break;
        }
        case PrimitiveKind::BodyRun: break;
      }
      col += w + kSlotSpacing;
    }
  }
  return word;
}

namespace {

// Letters per PAW and the features assigned to each PAW of one line or word
// batch: for each kind, round(rel * paws) distinct PAWs carry one instance.
struct PawPlan {
  int band = 10;
  int letters = 1;
  std::vector<std::vector<Primitive>> attachments;  // per letter
  std::vector<int> widths;
};

std::vector<PawPlan> plan_paws(const FeatureVector& rel, const std::vector<int>& bands,
                               std::mt19937_64& rng) {
  const int paw_count = static_cast<int>(bands.size());
  std::uniform_int_distribution<int> letters_dist(1, 3);
  std::uniform_int_distribution<int> width_dist(12, 18);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<PawPlan> plan(paw_count);
  for (int i = 0; i < paw_count; ++i) {
    PawPlan& paw = plan[i];
    paw.band = bands[i];
    paw.letters = letters_dist(rng);
    paw.attachments.resize(paw.letters);
    for (int i = 0; i < paw.letters; ++i) paw.widths.push_back(width_dist(rng));
  }

  std::vector<int> order(paw_count);
  for (const FeatureKind kind : kFeatureKinds) {
    const auto k = static_cast<std::size_t>(kind);
    const int wanted = static_cast<int>(std::lround(rel[k] * paw_count));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int n = 0; n < wanted; ++n) {
      PawPlan& paw = plan[order[n]];
      const int letter = std::uniform_int_distribution<int>(0, paw.letters - 1)(rng);
      const int band = paw.band;
      Primitive p;
      switch (kind) {
        case FeatureKind::H:
          p = Primitive::bar(2 * band + std::uniform_int_distribution<int>(6, 10)(rng));
          break;
        case FeatureKind::J:
          p = Primitive::tail(band + std::uniform_int_distribution<int>(4, 8)(rng));
          break;
        case FeatureKind::P:
          p = unit(rng) < 0.7 ? Primitive::dot(Zone::Above) : Primitive::ring(5, Zone::Above);
          break;
        case FeatureKind::Q:
          p = unit(rng) < 0.7 ? Primitive::dot(Zone::Below) : Primitive::ring(5, Zone::Below);
          break;
        case FeatureKind::B:
          p = Primitive::ring(std::uniform_int_distribution<int>(7, 8)(rng), Zone::Band);
          break;
      }
      paw.attachments[letter].push_back(p);
    }
  }

  // Short strokes that must not count as poles or jambs.
  for (PawPlan& paw : plan) {
    if (unit(rng) < 0.15) {
      paw.attachments[0].push_back(
          Primitive::bar(std::uniform_int_distribution<int>(2, paw.band / 2)(rng)));
    }
    if (unit(rng) < 0.10) {
      paw.attachments[paw.letters - 1].push_back(
          Primitive::tail(std::uniform_int_distribution<int>(2, paw.band / 2)(rng)));
    }
  }
  return plan;
}

GlyphSpec spec_from_plan(std::span<const PawPlan> paws, int band, std::uint64_t seed) {
  GlyphSpec spec;
  spec.band_height = band;
  spec.seed = seed;
  for (const PawPlan& paw : paws) {
    for (int i = 0; i < paw.letters; ++i) {
      spec.strokes.push_back(Primitive::body(paw.widths[i], i > 0));
      for (const Primitive& p : paw.attachments[i]) spec.strokes.push_back(p);
    }
  }
  return spec;
}

void shift_rows(FeatureSet& features, int drow) {
  for (FeatureHit& hit : features.hits) hit.location.row += drow;
  for (PawLayout& layout : features.paws) {
    layout.bbox.min_row += drow;
    layout.bbox.max_row += drow;
  }
}

}  // namespace

std::vector<SyntheticWord> generate_corpus(const ScriptProfile& profile, int n_words,
                                           std::uint64_t seed) {
  if (n_words <= 0) throw std::invalid_argument("corpus needs at least one word");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> band_dist(9, 11);
  std::uniform_int_distribution<int> paws_dist(1, 3);

  std::vector<int> bands(n_words);
  std::vector<int> paw_counts(n_words);
  std::vector<int> paw_bands;
  for (int w = 0; w < n_words; ++w) {
    bands[w] = band_dist(rng);
    paw_counts[w] = paws_dist(rng);
    paw_bands.insert(paw_bands.end(), paw_counts[w], bands[w]);
  }
  // Stratified over the whole corpus, not per word.
  const auto plan = plan_paws(profile.rel(), paw_bands, rng);

  std::vector<SyntheticWord> words;
  words.reserve(n_words);
  auto next = plan.begin();
  for (int w = 0; w < n_words; ++w) {
    const std::vector<PawPlan> word_paws(next, next + paw_counts[w]);
    next += paw_counts[w];
    words.push_back(generate(spec_from_plan(word_paws, bands[w], rng())));
  }
  return words;
}

SyntheticPage generate_page(const ScriptProfile& profile, const PageSpec& spec,
                            std::uint64_t seed) {
  if (spec.lines <= 0 || spec.paws_per_line <= 0) {
    throw std::invalid_argument("page needs at least one line and one PAW per line");
  }
  std::mt19937_64 rng(seed);
  const int band = std::uniform_int_distribution<int>(9, 11)(rng);

  std::vector<SyntheticWord> lines;
  for (int i = 0; i < spec.lines; ++i) {
    const auto plan = plan_paws(profile.rel(), std::vector<int>(spec.paws_per_line, band), rng);
    lines.push_back(generate(spec_from_plan(plan, band, rng())));
  }

  int width = 0;
  int height = 0;
  for (const SyntheticWord& line : lines) {
    width = std::max(width, line.raster.width());
    height += line.raster.height() + kLineGap;
  }
  height -= kLineGap;

  SyntheticPage page;
  page.script = profile.name;
  page.raster = BinaryRaster(width, height);
  int top = 0;
  for (SyntheticWord& line : lines) {
    // Lines are right-aligned, as Arabic text is.
    const int left = width - line.raster.width();
    for (int r = 0; r < line.raster.height(); ++r) {
      for (int c = 0; c < line.raster.width(); ++c) {
        if (line.raster.ink(r, c)) page.raster.set(top + r, left + c);
      }
    }
    FeatureSet shifted = line.expected;
    shift_rows(shifted, top);
    for (FeatureHit& hit : shifted.hits) hit.location.col += left;
    for (PawLayout& layout : shifted.paws) {
      layout.bbox.min_col += left;
      layout.bbox.max_col += left;
      for (LetterZone& zone : layout.zones) {
        zone.columns.first_col += left;
        zone.columns.last_col += left;
      }
    }
    page.expected.merge(shifted);
    page.line_bands.push_back({line.band.upper_row + top, line.band.lower_row + top});
    top += line.raster.height() + kLineGap;
  }
  return page;
}

BinaryRaster add_salt_noise(const BinaryRaster& img, double fraction, std::uint64_t seed) {
  if (fraction < 0.0 || fraction > 1.0) throw std::invalid_argument("noise fraction must be in [0, 1]");
  BinaryRaster out = img;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> row(0, img.height() - 1);
  std::uniform_int_distribution<int> col(0, img.width() - 1);
  const auto flips = static_cast<long long>(
      std::llround(fraction * static_cast<double>(img.width()) * img.height()));
  for (long long i = 0; i < flips; ++i) {
    const int r = row(rng);
    out.set(r, col(rng), false);
  }
  return out;
}

namespace {

GroundTruth truth_for(std::string id, const FeatureSet& expected,
                      const std::optional<std::string>& script) {
  GroundTruth record;
  record.image_id = std::move(id);
  record.expected = expected.counts;
  record.expected_paws = expected.nb_paws;
  record.script = script;
  return record;
}

std::string numbered(const std::string& prefix, std::size_t i) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "_%04zu", i);
  return prefix + buffer;
}

void write_truth(const std::filesystem::path& dir, std::span<const GroundTruth> records) {
  std::ofstream file(dir / "ground_truth.txt", std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + (dir / "ground_truth.txt").string());
  file << "# image_id H J P Q B PAW [SCRIPT]\n" << format_ground_truth(records);
  if (!file) throw IoError("write failed for " + (dir / "ground_truth.txt").string());
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

std::vector<GroundTruth> save_corpus(const std::filesystem::path& dir,
                                     std::span<const SyntheticWord> words,
                                     const std::optional<std::string>& script,
                                     const std::string& prefix) {
  ensure_dir(dir);
  std::vector<GroundTruth> records;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::string id = numbered(prefix, i);
    save(words[i].raster, dir / (id + ".pbm"));
    records.push_back(truth_for(id, words[i].expected, script));
  }
  write_truth(dir, records);
  return records;
}

std::vector<GroundTruth> save_corpus(const std::filesystem::path& dir,
                                     std::span<const SyntheticPage> pages,
                                     const std::string& prefix) {
  ensure_dir(dir);
  std::vector<GroundTruth> records;
  for (std::size_t i = 0; i < pages.size(); ++i) {
    const std::string id = numbered(prefix, i);
    save(pages[i].raster, dir / (id + ".pbm"));
    records.push_back(truth_for(id, pages[i].expected, pages[i].script));
  }
  write_truth(dir, records);
  return records;
}

}  // namespace scriptid

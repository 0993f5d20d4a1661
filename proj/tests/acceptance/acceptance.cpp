// Acceptance suite: one PASS/FAIL line per criterion.
//
//   scriptid_acceptance <path-to-scriptid-cli> <work-dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support.hpp"
#include "scriptid/classify.hpp"
#include "scriptid/eval.hpp"
#include "scriptid/features.hpp"
#include "scriptid/geometry.hpp"
#include "scriptid/layout.hpp"
#include "scriptid/pipeline.hpp"
#include "scriptid/synthgen.hpp"

namespace fs = std::filesystem;
using namespace scriptid;

namespace {

// Pinned tolerances.
constexpr double kPercentTolerance = 0.005;  // two decimals
constexpr double kArithmeticBudgetMs = 1.0;
constexpr double kRoundTripBudgetS = 30.0;
constexpr int kRoundTripWords = 200;
constexpr int kPagesPerScript = 50;
constexpr double kDegradedAccuracy = 0.90;
constexpr double kSaltFraction = 0.001;
constexpr int kRandomRasters = 1000;
constexpr int kRasterSide = 64;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

const ScriptProfile& profile(const std::vector<ScriptProfile>& all, const std::string& name) {
  return *std::find_if(all.begin(), all.end(), [&](const ScriptProfile& p) { return p.name == name; });
}

Outcome table1() {
  const auto all = builtin_profiles();
  const ScriptProfile& a = profile(all, "Arabic");
  const ScriptProfile& l = profile(all, "Latin");
  // H J P Q B
  const bool ok = a.form_count == 120 && a.raw == FeatureCounts{29, 28, 30, 11, 22} &&
                  l.form_count == 103 && l.raw == FeatureCounts{29, 12, 28, 0, 34};
  return {ok, "Arabic /120 and Latin /103 raw counts"};
}

Outcome table2() {
  struct Row {
    long long total, correct;
    double published;
  };
  const Row rows[] = {{16440, 10852, 33.99}, {12632, 8352, 33.88}, {12444, 10165, 18.31},
                      {7514, 5957, 20.72},   {13149, 9021, 31.39}};
  const auto start = Clock::now();
  double worst = 0.0;
  for (const Row& row : rows) {
    const double pct = std::round(error_rate(row.total, row.correct) * 10000.0) / 100.0;
    worst = std::max(worst, std::abs(pct - row.published));
  }
  const double ms = elapsed_ms(start);
  std::ostringstream detail;
  detail << "max deviation " << worst << " pct points, " << ms << " ms";
  return {worst < kPercentTolerance && ms < kArithmeticBudgetMs, detail.str()};
}

Outcome thresholds() {
  const Baselines band{40, 50};
  const auto t = FeatureThresholds::for_baselines(band);
  const auto word = [&](auto draw) {
    BinaryRaster img(100, 90);
    img.fill_rect(band.upper_row, 0, band.lower_row, 99);
    draw(img);
    return img;
  };
  // Notched blocks: 2(w + h) - 5 contour points.
  const auto notched = [&](int w, int h) {
    return word([&](BinaryRaster& img) {
      const int top = band.upper_row - 2 - h;
      img.fill_rect(top, 40, band.upper_row - 3, 40 + w - 1);
      img.set(top, 40, false);
    });
  };
  const BinaryRaster p59 = notched(16, 16);
  const BinaryRaster p61 = notched(17, 16);
  const auto upper_len = [&](const BinaryRaster& img) {
    for (const ContourChain& c : trace_contours(img)) {
      if (c.points.front().row < band.upper_row) return c.length();
    }
    return std::size_t{0};
  };
  ExtractOptions raw;
  raw.dilation_radius = 0;
  bool ok = upper_len(p59) == 59 && upper_len(p61) == 61;
  ok = ok && detect_diacritics(trace_contours(p59), band, t).upper.size() == 1;
  ok = ok && detect_diacritics(trace_contours(p61), band, t).upper.empty();
  ok = ok && extract_features(p59, band, raw).count(FeatureKind::P) == 1;
  ok = ok && extract_features(p61, band, raw).count(FeatureKind::P) == 0;

  const int b = band.band_height();
  const auto pole = [&](int h) {
    return extract_features(word([&](BinaryRaster& img) {
                              img.fill_rect(band.upper_row - h, 10, band.upper_row - 1, 11);
                            }),
                            band)
        .count(FeatureKind::H);
  };
  const auto jamb = [&](int d) {
    return extract_features(word([&](BinaryRaster& img) {
                              img.fill_rect(band.lower_row + 1, 10, band.lower_row + d, 11);
                            }),
                            band)
        .count(FeatureKind::J);
  };
  ok = ok && pole(2 * b + 1) == 1 && pole(2 * b - 1) == 0;
  ok = ok && jamb(b + 1) == 1 && jamb(b - 1) == 0;
  return {ok, "59/61-point chains, poles 2b+-1, jambs b+-1"};
}

Outcome round_trip() {
  const auto start = Clock::now();
  const auto all = builtin_profiles();
  int words = 0;
  int mismatches = 0;
  int degraded = 0;
  for (const ScriptProfile& p : all) {
    for (const SyntheticWord& w : generate_corpus(p, kRoundTripWords / 2, 77)) {
      ++words;
      const FeatureSet got = extract_features(w.raster, w.band);
      if (got.counts != w.expected.counts || got.nb_paws != w.expected.nb_paws ||
          got.position_string() != w.expected.position_string()) {
        ++mismatches;
      }
      const FeatureSet thick = extract_features(dilate(w.raster, 1), w.band);
      for (const FeatureKind k : {FeatureKind::P, FeatureKind::Q, FeatureKind::B}) {
        if (thick.count(k) != w.expected.count(k)) {
          ++degraded;
          break;
        }
      }
    }
  }
  const double seconds = elapsed_ms(start) / 1000.0;
  std::ostringstream detail;
  detail << words << " words, " << mismatches << " mismatches, " << degraded
         << " P/Q/B changes after dilation, " << seconds << " s";
  return {words >= kRoundTripWords && mismatches == 0 && degraded == 0 &&
              seconds < kRoundTripBudgetS,
          detail.str()};
}

Outcome classification() {
  const auto all = builtin_profiles();
  int clean_ok = 0;
  int degraded_ok = 0;
  int total = 0;
  std::uint64_t seed = 5000;
  for (const ScriptProfile& p : all) {
    for (int i = 0; i < kPagesPerScript; ++i) {
      const SyntheticPage page = generate_page(p, PageSpec{}, ++seed);
      ++total;
      if (classify(analyze_page(page.raster).features, all).label == p.name) ++clean_ok;
      const BinaryRaster noisy = add_salt_noise(dilate(page.raster, 1), kSaltFraction, seed * 31);
      if (classify(analyze_page(noisy).features, all).label == p.name) ++degraded_ok;
    }
  }
  bool blank_unknown = true;
  for (const auto& [w, h] : {std::pair{1, 1}, std::pair{64, 64}, std::pair{400, 300}}) {
    const Verdict v = classify(analyze_page(BinaryRaster(w, h)).features, all);
    blank_unknown = blank_unknown && v.label == Verdict::kUnknown;
  }
  const double degraded_rate = static_cast<double>(degraded_ok) / total;
  std::ostringstream detail;
  detail << "clean " << clean_ok << "/" << total << ", degraded " << degraded_ok << "/" << total
         << ", blank pages " << (blank_unknown ? "Unknown" : "labelled");
  return {clean_ok == total && degraded_rate >= kDegradedAccuracy && blank_unknown, detail.str()};
}

Outcome geometry() {
  std::mt19937_64 rng(31337);
  int failures = 0;
  for (int i = 0; i < kRandomRasters; ++i) {
    const BinaryRaster img = testing::random_raster(rng, kRasterSide);
    const auto ink = static_cast<long long>(img.ink_count());
    if (project(img, Axis::Horizontal).total() != ink) ++failures;
    if (project(img, Axis::Vertical).total() != ink) ++failures;

    int outers = 0;
    int inners = 0;
    for (const ContourChain& c : trace_contours(img)) (c.polarity == Polarity::Outer ? outers : inners)++;
    if (outers != testing::count_regions(img, true, true)) ++failures;
    if (inners != testing::count_holes(img)) ++failures;

    const BinaryRaster grown = dilate(img, 1 + static_cast<int>(rng() % 2));
    for (int r = 0; r < img.height(); ++r) {
      for (int c = 0; c < img.width(); ++c) {
        if (img.ink(r, c) && !grown.ink(r, c)) ++failures;
      }
    }

    if (ink > 0) {
      const int k = 1 + static_cast<int>(rng() % 8);
      BinaryRaster tall(img.width(), img.height() + k);
      for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) tall.set(r + k, c, img.ink(r, c));
      }
      const Baselines a = estimate_baselines(img);
      const Baselines b = estimate_baselines(tall);
      if (b.upper_row != a.upper_row + k || b.lower_row != a.lower_row + k) ++failures;
    }
  }
  return {failures == 0, std::to_string(kRandomRasters) + " rasters, " +
                             std::to_string(failures) + " violations"};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run(const std::string& command) {
  const int status = std::system(command.c_str());
  return status;
}

Outcome determinism(const std::string& cli, const fs::path& work) {
  fs::remove_all(work);
  fs::create_directories(work);
  const auto q = [](const fs::path& p) { return "'" + p.string() + "'"; };
  const std::string quiet = " 2>/dev/null";

  std::vector<std::string> failed;
  const auto twice = [&](const std::string& name, const std::function<std::string(int)>& command,
                         const std::function<std::string(int)>& report) {
    std::string first;
    for (int i = 0; i < 2; ++i) {
      if (run(command(i)) != 0) {
        failed.push_back(name + " exit");
        return;
      }
      const std::string bytes = report(i);
      if (bytes.empty()) {
        failed.push_back(name + " empty");
        return;
      }
      if (i == 0) first = bytes;
      else if (bytes != first) failed.push_back(name);
    }
  };

  const fs::path words = work / "words";
  const fs::path pages = work / "pages";
  twice(
      "generate",
      [&](int i) {
        const fs::path out = i == 0 ? words : work / "words_again";
        return cli + " generate --output " + q(out) + " --count 12 --seed 9 > " +
               q(work / ("generate" + std::to_string(i) + ".json")) + quiet;
      },
      [&](int i) {
        const fs::path out = i == 0 ? words : work / "words_again";
        std::string all = slurp(work / ("generate" + std::to_string(i) + ".json"));
        all += slurp(out / "ground_truth.txt");
        for (int k = 0; k < 12; ++k) {
          char name[32];
          std::snprintf(name, sizeof name, "word_%04d.pbm", k);
          all += slurp(out / name);
        }
        return all;
      });
  if (run(cli + " generate --kind page --script Latin --output " + q(pages) +
          " --count 2 --seed 3 > /dev/null" + quiet) != 0) {
    failed.push_back("generate pages");
  }

  const auto report_run = [&](const std::string& name, const std::string& args) {
    twice(
        name,
        [&](int i) {
          return cli + " " + args + " --output " + q(work / (name + std::to_string(i) + ".out")) +
                 " > /dev/null" + quiet;
        },
        [&](int i) { return slurp(work / (name + std::to_string(i) + ".out")); });
  };
  report_run("features", "features --input " + q(words) + " --input " + q(pages));
  report_run("features-text", "features --format text --input " + q(words));
  report_run("classify", "classify --per-line --input " + q(pages) + " --input " + q(words));
  report_run("evaluate", "evaluate --input " + q(words));
  report_run("evaluate-text", "evaluate --format text --input " + q(pages));

  std::string detail = "generate, features, classify, evaluate run twice";
  for (const std::string& f : failed) detail += "; differs: " + f;
  return {failed.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: scriptid_acceptance <scriptid-cli> <work-dir>\n";
    return 2;
  }
  const std::string cli = std::string("'") + argv[1] + "'";
  const fs::path work = argv[2];

  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "profile table fidelity", table1},
      {2, "published error-rate arithmetic", table2},
      {3, "threshold and margin semantics", thresholds},
      {4, "synthetic round trip", round_trip},
      {5, "script classification", classification},
      {6, "geometry invariants", geometry},
      {7, "CLI determinism", [&] { return determinism(cli, work); }},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.id << "  " << c.name << "  (" << o.detail
              << ")\n";
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed") << '\n';
  return failures == 0 ? 0 : 1;
}

#include "scriptid/classify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "scriptid/error.hpp"

namespace scriptid {

FeatureVector ScriptProfile::rel() const {
  FeatureVector out{};
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<double>(raw[i]) / form_count;
  }
  return out;
}

namespace {

ScriptProfile make_profile(std::string name, int forms, int h, int j, int p, int q, int b) {
  ScriptProfile profile;
  profile.name = std::move(name);
  profile.form_count = forms;
  at(profile.raw, FeatureKind::H) = h;
  at(profile.raw, FeatureKind::J) = j;
  at(profile.raw, FeatureKind::P) = p;
  at(profile.raw, FeatureKind::Q) = q;
  at(profile.raw, FeatureKind::B) = b;
  return profile;
}

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) words.push_back(line.substr(start, i - start));
  }
  return words;
}

}  // namespace

std::vector<ScriptProfile> builtin_profiles() {
  return {make_profile("Arabic", 120, 29, 28, 30, 11, 22),
          make_profile("Latin", 103, 29, 12, 28, 0, 34)};
}

std::vector<ScriptProfile> parse_profiles(std::string_view text) {
  std::vector<ScriptProfile> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto words = split_words(line);
    if (words.empty()) continue;

    ScriptProfile profile;
    profile.name = std::string(words[0]);
    std::array<bool, 6> seen{};
    for (std::size_t w = 1; w < words.size(); ++w) {
      const auto eq = words[w].find('=');
      if (eq == std::string_view::npos) {
        throw ParseError(line_no, "line " + std::to_string(line_no) + ": expected key=value");
      }
      const std::string_view key = words[w].substr(0, eq);
      const std::string_view value = words[w].substr(eq + 1);
      int n = 0;
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
      if (ec != std::errc{} || ptr != value.data() + value.size() || n < 0) {
        throw ParseError(line_no, "line " + std::to_string(line_no) + ": bad count for " +
                                      std::string(key));
      }
      if (key == "form_count") {
        profile.form_count = n;
        seen[5] = true;
      } else if (key.size() == 1 && feature_from_char(key[0])) {
        const auto kind = *feature_from_char(key[0]);
        at(profile.raw, kind) = n;
        seen[static_cast<std::size_t>(kind)] = true;
      } else {
        throw ParseError(line_no, "line " + std::to_string(line_no) + ": unknown key " +
                                      std::string(key));
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw ParseError(line_no, "line " + std::to_string(line_no) +
                                    ": profile needs form_count, H, J, P, Q and B");
    }
    if (profile.form_count <= 0) {
      throw ParseError(line_no, "line " + std::to_string(line_no) + ": form_count must be > 0");
    }
    for (const int raw : profile.raw) {
      if (raw > profile.form_count) {
        throw ParseError(line_no, "line " + std::to_string(line_no) +
                                      ": feature count exceeds form_count");
      }
    }
    out.push_back(std::move(profile));
  }
  return out;
}

std::vector<ScriptProfile> load_profiles(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open " + path.string());
  std::ostringstream text;
  text << file.rdbuf();
  return parse_profiles(text.str());
}

std::string format_profile(const ScriptProfile& profile) {
  std::ostringstream out;
  out << profile.name << " form_count=" << profile.form_count;
  for (const FeatureKind kind : kFeatureKinds) out << ' ' << to_char(kind) << '=' << at(profile.raw, kind);
  return out.str();
}

FeatureVector normalize(const FeatureCounts& counts, int nb_paws) {
  if (nb_paws <= 0) throw DegenerateInputError("cannot normalize a feature set without PAWs");
  FeatureVector out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<double>(counts[i]) / nb_paws;
  return out;
}

FeatureVector normalize(const FeatureSet& features) {
  return normalize(features.counts, features.nb_paws);
}

Verdict classify(const FeatureCounts& counts, int nb_paws, std::span<const ScriptProfile> profiles,
                 const ClassifyOptions& options) {
  if (profiles.size() < 2) throw std::invalid_argument("classification needs at least two profiles");
  constexpr double kInf = std::numeric_limits<double>::infinity();

  Verdict verdict;
  verdict.label = std::string(Verdict::kUnknown);
  const int mass = std::accumulate(counts.begin(), counts.end(), 0);
  const bool enough = mass >= options.min_mass && nb_paws > 0;
  const FeatureVector observed = enough ? normalize(counts, nb_paws) : FeatureVector{};
  const bool lower_dots = observed[static_cast<std::size_t>(FeatureKind::Q)] >= options.q_min;

  for (const ScriptProfile& profile : profiles) {
    ProfileScore score;
    score.name = profile.name;
    if (lower_dots && at(profile.raw, FeatureKind::Q) == 0) {
      score.excluded = true;
      score.distance = kInf;
    } else {
      const FeatureVector expected = profile.rel();
      for (std::size_t i = 0; i < expected.size(); ++i) {
        score.distance += std::abs(observed[i] - expected[i]);
      }
    }
    verdict.scores.push_back(std::move(score));
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < verdict.scores.size(); ++i) {
    if (verdict.scores[i].distance < verdict.scores[best].distance) best = i;
  }
  double second = kInf;
  for (std::size_t i = 0; i < verdict.scores.size(); ++i) {
    if (i != best) second = std::min(second, verdict.scores[i].distance);
  }
  const double best_distance = verdict.scores[best].distance;
  verdict.margin = std::isinf(best_distance) ? 0.0 : second - best_distance;

  if (enough && !std::isinf(best_distance) && verdict.margin >= options.min_margin) {
    verdict.label = verdict.scores[best].name;
  }
  return verdict;
}

Verdict classify(const FeatureSet& features, std::span<const ScriptProfile> profiles,
                 const ClassifyOptions& options) {
  return classify(features.counts, features.nb_paws, profiles, options);
}

}  // namespace scriptid

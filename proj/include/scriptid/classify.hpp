#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scriptid/features.hpp"

namespace scriptid {

/// Relative frequency per FeatureKind.
using FeatureVector = std::array<double, 5>;

/// Occurrence counts of each primitive over the letter forms of an alphabet.
struct ScriptProfile {
  std::string name;
  int form_count = 0;
  FeatureCounts raw{};

  FeatureVector rel() const;
};

/// The Arabic (120 forms) and Latin (103 forms) letter-form tables.
std::vector<ScriptProfile> builtin_profiles();

/// One profile per line: `<name> form_count=<n> H=<n> J=<n> P=<n> Q=<n> B=<n>`,
/// '#' starts a comment. Keys may come in any order; all are required.
std::vector<ScriptProfile> parse_profiles(std::string_view text);
std::vector<ScriptProfile> load_profiles(const std::filesystem::path& path);
std::string format_profile(const ScriptProfile& profile);

/// Counts divided by the PAW count. Throws DegenerateInputError when
/// nb_paws is 0.
FeatureVector normalize(const FeatureSet& features);
FeatureVector normalize(const FeatureCounts& counts, int nb_paws);

struct ClassifyOptions {
  int min_mass = 3;
  double min_margin = 0.05;
  /// Normalized Q at or above this rules out profiles without lower dots.
  double q_min = 0.02;
};

struct ProfileScore {
  std::string name;
  double distance = 0.0;  // L1; +inf when excluded
  bool excluded = false;
};

struct Verdict {
  static constexpr std::string_view kUnknown = "Unknown";

  std::string label;
  std::vector<ProfileScore> scores;  // profile order
  double margin = 0.0;               // second-best minus best distance
};

Verdict classify(const FeatureCounts& counts, int nb_paws, std::span<const ScriptProfile> profiles,
                 const ClassifyOptions& options = {});
Verdict classify(const FeatureSet& features, std::span<const ScriptProfile> profiles,
                 const ClassifyOptions& options = {});

}  // namespace scriptid

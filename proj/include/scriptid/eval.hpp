#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scriptid/features.hpp"

namespace scriptid {

/// Expected counts for one image.
///   img001 H=2 J=1 P=3 Q=0 B=1 PAW=4 [SCRIPT=Arabic]
struct GroundTruth {
  std::string image_id;
  FeatureCounts expected{};
  int expected_paws = 0;
  std::optional<std::string> script;
  int line = 0;  // source line, 0 if built in memory
};

std::vector<GroundTruth> parse_ground_truth(std::string_view text);
std::vector<GroundTruth> load_ground_truth(const std::filesystem::path& path);
std::string format_ground_truth(std::span<const GroundTruth> records);

struct Prediction {
  std::string image_id;
  FeatureCounts counts{};
  int paws = 0;
  std::optional<std::string> verdict;

  static Prediction from(std::string image_id, const FeatureSet& features,
                         std::optional<std::string> verdict = std::nullopt);
};

struct FeatureScore {
  std::string feature;  // "H" .. "B", "nbPAWs"
  long long total = 0;
  long long correct = 0;
  double error_rate = 0.0;
  bool undefined = false;  // total was 0; error_rate reported as 0
};

struct DocumentResult {
  std::string image_id;
  FeatureCounts predicted{};
  FeatureCounts expected{};
  int predicted_paws = 0;
  int expected_paws = 0;
  std::optional<std::string> verdict;
  std::optional<std::string> script;
  std::optional<bool> verdict_correct;
};

struct EvalReport {
  /// H, J, P, Q, B then nbPAWs, each with correct = sum of min(predicted, expected).
  std::vector<FeatureScore> per_feature;
  /// nbPAWs with the middle column holding the error count sum |predicted - expected|.
  FeatureScore paw_errors;
  std::vector<DocumentResult> per_document;  // sorted by image_id
};

/// 1 - correct / total; 0 when total is 0.
double error_rate(long long total, long long correct) noexcept;

/// Throws EvaluationError for a prediction without ground truth or duplicate
/// prediction ids.
EvalReport score(std::span<const Prediction> predictions, std::span<const GroundTruth> truth);

/// Plain-text table: Feature | Total | Correctly extracted | Error rate.
std::string format_table(const EvalReport& report);

}  // namespace scriptid

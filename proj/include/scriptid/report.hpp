#pragma once

#include <string>

#include <json.hpp>

#include "scriptid/classify.hpp"
#include "scriptid/eval.hpp"
#include "scriptid/features.hpp"
#include "scriptid/pipeline.hpp"

namespace scriptid {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFeaturesSchema = "scriptid.features/1";
inline constexpr const char* kClassifySchema = "scriptid.classify/1";
inline constexpr const char* kEvaluateSchema = "scriptid.evaluate/1";
inline constexpr const char* kGenerateSchema = "scriptid.generate/1";

Json counts_json(const FeatureCounts& counts);
Json vector_json(const FeatureVector& values);
Json features_json(const FeatureSet& features);
Json lines_json(const PageAnalysis& analysis);
/// Infinite distances and margins are written as null.
Json verdict_json(const Verdict& verdict);
Json eval_json(const EvalReport& report);

/// Two-space indented dump with every float printed as %.4f.
std::string dump(const Json& value);

}  // namespace scriptid

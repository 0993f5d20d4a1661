#include "scriptid/report.hpp"

#include <cmath>
#include <cstdio>

namespace scriptid {

namespace {

Json number_or_null(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

Json bbox_json(const BoundingBox& box) {
  return Json{{"min_row", box.min_row},
              {"min_col", box.min_col},
              {"max_row", box.max_row},
              {"max_col", box.max_col}};
}

std::string position_name(Position position) { return std::string(1, to_char(position)); }

Json score_json(const FeatureScore& score) {
  return Json{{"feature", score.feature},
              {"total", score.total},
              {"correct", score.correct},
              {"error_rate", score.error_rate * 100.0},
              {"undefined", score.undefined}};
}

void write(const Json& value, std::string& out, int depth) {
  const std::string indent(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string closing(2 * static_cast<std::size_t>(depth), ' ');
  switch (value.type()) {
    case Json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ",\n";
        first = false;
        out += indent + Json(key).dump() + ": ";
        write(item, out, depth + 1);
      }
      out += "\n" + closing + "}";
      return;
    }
    case Json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i > 0) out += ",\n";
        out += indent;
        write(value[i], out, depth + 1);
      }
      out += "\n" + closing + "]";
      return;
    }
    case Json::value_t::number_float: {
      char buffer[64];
      std::snprintf(buffer, sizeof buffer, "%.4f", value.get<double>());
      out += buffer;
      return;
    }
    default: out += value.dump();
  }
}

}  // namespace

Json counts_json(const FeatureCounts& counts) {
  Json out = Json::object();
  for (const FeatureKind kind : kFeatureKinds) out[std::string(1, to_char(kind))] = at(counts, kind);
  return out;
}

Json vector_json(const FeatureVector& values) {
  Json out = Json::object();
  for (const FeatureKind kind : kFeatureKinds) {
    out[std::string(1, to_char(kind))] = values[static_cast<std::size_t>(kind)];
  }
  return out;
}

Json features_json(const FeatureSet& features) {
  Json paws = Json::array();
  for (const PawLayout& layout : features.paws) {
    Json zones = Json::array();
    for (const LetterZone& zone : layout.zones) {
      zones.push_back(Json{{"first_col", zone.columns.first_col},
                           {"last_col", zone.columns.last_col},
                           {"position", position_name(zone.position)}});
    }
    paws.push_back(Json{{"index", layout.order_index}, {"bbox", bbox_json(layout.bbox)},
                        {"zones", std::move(zones)}});
  }
  Json hits = Json::array();
  for (const FeatureHit& hit : features.hits) {
    hits.push_back(Json{{"kind", std::string(1, to_char(hit.kind))},
                        {"row", hit.location.row},
                        {"col", hit.location.col},
                        {"paw", hit.paw_index},
                        {"zone", hit.zone},
                        {"position", position_name(hit.position)}});
  }
  return Json{{"counts", counts_json(features.counts)},
              {"nb_paws", features.nb_paws},
              {"positions", features.position_string()},
              {"paws", std::move(paws)},
              {"hits", std::move(hits)},
              {"diagnostics",
               Json{{"oversize_loops", features.diagnostics.oversize_loops},
                    {"rejected_loops", features.diagnostics.rejected_loops},
                    {"oversize_closed", features.diagnostics.oversize_closed}}}};
}

Json lines_json(const PageAnalysis& analysis) {
  Json out = Json::array();
  for (const LineResult& line : analysis.lines) {
    out.push_back(Json{{"top_row", line.band.top_row},
                       {"bottom_row", line.band.bottom_row},
                       {"upper_row", line.baselines.upper_row},
                       {"lower_row", line.baselines.lower_row},
                       {"nb_paws", line.features.nb_paws},
                       {"counts", counts_json(line.features.counts)}});
  }
  return out;
}

Json verdict_json(const Verdict& verdict) {
  Json scores = Json::array();
  for (const ProfileScore& score : verdict.scores) {
    scores.push_back(Json{{"name", score.name},
                          {"distance", number_or_null(score.distance)},
                          {"excluded", score.excluded}});
  }
  return Json{{"label", verdict.label},
              {"margin", number_or_null(verdict.margin)},
              {"scores", std::move(scores)}};
}

Json eval_json(const EvalReport& report) {
  Json features = Json::array();
  for (const FeatureScore& score : report.per_feature) features.push_back(score_json(score));
  Json docs = Json::array();
  for (const DocumentResult& doc : report.per_document) {
    Json item{{"image_id", doc.image_id},
              {"predicted", counts_json(doc.predicted)},
              {"expected", counts_json(doc.expected)},
              {"predicted_paws", doc.predicted_paws},
              {"expected_paws", doc.expected_paws}};
    if (doc.verdict) item["verdict"] = *doc.verdict;
    if (doc.script) item["script"] = *doc.script;
    if (doc.verdict_correct) item["verdict_correct"] = *doc.verdict_correct;
    docs.push_back(std::move(item));
  }
  return Json{{"per_feature", std::move(features)},
              {"paw_errors",
               Json{{"feature", report.paw_errors.feature},
                    {"total", report.paw_errors.total},
                    {"errors", report.paw_errors.correct},
                    {"error_rate", report.paw_errors.error_rate * 100.0},
                    {"undefined", report.paw_errors.undefined}}},
              {"documents", std::move(docs)}};
}

std::string dump(const Json& value) {
  std::string out;
  write(value, out, 0);
  out += "\n";
  return out;
}

}  // namespace scriptid

#include "scriptid/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "scriptid/error.hpp"

namespace scriptid {

namespace {

[[noreturn]] void fail(int line, const std::string& message) {
  throw ParseError(line, "line " + std::to_string(line) + ": " + message);
}

int parse_count(std::string_view value, int line, std::string_view key) {
  int n = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
  if (ec != std::errc{} || ptr != value.data() + value.size() || n < 0) {
    fail(line, "bad count for " + std::string(key));
  }
  return n;
}

}  // namespace

std::vector<GroundTruth> parse_ground_truth(std::string_view text) {
  std::vector<GroundTruth> out;
  std::map<std::string, int, std::less<>> first_line;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::istringstream words{std::string(line)};
    std::string id;
    if (!(words >> id)) continue;
    if (id.find('=') != std::string::npos) fail(line_no, "record must start with an image id");

    GroundTruth record;
    record.image_id = id;
    record.line = line_no;
    std::array<bool, 6> seen{};
    std::string word;
    while (words >> word) {
      const auto eq = word.find('=');
      if (eq == std::string::npos) fail(line_no, "expected key=value, got '" + word + "'");
      const std::string key = word.substr(0, eq);
      const std::string value = word.substr(eq + 1);
      if (key == "SCRIPT") {
        if (value.empty()) fail(line_no, "empty SCRIPT value");
        record.script = value;
      } else if (key == "PAW") {
        record.expected_paws = parse_count(value, line_no, key);
        seen[5] = true;
      } else if (key.size() == 1 && feature_from_char(key[0])) {
        const auto kind = *feature_from_char(key[0]);
        if (seen[static_cast<std::size_t>(kind)]) fail(line_no, "repeated key " + key);
        at(record.expected, kind) = parse_count(value, line_no, key);
        seen[static_cast<std::size_t>(kind)] = true;
      } else {
        fail(line_no, "unknown key " + key);
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      fail(line_no, "record needs H, J, P, Q, B and PAW");
    }
    if (const auto it = first_line.find(id); it != first_line.end()) {
      throw ParseError(line_no, "duplicate image id '" + id + "' on lines " +
                                    std::to_string(it->second) + " and " + std::to_string(line_no));
    }
    first_line.emplace(id, line_no);
    out.push_back(std::move(record));
  }
  return out;
}

std::vector<GroundTruth> load_ground_truth(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path.string());
  std::ostringstream text;
  text << file.rdbuf();
  return parse_ground_truth(text.str());
}

std::string format_ground_truth(std::span<const GroundTruth> records) {
  std::ostringstream out;
  for (const GroundTruth& record : records) {
    out << record.image_id;
    for (const FeatureKind kind : kFeatureKinds) {
      out << ' ' << to_char(kind) << '=' << at(record.expected, kind);
    }
    out << " PAW=" << record.expected_paws;
    if (record.script) out << " SCRIPT=" << *record.script;
    out << '\n';
  }
  return out.str();
}

Prediction Prediction::from(std::string image_id, const FeatureSet& features,
                            std::optional<std::string> verdict) {
  return {std::move(image_id), features.counts, features.nb_paws, std::move(verdict)};
}

double error_rate(long long total, long long correct) noexcept {
  if (total <= 0) return 0.0;
  return 1.0 - static_cast<double>(correct) / static_cast<double>(total);
}

namespace {

FeatureScore make_score(std::string name, long long total, long long correct) {
  FeatureScore s;
  s.feature = std::move(name);
  s.total = total;
  s.correct = correct;
  s.error_rate = error_rate(total, correct);
  s.undefined = total == 0;
  return s;
}

}  // namespace

EvalReport score(std::span<const Prediction> predictions, std::span<const GroundTruth> truth) {
  std::map<std::string_view, const GroundTruth*> by_id;
  for (const GroundTruth& record : truth) by_id.emplace(record.image_id, &record);

  std::map<std::string_view, const Prediction*> predicted;
  for (const Prediction& p : predictions) {
    if (!by_id.count(p.image_id)) {
      throw EvaluationError("no ground truth for image '" + p.image_id + "'");
    }
    if (!predicted.emplace(p.image_id, &p).second) {
      throw EvaluationError("image '" + p.image_id + "' predicted twice");
    }
  }

  EvalReport report;
  std::array<long long, 5> totals{};
  std::array<long long, 5> correct{};
  long long paw_total = 0;
  long long paw_correct = 0;
  long long paw_errors = 0;
  // Map iteration gives image_id order, so the report ignores input order.
  for (const auto& [id, p] : predicted) {
    const GroundTruth& t = *by_id.at(id);
    for (std::size_t k = 0; k < totals.size(); ++k) {
      totals[k] += t.expected[k];
      correct[k] += std::min(p->counts[k], t.expected[k]);
    }
    paw_total += t.expected_paws;
    paw_correct += std::min(p->paws, t.expected_paws);
    paw_errors += std::abs(p->paws - t.expected_paws);

    DocumentResult doc;
    doc.image_id = p->image_id;
    doc.predicted = p->counts;
    doc.expected = t.expected;
    doc.predicted_paws = p->paws;
    doc.expected_paws = t.expected_paws;
    doc.verdict = p->verdict;
    doc.script = t.script;
    if (p->verdict && t.script) doc.verdict_correct = *p->verdict == *t.script;
    report.per_document.push_back(std::move(doc));
  }

  for (const FeatureKind kind : kFeatureKinds) {
    const auto k = static_cast<std::size_t>(kind);
    report.per_feature.push_back(make_score(std::string(1, to_char(kind)), totals[k], correct[k]));
  }
  report.per_feature.push_back(make_score("nbPAWs", paw_total, paw_correct));
  report.paw_errors.feature = "nbPAWs";
  report.paw_errors.total = paw_total;
  report.paw_errors.correct = paw_errors;
  report.paw_errors.undefined = paw_total == 0;
  report.paw_errors.error_rate = paw_total > 0 ? static_cast<double>(paw_errors) / paw_total : 0.0;
  return report;
}

std::string format_table(const EvalReport& report) {
  std::ostringstream out;
  char row[128];
  std::snprintf(row, sizeof row, "%-8s %12s %20s %11s\n", "Feature", "Total",
                "Correctly extracted", "Error rate");
  out << row;
  for (const FeatureScore& s : report.per_feature) {
    std::snprintf(row, sizeof row, "%-8s %12lld %20lld %9.2f %%%s\n", s.feature.c_str(), s.total,
                  s.correct, 100.0 * s.error_rate, s.undefined ? " (no truth)" : "");
    out << row;
  }
  std::snprintf(row, sizeof row, "%-8s %12lld %20lld %9.2f %%  (middle column: PAW errors)\n",
                report.paw_errors.feature.c_str(), report.paw_errors.total,
                report.paw_errors.correct, 100.0 * report.paw_errors.error_rate);
  out << row;
  return out.str();
}

}  // namespace scriptid

// scriptid: structural script identification from the command line.
//
//   scriptid features --input page.pbm
//   scriptid classify --input pages/ --format text
//   scriptid evaluate --input corpus/ --truth corpus/ground_truth.txt --ceiling 5
//   scriptid generate --output corpus/ --count 200 --seed 7

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scriptid/classify.hpp"
#include "scriptid/error.hpp"
#include "scriptid/eval.hpp"
#include "scriptid/pipeline.hpp"
#include "scriptid/raster.hpp"
#include "scriptid/report.hpp"
#include "scriptid/synthgen.hpp"

namespace fs = std::filesystem;
using namespace scriptid;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitCeiling = 3;

struct Config {
  std::vector<std::string> inputs;
  std::string output;
  std::string format = "json";
  int dilate = 1;
  double alpha = 0.5;
  int contour_max = 60;
  double qmin = 0.02;
  int merge_gap = 2;
  double attach_fraction = 0.6;
  std::uint64_t seed = 1;
  std::string profile_file;
  double ceiling = 100.0;
  bool per_line = false;
  std::string truth;
  int count = 10;
  std::string kind = "word";
  std::string script = "Arabic";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PageOptions page_options(const Config& config) {
  PageOptions options;
  options.lines.merge_gap = config.merge_gap;
  options.lines.attach_fraction = config.attach_fraction;
  options.baselines.alpha = config.alpha;
  options.extract.dilation_radius = config.dilate;
  options.extract.diacritic_max_contour = config.contour_max;
  return options;
}

Json config_json(const Config& config, bool with_classify) {
  Json out{{"dilate", config.dilate},
           {"alpha", config.alpha},
           {"contour_max", config.contour_max},
           {"merge_gap", config.merge_gap},
           {"attach_fraction", config.attach_fraction}};
  if (with_classify) {
    out["qmin"] = config.qmin;
    out["profiles"] = config.profile_file.empty() ? "builtin" : fs::path(config.profile_file).filename().string();
  }
  return out;
}

bool is_image(const fs::path& path) {
  const std::string ext = path.extension().string();
  return ext == ".pbm" || ext == ".pgm" || ext == ".pnm";
}

std::vector<fs::path> collect_inputs(const std::vector<std::string>& inputs) {
  if (inputs.empty()) throw UsageError("--input is required");
  std::vector<fs::path> files;
  for (const std::string& input : inputs) {
    const fs::path path(input);
    std::error_code ec;
    if (fs::is_directory(path, ec)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(path, ec)) {
        if (entry.is_regular_file() && is_image(entry.path())) found.push_back(entry.path());
      }
      if (ec) throw IoError("cannot list " + input + ": " + ec.message());
      std::sort(found.begin(), found.end(),
                [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::exists(path, ec)) {
      files.push_back(path);
    } else {
      throw IoError("no such input: " + input);
    }
  }
  return files;
}

std::vector<ScriptProfile> profiles_for(const Config& config) {
  if (config.profile_file.empty()) return builtin_profiles();
  return load_profiles(config.profile_file);
}

void emit(const Config& config, const std::string& text) {
  if (config.output.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + config.output);
  file << text;
  if (!file) throw IoError("write failed for " + config.output);
}

std::string counts_text(const FeatureCounts& counts, int paws) {
  std::ostringstream out;
  for (const FeatureKind kind : kFeatureKinds) out << to_char(kind) << '=' << at(counts, kind) << ' ';
  out << "PAW=" << paws;
  return out.str();
}

// One analyzed input file. `error` is set when the file could not be read.
struct Document {
  fs::path path;
  std::string image_id;
  std::optional<PageAnalysis> analysis;
  std::string error;
};

std::vector<Document> analyze_all(const Config& config) {
  const PageOptions options = page_options(config);
  std::vector<Document> docs;
  for (const fs::path& path : collect_inputs(config.inputs)) {
    Document doc;
    doc.path = path;
    doc.image_id = path.stem().string();
    try {
      doc.analysis = analyze_page(load_binary(path), options);
    } catch (const Error& e) {
      doc.error = e.what();
      std::cerr << "scriptid: " << path.string() << ": " << e.what() << '\n';
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

const char* status_of(const Document& doc) {
  if (!doc.analysis) return "error";
  return doc.analysis->blank ? "blank" : "ok";
}

Json document_head(const Document& doc) {
  Json out{{"image_id", doc.image_id},
           {"file", doc.path.filename().string()},
           {"status", status_of(doc)}};
  if (!doc.analysis) out["error"] = doc.error;
  return out;
}

int exit_for(const std::vector<Document>& docs) {
  for (const Document& doc : docs) {
    if (!doc.analysis) return kExitIo;
  }
  return kExitOk;
}

int cmd_features(const Config& config) {
  const auto docs = analyze_all(config);
  if (config.format == "text") {
    std::ostringstream out;
    for (const Document& doc : docs) {
      out << doc.image_id << ": ";
      if (!doc.analysis) {
        out << "error: " << doc.error << '\n';
        continue;
      }
      if (doc.analysis->blank) {
        out << "blank\n";
        continue;
      }
      const FeatureSet& f = doc.analysis->features;
      out << counts_text(f.counts, f.nb_paws) << '\n';
      for (const LineResult& line : doc.analysis->lines) {
        out << "  line " << line.band.top_row << '-' << line.band.bottom_row << ": "
            << line.features.position_string() << '\n';
      }
    }
    emit(config, out.str());
  } else {
    Json documents = Json::array();
    for (const Document& doc : docs) {
      Json item = document_head(doc);
      if (doc.analysis) {
        item["lines"] = lines_json(*doc.analysis);
        const Json features = features_json(doc.analysis->features);
        for (const auto& [key, value] : features.items()) item[key] = value;
      }
      documents.push_back(std::move(item));
    }
    emit(config, dump(Json{{"schema", kFeaturesSchema},
                           {"config", config_json(config, false)},
                           {"documents", std::move(documents)}}));
  }
  return exit_for(docs);
}

int cmd_classify(const Config& config) {
  const auto profiles = profiles_for(config);
  ClassifyOptions options;
  options.q_min = config.qmin;
  const auto docs = analyze_all(config);

  std::ostringstream text;
  Json documents = Json::array();
  for (const Document& doc : docs) {
    Json item = document_head(doc);
    text << doc.image_id << ": ";
    if (!doc.analysis) {
      text << "error: " << doc.error << '\n';
      documents.push_back(std::move(item));
      continue;
    }
    const FeatureSet& f = doc.analysis->features;
    const Verdict verdict = classify(f, profiles, options);
    item["counts"] = counts_json(f.counts);
    item["nb_paws"] = f.nb_paws;
    if (f.nb_paws > 0) item["normalized"] = vector_json(normalize(f));
    item["verdict"] = verdict_json(verdict);
    text << verdict.label << "  (" << counts_text(f.counts, f.nb_paws) << ")\n";
    if (config.per_line) {
      Json lines = Json::array();
      for (const LineResult& line : doc.analysis->lines) {
        const Verdict local = classify(line.features, profiles, options);
        lines.push_back(Json{{"top_row", line.band.top_row},
                             {"bottom_row", line.band.bottom_row},
                             {"verdict", verdict_json(local)}});
        text << "  line " << line.band.top_row << '-' << line.band.bottom_row << ": "
             << local.label << '\n';
      }
      item["lines"] = std::move(lines);
    }
    documents.push_back(std::move(item));
  }
  if (config.format == "text") {
    emit(config, text.str());
  } else {
    emit(config, dump(Json{{"schema", kClassifySchema},
                           {"config", config_json(config, true)},
                           {"per_line", config.per_line},
                           {"documents", std::move(documents)}}));
  }
  return exit_for(docs);
}

fs::path truth_path(const Config& config) {
  if (!config.truth.empty()) return config.truth;
  if (config.inputs.size() == 1 && fs::is_directory(config.inputs.front())) {
    return fs::path(config.inputs.front()) / "ground_truth.txt";
  }
  throw UsageError("--truth is required unless --input is a single corpus directory");
}

int cmd_evaluate(const Config& config) {
  const fs::path truth_file = truth_path(config);
  const auto truth = load_ground_truth(truth_file);
  const auto profiles = profiles_for(config);
  ClassifyOptions classify_options;
  classify_options.q_min = config.qmin;

  const auto docs = analyze_all(config);
  if (exit_for(docs) != kExitOk) return kExitIo;
  std::vector<Prediction> predictions;
  for (const Document& doc : docs) {
    const Verdict verdict = classify(doc.analysis->features, profiles, classify_options);
    predictions.push_back(Prediction::from(doc.image_id, doc.analysis->features, verdict.label));
  }
  const EvalReport report = score(predictions, truth);

  bool breached = false;
  for (const FeatureScore& feature : report.per_feature) {
    if (feature.error_rate * 100.0 > config.ceiling) breached = true;
  }
  const std::string table = format_table(report);
  if (config.format == "text") {
    emit(config, table);
  } else {
    Json body = eval_json(report);
    Json out{{"schema", kEvaluateSchema},
             {"config", config_json(config, true)},
             {"truth", truth_file.filename().string()},
             {"ceiling", config.ceiling},
             {"breached", breached}};
    for (const auto& [key, value] : body.items()) out[key] = value;
    emit(config, dump(out));
    if (!config.output.empty()) std::cout << table;
  }
  if (breached) {
    std::cerr << "scriptid: error rate above the " << config.ceiling << "% ceiling\n";
    return kExitCeiling;
  }
  return kExitOk;
}

int cmd_generate(const Config& config) {
  if (config.output.empty()) throw UsageError("generate needs --output <directory>");
  const auto profiles = profiles_for(config);
  const auto found = std::find_if(profiles.begin(), profiles.end(),
                                  [&](const ScriptProfile& p) { return p.name == config.script; });
  if (found == profiles.end()) throw UsageError("unknown script profile: " + config.script);

  std::vector<GroundTruth> records;
  if (config.kind == "page") {
    std::vector<SyntheticPage> pages;
    for (int i = 0; i < config.count; ++i) {
      pages.push_back(generate_page(*found, PageSpec{}, config.seed + static_cast<std::uint64_t>(i)));
    }
    records = save_corpus(config.output, pages);
  } else {
    const auto words = generate_corpus(*found, config.count, config.seed);
    records = save_corpus(config.output, words, found->name);
  }

  Json files = Json::array();
  for (const GroundTruth& record : records) {
    files.push_back(Json{{"image_id", record.image_id},
                         {"counts", counts_json(record.expected)},
                         {"nb_paws", record.expected_paws}});
  }
  std::cout << dump(Json{{"schema", kGenerateSchema},
                         {"kind", config.kind},
                         {"script", found->name},
                         {"count", config.count},
                         {"seed", config.seed},
                         {"truth", "ground_truth.txt"},
                         {"files", std::move(files)}});
  return kExitOk;
}

void add_common(CLI::App& cmd, Config& config, bool with_classify) {
  cmd.add_option("--input", config.inputs, "Image file or directory (repeatable)");
  cmd.add_option("--output", config.output, "Report file (default: stdout)");
  cmd.add_option("--format", config.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}));
  cmd.add_option("--dilate", config.dilate, "Dilation radius before contour tracing")
      ->check(CLI::Range(0, 8));
  cmd.add_option("--alpha", config.alpha, "Band row threshold as a fraction of the peak")
      ->check(CLI::Range(0.01, 1.0));
  cmd.add_option("--contour-max", config.contour_max, "Contour points below which a loop is a dot")
      ->check(CLI::Range(1, 100000));
  cmd.add_option("--merge-gap", config.merge_gap, "Blank rows that do not split a line")
      ->check(CLI::Range(0, 1000));
  cmd.add_option("--attach-fraction", config.attach_fraction,
                 "Fold line bands shorter than this fraction of the tallest")
      ->check(CLI::Range(0.0, 1.0));
  if (with_classify) {
    cmd.add_option("--qmin", config.qmin, "Normalized Q that rules out profiles without lower dots")
        ->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--profile-file", config.profile_file, "Script profiles (default: builtin)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural script identification on binary document images"};
  app.require_subcommand(1);
  Config config;

  auto* features = app.add_subcommand("features", "Extract structural features per image");
  add_common(*features, config, false);

  auto* classify_cmd = app.add_subcommand("classify", "Identify the script of each page");
  add_common(*classify_cmd, config, true);
  classify_cmd->add_flag("--per-line", config.per_line, "Also classify each line");

  auto* evaluate = app.add_subcommand("evaluate", "Score extraction against ground truth");
  add_common(*evaluate, config, true);
  evaluate->add_option("--truth", config.truth, "Ground-truth file");
  evaluate->add_option("--ceiling", config.ceiling, "Highest tolerated error rate in percent")
      ->check(CLI::Range(0.0, 100.0));

  auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic corpus");
  generate_cmd->add_option("--output", config.output, "Output directory")->required();
  generate_cmd->add_option("--count", config.count, "Words or pages to draw")
      ->check(CLI::Range(1, 100000));
  generate_cmd->add_option("--seed", config.seed, "Random seed");
  generate_cmd->add_option("--script", config.script, "Profile to sample");
  generate_cmd->add_option("--kind", config.kind, "Unit to draw")
      ->check(CLI::IsMember({"word", "page"}));
  generate_cmd->add_option("--profile-file", config.profile_file, "Script profiles (default: builtin)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (features->parsed()) return cmd_features(config);
    if (classify_cmd->parsed()) return cmd_classify(config);
    if (evaluate->parsed()) return cmd_evaluate(config);
    return cmd_generate(config);
  } catch (const UsageError& e) {
    std::cerr << "scriptid: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "scriptid: line " << e.line() << ": " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "scriptid: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "scriptid: " << e.what() << '\n';
    return kExitIo;
  }
}

#include <doctest.h>

#include <cmath>
#include <limits>

#include "scriptid/classify.hpp"
#include "scriptid/pipeline.hpp"
#include "scriptid/report.hpp"
#include "scriptid/synthgen.hpp"

using namespace scriptid;

TEST_CASE("blank pages have no lines") {
  const PageAnalysis a = analyze_page(BinaryRaster(50, 40));
  CHECK(a.blank);
  CHECK(a.lines.empty());
  CHECK(a.features.nb_paws == 0);
  CHECK(classify(a.features, builtin_profiles()).label == Verdict::kUnknown);
}

TEST_CASE("pages are analyzed line by line") {
  const SyntheticPage page = generate_page(builtin_profiles()[0], PageSpec{3, 8}, 21);
  const PageAnalysis a = analyze_page(page.raster);
  REQUIRE(a.lines.size() == 3);
  for (std::size_t i = 0; i < a.lines.size(); ++i) CHECK(a.lines[i].baselines == page.line_bands[i]);
  CHECK(a.features.counts == page.expected.counts);
  CHECK(a.features.nb_paws == page.expected.nb_paws);
  CHECK(a.features.position_string() == page.expected.position_string());
  REQUIRE(a.features.hits.size() == page.expected.hits.size());
  for (const FeatureHit& hit : a.features.hits) {
    CHECK(page.raster.contains(hit.location));
  }
}

TEST_CASE("reports print fixed decimals") {
  Json j{{"b", 1.0 / 3.0}, {"a", 2}, {"z", Json::array({0.5, "x"})}, {"e", Json::object()}};
  CHECK(dump(j) ==
        "{\n"
        "  \"b\": 0.3333,\n"
        "  \"a\": 2,\n"
        "  \"z\": [\n"
        "    0.5000,\n"
        "    \"x\"\n"
        "  ],\n"
        "  \"e\": {}\n"
        "}\n");
}

TEST_CASE("excluded scores serialize as null") {
  Verdict v;
  v.label = "Arabic";
  v.margin = std::numeric_limits<double>::infinity();
  v.scores = {{"Arabic", 0.25, false}, {"Latin", std::numeric_limits<double>::infinity(), true}};
  const Json j = verdict_json(v);
  CHECK(j["margin"].is_null());
  CHECK(j["scores"][1]["distance"].is_null());
  CHECK(j["scores"][1]["excluded"] == true);
  CHECK(dump(j).find("0.2500") != std::string::npos);
}

#pragma once

#include <vector>

#include "scriptid/features.hpp"
#include "scriptid/layout.hpp"
#include "scriptid/raster.hpp"

namespace scriptid {

struct PageOptions {
  LineOptions lines{2, 0.6};
  BaselineOptions baselines;
  ExtractOptions extract;
};

struct LineResult {
  LineBand band;
  Baselines baselines;  // page rows
  FeatureSet features;  // page coordinates
};

struct PageAnalysis {
  std::vector<LineResult> lines;
  FeatureSet features;  // all lines, PAWs numbered top line first
  bool blank = true;
};

/// Lines, then baselines and features per line. A blank page yields no lines
/// and an empty feature set.
PageAnalysis analyze_page(const BinaryRaster& page, const PageOptions& options = {});

}  // namespace scriptid

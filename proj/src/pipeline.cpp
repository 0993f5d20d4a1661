#include "scriptid/pipeline.hpp"

namespace scriptid {

namespace {

void shift_rows(FeatureSet& features, int drow) {
  for (FeatureHit& hit : features.hits) hit.location.row += drow;
  for (PawLayout& layout : features.paws) {
    if (layout.bbox.empty()) continue;
    layout.bbox.min_row += drow;
    layout.bbox.max_row += drow;
  }
}

}  // namespace

PageAnalysis analyze_page(const BinaryRaster& page, const PageOptions& options) {
  PageAnalysis analysis;
  for (const LineBand& band : extract_lines(page, options.lines)) {
    const BinaryRaster strip = crop_rows(page, band.top_row, band.bottom_row);
    LineResult line;
    line.band = band;
    const Baselines local = estimate_baselines(strip, options.baselines);
    line.baselines = {local.upper_row + band.top_row, local.lower_row + band.top_row};
    line.features = extract_features(strip, local, options.extract);
    shift_rows(line.features, band.top_row);
    analysis.features.merge(line.features);
    analysis.lines.push_back(std::move(line));
  }
  analysis.blank = analysis.lines.empty();
  return analysis;
}

}  // namespace scriptid

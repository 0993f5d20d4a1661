#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "scriptid/classify.hpp"
#include "scriptid/error.hpp"
#include "scriptid/eval.hpp"
#include "scriptid/features.hpp"
#include "scriptid/layout.hpp"
#include "scriptid/pipeline.hpp"
#include "scriptid/raster.hpp"
#include "scriptid/report.hpp"
#include "scriptid/synthgen.hpp"

namespace py = pybind11;
using namespace scriptid;

namespace {

BinaryRaster from_array(py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
  const auto h = static_cast<int>(a.shape(0));
  const auto w = static_cast<int>(a.shape(1));
  BinaryRaster img(w, h);
  auto cells = a.unchecked<2>();
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (cells(r, c)) img.set(r, c);
    }
  }
  return img;
}

py::array_t<std::uint8_t> to_array(const BinaryRaster& img) {
  py::array_t<std::uint8_t> out({img.height(), img.width()});
  auto cells = out.mutable_unchecked<2>();
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) cells(r, c) = img.ink(r, c) ? 1 : 0;
  }
  return out;
}

py::dict counts_dict(const FeatureCounts& counts) {
  py::dict out;
  for (const FeatureKind kind : kFeatureKinds) out[py::str(std::string(1, to_char(kind)))] = at(counts, kind);
  return out;
}

FeatureCounts counts_from(const py::dict& d) {
  FeatureCounts counts{};
  for (const FeatureKind kind : kFeatureKinds) {
    const std::string key(1, to_char(kind));
    if (d.contains(key)) at(counts, kind) = d[py::str(key)].cast<int>();
  }
  return counts;
}

std::vector<ScriptProfile> profiles_or_builtin(const std::optional<std::vector<ScriptProfile>>& p) {
  return p ? *p : builtin_profiles();
}

}  // namespace

PYBIND11_MODULE(_scriptid, m) {
  m.doc() = "Structural script identification on binary document images";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<NoInkError>(m, "NoInkError", base.ptr());
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<EvaluationError>(m, "EvaluationError", base.ptr());
  py::register_exception<SynthError>(m, "SynthError", base.ptr());

  py::class_<BinaryRaster>(m, "BinaryRaster")
      .def(py::init<int, int>(), py::arg("width"), py::arg("height"))
      .def_static("from_array", &from_array, py::arg("array"))
      .def("to_array", &to_array)
      .def_property_readonly("width", &BinaryRaster::width)
      .def_property_readonly("height", &BinaryRaster::height)
      .def("ink", py::overload_cast<int, int>(&BinaryRaster::sample, py::const_), py::arg("row"),
           py::arg("col"))
      .def("set", py::overload_cast<int, int, bool>(&BinaryRaster::set), py::arg("row"),
           py::arg("col"), py::arg("value") = true)
      .def("fill_rect", &BinaryRaster::fill_rect, py::arg("top"), py::arg("left"),
           py::arg("bottom"), py::arg("right"), py::arg("value") = true)
      .def("ink_count", &BinaryRaster::ink_count)
      .def(py::self == py::self)
      .def("__repr__", [](const BinaryRaster& img) {
        return "<BinaryRaster " + std::to_string(img.width()) + "x" + std::to_string(img.height()) + ">";
      });

  py::enum_<PnmFormat>(m, "PnmFormat")
      .value("PlainBitmap", PnmFormat::PlainBitmap)
      .value("PlainGraymap", PnmFormat::PlainGraymap)
      .value("RawBitmap", PnmFormat::RawBitmap)
      .value("RawGraymap", PnmFormat::RawGraymap);

  m.def("load_binary", &load_binary, py::arg("path"), py::arg("threshold") = 128);
  m.def(
      "decode_pbm",
      [](py::bytes data, int threshold) {
        const Image img = decode_pnm(std::string(data));
        if (const auto* gray = std::get_if<GrayRaster>(&img)) return binarize(*gray, threshold);
        return std::get<BinaryRaster>(img);
      },
      py::arg("data"), py::arg("threshold") = 128);
  m.def(
      "encode_pbm", [](const BinaryRaster& img) { return py::bytes(encode_pnm(img)); },
      py::arg("raster"));
  m.def("save", py::overload_cast<const BinaryRaster&, const std::filesystem::path&, PnmFormat>(&save),
        py::arg("raster"), py::arg("path"), py::arg("format") = PnmFormat::RawBitmap);
  m.def("dilate", &dilate, py::arg("raster"), py::arg("radius") = 1);

  py::class_<Baselines>(m, "Baselines")
      .def(py::init<>())
      .def(py::init([](int upper, int lower) { return Baselines{upper, lower}; }),
           py::arg("upper_row"), py::arg("lower_row"))
      .def_readwrite("upper_row", &Baselines::upper_row)
      .def_readwrite("lower_row", &Baselines::lower_row)
      .def_property_readonly("band_height", &Baselines::band_height)
      .def(py::self == py::self)
      .def("__repr__", [](const Baselines& b) {
        return "Baselines(" + std::to_string(b.upper_row) + ", " + std::to_string(b.lower_row) + ")";
      });

  m.def(
      "estimate_baselines",
      [](const BinaryRaster& word, double alpha) { return estimate_baselines(word, {alpha}); },
      py::arg("word"), py::arg("alpha") = 0.5);

  m.def(
      "extract_lines",
      [](const BinaryRaster& page, int merge_gap, double attach_fraction) {
        std::vector<std::pair<int, int>> out;
        for (const LineBand& b : extract_lines(page, {merge_gap, attach_fraction})) {
          out.emplace_back(b.top_row, b.bottom_row);
        }
        return out;
      },
      py::arg("page"), py::arg("merge_gap") = 2, py::arg("attach_fraction") = 0.0);

  py::class_<FeatureSet>(m, "FeatureSet")
      .def_property_readonly("counts", [](const FeatureSet& f) { return counts_dict(f.counts); })
      .def_readonly("nb_paws", &FeatureSet::nb_paws)
      .def("position_string", &FeatureSet::position_string)
      .def("to_json", [](const FeatureSet& f) { return dump(features_json(f)); })
      .def("__repr__", [](const FeatureSet& f) {
        return "<FeatureSet nb_paws=" + std::to_string(f.nb_paws) + " '" + f.position_string() + "'>";
      });

  m.def(
      "extract_features",
      [](const BinaryRaster& word, const Baselines& baselines, int dilation_radius, int contour_max) {
        ExtractOptions options;
        options.dilation_radius = dilation_radius;
        options.diacritic_max_contour = contour_max;
        return extract_features(word, baselines, options);
      },
      py::arg("word"), py::arg("baselines"), py::arg("dilation_radius") = 1,
      py::arg("contour_max") = 60);

  m.def(
      "analyze_page",
      [](const BinaryRaster& page, int dilation_radius, double alpha, int merge_gap,
         double attach_fraction) {
        PageOptions options;
        options.extract.dilation_radius = dilation_radius;
        options.baselines.alpha = alpha;
        options.lines = {merge_gap, attach_fraction};
        return analyze_page(page, options).features;
      },
      py::arg("page"), py::arg("dilation_radius") = 1, py::arg("alpha") = 0.5,
      py::arg("merge_gap") = 2, py::arg("attach_fraction") = 0.6);

  py::class_<ScriptProfile>(m, "ScriptProfile")
      .def(py::init([](std::string name, int form_count, const py::dict& raw) {
             return ScriptProfile{std::move(name), form_count, counts_from(raw)};
           }),
           py::arg("name"), py::arg("form_count"), py::arg("raw"))
      .def_readonly("name", &ScriptProfile::name)
      .def_readonly("form_count", &ScriptProfile::form_count)
      .def_property_readonly("raw", [](const ScriptProfile& p) { return counts_dict(p.raw); })
      .def("rel", &ScriptProfile::rel);

  m.def("builtin_profiles", &builtin_profiles);
  m.def("parse_profiles", &parse_profiles, py::arg("text"));

  py::class_<ProfileScore>(m, "ProfileScore")
      .def_readonly("name", &ProfileScore::name)
      .def_readonly("distance", &ProfileScore::distance)
      .def_readonly("excluded", &ProfileScore::excluded);

  py::class_<Verdict>(m, "Verdict")
      .def_readonly("label", &Verdict::label)
      .def_readonly("scores", &Verdict::scores)
      .def_readonly("margin", &Verdict::margin)
      .def("__repr__", [](const Verdict& v) { return "<Verdict " + v.label + ">"; });

  m.def(
      "classify",
      [](const FeatureSet& features, std::optional<std::vector<ScriptProfile>> profiles,
         double q_min, int min_mass, double min_margin) {
        ClassifyOptions options{min_mass, min_margin, q_min};
        return classify(features, profiles_or_builtin(profiles), options);
      },
      py::arg("features"), py::arg("profiles") = py::none(), py::arg("q_min") = 0.02,
      py::arg("min_mass") = 3, py::arg("min_margin") = 0.05);
  m.def(
      "classify_counts",
      [](const py::dict& counts, int nb_paws, std::optional<std::vector<ScriptProfile>> profiles,
         double q_min) {
        ClassifyOptions options;
        options.q_min = q_min;
        return classify(counts_from(counts), nb_paws, profiles_or_builtin(profiles), options);
      },
      py::arg("counts"), py::arg("nb_paws"), py::arg("profiles") = py::none(),
      py::arg("q_min") = 0.02);

  m.def("error_rate", &error_rate, py::arg("total"), py::arg("correct"));
  m.def(
      "evaluate",
      [](const std::vector<std::pair<std::string, FeatureSet>>& predictions,
         const std::string& ground_truth) {
        std::vector<Prediction> preds;
        for (const auto& [id, features] : predictions) preds.push_back(Prediction::from(id, features));
        return dump(eval_json(score(preds, parse_ground_truth(ground_truth))));
      },
      py::arg("predictions"), py::arg("ground_truth"),
      "Scores (image_id, FeatureSet) pairs against ground-truth text; returns the JSON report.");

  py::class_<SyntheticWord>(m, "SyntheticWord")
      .def_readonly("raster", &SyntheticWord::raster)
      .def_readonly("expected", &SyntheticWord::expected)
      .def_readonly("band", &SyntheticWord::band);

  py::class_<SyntheticPage>(m, "SyntheticPage")
      .def_readonly("raster", &SyntheticPage::raster)
      .def_readonly("expected", &SyntheticPage::expected)
      .def_readonly("line_bands", &SyntheticPage::line_bands)
      .def_readonly("script", &SyntheticPage::script);

  m.def("generate_corpus", &generate_corpus, py::arg("profile"), py::arg("n_words"),
        py::arg("seed"));
  m.def(
      "generate_page",
      [](const ScriptProfile& profile, int lines, int paws_per_line, std::uint64_t seed) {
        return generate_page(profile, PageSpec{lines, paws_per_line}, seed);
      },
      py::arg("profile"), py::arg("lines") = 4, py::arg("paws_per_line") = 24, py::arg("seed") = 0);
  m.def("add_salt_noise", &add_salt_noise, py::arg("raster"), py::arg("fraction"), py::arg("seed"));
}

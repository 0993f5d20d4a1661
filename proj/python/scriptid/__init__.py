"""Structural script identification on binary document images."""

from ._scriptid import (
    Baselines,
    BinaryRaster,
    DegenerateInputError,
    Error,
    EvaluationError,
    FeatureSet,
    FormatError,
    IoError,
    NoInkError,
    ParseError,
    PnmFormat,
    ProfileScore,
    ScriptProfile,
    SynthError,
    SyntheticPage,
    SyntheticWord,
    Verdict,
    add_salt_noise,
    analyze_page,
    builtin_profiles,
    classify,
    classify_counts,
    decode_pbm,
    dilate,
    encode_pbm,
    error_rate,
    estimate_baselines,
    evaluate,
    extract_features,
    extract_lines,
    generate_corpus,
    generate_page,
    load_binary,
    parse_profiles,
    save,
)

__version__ = "0.1.0"


def identify(path, **options):
    """Load an image and return its script label."""
    return classify(analyze_page(load_binary(path)), **options).label

"""tsmorph: semi-synthetic time series by gradual source-to-target morphing,
with baseline forecasting, meta-feature extraction, and correlation analysis
of forecasting performance against series characteristics."""

from .analysis import (
    ExperimentConfig,
    MorphAnalysisReport,
    PairSelection,
    build_pair_table,
    build_report,
    correlate_pairs,
    rank_by_mase,
    relative_mase,
    report_from_json,
    run_experiment,
    select_pairs,
    top_features,
)
from .features import (
    FEATURE_NAMES,
    FeatureVector,
    Spectrum,
    centroid_frequency,
    extract_features,
    forecast_error,
    local_forecast_residuals,
    low_frequency_power,
    periodogram,
    whiten_timescale,
)
from .forecasting import (
    EvaluationRecord,
    ForecasterSpec,
    evaluate,
    external_forecast,
    forecast,
    mase,
)
from .morph import MorphSequence, MorphStep, alpha_schedule, morph_at, morph_pair
from .series import (
    MISSING,
    SplitSeries,
    TimeSeries,
    acf,
    first_zero_crossing,
    interpolate_missing,
    mean,
    pearson,
    split,
    std,
    zscore,
)

__version__ = "0.1.0"

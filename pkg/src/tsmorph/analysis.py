"""Performance-understanding pipeline.

Rank a corpus by MASE under one forecaster, pair the best-performing
sources with the single worst-performing target, morph each pair, and per
morph step extract meta-features from the train part and MASE from the
test part. Per pair and per feature, the Pearson correlation between
feature values and MASE over the steps is computed; correlations are then
aggregated (mean, population std) across pairs and features are ranked
ascending by the std of their correlation.

Failing steps, pairs, and (pair, feature) correlations are excluded with
recorded reasons rather than imputed; per pair, valid rows plus excluded
steps always account for all n steps.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import (
    AllMissingError,
    AllSeriesFailedError,
    CorpusTooSmallError,
    DuplicateIdError,
    EmptyCorpusError,
    InvalidCountError,
    MalformedReportError,
    MixedLengthsError,
    NotEnoughFeaturesError,
    TsmorphError,
)
from .features import extract_features
from .forecasting import EvaluationRecord, ForecasterSpec, evaluate
from .morph import morph_pair
from .series import TimeSeries, interpolate_missing, pearson, split

REPORT_SCHEMA = "tsmorph-report/1"

#: Minimum number of valid steps a pair needs to enter the correlations.
MIN_CORRELATION_STEPS = 3


@dataclass(frozen=True)
class ExperimentConfig:
    forecaster: ForecasterSpec
    horizon: int
    season: int
    n: int
    pairs: int
    seed: int | None = None

    def to_json(self) -> dict:
        return {
            "forecaster": self.forecaster.to_json(),
            "horizon": self.horizon,
            "season": self.season,
            "n": self.n,
            "pairs": self.pairs,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class PairSelection:
    sources: tuple[str, ...]
    target: str


@dataclass(frozen=True)
class StepRow:
    step: int
    alpha: float
    features: dict[str, float]
    mase: float

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "alpha": self.alpha,
            "features": dict(self.features),
            "mase": self.mase,
        }


@dataclass(frozen=True)
class PairTable:
    source_id: str
    target_id: str
    rows: tuple[StepRow, ...]
    exclusions: tuple[dict, ...]

    def to_json(self) -> dict:
        return {
            "source_id": self.source_id,
            "target_id": self.target_id,
            "rows": [row.to_json() for row in self.rows],
            "exclusions": [dict(e) for e in self.exclusions],
        }


@dataclass(frozen=True)
class FeatureCorrelation:
    per_pair: tuple[float, ...]
    mean: float
    std: float

    def to_json(self) -> dict:
        return {"per_pair": list(self.per_pair), "mean": self.mean, "std": self.std}


@dataclass(frozen=True)
class MorphAnalysisReport:
    config: ExperimentConfig
    ranking: tuple[tuple[str, float], ...]
    ranking_failures: tuple[dict, ...]
    per_pair: tuple[PairTable, ...]
    correlations: dict[str, FeatureCorrelation]
    selected_features: tuple[str, ...]
    exclusions: tuple[dict, ...]

    def to_json(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "config": self.config.to_json(),
            "ranking": [[sid, value] for sid, value in self.ranking],
            "ranking_failures": [dict(f) for f in self.ranking_failures],
            "per_pair": [table.to_json() for table in self.per_pair],
            "correlations": {
                name: corr.to_json() for name, corr in self.correlations.items()
            },
            "selected_features": list(self.selected_features),
            "exclusions": [dict(e) for e in self.exclusions],
        }


def report_from_json(doc: dict) -> MorphAnalysisReport:
    """Rebuild a report from its JSON document; validates the schema tag."""
    try:
        if doc.get("schema") != REPORT_SCHEMA:
            raise MalformedReportError(
                f"expected schema {REPORT_SCHEMA!r}, got {doc.get('schema')!r}"
            )
        cfg = doc["config"]
        config = ExperimentConfig(
            forecaster=ForecasterSpec(
                kind=cfg["forecaster"]["kind"],
                params=dict(cfg["forecaster"]["params"]),
            ),
            horizon=cfg["horizon"],
            season=cfg["season"],
            n=cfg["n"],
            pairs=cfg["pairs"],
            seed=cfg.get("seed"),
        )
        per_pair = tuple(
            PairTable(
                source_id=entry["source_id"],
                target_id=entry["target_id"],
                rows=tuple(
                    StepRow(
                        step=row["step"],
                        alpha=row["alpha"],
                        features=dict(row["features"]),
                        mase=row["mase"],
                    )
                    for row in entry["rows"]
                ),
                exclusions=tuple(entry["exclusions"]),
            )
            for entry in doc["per_pair"]
        )
        correlations = {
            name: FeatureCorrelation(
                per_pair=tuple(body["per_pair"]),
                mean=body["mean"],
                std=body["std"],
            )
            for name, body in doc["correlations"].items()
        }
        return MorphAnalysisReport(
            config=config,
            ranking=tuple((sid, value) for sid, value in doc["ranking"]),
            ranking_failures=tuple(doc["ranking_failures"]),
            per_pair=per_pair,
            correlations=correlations,
            selected_features=tuple(doc["selected_features"]),
            exclusions=tuple(doc["exclusions"]),
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise MalformedReportError(f"report document is malformed: {exc}") from exc


# -- pipeline stages ----------------------------------------------------------


def _series_name(s: TimeSeries, index: int) -> str:
    return s.id if s.id is not None else f"series_{index:03d}"


def rank_by_mase(
    corpus: list[TimeSeries],
    spec: ForecasterSpec,
    horizon: int,
    season: int,
) -> tuple[list[tuple[str, float]], list[dict]]:
    """Evaluate every series; return the ascending (id, MASE) ranking plus
    a list of per-series failures with reasons. Ties break by id."""
    if not corpus:
        raise EmptyCorpusError("corpus contains no series")
    scored: list[tuple[str, float]] = []
    failures: list[dict] = []
    seen: set[str] = set()
    for index, s in enumerate(corpus):
        name = _series_name(s, index)
        if name in seen:
            raise DuplicateIdError(f"duplicate series id {name!r}")
        seen.add(name)
        try:
            record = evaluate(spec, s.with_id(name), horizon, season)
        except TsmorphError as exc:
            failures.append({"id": name, "reason": _reason(exc)})
            continue
        scored.append((name, record.mase))
    if not scored:
        raise AllSeriesFailedError("every corpus series failed evaluation")
    scored.sort(key=lambda item: (item[1], item[0]))
    return scored, failures


def select_pairs(ranking: list[tuple[str, float]], pairs: int) -> PairSelection:
    """First `pairs` ids of the ascending ranking as sources, last id as
    the target; the target is never also a source."""
    if pairs < 1:
        raise ValueError(f"need at least one source, got {pairs}")
    if len(ranking) < pairs + 1:
        raise CorpusTooSmallError(
            f"ranking of {len(ranking)} cannot supply {pairs} sources plus a target"
        )
    return PairSelection(
        sources=tuple(sid for sid, _ in ranking[:pairs]),
        target=ranking[-1][0],
    )


def _reason(exc: Exception) -> str:
    return f"{type(exc).__name__}: {exc}"


def build_pair_table(
    source: TimeSeries,
    target: TimeSeries,
    spec: ForecasterSpec,
    horizon: int,
    season: int,
    n: int,
) -> PairTable:
    """Morph the complete pair, then per step extract features from the
    train part and MASE from the test part. Failing steps become recorded
    exclusions."""
    sequence = morph_pair(source, target, n)
    rows: list[StepRow] = []
    excluded: list[dict] = []
    for index, step in enumerate(sequence.steps):
        try:
            parts = split(step.series, horizon)
            vector = extract_features(parts.train)
            record: EvaluationRecord = evaluate(spec, step.series, horizon, season)
        except TsmorphError as exc:
            excluded.append({"step": index, "reason": _reason(exc)})
            continue
        rows.append(
            StepRow(
                step=index,
                alpha=step.alpha,
                features=vector.as_dict(),
                mase=record.mase,
            )
        )
    return PairTable(
        source_id=source.id or "",
        target_id=target.id or "",
        rows=tuple(rows),
        exclusions=tuple(excluded),
    )


def _feature_order(tables: list[PairTable]) -> list[str]:
    order: list[str] = []
    for table in tables:
        for row in table.rows:
            for name in row.features:
                if name not in order:
                    order.append(name)
    return order


def correlate_pairs(
    tables: list[PairTable],
) -> tuple[dict[str, FeatureCorrelation], tuple[str, ...], list[dict]]:
    """Per pair and feature, Pearson correlation of feature values against
    MASE across morph steps, aggregated (mean, population std) per feature.

    Returns (correlations, selected feature order, exclusion records).
    Pairs with fewer than MIN_CORRELATION_STEPS valid steps are excluded
    entirely; (pair, feature) combinations with constant inputs are
    excluded individually. Feature ranking is ascending by std, ties by
    descending |mean| and then name.
    """
    exclusions: list[dict] = []
    usable: list[tuple[int, PairTable]] = []
    for index, table in enumerate(tables):
        if len(table.rows) < MIN_CORRELATION_STEPS:
            exclusions.append(
                {
                    "pair": index,
                    "feature": None,
                    "reason": (
                        f"only {len(table.rows)} valid steps; "
                        f"need {MIN_CORRELATION_STEPS} for correlation"
                    ),
                }
            )
            continue
        usable.append((index, table))
    correlations: dict[str, FeatureCorrelation] = {}
    for name in _feature_order(tables):
        values: list[float] = []
        for index, table in usable:
            feature_values = [row.features[name] for row in table.rows]
            mase_values = [row.mase for row in table.rows]
            try:
                values.append(pearson(feature_values, mase_values))
            except TsmorphError as exc:
                exclusions.append(
                    {"pair": index, "feature": name, "reason": _reason(exc)}
                )
        if not values:
            exclusions.append(
                {"pair": None, "feature": name, "reason": "no pair produced a correlation"}
            )
            continue
        count = len(values)
        mean_value = sum(values) / count
        variance = sum((v - mean_value) ** 2 for v in values) / count
        correlations[name] = FeatureCorrelation(
            per_pair=tuple(values),
            mean=mean_value,
            std=variance**0.5,
        )
    selected = tuple(
        sorted(
            correlations,
            key=lambda name: (
                correlations[name].std,
                -abs(correlations[name].mean),
                name,
            ),
        )
    )
    return correlations, selected, exclusions


def build_report(
    config: ExperimentConfig,
    ranking: list[tuple[str, float]],
    ranking_failures: list[dict],
    tables: list[PairTable],
) -> MorphAnalysisReport:
    """Assemble a report from already-computed pair tables."""
    correlations, selected, exclusions = correlate_pairs(tables)
    return MorphAnalysisReport(
        config=config,
        ranking=tuple(ranking),
        ranking_failures=tuple(ranking_failures),
        per_pair=tuple(tables),
        correlations=correlations,
        selected_features=selected,
        exclusions=tuple(exclusions),
    )


def run_experiment(
    corpus: list[TimeSeries],
    spec: ForecasterSpec,
    horizon: int,
    season: int,
    n: int,
    pairs: int,
    seed: int | None = None,
    jobs: int = 1,
) -> MorphAnalysisReport:
    """Full pipeline over a corpus of same-length series.

    Missing values are repaired by linear interpolation on entry (a no-op
    for complete series). Pair tables are independent work units; `jobs`
    parallelizes over them without changing the output, which is assembled
    in ranking order.
    """
    if not corpus:
        raise EmptyCorpusError("corpus contains no series")
    if n < MIN_CORRELATION_STEPS:
        raise InvalidCountError(
            f"need n >= {MIN_CORRELATION_STEPS} morph steps for correlation, got {n}"
        )
    named = [s.with_id(_series_name(s, i)) for i, s in enumerate(corpus)]
    complete: list[TimeSeries] = []
    failures: list[dict] = []
    for s in named:
        try:
            complete.append(interpolate_missing(s))
        except AllMissingError as exc:
            failures.append({"id": s.id, "reason": _reason(exc)})
    if not complete:
        raise AllSeriesFailedError("every corpus series failed evaluation")
    lengths = {len(s) for s in complete}
    if len(lengths) > 1:
        raise MixedLengthsError(
            f"corpus series must share one length, got {sorted(lengths)}"
        )
    ranking, eval_failures = rank_by_mase(complete, spec, horizon, season)
    failures.extend(eval_failures)
    selection = select_pairs(ranking, pairs)
    by_id = {s.id: s for s in complete}
    target = by_id[selection.target]

    def one_pair(source_id: str) -> PairTable:
        return build_pair_table(by_id[source_id], target, spec, horizon, season, n)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            tables = list(pool.map(one_pair, selection.sources))
    else:
        tables = [one_pair(sid) for sid in selection.sources]
    config = ExperimentConfig(
        forecaster=spec, horizon=horizon, season=season, n=n, pairs=pairs, seed=seed
    )
    return build_report(config, ranking, failures, tables)


def top_features(report: MorphAnalysisReport, k: int) -> list[tuple[str, float, float]]:
    """First k entries of the std-ranked feature list with their stats."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if len(report.selected_features) < k:
        raise NotEnoughFeaturesError(
            f"report ranks {len(report.selected_features)} features, need {k}"
        )
    out = []
    for name in report.selected_features[:k]:
        corr = report.correlations[name]
        out.append((name, corr.mean, corr.std))
    return out


def relative_mase(report: MorphAnalysisReport) -> list[dict]:
    """Per pair, min-max normalized step MASE values in [0, 1], aligned
    with the pair's valid rows. A pair whose step MASEs are all equal gets
    0.5 everywhere and a degenerate flag."""
    out = []
    for table in report.per_pair:
        values = [row.mase for row in table.rows]
        if not values or min(values) == max(values):
            out.append({"values": [0.5] * len(values), "degenerate": True})
            continue
        low, high = min(values), max(values)
        out.append(
            {
                "values": [(v - low) / (high - low) for v in values],
                "degenerate": False,
            }
        )
    return out

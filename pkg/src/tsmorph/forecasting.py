"""Baseline forecasters, an external-process bridge, and MASE evaluation.

Built-in forecasters are pure functions of the training series. The
external bridge lets any executable act as a forecaster over a
line-oriented protocol:

* stdin: CSV with header ``t,value`` and one row per training value;
* env: ``TSMORPH_HORIZON`` carries the horizon;
* stdout: exactly `horizon` lines, one decimal number each;
* exit 0 on success.
"""

import math
import os
import shlex
import subprocess
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ExternalTimeoutError,
    LengthMismatchError,
    ProcessFailureError,
    ProtocolError,
    SingularFitError,
    TrainTooShortError,
    ZeroDenominatorError,
)
from .series import SplitSeries, TimeSeries, split

FORECASTER_KINDS = ("naive", "seasonal_naive", "local_mean", "ses", "ar", "external")

DEFAULT_EXTERNAL_TIMEOUT = 300.0


@dataclass(frozen=True)
class ForecasterSpec:
    """Forecaster kind plus its parameters.

    Parameters by kind: seasonal_naive ``m`` (season length, >= 1),
    local_mean ``k`` (window, >= 1), ses ``alpha`` (0 < alpha <= 1),
    ar ``p`` (order, >= 1), external ``command`` (command line) and
    optional ``timeout`` (seconds).
    """

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in FORECASTER_KINDS:
            raise ValueError(
                f"unknown forecaster {self.kind!r}; choose from {FORECASTER_KINDS}"
            )
        p = dict(self.params)
        object.__setattr__(self, "params", p)
        if self.kind == "seasonal_naive":
            m = _int_param(p, "m", default=1)
            if m < 1:
                raise ValueError(f"season length m must be >= 1, got {m}")
        elif self.kind == "local_mean":
            k = _int_param(p, "k", default=3)
            if k < 1:
                raise ValueError(f"window k must be >= 1, got {k}")
        elif self.kind == "ses":
            alpha = float(p.get("alpha", 0.5))
            if not 0.0 < alpha <= 1.0:
                raise ValueError(f"smoothing alpha must be in (0, 1], got {alpha}")
            p["alpha"] = alpha
        elif self.kind == "ar":
            order = _int_param(p, "p", default=1)
            if order < 1:
                raise ValueError(f"AR order p must be >= 1, got {order}")
        elif self.kind == "external":
            command = str(p.get("command", "")).strip()
            if not command:
                raise ValueError("external forecaster needs a non-empty command")
            p["command"] = command
            timeout = float(p.get("timeout", DEFAULT_EXTERNAL_TIMEOUT))
            if timeout <= 0:
                raise ValueError(f"timeout must be positive, got {timeout}")
            p["timeout"] = timeout

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params)}


def _int_param(params: dict, name: str, default: int) -> int:
    value = params.get(name, default)
    as_int = int(value)
    if as_int != value:
        raise ValueError(f"parameter {name} must be an integer, got {value!r}")
    params[name] = as_int
    return as_int


@dataclass(frozen=True)
class EvaluationRecord:
    """Result of forecasting one series: forecasts plus their MASE."""

    series_id: str
    forecaster: ForecasterSpec
    horizon: int
    season: int
    forecasts: tuple[float, ...]
    mase: float

    def to_json(self) -> dict:
        return {
            "series_id": self.series_id,
            "forecaster": self.forecaster.to_json(),
            "horizon": self.horizon,
            "season": self.season,
            "forecasts": list(self.forecasts),
            "mase": self.mase,
        }


# -- built-in forecasters ----------------------------------------------------


def _naive(values: np.ndarray, horizon: int) -> np.ndarray:
    return np.full(horizon, values[-1])


def _seasonal_naive(values: np.ndarray, horizon: int, m: int) -> np.ndarray:
    if values.size < m:
        raise TrainTooShortError(
            f"seasonal_naive needs at least m={m} values, got {values.size}"
        )
    season = values[-m:]
    return np.array([season[h % m] for h in range(horizon)])


def _local_mean(values: np.ndarray, horizon: int, k: int) -> np.ndarray:
    if values.size < k:
        raise TrainTooShortError(
            f"local_mean needs at least k={k} values, got {values.size}"
        )
    return np.full(horizon, values[-k:].mean())


def _ses(values: np.ndarray, horizon: int, alpha: float) -> np.ndarray:
    level = values[0]
    for value in values[1:]:
        level = alpha * value + (1.0 - alpha) * level
    return np.full(horizon, level)


def _ar(values: np.ndarray, horizon: int, p: int) -> np.ndarray:
    if values.size < p + 1:
        raise TrainTooShortError(
            f"ar(p={p}) needs at least {p + 1} values, got {values.size}"
        )
    rows = values.size - p
    design = np.empty((rows, p + 1))
    design[:, 0] = 1.0
    for j in range(1, p + 1):
        design[:, j] = values[p - j : p - j + rows]
    targets = values[p:]
    coef, _, rank, _ = np.linalg.lstsq(design, targets, rcond=None)
    if rank < p + 1:
        raise SingularFitError(
            f"AR design matrix is rank deficient (rank {rank} < {p + 1})"
        )
    history = list(values[-p:])
    out = np.empty(horizon)
    for h in range(horizon):
        step = coef[0] + sum(coef[j] * history[-j] for j in range(1, p + 1))
        out[h] = step
        history.append(step)
    return out


def forecast(spec: ForecasterSpec, train: TimeSeries, horizon: int) -> np.ndarray:
    """Dispatch to the forecaster named by `spec`; returns `horizon` values."""
    if horizon < 1:
        raise ValueError(f"horizon must be positive, got {horizon}")
    if not train.is_complete:
        raise ValueError("forecasting requires a complete training series")
    values = train.values
    if spec.kind == "naive":
        return _naive(values, horizon)
    if spec.kind == "seasonal_naive":
        return _seasonal_naive(values, horizon, spec.params["m"])
    if spec.kind == "local_mean":
        return _local_mean(values, horizon, spec.params["k"])
    if spec.kind == "ses":
        return _ses(values, horizon, spec.params["alpha"])
    if spec.kind == "ar":
        return _ar(values, horizon, spec.params["p"])
    return external_forecast(
        spec.params["command"], train, horizon, timeout=spec.params["timeout"]
    )


# -- external bridge ---------------------------------------------------------


def train_to_csv(train: TimeSeries) -> str:
    """Protocol payload: header ``t,value`` then one shortest-repr row per
    training value."""
    lines = ["t,value"]
    lines.extend(f"{t},{float(value)!r}" for t, value in enumerate(train.values))
    return "\n".join(lines) + "\n"


def external_forecast(
    command: str,
    train: TimeSeries,
    horizon: int,
    timeout: float = DEFAULT_EXTERNAL_TIMEOUT,
) -> np.ndarray:
    """Run `command` as a child forecaster over the stdin/stdout protocol."""
    if not train.is_complete:
        raise ValueError("forecasting requires a complete training series")
    argv = shlex.split(command)
    if not argv:
        raise ValueError("external command is empty")
    env = dict(os.environ, TSMORPH_HORIZON=str(horizon))
    try:
        proc = subprocess.run(
            argv,
            input=train_to_csv(train),
            capture_output=True,
            text=True,
            env=env,
            timeout=timeout,
        )
    except FileNotFoundError as exc:
        raise ProcessFailureError(f"cannot run {argv[0]!r}: {exc}") from exc
    except subprocess.TimeoutExpired as exc:
        raise ExternalTimeoutError(
            f"external forecaster exceeded {timeout} s"
        ) from exc
    if proc.returncode != 0:
        detail = proc.stderr.strip().splitlines()
        suffix = f": {detail[-1]}" if detail else ""
        raise ProcessFailureError(
            f"external forecaster exited with status {proc.returncode}{suffix}"
        )
    lines = proc.stdout.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if len(lines) != horizon:
        raise ProtocolError(
            f"expected {horizon} forecast lines, got {len(lines)}"
        )
    out = np.empty(horizon)
    for i, line in enumerate(lines):
        try:
            value = float(line.strip())
        except ValueError as exc:
            raise ProtocolError(f"non-numeric forecast line {i + 1}: {line!r}") from exc
        if not math.isfinite(value):
            raise ProtocolError(f"non-finite forecast on line {i + 1}: {line!r}")
        out[i] = value
    return out


# -- evaluation ---------------------------------------------------------------


def mase(actual, forecasts, train: TimeSeries, season: int = 1) -> float:
    """Mean absolute scaled error: forecast MAE over the test window divided
    by the in-sample seasonal-naive MAE of the train part (season `m`)."""
    actual_arr = np.asarray(actual, dtype=float)
    forecast_arr = np.asarray(forecasts, dtype=float)
    if actual_arr.shape != forecast_arr.shape or actual_arr.ndim != 1:
        raise LengthMismatchError(
            f"length mismatch: {actual_arr.size} actuals vs {forecast_arr.size} forecasts"
        )
    if actual_arr.size < 1:
        raise ValueError("need at least one actual/forecast pair")
    if season < 1:
        raise ValueError(f"season must be positive, got {season}")
    train_values = train.values
    if train_values.size <= season:
        raise TrainTooShortError(
            f"train length {train_values.size} must exceed season {season}"
        )
    denominator = float(np.abs(train_values[season:] - train_values[:-season]).mean())
    if denominator == 0:
        raise ZeroDenominatorError(
            "train seasonal-naive MAE is zero; MASE undefined"
        )
    return float(np.abs(actual_arr - forecast_arr).mean() / denominator)


def evaluate(
    spec: ForecasterSpec, s: TimeSeries, horizon: int, season: int = 1
) -> EvaluationRecord:
    """Split, forecast the horizon from train only, and score against test."""
    parts: SplitSeries = split(s, horizon)
    forecasts = forecast(spec, parts.train, horizon)
    error = mase(parts.test.values, forecasts, parts.train, season)
    return EvaluationRecord(
        series_id=s.id or "",
        forecaster=spec,
        horizon=horizon,
        season=season,
        forecasts=tuple(float(v) for v in forecasts),
        mase=error,
    )

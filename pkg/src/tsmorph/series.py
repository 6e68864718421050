"""Core time-series value type and elementary statistics.

Conventions used package-wide:

* a series is a 1-D float64 array; NaN marks a missing slot, every
  present value must be finite;
* standard deviations are population standard deviations (divisor T);
* the autocorrelation function uses the biased estimator with the
  common denominator sum((y - ybar)**2), which keeps every value in
  [-1, 1].
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    AllMissingError,
    ConstantInputError,
    ConstantSeriesError,
    HorizonTooLargeError,
    LengthMismatchError,
)

MISSING = float("nan")


@dataclass(frozen=True)
class TimeSeries:
    """Ordered, equally spaced observations; NaN marks a missing slot.

    Instances are immutable: the backing array is copied on construction
    and marked read-only, so sharing a TimeSeries across workers is safe.
    """

    values: np.ndarray
    id: str | None = None

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=float, copy=True)
        if arr.ndim != 1:
            raise ValueError(f"series values must be 1-D, got shape {arr.shape}")
        if arr.size < 1:
            raise ValueError("a series needs at least one slot")
        present = arr[~np.isnan(arr)]
        if np.isinf(present).any():
            raise ValueError("observations must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size

    @property
    def is_complete(self) -> bool:
        return not np.isnan(self.values).any()

    @property
    def missing_count(self) -> int:
        return int(np.isnan(self.values).sum())

    def with_id(self, new_id: str | None) -> "TimeSeries":
        return TimeSeries(self.values, id=new_id)


@dataclass(frozen=True)
class SplitSeries:
    """Train/test partition; concatenating the parts restores the original."""

    train: TimeSeries
    test: TimeSeries


def _require_complete(s: TimeSeries, op: str) -> np.ndarray:
    if not s.is_complete:
        raise ValueError(f"{op} requires a complete series (no missing slots)")
    return s.values


def interpolate_missing(s: TimeSeries) -> TimeSeries:
    """Fill missing slots: interior gaps linearly between the nearest
    present neighbors, boundary gaps by constant extension of the nearest
    present value. Present values pass through unchanged, so the operation
    is exactly idempotent."""
    mask = np.isnan(s.values)
    if not mask.any():
        return s
    if mask.all():
        raise AllMissingError(f"series {s.id!r} has no present values")
    idx = np.arange(len(s), dtype=float)
    filled = s.values.copy()
    filled[mask] = np.interp(idx[mask], idx[~mask], s.values[~mask])
    return TimeSeries(filled, id=s.id)


def split(s: TimeSeries, horizon: int) -> SplitSeries:
    """Cut the last `horizon` observations off as the test part."""
    values = _require_complete(s, "split")
    if horizon < 1:
        raise ValueError(f"horizon must be positive, got {horizon}")
    if horizon >= len(s):
        raise HorizonTooLargeError(
            f"horizon {horizon} must be smaller than series length {len(s)}"
        )
    return SplitSeries(
        train=TimeSeries(values[:-horizon], id=s.id),
        test=TimeSeries(values[-horizon:], id=s.id),
    )


def mean(s: TimeSeries) -> float:
    return float(_require_complete(s, "mean").mean())


def std(s: TimeSeries) -> float:
    """Population standard deviation (divisor T)."""
    return float(_require_complete(s, "std").std())


def zscore(s: TimeSeries) -> TimeSeries:
    """(value - mean) / population std, per slot.

    Centering runs twice: the second pass absorbs the rounding error of
    the first, keeping the output mean below 1e-12 even for near-constant
    large-magnitude inputs.
    """
    values = _require_complete(s, "zscore")
    if values.std() == 0:
        raise ConstantSeriesError(f"cannot z-score constant series {s.id!r}")
    centered = values - values.mean()
    centered -= centered.mean()
    return TimeSeries(centered / centered.std(), id=s.id)


def acf(s: TimeSeries, max_lag: int) -> np.ndarray:
    """Autocorrelation r_k for k = 1..max_lag, biased estimator.

    r_k = sum_{t=1}^{T-k} (y_t - ybar)(y_{t+k} - ybar) / sum (y_t - ybar)^2
    """
    values = _require_complete(s, "acf")
    if not 1 <= max_lag < len(s):
        raise ValueError(f"max_lag must be in [1, {len(s) - 1}], got {max_lag}")
    centered = values - values.mean()
    denom = float(np.dot(centered, centered))
    if denom == 0:
        raise ConstantSeriesError(f"acf undefined for constant series {s.id!r}")
    out = np.empty(max_lag)
    for k in range(1, max_lag + 1):
        out[k - 1] = np.dot(centered[:-k], centered[k:]) / denom
    return out


def first_zero_crossing(acf_values: np.ndarray) -> int:
    """Smallest lag k with r_k <= 0; saturates at the last evaluated lag."""
    acf_values = np.asarray(acf_values, dtype=float)
    if acf_values.size == 0:
        raise ValueError("need at least one autocorrelation value")
    hits = np.nonzero(acf_values <= 0)[0]
    if hits.size == 0:
        return acf_values.size
    return int(hits[0]) + 1


def pearson(x, y) -> float:
    """Sample Pearson correlation coefficient, clipped into [-1, 1]."""
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.ndim != 1 or ya.ndim != 1 or xa.size != ya.size:
        raise LengthMismatchError(
            f"length mismatch: {xa.size} vs {ya.size} correlation inputs"
        )
    if xa.size < 2:
        raise ValueError("pearson needs at least two points")
    dx = xa - xa.mean()
    dy = ya - ya.mean()
    vx = float(np.dot(dx, dx))
    vy = float(np.dot(dy, dy))
    if vx == 0 or vy == 0:
        raise ConstantInputError("correlation input has zero variance")
    # sqrt before multiplying: vx * vy can underflow for tiny variances
    r = float(np.dot(dx, dy)) / (float(np.sqrt(vx)) * float(np.sqrt(vy)))
    return min(1.0, max(-1.0, r))

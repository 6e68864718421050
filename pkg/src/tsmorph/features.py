"""Meta-feature extraction: a four-feature spectral/forecastability subset
plus basic descriptive statistics.

The four headline features (forecast_error, centroid_frequency,
low_frequency_power, whiten_timescale) follow the usual canonical-feature
convention of operating on the z-scored series; z-scoring happens inside
each feature. The plumbing features mean and std describe the raw series
(z-scoring them first would pin them to 0 and 1), and acf_lag1 is
scale-invariant either way.

The spectrum estimator is a full-length rectangular-window periodogram of
the z-scored series, DC excluded: P(w_j) = |X_j|^2 / T at the Fourier
frequencies w_j = 2*pi*j/T, j = 1..floor(T/2). No numerical parity with
any external feature toolkit is claimed.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConstantResidualsError, TooShortError
from .series import TimeSeries, acf, first_zero_crossing, mean, std, zscore

#: Registration order; also the serialization order of FeatureVector.
FEATURE_NAMES = (
    "forecast_error",
    "centroid_frequency",
    "low_frequency_power",
    "whiten_timescale",
    "mean",
    "std",
    "acf_lag1",
)

MIN_FEATURE_LENGTH = 16


@dataclass(frozen=True)
class Spectrum:
    """One-sided power spectrum on the Fourier grid (0, pi], DC excluded."""

    frequencies: np.ndarray
    power: np.ndarray
    total_power: float


@dataclass(frozen=True)
class FeatureVector:
    """Named feature values in registration order."""

    entries: dict[str, float]
    series_id: str = ""

    def as_dict(self) -> dict[str, float]:
        return dict(self.entries)

    def __getitem__(self, name: str) -> float:
        return self.entries[name]


def periodogram(s: TimeSeries) -> Spectrum:
    """Rectangular-window periodogram of the z-scored series."""
    if len(s) < 8:
        raise TooShortError(f"periodogram needs at least 8 values, got {len(s)}")
    z = zscore(s).values
    T = z.size
    transform = np.fft.rfft(z)
    half = T // 2
    frequencies = 2.0 * np.pi * np.arange(1, half + 1) / T
    power = np.abs(transform[1 : half + 1]) ** 2 / T
    return Spectrum(frequencies=frequencies, power=power, total_power=float(power.sum()))


def centroid_frequency(s: TimeSeries) -> float:
    """Smallest Fourier frequency at which cumulative power reaches half
    the total; low values mean power concentrated at slow oscillations."""
    spec = periodogram(s)
    cumulative = np.cumsum(spec.power)
    hits = np.nonzero(cumulative >= spec.total_power / 2.0)[0]
    idx = int(hits[0]) if hits.size else spec.power.size - 1
    return float(spec.frequencies[idx])


def low_frequency_power(s: TimeSeries) -> float:
    """Fraction of spectral power at frequencies w <= 0.2*pi."""
    spec = periodogram(s)
    band = spec.frequencies <= 0.2 * np.pi
    return float(spec.power[band].sum() / spec.total_power)


def local_forecast_residuals(s: TimeSeries, k: int) -> np.ndarray:
    """Errors of predicting each z-scored value by the mean of its k
    predecessors: residual_t = z_t - mean(z_{t-1}, ..., z_{t-k})."""
    if k < 1:
        raise ValueError(f"window k must be positive, got {k}")
    if len(s) <= k:
        raise TooShortError(f"need more than {k} values, got {len(s)}")
    z = zscore(s).values
    windows = np.lib.stride_tricks.sliding_window_view(z, k)[:-1]
    return z[k:] - windows.mean(axis=1)


def forecast_error(s: TimeSeries) -> float:
    """Population std of the 3-predecessor local-mean residuals; zero iff
    the residuals are constant (e.g. a perfectly linear series)."""
    return float(local_forecast_residuals(s, 3).std())


def whiten_timescale(s: TimeSeries) -> float:
    """Ratio of the ACF first-zero-crossing lag of the 1-step local-mean
    residuals to that of the original series; both ACFs run to lag
    floor(T/2) with saturation."""
    if len(s) < MIN_FEATURE_LENGTH:
        raise TooShortError(
            f"whiten_timescale needs at least {MIN_FEATURE_LENGTH} values, got {len(s)}"
        )
    max_lag = len(s) // 2
    tau_orig = first_zero_crossing(acf(s, max_lag))
    residuals = local_forecast_residuals(s, 1)
    # z-scored values live on a unit scale, so residual spread below 1e-12
    # is rounding noise from an exactly-linear series, not signal
    if residuals.std() <= 1e-12:
        raise ConstantResidualsError("local-forecast residuals are constant")
    tau_res = first_zero_crossing(acf(TimeSeries(residuals), max_lag))
    return tau_res / tau_orig


def extract_features(s: TimeSeries) -> FeatureVector:
    """All registered features for one complete, non-constant series of
    length >= 16."""
    if len(s) < MIN_FEATURE_LENGTH:
        raise TooShortError(
            f"feature extraction needs at least {MIN_FEATURE_LENGTH} values, got {len(s)}"
        )
    entries = {
        "forecast_error": forecast_error(s),
        "centroid_frequency": centroid_frequency(s),
        "low_frequency_power": low_frequency_power(s),
        "whiten_timescale": whiten_timescale(s),
        "mean": mean(s),
        "std": std(s),
        "acf_lag1": float(acf(s, 1)[0]),
    }
    for name, value in entries.items():
        if not np.isfinite(value):
            raise ValueError(f"feature {name} is not finite: {value}")
    return FeatureVector(entries=entries, series_id=s.id or "")

"""Independent reference implementations used to derive expected values.

Everything here is deliberately written as direct loops or dense matrix
products over the defining formulas, avoiding the code paths (and library
routines such as np.fft) used by the package under test.
"""

import math

import numpy as np


def interpolate_oracle(values):
    """Two-point line equation per missing slot; nearest value at edges."""
    values = list(values)
    present = [i for i, v in enumerate(values) if not math.isnan(v)]
    if not present:
        raise ValueError("all missing")
    out = []
    for i, v in enumerate(values):
        if not math.isnan(v):
            out.append(v)
            continue
        left = max((p for p in present if p < i), default=None)
        right = min((p for p in present if p > i), default=None)
        if left is None:
            out.append(values[right])
        elif right is None:
            out.append(values[left])
        else:
            slope = (values[right] - values[left]) / (right - left)
            out.append(values[left] + slope * (i - left))
    return out


def acf_oracle(values, max_lag):
    """Biased autocorrelation estimator as an explicit double loop."""
    values = list(values)
    T = len(values)
    ybar = sum(values) / T
    denom = sum((v - ybar) ** 2 for v in values)
    out = []
    for k in range(1, max_lag + 1):
        num = 0.0
        for t in range(T - k):
            num += (values[t] - ybar) * (values[t + k] - ybar)
        out.append(num / denom)
    return out


def pearson_oracle(x, y):
    """Textbook covariance-over-variances formula with plain loops."""
    n = len(x)
    mx = sum(x) / n
    my = sum(y) / n
    cov = sum((a - mx) * (b - my) for a, b in zip(x, y))
    vx = sum((a - mx) ** 2 for a in x)
    vy = sum((b - my) ** 2 for b in y)
    return cov / math.sqrt(vx * vy)


def zscore_oracle(values):
    values = list(values)
    m = sum(values) / len(values)
    sd = math.sqrt(sum((v - m) ** 2 for v in values) / len(values))
    return [(v - m) / sd for v in values]


def dft_power_oracle(values, chunk=256):
    """Brute-force O(T^2) one-sided power spectrum of the z-scored input.

    Returns (frequencies, power) on the grid w_j = 2*pi*j/T for
    j = 1..floor(T/2) with P = |X_j|^2 / T, matching the periodogram
    contract but computed from explicit cosine/sine sums instead of an
    FFT. Asserts Parseval's identity over the full grid internally.
    """
    z = np.asarray(zscore_oracle(values))
    T = z.size
    t = np.arange(T)
    full_power = np.empty(T)
    for start in range(0, T, chunk):
        j = np.arange(start, min(start + chunk, T))
        angles = 2.0 * np.pi * np.outer(j, t) / T
        cos_part = np.cos(angles) @ z
        sin_part = np.sin(angles) @ z
        full_power[j] = cos_part**2 + sin_part**2
    energy = float(np.dot(z, z))
    assert abs(full_power.sum() - T * energy) <= 1e-9 * T * energy, "Parseval violated"
    half = T // 2
    frequencies = 2.0 * np.pi * np.arange(1, half + 1) / T
    return frequencies, full_power[1 : half + 1] / T


def centroid_oracle(values):
    """Cumulative-sum half-power rule on the brute-force spectrum."""
    frequencies, power = dft_power_oracle(values)
    total = power.sum()
    acc = 0.0
    for freq, p in zip(frequencies, power):
        acc += p
        if acc >= total / 2.0:
            return float(freq)
    return float(frequencies[-1])


def low_power_oracle(values):
    frequencies, power = dft_power_oracle(values)
    return float(power[frequencies <= 0.2 * np.pi].sum() / power.sum())


def local_residuals_oracle(values, k):
    """Direct loop over the residual definition on the z-scored input."""
    z = zscore_oracle(values)
    out = []
    for t in range(k, len(z)):
        window = z[t - k : t]
        out.append(z[t] - sum(window) / k)
    return out


def population_std(values):
    m = sum(values) / len(values)
    return math.sqrt(sum((v - m) ** 2 for v in values) / len(values))


def first_zero_crossing_oracle(acf_values):
    for i, r in enumerate(acf_values):
        if r <= 0:
            return i + 1
    return len(acf_values)


def whiten_timescale_oracle(values):
    T = len(values)
    max_lag = T // 2
    tau_orig = first_zero_crossing_oracle(acf_oracle(values, max_lag))
    residuals = local_residuals_oracle(values, 1)
    tau_res = first_zero_crossing_oracle(acf_oracle(residuals, max_lag))
    return tau_res / tau_orig


def seasonal_naive_oracle(train, m, horizon):
    """Hand-unrolled index arithmetic: y_{T+h} = y_{T+h-m*ceil(h/m)}."""
    T = len(train)
    out = []
    for h in range(1, horizon + 1):
        idx = T + h - m * math.ceil(h / m)  # 1-based position into train
        out.append(train[idx - 1])
    return out


def mase_oracle(actual, forecasts, train, m):
    num = sum(abs(a - f) for a, f in zip(actual, forecasts)) / len(actual)
    diffs = [abs(train[t] - train[t - m]) for t in range(m, len(train))]
    return num / (sum(diffs) / len(diffs))

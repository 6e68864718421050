"""Deterministic synthetic corpora for demos and tests.

Four generator kinds; the seed fully determines every emitted value, so a
corpus written twice with the same flags is byte-identical.

* sine: sinusoid with per-series period drawn from [period_min,
  period_max], random phase, optional additive noise (sigma);
* ar1: first-order autoregression with coefficient phi and innovation
  std sigma;
* noise: white noise with mean mu and std sigma;
* trend: linear ramp with the given slope plus additive noise (sigma).
"""

from pathlib import Path

import numpy as np

from .corpus import write_series_csv
from .series import TimeSeries

SYNTH_KINDS = ("sine", "ar1", "noise", "trend")


def generate_corpus(
    kind: str,
    count: int,
    length: int,
    seed: int,
    params: dict | None = None,
) -> list[TimeSeries]:
    if kind not in SYNTH_KINDS:
        raise ValueError(f"unknown kind {kind!r}; choose from {SYNTH_KINDS}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if length < 2:
        raise ValueError(f"length must be >= 2, got {length}")
    p = dict(params or {})
    rng = np.random.default_rng(seed)
    t = np.arange(length, dtype=float)
    out: list[TimeSeries] = []
    for i in range(count):
        if kind == "sine":
            period_min = float(p.get("period_min", 6.0))
            period_max = float(p.get("period_max", 24.0))
            if not 2.0 <= period_min <= period_max:
                raise ValueError("need 2 <= period_min <= period_max")
            amplitude = float(p.get("amplitude", 1.0))
            sigma = float(p.get("sigma", 0.0))
            period = rng.uniform(period_min, period_max)
            phase = rng.uniform(0.0, 2.0 * np.pi)
            values = amplitude * np.sin(2.0 * np.pi * t / period + phase)
            if sigma > 0:
                values = values + sigma * rng.standard_normal(length)
        elif kind == "ar1":
            phi = float(p.get("phi", 0.9))
            sigma = float(p.get("sigma", 1.0))
            innovations = sigma * rng.standard_normal(length)
            values = np.empty(length)
            values[0] = innovations[0]
            for step in range(1, length):
                values[step] = phi * values[step - 1] + innovations[step]
        elif kind == "noise":
            mu = float(p.get("mu", 0.0))
            sigma = float(p.get("sigma", 1.0))
            values = mu + sigma * rng.standard_normal(length)
        else:  # trend
            slope = float(p.get("slope", 0.05))
            sigma = float(p.get("sigma", 0.1))
            values = slope * t + sigma * rng.standard_normal(length)
        out.append(TimeSeries(values, id=f"{kind}_{i:03d}"))
    return out


def write_corpus(directory: str | Path, series_list: list[TimeSeries]) -> list[Path]:
    """Write a per-file corpus; returns the written paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for s in series_list:
        path = directory / f"{s.id}.csv"
        write_series_csv(path, s)
        paths.append(path)
    return paths

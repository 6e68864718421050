"""Morphing: equally spaced convex combinations between two series.

Step i of an n-step morph carries coefficient alpha_i = i/(n-1), so the
sequence contains the source (alpha 0) and the target (alpha 1) as its
endpoints. Endpoints are the original series objects, never recomputed,
which makes them bit-exact by construction.
"""

from dataclasses import dataclass

import numpy as np

from .errors import AlphaOutOfRangeError, InvalidCountError, LengthMismatchError
from .series import TimeSeries


@dataclass(frozen=True)
class MorphStep:
    alpha: float
    series: TimeSeries


@dataclass(frozen=True)
class MorphSequence:
    """Ordered morph steps from source (alpha 0) to target (alpha 1)."""

    steps: tuple[MorphStep, ...]
    source_id: str | None
    target_id: str | None

    @property
    def n(self) -> int:
        return len(self.steps)

    def alphas(self) -> list[float]:
        return [step.alpha for step in self.steps]


def alpha_schedule(n: int) -> list[float]:
    """[0/(n-1), 1/(n-1), ..., 1]; requires n >= 2."""
    if n < 2:
        raise InvalidCountError(f"need at least 2 steps, got {n}")
    return [i / (n - 1) for i in range(n)]


def _check_pair(source: TimeSeries, target: TimeSeries) -> None:
    if len(source) != len(target):
        raise LengthMismatchError(
            f"length mismatch: source has {len(source)} values, "
            f"target has {len(target)}"
        )
    if not source.is_complete or not target.is_complete:
        raise ValueError("morphing requires complete series; interpolate first")


def morph_at(source: TimeSeries, target: TimeSeries, alpha: float) -> TimeSeries:
    """Elementwise alpha*target + (1-alpha)*source.

    alpha 0 returns the source object and alpha 1 the target object,
    short-circuited so the endpoints stay bit-exact.
    """
    _check_pair(source, target)
    if not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRangeError(f"alpha must be in [0, 1], got {alpha}")
    if alpha == 0.0:
        return source
    if alpha == 1.0:
        return target
    # s + alpha*(t - s) rather than alpha*t + (1-alpha)*s: same real value,
    # but exact when source == target and exactly monotone in alpha.
    blended = source.values + alpha * (target.values - source.values)
    return TimeSeries(blended)


def morph_pair(source: TimeSeries, target: TimeSeries, n: int) -> MorphSequence:
    """Full morph: one step per coefficient of alpha_schedule(n).

    Work is O(T * n): one length-T blend per step.
    """
    _check_pair(source, target)
    schedule = alpha_schedule(n)
    steps = tuple(
        MorphStep(alpha, morph_at(source, target, alpha)) for alpha in schedule
    )
    return MorphSequence(steps=steps, source_id=source.id, target_id=target.id)

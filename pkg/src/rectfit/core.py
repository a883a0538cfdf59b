"""Shared types for rectangular (unimodal two-level) fits under linear losses.

A fit maps every score to one of two levels ``q0 <= q1``: scores in the
half-open interval ``(x1, x2]`` go to ``q1``, everything else to ``q0``.
The objective being minimized is ``sum(z_n * C(x_n))``.

Losses may be Python ints (exact mode, all comparisons bitwise) or floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from numbers import Real
from typing import NamedTuple, Optional, Sequence

NEG_INF = float("-inf")
POS_INF = float("inf")

NONDECREASING = "nondecreasing"
NONINCREASING = "nonincreasing"


@dataclass
class OpCounter:
    """Mutable tally handed to solvers that report their work."""

    count: int = 0

    def add(self, k: int = 1) -> None:
        self.count += k


@dataclass(frozen=True)
class Sample:
    x: float
    z: Real
    id: int = 0

    def __post_init__(self):
        if isinstance(self.x, float) and math.isnan(self.x):
            raise ValueError("score must not be NaN")
        if not _is_finite(self.z):
            raise ValueError(f"loss must be finite, got {self.z!r}")
        if self.id < 0:
            raise ValueError("arrival id must be non-negative")


@dataclass(frozen=True)
class FitConfig:
    """Mapping levels and optional bounds on the per-sample losses."""

    q0: Real = 0
    q1: Real = 1
    zl: Optional[Real] = None
    zu: Optional[Real] = None

    def __post_init__(self):
        if not (_is_finite(self.q0) and _is_finite(self.q1)):
            raise ValueError("mapping levels must be finite")
        if self.q0 > self.q1:
            raise ValueError(f"q0 ({self.q0}) must not exceed q1 ({self.q1})")
        if self.zl is not None and self.zl > 0:
            raise ValueError("lower loss bound must be <= 0")
        if self.zu is not None and self.zu < 0:
            raise ValueError("upper loss bound must be >= 0")

    def check_loss(self, z) -> None:
        if self.zl is not None and z < self.zl:
            raise ValueError(f"loss {z} below configured bound {self.zl}")
        if self.zu is not None and z > self.zu:
            raise ValueError(f"loss {z} above configured bound {self.zu}")


@dataclass(frozen=True)
class RectFit:
    """Optimal rectangle: thresholds plus the loss mass of the three regions.

    ``l0`` is the mass at or below ``x1``, ``l1`` the mass in ``(x1, x2]`` and
    ``l2`` the mass above ``x2``. ``k`` and ``m`` are the same thresholds as
    sample counts in sorted order, which disambiguates duplicate scores.
    """

    x1: float
    x2: float
    l0: Real
    l1: Real
    l2: Real
    k: Optional[int] = None
    m: Optional[int] = None

    def __post_init__(self):
        if self.x1 > self.x2:
            raise ValueError(f"x1 ({self.x1}) must not exceed x2 ({self.x2})")

    @classmethod
    def empty(cls, total=0) -> "RectFit":
        return cls(NEG_INF, NEG_INF, 0, 0, total, 0, 0)

    @property
    def is_empty(self) -> bool:
        return self.x1 == self.x2 == NEG_INF and self.l1 == 0

    @property
    def total(self):
        return self.l0 + self.l1 + self.l2


@dataclass(frozen=True)
class StepFit:
    """Best single-threshold fit in one direction.

    Nondecreasing: scores ``<= x`` map to q0, the rest to q1. Nonincreasing:
    scores ``<= x`` map to q1, the rest to q0. ``rank`` counts the samples on
    the low-score side of the threshold.
    """

    direction: str
    x: float
    l_low: Real
    l_high: Real
    rank: Optional[int] = None

    def __post_init__(self):
        if self.direction not in (NONDECREASING, NONINCREASING):
            raise ValueError(f"unknown direction {self.direction!r}")


@dataclass(frozen=True)
class FitReport:
    fit: RectFit
    loss: Real
    n: int
    config: FitConfig = field(default_factory=FitConfig, compare=False)

    def as_record(self) -> dict:
        f = self.fit
        return {
            "n": self.n,
            "x1": f.x1,
            "x2": f.x2,
            "l0": f.l0,
            "l1": f.l1,
            "l2": f.l2,
            "loss": self.loss,
        }


class LabelLosses(NamedTuple):
    losses: list
    zl: Real
    zu: Real


def _is_finite(v) -> bool:
    try:
        return math.isfinite(v)
    except (TypeError, OverflowError):
        # big ints overflow float conversion but are still finite
        return isinstance(v, int)


def losses_from_labels(labels, alpha=1, weights=None) -> LabelLosses:
    """Turn binary labels into per-sample linear losses.

    With class weight ``alpha`` and sample weights ``b_n`` the loss of a
    sample is ``b_n - b_n * (alpha + 1) * y_n``; ``alpha = 1`` and unit
    weights reduce this to ``1 - 2 y_n``. The returned bounds are
    ``[-alpha * max(b), max(b)]``.

    Integer alpha and weights keep the losses integral.
    """
    labels = list(labels)
    if not labels:
        raise ValueError("labels must be nonempty")
    if not (_is_finite(alpha) and alpha > 0):
        raise ValueError(f"class weight must be positive, got {alpha!r}")
    for y in labels:
        if not isinstance(y, (int, float)) or y not in (0, 1):
            raise ValueError(f"labels must be 0 or 1, got {y!r}")
    if weights is None:
        weights = [1] * len(labels)
    else:
        weights = list(weights)
        if len(weights) != len(labels):
            raise ValueError("weights and labels differ in length")
        for w in weights:
            if not (_is_finite(w) and w > 0):
                raise ValueError(f"weights must be positive, got {w!r}")
    z = [b - b * (alpha + 1) * int(y) for y, b in zip(labels, weights)]
    beta = max(weights)
    return LabelLosses(z, -alpha * beta, beta)


def evaluate_loss(fit: RectFit, config: FitConfig):
    return config.q0 * (fit.l0 + fit.l2) + config.q1 * fit.l1


def apply_transform(fit: RectFit, config: FitConfig, x) -> Real:
    """Map a score through the fitted rectangle, ``q1`` on ``(x1, x2]``."""
    return config.q1 if fit.x1 < x <= fit.x2 else config.q0


def check_sorted(samples: Sequence[Sample]) -> None:
    for a, b in zip(samples, samples[1:]):
        if (a.x, a.id) > (b.x, b.id):
            raise ValueError("samples must be sorted by (x, id)")


def make_samples(xs, zs) -> list:
    """Build samples in arrival order and return them sorted by (x, id)."""
    xs = list(xs)
    zs = list(zs)
    if len(xs) != len(zs):
        raise ValueError("scores and losses differ in length")
    out = [Sample(float(x), z, i) for i, (x, z) in enumerate(zip(xs, zs))]
    out.sort(key=lambda s: (s.x, s.id))
    return out


def rect_from_ranks(samples: Sequence[Sample], k: int, m: int, prefix) -> RectFit:
    """Rectangle covering sorted positions ``k..m-1`` given prefix sums of z."""
    total = prefix[len(samples)]
    if m <= k:
        return RectFit.empty(total)
    x1 = samples[k - 1].x if k > 0 else NEG_INF
    x2 = samples[m - 1].x
    return RectFit(x1, x2, prefix[k], prefix[m] - prefix[k], total - prefix[m], k, m)


def prefix_sums(zs) -> list:
    out = [0]
    acc = 0
    for z in zs:
        acc = acc + z
        out.append(acc)
    return out


def validate_fit(samples: Sequence[Sample], fit: RectFit, tol: float = 0.0) -> bool:
    """Check that a fit's region sums match the data.

    When the fit carries ranks the regions are taken by sorted position,
    otherwise by score against ``(x1, x2]``. ``tol`` is relative to the sum
    of absolute losses; the default demands exact equality.
    """
    check_sorted(samples)
    if fit.x1 > fit.x2:
        return False
    n = len(samples)
    if fit.k is not None and fit.m is not None:
        k, m = fit.k, fit.m
        if not (0 <= k <= m <= n):
            return False
        if m > k:
            if fit.x2 != samples[m - 1].x:
                return False
            if fit.x1 != (samples[k - 1].x if k > 0 else NEG_INF):
                return False
        elif fit.l1 != 0:
            return False
        parts = ([s.z for s in samples[:k]], [s.z for s in samples[k:m]], [s.z for s in samples[m:]])
    else:
        parts = ([], [], [])
        for s in samples:
            region = 0 if s.x <= fit.x1 else (1 if s.x <= fit.x2 else 2)
            parts[region].append(s.z)
    scale = tol * (sum(abs(s.z) for s in samples) + 1)
    for got, zs in zip((fit.l0, fit.l1, fit.l2), parts):
        want = sum(zs) if tol == 0 else math.fsum(zs)
        if tol == 0:
            if got != want:
                return False
        elif abs(got - want) > scale:
            return False
    return True

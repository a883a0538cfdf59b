"""Reference solvers used as ground truth.

Both enumerate every rectangle ``(k, m]`` over sorted sample positions,
``0 <= k < m <= N``, plus the empty rectangle. Ties go to the empty
rectangle first, then to the lexicographically smallest ``(k, m)``.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .core import (
    FitConfig,
    FitReport,
    OpCounter,
    RectFit,
    Sample,
    check_sorted,
    evaluate_loss,
    prefix_sums,
    rect_from_ranks,
)

_INT64_SAFE = 2**62


def _prepare(samples: Sequence[Sample], config: FitConfig) -> list:
    if len(samples) == 0:
        raise ValueError("need at least one sample")
    check_sorted(samples)
    zs = [s.z for s in samples]
    for z in zs:
        config.check_loss(z)
    return zs


def _report(samples, k, m, prefix, config) -> FitReport:
    fit = rect_from_ranks(samples, k, m, prefix) if k is not None else RectFit.empty(prefix[-1])
    return FitReport(fit, evaluate_loss(fit, config), len(samples), config)


def _as_array(values) -> np.ndarray:
    if all(isinstance(v, int) for v in values):
        if max((abs(v) for v in values), default=0) * max(len(values), 1) < _INT64_SAFE:
            return np.asarray(values, dtype=np.int64)
        return np.asarray(values, dtype=object)
    return np.asarray(values, dtype=np.float64)


def brute_force_fit(samples: Sequence[Sample], config: FitConfig = FitConfig()) -> FitReport:
    """Score every candidate rectangle and keep the cheapest.

    Each candidate's loss is ``q0*L0 + q1*L1 + q0*L2`` with the three region
    sums read off a prefix-sum table, so the whole grid costs O(N^2) instead
    of the textbook O(N^3); the candidates and the objective are unchanged.
    """
    zs = _prepare(samples, config)
    n = len(zs)
    prefix = prefix_sums(zs)
    p = _as_array(prefix)
    ks, ms = np.triu_indices(n + 1, k=1)
    l0 = p[ks]
    l1 = p[ms] - p[ks]
    l2 = p[n] - p[ms]
    losses = config.q0 * l0 + config.q1 * l1 + config.q0 * l2
    best = int(np.argmin(losses))
    empty_loss = config.q0 * prefix[n]
    if losses[best] < empty_loss:
        return _report(samples, int(ks[best]), int(ms[best]), prefix, config)
    return _report(samples, None, None, prefix, config)


def iterative_fit(
    samples: Sequence[Sample],
    config: FitConfig = FitConfig(),
    counter: Optional[OpCounter] = None,
) -> FitReport:
    """Visit every ``(k, m)`` in snake order with O(1) loss updates.

    Rows of fixed ``k`` are swept upward in ``m`` when ``k`` is even and
    downward when odd. ``counter`` receives one tick per visited state.
    """
    zs = _prepare(samples, config)
    n = len(zs)
    q0, q1 = config.q0, config.q1
    up = q1 - q0
    down = q0 - q1

    # z at 1-based position i is zs[i - 1]
    k, m = 0, 1
    loss = q0 * 0 + q1 * zs[0] + q0 * sum(zs[1:])
    best = (loss, k, m)
    visits = 1
    while not (k == n - 1 and m == n):
        if k % 2 == 0:
            if m < n:
                loss += zs[m] * up
                m += 1
            else:
                loss += zs[k] * down
                k += 1
        else:
            if m > k + 1:
                loss += zs[m - 1] * down
                m -= 1
            else:
                loss += zs[k] * down + zs[m] * up
                k += 1
                m += 1
        visits += 1
        if (loss, k, m) < best:
            best = (loss, k, m)
    if counter is not None:
        counter.add(visits)

    prefix = prefix_sums(zs)
    if best[0] < q0 * prefix[n]:
        return _report(samples, best[1], best[2], prefix, config)
    return _report(samples, None, None, prefix, config)

"""Linear-time offline solver.

A forward scan finds, for every prefix, the best 0-1 step (the cheapest
suffix of that prefix to lift to q1). A backward scan does the same for 1-0
steps over suffixes. The rectangle is the best junction of the two.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Sequence

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


class StepScan(NamedTuple):
    """Per-length step fits; index ``j`` describes the first (or last) ``j``
    samples and index 0 is the empty range.

    ``low``/``high`` are the loss masses mapped to q0/q1. For the forward scan
    ``rank[j]`` is the number of leading samples kept at q0; for the backward
    scan it is the 1-based sorted position of the last sample lifted to q1
    (equal to ``N - j`` when nothing is lifted).
    """

    low: list
    high: list
    rank: list


def prefix_step_scan(samples: Sequence[Sample], counter: Optional[OpCounter] = None) -> StepScan:
    check_sorted(samples)
    low, high, rank = [0], [0], [0]
    l0 = l1 = 0
    k = 0
    for n, s in enumerate(samples, start=1):
        l1 = l1 + s.z
        if l1 > 0:
            # lifting this suffix costs more than leaving it at q0
            l0 = l0 + l1
            l1 = 0
            k = n
        low.append(l0)
        high.append(l1)
        rank.append(k)
    if counter is not None:
        counter.add(len(samples))
    return StepScan(low, high, rank)


def suffix_step_scan(samples: Sequence[Sample], counter: Optional[OpCounter] = None) -> StepScan:
    check_sorted(samples)
    n = len(samples)
    low, high, rank = [0], [0], [n]
    m0 = m1 = 0
    m = n
    for j in range(1, n + 1):
        pos = n - j  # 0-based position entering the suffix
        m1 = m1 + samples[pos].z
        if m1 > 0:
            m0 = m0 + m1
            m1 = 0
            m = pos
        low.append(m0)
        high.append(m1)
        rank.append(m)
    if counter is not None:
        counter.add(n)
    return StepScan(low, high, rank)


def linear_fit(
    samples: Sequence[Sample],
    config: FitConfig = FitConfig(),
    counter: Optional[OpCounter] = None,
) -> FitReport:
    if len(samples) == 0:
        raise ValueError("need at least one sample")
    for s in samples:
        config.check_loss(s.z)
    n = len(samples)
    fwd = prefix_step_scan(samples, counter)
    bwd = suffix_step_scan(samples, counter)
    q0, q1 = config.q0, config.q1

    best_j, best_loss = None, None
    for j in range(n + 1):
        loss = q0 * fwd.low[j] + q1 * fwd.high[j] + q1 * bwd.high[n - j] + q0 * bwd.low[n - j]
        if best_loss is None or loss < best_loss:
            best_j, best_loss = j, loss
    if counter is not None:
        counter.add(n + 1)

    prefix = prefix_sums(s.z for s in samples)
    k, m = fwd.rank[best_j], bwd.rank[n - best_j]
    fit = rect_from_ranks(samples, k, m, prefix)
    if not evaluate_loss(fit, config) < q0 * prefix[n]:
        fit = RectFit.empty(prefix[n])
    return FitReport(fit, evaluate_loss(fit, config), n, config)

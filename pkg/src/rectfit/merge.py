"""Summaries of sorted segments that combine in O(1).

A segment summary carries the total loss, the best rectangle inside the
segment and its best nondecreasing and nonincreasing steps. Summaries of two
adjacent segments merge into the summary of their concatenation, which is
what makes the streaming engine work.

All choices minimize the mass lifted to q1. With ``q0 <= q1`` that is the
same as minimizing the loss, since ``loss = q0 * s + (q1 - q0) * lifted``.
"""

from __future__ import annotations

from .core import NEG_INF, NONDECREASING, NONINCREASING, POS_INF, RectFit, Sample, StepFit


class SegmentSummary:
    """Aggregate of a sorted run of samples.

    Stored flat for speed; ``rect``, ``up`` and ``down`` rebuild the public
    fit objects. Ranks are local to the segment. Treat instances as
    immutable.
    """

    __slots__ = (
        "s", "count", "xmin", "xmax",
        "x1", "x2", "l0", "l1", "l2", "k", "m",
        "up_x", "up_high", "up_rank",
        "down_x", "down_high", "down_rank",
    )

    def __init__(self, s, count, xmin, xmax, x1, x2, l0, l1, l2, k, m,
                 up_x, up_high, up_rank, down_x, down_high, down_rank):
        self.s = s
        self.count = count
        self.xmin = xmin
        self.xmax = xmax
        self.x1 = x1
        self.x2 = x2
        self.l0 = l0
        self.l1 = l1
        self.l2 = l2
        self.k = k
        self.m = m
        self.up_x = up_x
        self.up_high = up_high
        self.up_rank = up_rank
        self.down_x = down_x
        self.down_high = down_high
        self.down_rank = down_rank

    @property
    def rect(self) -> RectFit:
        return RectFit(self.x1, self.x2, self.l0, self.l1, self.l2, self.k, self.m)

    @property
    def up(self) -> StepFit:
        return StepFit(NONDECREASING, self.up_x, self.s - self.up_high, self.up_high, self.up_rank)

    @property
    def down(self) -> StepFit:
        return StepFit(NONINCREASING, self.down_x, self.s - self.down_high, self.down_high, self.down_rank)

    def __repr__(self):
        return (f"SegmentSummary(s={self.s!r}, count={self.count}, rect={self.rect!r}, "
                f"up={self.up!r}, down={self.down!r})")


def empty_summary() -> SegmentSummary:
    return SegmentSummary(0, 0, POS_INF, NEG_INF,
                          NEG_INF, NEG_INF, 0, 0, 0, 0, 0,
                          NEG_INF, 0, 0, NEG_INF, 0, 0)


def leaf_summary(sample: Sample) -> SegmentSummary:
    x, z = sample.x, sample.z
    if z < 0:
        return SegmentSummary(z, 1, x, x,
                              NEG_INF, x, 0, z, 0, 0, 1,
                              NEG_INF, z, 0, x, z, 1)
    # zero loss stays at q0: ties prefer the empty lift
    return SegmentSummary(z, 1, x, x,
                          NEG_INF, NEG_INF, 0, 0, z, 0, 0,
                          x, 0, 1, NEG_INF, 0, 0)


def merge(a: SegmentSummary, b: SegmentSummary) -> SegmentSummary:
    """Summary of ``a`` followed by ``b``.

    The new best rectangle is the cheapest of three candidates: ``a``'s
    rectangle, ``b``'s rectangle, or one straddling the boundary built from
    ``a``'s best lifted suffix and ``b``'s best lifted prefix. Ties go to
    ``a``'s, then the straddling one, then ``b``'s.
    """
    if a.count == 0:
        return b
    if b.count == 0:
        return a
    if a.xmax > b.xmin:
        raise ValueError(f"segments overlap: {a.xmax} > {b.xmin}")

    na = a.count
    s = a.s + b.s
    gap = a.l2 + b.l0
    straddle = a.up_high + b.down_high

    if a.l1 <= straddle and a.l1 <= b.l1:
        x1, x2, l0, l1, l2, k, m = a.x1, a.x2, a.l0, a.l1, gap + b.l1 + b.l2, a.k, a.m
    elif straddle <= b.l1:
        x1, k = a.up_x, a.up_rank
        if b.down_rank:
            x2, m = b.down_x, na + b.down_rank
        else:
            x2, m = a.xmax, na
        l0, l1, l2 = a.s - a.up_high, straddle, b.s - b.down_high
    else:
        x1 = b.x1 if b.k else a.xmax
        x2, l0, l1, l2, k, m = b.x2, a.l0 + a.l1 + gap, b.l1, b.l2, na + b.k, na + b.m
    if not l1 < 0:
        x1, x2, l0, l1, l2, k, m = NEG_INF, NEG_INF, 0, 0, s, 0, 0

    # nondecreasing: lifted suffix; ties keep the shorter lift
    lifted_in_a = a.up_high + b.s
    if b.up_high <= lifted_in_a:
        up_high, up_rank = b.up_high, na + b.up_rank
        up_x = b.up_x if b.up_rank else a.xmax
    else:
        up_high, up_rank, up_x = lifted_in_a, a.up_rank, a.up_x

    # nonincreasing: lifted prefix; ties keep the shorter lift
    lifted_past_a = a.s + b.down_high
    if a.down_high <= lifted_past_a:
        down_high, down_rank, down_x = a.down_high, a.down_rank, a.down_x
    else:
        down_high, down_rank = lifted_past_a, na + b.down_rank
        down_x = b.down_x if b.down_rank else a.xmax

    return SegmentSummary(s, na + b.count, a.xmin, b.xmax,
                          x1, x2, l0, l1, l2, k, m,
                          up_x, up_high, up_rank, down_x, down_high, down_rank)


def fold(summaries) -> SegmentSummary:
    out = empty_summary()
    for item in summaries:
        out = merge(out, item)
    return out

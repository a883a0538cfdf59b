"""Online optimal rectangle over an arbitrarily ordered score stream.

Samples live in an AVL tree ordered by ``(x, arrival id)``. Every node keeps
the segment summary of its subtree, so the root always summarizes the whole
sorted multiset and the current fit is read off in O(1). An insert touches
one root-to-leaf path plus at most two rotations, i.e. O(log N) merges.
"""

from __future__ import annotations

import math
from typing import Iterable, Optional

from .core import FitConfig, FitReport, RectFit, Sample, evaluate_loss
from .merge import SegmentSummary, empty_summary, leaf_summary, merge

EXACT = "exact"
REAL = "real"


class _Node:
    __slots__ = ("key", "leaf", "agg", "height", "left", "right")

    def __init__(self, key, leaf: SegmentSummary):
        self.key = key
        self.leaf = leaf
        self.agg = leaf
        self.height = 1
        self.left: Optional[_Node] = None
        self.right: Optional[_Node] = None


def _height(node) -> int:
    return node.height if node is not None else 0


class StreamEngine:
    """Insertion-only engine maintaining the optimal rectangle.

    ``mode="exact"`` requires integral losses and keeps them as Python ints;
    ``mode="real"`` stores floats. ``merge_count`` tallies merge invocations
    since construction (or the last :meth:`reset`).
    """

    def __init__(self, config: FitConfig = FitConfig(), mode: str = EXACT):
        if mode not in (EXACT, REAL):
            raise ValueError(f"mode must be {EXACT!r} or {REAL!r}")
        self.config = config
        self.mode = mode
        self.reset()

    def reset(self) -> None:
        self._root: Optional[_Node] = None
        self._next_id = 0
        self._report: Optional[FitReport] = None
        self.merge_count = 0

    def size(self) -> int:
        return self._root.agg.count if self._root is not None else 0

    __len__ = size

    def height(self) -> int:
        return _height(self._root)

    def summary(self) -> SegmentSummary:
        return self._root.agg if self._root is not None else empty_summary()

    def _coerce(self, x, z):
        x = float(x)
        if math.isnan(x):
            raise ValueError("score must not be NaN")
        if isinstance(z, bool) or not isinstance(z, (int, float)):
            try:
                z = float(z)
            except (TypeError, ValueError):
                raise ValueError(f"loss must be a real number, got {z!r}") from None
        if isinstance(z, float) and not math.isfinite(z):
            raise ValueError(f"loss must be finite, got {z!r}")
        if self.mode == EXACT:
            if isinstance(z, float):
                if not z.is_integer():
                    raise ValueError(f"exact mode needs integral losses, got {z!r}")
                z = int(z)
        else:
            z = float(z)
        self.config.check_loss(z)
        return x, z

    def insert(self, x, z) -> FitReport:
        """Add one sample; equal scores are ordered by arrival."""
        x, z = self._coerce(x, z)
        sample = Sample(x, z, self._next_id)
        self._next_id += 1
        self._root = self._insert(self._root, (x, sample.id), leaf_summary(sample))
        self._report = None
        return self.current_fit()

    def extend(self, xs: Iterable, zs: Iterable) -> FitReport:
        for x, z in zip(xs, zs):
            self.insert(x, z)
        return self.current_fit()

    def current_fit(self) -> FitReport:
        if self._report is None:
            agg = self.summary()
            if agg.count == 0:
                fit = RectFit.empty(0)
            else:
                fit = agg.rect
            self._report = FitReport(fit, evaluate_loss(fit, self.config), agg.count, self.config)
        return self._report

    @classmethod
    def from_samples(cls, xs, zs, config: FitConfig = FitConfig(), mode: str = EXACT) -> "StreamEngine":
        """Bulk-load a perfectly balanced tree in O(N) merges."""
        eng = cls(config, mode)
        pairs = [eng._coerce(x, z) for x, z in zip(xs, zs)]
        keyed = sorted(((x, i), z) for i, (x, z) in enumerate(pairs))
        eng._next_id = len(keyed)
        eng._root = eng._build(keyed, 0, len(keyed))
        return eng

    def _build(self, keyed, lo, hi) -> Optional[_Node]:
        if lo >= hi:
            return None
        mid = (lo + hi) // 2
        key, z = keyed[mid]
        node = _Node(key, leaf_summary(Sample(key[0], z, key[1])))
        node.left = self._build(keyed, lo, mid)
        node.right = self._build(keyed, mid + 1, hi)
        self._update(node)
        return node

    def sorted_samples(self) -> list:
        out = []
        stack = []
        node = self._root
        while stack or node is not None:
            while node is not None:
                stack.append(node)
                node = node.left
            node = stack.pop()
            out.append(Sample(node.key[0], node.leaf.s, node.key[1]))
            node = node.right
        return out

    # tree maintenance

    def _update(self, node: _Node) -> None:
        agg = node.leaf
        if node.left is not None:
            agg = merge(node.left.agg, agg)
            self.merge_count += 1
        if node.right is not None:
            agg = merge(agg, node.right.agg)
            self.merge_count += 1
        node.agg = agg
        node.height = 1 + max(_height(node.left), _height(node.right))

    def _rotate_right(self, node: _Node) -> _Node:
        pivot = node.left
        node.left = pivot.right
        pivot.right = node
        self._update(node)
        self._update(pivot)
        return pivot

    def _rotate_left(self, node: _Node) -> _Node:
        pivot = node.right
        node.right = pivot.left
        pivot.left = node
        self._update(node)
        self._update(pivot)
        return pivot

    def _insert(self, node: Optional[_Node], key, leaf: SegmentSummary) -> _Node:
        if node is None:
            return _Node(key, leaf)
        if key < node.key:
            node.left = self._insert(node.left, key, leaf)
        else:
            node.right = self._insert(node.right, key, leaf)

        balance = _height(node.left) - _height(node.right)
        if balance > 1:
            if _height(node.left.left) < _height(node.left.right):
                node.left = self._rotate_left(node.left)
            return self._rotate_right(node)
        if balance < -1:
            if _height(node.right.right) < _height(node.right.left):
                node.right = self._rotate_right(node.right)
            return self._rotate_left(node)
        self._update(node)
        return node

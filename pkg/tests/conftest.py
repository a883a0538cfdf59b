import random

import numpy as np
import pytest
from hypothesis import strategies as st

from rectfit import make_samples


def enumerate_rectangles(zs, q0=0, q1=1):
    """Literal O(N^3) scan: loss of every (k, m] built by summing each region.

    Returns the optimal loss and every optimal (k, m); the empty rectangle is
    listed as (0, 0). Independent of every solver in the package.
    """
    n = len(zs)
    empty = q0 * sum(zs)
    best, winners = empty, [(0, 0)]
    for k in range(n):
        for m in range(k + 1, n + 1):
            loss = q0 * sum(zs[:k]) + q1 * sum(zs[k:m]) + q0 * sum(zs[m:])
            if loss < best:
                best, winners = loss, [(k, m)]
            elif loss == best:
                winners.append((k, m))
    return best, winners


def unique_optimum(zs):
    return len(enumerate_rectangles(zs)[1]) == 1


def random_instance(rng, n, lo=-10, hi=10, xmax=None):
    xmax = xmax if xmax is not None else 2 * n
    xs = [float(rng.randint(0, xmax)) for _ in range(n)]
    zs = [rng.randint(lo, hi) for _ in range(n)]
    return xs, zs


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def worked():
    """The small instance used throughout: scores 1..5, losses 2,-3,1,-2,4."""
    return make_samples([1, 2, 3, 4, 5], [2, -3, 1, -2, 4])


int_losses = st.lists(st.integers(-10, 10), min_size=1, max_size=12)


@st.composite
def scored_losses(draw, max_size=30):
    zs = draw(st.lists(st.integers(-10, 10), min_size=1, max_size=max_size))
    xs = draw(st.lists(st.integers(0, 8), min_size=len(zs), max_size=len(zs)))
    return [float(x) for x in xs], zs


def optimum_count(zs):
    """Number of optimal rectangles (empty one included) at q0=0, q1=1."""
    p = np.concatenate([[0], np.cumsum(np.asarray(zs, dtype=np.int64))])
    ks, ms = np.triu_indices(len(zs) + 1, k=1)
    seg = p[ms] - p[ks]
    best = min(int(seg.min()), 0)
    return int((seg == best).sum()) + (best == 0)


_ACCEPTANCE_LINES = []


def record_criterion(name, ok, detail="", status=None):
    status = status or ("PASS" if ok else "FAIL")
    line = f"{status:4s}  {name}" + (f"  [{detail}]" if detail else "")
    _ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

"""Exit criteria. Each test prints one PASS/FAIL line, repeated in the
terminal summary under "acceptance criteria"."""

import math
import os
import random
import time

import numpy as np
import pytest
from conftest import enumerate_rectangles, optimum_count, record_criterion

from rectfit import (
    FitConfig,
    OpCounter,
    StreamEngine,
    brute_force_fit,
    empty_summary,
    fold,
    iterative_fit,
    leaf_summary,
    linear_fit,
    make_samples,
    merge,
    validate_fit,
)

pytestmark = pytest.mark.acceptance

ALL = ("brute", "iterative", "linear", "streaming")


def run_all(xs, zs, config=FitConfig()):
    samples = make_samples(xs, zs)
    eng = StreamEngine(config)
    eng.extend(xs, zs)
    return samples, {
        "brute": brute_force_fit(samples, config),
        "iterative": iterative_fit(samples, config),
        "linear": linear_fit(samples, config),
        "streaming": eng.current_fit(),
    }


def test_1_oracle_equivalence():
    rng = random.Random(1)
    failures = []
    unique = 0
    t0 = time.perf_counter()
    for trial in range(1000):
        n = rng.randint(1, 200)
        xs = [float(rng.randint(0, 4 * n)) for _ in range(n)]
        zs = [rng.randint(-10, 10) for _ in range(n)]
        samples, reps = run_all(xs, zs)
        losses = {reps[a].loss for a in ALL}
        if len(losses) != 1 or not all(type(reps[a].loss) is int for a in ALL):
            failures.append(trial)
            continue
        if optimum_count([s.z for s in samples]) == 1:
            unique += 1
            if len({reps[a].fit for a in ALL}) != 1:
                failures.append(trial)
        if not all(validate_fit(samples, reps[a].fit) for a in ALL):
            failures.append(trial)
    secs = time.perf_counter() - t0
    ok = not failures
    record_criterion("1 oracle equivalence (1000 instances, exact)", ok,
                     f"{unique} unique optima checked on thresholds, {secs:.1f}s")
    assert ok, failures[:10]


def test_2_prefix_consistency():
    rng = random.Random(2)
    mismatches = 0
    t0 = time.perf_counter()
    for _ in range(100):
        eng = StreamEngine()
        xs, zs = [], []
        for _ in range(200):
            x, z = float(rng.randint(0, 1000)), rng.randint(-10, 10)
            xs.append(x)
            zs.append(z)
            rep = eng.insert(x, z)
            if rep.loss != brute_force_fit(make_samples(xs, zs)).loss:
                mismatches += 1
    secs = time.perf_counter() - t0
    ok = mismatches == 0
    record_criterion("2 prefix consistency (100 streams x 200)", ok,
                     f"{mismatches} mismatches, {secs:.1f}s")
    assert ok


def test_3_degenerate_cases():
    rng = random.Random(3)
    problems = []
    for config in (FitConfig(0, 1), FitConfig(2, 5), FitConfig(-3, -1)):
        for n in (1, 2, 7, 50):
            xs = [float(rng.randint(0, 100)) for _ in range(n)]
            pos = [rng.randint(0, 10) for _ in range(n)]
            neg = [rng.randint(-10, -1) for _ in range(n)]
            _, reps = run_all(xs, pos, config)
            for a, rep in reps.items():
                if not (rep.fit.is_empty and rep.loss == config.q0 * sum(pos)):
                    problems.append(("nonnegative", config, n, a))
            _, reps = run_all(xs, neg, config)
            for a, rep in reps.items():
                f = rep.fit
                if not ((f.k, f.m) == (0, n) and f.l1 == sum(neg) and rep.loss == config.q1 * sum(neg)):
                    problems.append(("negative", config, n, a))
    for z in (-4, 4):
        _, reps = run_all([7.0], [z])
        want = min(z, 0)
        if any(rep.loss != want for rep in reps.values()):
            problems.append(("single", z))
    ok = not problems
    record_criterion("3 degenerate cases", ok, f"{len(problems)} problems")
    assert ok, problems


def test_4_complexity_scaling():
    rng = random.Random(4)
    sizes = [2**p for p in range(10, 21)]
    probes = 256
    means = []
    for n in sizes:
        xs = [rng.random() for _ in range(n)]
        zs = [rng.randint(-10, 10) for _ in range(n)]
        eng = StreamEngine.from_samples(xs, zs)
        before = eng.merge_count
        for _ in range(probes):
            eng.insert(rng.random(), rng.randint(-10, 10))
        means.append((eng.merge_count - before) / probes)
    logn = np.log2(sizes)
    a, b = np.polyfit(logn, means, 1)
    fitted = a * logn + b
    resid = np.asarray(means) - fitted
    r2 = 1 - (resid ** 2).sum() / ((np.asarray(means) - np.mean(means)) ** 2).sum()
    curvature = np.polyfit(logn, means, 2)[0]
    ratio = max(m / math.log2(n) for m, n in zip(means, sizes))
    log_ok = a > 0 and r2 >= 0.9 and curvature <= 0.05 * a and ratio <= 3.0

    lin_sizes = [2**p for p in (10, 13, 16, 18)]
    lin_ratio = []
    for n in lin_sizes:
        counter = OpCounter()
        linear_fit(make_samples(range(n), [rng.randint(-10, 10) for _ in range(n)]), counter=counter)
        lin_ratio.append(counter.count / n)
    lin_ok = max(lin_ratio) <= 3.01

    record_criterion("4a merges per insert ~ a*log2(N)+b", log_ok,
                     f"a={a:.3f} b={b:.3f} R2={r2:.4f} curvature={curvature:.4f} max count/log2N={ratio:.2f}")
    record_criterion("4b linear_fit operations <= c*N", lin_ok,
                     f"ops/N = {', '.join(f'{r:.3f}' for r in lin_ratio)}")

    # throughput is reported, not gated
    n_inserts = 10**6 if os.environ.get("RECTFIT_FULL_THROUGHPUT") else 2**16
    eng = StreamEngine(mode="real")
    xs = [rng.random() for _ in range(n_inserts)]
    zs = [rng.uniform(-1, 1) for _ in range(n_inserts)]
    t0 = time.perf_counter()
    for x, z in zip(xs, zs):
        eng.insert(x, z)
    secs = time.perf_counter() - t0
    per = secs / n_inserts
    note = "measured" if n_inserts == 10**6 else "extrapolated at log2 growth"
    projected = secs if n_inserts == 10**6 else per * 10**6 * (20 / 16)
    print(f"REPORT throughput: {n_inserts} inserts in {secs:.2f}s ({per * 1e6:.1f} us/insert); "
          f"10^6 inserts ~ {projected:.0f}s ({note}); soft bound 10s")
    record_criterion("4c throughput (reported, not gated)", True,
                     f"{per * 1e6:.1f} us/insert, 10^6 ~ {projected:.0f}s {note}; soft bound 10s",
                     status="INFO")
    assert log_ok and lin_ok


def test_5_floating_agreement():
    rng = random.Random(5)
    worst = 0.0
    cases = [(n, s) for n in (1, 10, 100, 1000) for s in range(20)] + [(10**4, 0), (10**4, 1), (10**5, 0)]
    for n, _ in cases:
        xs = [rng.random() for _ in range(n)]
        zs = [rng.uniform(-1.0, 1.0) for _ in range(n)]
        lin = linear_fit(make_samples(xs, zs)).loss
        eng = StreamEngine(mode="real")
        eng.extend(xs, zs)
        got = eng.current_fit().loss
        scale = max(abs(lin), abs(got))
        if scale > 0:
            worst = max(worst, abs(lin - got) / scale)
    ok = worst <= 1e-9
    record_criterion("5 floating-mode agreement (rel 1e-9, N<=1e5)", ok, f"worst rel diff {worst:.2e}")
    assert ok


def _random_partition(rng, samples):
    n = len(samples)
    cuts = sorted(rng.sample(range(1, n), rng.randint(0, min(n - 1, 8)))) if n > 1 else []
    bounds = [0] + cuts + [n]
    return [samples[a:b] for a, b in zip(bounds, bounds[1:])]


def _tree_fold(items, rng):
    items = list(items)
    while len(items) > 1:
        i = rng.randrange(len(items) - 1)
        items[i:i + 2] = [merge(items[i], items[i + 1])]
    return items[0]


def test_6_merge_algebra_laws():
    rng = random.Random(6)
    bad = []
    for trial in range(1000):
        n = rng.randint(1, 60)
        samples = make_samples([rng.randint(0, 40) for _ in range(n)], [rng.randint(-10, 10) for _ in range(n)])
        segments = [fold(leaf_summary(s) for s in part) for part in _random_partition(rng, samples)]
        for seg in segments:
            for out in (merge(empty_summary(), seg), merge(seg, empty_summary())):
                if (out.rect, out.up, out.down, out.s, out.count) != (seg.rect, seg.up, seg.down, seg.s, seg.count):
                    bad.append(("identity", trial))
        left = fold(segments)
        right = segments[-1]
        for seg in reversed(segments[:-1]):
            right = merge(seg, right)
        tree = _tree_fold(segments, rng)
        keys = {(x.rect.l1, x.up.l_high, x.down.l_high, x.s, x.count) for x in (left, right, tree)}
        if len(keys) != 1:
            bad.append(("associativity", trial))
    ok = not bad
    record_criterion("6 merge-algebra laws (1000 partitions)", ok, f"{len(bad)} violations")
    assert ok, bad[:10]


def _gamma_gated(a, b):
    """Rectangle mass chosen by the guard conditions exactly as printed."""
    gamma = a.l2 + b.l0
    theta = a.up.l_high + b.down.l_high
    if a.l1 <= min(b.l1, gamma):
        return a.l1
    if b.l1 <= min(a.l1, gamma):
        return b.l1
    if gamma <= min(a.l1, b.l1):
        return theta
    return None


def test_7_comparator_audit():
    rng = random.Random(7)
    hits = 0
    total = 1000
    for _ in range(total):
        na, nb = rng.randint(1, 25), rng.randint(1, 25)
        zs = [rng.randint(-10, 10) for _ in range(na + nb)]
        samples = make_samples(range(na + nb), zs)
        a = fold(leaf_summary(s) for s in samples[:na])
        b = fold(leaf_summary(s) for s in samples[na:])
        theta = a.up.l_high + b.down.l_high
        chosen = min(a.rect.l1, b.rect.l1, theta)
        want = brute_force_fit(samples).loss
        if min(chosen, 0) == want and merge(a, b).rect.l1 == want:
            hits += 1
    ok = hits == total

    # the printed guard on the worked split picks the left rectangle (-3)
    left = fold(leaf_summary(s) for s in make_samples([1, 2], [2, -3]))
    right = fold(leaf_summary(s) for s in make_samples([3, 4, 5], [1, -2, 4]))
    optimum = enumerate_rectangles([2, -3, 1, -2, 4])[0]
    gated = _gamma_gated(left, right)
    negative_ok = gated == -3 and optimum == -4 and merge(left, right).rect.l1 == -4

    record_criterion("7a argmin{l1_left, l1_right, theta} vs brute force", ok, f"{hits}/{total}")
    record_criterion("7b gamma-gated guard fails on [2,-3 | 1,-2,4]", negative_ok,
                     f"gated picks {gated}, optimum {optimum}")
    assert ok and negative_ok

"""
Streaming updates
=================

The engine keeps the optimal rectangle as samples arrive in arbitrary score
order. Each insert costs O(log N) summary merges.
"""

import random

from rectfit import StreamEngine, linear_fit, make_samples

rng = random.Random(0)
engine = StreamEngine()

xs, zs = [], []
for step in range(1, 11):
    x, z = rng.randint(0, 100), rng.randint(-5, 5)
    xs.append(x)
    zs.append(z)
    report = engine.insert(x, z)
    print(f"n={report.n:2d} insert ({x:3d}, {z:+d})  rect=({report.fit.x1}, {report.fit.x2}]  loss={report.loss}")

# The streamed answer agrees with the batch solver on the same data.
print("batch loss:", linear_fit(make_samples(xs, zs)).loss)

# Merge work per insert grows with the tree height, not with N.
big = StreamEngine(mode="real")
for n in (10**3, 10**4, 10**5):
    while big.size() < n:
        big.insert(rng.random(), rng.uniform(-1, 1))
    before = big.merge_count
    for _ in range(100):
        big.insert(rng.random(), rng.uniform(-1, 1))
    print(f"N={big.size():6d}  height={big.height():2d}  merges/insert={(big.merge_count - before) / 100:.1f}")

"""
Target-region estimation from binary labels
===========================================

Labels become linear losses (``z = 1 - 2y``, or a class-weighted variant),
and the optimal rectangle is the score interval to call positive.
"""

import numpy as np

from rectfit import FitConfig, apply_transform, linear_fit, losses_from_labels, make_samples

rng = np.random.default_rng(7)
scores = rng.normal(size=400)
# positives concentrate in a band of scores
p_pos = np.where((scores > -0.3) & (scores < 0.8), 0.8, 0.15)
labels = (rng.random(400) < p_pos).astype(int).tolist()

for alpha in (1, 3):
    res = losses_from_labels(labels, alpha=alpha)
    report = linear_fit(make_samples(scores, res.losses), FitConfig(0, 1))
    f = report.fit
    pred = np.array([apply_transform(f, FitConfig(0, 1), x) for x in scores])
    acc = (pred == np.array(labels)).mean()
    print(f"alpha={alpha}: positive region ({f.x1:.3f}, {f.x2:.3f}], "
          f"loss={report.loss}, bounds=[{res.zl}, {res.zu}], accuracy={acc:.3f}")

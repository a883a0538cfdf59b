"""
Combining segment summaries
===========================

Summaries of adjacent sorted segments merge in O(1). The best rectangle of
the union sits in the left part, in the right part, or straddles the cut.
"""

from rectfit import fold, leaf_summary, make_samples, merge

samples = make_samples([1, 2, 3, 4, 5], [2, -3, 1, -2, 4])
left = fold(leaf_summary(s) for s in samples[:2])
right = fold(leaf_summary(s) for s in samples[2:])

print("left  best rectangle mass:", left.rect.l1)
print("right best rectangle mass:", right.rect.l1)
print("straddling mass (left lifted suffix + right lifted prefix):",
      left.up.l_high + right.down.l_high)
print("merged:", merge(left, right).rect)

# Gating the straddling case on the gap between the two rectangles
# (L2 of left plus L0 of right) would keep the left rectangle here, which
# is worse by one unit.
print("gap between rectangles:", left.rect.l2 + right.rect.l0)

"""
When every polarization fails
=============================

If V contains sections vanishing on each component, those sections span
subsheaves that beat the kernel slope on both sides. When the two
resulting bounds on w1 and w2 sum to less than 1, no polarization can
work and the kernel is strongly unstable.
"""

from nodalkernel import CurveData, HypothesisSet, PairNumerics, classify
from nodalkernel.engine import instability_bound

C = CurveData(2, 2)
facts = HypothesisSet.from_names(
    ["E1_semistable", "E2_semistable", "E1_nontrivial", "E2_nontrivial", "pair_is_complete"]
)

# the complete pair: all five sections of a bidegree (4, 4) line bundle
P = PairNumerics(1, 4, 4, 5)
v = classify(P, C, facts)
print(v.kind.value, "via", v.rule_id)
for entry in v.certificate:
    print(f"  {entry.rule_id:24s} {entry.inequality}")

###############################################################################
# The bounds are plain rationals, so we can watch them as the degree grows.
# Complete pairs have k = h0(E), which grows with d as well.

for d in range(4, 11):
    P = PairNumerics(1, d, d, 2 * d - 3)
    b1, b2 = instability_bound(P, C, 1), instability_bound(P, C, 2)
    print(f"d={d:2d} k={P.k:2d}: w1 <= {b1}, w2 <= {b2}, sum {b1 + b2}")

###############################################################################
# Drop the completeness hypothesis and nothing forces sections to vanish;
# the engine says what it would have needed.

v = classify(PairNumerics(1, 4, 4, 3), C, HypothesisSet.from_names(["E1_semistable", "E2_semistable"]))
print(v.kind.value, "nearest rule:", v.rule_id, "missing:", ", ".join(v.missing))

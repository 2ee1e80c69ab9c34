"""
Polarization windows of kernel bundles
======================================

A generated pair on a two-component curve has a kernel bundle whose
stability depends on the polarization w = (w1, 1 - w1). Here we compute
the window of admissible w1 exactly and then confirm it by brute force.
"""

from fractions import Fraction

from nodalkernel import CurveData, PairNumerics, polarization_window
from nodalkernel.oracle import GridSpec, scan_teixidor
from nodalkernel.pairs import kernel_depth_one

# two genus 2 components, a line bundle of bidegree (4, 4), three sections
C = CurveData(2, 2)
P = PairNumerics(r=1, d1=4, d2=4, k=3)

window = polarization_window(P, C)
print("closed window:", window)
print("open interior:", window.interior())

###############################################################################
# The window comes from four linear inequalities in w1. A grid scan checks
# them one polarization at a time and should agree point for point.

N = 140
hits = sorted(scan_teixidor(kernel_depth_one(P), C, GridSpec(N)))
print(f"grid N={N}: t = {hits[0]} .. {hits[-1]} ({len(hits)} points)")
assert all(Fraction(t, N) in window for t in hits)

###############################################################################
# Unequal genera shift the window off center.

C23 = CurveData(2, 3)
for d1, d2, k in [(5, 6, 4), (6, 7, 5), (8, 9, 7)]:
    w = polarization_window(PairNumerics(1, d1, d2, k), C23)
    print(f"d=({d1},{d2}) k={k}: {w}  sample w1 = {w.sample()}")

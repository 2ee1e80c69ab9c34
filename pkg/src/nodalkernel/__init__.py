"""Exact stability bookkeeping for kernel bundles on a curve with two components and one node."""

from .curve import (
    CurveData,
    DepthOneNumerics,
    InvariantError,
    Polarization,
    chi_component,
    chi_total,
    polarized_slope,
    teixidor_window,
)
from .engine import (
    HypothesisSet,
    Inconsistent,
    UnknownFact,
    Verdict,
    VerdictKind,
    classify,
    generic_star_feasible,
    infer_facts,
    instability_bound,
    polarization_window,
    strong_instability,
)
from .oracle import GridSpec, SweepRange, scan_destabilizers, scan_teixidor, sweep_claim, sweep_classify
from .pairs import (
    KernelNumerics,
    PairNumerics,
    brill_noether_rho,
    claim_check,
    gkd_nonempty_general,
    h0_semistable_bound,
    h0_total,
    h0_twist_down,
    kernel_numerics,
)
from .rationals import EMPTY, UNIT_OPEN, RatInterval, fmt_rat, interval_intersect, parse_rat, rat, rat_cmp

__version__ = "0.1.0"

"""Brute-force cross-checks on rational grids and exhaustive parameter sweeps.

Nothing here calls the closed-form window or bound routines on the path
being checked: grid scans evaluate the defining inequalities point by
point, and the claim sweep counts k one value at a time.
"""

from __future__ import annotations

import csv
import io
import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .curve import CurveData, DepthOneNumerics, InvariantError, Polarization, chi_component, chi_total
from .engine import (
    HypothesisSet,
    Inconsistent,
    Verdict,
    destabilizers,
    classify,
)
from .pairs import MissingHypothesis, PairNumerics, kernel_depth_one, above_canonical, claim_case, h0_semistable_bound
from .rationals import fmt_rat


@dataclass(frozen=True)
class GridSpec:
    """Polarizations w1 = t/N for t = 1 .. N-1."""

    denominator: int

    def __post_init__(self):
        if self.denominator < 2:
            raise ValueError("grid denominator must be >= 2")

    def __iter__(self) -> Iterator[tuple[int, Polarization]]:
        N = self.denominator
        for t in range(1, N):
            yield t, Polarization(Fraction(t, N))


def _span(lo: int, hi: int) -> range:
    return range(lo, hi + 1)


@dataclass(frozen=True)
class SweepRange:
    """Inclusive integer ranges; an empty range (lo > hi) sweeps nothing.

    ``d_per_genus`` caps d_i at that multiple of g_i, and ``k`` is taken
    relative to r: k runs over ``r + k[0] .. r + k[1]``.
    """

    g1: tuple[int, int] = (2, 3)
    g2: tuple[int, int] = (2, 3)
    r: tuple[int, int] = (1, 1)
    d1: tuple[int, int] = (0, 12)
    d2: tuple[int, int] = (0, 12)
    k: tuple[int, int] = (1, 6)
    d_per_genus: Optional[int] = None

    def __post_init__(self):
        if self.g1[0] < 2 or self.g2[0] < 2:
            raise InvariantError("genus ranges must start at >= 2")
        if self.r[0] < 1:
            raise InvariantError("rank range must start at >= 1")
        if self.k[0] < 1:
            raise InvariantError("k offset must be >= 1 (k >= r + 1)")
        if self.d1[0] < 0 or self.d2[0] < 0:
            raise InvariantError("degree ranges must start at >= 0")

    @classmethod
    def claim_default(cls) -> SweepRange:
        return cls(g1=(2, 8), g2=(2, 8), r=(1, 4), d1=(1, 32), d2=(1, 32), d_per_genus=4)

    def _d_range(self, d: tuple[int, int], g: int) -> range:
        hi = d[1] if self.d_per_genus is None else min(d[1], self.d_per_genus * g)
        return _span(d[0], hi)

    def bundles(self) -> Iterator[tuple[int, int, int, int, int]]:
        """(g1, g2, r, d1, d2) in lexicographic order."""
        for g1, g2, r in itertools.product(_span(*self.g1), _span(*self.g2), _span(*self.r)):
            for d1 in self._d_range(self.d1, g1):
                for d2 in self._d_range(self.d2, g2):
                    yield g1, g2, r, d1, d2

    def tuples(self) -> Iterator[tuple[int, int, int, int, int, int]]:
        """(g1, g2, r, d1, d2, k) in lexicographic order."""
        for g1, g2, r, d1, d2 in self.bundles():
            for k in _span(r + self.k[0], r + self.k[1]):
                yield g1, g2, r, d1, d2, k


# --- grid scans --------------------------------------------------------------


def scan_teixidor(E: DepthOneNumerics, C: CurveData, G: GridSpec) -> set[int]:
    """Grid indices t with w1 = t/N satisfying the necessary condition for both components."""
    if not E.is_bundle:
        raise InvariantError("scan needs vector bundle numerics")
    r = E.r1
    chi = chi_total(E, C)
    chis = (chi_component(E.d1, r, C.g1), chi_component(E.d2, r, C.g2))
    out = set()
    for t, w in G:
        if all(w.weight(i) * chi <= chis[i - 1] <= w.weight(i) * chi + r for i in (1, 2)):
            out.add(t)
    return out


@dataclass(frozen=True)
class DestabilizerScan:
    """Per-point list of components whose destabilizer beats the kernel slope."""

    grid: GridSpec
    violations: dict = field(default_factory=dict)

    @property
    def feasible(self) -> set[int]:
        return {t for t in range(1, self.grid.denominator) if not self.violations.get(t)}


def scan_destabilizers(P: PairNumerics, C: CurveData, G: GridSpec) -> DestabilizerScan:
    if P.s1 is None or P.s2 is None:
        raise InvariantError("destabilizer scan needs s1 and s2")
    catalog = destabilizers(P)
    # kernel has equal relative ranks, so its slope is chi / rank at every w
    mu_M = Fraction(chi_total(kernel_depth_one(P), C), P.kernel_rank)
    violations = {}
    for t, w in G:
        hits = tuple(D.component for D in catalog if D.slope(C, w) > mu_M)
        if hits:
            violations[t] = hits
    return DestabilizerScan(G, violations)


# --- sweeps ------------------------------------------------------------------


@dataclass
class ClaimReport:
    bundles: int = 0
    pairs_checked: int = 0
    skipped: int = 0
    case_tally: Counter = field(default_factory=Counter)
    counterexamples: list = field(default_factory=list)

    def summary(self) -> str:
        cases = ", ".join(f"case {c}: {self.case_tally[c]}" for c in sorted(self.case_tally))
        return (
            f"{len(self.counterexamples)} counterexamples; {self.bundles} bundles, "
            f"{self.pairs_checked} (bundle, k) pairs checked, {self.skipped} skipped ({cases})"
        )


def sweep_claim(S: SweepRange) -> ClaimReport:
    """Check ``k < d1 + d2 + r`` for every k from r+1 up to the h^0 bound.

    The ``k`` field of the range is ignored: every admissible k is tried.
    """
    report = ClaimReport()
    for g1, g2, r, d1, d2 in S.bundles():
        C = CurveData(g1, g2)
        h01 = h0_semistable_bound(g1, r, d1)
        h02 = h0_semistable_bound(g2, r, d2)
        clifford_degrees = [d for g, d in ((g1, d1), (g2, d2)) if not above_canonical(g, r, d)]
        if any(d < 1 for d in clifford_degrees):
            report.skipped += 1
            continue
        report.bundles += 1
        P = PairNumerics(r, d1, d2, r + 1)
        report.case_tally[claim_case(P, C)] += 1
        rhs = d1 + d2 + r
        for k in range(r + 1, h01 + h02 - r + 1):
            report.pairs_checked += 1
            if not k < rhs:
                report.counterexamples.append((g1, g2, r, d1, d2, k))
    return report


TEMPLATES: dict[str, Callable] = {}


def template(name: str, fixed_k: bool = False):
    """Register a fact template; ``fixed_k`` templates derive k and ignore the k range."""

    def register(fn):
        fn.fixed_k = fixed_k
        TEMPLATES[name] = fn
        return fn

    return register


@template("none")
def _tpl_none(g1, g2, r, d1, d2, k):
    return PairNumerics(r, d1, d2, k), ()


@template("complete", fixed_k=True)
def _tpl_complete(g1, g2, r, d1, d2, k=None):
    """Complete pair V = H^0(E), restricted to degrees where h^0 is exact."""
    if not (above_canonical(g1, r, d1) and above_canonical(g2, r, d2)):
        return None
    h01, h02 = d1 + r * (1 - g1), d2 + r * (1 - g2)
    h0 = h01 + h02 - r
    facts = ("E1_semistable", "E2_semistable", "E1_nontrivial", "E2_nontrivial",
             "E_globally_generated", "pair_is_complete")
    return PairNumerics(r, d1, d2, h0, s1=h01 - r, s2=h02 - r), facts


@template("star")
def _tpl_star(g1, g2, r, d1, d2, k):
    return PairNumerics(r, d1, d2, k, 0, 0), ("star_condition", "M1_semistable", "M2_semistable")


@template("generic")
def _tpl_generic(g1, g2, r, d1, d2, k):
    if r != 1:
        return None
    return PairNumerics(r, d1, d2, k), ("curve_general", "pair_general_in_Gkd_1", "pair_general_in_Gkd_2")


@template("complete_restrictions")
def _tpl_complete_restrictions(g1, g2, r, d1, d2, k):
    return PairNumerics(r, d1, d2, k), ("E1_semistable", "E2_semistable", "pair_general_in_grassmannian")


CSV_FIELDS = ["g1", "g2", "r", "d1", "d2", "k", "s1", "s2", "verdict", "window_lo", "window_hi", "rule_id"]


def classify_row(g1, g2, r, d1, d2, k, template_name: str) -> Optional[dict]:
    """One CSV row, or None when the template does not apply to the tuple."""
    built = TEMPLATES[template_name](g1, g2, r, d1, d2, k)
    if built is None:
        return None
    P, facts = built
    C = CurveData(g1, g2)
    try:
        v = classify(P, C, HypothesisSet.from_names(facts))
        verdict, rule_id = v.kind.value, v.rule_id
        window = v.window
    except (Inconsistent, MissingHypothesis) as exc:
        verdict, rule_id, window = "Inconsistent", type(exc).__name__, None
    return {
        "g1": g1, "g2": g2, "r": r, "d1": d1, "d2": d2, "k": P.k,
        "s1": "" if P.s1 is None else P.s1,
        "s2": "" if P.s2 is None else P.s2,
        "verdict": verdict,
        "window_lo": "" if window is None or window.empty else fmt_rat(window.lo),
        "window_hi": "" if window is None or window.empty else fmt_rat(window.hi),
        "rule_id": rule_id,
    }


def sweep_rows(S: SweepRange, template_name: str = "none") -> Iterator[dict]:
    if template_name not in TEMPLATES:
        raise KeyError(f"unknown template {template_name!r}; choose from {sorted(TEMPLATES)}")
    fixed_k = TEMPLATES[template_name].fixed_k
    tuples = ((*b, None) for b in S.bundles()) if fixed_k else S.tuples()
    for tup in tuples:
        row = classify_row(*tup, template_name)
        if row is not None:
            yield row


def sweep_classify(S: SweepRange, template_name: str = "none") -> str:
    """CSV text, one row per tuple the template accepts, in lexicographic order."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in sweep_rows(S, template_name):
        writer.writerow(row)
    return buf.getvalue()


def tally_csv(text: str) -> Counter:
    return Counter(row["verdict"] for row in csv.DictReader(io.StringIO(text)))


__all__ = [
    "CSV_FIELDS",
    "ClaimReport",
    "DestabilizerScan",
    "GridSpec",
    "SweepRange",
    "TEMPLATES",
    "Verdict",
    "scan_destabilizers",
    "scan_teixidor",
    "sweep_classify",
    "sweep_claim",
    "tally_csv",
]

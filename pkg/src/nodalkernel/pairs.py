"""Numerical calculus of generated pairs and their kernel bundles.

A generated pair (E, V) is a rank r bundle with component degrees d1, d2
and a k-dimensional space of sections V generating it. ``s_j`` is the
dimension of the sections in V vanishing identically on the other
component, i.e. of V meeting H^0(E_j(-p)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .curve import CurveData, DepthOneNumerics, InvariantError, chi_total


@dataclass(frozen=True)
class PairNumerics:
    r: int
    d1: int
    d2: int
    k: int
    s1: Optional[int] = None
    s2: Optional[int] = None

    def __post_init__(self):
        if self.r < 1:
            raise InvariantError(f"rank r must be >= 1, got {self.r}")
        if self.k < self.r + 1:
            raise InvariantError(f"dim V = k must be >= r + 1, got k={self.k}, r={self.r}")
        if self.d1 < 0 or self.d2 < 0:
            raise InvariantError("restrictions of a generated bundle are globally generated, so d1, d2 >= 0")
        for name, s in (("s1", self.s1), ("s2", self.s2)):
            if s is not None and not 0 <= s <= self.k - self.r:
                # V meets H^0(E_j(-p)) inside the kernel of restriction to C_i,
                # and V_i still has dimension >= r.
                raise InvariantError(f"{name} must lie in [0, k - r], got {s}")

    def degree(self, i: int) -> int:
        return (self.d1, self.d2)[i - 1]

    def s(self, j: int) -> Optional[int]:
        return (self.s1, self.s2)[j - 1]

    def restricted_dim(self, i: int) -> Optional[int]:
        """k_i = dim V_i = k - s_j for j != i, when s_j is known."""
        s_other = self.s(3 - i)
        return None if s_other is None else self.k - s_other

    @property
    def kernel_rank(self) -> int:
        return self.k - self.r

    @property
    def star(self) -> Optional[bool]:
        if self.s1 is None or self.s2 is None:
            return None
        return self.s1 == 0 and self.s2 == 0


@dataclass(frozen=True)
class KernelNumerics:
    rank: int
    chi: int
    chi_restriction_1: int
    chi_restriction_2: int

    def chi_restriction(self, i: int) -> int:
        return (self.chi_restriction_1, self.chi_restriction_2)[i - 1]


def kernel_numerics(P: PairNumerics, C: CurveData) -> KernelNumerics:
    n = P.kernel_rank
    return KernelNumerics(
        rank=n,
        chi=n * (1 - C.arithmetic_genus) - (P.d1 + P.d2),
        chi_restriction_1=n * (1 - C.g1) - P.d1,
        chi_restriction_2=n * (1 - C.g2) - P.d2,
    )


def kernel_depth_one(P: PairNumerics) -> DepthOneNumerics:
    """The kernel bundle as a depth-one sheaf: rank k - r, degrees -d1, -d2."""
    return DepthOneNumerics.bundle(P.kernel_rank, -P.d1, -P.d2)


def kernel_chi_direct(P: PairNumerics, C: CurveData) -> int:
    """chi(M) from the evaluation sequence: k chi(O_C) - chi(E)."""
    chi_E = chi_total(DepthOneNumerics.bundle(P.r, P.d1, P.d2), C)
    return P.k * (1 - C.arithmetic_genus) - chi_E


def above_canonical(g: int, r: int, d: int) -> bool:
    """Slope d/r strictly above 2g - 2, where h^1 of a semistable bundle vanishes."""
    return d > r * (2 * g - 2)


def h0_semistable_bound(g: int, r: int, d: int) -> int:
    """Upper bound for h^0 of a semistable rank r, degree d bundle in genus g.

    Exact (Riemann-Roch) above slope 2g - 2, Clifford-type bound
    ``floor(d/2) + r`` on ``[0, 2g - 2]``, and 0 for negative degree.
    """
    if g < 2 or r < 1:
        raise InvariantError("need g >= 2 and r >= 1")
    if d < 0:
        return 0
    if above_canonical(g, r, d):
        return d + r * (1 - g)
    return d // 2 + r


def h0_total(h0_1: int, h0_2: int, r: int) -> int:
    """h^0(E) from globally generated restrictions: sections glue along an r-dim fibre."""
    total = h0_1 + h0_2 - r
    if total < 0:
        raise InvariantError(f"negative h^0: {h0_1} + {h0_2} - {r}")
    return total


def h0_twist_down(h0_i: int, r: int) -> int:
    """h^0(E_i(-p)) for globally generated E_i: evaluation at p is onto an r-dim fibre."""
    out = h0_i - r
    if out < 0:
        raise InvariantError(f"globally generated rank {r} bundle needs h^0 >= r, got {h0_i}")
    return out


@dataclass(frozen=True)
class ClaimResult:
    """Outcome of bounding k by the section count of semistable restrictions."""

    holds: bool
    case: int
    h0_bounds: tuple[int, int]
    h0_bound: int
    rhs: int
    k_admissible: bool

    @property
    def inequality(self) -> str:
        return f"{self.h0_bound} < {self.rhs}"


class MissingHypothesis(ValueError):
    """The numerics fall outside what the bound argument can use."""


def claim_case(P: PairNumerics, C: CurveData) -> int:
    """1: both slopes above 2g_i - 2; 3: neither; 2: mixed."""
    above = [above_canonical(C.genus(i), P.r, P.degree(i)) for i in (1, 2)]
    if all(above):
        return 1
    if not any(above):
        return 3
    return 2


def claim_check(P: PairNumerics, C: CurveData) -> ClaimResult:
    """Certify ``k < d1 + d2 + r`` for every k up to the h^0 bound.

    Assumes both restrictions semistable. Components in the Clifford range
    need positive degree; a zero degree there raises MissingHypothesis.
    """
    case = claim_case(P, C)
    for i in (1, 2):
        if not above_canonical(C.genus(i), P.r, P.degree(i)) and P.degree(i) < 1:
            raise MissingHypothesis(
                f"case {case}: d{i} >= 1 is required on a component in the Clifford range, got d{i}={P.degree(i)}"
            )
    bounds = (
        h0_semistable_bound(C.g1, P.r, P.d1),
        h0_semistable_bound(C.g2, P.r, P.d2),
    )
    bound = h0_total(bounds[0], bounds[1], P.r)
    rhs = P.d1 + P.d2 + P.r
    return ClaimResult(
        holds=bound < rhs,
        case=case,
        h0_bounds=bounds,
        h0_bound=bound,
        rhs=rhs,
        k_admissible=P.k <= bound,
    )


def brill_noether_rho(g: int, d: int, k: int) -> int:
    """Brill-Noether number of linear series of degree d and dimension k - 1."""
    return g - k * (g - d + k - 1)


def gkd_nonempty_general(g: int, d: int, k: int) -> bool:
    """Nonemptiness threshold ``d >= g + k - 1 - g/k`` on a general curve."""
    if k < 1:
        raise InvariantError("k must be >= 1")
    return Fraction(d) >= g + k - 1 - Fraction(g, k)

"""Two-component nodal curves, depth-one sheaf numerics and polarized slopes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rationals import RatInterval, RatLike, UNIT_OPEN, rat, solve_linear_1d


class InvariantError(ValueError):
    """Input numerics violate a standing invariant of the model."""


@dataclass(frozen=True)
class CurveData:
    """Genera of the two smooth components meeting at the node."""

    g1: int
    g2: int

    def __post_init__(self):
        for name, g in (("g1", self.g1), ("g2", self.g2)):
            if not isinstance(g, int) or g < 2:
                raise InvariantError(f"component genus {name} must be an integer >= 2, got {g!r}")

    @property
    def arithmetic_genus(self) -> int:
        return self.g1 + self.g2

    def genus(self, i: int) -> int:
        return (self.g1, self.g2)[_index(i)]


@dataclass(frozen=True)
class DepthOneNumerics:
    """Multirank, multidegree and node gluing rank of a depth-one sheaf.

    A vector bundle of rank r has ``r1 == r2 == glue_rank == r``; a sheaf
    pushed forward from one component has the other rank 0 and no gluing.
    """

    r1: int
    r2: int
    d1: int
    d2: int
    glue_rank: int

    def __post_init__(self):
        if self.r1 < 0 or self.r2 < 0:
            raise InvariantError("relative ranks must be nonnegative")
        if self.r1 + self.r2 < 1:
            raise InvariantError("r1 = r2 = 0: torsion sheaves have no polarized slope")
        if not 0 <= self.glue_rank <= min(self.r1, self.r2):
            raise InvariantError(f"glue_rank must lie in [0, min(r1, r2)], got {self.glue_rank}")

    @classmethod
    def bundle(cls, r: int, d1: int, d2: int) -> DepthOneNumerics:
        return cls(r, r, d1, d2, r)

    @property
    def is_bundle(self) -> bool:
        return self.r1 == self.r2 == self.glue_rank

    def rank(self, i: int) -> int:
        return (self.r1, self.r2)[_index(i)]

    def degree(self, i: int) -> int:
        return (self.d1, self.d2)[_index(i)]


@dataclass(frozen=True)
class Polarization:
    w1: Fraction

    def __init__(self, w1: RatLike):
        w1 = rat(w1)
        if not 0 < w1 < 1:
            raise InvariantError(f"polarization weight must lie in (0, 1), got {w1}")
        object.__setattr__(self, "w1", w1)

    @property
    def w2(self) -> Fraction:
        return 1 - self.w1

    def weight(self, i: int) -> Fraction:
        return (self.w1, self.w2)[_index(i)]


def _index(i: int) -> int:
    if i not in (1, 2):
        raise ValueError(f"component index must be 1 or 2, got {i!r}")
    return i - 1


def chi_component(d: int, r: int, g: int) -> int:
    """Euler characteristic of a rank r, degree d bundle on a genus g curve."""
    return d + r * (1 - g)


def chi_total(E: DepthOneNumerics, C: CurveData) -> int:
    chi1 = chi_component(E.d1, E.r1, C.g1)
    chi2 = chi_component(E.d2, E.r2, C.g2)
    return chi1 + chi2 - E.glue_rank


def polarized_slope(E: DepthOneNumerics, C: CurveData, w: Polarization) -> Fraction:
    denom = w.w1 * E.r1 + w.w2 * E.r2
    if denom == 0:
        raise InvariantError("polarized slope undefined for zero weighted rank")
    return Fraction(chi_total(E, C)) / denom


def teixidor_constraints(E: DepthOneNumerics, C: CurveData) -> list[tuple[Fraction, Fraction]]:
    """The four inequalities on w1 as ``(coef, const)`` with ``coef*w1 + const >= 0``.

    For component i the pair is ``chi_i - w_i chi >= 0`` and
    ``w_i chi + r - chi_i >= 0``, with ``w2 = 1 - w1`` substituted.
    """
    if not E.is_bundle:
        raise InvariantError("stability window is defined for vector bundle numerics only")
    r = E.r1
    chi = chi_total(E, C)
    chi1 = chi_component(E.d1, r, C.g1)
    chi2 = chi_component(E.d2, r, C.g2)
    return [
        (Fraction(-chi), Fraction(chi1)),
        (Fraction(chi), Fraction(r - chi1)),
        # w2 = 1 - w1
        (Fraction(chi), Fraction(chi2 - chi)),
        (Fraction(-chi), Fraction(chi + r - chi2)),
    ]


def teixidor_holds(E: DepthOneNumerics, C: CurveData, w: Polarization) -> bool:
    """Direct check of the necessary condition at one polarization."""
    r = E.r1
    chi = chi_total(E, C)
    for i in (1, 2):
        chi_i = chi_component(E.degree(i), r, C.genus(i))
        wi = w.weight(i)
        if not wi * chi <= chi_i <= wi * chi + r:
            return False
    return True


def teixidor_window(E: DepthOneNumerics, C: CurveData) -> RatInterval:
    """Polarizations w1 in (0, 1) meeting the necessary semistability condition.

    The condition is sufficient once both restrictions are semistable; that
    is a hypothesis, not something the numerics can decide.
    """
    return solve_linear_1d(teixidor_constraints(E, C), UNIT_OPEN)

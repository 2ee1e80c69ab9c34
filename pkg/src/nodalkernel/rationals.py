"""Exact rationals and endpoint-flagged intervals.

Rationals are :class:`fractions.Fraction` values. Python integers are
arbitrary precision, so cross-multiplication cannot overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rat = Fraction
RatLike = Union[Fraction, int, str]


def rat(value: RatLike, den: int = 1) -> Fraction:
    """Build a normalized rational from an int, a ``"p/q"`` string or a Fraction."""
    if isinstance(value, str):
        if den != 1:
            raise ValueError("denominator must not be given with a string")
        return parse_rat(value)
    return Fraction(value, den)


def parse_rat(text: str) -> Fraction:
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if not sep:
            return Fraction(int(num))
        return Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational of the form p/q: {text!r}") from exc


def fmt_rat(x: Fraction | int) -> str:
    """Serialize as ``"p/q"``, dropping ``q`` when it is 1."""
    return str(Fraction(x))


def rat_cmp(a: Fraction | int, b: Fraction | int) -> int:
    """Three-way comparison: -1, 0 or 1."""
    a, b = Fraction(a), Fraction(b)
    lhs = a.numerator * b.denominator
    rhs = b.numerator * a.denominator
    return (lhs > rhs) - (lhs < rhs)


def mediant(a: Fraction, b: Fraction) -> Fraction:
    """(p+p')/(q+q') of two reduced fractions; lies strictly between when a < b."""
    return Fraction(a.numerator + b.numerator, a.denominator + b.denominator)


@dataclass(frozen=True)
class RatInterval:
    """A bounded interval of rationals with explicit closure flags.

    Every constructor path goes through :meth:`make`, which canonicalizes
    empty intervals so that equality is set equality.
    """

    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool
    empty: bool = False

    def __post_init__(self):
        if self.empty:
            return
        if self.lo > self.hi:
            raise ValueError(f"lo > hi in non-empty interval: {self.lo} > {self.hi}")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise ValueError("degenerate interval must be closed at both ends")

    @classmethod
    def make(cls, lo: RatLike, hi: RatLike, lo_closed: bool = True, hi_closed: bool = True) -> RatInterval:
        lo, hi = rat(lo), rat(hi)
        if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
            return EMPTY
        return cls(lo, hi, bool(lo_closed), bool(hi_closed))

    @classmethod
    def closed(cls, lo: RatLike, hi: RatLike) -> RatInterval:
        return cls.make(lo, hi, True, True)

    @classmethod
    def open(cls, lo: RatLike, hi: RatLike) -> RatInterval:
        return cls.make(lo, hi, False, False)

    @classmethod
    def parse(cls, text: str) -> RatInterval:
        """Inverse of ``str()``: ``"[3/7, 4/7]"``, ``"(0, 1)"``, ``"empty"``."""
        text = text.strip()
        if text == "empty":
            return EMPTY
        if len(text) < 2 or text[0] not in "[(" or text[-1] not in "])":
            raise ValueError(f"not an interval: {text!r}")
        lo, _, hi = text[1:-1].partition(",")
        return cls.make(parse_rat(lo), parse_rat(hi), text[0] == "[", text[-1] == "]")

    def __str__(self) -> str:
        if self.empty:
            return "empty"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{fmt_rat(self.lo)}, {fmt_rat(self.hi)}{right}"

    def __bool__(self) -> bool:
        return not self.empty

    def __contains__(self, x: RatLike) -> bool:
        if self.empty:
            return False
        x = rat(x)
        above = x > self.lo or (self.lo_closed and x == self.lo)
        below = x < self.hi or (self.hi_closed and x == self.hi)
        return above and below

    def intersect(self, other: RatInterval) -> RatInterval:
        if self.empty or other.empty:
            return EMPTY
        if self.lo > other.lo:
            lo, lo_closed = self.lo, self.lo_closed
        elif self.lo < other.lo:
            lo, lo_closed = other.lo, other.lo_closed
        else:
            lo, lo_closed = self.lo, self.lo_closed and other.lo_closed
        if self.hi < other.hi:
            hi, hi_closed = self.hi, self.hi_closed
        elif self.hi > other.hi:
            hi, hi_closed = other.hi, other.hi_closed
        else:
            hi, hi_closed = self.hi, self.hi_closed and other.hi_closed
        return RatInterval.make(lo, hi, lo_closed, hi_closed)

    __and__ = intersect

    def interior(self) -> RatInterval:
        if self.empty:
            return EMPTY
        return RatInterval.open(self.lo, self.hi)

    def is_subset(self, other: RatInterval) -> bool:
        return self.intersect(other) == self

    def sample(self) -> Fraction:
        """A rational strictly inside the interval (its endpoint for a point)."""
        if self.empty:
            raise ValueError("empty interval has no sample point")
        if self.lo == self.hi:
            return self.lo
        return mediant(self.lo, self.hi)


EMPTY = RatInterval(Fraction(0), Fraction(0), False, False, empty=True)
UNIT_OPEN = RatInterval(Fraction(0), Fraction(1), False, False)


def solve_linear_1d(constraints: Iterable[tuple[RatLike, RatLike]], domain: RatInterval = UNIT_OPEN) -> RatInterval:
    """Feasible set of ``coef * x + const >= 0`` for all pairs, within ``domain``.

    Constraints are non-strict; the domain keeps its own closure flags.
    """
    if domain.empty:
        return EMPTY
    lo, lo_closed = domain.lo, domain.lo_closed
    hi, hi_closed = domain.hi, domain.hi_closed
    for coef, const in constraints:
        coef, const = rat(coef), rat(const)
        if coef == 0:
            if const < 0:
                return EMPTY
            continue
        root = -const / coef
        if coef > 0:
            if root > lo:
                lo, lo_closed = root, True
        elif root < hi:
            hi, hi_closed = root, True
    return RatInterval.make(lo, hi, lo_closed, hi_closed)


def interval_intersect(a: RatInterval, b: RatInterval) -> RatInterval:
    return a.intersect(b)

"""Hypothesis closure, destabilizers, polarization windows and the classifier.

The classifier never decides semistability from numerics alone. It
combines asserted facts about the pair (semistable restrictions,
genericity, ...) with exact arithmetic on the invariants and reports a
verdict together with the chain of rules and instantiated inequalities
that produced it.
"""

from __future__ import annotations

import difflib
import operator
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .curve import CurveData, DepthOneNumerics, InvariantError, Polarization, polarized_slope
from .pairs import (
    PairNumerics,
    above_canonical,
    claim_check,
    gkd_nonempty_general,
    brill_noether_rho,
    h0_semistable_bound,
    h0_total,
    kernel_numerics,
)
from .rationals import RatInterval, fmt_rat, parse_rat

ASSERTABLE_FACTS = (
    "E1_semistable",
    "E2_semistable",
    "E1_stable",
    "E2_stable",
    "E_globally_generated",
    "E1_nontrivial",
    "E2_nontrivial",
    "star_condition",
    "M1_semistable",
    "M2_semistable",
    "M1_stable",
    "M2_stable",
    "curve_general",
    "pair_general_in_grassmannian",
    "pair_general_in_Gkd_1",
    "pair_general_in_Gkd_2",
    "component_1_petri_general",
    "component_2_petri_general",
    "pair_is_complete",
)

# s_j >= 1 / s_j = 0 with s_j = dim(V meet H^0(E_j(-p))); h0_twist_i means h^0(E_i(-p)) >= 1.
DERIVED_FACTS = (
    "s1_positive",
    "s2_positive",
    "s1_zero",
    "s2_zero",
    "star_refuted",
    "h0_twist_1_positive",
    "h0_twist_2_positive",
    "M1_is_restriction",
    "M2_is_restriction",
    "M1_restriction_unstable",
    "M2_restriction_unstable",
)

ALL_FACTS = ASSERTABLE_FACTS + DERIVED_FACTS


class UnknownFact(ValueError):
    pass


class Inconsistent(ValueError):
    """Asserted facts contradict each other or the numerics."""

    def __init__(self, message: str, sources: Iterable[str] = ()):
        self.sources = tuple(sources)
        detail = "; ".join(self.sources)
        super().__init__(f"{message} [{detail}]" if detail else message)


@dataclass(frozen=True)
class Derivation:
    rule_id: str
    citation: str
    detail: str = ""

    def __str__(self) -> str:
        text = f"{self.rule_id} ({self.citation})" if self.citation else self.rule_id
        return f"{text}: {self.detail}" if self.detail else text


ASSERTED = Derivation("asserted", "")


@dataclass(frozen=True)
class HypothesisSet:
    facts: frozenset = frozenset()
    reasons: Mapping[str, Derivation] = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def from_names(cls, names: Iterable[str]) -> HypothesisSet:
        names = list(names)
        for name in names:
            if name in ASSERTABLE_FACTS:
                continue
            if name in DERIVED_FACTS:
                raise UnknownFact(f"{name!r} is derived by inference and cannot be asserted")
            close = difflib.get_close_matches(name, ASSERTABLE_FACTS, n=3)
            hint = f" Did you mean: {', '.join(close)}?" if close else ""
            raise UnknownFact(
                f"unknown fact {name!r}.{hint} Valid facts: {', '.join(ASSERTABLE_FACTS)}"
            )
        return cls(frozenset(names), {n: ASSERTED for n in names})

    def __contains__(self, name: str) -> bool:
        return name in self.facts

    def __le__(self, other: HypothesisSet) -> bool:
        return self.facts <= other.facts

    def has(self, *names: str) -> bool:
        return all(n in self.facts for n in names)

    def lacking(self, *names: str) -> list[str]:
        return [n for n in names if n not in self.facts]

    def source(self, name: str) -> str:
        return f"{name} <- {self.reasons.get(name, ASSERTED)}"

    def with_facts(self, new: Mapping[str, Derivation]) -> HypothesisSet:
        added = {n: d for n, d in new.items() if n not in self.facts}
        if not added:
            return self
        return HypothesisSet(self.facts | frozenset(added), {**self.reasons, **added})

    def sorted(self) -> list[str]:
        return sorted(self.facts, key=ALL_FACTS.index)


def _other(i: int) -> int:
    return 3 - i


def _forward_rules(H: HypothesisSet, P: PairNumerics, C: CurveData) -> dict[str, Derivation]:
    new: dict[str, Derivation] = {}

    def add(fact, rule_id, citation, detail=""):
        if fact not in H.facts and fact not in new:
            new[fact] = Derivation(rule_id, citation, detail)

    add("E_globally_generated", "generated_pair", "Lemma 2.1(1)", "V generates E")
    for name in ("E", "M"):
        for i in (1, 2):
            if f"{name}{i}_stable" in H:
                add(f"{name}{i}_semistable", "stable_implies_semistable", "Definition 1.3")
    for j in (1, 2):
        s = P.s(j)
        if s is not None:
            add(f"s{j}_positive" if s >= 1 else f"s{j}_zero", "pair_numerics", "", f"s{j} = {s}")
    if "star_condition" in H:
        add("s1_zero", "star_condition", "condition (*)")
        add("s2_zero", "star_condition", "condition (*)")
        for i in (1, 2):
            add(f"M{i}_is_restriction", "star_restriction", "Lemma 3.1(1)", f"M|C{i} = M(E{i},V{i}), k{i} = k = {P.k}")
    if H.has("s1_zero", "s2_zero"):
        add("star_condition", "star_condition", "condition (*)", "s1 = s2 = 0")
    for i in (1, 2):
        j = _other(i)
        g, d = C.genus(i), P.degree(i)
        if H.has(f"E{i}_semistable", f"E{i}_nontrivial", "E_globally_generated"):
            add(f"h0_twist_{i}_positive", "twist_sections", "Remark 2.3(1)", f"h0(E{i}(-p)) >= 1")
        if f"s{i}_positive" in H:
            add(f"h0_twist_{i}_positive", "twist_sections", "Lemma 2.2(1)", f"V meets H0(E{i}(-p))")
        if f"E{i}_semistable" in H:
            bound = h0_semistable_bound(g, P.r, d)
            if P.k > bound:
                add(f"s{j}_positive", "dimension_count", "Remark 2.3(2)", f"k = {P.k} > {bound} >= h0(E{i})")
        if H.has("pair_is_complete", f"h0_twist_{j}_positive"):
            add(f"s{j}_positive", "complete_pair", "Corollary 2.6", f"V = H0(E) contains H0(E{j}(-p)) != 0")
        if f"pair_general_in_Gkd_{i}" in H:
            add(f"s{j}_zero", "gkd_membership", "Theorem 3.4", f"dim V{i} = k = {P.k}")
    if "s1_positive" in H or "s2_positive" in H:
        add("star_refuted", "star_refuted", "condition (*)", "some s_j >= 1")
    return new


def _check_consistency(H: HypothesisSet, P: PairNumerics, C: CurveData) -> None:
    for j in (1, 2):
        if H.has(f"s{j}_positive", f"s{j}_zero"):
            raise Inconsistent(f"s{j} forced both >= 1 and = 0", [H.source(f"s{j}_positive"), H.source(f"s{j}_zero")])
    if H.has("star_condition", "star_refuted"):
        raise Inconsistent("condition (*) asserted but refuted", [H.source("star_condition"), H.source("star_refuted")])
    for i in (1, 2):
        d = P.degree(i)
        if H.has(f"E{i}_semistable", f"h0_twist_{i}_positive") and d < P.r:
            raise Inconsistent(
                f"semistable E{i} with a section vanishing at p needs d{i} >= r, got d{i}={d} < r={P.r}",
                [H.source(f"E{i}_semistable"), H.source(f"h0_twist_{i}_positive")],
            )
    if H.has("E1_semistable", "E2_semistable"):
        bound = h0_total(h0_semistable_bound(C.g1, P.r, P.d1), h0_semistable_bound(C.g2, P.r, P.d2), P.r)
        if P.k > bound:
            raise Inconsistent(
                f"k = {P.k} exceeds h0(E) <= {bound} for semistable restrictions",
                [H.source("E1_semistable"), H.source("E2_semistable")],
            )
        exact = all(above_canonical(C.genus(i), P.r, P.degree(i)) for i in (1, 2))
        if "pair_is_complete" in H and exact and P.k != bound:
            raise Inconsistent(
                f"complete pair needs k = h0(E) = {bound}, got k = {P.k}",
                [H.source("pair_is_complete")],
            )


def infer_facts(H: HypothesisSet, P: PairNumerics, C: CurveData) -> HypothesisSet:
    """Forward-chain to a fixed point, then check for contradictions."""
    while True:
        new = _forward_rules(H, P, C)
        if not new:
            break
        H = H.with_facts(new)
    _check_consistency(H, P, C)
    return H


# --- certificates -----------------------------------------------------------

_OPS = {
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
    "=": operator.eq,
    "!=": operator.ne,
}
_TOKEN = re.compile(r"\s*(<=|>=|!=|<|>|=)\s*")


def check_inequality(text: str) -> bool:
    """Evaluate a chain such as ``"0 < 3/7 < 4/7 < 1"`` exactly."""
    parts = _TOKEN.split(text.strip())
    if len(parts) < 3 or len(parts) % 2 == 0:
        raise ValueError(f"not a relation chain: {text!r}")
    values = [parse_rat(p) for p in parts[0::2]]
    ops = parts[1::2]
    return all(_OPS[op](a, b) for op, a, b in zip(ops, values, values[1:]))


def chain(*items) -> str:
    """Join alternating values and operators, formatting the values as rationals."""
    return " ".join(item if isinstance(item, str) else fmt_rat(item) for item in items)


@dataclass(frozen=True)
class CertificateEntry:
    rule_id: str
    citation: str
    inequality: str = ""
    note: str = ""

    def holds(self) -> bool:
        return not self.inequality or check_inequality(self.inequality)


class VerdictKind(str, Enum):
    STRONGLY_UNSTABLE = "StronglyUnstable"
    W_SEMISTABLE = "WSemistable"
    W_STABLE = "WStable"
    RESTRICTION_UNSTABLE = "RestrictionUnstable"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    rule_id: str = ""
    window: Optional[RatInterval] = None
    bounds: Optional[tuple] = None
    certificate: tuple = ()
    missing: tuple = ()
    facts: tuple = ()

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "rule_id": self.rule_id,
            "window": None if self.window is None else str(self.window),
            "bounds": None if self.bounds is None else [None if b is None else fmt_rat(b) for b in self.bounds],
            "certificate": [
                {"rule_id": e.rule_id, "citation": e.citation, "inequality": e.inequality, "note": e.note}
                for e in self.certificate
            ],
            "missing": list(self.missing),
            "facts": list(self.facts),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> Verdict:
        bounds = data.get("bounds")
        return cls(
            kind=VerdictKind(data["kind"]),
            rule_id=data.get("rule_id", ""),
            window=None if data.get("window") is None else RatInterval.parse(data["window"]),
            bounds=None if bounds is None else tuple(None if b is None else parse_rat(b) for b in bounds),
            certificate=tuple(CertificateEntry(**e) for e in data.get("certificate", ())),
            missing=tuple(data.get("missing", ())),
            facts=tuple(data.get("facts", ())),
        )


# --- destabilizers and windows ------------------------------------------------


def instability_denominator(P: PairNumerics, C: CurveData) -> int:
    return P.d1 + P.d2 + P.kernel_rank * (C.arithmetic_genus - 1)


def instability_bound(P: PairNumerics, C: CurveData, i: int) -> Fraction:
    """Largest w_i for which the destabilizer on component i does not beat M."""
    denom = instability_denominator(P, C)
    if denom <= 0:
        raise InvariantError(f"instability bound needs a positive denominator, got {denom}")
    return Fraction(C.genus(i) * P.kernel_rank, denom)


@dataclass(frozen=True)
class DestabilizerNumerics:
    """``S_j (x) O_{C_i}(-p)``: s copies of O(-p) on component i, s = s_j."""

    component: int
    s: int

    def numerics(self) -> DepthOneNumerics:
        if self.component == 1:
            return DepthOneNumerics(self.s, 0, -self.s, 0, 0)
        return DepthOneNumerics(0, self.s, 0, -self.s, 0)

    def slope(self, C: CurveData, w: Polarization) -> Fraction:
        return polarized_slope(self.numerics(), C, w)


def destabilizers(P: PairNumerics) -> list[DestabilizerNumerics]:
    """Catalog built from the known s_j; S_j sits inside M restricted to C_i."""
    out = []
    for i in (1, 2):
        s = P.s(_other(i))
        if s:
            out.append(DestabilizerNumerics(component=i, s=s))
    return out


def kernel_slope(P: PairNumerics, C: CurveData) -> Fraction:
    """mu_w(M) for any w: the kernel has equal relative ranks."""
    return Fraction(kernel_numerics(P, C).chi, P.kernel_rank)


def window_endpoints(P: PairNumerics, C: CurveData) -> tuple[Fraction, Fraction]:
    n = P.kernel_rank
    denom = n * (C.arithmetic_genus - 1) + P.d1 + P.d2
    a1 = Fraction(n * (C.g1 - 1) + P.d1, denom)
    b1 = Fraction(n * C.g1 + P.d1, denom)
    return a1, b1


def polarization_window(P: PairNumerics, C: CurveData) -> RatInterval:
    """Closed window ``[a1, b1]`` of w1 where the kernel meets the stability condition.

    Always strictly inside (0, 1); the open interior is the safe choice when
    endpoint behavior matters.
    """
    a1, b1 = window_endpoints(P, C)
    if not 0 < a1 < b1 < 1:
        raise AssertionError(f"window endpoints out of order: a1={a1}, b1={b1}")
    return RatInterval.closed(a1, b1)


def generic_star_feasible(P: PairNumerics, h0_E: int, h0_twists: tuple[int, int]) -> bool:
    """Whether a general k-dimensional V avoids both H^0(E_j(-p)).

    ``h0_twists[j-1]`` is h^0(E_j(-p)). The Schubert condition is
    ``k + h^0(E_j(-p)) <= h^0(E)`` for j = 1, 2.
    """
    return all(P.k + t <= h0_E for t in h0_twists)


def h0_data_from_restrictions(h0_1: int, h0_2: int, r: int) -> tuple[int, tuple[int, int]]:
    """(h^0(E), (h^0(E_1(-p)), h^0(E_2(-p)))) for globally generated restrictions."""
    return h0_total(h0_1, h0_2, r), (h0_1 - r, h0_2 - r)


# --- rules -------------------------------------------------------------------


@dataclass
class _Miss:
    rule_id: str
    citation: str
    missing: list


PETRI_CITATION = "Corollary of Theorem 3.4"


def _complete_citation(P: PairNumerics) -> str:
    return "Corollary 2.7" if P.r == 1 else "Corollary 2.6"


def strong_instability(P: PairNumerics, C: CurveData, H: HypothesisSet) -> Verdict:
    H = infer_facts(H, P, C)
    result = _strong_instability(P, C, H)
    if isinstance(result, _Miss):
        return Verdict(
            VerdictKind.INCONCLUSIVE, rule_id=result.rule_id, missing=tuple(result.missing), facts=tuple(H.sorted())
        )
    return result


def _strong_instability(P: PairNumerics, C: CurveData, H: HypothesisSet):
    needed = ("E1_semistable", "E2_semistable", "s1_positive", "s2_positive")
    missing = H.lacking(*needed)
    if missing:
        return _Miss("strong_instability", "Theorem 2.5", missing)
    n = P.kernel_rank
    km = kernel_numerics(P, C)
    denom = instability_denominator(P, C)
    b = (instability_bound(P, C, 1), instability_bound(P, C, 2))
    claim = claim_check(P, C)
    cert = []
    if "pair_is_complete" in H:
        cert.append(CertificateEntry(
            "complete_pair", _complete_citation(P), note="V = H0(E) with semistable nontrivial restrictions"))
    for j in (1, 2):
        cert.append(CertificateEntry("sections_vanishing", "Theorem 2.5", note=H.source(f"s{j}_positive")))
    mu = kernel_slope(P, C)
    cert.append(CertificateEntry(
        "kernel_slope", "Theorem 2.5", chain(mu, "=", Fraction(km.chi, n)),
        note=f"mu_w(M) = chi(M)/(k-r) = {km.chi}/{n} for every w"))
    for i in (1, 2):
        g = C.genus(i)
        cert.append(CertificateEntry(
            f"instability_bound_{i}", "Theorem 2.5",
            chain(Fraction(-g) / b[i - 1], "=", mu),
            note=f"mu_w(S{_other(i)} x O_C{i}(-p)) = -{g}/w{i} <= mu_w(M) iff "
                 f"w{i} <= {g}*{n}/{denom} = {fmt_rat(b[i - 1])}"))
    total = b[0] + b[1]
    cert.append(CertificateEntry(
        "bounds_sum", "Theorem 2.5", chain(total, "<", 1),
        note=f"w1 + w2 <= {fmt_rat(b[0])} + {fmt_rat(b[1])} = {fmt_rat(total)}"))
    cert.append(CertificateEntry(
        "claim", "Theorem 2.5", chain(P.k, "<=", claim.h0_bound, "<", claim.rhs),
        note=f"case {claim.case}: k <= h0(E) <= {claim.h0_bounds[0]} + {claim.h0_bounds[1]} - r < d1 + d2 + r"))
    for i in (1, 2):
        cert.append(CertificateEntry(
            f"restriction_unstable_{i}", "Lemma 2.2(3)", chain(0, ">", Fraction(-P.degree(i), n)),
            note=f"mu(S{_other(i)} x O_C{i}) = 0 > mu(M|C{i}) = -d{i}/(k-r)"))
    facts = H.with_facts({
        f"M{i}_restriction_unstable": Derivation("restriction_unstable", "Lemma 2.2(3)") for i in (1, 2)
    })
    return Verdict(
        VerdictKind.STRONGLY_UNSTABLE,
        rule_id="strong_instability",
        bounds=b,
        certificate=tuple(cert),
        facts=tuple(facts.sorted()),
    )


def _window_certificate(P: PairNumerics, C: CurveData, window: RatInterval) -> list[CertificateEntry]:
    n = P.kernel_rank
    km = kernel_numerics(P, C)
    w1 = window.sample()
    cert = [
        CertificateEntry("kernel_chi", "Lemma 3.1(2)",
                         chain(Fraction(km.chi), "=", Fraction(km.chi_restriction_1 + km.chi_restriction_2 - n)),
                         note=f"chi(M) = chi(M1) + chi(M2) - rk = {km.chi_restriction_1} + {km.chi_restriction_2} - {n}"),
        CertificateEntry("window_endpoints", "Lemma 3.1(2)", chain(0, "<", window.lo, "<", window.hi, "<", 1),
                         note="0 < a1 < b1 < 1"),
    ]
    for i, wi in ((1, w1), (2, 1 - w1)):
        chi_i = km.chi_restriction(i)
        cert.append(CertificateEntry(
            f"stability_condition_{i}", "Theorem 1.5",
            chain(wi * km.chi, "<=", Fraction(chi_i), "<=", wi * km.chi + n),
            note=f"w{i} chi(M) <= chi(M|C{i}) <= w{i} chi(M) + rk at w1 = {fmt_rat(w1)}"))
    return cert


def _star_conclusion(P, C, H, cert, rule_id):
    missing = H.lacking("star_condition", "M1_semistable", "M2_semistable")
    if missing:
        return _Miss("wsemistable_star", "Theorem 3.2", missing)
    window = polarization_window(P, C)
    cert = list(cert)
    cert.append(CertificateEntry(
        "star_restriction", "Lemma 3.1(1)", note="condition (*): M|C_i = M(E_i,V_i) for i = 1, 2"))
    cert.extend(_window_certificate(P, C, window))
    stable = [i for i in (1, 2) if f"M{i}_stable" in H]
    cert.append(CertificateEntry(
        "wsemistable_star", "Theorem 3.2",
        note="restrictions M1, M2 semistable and the condition holds on the window"))
    if stable:
        cert.append(CertificateEntry("wstable_upgrade", "Theorem 3.2", note=f"M{stable[0]} stable"))
        kind, missing = VerdictKind.W_STABLE, ()
    else:
        kind, missing = VerdictKind.W_SEMISTABLE, ("M1_stable or M2_stable",)
    return Verdict(kind, rule_id=rule_id, window=window, certificate=tuple(cert), missing=missing,
                   facts=tuple(H.sorted()))


def _line_bundle_general(P, C, H):
    """Derive semistable (or stable) component kernels for general line bundle pairs."""
    missing = []
    if P.r != 1:
        missing.append(f"numeric: r = 1 (got r = {P.r})")
    missing += H.lacking("curve_general", "pair_general_in_Gkd_1", "pair_general_in_Gkd_2")
    for i in (1, 2):
        g, d = C.genus(i), P.degree(i)
        if not gkd_nonempty_general(g, d, P.k):
            missing.append(f"numeric: rho{i} = {brill_noether_rho(g, d, P.k)} >= 0")
    if missing:
        return _Miss("line_bundle_general", "Theorem 3.4", missing), H, []
    cert = []
    new = {}
    for i in (1, 2):
        g, d = C.genus(i), P.degree(i)
        cert.append(CertificateEntry(
            f"brill_noether_{i}", "Theorem 3.4",
            chain(Fraction(d), ">=", g + P.k - 1 - Fraction(g, P.k)),
            note=f"rho{i} = {brill_noether_rho(g, d, P.k)} >= 0: G^(k-1)_d{i}(C{i}) nonempty"))
        new[f"M{i}_semistable"] = Derivation("line_bundle_general", "Theorem 3.4", f"(L{i},V{i}) general in G^(k-1)_d{i}")
    for i in (1, 2):
        g = C.genus(i)
        if f"component_{i}_petri_general" in H and P.k >= 6 and g >= 2 * P.k - 6:
            cert.append(CertificateEntry(
                f"petri_{i}", PETRI_CITATION, chain(Fraction(g), ">=", 2 * P.k - 6),
                note=f"C{i} Petri-general, k = {P.k} >= 6, g{i} >= 2k - 6"))
            new[f"M{i}_stable"] = Derivation("petri_general", PETRI_CITATION, f"C{i} Petri, k >= 6, g{i} >= 2k-6")
    return None, H.with_facts(new), cert


def _complete_restrictions(P, C, H):
    """Derive condition (*) and semistable component kernels when V_i = H^0(E_i)."""
    r, k = P.r, P.k
    missing = H.lacking("E1_semistable", "E2_semistable", "pair_general_in_grassmannian")
    for i in (1, 2):
        g, d = C.genus(i), P.degree(i)
        if d < 2 * r * g:
            missing.append(f"numeric: d{i} >= 2 r g{i} ({d} >= {2 * r * g})")
    if P.d1 - P.d2 != r * (C.g1 - C.g2):
        missing.append(f"numeric: d1 - d2 = r(g1 - g2) ({P.d1 - P.d2} = {r * (C.g1 - C.g2)})")
    if k != P.d1 + r * (1 - C.g1):
        missing.append(f"numeric: k = h0(E1) ({k} = {P.d1 + r * (1 - C.g1)})")
    if "star_refuted" in H:
        missing.append("star_condition (refuted)")
    if missing:
        return _Miss("complete_restrictions", "Theorem 3.5", missing), H, []
    h0_E, twists = h0_data_from_restrictions(k, k, r)
    feasible = generic_star_feasible(P, h0_E, twists)
    assert feasible
    cert = [
        CertificateEntry("restriction_sections", "Theorem 3.5",
                         chain(Fraction(k), "=", Fraction(P.d1 + r * (1 - C.g1)), "=", Fraction(P.d2 + r * (1 - C.g2))),
                         note="h0(E1) = h0(E2) = k, h1(E_i) = 0 since d_i >= 2 r g_i"),
        CertificateEntry("generic_star", "Theorem 3.5", chain(Fraction(k + twists[0]), "<=", Fraction(h0_E)),
                         note=f"k + h0(E_j(-p)) <= h0(E) = 2k - r = {h0_E}: general V avoids H0(E_j(-p))"),
    ]
    new = {"star_condition": Derivation("generic_star", "Theorem 3.5", "general V in G(k, H0(E))")}
    strict = all(P.degree(i) > 2 * r * C.genus(i) for i in (1, 2))
    for i in (1, 2):
        new[f"M{i}_semistable"] = Derivation("butler", "Theorem 3.5", f"M(E{i}) with d{i} >= 2 r g{i}")
        if strict:
            new[f"M{i}_stable"] = Derivation("butler", "Theorem 3.5", f"M(E{i}) with d{i} > 2 r g{i}")
    if strict:
        cert.append(CertificateEntry(
            "strict_degree", "Theorem 3.5",
            chain(Fraction(P.d1), ">", 2 * r * C.g1),
            note=f"d1 > 2 r g1 and d2 = {P.d2} > {2 * r * C.g2}"))
    return None, H.with_facts(new), cert


def _restriction_unstable(P, C, H):
    hits = [i for i in (1, 2) if f"s{_other(i)}_positive" in H and P.degree(i) >= 1]
    if not hits:
        return None
    n = P.kernel_rank
    cert = []
    new = {}
    for i in hits:
        cert.append(CertificateEntry(
            f"restriction_unstable_{i}", "Lemma 2.2(3)", chain(0, ">", Fraction(-P.degree(i), n)),
            note=f"S{_other(i)} x O_C{i} has slope 0 > mu(M|C{i})"))
        new[f"M{i}_restriction_unstable"] = Derivation("restriction_unstable", "Lemma 2.2(3)")
    bounds = tuple(instability_bound(P, C, i) if i in hits else None for i in (1, 2))
    return cert, new, bounds


def classify(P: PairNumerics, C: CurveData, H: HypothesisSet) -> Verdict:
    """Apply the rules in fixed order and return the first verdict that fires.

    Order: strong instability, then the condition (*) route, fed by facts
    that the general-line-bundle and complete-restriction routes derive.
    """
    H = infer_facts(H, P, C)
    misses = []
    result = _strong_instability(P, C, H)
    if isinstance(result, Verdict):
        return result
    misses.append(result)

    cert: list[CertificateEntry] = []
    rule_id = "wsemistable_star"
    for derive in (_line_bundle_general, _complete_restrictions):
        miss, H2, extra = derive(P, C, H)
        if miss is not None:
            misses.append(miss)
            continue
        H = infer_facts(H2, P, C)
        cert.extend(extra)
        rule_id = derive.__name__.lstrip("_")

    result = _star_conclusion(P, C, H, cert, rule_id)
    if isinstance(result, Verdict):
        return result
    misses.insert(1, result)

    nearest = min(misses, key=lambda m: len(m.missing))
    one_sided = _restriction_unstable(P, C, H)
    if one_sided is not None:
        ru_cert, new, bounds = one_sided
        H = H.with_facts(new)
        return Verdict(
            VerdictKind.RESTRICTION_UNSTABLE,
            rule_id="restriction_unstable",
            bounds=bounds,
            certificate=tuple(ru_cert),
            missing=tuple(f"{nearest.rule_id}: {m}" for m in nearest.missing),
            facts=tuple(H.sorted()),
        )
    return Verdict(
        VerdictKind.INCONCLUSIVE,
        rule_id=nearest.rule_id,
        certificate=(CertificateEntry(nearest.rule_id, nearest.citation, note="nearest rule, not fired"),),
        missing=tuple(nearest.missing),
        facts=tuple(H.sorted()),
    )


def verdict_is_sound(v: Verdict) -> bool:
    """Every recorded inequality re-evaluates to true and window/bound invariants hold."""
    if not all(e.holds() for e in v.certificate):
        return False
    if v.kind in (VerdictKind.W_SEMISTABLE, VerdictKind.W_STABLE):
        if v.window is None or v.window.empty or not v.window.is_subset(RatInterval.open(0, 1)):
            return False
    if v.kind is VerdictKind.STRONGLY_UNSTABLE:
        if v.bounds is None or not sum(v.bounds) < 1:
            return False
    return True


__all__ = [
    "ALL_FACTS",
    "ASSERTABLE_FACTS",
    "CertificateEntry",
    "DERIVED_FACTS",
    "DestabilizerNumerics",
    "HypothesisSet",
    "Inconsistent",
    "UnknownFact",
    "Verdict",
    "VerdictKind",
    "check_inequality",
    "classify",
    "destabilizers",
    "generic_star_feasible",
    "infer_facts",
    "instability_bound",
    "kernel_slope",
    "polarization_window",
    "strong_instability",
    "verdict_is_sound",
]

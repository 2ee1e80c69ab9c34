import csv
import io
from fractions import Fraction

import pytest

from nodalkernel.curve import CurveData, DepthOneNumerics
from nodalkernel.engine import instability_bound
from nodalkernel.oracle import (
    CSV_FIELDS,
    GridSpec,
    SweepRange,
    scan_destabilizers,
    scan_teixidor,
    sweep_claim,
    sweep_classify,
    tally_csv,
)
from nodalkernel.pairs import PairNumerics, kernel_depth_one


def test_grid_rejects_tiny_denominator():
    with pytest.raises(ValueError):
        GridSpec(1)


def test_scan_teixidor_kernel_window(genus22):
    hits = scan_teixidor(kernel_depth_one(PairNumerics(1, 4, 4, 3)), genus22, GridSpec(140))
    assert hits == set(range(60, 81))


def test_scan_teixidor_zero_chi(genus22):
    # chi = 0 makes every polarization admissible
    E = DepthOneNumerics.bundle(1, 1, 2)
    assert scan_teixidor(E, genus22, GridSpec(50)) == set(range(1, 50))


def test_scan_teixidor_rejects_sheaves(genus22):
    with pytest.raises(ValueError):
        scan_teixidor(DepthOneNumerics(1, 0, 2, 0, 0), genus22, GridSpec(10))


def test_destabilizers_cover_grid(genus22):
    scan = scan_destabilizers(PairNumerics(1, 4, 4, 5, s1=1, s2=1), genus22, GridSpec(100))
    assert scan.feasible == set()
    assert set(scan.violations) == set(range(1, 100))


def test_destabilizers_one_sided(genus22):
    P = PairNumerics(1, 4, 4, 5, s1=1, s2=0)
    scan = scan_destabilizers(P, genus22, GridSpec(100))
    bound = instability_bound(P, genus22, 2)
    assert scan.feasible == {t for t in range(1, 100) if 1 - Fraction(t, 100) <= bound}
    assert all(hits == (2,) for hits in scan.violations.values())


def test_destabilizers_need_s(genus22):
    with pytest.raises(ValueError):
        scan_destabilizers(PairNumerics(1, 4, 4, 5), genus22, GridSpec(10))


def test_claim_sweep_default_range():
    report = sweep_claim(SweepRange.claim_default())
    assert report.counterexamples == []
    assert report.summary().startswith("0 counterexamples")
    assert set(report.case_tally) == {1, 2, 3}
    assert report.pairs_checked > 0


def test_sweep_deterministic_and_ordered():
    S = SweepRange(d1=(2, 5), d2=(2, 5), k=(1, 3))
    a, b = sweep_classify(S), sweep_classify(S)
    assert a == b
    rows = list(csv.DictReader(io.StringIO(a)))
    keys = [tuple(int(r[f]) for f in CSV_FIELDS[:6]) for r in rows]
    assert keys == sorted(keys) and len(keys) == 2 * 2 * 4 * 4 * 3


def test_sweep_empty_range_header_only():
    text = sweep_classify(SweepRange(g1=(3, 2)))
    assert text == ",".join(CSV_FIELDS) + "\n"
    assert sum(tally_csv(text).values()) == 0


def test_sweep_unknown_template():
    with pytest.raises(KeyError):
        sweep_classify(SweepRange(), "nope")


def test_complete_template_all_strongly_unstable():
    text = sweep_classify(SweepRange(g1=(2, 4), g2=(2, 4), r=(1, 2), d1=(0, 20), d2=(0, 20)), "complete")
    tally = tally_csv(text)
    assert set(tally) == {"StronglyUnstable"} and tally["StronglyUnstable"] > 0


def test_complete_restrictions_template():
    text = sweep_classify(SweepRange(g1=(2, 3), g2=(2, 3), d1=(0, 10), d2=(0, 10), k=(1, 5)),
                          "complete_restrictions")
    met = 0
    for row in csv.DictReader(io.StringIO(text)):
        g1, g2, r, d1, d2, k = (int(row[f]) for f in CSV_FIELDS[:6])
        applies = (d1 >= 2 * r * g1 and d2 >= 2 * r * g2
                   and d1 - d2 == r * (g1 - g2) and k == d1 + r * (1 - g1))
        if applies:
            met += 1
            assert row["verdict"] == ("WStable" if d1 > 2 * r * g1 and d2 > 2 * r * g2 else "WSemistable")
            lo, hi = Fraction(row["window_lo"]), Fraction(row["window_hi"])
            assert 0 < lo < hi < 1
        else:
            assert row["verdict"] not in ("WSemistable", "WStable")
    assert met > 0


def test_star_template_windows_match_scan():
    text = sweep_classify(SweepRange(d1=(1, 6), d2=(1, 6), k=(1, 3)), "star")
    for row in csv.DictReader(io.StringIO(text)):
        assert row["verdict"] == "WSemistable"
        P = PairNumerics(1, int(row["d1"]), int(row["d2"]), int(row["k"]))
        C = CurveData(int(row["g1"]), int(row["g2"]))
        hits = scan_teixidor(kernel_depth_one(P), C, GridSpec(60))
        lo, hi = Fraction(row["window_lo"]), Fraction(row["window_hi"])
        assert hits == {t for t in range(1, 60) if lo <= Fraction(t, 60) <= hi}

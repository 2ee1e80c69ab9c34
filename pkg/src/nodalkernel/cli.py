"""Command line: classify scenario files, print windows, run sweeps and grid scans.

Scenario files are TOML::

    [curve]
    g1 = 2
    g2 = 2

    [pair]
    r = 1
    d1 = 4
    d2 = 4
    k = 5          # optional: s1 = ..., s2 = ...

    [hypotheses]
    facts = ["E1_semistable", "E2_semistable", "pair_is_complete"]

    [options]      # optional
    grid = 1000
    format = "text"

Exit codes: 0 any verdict, 1 I/O error, 2 invalid scenario, 3 contradictory facts.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .curve import CurveData, InvariantError, teixidor_window
from .engine import (
    HypothesisSet,
    Inconsistent,
    UnknownFact,
    Verdict,
    classify,
    instability_bound,
    polarization_window,
)
from .oracle import GridSpec, SweepRange, scan_destabilizers, scan_teixidor, sweep_claim, sweep_classify, tally_csv
from .pairs import MissingHypothesis, PairNumerics, kernel_depth_one
from .rationals import fmt_rat

EXIT_OK, EXIT_IO, EXIT_SCHEMA, EXIT_CONTRADICTION = 0, 1, 2, 3
FORMATS = ("text", "json")


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class Scenario:
    curve: CurveData
    pair: PairNumerics
    hypotheses: tuple
    grid: int = 1000
    format: str = "text"

    def hypothesis_set(self) -> HypothesisSet:
        return HypothesisSet.from_names(self.hypotheses)


def _int_field(table: dict, section: str, key: str, required: bool = True) -> Optional[int]:
    if key not in table:
        if required:
            raise ScenarioError(f"[{section}] is missing required key {key!r}")
        return None
    value = table[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(f"[{section}] {key} must be an integer, got {value!r}")
    return value


def parse_scenario(data: dict) -> Scenario:
    for section in ("curve", "pair"):
        if not isinstance(data.get(section), dict):
            raise ScenarioError(f"missing [{section}] section")
    curve_t, pair_t = data["curve"], data["pair"]
    hyp = data.get("hypotheses", {})
    facts = hyp.get("facts", []) if isinstance(hyp, dict) else hyp
    if not isinstance(facts, list) or not all(isinstance(f, str) for f in facts):
        raise ScenarioError("[hypotheses] facts must be a list of strings")
    opts = data.get("options", {})
    fmt = opts.get("format", "text")
    if fmt not in FORMATS:
        raise ScenarioError(f"[options] format must be one of {FORMATS}, got {fmt!r}")
    grid = _int_field(opts, "options", "grid", required=False) or 1000
    try:
        curve = CurveData(_int_field(curve_t, "curve", "g1"), _int_field(curve_t, "curve", "g2"))
        pair = PairNumerics(
            r=_int_field(pair_t, "pair", "r"),
            d1=_int_field(pair_t, "pair", "d1"),
            d2=_int_field(pair_t, "pair", "d2"),
            k=_int_field(pair_t, "pair", "k"),
            s1=_int_field(pair_t, "pair", "s1", required=False),
            s2=_int_field(pair_t, "pair", "s2", required=False),
        )
        HypothesisSet.from_names(facts)
    except (InvariantError, UnknownFact) as exc:
        raise ScenarioError(str(exc)) from exc
    return Scenario(curve, pair, tuple(facts), grid=grid, format=fmt)


def load_scenario(path: str | Path) -> Scenario:
    """Read and validate a scenario; OSError propagates for I/O failures."""
    raw = Path(path).read_bytes()
    try:
        data = tomllib.loads(raw.decode("utf-8"))
    except (tomllib.TOMLDecodeError, UnicodeDecodeError) as exc:
        raise ScenarioError(f"{path}: not valid TOML: {exc}") from exc
    return parse_scenario(data)


def dump_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def format_verdict(v: Verdict, sc: Scenario) -> str:
    P, C = sc.pair, sc.curve
    lines = [
        f"curve: g1={C.g1} g2={C.g2} (p_a={C.arithmetic_genus})",
        f"pair:  r={P.r} d=({P.d1},{P.d2}) k={P.k}"
        + (f" s=({P.s1},{P.s2})" if P.s1 is not None or P.s2 is not None else ""),
        f"verdict: {v.kind.value}  [{v.rule_id}]",
    ]
    if v.window is not None:
        lines.append(f"window: w1 in {v.window}  (open interior {v.window.interior()})")
    if v.bounds is not None:
        shown = ", ".join(f"w{i} <= {fmt_rat(b)}" for i, b in enumerate(v.bounds, 1) if b is not None)
        lines.append(f"bounds: {shown}")
    lines.append("certificate:")
    for e in v.certificate:
        ineq = f"  {e.inequality}" if e.inequality else ""
        note = f"  -- {e.note}" if e.note else ""
        lines.append(f"  - {e.rule_id} ({e.citation}){ineq}{note}")
    lines.append("facts: " + (", ".join(v.facts) or "(none)"))
    lines.append("missing: " + (", ".join(v.missing) or "(none)"))
    return "\n".join(lines)


def cmd_verdict(sc: Scenario, fmt: str) -> int:
    v = classify(sc.pair, sc.curve, sc.hypothesis_set())
    print(dump_json(v.to_dict()) if fmt == "json" else format_verdict(v, sc))
    return EXIT_OK


def cmd_window(sc: Scenario, fmt: str) -> int:
    window = polarization_window(sc.pair, sc.curve)
    sample = window.sample()
    payload = {
        "a1": fmt_rat(window.lo),
        "b1": fmt_rat(window.hi),
        "window": str(window),
        "interior": str(window.interior()),
        "sample": fmt_rat(sample),
        "w2_sample": fmt_rat(1 - sample),
    }
    if fmt == "json":
        print(dump_json(payload))
    else:
        print(f"a1 = {payload['a1']}")
        print(f"b1 = {payload['b1']}")
        print(f"closed window {payload['window']}, open interior {payload['interior']}")
        print(f"sample polarization: w1 = {payload['sample']}, w2 = {payload['w2_sample']}")
    return EXIT_OK


def cmd_oracle_scan(sc: Scenario, fmt: str, grid: int) -> int:
    P, C = sc.pair, sc.curve
    G = GridSpec(grid)
    window = polarization_window(P, C)
    kernel = kernel_depth_one(P)
    scanned = scan_teixidor(kernel, C, G)
    teixidor = teixidor_window(kernel, C)
    expected = {t for t in range(1, grid) if Fraction(t, grid) in teixidor}
    in_window = {t for t in range(1, grid) if Fraction(t, grid) in window}
    payload = {
        "grid": grid,
        "window": str(window),
        "feasible_count": len(scanned),
        "feasible_min": min(scanned) if scanned else None,
        "feasible_max": max(scanned) if scanned else None,
        "agrees_with_window": scanned == in_window == expected,
    }
    if P.s1 is not None and P.s2 is not None:
        ds = scan_destabilizers(P, C, G)
        closed_form = set(range(1, grid))
        if P.s2:
            closed_form = {t for t in closed_form if Fraction(t, grid) <= instability_bound(P, C, 1)}
        if P.s1:
            closed_form = {t for t in closed_form if 1 - Fraction(t, grid) <= instability_bound(P, C, 2)}
        payload["destabilizer_feasible_count"] = len(ds.feasible)
        payload["destabilizer_agrees_with_bounds"] = ds.feasible == closed_form
        payload["combined_feasible_count"] = len(ds.feasible & scanned)
    if fmt == "json":
        print(dump_json(payload))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")
    return EXIT_OK


def parse_span(text: str) -> tuple[int, int]:
    """``"2..5"`` -> (2, 5); a bare integer is a one-point range."""
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from exc


def cmd_sweep(args) -> int:
    defaults = SweepRange()
    if args.template == "claim":
        S = SweepRange.claim_default()
        S = SweepRange(
            g1=args.g1 or S.g1, g2=args.g2 or S.g2, r=args.r or S.r,
            d1=args.d1 or S.d1, d2=args.d2 or S.d2, d_per_genus=S.d_per_genus,
        )
        report = sweep_claim(S)
        print(report.summary())
        if args.out:
            lines = ["g1,g2,r,d1,d2,k"] + [",".join(map(str, c)) for c in report.counterexamples]
            Path(args.out).write_text("\n".join(lines) + "\n")
        return EXIT_OK
    S = SweepRange(
        g1=args.g1 or defaults.g1, g2=args.g2 or defaults.g2, r=args.r or defaults.r,
        d1=args.d1 or defaults.d1, d2=args.d2 or defaults.d2, k=args.k_minus_r or defaults.k,
    )
    text = sweep_classify(S, args.template)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    tally = tally_csv(text)
    rows = sum(tally.values())
    detail = ", ".join(f"{k}: {tally[k]}" for k in sorted(tally))
    print(f"{rows} rows" + (f" ({detail})" if detail else ""), file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nodalkernel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("verdict", "classify the kernel bundle of a scenario"),
        ("window", "print the polarization window of a scenario"),
        ("oracle-scan", "grid-scan a scenario against the closed forms"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("scenario")
        p.add_argument("--format", choices=FORMATS)
        p.add_argument("--grid", type=int, help="grid denominator N (default 1000)")

    p = sub.add_parser("sweep", help="classify a parameter range and write CSV")
    p.add_argument("--template", default="none",
                   help="none, complete, star, generic, complete_restrictions, or claim")
    for flag in ("--g1", "--g2", "--r", "--d1", "--d2", "--k-minus-r"):
        p.add_argument(flag, type=parse_span, metavar="LO..HI")
    p.add_argument("--out", help="CSV output path (default stdout)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            try:
                return cmd_sweep(args)
            except (InvariantError, KeyError) as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_SCHEMA
        sc = load_scenario(args.scenario)
        fmt = args.format or sc.format
        if args.command == "verdict":
            return cmd_verdict(sc, fmt)
        if args.command == "window":
            return cmd_window(sc, fmt)
        grid = args.grid or sc.grid
        if grid < 2:
            raise ScenarioError("grid denominator must be >= 2")
        return cmd_oracle_scan(sc, fmt, grid)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ScenarioError as exc:
        print(f"invalid scenario: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (Inconsistent, MissingHypothesis) as exc:
        print(f"contradiction: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end for decomposition, billing, calibration and scenarios.

Profiles are CSV files with header ``t,power`` and a uniformly spaced,
strictly increasing time column. Plans are JSON objects whose ``kind`` is
``flat`` ({unit_price}), ``spot`` ({t1, t2, unit_prices}) or ``dynamism``
({alpha0, alpha: {base, cutoff, slope, log_offset}, beta: {...}}).

Exit codes: 0 success; 1 a scenario assertion failed; 2 malformed input
file; 3 a precondition was violated (resolvability, interval mismatch,
underdetermined calibration and the like).

Table output rounds to 6 significant digits; json and csv output keep
full precision.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from typing import Sequence

import numpy as np

from .calibrate import CostObservation, calibrate_iota, supply_cost
from .curve import Interval, SampledCurve, distance, inner_product
from .spectrum import Spectrum, analyze, parseval_energy, to_mu_vector
from .tariff import (
    Bill,
    DynamismPlan,
    FlatPlan,
    PriceFrequencyFunction,
    SpotPlan,
    TariffPlan,
    classic_payment,
    dynamism_payment,
    price_frequency_value,
    spot_payment,
)
from .scenarios import ScenarioReport, builtin_plans, case1_demo, reproduce_table1

__all__ = ["InputFormatError", "main"]


class InputFormatError(Exception):
    """A file failed to parse or violated its format invariants."""


# ---------------------------------------------------------------------------
# input files
# ---------------------------------------------------------------------------

def _read_profile(path: str) -> SampledCurve:
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise InputFormatError(f"{path}: {exc.strerror or exc}") from exc
    if not rows or [c.strip() for c in rows[0]] != ["t", "power"]:
        raise InputFormatError(f"{path}, line 1: expected header 't,power'")

    times: list[float] = []
    powers: list[float] = []
    lines: list[int] = []
    for ln, row in enumerate(rows[1:], start=2):
        if not row or all(c.strip() == "" for c in row):
            continue
        if len(row) != 2:
            raise InputFormatError(f"{path}, line {ln}: expected 2 fields, got {len(row)}")
        try:
            times.append(float(row[0]))
            powers.append(float(row[1]))
        except ValueError as exc:
            raise InputFormatError(f"{path}, line {ln}: {exc}") from exc
        lines.append(ln)

    if len(times) < 2:
        raise InputFormatError(f"{path}: need at least 2 data rows, got {len(times)}")
    t = np.asarray(times)
    dt = np.diff(t)
    if np.any(dt <= 0):
        bad = lines[int(np.argmax(dt <= 0)) + 1]
        raise InputFormatError(f"{path}, line {bad}: time column must be strictly increasing")
    step = (t[-1] - t[0]) / (t.size - 1)
    gap = np.abs(dt - step)
    if np.max(gap) > 1e-9 * abs(step):
        bad = lines[int(np.argmax(gap)) + 1]
        raise InputFormatError(f"{path}, line {bad}: time column must be uniformly spaced")
    try:
        return SampledCurve(Interval(float(t[0]), float(t[-1])), np.asarray(powers))
    except ValueError as exc:
        raise InputFormatError(f"{path}: {exc}") from exc


def _pff_from_dict(d: dict) -> PriceFrequencyFunction:
    return PriceFrequencyFunction(
        base=float(d["base"]),
        cutoff=float(d["cutoff"]),
        slope=float(d["slope"]),
        log_offset=float(d.get("log_offset", 0.0)),
    )


def _read_plan(path: str) -> TariffPlan:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputFormatError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputFormatError(f"{path}: plan must be a JSON object")
    kind = doc.get("kind")
    try:
        if kind == "flat":
            return FlatPlan(float(doc["unit_price"]))
        if kind == "spot":
            return SpotPlan(
                Interval(float(doc["t1"]), float(doc["t2"])),
                tuple(float(p) for p in doc["unit_prices"]),
            )
        if kind == "dynamism":
            return DynamismPlan(
                alpha0=float(doc["alpha0"]),
                alpha=_pff_from_dict(doc["alpha"]),
                beta=_pff_from_dict(doc["beta"]),
            )
    except KeyError as exc:
        raise InputFormatError(f"{path}: missing plan field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise InputFormatError(f"{path}: {exc}") from exc
    raise InputFormatError(f"{path}: unknown plan kind {kind!r}")


def _resolve_plan(token: str) -> TariffPlan:
    """A plan file path, or one of the builtin names plan1/plan2."""
    if token in ("plan1", "plan2"):
        return builtin_plans()[0 if token == "plan1" else 1]
    return _read_plan(token)


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _full(x: float) -> str:
    return repr(float(x))


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def _coordinate_meta(k: int, f0: float) -> tuple[str, int, float]:
    """(kind, order, frequency) of flat coordinate index k."""
    if k == 0:
        return ("energy", 0, 0.0)
    if k % 2 == 1:
        n = (k + 1) // 2
        return ("cos", n, n * f0)
    n = k // 2
    return ("sin", n, n * f0)


def _render_bill_table(bill: Bill, heading: str) -> None:
    print(heading)
    print(f"  non-dynamic  {_fmt(bill.non_dynamic)}")
    print(f"  dynamic      {_fmt(bill.dynamic)}")
    print(f"  total        {_fmt(bill.total)}")
    print("  line items:")
    print("    label   frequency  coefficient  unit-price  amount")
    for it in bill.line_items:
        print(
            f"    {it.label:<7}{_fmt(it.frequency):>9}  {_fmt(it.coefficient):>11}"
            f"  {_fmt(it.unit_price):>10}  {_fmt(it.amount):>10}"
        )


def _render_report_table(report: ScenarioReport) -> None:
    print(f"scenario {report.name}: {'PASS' if report.passed else 'FAIL'}")
    for c in report.checks:
        mark = "ok" if c.passed else "FAIL"
        print(
            f"  [{mark:>4}] {c.description}: expected {_fmt(c.expected)}, "
            f"got {_fmt(c.actual)} ({c.provenance})"
        )


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cmd_decompose(args: argparse.Namespace) -> int:
    curve = _read_profile(args.profile)
    spec = analyze(curve, args.nmax, drop_tol=args.drop_tol)
    nsq = inner_product(curve, curve)
    pe = parseval_energy(spec)
    ratio = pe / nsq if nsq > 0 else None
    iv = spec.interval

    if args.format == "json":
        _print_json(
            {
                "t1": iv.t1,
                "t2": iv.t2,
                "n_max": spec.n_max,
                "a0": spec.a0,
                "harmonics": [
                    {"order": h.order, "f": h.order * iv.f0, "a": h.cos_amp, "b": h.sin_amp}
                    for h in spec.harmonics
                ],
                "parseval_energy": pe,
                "norm_squared": nsq,
                "parseval_ratio": ratio,
            }
        )
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["order", "f", "a", "b"])
        writer.writerow([0, _full(0.0), _full(spec.a0), _full(0.0)])
        for h in spec.harmonics:
            writer.writerow([h.order, _full(h.order * iv.f0), _full(h.cos_amp), _full(h.sin_amp)])
    else:
        print(f"spectrum on [{_fmt(iv.t1)}, {_fmt(iv.t2)}], n_max {spec.n_max}")
        print(f"  a0 = {_fmt(spec.a0)}  (energy {_fmt(0.5 * iv.duration * spec.a0)})")
        if spec.harmonics:
            print("    order  frequency        a_n        b_n")
            for h in spec.harmonics:
                print(
                    f"    {h.order:>5}  {_fmt(h.order * iv.f0):>9}"
                    f"  {_fmt(h.cos_amp):>9}  {_fmt(h.sin_amp):>9}"
                )
        else:
            print("    no harmonics above the drop threshold")
        shown = "n/a" if ratio is None else _fmt(ratio)
        print(f"  parseval energy {_fmt(pe)} / norm^2 {_fmt(nsq)} = {shown}")
    return 0


def _billing_result(plan: TariffPlan, curve: SampledCurve, args) -> tuple[str, float, Bill | None]:
    if isinstance(plan, FlatPlan):
        return ("flat", classic_payment(plan.unit_price, curve), None)
    if isinstance(plan, SpotPlan):
        return ("spot", spot_payment(plan, curve), None)
    spec = analyze(curve, args.nmax)
    supply: Spectrum | None = None
    if getattr(args, "supply", None):
        supply = analyze(_read_profile(args.supply), args.nmax)
    bill = dynamism_payment(plan, spec, supply)
    return ("dynamism", bill.total, bill)


def _cmd_bill(args: argparse.Namespace) -> int:
    curve = _read_profile(args.profile)
    plan = _read_plan(args.plan)
    kind, payment, bill = _billing_result(plan, curve, args)
    if args.format == "json":
        payload = {"kind": kind, "payment": payment}
        if bill is not None:
            payload["bill"] = bill.to_dict()
        _print_json(payload)
    elif bill is not None:
        _render_bill_table(bill, f"dynamism bill for {args.profile}")
    else:
        print(f"{kind} payment for {args.profile}: {_fmt(payment)}")
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    curve = _read_profile(args.profile)
    results = []
    for path in (args.plan_a, args.plan_b):
        plan = _read_plan(path)
        kind, payment, _ = _billing_result(plan, curve, args)
        results.append({"plan": path, "kind": kind, "payment": payment})
    diff = results[0]["payment"] - results[1]["payment"]
    if args.format == "json":
        _print_json({"profile": args.profile, "plans": results, "difference": diff})
    else:
        print(f"payments for {args.profile}")
        for r in results:
            print(f"  {r['plan']}  ({r['kind']}): {_fmt(r['payment'])}")
        print(f"  difference (first - second): {_fmt(diff)}")
    return 0


def _cmd_calibrate(args: argparse.Namespace) -> int:
    manifest = args.observations
    try:
        with open(manifest, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise InputFormatError(f"{manifest}: {exc.strerror or exc}") from exc
    if not rows or [c.strip() for c in rows[0]] != ["profile", "cost"]:
        raise InputFormatError(f"{manifest}, line 1: expected header 'profile,cost'")
    base_dir = os.path.dirname(os.path.abspath(manifest))
    observations: list[CostObservation] = []
    for ln, row in enumerate(rows[1:], start=2):
        if not row or all(c.strip() == "" for c in row):
            continue
        if len(row) != 2:
            raise InputFormatError(f"{manifest}, line {ln}: expected 2 fields, got {len(row)}")
        rel = row[0].strip()
        path = rel if os.path.isabs(rel) else os.path.join(base_dir, rel)
        try:
            cost = float(row[1])
        except ValueError as exc:
            raise InputFormatError(f"{manifest}, line {ln}: {exc}") from exc
        observations.append(CostObservation(_read_profile(path), cost))

    cc = calibrate_iota(observations, args.nmax, ridge=args.ridge)
    f0 = cc.interval.f0
    residuals = [
        obs.observed_cost - supply_cost(cc, to_mu_vector(analyze(obs.load, args.nmax)))
        for obs in observations
    ]
    max_abs = max(abs(r) for r in residuals)
    rms = math.sqrt(sum(r * r for r in residuals) / len(residuals))

    if args.format == "json":
        _print_json(
            {
                "t1": cc.interval.t1,
                "t2": cc.interval.t2,
                "n_max": cc.n_max,
                "iota": [
                    dict(
                        zip(
                            ("index", "kind", "order", "f", "value"),
                            (k, *_coordinate_meta(k, f0), float(cc.iota[k])),
                        )
                    )
                    for k in range(cc.iota.size)
                ],
                "residuals": {"max_abs": max_abs, "rms": rms, "per_observation": residuals},
            }
        )
    else:
        print(f"cost characteristic on [{_fmt(cc.interval.t1)}, {_fmt(cc.interval.t2)}], n_max {cc.n_max}")
        print("    index  kind    order  frequency      iota")
        for k in range(cc.iota.size):
            kind, order, f = _coordinate_meta(k, f0)
            print(f"    {k:>5}  {kind:<6}  {order:>5}  {_fmt(f):>9}  {_fmt(float(cc.iota[k])):>9}")
        print(f"  residual max {_fmt(max_abs)}, rms {_fmt(rms)} over {len(residuals)} observations")
    return 0


def _cmd_distance(args: argparse.Namespace) -> int:
    c1 = _read_profile(args.profile_a)
    c2 = _read_profile(args.profile_b)
    print(_full(distance(c1, c2)))
    return 0


def _cmd_scenarios(args: argparse.Namespace) -> int:
    runners = {"table1": reproduce_table1, "case1": case1_demo}
    names = list(runners) if args.which == "all" else [args.which]
    reports = [runners[name]() for name in names]
    if args.format == "json":
        _print_json([r.to_dict() for r in reports])
    else:
        for r in reports:
            _render_report_table(r)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_plotdata(args: argparse.Namespace) -> int:
    rows: list[list] = []
    if args.what == "pff":
        plan = _resolve_plan(args.source)
        if not isinstance(plan, DynamismPlan):
            raise InputFormatError(f"{args.source}: pff data needs a dynamism plan")
        if args.fstep <= 0:
            raise ValueError(f"fstep must be positive, got {args.fstep}")
        rows.append(["f", "alpha", "beta"])
        f = 0.0
        while f <= args.fmax:
            rows.append(
                [
                    _full(f),
                    _full(price_frequency_value(plan.alpha, f)),
                    _full(price_frequency_value(plan.beta, f)),
                ]
            )
            f += args.fstep
    elif args.what == "curve":
        curve = _read_profile(args.source)
        rows.append(["t", "power"])
        for t, v in zip(curve.times(), curve.values):
            rows.append([_full(t), _full(v)])
    else:
        curve = _read_profile(args.source)
        spec = analyze(curve, args.nmax)
        f0 = spec.interval.f0
        rows.append(["order", "f", "a", "b"])
        rows.append([0, _full(0.0), _full(spec.a0), _full(0.0)])
        for h in spec.harmonics:
            rows.append([h.order, _full(h.order * f0), _full(h.cos_amp), _full(h.sin_amp)])

    if args.out and args.out != "-":
        with open(args.out, "w", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerows(rows)
    else:
        csv.writer(sys.stdout, lineterminator="\n").writerows(rows)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loadspace",
        description="Decompose, bill and calibrate electric load curves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser, choices=("table", "json")) -> None:
        p.add_argument("--format", choices=choices, default="table")

    p = sub.add_parser("decompose", help="Fourier coefficients of a load profile")
    p.add_argument("profile")
    p.add_argument("--nmax", type=int, default=100)
    p.add_argument("--drop-tol", type=float, default=None, dest="drop_tol")
    add_format(p, ("table", "json", "csv"))
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("bill", help="payment of a profile under a plan file")
    p.add_argument("profile")
    p.add_argument("plan")
    p.add_argument("--supply", help="supply profile fixing coefficient polarity")
    p.add_argument("--nmax", type=int, default=100)
    add_format(p)
    p.set_defaults(func=_cmd_bill)

    p = sub.add_parser("compare", help="bill one profile under two plans")
    p.add_argument("profile")
    p.add_argument("plan_a")
    p.add_argument("plan_b")
    p.add_argument("--nmax", type=int, default=100)
    add_format(p)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("calibrate", help="fit a cost characteristic from observations")
    p.add_argument("observations", help="CSV manifest with header 'profile,cost'")
    p.add_argument("--nmax", type=int, default=10)
    p.add_argument("--ridge", type=float, default=0.0)
    add_format(p)
    p.set_defaults(func=_cmd_calibrate)

    p = sub.add_parser("distance", help="L2 distance between two profiles")
    p.add_argument("profile_a")
    p.add_argument("profile_b")
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("scenarios", help="run the bundled self-checking scenarios")
    p.add_argument("--which", choices=("table1", "case1", "all"), default="all")
    add_format(p)
    p.set_defaults(func=_cmd_scenarios)

    p = sub.add_parser("plotdata", help="emit plot-ready CSV data")
    p.add_argument("source", help="profile path, plan path, or builtin plan1/plan2")
    p.add_argument("--what", choices=("curve", "spectrum", "pff"), required=True)
    p.add_argument("--nmax", type=int, default=100)
    p.add_argument("--fmax", type=float, default=200.0)
    p.add_argument("--fstep", type=float, default=1.0)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_plotdata)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

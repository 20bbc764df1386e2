"""Rényi entropies, error-probability bounds and coding exponents from the shell.

Subcommands: measure, bounds, tables, fig, exponents, ensemble.
Exit codes: 0 ok, 1 check failure, 2 bad input or I/O, 3 domain error, 4 budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .distributions import (
    BudgetError,
    Channel,
    DomainError,
    ProbVector,
    ValidationError,
    example_joint,
    load_joint,
    map_error,
    parse_channel,
)
from .ensemble import EnsembleConfig, ensemble_average, exponent_fit, messages_for_rate, results_csv
from .error_bounds import (
    error_bound_reports,
    fano_lb_error,
    fano_upper_H,
    lb_error_revholder,
    lb_H_from_error,
    ub_error_from_H,
)
from .exponents import R_alpha, R_alpha_bsc, bsc_rates, gallager_E0
from .ht_bounds import all_ht_bounds
from .measures import LOG2, arimoto_conditional, mutual_information, renyi_entropy

EXIT_OK, EXIT_CHECK, EXIT_IO, EXIT_DOMAIN, EXIT_BUDGET = 0, 1, 2, 3, 4
DEFAULT_ALPHAS = ("1/2", "1", "2", "inf")
CHECK_TOL = 5e-5

TABLE1_ALPHAS = (2, 4, 6, 8, 10, 50)
TABLE1_EXPECTED = {
    2: (0.4247, 0.3508),
    4: (0.4480, 0.4406),
    6: (0.4573, 0.4562),
    8: (0.4620, 0.4613),
    10: (0.4640, 0.4635),
    50: (0.4667, 0.4667),
}
TABLE2_ALPHAS = (1, 10, 100)
TABLE2_EXPECTED = {
    1: (0.4013, 0.4667, 0.6061),
    10: (0.4640, 0.4667, 0.4994),
    100: (0.4667, 0.4667, 0.4699),
}


class Unit:
    def __init__(self, nats: bool):
        self.name = "nats" if nats else "bits"
        self.scale = 1.0 if nats else 1.0 / LOG2

    def __call__(self, v: float) -> float:
        return v * self.scale


def _joint_from_args(args):
    if args.example:
        return example_joint(args.example)
    if not args.input:
        raise ValidationError("an input file or --example is required")
    return load_joint(args.input)


def _fmt_row(cells, widths):
    return "  ".join(str(c).rjust(w) for c, w in zip(cells, widths))


# --------------------------------------------------------------------------
# tables


def table1_rows():
    joint = example_joint("tables")
    rows = []
    for a in TABLE1_ALPHAS:
        H = arimoto_conditional(joint, a)
        rows.append((a, fano_lb_error(H, joint.M, a), lb_error_revholder(joint, a)))
    return rows


def table2_rows():
    joint = example_joint("tables")
    eps = map_error(joint)
    rows = []
    for a in TABLE2_ALPHAS:
        H = arimoto_conditional(joint, a)
        rows.append((a, fano_lb_error(H, joint.M, a), eps, ub_error_from_H(H, a)))
    return rows


def cmd_tables(args, out):
    failures = 0
    out.write("Lower bounds on the MAP error, 3x3 example (eps = 21/45)\n")
    out.write(_fmt_row(("alpha", "implicit", "explicit"), (6, 9, 9)) + "\n")
    for a, lo, rh in table1_rows():
        mark = ""
        if args.check:
            exp = TABLE1_EXPECTED[a]
            bad = [abs(v - e) > CHECK_TOL for v, e in zip((lo, rh), exp)]
            if any(bad):
                failures += 1
                mark = "  MISMATCH expected " + " ".join(f"{e:.4f}" for e in exp)
        out.write(_fmt_row((a, f"{lo:.4f}", f"{rh:.4f}"), (6, 9, 9)) + mark + "\n")
    out.write("\nUpper and lower bounds on the MAP error from H_alpha(X|Y)\n")
    out.write(_fmt_row(("alpha", "lower", "eps", "upper"), (6, 9, 9, 9)) + "\n")
    for a, lo, eps, up in table2_rows():
        mark = ""
        if args.check:
            exp = TABLE2_EXPECTED[a]
            if any(abs(v - e) > CHECK_TOL for v, e in zip((lo, eps, up), exp)):
                failures += 1
                mark = "  MISMATCH expected " + " ".join(f"{e:.4f}" for e in exp)
        out.write(_fmt_row((a, f"{lo:.4f}", f"{eps:.4f}", f"{up:.4f}"), (6, 9, 9, 9)) + mark + "\n")
    if args.check:
        out.write(f"\ncheck: {failures} row(s) off by more than {CHECK_TOL:g}\n")
        return EXIT_CHECK if failures else EXIT_OK
    return EXIT_OK


# --------------------------------------------------------------------------
# measure / bounds


def cmd_measure(args, out):
    joint = _joint_from_args(args)
    unit = Unit(args.nats)
    alphas = args.alpha or list(DEFAULT_ALPHAS)
    eps = map_error(joint)
    out.write(f"M={joint.M} N={joint.N} units={unit.name}\n")
    out.write(_fmt_row(("alpha", "H(X)", "H(X|Y)"), (8, 10, 10)) + "\n")
    for a in alphas:
        hx = unit(renyi_entropy(joint.prior, a))
        hxy = unit(arimoto_conditional(joint, a))
        out.write(_fmt_row((a, f"{hx:.6f}", f"{hxy:.6f}"), (8, 10, 10)) + "\n")
    h_inf = arimoto_conditional(joint, math.inf)
    out.write(f"eps      {eps:.6f}\n")
    out.write(f"1-exp(-H_inf(X|Y))  {1 - math.exp(-h_inf):.6f}  |diff|={abs(1 - math.exp(-h_inf) - eps):.1e}\n")
    return EXIT_OK


def cmd_bounds(args, out):
    joint = _joint_from_args(args)
    unit = Unit(args.nats)
    alphas = args.alpha or list(DEFAULT_ALPHAS)
    out.write(f"eps = {map_error(joint):.6f}\n")
    for a in alphas:
        out.write(f"\nalpha = {a}\n")
        for rep in error_bound_reports(joint, a):
            if rep.name == "map_error":
                continue
            is_entropy = rep.name in {"H_cond", "fano_upper_H", "lb_H_from_error"}
            val = unit(rep.value) if is_entropy else rep.value
            suffix = f" {unit.name}" if is_entropy else ""
            note = f"  [{rep.domain_note}]" if rep.domain_note else ""
            out.write(f"  {rep.name:<24} {val:.6f}{suffix}{note}\n")
    out.write("\nbinary-test upper bounds on eps\n")
    for rep in all_ht_bounds(joint):
        arg = f"  alpha*={rep.inner_arg:.6f}" if rep.inner_arg is not None else ""
        note = f"  [{rep.domain_note}]" if rep.domain_note else ""
        out.write(f"  {rep.name:<26} {rep.value:.6f}{arg}{note}\n")
    return EXIT_OK


# --------------------------------------------------------------------------
# figures


def fig1_rows(M=8, alphas=(0.25, 4.0), points=176):
    rows = []
    for a in alphas:
        for eps in np.linspace(0.0, 1 - 1 / M, points):
            eps = float(eps)
            rows.append((a, eps, fano_upper_H(eps, M, a), lb_H_from_error(eps, a)))
    return rows


def fig2_alphas():
    grid = np.concatenate([np.arange(0.1, 1.0, 0.05), np.arange(1.0, 10.0, 0.1), np.arange(10.0, 100.5, 1.0)])
    return [float(a) for a in np.round(grid, 10)]


def fig2_rows():
    joint = example_joint("binary")
    eps = map_error(joint)
    rows = []
    for a in fig2_alphas():
        H = arimoto_conditional(joint, a)
        rows.append((a, fano_lb_error(min(H, math.log(joint.M)), joint.M, a), eps, ub_error_from_H(H, a)))
    return rows


def fig3_rows(delta=0.110):
    prior, ch = ProbVector.uniform(2), Channel.bsc(delta)
    rows = []
    for a in np.round(np.arange(0.01, 1.0, 0.01), 10):
        a = float(a)
        rows.append((a, R_alpha_bsc(delta, a) / LOG2, R_alpha(prior, ch, a) / LOG2))
    return rows


def _write_csv(header, rows, target, out):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(v)) for v in r])
    text = buf.getvalue()
    if target is None or target == "-":
        out.write(text)
    else:
        Path(target).write_text(text, newline="")
    return text


def cmd_fig(args, out):
    unit = Unit(args.nats)
    if args.which == 1:
        rows = [(a, e, unit(u), unit(lo)) for a, e, u, lo in fig1_rows()]
        _write_csv(("alpha", "eps", "upper_H", "lower_H"), rows, args.output, out)
    elif args.which == 2:
        _write_csv(("alpha", "lower_eps", "eps", "upper_eps"), fig2_rows(), args.output, out)
    else:
        _write_csv(("alpha", "R_alpha_bits", "R_alpha_generic_bits"), fig3_rows(), args.output, out)
    return EXIT_OK


# --------------------------------------------------------------------------
# exponents / ensemble


def _critical_rate_generic(prior, ch, h=1e-5):
    return (gallager_E0(1 + h, prior, ch) - gallager_E0(1 - h, prior, ch)) / (2 * h)


def cmd_exponents(args, out):
    unit = Unit(args.nats)
    if args.channel:
        ch = parse_channel(json.loads(Path(args.channel).read_text()))
    else:
        ch = Channel.bsc(args.delta)
    prior = ProbVector.uniform(ch.n_inputs)
    is_bsc = args.channel is None
    if is_bsc:
        r0, rc, cap = (v * LOG2 for v in bsc_rates(args.delta))
    else:
        r0, rc, cap = gallager_E0(1.0, prior, ch), _critical_rate_generic(prior, ch), mutual_information(prior, ch)
    out.write(f"R_0={unit(r0):.4f} R_c={unit(rc):.4f} C={unit(cap):.4f} {unit.name}\n")
    out.write(f"alpha_c={rc / r0:.4f}\n")
    alphas = [float(a) for a in (args.alpha or ["0.25", "0.5", "0.75"])]
    rows = []
    for a in alphas:
        r = R_alpha_bsc(args.delta, a) if is_bsc else R_alpha(prior, ch, a)
        rows.append((a, unit(r)))
    if args.output:
        _write_csv(("alpha", f"R_alpha_{unit.name}"), rows, args.output, out)
    else:
        for a, r in rows:
            out.write(f"R_alpha({a:g}) = {r:.6f} {unit.name}\n")
    return EXIT_OK


def load_ensemble_config(path):
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed config: {exc}") from exc
    ch = parse_channel(obj.get("channel", {"bsc": 0.11}))
    ns = obj.get("n", [4, 6, 8, 10])
    ns = [int(ns)] if isinstance(ns, (int, float)) else [int(v) for v in ns]
    prior = ProbVector.from_weights(obj["prior"]) if "prior" in obj else None
    return {
        "channel": ch,
        "ns": ns,
        "M": obj.get("M"),
        "rate": obj["rate_bits"] * LOG2 if "rate_bits" in obj else None,
        "prior": prior,
        "alphas": tuple(str(a) for a in obj.get("alphas", [1])),
        "trials": int(obj.get("trials", 200)),
        "seed": int(obj.get("seed", 0)),
        "fit": bool(obj.get("fit", False)),
    }


def cmd_ensemble(args, out):
    conf = load_ensemble_config(args.config)
    if conf["M"] is None and conf["rate"] is None:
        raise ValidationError('config needs "M" or "rate_bits"')
    results = []
    for n in conf["ns"]:
        M = int(conf["M"]) if conf["M"] is not None else messages_for_rate(n, conf["rate"])
        cfg = EnsembleConfig(n, M, conf["channel"], conf["prior"], conf["alphas"], conf["trials"], conf["seed"])
        results.append(ensemble_average(cfg))
    text = results_csv(results)
    if args.output:
        Path(args.output).write_text(text, newline="")
    else:
        out.write(text)
    if conf["fit"] and conf["rate"] is not None:
        for a in conf["alphas"]:
            fit = exponent_fit(conf["channel"], conf["rate"], conf["ns"], a, conf["trials"], conf["seed"], conf["prior"])
            sys.stderr.write(
                f"alpha={a} slope={fit.slope / LOG2:.4f}+-{fit.slope_stderr / LOG2:.4f} bits "
                f"band=[{fit.floor / LOG2:.4f}, {fit.ceiling / LOG2:.4f}] inside={fit.within_band()}\n"
            )
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="renyibounds", description=__doc__.splitlines()[0])
    p.add_argument("--nats", action="store_true", help="report entropies and rates in nats (default bits)")
    sub = p.add_subparsers(dest="command", required=True)

    def joint_args(sp):
        sp.add_argument("input", nargs="?", help="joint pmf as JSON or CSV")
        sp.add_argument("--example", choices=["tables", "negative-order", "binary"], help="use a built-in joint")
        sp.add_argument("--alpha", action="append", help="order (repeatable; accepts inf, -inf, a/b)")

    joint_args(sub.add_parser("measure", help="entropies and MAP error of a joint pmf"))
    joint_args(sub.add_parser("bounds", help="every applicable bound on a joint pmf"))
    t = sub.add_parser("tables", help="lower/upper bound tables for the 3x3 example")
    t.add_argument("--check", action="store_true", help="compare with the embedded reference values")
    f = sub.add_parser("fig", help="figure data as CSV")
    f.add_argument("which", type=int, choices=[1, 2, 3])
    f.add_argument("--output", "-o")
    e = sub.add_parser("exponents", help="cutoff/critical rates, capacity and R_alpha")
    e.add_argument("--delta", type=float, default=0.110)
    e.add_argument("--channel", help='JSON channel, {"bsc": d} or {"matrix": [[...]]}')
    e.add_argument("--alpha", action="append")
    e.add_argument("--output", "-o")
    s = sub.add_parser("ensemble", help="random-coding ensemble averages as CSV")
    s.add_argument("config", help="JSON config file")
    s.add_argument("--output", "-o")
    for sp in (t, f, e, s):
        sp.add_argument("--nats", action="store_true", default=argparse.SUPPRESS)
    for name in ("measure", "bounds"):
        sub.choices[name].add_argument("--nats", action="store_true", default=argparse.SUPPRESS)
    return p


COMMANDS = {
    "measure": cmd_measure,
    "bounds": cmd_bounds,
    "tables": cmd_tables,
    "fig": cmd_fig,
    "exponents": cmd_exponents,
    "ensemble": cmd_ensemble,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except BudgetError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BUDGET
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except (ValidationError, OSError, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

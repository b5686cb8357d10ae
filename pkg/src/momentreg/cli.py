"""Command-line interface: ``momentreg {gen,fit,predict,spectrum,eval}``.

Data goes to files only; diagnostics go to standard error.  Exit status is
0 on success, 1 on a runtime error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import math
import sys

import numpy as np

from . import io
from .basis import BasisSpec, Family
from .exceptions import MomentRegError, SpanError
from .moments import Normalization, dataset_moments, MomentVector
from .regression import Estimator, fit, predict_ls, predict_rn, predict_from_distribution
from .spectrum import outcome_distribution, spectral_decompose
from .synthetic import ExperimentConfig, Target, generate

GRID_DEFAULT = (-1.1, 1.1, 221)


def _note(message):
    print(f"momentreg: {message}", file=sys.stderr)


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _finite_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite, got {text!r}")
    return value


def _nonneg_float(text):
    value = _finite_float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _positive_float(text):
    value = _finite_float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return value


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must lie in [0, 2**64)")
    return value


def _fmt(value):
    return "" if value is None else repr(float(value))


def _write_csv(path, header, rows):
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    io._atomic_write(path, buf.getvalue())


def _grid(args):
    return np.linspace(args.lo, args.hi, args.count)


def _report_extrapolation(model, xs):
    outside = sum(not model.basis.contains(x) for x in xs)
    if outside:
        a, b = model.basis.domain
        _note(f"extrapolation: {outside} of {len(xs)} grid points lie outside "
              f"the basis domain [{a!r}, {b!r}]")


def cmd_gen(args):
    config = ExperimentConfig(args.target, args.N, args.M, args.R, args.seed,
                              (args.x_lo, args.x_hi))
    dataset = generate(config)
    io.save_dataset(dataset, args.out)
    _note(f"wrote {len(dataset)} bags to {args.out}")


def cmd_fit(args):
    dataset = io.load_dataset(args.input)
    basis = None
    if args.domain is not None:
        basis = BasisSpec(args.basis, args.dx, tuple(args.domain))
    model = fit(dataset, basis, args.mode, degree_count=args.dx, family=args.basis)
    io.save_model(model, args.out)
    factor = model.factor
    a, b = model.basis.domain
    _note(f"fitted {model.bag_count} bags, basis {model.basis.family.value} "
          f"d_x={model.degree_count} on [{a!r}, {b!r}], mode {model.mode.value}")
    _note(f"degeneracy_flag={str(model.degeneracy_flag).lower()} "
          f"rank={factor.rank}/{model.degree_count} condition={factor.condition:.6g}")


def _safe(fn, *args):
    try:
        return fn(*args)
    except SpanError:
        return None


def cmd_predict(args):
    model = io.load_model(args.model)
    xs = _grid(args)
    _report_extrapolation(model, xs)
    rows = []
    failures = 0
    for x in xs:
        m = model.point_state(x, args.reference_size)
        ls = _safe(predict_ls, model, m)
        rn = _safe(predict_rn, model, m)
        failures += (ls is None) + (rn is None)
        rows.append([_fmt(x), _fmt(ls), _fmt(rn)])
    _write_csv(args.out, ["x", "a_ls", "a_rn"], rows)
    if model.degeneracy_flag:
        _note("warning: G is degenerate; predictions use its truncated pseudo-inverse")
    if failures:
        _note(f"warning: {failures} estimates left empty (state outside model span)")


def cmd_spectrum(args):
    model = io.load_model(args.model)
    spectral = spectral_decompose(model)
    xs = _grid(args)
    _report_extrapolation(model, xs)
    _write_csv(args.outcomes, ["i", "y_i"],
               [[i, _fmt(y)] for i, y in enumerate(spectral.outcomes)])
    header = ["x"] + [f"P_{i}" for i in range(spectral.d_eff)]
    prob_rows, proj_rows = [], []
    failures = 0
    for x in xs:
        dist = _safe(outcome_distribution, spectral, model.point_state(x, args.reference_size))
        if dist is None:
            failures += 1
            prob_rows.append([_fmt(x)] + [""] * spectral.d_eff)
            proj_rows.append([_fmt(x)] + [""] * spectral.d_eff)
            continue
        prob_rows.append([_fmt(x)] + [_fmt(p) for p in dist.probabilities])
        proj_rows.append([_fmt(x)] + [_fmt(s) for s in dist.projections])
    _write_csv(args.probabilities, header, prob_rows)
    if args.projections:
        _write_csv(args.projections, ["x"] + [f"s_{i}" for i in range(spectral.d_eff)],
                   proj_rows)
    if spectral.truncated:
        _note(f"warning: G truncated, {spectral.d_eff} of {model.degree_count} modes kept")
    if failures:
        _note(f"warning: {failures} grid rows left empty (state outside model span)")


def _check_dataset_basis(dataset, model):
    declared = dataset.meta.get("basis") if isinstance(dataset.meta, dict) else None
    if declared is None:
        return
    try:
        basis = BasisSpec.from_dict(declared)
    except (KeyError, TypeError, ValueError, MomentRegError):
        raise MomentRegError(f"dataset declares an unreadable basis {declared!r}") from None
    if basis != model.basis:
        raise MomentRegError(
            f"dataset basis {basis.to_dict()} does not match model basis "
            f"{model.basis.to_dict()}")


def cmd_eval(args):
    model = io.load_model(args.model)
    dataset = io.load_dataset(args.data)
    _check_dataset_basis(dataset, model)
    moments = dataset_moments(dataset, model.basis, model.mode)
    errors = []
    failures = 0
    for row, bag in zip(moments, dataset):
        m = MomentVector(row, model.basis, model.mode)
        value = _safe(predict_from_distribution, model, m, args.estimator)
        if value is None:
            failures += 1
            continue
        errors.append(value - bag.label)
    errors = np.array(errors)
    report = {
        "estimator": Estimator(args.estimator).value,
        "bags": len(dataset),
        "evaluated": int(errors.size),
        "span_failures": failures,
        "rmse": float(np.sqrt(np.mean(errors ** 2))) if errors.size else None,
        "max_abs_error": float(np.abs(errors).max()) if errors.size else None,
    }
    io._atomic_write(args.out, json.dumps(report, indent=2, sort_keys=True) + "\n")
    _note(f"{report['estimator']}: RMSE={report['rmse']!r} "
          f"max_abs_error={report['max_abs_error']!r} over {report['evaluated']} bags")
    if failures:
        _note(f"warning: {failures} bags outside model span were skipped")


def _add_grid(parser):
    lo, hi, count = GRID_DEFAULT
    parser.add_argument("--lo", type=_finite_float, default=lo)
    parser.add_argument("--hi", type=_finite_float, default=hi)
    parser.add_argument("--count", type=_positive_int, default=count)
    parser.add_argument("--reference-size", type=_positive_float, default=None,
                        help="bag size N for raw_sum point states (default: mean bag size)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="momentreg",
        description="One-step distribution regression on polynomial bag moments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a synthetic bag dataset")
    p.add_argument("--target", choices=[t.value for t in Target], required=True)
    p.add_argument("--N", type=_positive_int, required=True, help="observations per bag")
    p.add_argument("--M", type=_positive_int, required=True, help="number of bags")
    p.add_argument("--R", type=_nonneg_float, required=True, help="noise half-width")
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--x-lo", type=_finite_float, default=-1.0)
    p.add_argument("--x-hi", type=_finite_float, default=1.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("fit", help="fit a model file from a dataset file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--dx", type=_positive_int, required=True)
    p.add_argument("--basis", choices=[f.value for f in Family], default="chebyshev")
    p.add_argument("--mode", choices=[m.value for m in Normalization],
                   default="size_normalized")
    p.add_argument("--domain", nargs=2, type=_finite_float, metavar=("A", "B"),
                   help="basis domain (default: observed data range)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("predict", help="evaluate A_LS and A_RN on a grid")
    p.add_argument("--model", required=True)
    _add_grid(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("spectrum", help="outcomes and their probabilities on a grid")
    p.add_argument("--model", required=True)
    _add_grid(p)
    p.add_argument("--outcomes", required=True, help="CSV of i,y_i")
    p.add_argument("--probabilities", required=True, help="CSV of x,P_0,...")
    p.add_argument("--projections", help="optional CSV of signed projections x,s_0,...")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("eval", help="bag-level error report of a model on a dataset")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--estimator", choices=[e.value for e in Estimator], default="rn")
    p.add_argument("--out", required=True, help="JSON report path")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "count"):
        if not args.lo < args.hi:
            parser.error("--lo must be smaller than --hi")
        if args.count < 2:
            parser.error("--count must be at least 2")
    if args.command == "fit" and args.domain is not None and not args.domain[0] < args.domain[1]:
        parser.error("--domain A B needs A < B")
    if args.command == "gen" and not args.x_lo < args.x_hi:
        parser.error("--x-lo must be smaller than --x-hi")
    try:
        args.func(args)
    except (MomentRegError, OSError) as exc:
        _note(f"error: {exc}")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

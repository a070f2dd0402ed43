"""Command-line entry point.

Exit codes: 0 success, 2 stalled decode, 3 invalid parameters, 4 corrupt input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds as bd
from .codec import decode_paths, encode_file
from .constructions import make_spec, reconstruction_size, validate
from .encoder import projection_length
from .errors import CapacityError, CorruptionError, ParameterError, StructuralError
from .overhead import overhead_exact
from .simulate import ErasureModel, SimulationConfig, results_csv, simulate
from .symbols import Construction, Direction
from .verify import SuiteConfig, run_suite, verify_spec

EXIT_OK, EXIT_STALLED, EXIT_PARAMS, EXIT_CORRUPT = 0, 2, 3, 4
DEFAULT_RATES = ("5/6", "3/4", "1/2")


def _parse_dirs(text: str) -> list[Direction]:
    """``"-1,1;1,0;1,1"`` -> directions."""
    out = []
    for chunk in text.split(";"):
        p, q = chunk.split(",")
        out.append(Direction(int(p), int(q)))
    return out


def _spec_from_args(args):
    if args.dirs:
        dirs = _parse_dirs(args.dirs)
        return make_spec(Construction.CUSTOM, len(dirs), args.k, args.b, args.width, directions=dirs)
    if args.n is None:
        raise ParameterError("--n is required unless --dirs is given")
    construction = Construction.parse(args.construction)
    q_e = args.qe if construction is Construction.C35 else 0
    return make_spec(construction, args.n, args.k, args.b, args.width, q_e=q_e)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _add_code_args(p: argparse.ArgumentParser, width_default: int = 1) -> None:
    p.add_argument("--construction", choices=["c33", "c35"], default="c33")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--qe", type=int, default=2, help="q_e for c35 (even)")
    p.add_argument("--width", type=int, default=width_default, help="symbol width in bytes")
    p.add_argument("--dirs", help='explicit directions, e.g. --dirs="-1,1;1,0;1,1"')


def cmd_gen_params(args) -> int:
    spec = _spec_from_args(args)
    s = reconstruction_size(spec)
    findings = validate(spec)
    doc = {
        "construction": spec.construction.name,
        "n": spec.n,
        "k": spec.k,
        "b": spec.b,
        "q_e": spec.q_e,
        "width": spec.width,
        "sigma": spec.sigma,
        "directions": [
            {"index": i, "p": d.p, "q": d.q, "length": projection_length(d, spec.b, spec.k)}
            for i, d in enumerate(spec.directions)
        ],
        "reconstruction_size": s,
        "findings": [f.as_dict() for f in findings],
    }
    lengths = spec.projection_lengths()
    doc["b_prime_avg"] = str(Fraction(sum(lengths), spec.n))
    if s <= spec.n:
        doc["overhead"] = overhead_exact(spec).as_dict()
        doc["katz_minimal_survivors"] = not any(f.code == "katz-unsatisfied" for f in findings)
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_encode(args) -> int:
    spec = _spec_from_args(args)
    manifest = encode_file(Path(args.input), spec, Path(args.out))
    print(f"wrote {len(manifest['projections'])} projections to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_decode(args) -> int:
    outcome = decode_paths(args.inputs)
    report = outcome.report
    doc = {
        "status": report.status.value,
        "resolved": report.resolved_count,
        "residual_unresolved": report.residual_unresolved,
        "peel_steps": len(report.peel_trace),
        "katz": outcome.katz,
        "projections_used": sorted({s.projection for s in report.peel_trace}),
    }
    if report.success:
        Path(args.out).write_bytes(outcome.payload)
    text = json.dumps(doc, indent=2) + "\n"
    if args.report:
        Path(args.report).write_text(text)
    else:
        sys.stderr.write(text)
    return EXIT_OK if report.success else EXIT_STALLED


def cmd_simulate(args) -> int:
    spec = _spec_from_args(args)
    config = SimulationConfig(
        erasures=args.erasures, trials=args.trials, seed=args.seed, model=ErasureModel(args.model)
    )
    _emit(results_csv(spec, config, simulate(spec, config)), args.out)
    return EXIT_OK


def _rates(values: list[str] | None, default) -> list[Fraction]:
    return [Fraction(v) for v in (values or default)]


def bounds_csv(rates, b, q_e, ks, sigma, cap) -> str:
    buf = io.StringIO()
    buf.write(f"# b={b} q_e={q_e} classical_sigma={sigma} cap={cap}\n")
    rows_by_rate = {}
    for r in rates:
        rows = bd.bounds_table(r, b, q_e, ks, sigma_classical=sigma, cap=cap)
        rows_by_rate[r] = rows
        buf.write(
            f"# rate={r} classical_below_from_k={bd.crossover(rows, 'classical-below')} "
            f"amds_meets_from_k={bd.crossover(rows, 'amds-meets')}\n"
        )
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([
        "rate", "k", "required_n", "classical_bound", "amds_bound", "amds_counting_bound",
        "classical_applicable", "amds_applicable", "classical_meets", "amds_meets",
    ])
    for r, rows in rows_by_rate.items():
        for row in rows:
            c_ok, a_ok = bd.row_flags(row)
            writer.writerow([
                str(r), row.k, row.required_n, row.classical.value, row.amds.value, row.amds_counting.value,
                int(row.classical.status is not bd.BoundStatus.INAPPLICABLE),
                int(row.amds.status is not bd.BoundStatus.INAPPLICABLE),
                int(c_ok), int(a_ok),
            ])
    return buf.getvalue()


def min_rate_csv(rates, b, q_e, ks, sigma, cap) -> str:
    buf = io.StringIO()
    buf.write(f"# b={b} q_e={q_e} classical_sigma={sigma} cap={cap}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "assumed_rate", "classical_min_rate", "amds_min_rate"])

    def fmt(x):
        return "INAPPLICABLE" if x is None else f"{float(x):.6f}"

    ks = list(ks)
    for r in rates:
        classical = bd.min_rate_curve(b, ks, bd.CodeFamily.CLASSICAL, r, sigma=sigma, cap=cap)
        amds = bd.min_rate_curve(b, ks, bd.CodeFamily.C35, r, q_e=q_e, cap=cap)
        for (k, c), (_, a) in zip(classical, amds):
            writer.writerow([k, str(r), fmt(c), fmt(a)])
    return buf.getvalue()


def cmd_bounds(args) -> int:
    if args.qe < 2 or args.qe % 2:
        raise ParameterError(f"q_e must be even and >= 2, got {args.qe}")
    ks = range(args.k_min, args.k_max + 1, args.k_step)
    if args.min_rate:
        default = [f"{i}/20" for i in range(1, 20)]
        text = min_rate_csv(_rates(args.rate, default), args.b, args.qe, ks, args.sigma, args.cap)
    else:
        text = bounds_csv(_rates(args.rate, DEFAULT_RATES), args.b, args.qe, ks, args.sigma, args.cap)
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.n is not None or args.dirs:
        findings = verify_spec(_spec_from_args(args))
        timings = {}
    else:
        findings, timings = run_suite(SuiteConfig())
    doc = {
        "pass": not findings,
        "findings": [f.as_dict() for f in findings],
        "timings_s": {k: round(v, 3) for k, v in timings.items()},
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK if not findings else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mojette-bpxor", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-params", help="directions, lengths, sigma and overheads for a code")
    _add_code_args(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_params)

    p = sub.add_parser("encode", help="encode a file into projection containers")
    _add_code_args(p, width_default=32)
    p.add_argument("input")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="rebuild a file from surviving containers")
    p.add_argument("inputs", nargs="+", help="container directory or container files")
    p.add_argument("--out", required=True, help="reconstructed file")
    p.add_argument("--report", help="write the decode report here instead of stderr")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="random column erasures, CSV of decode outcomes")
    _add_code_args(p)
    p.add_argument("--erasures", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--model", choices=[m.value for m in ErasureModel], default=ErasureModel.UNIFORM.value)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bounds", help="block-length bound tables as CSV")
    p.add_argument("--rate", action="append", help="rate as a fraction, repeatable")
    p.add_argument("--b", type=int, default=10000)
    p.add_argument("--qe", type=int, default=2)
    p.add_argument("--k-min", type=int, default=3)
    p.add_argument("--k-max", type=int, default=300)
    p.add_argument("--k-step", type=int, default=1)
    p.add_argument("--sigma", type=int, default=3, help="degree assumed for the classical bound")
    p.add_argument("--cap", type=int, default=bd.DEFAULT_CAP)
    p.add_argument("--min-rate", action="store_true", help="emit minimum rate versus assumed rate instead")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="run the oracle suite, or check one code exhaustively")
    _add_code_args_optional(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def _add_code_args_optional(p: argparse.ArgumentParser) -> None:
    p.add_argument("--construction", choices=["c33", "c35"], default="c33")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--qe", type=int, default=2)
    p.add_argument("--width", type=int, default=1)
    p.add_argument("--dirs")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CorruptionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CORRUPT
    except (ParameterError, CapacityError, StructuralError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS


if __name__ == "__main__":
    sys.exit(main())

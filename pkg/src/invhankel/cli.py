"""``invhankel`` command line.

Exit codes: 0 success, 1 a verification check failed, 2 invalid arguments,
3 an output file could not be written.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import logging
import re
import sys
from typing import Sequence

from . import __version__
from .caratheodory import SAMPLING_MODES
from .classes import NORMALIZER, ClassCoeffs, h3, inverse_coeffs
from .objectives import OBJECTIVES, build, dump_monomials
from .optimizer import BoxMaxResult, maximize_on_box
from .verification import (
    MIN_GRID_N,
    VerifyConfig,
    bound_for,
    sample_class,
    verify_class,
    write_samples_csv,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

_CLASS_ARG = {"r": "R", "r1": "R1"}
_NUMBER = re.compile(r"^-(\d|\.\d)")

log = logging.getLogger("invhankel")


class UsageError(Exception):
    pass


def _grid_n(text: str) -> int:
    n = int(text)
    if n < MIN_GRID_N:
        raise argparse.ArgumentTypeError(f"must be at least {MIN_GRID_N}")
    return n


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def _positive_float(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def parse_complex(token: str) -> complex:
    """``re`` or ``re,im``."""
    parts = token.split(",")
    if len(parts) > 2 or not all(p.strip() for p in parts):
        raise ValueError(f"malformed coefficient {token!r}; use 're' or 're,im'")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise ValueError(f"malformed coefficient {token!r}; use 're' or 're,im'") from None
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="invhankel",
        description="Third Hankel determinant of inverse functions: bound verification tools.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def output_opts(p, formats):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")

    def sampling_opts(p, n_default):
        p.add_argument("--n", type=_positive_int, default=n_default, help="number of samples")
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--mode", choices=SAMPLING_MODES, default="boundary-biased")
        p.add_argument("--tol", type=_positive_float, default=1e-10)

    p = sub.add_parser("verify", help="reproduce one of the two bounds end to end")
    p.add_argument("class_id", choices=sorted(_CLASS_ARG))
    p.add_argument("--grid-n", type=_grid_n, default=128)
    sampling_opts(p, 10**6)
    p.add_argument("--consistency-n", type=_positive_int, default=10**4)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--samples-csv", metavar="PATH", help="also write per-sample rows")
    output_opts(p, ("json", "text"))

    p = sub.add_parser("max-objective", help="global maximum of a branch objective on [0,1]^2")
    p.add_argument("which", choices=OBJECTIVES)
    p.add_argument("--grid-n", type=_grid_n, default=128)
    p.add_argument("--tol", type=_positive_float, default=1e-10)
    p.add_argument("--dump-monomials", metavar="PATH", help="write i,j,coeff rows to PATH")
    output_opts(p, ("text", "json", "csv"))

    p = sub.add_parser("hankel", help="H_3(1) of given coefficients a_2..a_5")
    p.add_argument("coeffs", nargs="+", metavar="A", help="'re' or 're,im'")
    p.add_argument("--of-inverse", action="store_true",
                   help="treat the input as coefficients of f and evaluate for f^{-1}")
    output_opts(p, ("text", "json"))

    p = sub.add_parser("sample", help="Monte Carlo search over Schur parameters")
    p.add_argument("class_id", choices=sorted(_CLASS_ARG))
    sampling_opts(p, 10**6)
    p.add_argument("--workers", type=_positive_int, default=1)
    output_opts(p, ("json", "text", "csv"))
    return ap


def _preprocess(argv: list[str]) -> list[str]:
    # negative numbers like "-0.5,1" would otherwise be read as options
    if not argv or "hankel" not in argv or "--" in argv:
        return argv
    k = argv.index("hankel")
    head, rest = argv[: k + 1], argv[k + 1:]
    opts, nums = [], []
    i = 0
    while i < len(rest):
        tok = rest[i]
        if tok in ("--format", "--out") and i + 1 < len(rest):
            opts += rest[i: i + 2]
            i += 2
            continue
        (nums if _NUMBER.match(tok) or not tok.startswith("-") else opts).append(tok)
        i += 1
    return head + opts + ["--"] + nums


# --------------------------------------------------------------------------
# rendering


def _fmt_point(s: float, u: float) -> str:
    return f"({s:.10g}, {u:.10g})"


def render_box_text(name: str, res: BoxMaxResult) -> str:
    lines = [f"objective {name} on [0,1]^2"]
    sections = (("I", "vertices", "vertex"), ("II", "edges", "edge"), ("III", "interior", "interior"))
    for label, title, kind in sections:
        lines.append(f"{label}. {title}")
        rows = [c for c in res.all_candidates if c.kind == kind]
        if not rows:
            lines.append("   (no critical points)")
        for c in rows:
            tag = f"{c.where:<4} " if c.where else ""
            lines.append(f"   {tag}{_fmt_point(c.s, c.u):<34} value {c.value:.10f}  residual {c.residual:.2e}")
    exact = f" (exact {res.exact_max})" if res.exact_max is not None else ""
    lines.append(f"max {res.max_value:.10f}{exact} at {_fmt_point(*res.argmax)} [{res.argmax_kind}]")
    return "\n".join(lines) + "\n"


def render_box_csv(res: BoxMaxResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "where", "s", "u", "value", "residual"])
    for c in res.all_candidates:
        w.writerow([c.kind, c.where, repr(c.s), repr(c.u), repr(c.value), repr(c.residual)])
    return buf.getvalue()


def render_report_text(d: dict) -> str:
    b = d["bound"]
    s = d["sampling"]
    lines = [
        f"class {d['class']}  normalizer {d['normalizer']}",
        f"bound |H_3(1)(f^-1)| <= {b['num']}/{b['den']} = {d['bound_float']:.15g}",
    ]
    for name, m in d["branch_maxima"].items():
        lines.append(f"  max {name} = {m['max_value']:.10f} at ({m['argmax'][0]:.6g}, "
                     f"{m['argmax'][1]:.6g}) [{m['argmax_kind']}]")
    lines += [
        f"extremal |H_3| = {d['extremal_value']:.15g}",
        f"sampling n={s['n']} seed={s['seed']} mode={s['mode']}: sup {s['sup']:.15g}, "
        f"violations {s['violations']}",
        f"consistency max relative error {d['consistency_max_err']:.3e}",
    ]
    for name, ok in d["checks"].items():
        lines.append(f"  [{'ok' if ok else 'FAIL'}] {name}")
    lines.append("PASSED" if d["passed"] else "FAILED")
    return "\n".join(lines) + "\n"


@contextlib.contextmanager
def _sink(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _emit(text: str, path: str | None) -> None:
    with _sink(path) as fh:
        fh.write(text)


# --------------------------------------------------------------------------
# commands


def cmd_verify(args) -> int:
    class_id = _CLASS_ARG[args.class_id]
    config = VerifyConfig(grid_n=args.grid_n, n_samples=args.n, seed=args.seed, tol=args.tol,
                          mode=args.mode, consistency_n=args.consistency_n,
                          workers=args.workers)
    try:
        config.validate()
    except ValueError as e:
        raise UsageError(str(e)) from None
    report = verify_class(class_id, config)
    if args.format == "json":
        _emit(report.to_json(), args.out)
    else:
        _emit(render_report_text(report.to_dict()), args.out)
    if args.samples_csv:
        with _sink(args.samples_csv) as fh:
            write_samples_csv(fh, class_id, args.n, args.seed, args.mode)
    if not report.passed:
        log.error("failed checks: %s", ", ".join(report.failed_checks))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_max_objective(args) -> int:
    p = build(args.which)
    res = maximize_on_box(p, args.grid_n, args.tol)
    if args.format == "json":
        text = json.dumps({"objective": args.which, **res.to_dict()}, indent=2) + "\n"
    elif args.format == "csv":
        text = render_box_csv(res)
    else:
        text = render_box_text(args.which, res)
    _emit(text, args.out)
    if args.dump_monomials:
        with _sink(args.dump_monomials) as fh:
            dump_monomials(p, fh)
    return EXIT_OK


def cmd_hankel(args) -> int:
    if len(args.coeffs) != 4:
        raise UsageError(f"expected 4 coefficients a_2..a_5, got {len(args.coeffs)}")
    try:
        a = [parse_complex(tok) for tok in args.coeffs]
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.of_inverse:
        a = list(inverse_coeffs(ClassCoeffs(*a)))
    value = complex(h3(*a))
    if args.format == "json":
        text = json.dumps({"coeffs": [[x.real, x.imag] for x in a],
                           "h3": [value.real, value.imag], "abs": abs(value)}, indent=2) + "\n"
    else:
        text = f"H_3(1) = {value.real:.15g}{value.imag:+.15g}j\n|H_3(1)| = {abs(value):.15g}\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    class_id = _CLASS_ARG[args.class_id]
    if args.format == "csv":
        with _sink(args.out) as fh:
            write_samples_csv(fh, class_id, args.n, args.seed, args.mode)
        return EXIT_OK
    bound = bound_for(class_id)
    summ = sample_class(class_id, args.n, args.seed, args.mode, args.tol, float(bound),
                        workers=args.workers)
    d = {
        "class": class_id,
        "normalizer": NORMALIZER[class_id],
        "bound": {"num": bound.numerator, "den": bound.denominator},
        "sampling": summ.to_dict(),
        "passed": summ.violations == 0,
    }
    if args.format == "json":
        text = json.dumps(d, indent=2) + "\n"
    else:
        text = (f"class {class_id}: {summ.n_samples} samples (seed {summ.seed}, {summ.mode})\n"
                f"sup |H_3| = {summ.sup_abs_h3:.15g}  bound {bound} = {float(bound):.15g}\n"
                f"violations {summ.violations}\n")
    _emit(text, args.out)
    return EXIT_OK if d["passed"] else EXIT_FAIL


COMMANDS = {
    "verify": cmd_verify,
    "max-objective": cmd_max_objective,
    "hankel": cmd_hankel,
    "sample": cmd_sample,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = _preprocess(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"invhankel: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"invhankel: I/O error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

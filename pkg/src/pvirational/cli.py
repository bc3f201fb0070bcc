"""Command line: ``pvi-rational {generate,verify,examples,scan}``.

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .exactnum import Field, Scalar
from .painleve import (
    CHECK_NAMES,
    FamilyParams,
    PainleveError,
    PreconditionError,
    PviParams,
    Theorem2Params,
    VerificationError,
    build_family,
    external_verify,
    quadratic_residual,
    theorem2_y,
)
from .hypergeom import HypergeometricError
from .polyrat import format_poly
from .parser import ParseError, parse_ratfunc_expr, parse_scalar
from .registry import REGISTRY
from .serialize import dumps, format_latex, format_plain, record_to_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FAMILY_PARAMS = {
    "y1": ("k", "mu", "s"),
    "y2": ("k", "mu", "s"),
    "y3": ("k", "mu", "s"),
    "y4": ("k", "mu", "s"),
    "thm2": ("n", "r"),
}

_VALUE_FLAGS = {
    "--k", "--mu", "--s", "--n", "--r", "--y",
    "--alpha", "--beta", "--gamma", "--delta",
    "--quadratic-beta", "--quadratic-gamma",
}


class UsageError(Exception):
    pass


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--k -4..4`` into ``--k=-4..4`` so argparse does not read it as a flag."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _scalar(text: str, field: Field) -> Scalar:
    try:
        return parse_scalar(text, field)
    except ParseError as exc:
        raise UsageError(str(exc)) from exc


def _build(family: str, values: dict[str, Scalar], field: Field):
    if family == "thm2":
        return theorem2_y(Theorem2Params(values["n"], values["r"]), field=field)
    return build_family(family, FamilyParams(values["k"], values["mu"], values["s"]), field=field)


# ---------------------------------------------------------------- generate


def cmd_generate(args: argparse.Namespace) -> int:
    field = args.field
    names = FAMILY_PARAMS[args.family]
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--family {args.family} needs " + ", ".join(f"--{n}" for n in missing))
    values = {n: _scalar(getattr(args, n), field) for n in names}
    try:
        rec = _build(args.family, values, field)
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (PainleveError, HypergeometricError) as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        print(dumps(rec))
    elif args.format == "latex":
        print(format_latex(rec))
    else:
        print(format_plain(rec))
    return EXIT_OK if rec.passed else EXIT_FAIL


# ---------------------------------------------------------------- verify


def cmd_verify(args: argparse.Namespace) -> int:
    field = args.field
    try:
        y = parse_ratfunc_expr(args.y, field)
    except (ParseError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from exc
    p = PviParams(*(_scalar(getattr(args, n), field) for n in ("alpha", "beta", "gamma", "delta")))
    try:
        rec = external_verify(y, p, field=field)
    except PreconditionError as exc:
        raise UsageError(f"{exc}; y is outside the domain of P_VI") from exc
    ok = bool(rec.checks["pvi_residual_zero"])
    print(f"y = {y}")
    print(f"P_VI({', '.join(field.format(v) for v in p.as_tuple())}): {'PASS' if ok else 'FAIL'}")
    print(f"y identically zero: {str(rec.y_is_zero).lower()}")
    if (args.quadratic_beta is None) != (args.quadratic_gamma is None):
        raise UsageError("--quadratic-beta and --quadratic-gamma go together")
    if args.quadratic_beta is not None:
        qb = _scalar(args.quadratic_beta, field)
        qg = _scalar(args.quadratic_gamma, field)
        qok = quadratic_residual(y, qb, qg).is_zero()
        print(f"quadratic first-order equation (beta={field.format(qb)}, gamma={field.format(qg)}): "
              f"{'PASS' if qok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- examples


def cmd_examples(args: argparse.Namespace) -> int:
    names = [args.name] if args.name else list(REGISTRY)
    all_ok = True
    width = max(len(n) for n in names)
    for name in names:
        entry = REGISTRY[name]
        try:
            diffs = entry.run()
        except Exception as exc:  # a broken builder is reported, not raised
            diffs = [("<exception>", "", f"{type(exc).__name__}: {exc}")]
        status = "PASS" if not diffs else "FAIL"
        all_ok &= not diffs
        print(f"{name:<{width}}  {status}  {entry.description}")
        for key, want, got in diffs:
            print(f"    {key}: expected {want!r}, got {got!r}")
    return EXIT_OK if all_ok else EXIT_FAIL


# ---------------------------------------------------------------- scan


def parse_grid(text: str, field: Field) -> list[Scalar]:
    """``1..5`` (step 1, inclusive), ``1/2,1/3,2`` or a mix of both."""
    values: list[Scalar] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            raise UsageError(f"empty item in grid {text!r}")
        if ".." in item:
            lo_s, hi_s = item.split("..", 1)
            lo, hi = _scalar(lo_s, field), _scalar(hi_s, field)
            diff = hi - lo
            if field.d is not None and diff.surd != 0:
                raise UsageError(f"range {item!r} endpoints differ by an irrational amount")
            v = lo
            while not _lt(hi, v):
                values.append(v)
                v = v + 1
        else:
            values.append(_scalar(item, field))
    return values


def _lt(a: Scalar, b: Scalar) -> bool:
    d = b - a
    q = d.rat if hasattr(d, "surd") else d
    return q > 0


def _scan_point(task: tuple[str, tuple[str, ...], tuple[Scalar, ...], Field]) -> dict:
    family, names, values, field = task
    row: dict = {"family": family}
    row.update({n: field.format(v) for n, v in zip(names, values)})
    base = {"status": "skipped", "representation": "failed",
            "alpha": "", "beta": "", "gamma": "", "delta": "", "y": ""}
    base.update({c: None for c in CHECK_NAMES})
    try:
        rec = _build(family, dict(zip(names, values)), field)
    except VerificationError as exc:
        row.update(base, status="failed", note=str(exc))
        return row
    except (PainleveError, HypergeometricError, ZeroDivisionError) as exc:
        row.update(base, note=str(exc))
        return row
    js = record_to_json(rec)
    row.update(
        status="ok",
        representation=rec.representation,
        **js["pvi"],
        y=f"({format_poly(rec.y.num, field)})/({format_poly(rec.y.den, field)})",
        **js["checks"],
        note="",
    )
    return row


def run_scan(family: str, grids: dict[str, list[Scalar]], field: Field, jobs: int = 1) -> list[dict]:
    names = FAMILY_PARAMS[family]
    tasks = [(family, names, combo, field) for combo in itertools.product(*(grids[n] for n in names))]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_scan_point, tasks))
    return [_scan_point(t) for t in tasks]


def _columns(family: str) -> list[str]:
    return (["family", *FAMILY_PARAMS[family], "status", "representation",
             "alpha", "beta", "gamma", "delta", *CHECK_NAMES, "y", "note"])


def render_scan(rows: list[dict], family: str, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_columns(family), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if v is None else str(v).lower() if isinstance(v, bool) else v)
                         for k, v in row.items()})
    return buf.getvalue()


def cmd_scan(args: argparse.Namespace) -> int:
    field = args.field
    names = FAMILY_PARAMS[args.family]
    grids = {}
    for n in names:
        text = getattr(args, n)
        if text is None:
            raise UsageError(f"--family {args.family} scan needs --{n}")
        grids[n] = parse_grid(text, field)
        if not grids[n]:
            raise UsageError(f"--{n} grid {text!r} is empty")
    rows = run_scan(args.family, grids, field, args.jobs)
    text = render_scan(rows, args.family, args.format)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(text)
    counts = {s: sum(r["status"] == s for r in rows) for s in ("ok", "skipped", "failed")}
    print(f"rows={len(rows)} ok={counts['ok']} skipped={counts['skipped']} failed={counts['failed']}",
          file=sys.stderr)
    return EXIT_FAIL if counts["failed"] else EXIT_OK


# ---------------------------------------------------------------- entry point


def _field_arg(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pvi-rational",
        description="Construct and exactly verify rational solutions of Painleve VI.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--field", type=_field_arg, default=Field(), help="rational (default) or quad:<d>")

    g = sub.add_parser("generate", help="build one solution and print its record")
    g.add_argument("--family", required=True, choices=list(FAMILY_PARAMS))
    for n in ("k", "mu", "s", "n", "r"):
        g.add_argument(f"--{n}")
    common(g)
    g.add_argument("--format", choices=("json", "latex", "plain"), default="json")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check a given y against P_VI")
    v.add_argument("--y", required=True, help="rational expression in x, e.g. 'x^2' or 'x*(x+1)/(2*x+7)'")
    for n in ("alpha", "beta", "gamma", "delta"):
        v.add_argument(f"--{n}", required=True)
    v.add_argument("--quadratic-beta")
    v.add_argument("--quadratic-gamma")
    common(v)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("examples", help="rebuild the worked examples and compare to golden values")
    e.add_argument("--name", choices=list(REGISTRY))
    e.set_defaults(func=cmd_examples)

    s = sub.add_parser("scan", help="sweep a parameter grid")
    s.add_argument("--family", required=True, choices=list(FAMILY_PARAMS))
    for n in ("k", "mu", "s", "n", "r"):
        s.add_argument(f"--{n}", help="range a..b or list p,q,...")
    s.add_argument("--out")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--jobs", type=int, default=1)
    common(s)
    s.set_defaults(func=cmd_scan)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

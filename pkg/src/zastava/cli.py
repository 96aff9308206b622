"""Command-line front end."""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Sequence

from . import charalg, demazure, jfun, suites, toda
from .errors import ZastavaError
from .exactalg import LaurentPoly, RationalCharacter, poly_to_json, rc_to_json, series_expand, to_text
from .rootdata import FoldingDatum, build_folding


def canonical_serialize(value, fmt: str = "text") -> str:
    """Byte-stable rendering of a public value."""
    if fmt == "json":
        return json.dumps(_to_json(value), indent=1) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(value, (LaurentPoly, RationalCharacter)):
        return to_text(value) + "\n"
    if isinstance(value, dict) and value and all(isinstance(v, (LaurentPoly, RationalCharacter)) for v in value.values()):
        return "".join(f"{k}: {to_text(v)}\n" for k, v in value.items())
    return json.dumps(_to_json(value), indent=1) + "\n"


def _to_json(value):
    if isinstance(value, LaurentPoly):
        return poly_to_json(value)
    if isinstance(value, RationalCharacter):
        return rc_to_json(value)
    if isinstance(value, FoldingDatum):
        return value.to_json()
    if isinstance(value, charalg.WeightedPresentation):
        return charalg.fixture_to_json(value)
    if isinstance(value, toda.DifferenceOperator):
        return toda.operator_to_json(value)
    if isinstance(value, toda.WhittakerTable):
        return {",".join(map(str, k)): rc_to_json(v) for k, v in sorted(value.entries.items())}
    if isinstance(value, dict):
        return {str(k): _to_json(v) for k, v in value.items()}
    if hasattr(value, "to_json"):
        return value.to_json()
    return value


def _vector(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _weight_key(mu) -> str:
    return ",".join(map(str, mu))


def cmd_fold(args) -> int:
    _emit(build_folding(args.type), args.format)
    return 0


def cmd_jfun(args) -> int:
    F = build_folding(args.type)
    J = jfun.compute_J(F, args.alpha)
    _emit(series_expand(J, args.series) if args.series is not None else J, args.format)
    return 0


def cmd_hilbert(args) -> int:
    P = charalg.load_fixture(args.fixture)
    if args.closed_form:
        _emit(charalg.hypersurface_series(P), args.format)
        return 0
    hf = charalg.graded_hilbert_function(P, args.degree)
    if args.format == "json":
        rows = [{"q": k, "z": list(mu), "dim": v} for (k, mu), v in sorted(hf.items())]
        sys.stdout.write(json.dumps(rows, indent=1) + "\n")
    else:
        _emit(charalg.hilbert_poly(hf, P.rank), "text")
    return 0


def cmd_demazure(args) -> int:
    F = build_folding(args.type)
    psi_hat = demazure.demazure_character(F, args.lam)
    _emit(demazure.global_weyl_character(F, psi_hat, args.lam) if args.glob else psi_hat, args.format)
    return 0


def cmd_toda(args) -> int:
    ops = [toda.load_operator(p) for p in args.op]
    if args.action == "solve":
        table = toda.solve_whittaker(ops, args.box)
        if args.format == "json":
            _emit(table, "json")
        else:
            _emit({_weight_key(k): v for k, v in sorted(table.entries.items())}, "text")
        return 0
    table = toda.solve_whittaker(ops, args.box + 1)
    report = toda.eigencheck(ops, table, args.box)
    if args.format == "json":
        _emit(report, "json")
    else:
        for lam in report.checked:
            status = "FAIL" if lam in report.failures else "ok"
            sys.stdout.write(f"{_weight_key(lam)}: {status}\n")
    if not report.passed:
        sys.stderr.write(f"first nonzero residual at {_weight_key(report.failures[0])}\n")
    return 0 if report.passed else 1


def cmd_verify(args) -> int:
    fn = suites.SUITES[args.suite]
    rep = fn(args.ops_dir) if args.suite == "corollary" else fn()
    if args.format == "json":
        _emit(rep, "json")
    else:
        if rep.note:
            sys.stdout.write(rep.note + "\n")
        for c in rep.checks:
            sys.stdout.write(f"{'PASS' if c.passed else 'FAIL'} {c.name}\n")
    bad = rep.first_failure
    if bad is not None:
        sys.stderr.write(f"first counterexample: {bad.name}: {bad.detail}\n")
        return 1
    return 0


def _emit(value, fmt: str) -> None:
    sys.stdout.write(canonical_serialize(value, fmt))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="zastava", description="Twisted zastava characters and q-Whittaker checks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("fold", parents=[common], help="print folding data")
    s.add_argument("--type", required=True)
    s.set_defaults(func=cmd_fold)

    s = sub.add_parser("jfun", parents=[common], help="J-function from the fermionic recurrence")
    s.add_argument("--type", required=True)
    s.add_argument("--alpha", type=_vector, required=True)
    s.add_argument("--series", type=int, default=None, help="expand to this q-degree")
    s.set_defaults(func=cmd_jfun)

    s = sub.add_parser("hilbert", parents=[common], help="character of a fixture ring")
    s.add_argument("--fixture", required=True, help="builtin name or JSON path")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--degree", type=int, default=10)
    g.add_argument("--closed-form", action="store_true")
    s.set_defaults(func=cmd_hilbert)

    s = sub.add_parser("demazure", parents=[common], help="level-one Demazure character")
    s.add_argument("--type", required=True)
    s.add_argument("--lambda", dest="lam", type=_vector, required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--hat", dest="glob", action="store_false", help="local character (default)")
    g.add_argument("--global", dest="glob", action="store_true", help="divide by the q-Pochhammer factors")
    s.set_defaults(func=cmd_demazure, glob=False)

    s = sub.add_parser("toda", parents=[common], help="lattice q-difference operators")
    s.add_argument("action", choices=("check", "solve"))
    s.add_argument("--op", action="append", required=True, help="operator JSON (repeatable) or a1_toda")
    s.add_argument("--box", type=int, required=True)
    s.set_defaults(func=cmd_toda)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("--suite", choices=tuple(suites.SUITES), required=True)
    s.add_argument("--ops-dir", default=None, help="directory of operator configs for the corollary suite")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ZastavaError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

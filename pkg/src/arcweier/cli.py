"""Command-line interface: ``python -m arcweier <command> ...``.

Exit codes: 0 success, 1 a verification check failed, 2 input could not be
parsed, 3 invalid parameters, 4 obstruction, 5 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra.field import Field
from .documents import parse_series_document
from .errors import BudgetExceeded, ContextError, InvalidPoint, NotAUnitError, Obstruction, OrderError, ParseError
from .geometry.arcs import jet_presentation, s_d_presentation, stratum_presentation
from .geometry.presentation import SchemePresentation
from .geometry.variety import SpecialCI, parse_variety
from .lifting import lift_stratum_point
from .verify.counting import DEFAULT_BUDGET, count_points
from .verify.models import golden_model
from .verify.report import render
from .verify.suite import run_suite

EXIT_OK, EXIT_CHECK_FAILED, EXIT_PARSE, EXIT_PARAM, EXIT_OBSTRUCTION, EXIT_BUDGET = 0, 1, 2, 3, 4, 5


class ParameterError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise ParameterError(f"cannot read {path}: {exc.strerror}") from None


def _load_variety(path: str):
    return parse_variety(_read(path))


def _load_presentation(path: str) -> SchemePresentation:
    text = _read(path)
    first = next((ln.split("#", 1)[0].strip() for ln in text.splitlines() if ln.split("#", 1)[0].strip()), "")
    if first.split()[:1] in (["ci"], ["affine"]):
        X = parse_variety(text)
        return X.as_presentation() if isinstance(X, SpecialCI) else X
    return SchemePresentation.from_text(text)


def _nonneg(name: str, value: int) -> int:
    if value < 0:
        raise ParameterError(f"{name} must be non-negative")
    return value


def cmd_jets(args) -> tuple[str, int]:
    X = _load_variety(args.variety)
    return jet_presentation(X, _nonneg("j", args.j)).to_text(), EXIT_OK


def cmd_stratum(args) -> tuple[str, int]:
    X = _load_variety(args.variety)
    if not isinstance(X, SpecialCI):
        raise ParameterError("arc strata need a special complete intersection ('ci' header)")
    return stratum_presentation(X, _nonneg("d", args.d)).to_text(), EXIT_OK


def cmd_model(args) -> tuple[str, int]:
    if args.d < 1:
        raise ParameterError("d must be >= 1")
    M = golden_model(args.d, Field.parse(args.field))
    return M.Y.to_text(), EXIT_OK


def cmd_sd(args) -> tuple[str, int]:
    if args.d < 1 or args.K < 0:
        raise ParameterError("need d >= 1 and K >= 0")
    return s_d_presentation(args.d, 1, args.K, Field.parse(args.field)).to_text(), EXIT_OK


def cmd_weierstrass(args) -> tuple[str, int]:
    from .weierstrass import weierstrass_divide, weierstrass_prepare

    doc = parse_series_document(_read(args.series))
    (f,) = doc.require("f")
    lines = [f"ring: {doc.ring_spec}", f"N: {doc.N}", f"f: {f}"]
    if args.mode == "div":
        (g,) = doc.require("g")
        res = weierstrass_divide(f, g)
        n = res.remainder.bound
        lines += [f"g: {g}", f"n: {n}", f"quotient: {res.quotient}", f"remainder: {res.remainder}",
                  f"certified: mod t^{res.precision}", f"identity: {str(res.check(f, g)).lower()}"]
    else:
        q, v = weierstrass_prepare(f)
        lines += [f"n: {q.degree}", f"q: {q}", f"v: {v}",
                  f"identity: {str(q.to_tps(doc.N, f.ring) * v == f).lower()}"]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_lift(args) -> tuple[str, int]:
    X = _load_variety(args.variety)
    if not isinstance(X, SpecialCI):
        raise ParameterError("lifting needs a special complete intersection ('ci' header)")
    doc = parse_series_document(_read(args.point), X.field)
    if doc.ring_spec.field != X.field:
        raise ParameterError(f"point is over {doc.ring_spec.field}, variety over {X.field}")
    d = args.d if args.d is not None else doc.d
    if d is None:
        raise ParameterError("psi-order d must be given in the point file or with --d")
    xbar = dict(zip(X.variables, doc.require(*X.variables)))
    rep = lift_stratum_point(X, xbar, d, args.N)
    head = [f"variety: {X.name}", f"d: {d}", f"N: {args.N or doc.N}"]
    return _render_lift(X, rep, head), EXIT_OK if rep.ok else EXIT_OBSTRUCTION


def _render_lift(X: SpecialCI, rep, head: list[str]) -> str:
    lines = list(head)
    lines.append(f"status: {'ok' if rep.ok else 'obstruction' if rep.obstruction else 'residual nonzero'}")
    if rep.obstruction:
        lines.append(f"obstruction: {rep.obstruction}")
        return "\n".join(lines) + "\n"
    lines.append(f"certified: mod t^{rep.precision}")
    lines.append(f"residual exact mod: {rep.extra['residual exact mod']}")
    for y, s in zip(X.y_vars, rep.solution):
        lines.append(f"nu_{y}: {s}")
    for v in X.variables:
        lines.append(f"{v}: {rep.extra['arc'][v]}")
    return "\n".join(lines) + "\n"


def cmd_count(args) -> tuple[str, int]:
    P = _load_presentation(args.presentation)
    res = count_points(P, args.q, budget=args.budget, workers=args.workers)
    lines = [f"presentation: {P.name}", f"q: {args.q}", f"variables: {res.variables}",
             f"count: {res.count}"]
    if args.format == "json":
        return json.dumps({"presentation": P.name, "q": args.q, "variables": res.variables,
                           "count": res.count}, sort_keys=True) + "\n", EXIT_OK
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    records = run_suite(args.suite, seed=args.seed, workers=args.workers)
    code = EXIT_OK if all(r.passed for r in records) else EXIT_CHECK_FAILED
    return render(records, args.format), code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arcweier", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("-o", "--output", help="write the document here instead of stdout")
        return sp

    sp = add("jets", cmd_jets, "jet scheme presentation mod t^(j+1)")
    sp.add_argument("variety")
    sp.add_argument("j", type=int)

    sp = add("stratum", cmd_stratum, "presentation of the psi-order d stratum")
    sp.add_argument("variety")
    sp.add_argument("d", type=int)

    sp = add("model", cmd_model, "finite model of the arc (t^d, 0, 0) on the quadric cone")
    sp.add_argument("d", type=int)
    sp.add_argument("--field", default="QQ")

    sp = add("sd", cmd_sd, "presentation of the space S_d truncated at t^K")
    sp.add_argument("d", type=int)
    sp.add_argument("K", type=int)
    sp.add_argument("--field", default="QQ")

    sp = add("weierstrass", cmd_weierstrass, "Weierstrass division or preparation of series from a file")
    sp.add_argument("mode", choices=("div", "prep"))
    sp.add_argument("series")

    sp = add("lift", cmd_lift, "lift a stratum point to an arc")
    sp.add_argument("variety")
    sp.add_argument("point")
    sp.add_argument("N", type=int, nargs="?", help="working truncation (default: that of the point file)")
    sp.add_argument("--d", type=int, help="psi-order (overrides the point file)")

    sp = add("count", cmd_count, "count points of a presentation over GF(q)")
    sp.add_argument("presentation")
    sp.add_argument("q", type=int)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = add("verify", cmd_verify, "run a named verification suite")
    sp.add_argument("suite", choices=("all", "models", "counterexample", "strata", "desk", "random"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARAM if exc.code else EXIT_OK
    try:
        text, code = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Obstruction as exc:
        print(f"obstruction: {exc}", file=sys.stderr)
        return EXIT_OBSTRUCTION
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParameterError, ContextError, InvalidPoint, OrderError, NotAUnitError, ValueError) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_PARAM
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code

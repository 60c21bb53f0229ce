"""Command line interface.

Subcommands operate on algebra spec files (or bundled algebra names) and
print either human-readable text or stable machine-readable lines.  Exit
codes: 0 when the queried relation holds or all checks pass, 1 when it
fails or a counterexample exists, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from .algebras import AlgebraSpecError, FiniteAlgebra, parse_spec_file
from .clone import Bounds, PairContext, build_pair_context
from .proportion_rw import jus_set, proportion_rw, solve_rw
from .proportion_sim import arrow_up_set, proportion_sim, solve_sim
from .similarity import similar
from .terms import TermSyntaxError
from .verdicts import ProportionVerdict
from .verify import (
    AXIOM_SCHEMATA,
    bundled_algebra,
    check_axiom,
    check_first_iso_theorem,
    check_isomorphism_lemma,
    check_second_iso_theorem,
    compare_frameworks,
    run_paper_vectors,
)

__all__ = ["main"]


def _load_spec(path: str):
    if os.path.exists(path):
        with open(path) as fh:
            return parse_spec_file(fh.read())
    raise AlgebraSpecError(f"no such file: {path}")


def _load_algebras(paths: list[str]) -> tuple[FiniteAlgebra, FiniteAlgebra]:
    algebras: list[FiniteAlgebra] = []
    for path in paths:
        if os.path.exists(path):
            spec = _load_spec(path)
            algebras.extend(spec.algebras.values())
        else:
            algebras.append(bundled_algebra(path))
    if len(algebras) == 1:
        return algebras[0], algebras[0]
    if len(algebras) == 2:
        return algebras[0], algebras[1]
    raise AlgebraSpecError(f"expected one or two algebras, found {len(algebras)}")


def _bounds(args) -> Bounds:
    return Bounds(
        max_depth=args.max_depth, max_vars=args.max_vars, class_cap=args.class_cap
    )


def _context(args) -> PairContext:
    alg_a, alg_b = _load_algebras(args.algebra)
    return build_pair_context(alg_a, alg_b, _bounds(args))


def _frameworks(args) -> list[str]:
    return ["sim", "rw"] if args.framework == "both" else [args.framework]


def _verdict_word(v) -> str:
    return "holds" if v else "fails"


def _print_verdict(args, label: str, verdict: ProportionVerdict) -> None:
    if args.format == "machine":
        print(
            f"{label} {_verdict_word(verdict)} reason={verdict.reason}"
            f" exact={int(verdict.exact)} vars={verdict.max_vars}"
            f" depth={verdict.depth}"
        )
        return
    print(f"{label}: {_verdict_word(verdict)} ({verdict.reason})")
    if verdict.witness:
        print(f"  witness: {verdict.witness}")
    if verdict.competitor:
        print(f"  dominating competitor: {verdict.competitor}")
    if verdict.failed_conjunct:
        print(f"  failed conjunct: {verdict.failed_conjunct}")
    if not verdict.exact:
        print("  warning: clone not saturated, verdict is approximate")


def _require_elements(ctx: PairContext, left: tuple, right: tuple) -> None:
    for e in left:
        if e not in ctx.alg_a.index:
            raise AlgebraSpecError(f"unknown element {e!r} in {ctx.alg_a.name}")
    for e in right:
        if e not in ctx.alg_b.index:
            raise AlgebraSpecError(f"unknown element {e!r} in {ctx.alg_b.name}")


def cmd_check(args) -> int:
    ctx = _context(args)
    _require_elements(ctx, (args.a, args.b), (args.c, args.d))
    status = 0
    for fw in _frameworks(args):
        if fw == "sim":
            verdict = proportion_sim(args.a, args.b, args.c, args.d, ctx, args.competitors)
        else:
            verdict = proportion_rw(args.a, args.b, args.c, args.d, ctx)
        _print_verdict(args, f"{fw} {args.a}:{args.b} ~ {args.c}:{args.d}", verdict)
        if not verdict:
            status = 1
    return status


def cmd_solve(args) -> int:
    ctx = _context(args)
    _require_elements(ctx, (args.a, args.b), (args.c,))
    status = 1
    for fw in _frameworks(args):
        if fw == "sim":
            found = solve_sim(args.a, args.b, args.c, ctx, args.competitors)
        else:
            found = solve_rw(args.a, args.b, args.c, ctx)
        for d in found:
            print(f"{fw} {d}" if args.framework == "both" else d)
        if found:
            status = 0
    return status


def cmd_similar(args) -> int:
    ctx = _context(args)
    _require_elements(ctx, (args.a,), (args.b,))
    verdict = similar(args.a, args.b, ctx, args.competitors)
    _print_verdict(args, f"{args.a} ~ {args.b}", verdict)
    return 0 if verdict else 1


def cmd_justifications(args) -> int:
    ctx = _context(args)
    _require_elements(ctx, (args.a, args.b), (args.c, args.d))
    rw = args.framework == "rw"
    up = jus_set if rw else arrow_up_set
    set_a = up((args.a, args.b), ctx, "a")
    set_b = up((args.c, args.d), ctx, "b")
    ids_a = {id(rc) for rc in set_a.classes if not rc.trivial}
    nontrivial_b = [rc for rc in set_b.classes if not rc.trivial]
    shared = [rc for rc in nontrivial_b if id(rc) in ids_a]

    def show(title, classes):
        if args.format == "machine":
            for rc in classes:
                print(f"{title} {rc}")
        else:
            print(f"{title}: {len(classes)} non-trivial class(es)")
            for rc in classes:
                print(f"  {rc}")

    show("left", [rc for rc in set_a.classes if not rc.trivial])
    show("right", nontrivial_b)
    show("shared", shared)
    if args.format != "machine" and not shared:
        print("the non-trivial intersection is empty")
    return 0


def cmd_axioms(args) -> int:
    ctx = _context(args)
    status = 0
    for fw in _frameworks(args):
        for name in AXIOM_SCHEMATA:
            report = check_axiom(name, ctx, framework=fw, policy=args.competitors)
            word = "holds" if report.holds else "fails"
            if args.format == "machine":
                ce = ",".join(report.counterexample) if report.counterexample else "-"
                print(f"axiom {fw} {name} {word} {ce} exact={int(report.exact)}")
            elif report.holds:
                print(f"{fw} {name}: holds ({report.instances} instances)")
            else:
                print(f"{fw} {name}: fails at {report.counterexample}")
            if not report.holds:
                status = 1
    return status


def cmd_iso(args) -> int:
    spec = _load_spec(args.spec)
    if args.mapping not in spec.mappings:
        raise AlgebraSpecError(f"no mapping named {args.mapping!r} in {args.spec}")
    h = spec.mappings[args.mapping]
    bounds = _bounds(args)
    reports = [
        check_isomorphism_lemma(h, bounds),
        check_first_iso_theorem(h, bounds, args.competitors),
    ]
    from .algebras import is_isomorphism

    if is_isomorphism(h):
        reports.append(check_second_iso_theorem(h, bounds, args.competitors))
    status = 0
    for report in reports:
        word = "pass" if report.ok else "fail"
        if args.format == "machine":
            print(f"iso {report.check} {word} instances={report.instances}")
        else:
            print(f"{report.check}: {word} ({report.instances} instances)")
            for v in report.violations:
                print(f"  {v}")
        if not report.ok:
            status = 1
    return status


def cmd_compare(args) -> int:
    ctx = _context(args)
    diffs = compare_frameworks(ctx, args.competitors)
    for q, s, r in diffs:
        quad = ":".join(q[:2]) + " ~ " + ":".join(q[2:])
        print(f"{quad} sim={_verdict_word(s)} rw={_verdict_word(r)}")
    if args.format != "machine":
        print(f"{len(diffs)} differing quadruple(s)")
    return 0


def cmd_vectors(args) -> int:
    results = run_paper_vectors(bounds=_bounds(args))
    failed = 0
    for r in results:
        word = "pass" if r.passed else "fail"
        if args.format == "machine":
            print(f"vector {r.line} {word} {r.description} expected={r.expected} actual={r.actual}")
        else:
            print(f"line {r.line} [{word}] {r.description}: expected {r.expected}, got {r.actual}")
        failed += not r.passed
    if args.format != "machine":
        print(f"{len(results) - failed}/{len(results)} vectors passed")
    return 1 if failed else 0


def _add_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # The options are attached to the main parser with real defaults and to
    # every subparser with suppressed defaults, so they are accepted on
    # either side of the subcommand without clobbering each other.
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument(
        "--framework", choices=["sim", "rw", "both"], default=default("sim")
    )
    parser.add_argument("--max-depth", type=int, default=default(None))
    parser.add_argument("--max-vars", type=int, default=default(2))
    parser.add_argument("--class-cap", type=int, default=default(100000))
    parser.add_argument(
        "--competitors", choices=["literal", "all"], default=default("literal")
    )
    parser.add_argument("--format", choices=["human", "machine"], default=default("human"))
    parser.add_argument("--seed", type=int, default=default(0))


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aprop", description="Analogical proportions over finite algebras."
    )
    _add_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *positional):
        p = sub.add_parser(name)
        _add_options(p, suppress=True)
        for arg in positional:
            p.add_argument(arg, nargs="+" if arg == "algebra" else None)
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "algebra", "a", "b", "c", "d")
    add("solve", cmd_solve, "algebra", "a", "b", "c")
    add("similar", cmd_similar, "algebra", "a", "b")
    add("justifications", cmd_justifications, "algebra", "a", "b", "c", "d")
    add("axioms", cmd_axioms, "algebra")
    add("compare", cmd_compare, "algebra")
    p_iso = sub.add_parser("iso")
    _add_options(p_iso, suppress=True)
    p_iso.add_argument("spec")
    p_iso.add_argument("mapping")
    p_iso.set_defaults(func=cmd_iso)
    p_vec = sub.add_parser("vectors")
    _add_options(p_vec, suppress=True)
    p_vec.set_defaults(func=cmd_vectors)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    if args.max_vars < 1 or args.class_cap < 1 or (
        args.max_depth is not None and args.max_depth < 0
    ):
        parser.exit(2, "aprop: bounds must be positive\n")
    try:
        return args.func(args)
    except (AlgebraSpecError, TermSyntaxError, KeyError, OSError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

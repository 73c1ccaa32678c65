"""Command-line interface: ``klrwcyl {basis,compose,coulomb,cylmodel} ...``.

Exit codes: 0 success, 1 verification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import io
import sys
from fractions import Fraction

from . import coulomb, golden
from .cylmodel import check_lift, enumerate_lift_divisors, validate_cover, validate_divisor
from .engine import (
    Morphism,
    engine_for,
    oracle_compose,
    specialize,
)
from .errors import KLRWError
from .io import load_configuration, load_element, load_json, load_quiver
from .quiver import validate_configuration
from .strands import crossings, enumerate_taut, q_grading, qi_winding, reference_angle

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Invalid command-line input (exit code 2)."""


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--quiver", metavar="PATH")
    p.add_argument("--config", metavar="PATH")
    p.add_argument("--config2", metavar="PATH")
    p.add_argument("--max-wind", type=int, default=0, metavar="N")
    p.add_argument("--max-weight", type=int, default=0, metavar="N")
    p.add_argument("--max-cross", type=int, default=None, metavar="N")
    p.add_argument("--hbar", type=int, default=None, metavar="INT")
    p.add_argument("--eta", type=int, default=None, metavar="INT")
    p.add_argument("--seed", type=int, default=0, metavar="N")
    p.add_argument("--out", metavar="PATH")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="klrwcyl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("basis", parents=[common], help="list taut basis diagrams between two configurations")
    b.set_defaults(func=cmd_basis)

    c = sub.add_parser("compose", parents=[common], help="compose diagrams, morphisms or words")
    c.add_argument("first", metavar="FILE1", help="bottom factor (or the only element)")
    c.add_argument("second", metavar="FILE2", nargs="?", help="top factor")
    c.add_argument("--graded", action="store_true", help="associated-graded composition")
    c.add_argument("--oracle", action="store_true", help="compare with the bigon rule at hbar = eta = 0")
    c.set_defaults(func=cmd_compose)

    co = sub.add_parser("coulomb", help="abelianized Coulomb branch functions")
    cs = co.add_subparsers(dest="action", required=True)
    for name, hlp in [
        ("u-coords", "u-coordinates in x, y, A"),
        ("superpotential", "sum of the u-coordinates"),
        ("f0", "the q-grading function in u, y, A"),
    ]:
        s = cs.add_parser(name, parents=[common], help=hlp)
        if name == "u-coords":
            s.add_argument("--labels", action="store_true", help="prefix each line with its variable")
        s.set_defaults(func=cmd_coulomb)
    ab = cs.add_parser("abelianize", parents=[common], help="abelianized minuscule monopole operator")
    ab.add_argument("--node", required=True)
    ab.add_argument("--type", dest="kind", required=True, choices=coulomb.MONOPOLE_TYPES)
    ab.set_defaults(func=cmd_coulomb)
    ve = cs.add_parser("verify-examples", parents=[common], help="run the worked-example identity suite")
    ve.set_defaults(func=cmd_coulomb)

    cy = sub.add_parser("cylmodel", help="marked-point lifting conditions")
    ys = cy.add_subparsers(dest="action", required=True)
    ck = ys.add_parser("check", parents=[common], help="check one divisor")
    ck.add_argument("cover", metavar="COVER")
    ck.add_argument("divisor", metavar="DIVISOR")
    ck.set_defaults(func=cmd_cylmodel)
    en = ys.add_parser("enumerate", parents=[common], help="list all admissible divisors")
    en.add_argument("cover", metavar="COVER")
    en.set_defaults(func=cmd_cylmodel)
    return parser


# -- helpers -----------------------------------------------------------------


def _need_quiver(args):
    if not args.quiver:
        raise InputError("--quiver is required")
    return load_quiver(args.quiver)


def _configs(args, q):
    if args.config:
        src = load_configuration(q, args.config)
    elif q.rank == 0 and sum(q.framings) == 0:
        src = validate_configuration(q, {}, {})
    else:
        raise InputError("--config is required for a quiver with points")
    tgt = load_configuration(q, args.config2) if args.config2 else src
    return src, tgt


def _bounds(args):
    for name in ("max_wind", "max_weight", "max_cross"):
        v = getattr(args, name)
        if v is not None and v < 0:
            raise InputError(f"--{name.replace('_', '-')} must be nonnegative")


def _half(q2: int) -> str:
    return str(Fraction(q2, 2))


# -- commands ----------------------------------------------------------------


def cmd_basis(args, out):
    _bounds(args)
    q = _need_quiver(args)
    src, tgt = _configs(args, q)
    diagrams = enumerate_taut(src, tgt, args.max_wind, args.max_weight, args.max_cross)
    diagrams.sort(key=lambda d: (crossings(d).total_black_same, d.total_weight(), d.strands))
    theta = reference_angle(src, tgt)
    out.write(f"# {len(diagrams)} diagrams; q_i windings relative to reference angle {theta}\n")
    out.write("# index\tdiagram\tq\tq_i\tcross\n")
    for k, d in enumerate(diagrams, 1):
        qi = ",".join(f"{n}:{v}" for n, v in qi_winding(d, theta).items())
        cv = ",".join(map(str, crossings(d).vector(q)))
        out.write(f"{k}\t{d.text()}\t{_half(q_grading(d))}\t{qi or '-'}\t[{cv}]\n")
    return EXIT_OK


def cmd_compose(args, out):
    q = _need_quiver(args)
    src = load_configuration(q, args.config) if args.config else None
    tgt = load_configuration(q, args.config2) if args.config2 else None
    m1 = load_element(q, args.first, src, tgt)
    eng = engine_for(q)
    if args.second is None:
        if args.oracle or args.graded:
            raise InputError("--oracle and --graded need two inputs")
        result = m1
    else:
        m2 = load_element(q, args.second, m1.target, None)
        if m1.target != m2.source:
            raise InputError("FILE1's target differs from FILE2's source")
        if args.oracle:
            return _oracle(m1, m2, eng, out)
        result = eng.graded_compose(m2, m1) if args.graded else eng.compose(m2, m1)
    if args.hbar is not None or args.eta is not None:
        result = specialize(result, args.hbar, args.eta)
    out.write(result.text() + "\n")
    return EXIT_OK


def _single(m: Morphism):
    if len(m.terms) != 1:
        raise InputError("--oracle needs single basis diagrams")
    ((d, c),) = m.terms.items()
    if not c.is_one():
        raise InputError("--oracle needs diagrams with coefficient 1")
    return d


def _oracle(m1, m2, eng, out):
    d12, d23 = _single(m1), _single(m2)
    expected = oracle_compose(d12, d23)
    got = specialize(eng.compose(m2, m1), 0, 0)
    out.write(f"oracle: {expected.text()}\n")
    out.write(f"engine: {got.text()}\n")
    ok = expected == got
    out.write("MATCH\n" if ok else "MISMATCH\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_coulomb(args, out):
    if args.action == "verify-examples":
        results = golden.run_all(seed=args.seed)
        failed = 0
        for name, ok in results:
            out.write(f"{'PASS' if ok else 'FAIL'}  {name}\n")
            failed += not ok
        out.write(f"{len(results) - failed}/{len(results)} checks passed\n")
        return EXIT_OK if not failed else EXIT_FAIL
    q = _need_quiver(args)
    if args.action == "u-coords":
        for (n, a), u in coulomb.u_coordinates(q).items():
            out.write(f"u[{n},{a + 1}] = {u.text()}\n" if args.labels else u.text() + "\n")
    elif args.action == "superpotential":
        out.write(coulomb.superpotential(q).text() + "\n")
    elif args.action == "f0":
        out.write(coulomb.f0(q).text() + "\n")
    else:
        out.write(coulomb.abelianize_quiver_monopole(q, args.node, args.kind).text() + "\n")
    return EXIT_OK


def cmd_cylmodel(args, out):
    q = load_quiver(args.quiver) if args.quiver else None
    cover = validate_cover(load_json(args.cover), q)
    if args.action == "check":
        report = check_lift(cover, validate_divisor(load_json(args.divisor)))
        out.write(report.text() + "\n")
        if report.detail:
            out.write(f"# {report.detail}\n")
        return EXIT_OK if report.accepted else EXIT_FAIL
    divisors = enumerate_lift_divisors(cover)
    for d in divisors:
        out.write(d.text() + "\n")
    out.write(f"count {len(divisors)}\n")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except KLRWError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"error: InvalidInput: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = buf.getvalue()
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

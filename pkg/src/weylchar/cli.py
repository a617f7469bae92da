"""Command-line front end: ``weylchar <subcommand> [--algebra ...] [--n N] [--p P] [--json]``.

Exit codes: 0 success, 1 computational failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .growth import gk_fit, membership, span_iterate
from .morphism import (
    NAMED_MAPS,
    POISSON,
    WEYL,
    DefUndefined,
    Endomorphism,
    InvalidEndomorphism,
    apply,
    check_relations,
    kernel_basis,
)
from .parse import ParseError, parse_element
from .poisson import bracket
from .rectify import CapExceeded, homogeneous_dependent, rectify_pair
from .scalar import Prime
from .structure import (
    BoundExceeded,
    central_decompose,
    express_over_center,
    is_central,
    poisson_is_central,
)
from .weyl import AlgebraSignature, TermLimitExceeded, commutator, format_monomial

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


class ComputationFailed(Exception):
    """Raised by a subcommand whose answer is a failure (e.g. invalid map)."""

    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload


def split_generators(text: str) -> list:
    """Split a comma-separated list, ignoring commas inside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    parts = [s.strip() for s in parts]
    if any(not s for s in parts):
        raise UsageError(f"empty entry in generator list {text!r}")
    return parts


# context resolution


def _context(args, default_kind=WEYL):
    kind = args.algebra or default_kind
    n = 1 if args.n is None else args.n
    p = 2 if args.p is None else args.p
    if n < 1:
        raise UsageError("--n must be at least 1")
    try:
        Prime(p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return kind, AlgebraSignature(n, p)


def _parse(text, kind, sig):
    try:
        return parse_element(text, kind, sig)
    except (ParseError, IndexError) as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from None


def _load_map(args) -> Endomorphism:
    source = args.map
    if source in NAMED_MAPS:
        kind = args.algebra or WEYL
        n = 1 if args.n is None else args.n
        p = 2 if args.p is None else args.p
        try:
            phi = NAMED_MAPS[source](n, p, kind)
        except ValueError as exc:
            raise UsageError(f"map {source!r}: {exc}") from None
    else:
        if not os.path.exists(source):
            raise UsageError(f"--map must be one of {sorted(NAMED_MAPS)} or a JSON file, got {source!r}")
        try:
            with open(source) as fh:
                phi = Endomorphism.from_json(json.load(fh))
        except (OSError, KeyError, ValueError, ParseError) as exc:
            raise UsageError(f"cannot read map from {source}: {exc}") from None
    for flag, value, actual in (("--algebra", args.algebra, phi.kind), ("--n", args.n, phi.n),
                                ("--p", args.p, phi.p)):
        if value is not None and value != actual:
            raise UsageError(f"{flag} {value} conflicts with the map ({actual})")
    return phi


# subcommands; each returns (text, json_payload)


def cmd_normalize(args):
    kind, sig = _context(args)
    a = _parse(args.expr, kind, sig)
    return str(a), {"algebra": kind, "n": sig.n, "p": sig.p, "result": str(a)}


def cmd_comm(args):
    if args.algebra not in (None, WEYL):
        raise UsageError("comm works in the Weyl algebra; use bracket for Poisson")
    kind, sig = _context(args, WEYL)
    a, b = _parse(args.a, kind, sig), _parse(args.b, kind, sig)
    c = commutator(a, b)
    return str(c), {"algebra": kind, "n": sig.n, "p": sig.p, "result": str(c)}


def cmd_bracket(args):
    if args.algebra not in (None, POISSON):
        raise UsageError("bracket works in the Poisson algebra; use comm for Weyl")
    kind, sig = _context(args, POISSON)
    a, b = _parse(args.a, kind, sig), _parse(args.b, kind, sig)
    c = bracket(a, b)
    return str(c), {"algebra": kind, "n": sig.n, "p": sig.p, "result": str(c)}


def cmd_central(args):
    kind, sig = _context(args)
    a = _parse(args.expr, kind, sig)
    if kind == WEYL:
        flag = is_central(a, "commutators" if args.direct else "exponents")
    else:
        flag = poisson_is_central(a, "brackets" if args.direct else "exponents")
    return str(flag).lower(), {"algebra": kind, "n": sig.n, "p": sig.p, "central": flag}


def _decomp_rows(dec, commutative):
    rows = []
    for key, coeff in dec.items():
        rows.append({"monomial": list(key), "label": format_monomial(key, commutative),
                     "coefficient": str(coeff)})
    return rows


def cmd_decompose(args):
    if args.map:
        phi = _load_map(args)
        kind, sig = phi.kind, phi.sig
        a = _parse(args.expr, kind, sig)
        try:
            dec = express_over_center(a, phi, args.deg_bound)
        except InvalidEndomorphism as exc:
            raise ComputationFailed(str(exc)) from None
        if isinstance(dec, BoundExceeded):
            raise ComputationFailed(
                f"no decomposition with central coefficients of degree <= {args.deg_bound}",
                {"algebra": kind, "n": sig.n, "p": sig.p, "basis": "image", "found": False,
                 "terms": []})
        basis = "image"
    else:
        kind, sig = _context(args)
        a = _parse(args.expr, kind, sig)
        dec = central_decompose(a)
        basis = "standard"
    commutative = kind == POISSON
    rows = _decomp_rows(dec, commutative)
    lines = []
    for r in rows:
        label = r["label"] if basis == "standard" else r["label"].replace("x", "u").replace("y", "v")
        lines.append(f"{label}: {r['coefficient']}")
    text = "\n".join(lines) if lines else "0"
    return text, {"algebra": kind, "n": sig.n, "p": sig.p, "basis": basis, "found": True,
                  "terms": rows}


def cmd_check(args):
    phi = _load_map(args)
    viol = check_relations(phi)
    payload = {"map": phi.to_json(), "valid": not viol, "violations": [str(v) for v in viol]}
    if viol:
        raise ComputationFailed("\n".join(str(v) for v in viol), payload)
    return "valid", payload


def cmd_apply(args):
    phi = _load_map(args)
    a = _parse(args.expr, phi.kind, phi.sig)
    img = apply(phi, a)
    return str(img), {"map": phi.to_json(), "input": str(a), "result": str(img)}


def cmd_kernel(args):
    phi = _load_map(args)
    try:
        report = kernel_basis(phi, args.deg_bound)
    except InvalidEndomorphism as exc:
        raise ComputationFailed(str(exc)) from None
    lines = [f"dimension {report.dimension} at degree bound {args.deg_bound}"]
    lines += [str(b) for b in report.basis]
    payload = {"map": phi.to_json(), **report.to_json()}
    return "\n".join(lines), payload


def _generators(args, kind, sig):
    if args.gens:
        return [_parse(g, kind, sig) for g in split_generators(args.gens)]
    if args.map:
        phi = _load_map(args)
        return list(phi.u) + list(phi.v)
    raise UsageError("give --gens or --map")


def cmd_growth(args):
    if args.map:
        phi = _load_map(args)
        kind, sig = phi.kind, phi.sig
    else:
        kind, sig = _context(args)
    gens = _generators(args, kind, sig)
    table = span_iterate(gens, args.N)
    fit = None
    if args.fit:
        try:
            fit = gk_fit(table, args.tail)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        print(json.dumps(fit.to_json()), file=sys.stderr)
    payload = {"algebra": kind, "n": sig.n, "p": sig.p,
               "table": [{"N": k, "d_N": d} for k, d in enumerate(table.dims)],
               "fit": fit.to_json() if fit else None}
    return table.to_csv().rstrip("\n"), payload


def cmd_member(args):
    kind, sig = _context(args)
    a = _parse(args.expr, kind, sig)
    gens = [_parse(g, kind, sig) for g in split_generators(args.gens)]
    flag = membership(a, gens, args.N)
    return str(flag).lower(), {"algebra": kind, "n": sig.n, "p": sig.p, "N": args.N, "member": flag}


def cmd_depend(args):
    kind, sig = _context(args)
    a, b = _parse(args.a, kind, sig), _parse(args.b, kind, sig)
    if not a or not b:
        raise UsageError("depend needs nonzero arguments")
    la, lb = a.leading_form(), b.leading_form()
    w = homogeneous_dependent(la, lb)
    payload = {"algebra": kind, "n": sig.n, "p": sig.p, "a": str(la), "b": str(lb),
               "dependent": w is not None,
               "witness": None if w is None else {"f": w.f, "q": w.q, "r": w.r}}
    if w is None:
        return "independent", payload
    return f"dependent: a^{w.q} = {w.f}*b^{w.r}", payload


def cmd_rectify(args):
    kind, sig = _context(args)
    u, v = _parse(args.u, kind, sig), _parse(args.v, kind, sig)
    capped = None
    try:
        res = rectify_pair(u, v, args.max_steps, args.max_degree)
        steps = res.steps
    except CapExceeded as exc:
        steps, capped = exc.steps, exc
    except (ValueError, DefUndefined) as exc:
        raise UsageError(str(exc)) from None
    if args.log:
        with open(args.log, "w") as fh:
            for s in steps:
                fh.write(json.dumps(s) + "\n")
    if capped is not None:
        raise ComputationFailed(str(capped), {"algebra": kind, "n": sig.n, "p": sig.p,
                                              "steps": steps, "capped": True})
    text = f"u: {res.u}\nv: {res.v}\nsteps: {len(res.steps)}"
    payload = {"algebra": kind, "n": sig.n, "p": sig.p, "u": str(res.u), "v": str(res.v),
               "steps": res.steps, "word_lengths": list(res.word_lengths), "capped": False}
    return text, payload


def cmd_verify(args):
    from . import verify

    only = None
    if args.only:
        try:
            only = [int(k) for k in args.only.split(",")]
        except ValueError:
            raise UsageError("--only takes comma-separated check numbers") from None
        bad = [k for k in only if k not in {c[0] for c in verify.CHECKS}]
        if bad:
            raise UsageError(f"no such check: {bad}")
    if args.p is not None:
        try:
            Prime(args.p)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    results = verify.run_all(args.p, only)
    ok = all(r.ok for r in results)
    lines = [r.line() for r in results]
    lines.append(f"{sum(r.ok for r in results)}/{len(results)} checks passed")
    payload = {"passed": ok, "checks": [r.to_json() for r in results]}
    if not ok:
        raise ComputationFailed("\n".join(lines), payload)
    return "\n".join(lines), payload


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", choices=(WEYL, POISSON), default=argparse.SUPPRESS)
    common.add_argument("--n", type=int, default=argparse.SUPPRESS, help="number of generator pairs")
    common.add_argument("--p", type=int, default=argparse.SUPPRESS, help="characteristic")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="structured output")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="weylchar", parents=[common], allow_abbrev=False,
                                     description="Exact arithmetic in Weyl and Poisson algebras over F_p.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_, allow_abbrev=False)
        sp.set_defaults(func=fn)
        return sp

    sp = add("normalize", cmd_normalize, "print the normal form of an expression")
    sp.add_argument("expr")
    for name, fn, h in (("comm", cmd_comm, "commutator ab - ba in A_n"),
                        ("bracket", cmd_bracket, "Poisson bracket in PS_n")):
        sp = add(name, fn, h)
        sp.add_argument("a")
        sp.add_argument("b")
    sp = add("central", cmd_central, "test membership in the center")
    sp.add_argument("expr")
    sp.add_argument("--direct", action="store_true",
                    help="test against every generator instead of reading exponents")
    sp = add("decompose", cmd_decompose, "write an element over the center")
    sp.add_argument("expr")
    sp.add_argument("--map", help="named map or JSON file: decompose over the image monomials")
    sp.add_argument("--deg-bound", type=int, default=8)
    sp = add("check", cmd_check, "check the defining relations for a map")
    sp.add_argument("--map", required=True)
    sp = add("apply", cmd_apply, "apply a map to an element")
    sp.add_argument("--map", required=True)
    sp.add_argument("expr")
    sp = add("kernel", cmd_kernel, "kernel of a map up to a degree bound")
    sp.add_argument("--map", required=True)
    sp.add_argument("--deg-bound", type=int, default=8)
    sp = add("growth", cmd_growth, "filtration dimensions d_N as CSV")
    sp.add_argument("--gens")
    sp.add_argument("--map", help="use the images of a map as generators")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--fit", action="store_true", help="also fit the growth exponent")
    sp.add_argument("--tail", type=float, default=0.5, help="fraction of levels used by --fit")
    sp = add("member", cmd_member, "membership in the span of words of length <= N")
    sp.add_argument("expr")
    sp.add_argument("--gens", required=True)
    sp.add_argument("--N", type=int, required=True)
    sp = add("depend", cmd_depend, "algebraic dependence of two leading forms")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = add("rectify", cmd_rectify, "make the leading forms of (u, v) independent")
    sp.add_argument("u")
    sp.add_argument("v")
    sp.add_argument("--max-steps", type=int, default=16)
    sp.add_argument("--max-degree", type=int, default=512)
    sp.add_argument("--log", help="write the step log as JSON lines to this file")
    sp = add("verify-paper", cmd_verify, "run the reproduction suite")
    sp.add_argument("--only", help="comma-separated check numbers")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    for name in ("algebra", "n", "p"):
        if not hasattr(args, name):
            setattr(args, name, None)
    as_json = getattr(args, "json", False)
    try:
        text, payload = args.func(args)
    except UsageError as exc:
        print(f"weylchar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ComputationFailed as exc:
        if as_json and exc.payload is not None:
            print(json.dumps({**exc.payload, "error": str(exc).splitlines()[-1]}))
        else:
            # the verification report belongs on stdout even when it fails
            print(exc, file=sys.stdout if args.command == "verify-paper" else sys.stderr)
        return EXIT_FAILURE
    except (TermLimitExceeded, ArithmeticError, MemoryError) as exc:
        print(f"weylchar: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    print(json.dumps(payload) if as_json else text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 ok, 1 selftest failure, 2 bad input, 3 closed form requested
outside its hypotheses, 4 verification failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import kernels as K
from . import serialize as S
from .composed import (
    FactorList,
    HypothesisError,
    LabeledFactor,
    closed_count,
    count_general,
    derive_params,
    factor_general,
    irreducibility_conditions,
)
from .field import FieldError, make_extension, make_prime_field
from .grid import field_for
from .ntheory import prime_power
from .oracle import count_factors, factor_generic
from .poly import Poly, PolyError, compose_xn, format_poly, is_irreducible, parse_poly

EXIT_OK, EXIT_SELFTEST, EXIT_PARSE, EXIT_HYPOTHESIS, EXIT_VERIFY = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def parse_field(q_text: str, modulus: str | None = None):
    """``p`` or ``p^a``; an extension uses ``modulus`` or the first irreducible in scan order."""
    try:
        if "^" in q_text:
            p_text, a_text = q_text.split("^", 1)
            p, a = int(p_text), int(a_text)
            q = p**a
        else:
            q = int(q_text)
            p, a = prime_power(q)
    except ValueError as exc:
        raise InputError(f"bad field spec {q_text!r}: {exc}") from None
    try:
        F = make_prime_field(p)
    except (FieldError, ValueError) as exc:
        raise InputError(str(exc)) from None
    if a == 1:
        if modulus:
            raise InputError("--modulus only applies to extension fields")
        return F
    if not modulus:
        return field_for(q)
    try:
        m = parse_poly(modulus, F)
        if m.degree != a:
            raise InputError(f"modulus degree {m.degree} does not match a = {a}")
        return make_extension(F, m)
    except (FieldError, PolyError, ValueError) as exc:
        raise InputError(str(exc)) from None


def parse_f(text: str, ctx) -> Poly:
    try:
        return parse_poly(text, ctx)
    except (PolyError, FieldError, ValueError) as exc:
        raise InputError(str(exc)) from None


def _emit(args, text: str, doc: dict) -> None:
    print(S.dumps(doc) if args.format == "json" else text)


def _oracle_list(f: Poly, n: int, seed: int) -> FactorList:
    fac = factor_generic(compose_xn(f, n), seed)
    factors = []
    for g, mult in zip(fac.factors, fac.multiplicities):
        factors.extend(LabeledFactor(g, 0, 0, 0) for _ in range(mult))
    return FactorList(fac.input, factors, "oracle", None)


def _factor(f: Poly, n: int, method: str, seed: int) -> FactorList:
    if method == "oracle":
        return _oracle_list(f, n, seed)
    try:
        return factor_general(derive_params(f, n))
    except HypothesisError:
        if method == "closed":
            raise
        return _oracle_list(f, n, seed)


def verify(fl: FactorList) -> list[str]:
    """Problems found when re-multiplying and re-testing each factor; empty when all is well."""
    problems = []
    if fl.product() != fl.input.monic():
        problems.append("product of factors differs from the input")
    for lf in fl.factors:
        if not lf.poly.is_monic():
            problems.append(f"factor {format_poly(lf.poly)} is not monic")
        elif not is_irreducible(lf.poly):
            problems.append(f"factor {format_poly(lf.poly)} is reducible")
    if fl.method == "closed" and len({lf.poly.key() for lf in fl.factors}) != len(fl.factors):
        problems.append("repeated factor")
    return problems


# ------------------------------------------------------------- commands ---


def cmd_factor(args) -> int:
    F = parse_field(args.q, args.modulus)
    f = parse_f(args.f, F)
    fl = _factor(f, args.n, args.method, args.seed)
    _emit(args, S.factor_text(fl), S.factor_dict(fl))
    if args.verify:
        problems = verify(fl)
        for msg in problems:
            print(f"verify: {msg}", file=sys.stderr)
        if problems:
            return EXIT_VERIFY
    return EXIT_OK


def cmd_count(args) -> int:
    F = parse_field(args.q, args.modulus)
    f = parse_f(args.f, F)
    if args.method != "oracle":
        try:
            params = derive_params(f, args.n)
        except HypothesisError:
            if args.method == "closed":
                raise
            params = None
        if params is not None:
            fl = factor_general(params)
            name, value = closed_count(params)
            total = len(fl)
            formula = name if value == total else f"{name}:{value}(general={count_general(params)})"
            _emit(args, S.count_text(total, params.case_tag, fl.degrees(), formula),
                  S.count_dict(total, params.case_tag, fl.degrees(), formula))
            return EXIT_OK
    degrees = count_factors(compose_xn(f, args.n))
    total = sum(degrees.values())
    _emit(args, S.count_text(total, None, degrees, "oracle"), S.count_dict(total, None, degrees, "oracle"))
    return EXIT_OK


def cmd_irreducible(args) -> int:
    F = parse_field(args.q, args.modulus)
    f = parse_f(args.f, F)
    conds = irreducibility_conditions(f, args.n)
    verdict = all(ok for _, ok in conds)
    lines = [f"[{'pass' if ok else 'fail'}] {text}" for text, ok in conds]
    lines.append(f"irreducible={'yes' if verdict else 'no'}")
    doc = {"conditions": [{"condition": t, "holds": ok} for t, ok in conds], "irreducible": verdict}
    _emit(args, "\n".join(lines), doc)
    return EXIT_OK


def cmd_cyclo(args) -> int:
    from .cyclo import (
        cyclotomic_degree_profile,
        factor_binomial_composed,
        factor_cyclotomic_composed,
        factor_prime_power_tower,
    )

    F = parse_field(args.q, args.modulus)
    if args.prime:
        tower = factor_prime_power_tower(args.prime, args.s, args.n, F)
        fl = tower.binomial if args.binomial else tower.cyclotomic
    elif args.e is None:
        raise InputError("cyclo needs --e (or --prime with --s)")
    elif args.n == 1 and not args.binomial:
        k, count = cyclotomic_degree_profile(args.e, F)
        _emit(args, f"k={k} count={count}", {"k": k, "count": count})
        return EXIT_OK
    elif args.binomial:
        fl = factor_binomial_composed(args.e, args.n, F)
    else:
        fl = factor_cyclotomic_composed(args.e, args.n, F)
    _emit(args, S.factor_text(fl), S.factor_dict(fl))
    return EXIT_OK


def cmd_codes(args) -> int:
    from .codes import minimal_constacyclic_codes

    F = parse_field(args.q, args.modulus)
    try:
        lam = F(parse_poly(args.lam, F).coeff(0)) if args.lam.strip() else None
    except (PolyError, ValueError) as exc:
        raise InputError(str(exc)) from None
    if lam is None:
        raise InputError("--lambda is empty")
    fam = minimal_constacyclic_codes(lam, args.n, method=args.method)
    _emit(args, "\n".join(S.codes_rows(fam)), S.codes_dict(fam))
    if fam.note:
        print(f"note: {fam.note}", file=sys.stderr)
    return EXIT_OK


def cmd_bench(args) -> int:
    from . import bench as B

    if args.backends:
        rows = B.backend_compare()
        print(B.format_table(B.BACKEND_HEADER, rows))
        return EXIT_OK
    F = parse_field(args.q, args.modulus)
    f = parse_f(args.f, F)
    ns = B.bench_ns(f, args.nmax, args.p)
    if not ns:
        raise InputError("no n values below --nmax")
    rows = B.run_bench(f, ns, args.timeout, args.seed)
    print(B.format_table(B.HEADER, rows))
    print(f"monotone_advantage={'yes' if B.monotone_advantage(rows) else 'no'}")
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    failures = run_selftest(print)
    return EXIT_SELFTEST if failures else EXIT_OK


# --------------------------------------------------------------- parser ---


def build_parser() -> argparse.ArgumentParser:
    seed_default = int(os.environ.get("COMPOSED_FACTOR_SEED", "0"))
    parser = argparse.ArgumentParser(prog="composed-factor", description="Factor f(x^n) over finite fields.")
    parser.add_argument("--backend", choices=("numba", "numpy"), help="kernel backend override")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, poly=True, n=True):
        p.add_argument("--q", required=True, help="field size: p or p^a")
        p.add_argument("--modulus", help="extension modulus, ascending coefficients")
        if poly:
            p.add_argument("--f", required=True, help="f as ascending comma-separated coefficients")
        if n:
            p.add_argument("--n", type=int, required=True)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=seed_default)

    p = sub.add_parser("factor", help="factor f(x^n)")
    common(p)
    p.add_argument("--method", choices=("closed", "oracle", "auto"), default="auto")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("count", help="count the irreducible factors of f(x^n)")
    common(p)
    p.add_argument("--method", choices=("closed", "oracle", "auto"), default="auto")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("irreducible", help="irreducibility conditions for f(x^n)")
    common(p)
    p.set_defaults(func=cmd_irreducible)

    p = sub.add_parser("cyclo", help="factor Phi_e(x^n) or x^(en) - 1")
    common(p, poly=False)
    p.add_argument("--e", type=int)
    p.add_argument("--binomial", action="store_true", help="factor x^(en) - 1 instead of Phi_e(x^n)")
    p.add_argument("--prime", type=int, help="P for the Phi_{P^s} tower (q primitive mod P^2)")
    p.add_argument("--s", type=int, default=1)
    p.set_defaults(func=cmd_cyclo)

    p = sub.add_parser("codes", help="minimal lambda-constacyclic codes of length n")
    common(p, poly=False)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--method", choices=("closed", "oracle", "auto"), default="auto")
    p.set_defaults(func=cmd_codes)

    p = sub.add_parser("bench", help="closed form against oracle timings")
    p.add_argument("--q", default="11")
    p.add_argument("--modulus")
    p.add_argument("--f", default="10,1")
    p.add_argument("--nmax", type=int, default=3125)
    p.add_argument("--p", type=int, help="n runs over powers of this prime")
    p.add_argument("--timeout", type=float, default=120.0, help="oracle timeout per n, seconds")
    p.add_argument("--seed", type=int, default=seed_default)
    p.add_argument("--backends", action="store_true", help="compare numba and numpy kernels instead")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("selftest", help="run the built-in fixtures")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.backend:
        K.set_backend(args.backend)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except HypothesisError as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (ValueError, PolyError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

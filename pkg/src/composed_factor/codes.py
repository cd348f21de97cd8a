"""Minimal lambda-constacyclic codes of length n from the factorization of x^n - lambda."""

from __future__ import annotations

from dataclasses import dataclass, field

from .composed import HypothesisError, closed_count, derive_params, factor_general
from .field import Element, FieldCtx
from .oracle import factor_generic
from .poly import Poly, exact_div


@dataclass
class ConstacyclicCode:
    lam: Element
    n: int
    generator: Poly  # (x^n - lambda) / check_factor
    check_factor: Poly

    @property
    def dimension(self) -> int:
        return self.check_factor.degree

    @property
    def q(self) -> int:
        return self.generator.ctx.order


@dataclass
class CodeFamily:
    """All minimal codes for one ``(lambda, n)``; ``method`` says which factorization produced them."""

    lam: Element
    n: int
    codes: list[ConstacyclicCode]
    method: str
    note: str = ""
    expected_count: int | None = field(default=None)

    def __len__(self) -> int:
        return len(self.codes)

    def __iter__(self):
        return iter(self.codes)

    def __getitem__(self, i):
        return self.codes[i]


def minimal_constacyclic_codes(lam, n: int, ctx: FieldCtx | None = None, method: str = "auto") -> CodeFamily:
    """One minimal code per irreducible factor of ``x^n - lam``.

    ``method="auto"`` uses the closed form for ``f = x - lam`` when its hypotheses
    hold and otherwise falls back to the oracle, recording why in ``note``.
    """
    if not isinstance(lam, Element):
        if ctx is None:
            raise ValueError("a field context is needed for a plain lambda value")
        lam = ctx(lam)
    ctx = lam.ctx
    if lam.is_zero():
        raise ValueError("lambda must be nonzero")
    if n < 1:
        raise ValueError("n must be positive")
    if method not in ("auto", "closed", "oracle"):
        raise ValueError(f"unknown method {method!r}")
    f = Poly.from_list(ctx, [-lam, ctx.one])
    target = Poly.monomial(ctx, n) - Poly.from_list(ctx, [lam])
    note, expected = "", None
    checks = []
    if method != "oracle":
        try:
            params = derive_params(f, n)
            fl = factor_general(params)
            checks = fl.polys
            name, value = closed_count(params)
            if value.denominator == 1:
                expected = int(value)
            used = "closed"
        except HypothesisError as exc:
            if method == "closed":
                raise
            note = f"closed form unavailable: {exc}"
    if not checks:
        checks = factor_generic(target).factors
        used = "oracle"
    codes = [ConstacyclicCode(lam, n, exact_div(target, g), g) for g in checks]
    return CodeFamily(lam, n, codes, used, note, expected)

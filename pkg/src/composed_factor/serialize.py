"""Text and structured (JSON) exports for factor lists, counts and code tables."""

from __future__ import annotations

import json

from .codes import CodeFamily
from .composed import FactorList
from .poly import format_element, format_poly


def factor_lines(fl: FactorList) -> list[str]:
    return [f"deg={lf.degree} t={lf.t} u={lf.u} l={lf.l} poly={format_poly(lf.poly)}" for lf in fl.factors]


def factor_text(fl: FactorList) -> str:
    return "\n".join(factor_lines(fl))


def factor_dict(fl: FactorList) -> dict:
    ctx = fl.input.ctx
    return {
        "q": ctx.order,
        "input": format_poly(fl.input),
        "method": fl.method,
        "case": fl.case,
        "count": len(fl),
        "factors": [
            {"deg": lf.degree, "t": lf.t, "u": lf.u, "l": lf.l, "poly": format_poly(lf.poly)} for lf in fl.factors
        ],
    }


def count_text(total: int, case: str | None, degrees: dict[int, int], formula: str | None = None) -> str:
    head = f"total={total} case={case}"
    if formula:
        head += f" formula={formula}"
    rows = [head, "degree count"]
    rows += [f"{d} {c}" for d, c in sorted(degrees.items())]
    return "\n".join(rows)


def count_dict(total: int, case: str | None, degrees: dict[int, int], formula: str | None = None) -> dict:
    return {
        "total": total,
        "case": case,
        "formula": formula,
        "degrees": [{"degree": d, "count": c} for d, c in sorted(degrees.items())],
    }


def codes_rows(fam: CodeFamily) -> list[str]:
    rows = ["n q lambda dim generator_coeffs"]
    for code in fam.codes:
        rows.append(
            f"{code.n} {code.q} {format_element(code.lam)} {code.dimension} {format_poly(code.generator)}"
        )
    return rows


def codes_dict(fam: CodeFamily) -> dict:
    return {
        "n": fam.n,
        "q": fam.lam.ctx.order,
        "lambda": format_element(fam.lam),
        "method": fam.method,
        "note": fam.note,
        "codes": [
            {
                "dim": c.dimension,
                "generator": format_poly(c.generator),
                "check_factor": format_poly(c.check_factor),
            }
            for c in fam.codes
        ],
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .nodes import ONE, ZERO, Add, Const, Div, Expr, Func, Mul, Neg, Param, Pow, Var, as_expr
from .simplify import add, func, mul, power, simplify

_HALF = Fraction(1, 2)


def differentiate(e: Expr, var: str) -> Expr:
    """Partial derivative of ``e`` with respect to coordinate ``var``, simplified.

    Parameters are treated as constants.
    """
    return simplify(_diff(simplify(e), var))


@lru_cache(maxsize=1 << 16)
def _diff(e: Expr, v: str) -> Expr:
    if v not in e.variables():
        return ZERO
    if isinstance(e, Var):
        return ONE if e.name == v else ZERO
    if isinstance(e, Add):
        return add([_diff(c, v) for c in e.children])
    if isinstance(e, Neg):
        return mul([Const(-1), _diff(e.arg, v)])
    if isinstance(e, Mul):
        terms = []
        fs = e.children
        for i, f in enumerate(fs):
            df = _diff(f, v)
            if df != ZERO:
                terms.append(mul([df, *fs[:i], *fs[i + 1:]]))
        return add(terms)
    if isinstance(e, Div):
        n, d = e.num, e.den
        return _diff(mul([n, power(d, Const(-1))]), v)
    if isinstance(e, Pow):
        b, k = e.base, e.exponent
        if v not in k.variables():
            # k * b^(k-1) * b'
            return mul([k, power(b, add([k, Const(-1)])), _diff(b, v)])
        # b^k = exp(k ln b)
        return mul([e, _diff(mul([k, func("ln", b)]), v)])
    if isinstance(e, Func):
        u = e.arg
        du = _diff(u, v)
        if e.name == "exp":
            return mul([e, du])
        if e.name == "ln":
            if isinstance(u, Pow) and v not in u.exponent.variables():
                # d ln(b^k) = k b'/b
                return mul([u.exponent, _diff(u.base, v), power(u.base, Const(-1))])
            return mul([du, power(u, Const(-1))])
        if e.name == "sqrt":
            return mul([Const(_HALF), du, power(e, Const(-1))])
        if e.name == "sin":
            return mul([func("cos", u), du])
        if e.name == "cos":
            return mul([Const(-1), func("sin", u), du])
        if e.name == "sinh":
            return mul([func("cosh", u), du])
        if e.name == "cosh":
            return mul([func("sinh", u), du])
    raise TypeError(f"cannot differentiate {type(e).__name__}")


def substitute(e: Expr, mapping: Mapping[str, object]) -> Expr:
    """Replace variables/parameters named in ``mapping`` by expressions or numbers.

    The result is not simplified.
    """
    table = {k: as_expr(v) for k, v in mapping.items()}

    def go(n: Expr) -> Expr:
        if isinstance(n, (Var, Param)):
            return table.get(n.name, n)
        if isinstance(n, Const) or not (n.free_names() & table.keys()):
            return n
        if isinstance(n, Func):
            return Func(n.name, go(n.arg))
        return type(n)(*(go(c) for c in n.children))

    return go(e)

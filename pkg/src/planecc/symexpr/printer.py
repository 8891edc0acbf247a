"""Render expressions in the input grammar.

The output reparses to a tree that evaluates bit-for-bit identically; only
constants may change shape (``-2`` comes back as a negation of ``2``).
"""
from __future__ import annotations

from fractions import Fraction

from .nodes import Add, Const, Div, Expr, Func, Mul, Neg, Param, Pow, Var


def _const_text(c: Const) -> str:
    v = c.value
    if isinstance(v, Fraction):
        if v.denominator == 1:
            s = str(v.numerator)
        else:
            s = f"{v.numerator}/{v.denominator}"
    else:
        s = repr(v)
    if s.startswith("-") or "/" in s:
        return f"({s})"
    return s


def _is_atomic(e: Expr) -> bool:
    return isinstance(e, (Const, Var, Param, Func))


def _paren(s: str) -> str:
    return f"({s})"


def _negative_part(e: Expr):
    """For a product with a negative coefficient, the text of its negation."""
    if not (isinstance(e, Mul) and isinstance(e.children[0], Const) and e.children[0].value < 0):
        return None
    c = -e.children[0].value
    rest = list(e.children[1:])
    factors = rest if c == 1 else [Const(c)] + rest
    if len(factors) == 1:
        f = factors[0]
        return str(f) if _is_atomic(f) or isinstance(f, Pow) else _paren(str(f))
    return _mul_text(factors)


def _mul_text(factors) -> str:
    out = []
    for f in factors:
        s = str(f)
        if not (_is_atomic(f) or isinstance(f, Pow)):
            s = _paren(s)
        out.append(s)
    return "*".join(out)


def to_text(e: Expr) -> str:
    if isinstance(e, Const):
        return _const_text(e)
    if isinstance(e, (Var, Param)):
        return e.name
    if isinstance(e, Func):
        return f"{e.name}({str(e.arg)})"
    if isinstance(e, Neg):
        inner = str(e.arg)
        return "-" + (inner if _is_atomic(e.arg) else _paren(inner))
    if isinstance(e, Add):
        parts = []
        for i, term in enumerate(e.children):
            if i > 0 and isinstance(term, Neg):
                inner = term.arg
                s = str(inner)
                parts.append(" - " + (_paren(s) if isinstance(inner, Add) else s))
                continue
            neg = _negative_part(term) if i > 0 else None
            if neg is not None:
                parts.append(" - " + neg)
                continue
            s = str(term)
            if isinstance(term, Add):
                s = _paren(s)
            parts.append(s if i == 0 else " + " + s)
        return "".join(parts)
    if isinstance(e, Mul):
        neg = _negative_part(e)
        if neg is not None:
            return "-" + neg
        return _mul_text(e.children)
    if isinstance(e, Div):
        num, den = e.num, e.den
        ns = str(num)
        if not (_is_atomic(num) or isinstance(num, (Pow, Div))):
            ns = _paren(ns)
        ds = str(den)
        if not (_is_atomic(den) or isinstance(den, Pow)):
            ds = _paren(ds)
        return f"{ns}/{ds}"
    if isinstance(e, Pow):
        bs = str(e.base)
        if not _is_atomic(e.base):
            bs = _paren(bs)
        es = str(e.exponent)
        if not _is_atomic(e.exponent):
            es = _paren(es)
        return f"{bs}^{es}"
    raise TypeError(f"cannot print {type(e).__name__}")

"""Numeric evaluation.

``evaluate`` is the checked scalar path: every domain violation raises
:class:`EvaluationError`. ``compile_expr`` builds a vectorized numpy closure
used for sampling; there domain violations show up as non-finite entries and
the caller decides what to do with them.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, Mapping

import numpy as np

from .nodes import Add, Const, Div, Expr, Func, Mul, Neg, Param, Pow, Var


class EvaluationError(ArithmeticError):
    """Raised for ln/sqrt of invalid arguments, division by zero or overflow."""


_SCALAR_FUNCS = {
    "exp": math.exp,
    "sin": math.sin,
    "cos": math.cos,
    "sinh": math.sinh,
    "cosh": math.cosh,
}


def evaluate(e: Expr, point: Mapping[str, float], params: Mapping[str, float] | None = None) -> float:
    """Evaluate ``e`` in IEEE double precision.

    ``point`` maps coordinate names to values; ``params`` binds parameters.
    """
    env = dict(point)
    if params:
        env.update(params)
    value = _eval(e, env)
    if not math.isfinite(value):
        raise EvaluationError(f"non-finite result evaluating {e}")
    return value


def _eval(e: Expr, env) -> float:
    if isinstance(e, Const):
        return e.fvalue
    if isinstance(e, (Var, Param)):
        try:
            return float(env[e.name])
        except KeyError:
            raise EvaluationError(f"unbound symbol {e.name!r}") from None
    if isinstance(e, Add):
        total = _eval(e.children[0], env)
        for c in e.children[1:]:
            total = total + _eval(c, env)
        return total
    if isinstance(e, Mul):
        prod = _eval(e.children[0], env)
        for c in e.children[1:]:
            prod = prod * _eval(c, env)
        return prod
    if isinstance(e, Neg):
        return -_eval(e.arg, env)
    if isinstance(e, Div):
        num = _eval(e.num, env)
        den = _eval(e.den, env)
        if den == 0.0:
            raise EvaluationError("division by zero")
        return num / den
    if isinstance(e, Pow):
        b = _eval(e.base, env)
        k = _eval(e.exponent, env)
        if b == 0.0 and k < 0:
            raise EvaluationError("division by zero")
        if b < 0 and not float(k).is_integer():
            raise EvaluationError("non-integer power of a negative number")
        try:
            return math.pow(b, k)
        except OverflowError:
            raise EvaluationError("overflow in power") from None
    if isinstance(e, Func):
        u = _eval(e.arg, env)
        if e.name == "ln":
            if u <= 0:
                raise EvaluationError("ln of non-positive argument")
            return math.log(u)
        if e.name == "sqrt":
            if u < 0:
                raise EvaluationError("sqrt of negative argument")
            return math.sqrt(u)
        try:
            return _SCALAR_FUNCS[e.name](u)
        except OverflowError:
            raise EvaluationError(f"overflow in {e.name}") from None
    raise TypeError(type(e).__name__)


Compiled = Callable[[Mapping[str, object]], np.ndarray]

_NP_FUNCS = {
    "exp": np.exp,
    "ln": np.log,
    "sqrt": np.sqrt,
    "sin": np.sin,
    "cos": np.cos,
    "sinh": np.sinh,
    "cosh": np.cosh,
}


@lru_cache(maxsize=1 << 15)
def compile_expr(e: Expr) -> Compiled:
    """Vectorized evaluator: ``f(env)`` where env values may be numpy arrays."""
    if isinstance(e, Const):
        v = e.fvalue
        return lambda env: v
    if isinstance(e, (Var, Param)):
        name = e.name
        return lambda env: env[name]
    if isinstance(e, Add):
        parts = [compile_expr(c) for c in e.children]

        def f_add(env):
            total = parts[0](env)
            for p in parts[1:]:
                total = total + p(env)
            return total

        return f_add
    if isinstance(e, Mul):
        parts = [compile_expr(c) for c in e.children]

        def f_mul(env):
            prod = parts[0](env)
            for p in parts[1:]:
                prod = prod * p(env)
            return prod

        return f_mul
    if isinstance(e, Neg):
        a = compile_expr(e.arg)
        return lambda env: -a(env)
    if isinstance(e, Div):
        n, d = compile_expr(e.num), compile_expr(e.den)
        return lambda env: np.divide(n(env), d(env))
    if isinstance(e, Pow):
        b = compile_expr(e.base)
        k = e.exponent
        if isinstance(k, Const) and k.is_integer():
            ki = int(k.value)
            if ki == 2:
                return lambda env: np.square(b(env))
            if ki < 0:
                return lambda env: np.divide(1.0, np.power(np.asarray(b(env), dtype=float), -ki))
            return lambda env: np.power(b(env), ki)
        kc = compile_expr(k)
        return lambda env: np.power(np.asarray(b(env), dtype=float), kc(env))
    if isinstance(e, Func):
        fn = _NP_FUNCS[e.name]
        a = compile_expr(e.arg)
        return lambda env: fn(a(env))
    raise TypeError(type(e).__name__)


@lru_cache(maxsize=1 << 15)
def compile_magnitude(e: Expr) -> Compiled:
    """Vectorized rounding-scale estimate.

    Sums contribute the sum of absolute term magnitudes, so an expression whose
    terms cancel reports the size of the cancelling terms rather than of the
    (small) result.
    """
    if isinstance(e, Add):
        parts = [compile_magnitude(c) for c in e.children]

        def m_add(env):
            total = parts[0](env)
            for p in parts[1:]:
                total = total + p(env)
            return total

        return m_add
    if isinstance(e, Mul):
        parts = [compile_magnitude(c) for c in e.children]

        def m_mul(env):
            prod = parts[0](env)
            for p in parts[1:]:
                prod = prod * p(env)
            return prod

        return m_mul
    if isinstance(e, Neg):
        return compile_magnitude(e.arg)
    if isinstance(e, Div):
        n, d = compile_magnitude(e.num), compile_expr(e.den)
        return lambda env: np.divide(n(env), np.abs(d(env)))
    if isinstance(e, Pow) and isinstance(e.exponent, Const) and e.exponent.is_integer() and e.exponent.value > 0:
        b = compile_magnitude(e.base)
        ki = int(e.exponent.value)
        return lambda env: np.power(b(env), ki)
    v = compile_expr(e)
    return lambda env: np.abs(v(env))


def evaluate_many(e: Expr, env: Mapping[str, object], size: int) -> np.ndarray:
    """Evaluate on arrays of sample points; non-finite entries mark domain errors."""
    with np.errstate(all="ignore"):
        out = compile_expr(e)(env)
    return np.broadcast_to(np.asarray(out, dtype=float), (size,))


def magnitude_many(e: Expr, env: Mapping[str, object], size: int) -> np.ndarray:
    with np.errstate(all="ignore"):
        out = compile_magnitude(e)(env)
    return np.broadcast_to(np.asarray(out, dtype=float), (size,))

"""Value-preserving rewriting into a canonical sum-of-products form.

Canonical trees use only Const, Var, Param, Add, Mul, Pow and Func nodes:

* Add terms are flattened, like terms are collected by their non-constant
  part, and the terms are sorted.
* A Mul carries at most one leading Const coefficient followed by sorted
  factors; repeated bases are merged by adding exponents, and all ``exp``
  factors merge into one.
* Quotients become negative powers, negation becomes a ``-1`` coefficient.
* ``simplify`` finishes by distributing products over bare sums when the
  result stays small; the building blocks ``add``/``mul`` never distribute,
  so that ``S * S^-2`` still cancels when it arrives in pieces.

Rules that only hold on part of the real line (``exp(ln u) -> u``,
``b^p * b^q -> b^(p+q)``) are applied; the tool evaluates on patches where
they are valid, and evaluation of the original would raise elsewhere.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .nodes import ONE, ZERO, Add, Const, Div, Expr, Func, Mul, Neg, Param, Pow, Var

# Upper bound on the number of terms produced by distributing one product.
DISTRIBUTE_LIMIT = 24

_KIND_ORDER = {Const: 0, Var: 1, Param: 2, Func: 3, Pow: 4, Mul: 5, Add: 6}


def sort_key(e: Expr):
    return (_KIND_ORDER.get(type(e), 9), hash(e))


def simplify(e: Expr) -> Expr:
    return expand(_simplify(e))


def _mark(e: Expr) -> Expr:
    object.__setattr__(e, "_canon", True)
    return e


def _is_canonical(e: Expr) -> bool:
    try:
        return e._canon
    except AttributeError:
        return isinstance(e, (Const, Var, Param))


@lru_cache(maxsize=1 << 16)
def expand(e: Expr) -> Expr:
    """Distribute products over sums where the result stays small."""
    if not isinstance(e, (Add, Mul)):
        return e
    return add(_expand_terms(e))


def _expand_terms(e: Expr) -> list:
    if isinstance(e, Add):
        out = []
        for c in e.children:
            out.extend(_expand_terms(c))
        return out
    if isinstance(e, Mul):
        lists = [_expand_terms(c) for c in e.children]
        size = 1
        for lst in lists:
            size *= len(lst)
        if size == 1:
            return [mul([lst[0] for lst in lists])]
        if size > DISTRIBUTE_LIMIT:
            return [mul([lst[0] if len(lst) == 1 else add(lst) for lst in lists])]
        return [mul(list(combo)) for combo in itertools.product(*lists)]
    return [e]


@lru_cache(maxsize=1 << 16)
def _simplify(e: Expr) -> Expr:
    if _is_canonical(e):
        return e
    if isinstance(e, Neg):
        return mul([Const(-1), _simplify(e.arg)])
    if isinstance(e, Add):
        return add([_simplify(c) for c in e.children])
    if isinstance(e, Mul):
        return mul([_simplify(c) for c in e.children])
    if isinstance(e, Div):
        return mul([_simplify(e.num), power(_simplify(e.den), Const(-1))])
    if isinstance(e, Pow):
        return power(_simplify(e.base), _simplify(e.exponent))
    if isinstance(e, Func):
        return func(e.name, _simplify(e.arg))
    raise TypeError(type(e).__name__)


def _split_coeff(e: Expr):
    """Return (coefficient, remainder) with remainder None for constants."""
    if isinstance(e, Const):
        return e.value, None
    if isinstance(e, Mul) and isinstance(e.children[0], Const):
        rest = e.children[1:]
        return e.children[0].value, rest[0] if len(rest) == 1 else _mark(Mul(*rest))
    return Fraction(1), e


def _scale(rest: Expr, c) -> Expr:
    if c == 1:
        return rest
    if isinstance(rest, Mul):
        return _mark(Mul(Const(c), *rest.children))
    return _mark(Mul(Const(c), rest))


def add(items) -> Expr:
    const = Fraction(0)
    coeffs: dict[Expr, object] = {}
    stack = list(items)
    while stack:
        it = stack.pop()
        if isinstance(it, Add):
            stack.extend(it.children)
            continue
        c, rest = _split_coeff(it)
        if rest is None:
            const += c
        else:
            coeffs[rest] = coeffs.get(rest, 0) + c
    terms = [_scale(rest, c) for rest, c in coeffs.items() if c != 0]
    terms.sort(key=sort_key)
    if const != 0:
        terms.append(Const(const))
    if not terms:
        return ZERO
    if len(terms) == 1:
        return terms[0]
    return _mark(Add(*terms))


def _int_value(e: Expr):
    if isinstance(e, Const) and e.is_integer():
        return int(e.value)
    return None


def mul(items, _depth: int = 0) -> Expr:
    coef = Fraction(1)
    powers: dict[Expr, list] = {}
    exp_args = []
    stack = list(items)
    while stack:
        it = stack.pop()
        if isinstance(it, Mul):
            stack.extend(it.children)
        elif isinstance(it, Const):
            coef *= it.value
        elif isinstance(it, Pow):
            powers.setdefault(it.base, []).append(it.exponent)
        elif isinstance(it, Func) and it.name == "exp":
            exp_args.append(it.arg)
        else:
            powers.setdefault(it, []).append(ONE)
    if coef == 0:
        return ZERO

    factors = []
    if exp_args:
        exp_factor, ln_powers = _merge_exp(tuple(exp_args))
        for base, k in ln_powers:
            powers.setdefault(base, []).append(k)
        if exp_factor is not None:
            factors.append(exp_factor)

    renormalize = False
    for base, exps in powers.items():
        p = power(base, add(exps))
        if isinstance(p, Const):
            coef *= p.value
        elif p == ONE:
            continue
        else:
            if isinstance(p, Mul) or (isinstance(p, Func) and p.name == "exp"):
                renormalize = True
            factors.append(p)
    if coef == 0:
        return ZERO
    if renormalize and _depth < 8:
        return mul([Const(coef)] + factors, _depth + 1)

    factors.sort(key=sort_key)
    if not factors:
        return Const(coef)
    if coef == 1 and len(factors) == 1:
        return factors[0]
    if coef == 1:
        return _mark(Mul(*factors))
    return _mark(Mul(Const(coef), *factors))


@lru_cache(maxsize=1 << 14)
def _merge_exp(args: tuple):
    """Combine exp arguments; integer multiples of ln(u) come back as powers of u."""
    arg = expand(add(args))
    kept, ln_powers = [], []
    for term in arg.children if isinstance(arg, Add) else (arg,):
        c, rest = _split_coeff(term)
        if isinstance(rest, Func) and rest.name == "ln" and isinstance(c, Fraction) and c.denominator == 1:
            ln_powers.append((rest.arg, Const(c)))
        else:
            kept.append(term)
    rest_arg = add(kept)
    return (None if rest_arg == ZERO else _mark(Func("exp", rest_arg))), tuple(ln_powers)


def power(base: Expr, expo: Expr) -> Expr:
    if expo == ZERO:
        return ONE
    if expo == ONE:
        return base
    k = _int_value(expo)
    if isinstance(base, Const):
        if base.value == 1:
            return ONE
        if k is not None and isinstance(base.value, Fraction) and not (base.value == 0 and k < 0):
            return Const(base.value**k)
        return _mark(Pow(base, expo))
    if isinstance(base, Pow) and k is not None and _int_value(base.exponent) is not None:
        return power(base.base, Const(k * _int_value(base.exponent)))
    if isinstance(base, Mul) and k is not None:
        return mul([power(f, expo) for f in base.children])
    if isinstance(base, Func) and base.name == "exp":
        return func("exp", mul([expo, base.arg]))
    if isinstance(base, Func) and base.name == "sqrt" and k is not None and k % 2 == 0:
        return power(base.arg, Const(k // 2))
    return _mark(Pow(base, expo))


_AT_ZERO = {"exp": ONE, "ln": None, "sqrt": ZERO, "sin": ZERO, "cos": ONE, "sinh": ZERO, "cosh": ONE}


def func(name: str, arg: Expr) -> Expr:
    if arg == ZERO and _AT_ZERO.get(name) is not None:
        return _AT_ZERO[name]
    if name == "exp":
        # Routed through mul so ln terms in the argument are extracted.
        return mul([Func("exp", arg)]) if isinstance(arg, (Add, Mul, Func)) else _mark(Func("exp", arg))
    if name == "ln":
        if arg == ONE:
            return ZERO
        if isinstance(arg, Func) and arg.name == "exp":
            return arg.arg
    if name == "sqrt" and isinstance(arg, Const) and isinstance(arg.value, Fraction) and arg.value > 0:
        n, d = arg.value.numerator, arg.value.denominator
        rn, rd = _isqrt_exact(n), _isqrt_exact(d)
        if rn is not None and rd is not None:
            return Const(Fraction(rn, rd))
    return _mark(Func(name, arg))


def _isqrt_exact(n: int):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None

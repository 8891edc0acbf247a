"""Immutable expression tree.

Nodes compare structurally and are hashable, so they can key caches and be
shared freely between threads.
"""
from __future__ import annotations

import zlib
from fractions import Fraction
from typing import Iterator, Union

Number = Union[Fraction, float]

COORDINATES = ("t", "x", "y", "z")
FUNCTIONS = ("exp", "ln", "sqrt", "sin", "cos", "sinh", "cosh")
_KIND_IDS = {name: i for i, name in enumerate(
    ("Const", "Var", "Param", "Add", "Mul", "Div", "Neg", "Pow", "Func"))}


class Expr:
    __slots__ = ("_hash", "_str", "_names", "_canon")

    children: tuple = ()

    def _key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Expr) or type(self) is not type(other):
            return NotImplemented if not isinstance(other, Expr) else False
        return hash(self) == hash(other) and self._key() == other._key()

    def __hash__(self):
        # Deterministic across processes (no str hashing), so hash order can
        # serve as the canonical term order.
        try:
            return self._hash
        except AttributeError:
            h = self._compute_hash()
            object.__setattr__(self, "_hash", h)
            return h

    def _compute_hash(self) -> int:
        return hash((_KIND_IDS[type(self).__name__],) + tuple(hash(c) for c in self.children))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __str__(self):
        try:
            return self._str
        except AttributeError:
            from .printer import to_text

            s = to_text(self)
            object.__setattr__(self, "_str", s)
            return s

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"

    # Builders return raw (unsimplified) trees.
    def __add__(self, other):
        return Add(self, as_expr(other))

    def __radd__(self, other):
        return Add(as_expr(other), self)

    def __sub__(self, other):
        return Add(self, Neg(as_expr(other)))

    def __rsub__(self, other):
        return Add(as_expr(other), Neg(self))

    def __mul__(self, other):
        return Mul(self, as_expr(other))

    def __rmul__(self, other):
        return Mul(as_expr(other), self)

    def __truediv__(self, other):
        return Div(self, as_expr(other))

    def __rtruediv__(self, other):
        return Div(as_expr(other), self)

    def __pow__(self, other):
        return Pow(self, as_expr(other))

    def __neg__(self):
        return Neg(self)

    def walk(self) -> Iterator["Expr"]:
        yield self
        for c in self.children:
            yield from c.walk()

    def _name_sets(self) -> tuple:
        try:
            return self._names
        except AttributeError:
            if isinstance(self, Var):
                names = (frozenset((self.name,)), frozenset())
            elif isinstance(self, Param):
                names = (frozenset(), frozenset((self.name,)))
            else:
                vs, ps = frozenset(), frozenset()
                for c in self.children:
                    cv, cp = c._name_sets()
                    vs, ps = vs | cv, ps | cp
                names = (vs, ps)
            object.__setattr__(self, "_names", names)
            return names

    def variables(self) -> frozenset:
        """Coordinates occurring in the tree."""
        return self._name_sets()[0]

    def parameters(self) -> frozenset:
        return self._name_sets()[1]

    def free_names(self) -> frozenset:
        return self.variables() | self.parameters()


class Const(Expr):
    __slots__ = ("value",)

    def __init__(self, value: Number | int):
        if isinstance(value, bool):
            raise TypeError("boolean is not a numeric constant")
        if isinstance(value, int):
            value = Fraction(value)
        elif isinstance(value, Fraction):
            pass
        elif isinstance(value, float):
            if value != value or value in (float("inf"), float("-inf")):
                raise ValueError("constants must be finite")
            if value.is_integer():
                value = Fraction(int(value))
        else:
            raise TypeError(f"unsupported constant {value!r}")
        object.__setattr__(self, "value", value)

    @property
    def fvalue(self) -> float:
        return float(self.value)

    def _key(self):
        return (self.value,)

    def _compute_hash(self) -> int:
        v = self.value
        if isinstance(v, Fraction):
            return hash((0, v.numerator, v.denominator))
        return hash((0, v))

    @property
    def is_exact(self) -> bool:
        return isinstance(self.value, Fraction)

    def is_integer(self) -> bool:
        return isinstance(self.value, Fraction) and self.value.denominator == 1


class Var(Expr):
    __slots__ = ("name",)

    def __init__(self, name: str):
        if name not in COORDINATES:
            raise ValueError(f"unknown coordinate {name!r}")
        object.__setattr__(self, "name", name)

    def _key(self):
        return (self.name,)

    def _compute_hash(self) -> int:
        return hash((_KIND_IDS[type(self).__name__], zlib.crc32(self.name.encode())))


class Param(Expr):
    __slots__ = ("name",)

    def __init__(self, name: str):
        object.__setattr__(self, "name", name)

    def _key(self):
        return (self.name,)

    def _compute_hash(self) -> int:
        return hash((_KIND_IDS[type(self).__name__], zlib.crc32(self.name.encode())))


class _Nary(Expr):
    __slots__ = ("children",)

    def __init__(self, *children: Expr):
        if len(children) < 2:
            raise ValueError(f"{type(self).__name__} needs at least two operands")
        object.__setattr__(self, "children", tuple(children))

    def _key(self):
        return self.children


class Add(_Nary):
    __slots__ = ()


class Mul(_Nary):
    __slots__ = ()


class Div(Expr):
    __slots__ = ("children",)

    def __init__(self, num: Expr, den: Expr):
        object.__setattr__(self, "children", (num, den))

    num = property(lambda self: self.children[0])
    den = property(lambda self: self.children[1])

    def _key(self):
        return self.children


class Neg(Expr):
    __slots__ = ("children",)

    def __init__(self, arg: Expr):
        object.__setattr__(self, "children", (arg,))

    arg = property(lambda self: self.children[0])

    def _key(self):
        return self.children


class Pow(Expr):
    __slots__ = ("children",)

    def __init__(self, base: Expr, exponent: Expr):
        object.__setattr__(self, "children", (base, exponent))

    base = property(lambda self: self.children[0])
    exponent = property(lambda self: self.children[1])

    def _key(self):
        return self.children


class Func(Expr):
    __slots__ = ("name", "children")

    def __init__(self, name: str, arg: Expr):
        if name not in FUNCTIONS:
            raise ValueError(f"unknown function {name!r}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "children", (arg,))

    arg = property(lambda self: self.children[0])

    def _key(self):
        return (self.name,) + self.children

    def _compute_hash(self) -> int:
        return hash((8, zlib.crc32(self.name.encode()), hash(self.children[0])))


def as_expr(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, str):
        if value in COORDINATES:
            return Var(value)
        return Param(value)
    return Const(value)


ZERO = Const(0)
ONE = Const(1)
T, X, Y, Z = (Var(n) for n in COORDINATES)


def exp(u) -> Func:
    return Func("exp", as_expr(u))


def ln(u) -> Func:
    return Func("ln", as_expr(u))


def sqrt(u) -> Func:
    return Func("sqrt", as_expr(u))

"""Coordinate tensor calculus on metrics whose components are expressions.

Conventions (coordinates labelled x^0.. x^{n-1}):

    Gamma^a_bc = 1/2 g^ad (d_b g_dc + d_c g_db - d_d g_bc)
    R^a_bcd    = d_c Gamma^a_db - d_d Gamma^a_cb + Gamma^a_ce Gamma^e_db - Gamma^a_de Gamma^e_cb
    R_abcd     = g_ae R^e_bcd
    R_ab       = R^c_acb
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Mapping, Sequence

import numpy as np

from .symexpr import ZERO, Add, Const, Expr, differentiate, simplify
from .symexpr.evaluate import evaluate_many
from .symexpr.simplify import add, mul, power

HALF = Const(Fraction(1, 2))


@dataclass(frozen=True)
class TensorField:
    """Components of a tensor with ``up`` contravariant then ``down`` covariant indices.

    Only nonzero components are stored; missing entries read as zero.
    """

    up: int
    down: int
    dim: int
    components: Mapping[tuple, Expr] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return self.up + self.down

    def __getitem__(self, idx) -> Expr:
        if isinstance(idx, int):
            idx = (idx,)
        return self.components.get(tuple(idx), ZERO)

    def indices(self) -> Iterator[tuple]:
        return itertools.product(range(self.dim), repeat=self.rank)

    def nonzero(self) -> Iterator[tuple[tuple, Expr]]:
        return iter(sorted(self.components.items()))

    def evaluate(self, points: Mapping[str, np.ndarray], params: Mapping[str, float] | None = None) -> np.ndarray:
        """Array of shape ``(dim,)*rank + (N,)``; non-finite entries mark domain errors."""
        n = len(next(iter(points.values())))
        env = dict(points)
        if params:
            env.update(params)
        out = np.zeros((self.dim,) * self.rank + (n,))
        for idx, e in self.components.items():
            out[idx] = evaluate_many(e, env, n)
        return out

    def map(self, fn) -> "TensorField":
        comps = {}
        for idx, e in self.components.items():
            v = fn(e)
            if v != ZERO:
                comps[idx] = v
        return TensorField(self.up, self.down, self.dim, comps)


def tensor_from(up: int, down: int, dim: int, comps: Mapping[tuple, Expr]) -> TensorField:
    """Simplify ``comps`` and drop structural zeros."""
    out = {}
    for idx, e in comps.items():
        s = simplify(e)
        if s != ZERO:
            out[tuple(idx)] = s
    return TensorField(up, down, dim, out)


def _scale_terms(e: Expr, factor: Expr) -> Expr:
    """factor * e, distributed over the terms of e without re-expanding them."""
    if isinstance(e, Add):
        return add([mul([factor, t]) for t in e.children])
    return mul([factor, e])


def _negate(e: Expr) -> Expr:
    return _scale_terms(e, Const(-1))


class Metric:
    """A diagonal metric ``g = diag(entries)`` in the given coordinates."""

    def __init__(self, coords: Sequence[str], diagonal: Sequence[Expr]):
        if len(coords) != len(diagonal):
            raise ValueError("need one diagonal entry per coordinate")
        self.coords = tuple(coords)
        self.dim = len(coords)
        self.diagonal = tuple(simplify(d) for d in diagonal)

    @cached_property
    def g(self) -> TensorField:
        return tensor_from(0, 2, self.dim, {(i, i): d for i, d in enumerate(self.diagonal)})

    @cached_property
    def ginv(self) -> TensorField:
        return tensor_from(2, 0, self.dim, {(i, i): power(d, Const(-1)) for i, d in enumerate(self.diagonal)})

    def d(self, e: Expr, i: int) -> Expr:
        return differentiate(e, self.coords[i])

    @cached_property
    def christoffel(self) -> TensorField:
        n = self.dim
        g, gi = self.g, self.ginv
        dg = {(a, b, c): self.d(g[a, b], c) for a in range(n) for b in range(n) for c in range(n)}
        comps = {}
        for a in range(n):
            for b in range(n):
                for c in range(b, n):
                    terms = []
                    for dd in range(n):
                        gad = gi[a, dd]
                        if gad == ZERO:
                            continue
                        inner = add([dg[dd, c, b], dg[dd, b, c], mul([Const(-1), dg[b, c, dd]])])
                        if inner != ZERO:
                            terms.append(mul([HALF, gad, inner]))
                    val = simplify(add(terms))
                    if val != ZERO:
                        comps[a, b, c] = val
                        comps[a, c, b] = val
        return TensorField(1, 2, n, comps)

    @cached_property
    def riemann_up(self) -> TensorField:
        """R^a_bcd."""
        n = self.dim
        G = self.christoffel
        comps = {}
        for a, b in itertools.product(range(n), repeat=2):
            for c in range(n):
                for dd in range(c + 1, n):
                    terms = [self.d(G[a, dd, b], c), mul([Const(-1), self.d(G[a, c, b], dd)])]
                    for e in range(n):
                        if G[a, c, e] != ZERO and G[e, dd, b] != ZERO:
                            terms.append(mul([G[a, c, e], G[e, dd, b]]))
                        if G[a, dd, e] != ZERO and G[e, c, b] != ZERO:
                            terms.append(mul([Const(-1), G[a, dd, e], G[e, c, b]]))
                    val = simplify(add(terms))
                    if val != ZERO:
                        comps[a, b, c, dd] = val
                        comps[a, b, dd, c] = _negate(val)
        return TensorField(1, 3, n, comps)

    @cached_property
    def riemann_down(self) -> TensorField:
        """R_abcd = g_ae R^e_bcd."""
        R = self.riemann_up
        return TensorField(0, 4, self.dim, {
            idx: _scale_terms(e, self.g[idx[0], idx[0]]) for idx, e in R.components.items()
        })

    @cached_property
    def riemann_gradient(self) -> tuple[TensorField, ...]:
        """d_e R^a_bcd for each coordinate e."""
        R = self.riemann_up
        return tuple(R.map(lambda c, i=i: self.d(c, i)) for i in range(self.dim))

    @cached_property
    def ricci(self) -> TensorField:
        """R_ab = R^c_acb."""
        n = self.dim
        R = self.riemann_up
        return tensor_from(0, 2, n, {
            (a, b): add([R[c, a, c, b] for c in range(n)]) for a in range(n) for b in range(n)
        })

    @cached_property
    def ricci_scalar(self) -> Expr:
        n = self.dim
        return simplify(add([mul([self.ginv[a, a], self.ricci[a, a]]) for a in range(n)]))

    def covariant_derivative(self, T: TensorField) -> TensorField:
        """T_{ab;c} = d_c T_ab - Gamma^e_ca T_eb - Gamma^e_cb T_ae for a (0,2) tensor."""
        if (T.up, T.down) != (0, 2):
            raise ValueError("covariant_derivative expects a (0,2) tensor")
        n = self.dim
        G = self.christoffel
        comps = {}
        for a, b, c in itertools.product(range(n), repeat=3):
            terms = [self.d(T[a, b], c)]
            for e in range(n):
                terms.append(mul([Const(-1), G[e, c, a], T[e, b]]))
                terms.append(mul([Const(-1), G[e, c, b], T[a, e]]))
            comps[a, b, c] = add(terms)
        return tensor_from(0, 3, n, comps)

    def covector_derivative(self, k: Sequence[Expr]) -> TensorField:
        """k_{a;b} = d_b k_a - Gamma^e_ba k_e."""
        n = self.dim
        G = self.christoffel
        comps = {}
        for a, b in itertools.product(range(n), repeat=2):
            terms = [self.d(k[a], b)]
            for e in range(n):
                terms.append(mul([Const(-1), G[e, b, a], k[e]]))
            comps[a, b] = add(terms)
        return tensor_from(0, 2, n, comps)

    def lie_metric(self, X: Sequence[Expr]) -> TensorField:
        """h_ab = X^e d_e g_ab + g_eb d_a X^e + g_ae d_b X^e."""
        n = self.dim
        g = self.g
        comps = {}
        for a in range(n):
            for b in range(a, n):
                terms = [mul([X[e], self.d(g[a, b], e)]) for e in range(n)]
                terms.append(mul([g[b, b], self.d(X[b], a)]))
                terms.append(mul([g[a, a], self.d(X[a], b)]))
                comps[a, b] = comps[b, a] = add(terms)
        return tensor_from(0, 2, n, comps)

    def lie_tensor_02(self, T: TensorField, X: Sequence[Expr]) -> TensorField:
        """L_X T_ab for an arbitrary (0,2) tensor."""
        n = self.dim
        comps = {}
        for a, b in itertools.product(range(n), repeat=2):
            terms = [mul([X[e], self.d(T[a, b], e)]) for e in range(n)]
            for e in range(n):
                terms.append(mul([T[e, b], self.d(X[e], a)]))
                terms.append(mul([T[a, e], self.d(X[e], b)]))
            comps[a, b] = add(terms)
        return tensor_from(0, 2, n, comps)

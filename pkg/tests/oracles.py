"""Independent reference computations built on sympy.

Used only to produce reference values for the tests; the package itself does
not depend on sympy. Run this module to print the values frozen in the tests.
"""
from __future__ import annotations

import itertools

import sympy as sp

t, x, y, z = sp.symbols("t x y z", real=True)
COORDS = (t, x, y, z)


def metric(A: str, B: str, C: str):
    A, B, C = (sp.sympify(s, locals={"t": t, "x": x, "ln": sp.log}) for s in (A, B, C))
    return sp.diag(-sp.exp(A), sp.exp(B), sp.exp(C), sp.exp(C))


def christoffel(g):
    gi = g.inv()
    n = 4
    G = [[[0] * n for _ in range(n)] for _ in range(n)]
    for a, b, c in itertools.product(range(n), repeat=3):
        G[a][b][c] = sp.Rational(1, 2) * sum(
            gi[a, d] * (sp.diff(g[d, c], COORDS[b]) + sp.diff(g[d, b], COORDS[c]) - sp.diff(g[b, c], COORDS[d]))
            for d in range(n)
        )
    return G


def riemann_up(g):
    G = christoffel(g)
    n = 4
    R = sp.MutableDenseNDimArray.zeros(n, n, n, n)
    for a, b, c, d in itertools.product(range(n), repeat=4):
        R[a, b, c, d] = (
            sp.diff(G[a][d][b], COORDS[c]) - sp.diff(G[a][c][b], COORDS[d])
            + sum(G[a][c][e] * G[e][d][b] - G[a][d][e] * G[e][c][b] for e in range(n))
        )
    return R


def riemann_down(g):
    R = riemann_up(g)
    n = 4
    out = sp.MutableDenseNDimArray.zeros(n, n, n, n)
    for a, b, c, d in itertools.product(range(n), repeat=4):
        out[a, b, c, d] = sum(g[a, e] * R[e, b, c, d] for e in range(n))
    return out


def lie_metric(g, X):
    n = 4
    return sp.Matrix(n, n, lambda a, b: sum(
        X[e] * sp.diff(g[a, b], COORDS[e]) + g[e, b] * sp.diff(X[e], COORDS[a]) + g[a, e] * sp.diff(X[e], COORDS[b])
        for e in range(n)
    ))


def lie_riemann(g, X):
    R = riemann_up(g)
    n = 4
    out = sp.MutableDenseNDimArray.zeros(n, n, n, n)
    for a, b, c, d in itertools.product(range(n), repeat=4):
        out[a, b, c, d] = sum(
            X[e] * sp.diff(R[a, b, c, d], COORDS[e])
            - R[e, b, c, d] * sp.diff(X[a], COORDS[e])
            + R[a, e, c, d] * sp.diff(X[e], COORDS[b])
            + R[a, b, e, d] * sp.diff(X[e], COORDS[c])
            + R[a, b, c, e] * sp.diff(X[e], COORDS[d])
            for e in range(n)
        )
    return out


def field(*comps: str):
    return [sp.sympify(c, locals={"t": t, "x": x, "y": y, "z": z}) for c in comps]


BIVECTORS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def riemann_matrix(A: str, B: str, C: str, t0, x0):
    """6x6 curvature matrix at (t0, x0) as a float array."""
    import numpy as np

    R = riemann_down(metric(A, B, C))
    sub = {t: sp.nsimplify(t0), x: sp.nsimplify(x0), y: 0, z: 0}
    return np.array([[float(R[a, b, c, d].subs(sub)) for c, d in BIVECTORS] for a, b in BIVECTORS])


def max_abs(arr, points) -> float:
    f = sp.lambdify(COORDS, list(sp.flatten(arr)), "mpmath")
    return max(abs(float(v)) for p in points for v in f(*p))


if __name__ == "__main__":
    g27 = metric("0", "0", "ln(t**2)")
    print("case27 R_2323(t=2):", riemann_down(g27)[2, 3, 2, 3].subs(t, 2))
    G = christoffel(g27)
    print("case27 Gamma^0_22, Gamma^2_02:", sp.simplify(G[0][2][2]), sp.simplify(G[2][0][2]))
    g1 = metric("t", "0", "2*t")
    R1 = riemann_down(g1)
    print("case1 R_0202, R_2323:", sp.simplify(R1[0, 2, 0, 2]), sp.simplify(R1[2, 3, 2, 3]))
    g14 = metric("2*t + 2*x", "t + x", "0")
    print("case14 R_0101(0,0):", sp.simplify(riemann_down(g14)[0, 1, 0, 1].subs({t: 0, x: 0})))
    print("case1 h for (0, x^2):", sp.simplify(lie_metric(g1, field("0", "x**2", "0", "0"))))
    g6 = metric("0", "ln((t + x)**2)", "ln(t**2)")
    pts = [(1.0 + 0.25 * i, 1.0 + 0.2 * j, 0.1, -0.3) for i in range(5) for j in range(6)]
    print("case6 max|L_X R| for (0, x):", max_abs(lie_riemann(g6, field("0", "x", "0", "0")), pts))
    g28 = metric("0", "0", "ln((t + 2*x)**2)")
    print("case28 max|L_X R| for (t^2, 0):", max_abs(lie_riemann(g28, field("t**2", "0", "0", "0")), pts))
    print("case28 R_2323:", sp.factor(riemann_down(g28)[2, 3, 2, 3]))

"""Symmetry checks for vector fields: Killing, homothetic, affine and
curvature collineations (L_X R^a_bcd = 0), on the full metric and on the
induced three- and two-dimensional geometries.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .checks import Verdict, tensor_vanishes
from .config import AnalysisConfig
from .curvclass import rank_with_tol
from .geometry import PlaneSymmetricMetric
from .symexpr import (
    ZERO,
    Const,
    Domain,
    Expr,
    TriState,
    as_expr,
    differentiate,
    parse,
    simplify,
    zero_test,
)
from .symexpr.simplify import add, func, mul
from .tensors import Metric, TensorField, tensor_from

MINUS = Const(-1)


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class VectorField:
    components: tuple[Expr, ...]
    name: str = ""

    def __post_init__(self):
        comps = tuple(simplify(_expr(c)) for c in self.components)
        object.__setattr__(self, "components", comps)

    @classmethod
    def parse(cls, *texts: str, name: str = "") -> "VectorField":
        return cls(tuple(parse(t) for t in texts), name=name)

    def __getitem__(self, i: int) -> Expr:
        return self.components[i]

    def __len__(self) -> int:
        return len(self.components)

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(tuple(add([a, b]) for a, b in zip(self, other)))

    def scaled(self, c) -> "VectorField":
        return VectorField(tuple(mul([as_expr(c), a]) for a in self))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def _expr(v) -> Expr:
    return parse(v) if isinstance(v, str) else as_expr(v)


def _field(X) -> VectorField:
    return X if isinstance(X, VectorField) else VectorField(tuple(_expr(c) for c in X))


def _check4(X: VectorField):
    if len(X) != 4:
        raise ValueError("a vector field on spacetime needs four components")


# --- metric symmetries ------------------------------------------------------

def lie_metric(M: PlaneSymmetricMetric, X) -> TensorField:
    X = _field(X)
    _check4(X)
    return M.frame.lie_metric(X.components)


def is_killing(M: PlaneSymmetricMetric, X, cfg: AnalysisConfig = AnalysisConfig()) -> Verdict:
    return tensor_vanishes(lie_metric(M, X), M.domain, cfg.zero_test)


def _homothety_residual(frame: Metric, h: TensorField, c: Expr) -> TensorField:
    n = frame.dim
    return tensor_from(0, 2, n, {
        (a, a): add([h[a, a], mul([MINUS, c, frame.g[a, a]])]) for a in range(n)
    } | {idx: e for idx, e in h.components.items() if idx[0] != idx[1]})


def _nice_constant(value: float) -> Const:
    frac = Fraction(value).limit_denominator(1000)
    if abs(float(frac) - value) <= 1e-12 * max(1.0, abs(value)):
        return Const(frac)
    return Const(value)


def _estimate_ratio(num: Expr, den: Expr, pts) -> float | None:
    n = len(pts["t"])
    env = dict(pts)
    from .symexpr import evaluate_many

    a, b = evaluate_many(num, env, n), evaluate_many(den, env, n)
    ok = np.isfinite(a) & np.isfinite(b) & (np.abs(b) > 1e-300)
    if not ok.any():
        return None
    i = int(np.flatnonzero(ok)[0])
    return float(a[i] / b[i])


@dataclass
class Homothety:
    constant: float | None
    residual: Verdict | None = None


def homothety(M: PlaneSymmetricMetric, X, cfg: AnalysisConfig = AnalysisConfig()) -> Homothety:
    """h = 2c g with c estimated from h_00 / (2 g_00) and then verified."""
    h = lie_metric(M, X)
    g = M.frame.g
    pts = M.domain.sample(cfg.samples, cfg.seed)
    ratio = _estimate_ratio(h[0, 0], mul([Const(2), g[0, 0]]), pts)
    if ratio is None:
        return Homothety(None)
    c = _nice_constant(ratio)
    verdict = tensor_vanishes(_homothety_residual(M.frame, h, mul([Const(2), c])), M.domain, cfg.zero_test, pts)
    return Homothety(float(c.value) if verdict.holds else None, verdict)


def homothety_constant(M: PlaneSymmetricMetric, X, cfg: AnalysisConfig = AnalysisConfig()) -> float | None:
    return homothety(M, X, cfg).constant


def is_affine(M: PlaneSymmetricMetric, X, cfg: AnalysisConfig = AnalysisConfig()) -> Verdict:
    h = lie_metric(M, X)
    return tensor_vanishes(M.frame.covariant_derivative(h), M.domain, cfg.zero_test)


# --- curvature collineations ------------------------------------------------

def lie_riemann(M: PlaneSymmetricMetric, X) -> TensorField:
    """L_X R^a_bcd in partial-derivative form.

    X^e d_e R^a_bcd - R^e_bcd d_e X^a + R^a_ecd d_b X^e + R^a_bed d_c X^e + R^a_bce d_d X^e
    """
    X = _field(X)
    _check4(X)
    frame = M.frame
    R = frame.riemann_up
    dR = frame.riemann_gradient
    n = frame.dim
    dX = [[frame.d(X[a], b) for b in range(n)] for a in range(n)]  # dX[a][b] = d_b X^a
    comps = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(c + 1, n):
                    terms = []
                    for e in range(n):
                        if X[e] != ZERO and dR[e][a, b, c, d] != ZERO:
                            terms.append(mul([X[e], dR[e][a, b, c, d]]))
                        for coef, r, dx in (
                            (MINUS, R[e, b, c, d], dX[a][e]),
                            (None, R[a, e, c, d], dX[e][b]),
                            (None, R[a, b, e, d], dX[e][c]),
                            (None, R[a, b, c, e], dX[e][d]),
                        ):
                            if r != ZERO and dx != ZERO:
                                terms.append(mul([r, dx] if coef is None else [coef, r, dx]))
                    val = simplify(add(terms))
                    if val != ZERO:
                        comps[a, b, c, d] = val
                        comps[a, b, d, c] = mul([MINUS, val])
    return TensorField(1, 3, n, comps)


def lie_riemann_covariant(M: PlaneSymmetricMetric, X, pts) -> np.ndarray:
    """Numerical L_X R^a_bcd from covariant derivatives, shape (4, 4, 4, 4, N).

    R^a_bcd;e X^e + R^a_ecd X^e_;b + R^a_bed X^e_;c + R^a_bce X^e_;d - R^e_bcd X^a_;e
    """
    X = _field(X)
    frame = M.frame
    n = len(pts["t"])
    env = dict(pts)
    from .symexpr import evaluate_many

    Xv = np.stack([evaluate_many(c, env, n) for c in X])
    dXv = np.stack([[evaluate_many(frame.d(X[a], b), env, n) for b in range(4)] for a in range(4)])
    G = frame.christoffel.evaluate(pts)
    R = frame.riemann_up.evaluate(pts)
    dR = np.stack([T.evaluate(pts) for T in frame.riemann_gradient], axis=0)  # [e, a, b, c, d, N]
    # nabla_b X^a = d_b X^a + Gamma^a_be X^e
    DX = dXv + np.einsum("abeN,eN->abN", G, Xv)
    # nabla_e R^a_bcd
    DR = (
        np.einsum("eabcdN->abcdeN", dR)
        + np.einsum("afeN,fbcdN->abcdeN", G, R)
        - np.einsum("fbeN,afcdN->abcdeN", G, R)
        - np.einsum("fceN,abfdN->abcdeN", G, R)
        - np.einsum("fdeN,abcfN->abcdeN", G, R)
    )
    return (
        np.einsum("abcdeN,eN->abcdN", DR, Xv)
        + np.einsum("aecdN,ebN->abcdN", R, DX)
        + np.einsum("abedN,ecN->abcdN", R, DX)
        + np.einsum("abceN,edN->abcdN", R, DX)
        - np.einsum("ebcdN,aeN->abcdN", R, DX)
    )


def lie_riemann_crosscheck(M: PlaneSymmetricMetric, X, pts) -> float:
    """Largest difference between the partial and covariant forms, relative to
    the size of the terms involved."""
    partial = lie_riemann(M, X).evaluate(pts)
    covariant = lie_riemann_covariant(M, X, pts)
    scale = 1.0 + np.max(np.abs(M.frame.riemann_up.evaluate(pts)))
    diff = np.abs(partial - covariant)
    diff = np.where(np.isfinite(diff), diff, 0.0)
    return float(np.max(diff) / scale)


def is_cc(M: PlaneSymmetricMetric, X, cfg: AnalysisConfig = AnalysisConfig()) -> Verdict:
    return tensor_vanishes(lie_riemann(M, X), M.domain, cfg.zero_test)


def is_proper_cc(M: PlaneSymmetricMetric, X, cfg: AnalysisConfig = AnalysisConfig()) -> bool:
    return is_cc(M, X, cfg).holds and is_affine(M, X, cfg).state is TriState.NONZERO


@dataclass
class CollineationReport:
    field: VectorField
    is_killing: bool
    homothety_constant: float | None
    is_affine: bool
    is_cc: bool
    is_proper_cc: bool
    killing: Verdict
    homothety: Verdict | None
    affine: Verdict
    cc: Verdict
    crosscheck: float | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.is_killing:
            return "killing"
        if self.homothety_constant is not None:
            return "homothetic"
        if self.is_affine:
            return "affine"
        if self.is_proper_cc:
            return "proper_cc"
        return "not_cc"

    def as_dict(self) -> dict:
        return {
            "field": [str(c) for c in self.field],
            "status": self.status,
            "killing": self.is_killing,
            "homothety_constant": self.homothety_constant,
            "affine": self.is_affine,
            "cc": self.is_cc,
            "proper_cc": self.is_proper_cc,
            "residuals": {
                "lie_metric": self.killing.as_dict(),
                "homothety": self.homothety.as_dict() if self.homothety else None,
                "covariant_lie_metric": self.affine.as_dict(),
                "lie_riemann": self.cc.as_dict(),
            },
            "crosscheck": self.crosscheck,
            "warnings": list(self.warnings),
        }


def check_vector_field(
    M: PlaneSymmetricMetric,
    X,
    cfg: AnalysisConfig = AnalysisConfig(),
    crosscheck: bool = False,
) -> CollineationReport:
    X = _field(X)
    _check4(X)
    killing = is_killing(M, X, cfg)
    hom = homothety(M, X, cfg)
    affine = is_affine(M, X, cfg)
    cc = is_cc(M, X, cfg)
    warnings = []
    for label, v in (("lie_metric", killing), ("covariant_lie_metric", affine), ("lie_riemann", cc)):
        if v.state is TriState.UNDETERMINED:
            warnings.append(f"{label}: Undetermined at components {v.undetermined}")
    cross = None
    if crosscheck:
        pts = M.domain.sample(cfg.samples, cfg.seed)
        cross = lie_riemann_crosscheck(M, X, pts)
        if cross > 1e-8:
            warnings.append(f"partial and covariant forms of L_X R differ by {cross:.3e}")
    proper = cc.holds and affine.state is TriState.NONZERO
    return CollineationReport(
        field=X,
        is_killing=killing.holds,
        homothety_constant=hom.constant,
        is_affine=affine.holds,
        is_cc=cc.holds,
        is_proper_cc=proper,
        killing=killing,
        homothety=hom.residual,
        affine=affine,
        cc=cc,
        crosscheck=cross,
        warnings=warnings,
    )


def killing_trio() -> list[VectorField]:
    """The translations in y, z and the rotation in the y-z plane."""
    return [
        VectorField.parse("0", "0", "1", "0", name="d_y"),
        VectorField.parse("0", "0", "0", "1", name="d_z"),
        VectorField.parse("0", "0", "z", "-y", name="z d_y - y d_z"),
    ]


def gram_rank(fields: Sequence[VectorField], dom: Domain, cfg: AnalysisConfig = AnalysisConfig()) -> int:
    """Rank of the Gram matrix of the fields' sampled component vectors."""
    from .symexpr import evaluate_many

    pts = dom.sample(cfg.samples, cfg.seed)
    n = cfg.samples
    rows = [np.concatenate([evaluate_many(c, pts, n) for c in X]) for X in fields]
    V = np.stack(rows)
    return rank_with_tol(V @ V.T, cfg.rank_tol)


# --- induced three-dimensional geometry -------------------------------------

def _require_zero(M: PlaneSymmetricMetric, label: str, e: Expr, cfg: AnalysisConfig):
    r = zero_test(e, M.domain, cfg.zero_test)
    if r.state is not TriState.ZERO:
        raise PreconditionError(f"precondition {label} = 0 fails ({r.state}, |value| up to {r.max_abs:.3g})")


@dataclass(frozen=True)
class Induced3Geometry:
    """g_00 = -e^alpha(t), g_22 = g_33 = e^eta(t) on coordinates (t, y, z)."""

    alpha: Expr
    eta: Expr
    domain: Domain = field(default_factory=Domain)

    coords = ("t", "y", "z")

    @property
    def metric(self) -> Metric:
        ea, ee = func("exp", self.alpha), func("exp", self.eta)
        return Metric(self.coords, [mul([MINUS, ea]), ee, ee])


def induced_3d(M: PlaneSymmetricMetric, cfg: AnalysisConfig = AnalysisConfig()) -> Induced3Geometry:
    A, B, C = M.functions
    _require_zero(M, "A_x", differentiate(A, "x"), cfg)
    _require_zero(M, "B_t", differentiate(B, "t"), cfg)
    _require_zero(M, "C_x", differentiate(C, "x"), cfg)
    return Induced3Geometry(A, C, M.domain)


@dataclass
class Homothety3:
    constant: float | None
    equations: dict[str, Verdict]


def homothety_equations_3d(G3: Induced3Geometry, X, c: Expr) -> dict[str, Expr]:
    """The six component equations of L_X' g = c g, each rearranged to lhs = 0."""
    X0, X2, X3 = (_expr(v) for v in X)
    d = differentiate
    at, et = d(G3.alpha, "t"), d(G3.eta, "t")
    ea, ee = func("exp", G3.alpha), func("exp", G3.eta)
    return {
        "00": add([mul([at, X0]), mul([Const(2), d(X0, "t")]), mul([MINUS, c])]),
        "02": add([mul([MINUS, ea, d(X0, "y")]), mul([ee, d(X2, "t")])]),
        "03": add([mul([MINUS, ea, d(X0, "z")]), mul([ee, d(X3, "t")])]),
        "22": add([mul([et, X0]), mul([Const(2), d(X2, "y")]), mul([MINUS, c])]),
        "23": add([d(X2, "z"), d(X3, "y")]),
        "33": add([mul([et, X0]), mul([Const(2), d(X3, "z")]), mul([MINUS, c])]),
    }


def is_homothetic_3d(G3: Induced3Geometry, X, cfg: AnalysisConfig = AnalysisConfig()) -> Homothety3:
    """Solve for c in L_X' g = c g (note: c, not 2c) and verify all six equations."""
    X = tuple(_expr(v) for v in X)
    if len(X) != 3:
        raise ValueError("an induced 3D field has components (X^0, X^2, X^3)")
    for v in X:
        extra = v.variables() - {"t", "y", "z"}
        if extra:
            raise ValueError(f"induced 3D field may not depend on {', '.join(sorted(extra))}")
    probe = homothety_equations_3d(G3, X, ZERO)["00"]  # equals c at a solution
    pts = G3.domain.sample(cfg.samples, cfg.seed)
    est = _estimate_ratio(probe, Const(1), pts)
    if est is None:
        return Homothety3(None, {})
    c = _nice_constant(est)
    eqs = homothety_equations_3d(G3, X, c)
    verdicts = {k: zero_test(e, G3.domain, cfg.zero_test, points=pts) for k, e in eqs.items()}
    verdicts = {k: Verdict(r.state, r.max_abs, r.worst_point) for k, r in verdicts.items()}
    ok = all(v.holds for v in verdicts.values())
    return Homothety3(float(c.value) if ok else None, verdicts)


# --- induced two-dimensional geometry ---------------------------------------

@dataclass
class Induced2Geometry:
    A: Expr
    B: Expr
    ricci: dict[tuple, Expr]
    scalar: Expr
    G: dict[tuple, Expr]
    domain: Domain

    coords = ("t", "x")

    @property
    def metric(self) -> Metric:
        return Metric(self.coords, [mul([MINUS, func("exp", self.A)]), func("exp", self.B)])


_HALF = Const(Fraction(1, 2))
_QUARTER = Const(Fraction(1, 4))


def induced_2d(M: PlaneSymmetricMetric, cfg: AnalysisConfig = AnalysisConfig()) -> Induced2Geometry:
    A, B, C = M.functions
    _require_zero(M, "C_t", differentiate(C, "t"), cfg)
    _require_zero(M, "C_x", differentiate(C, "x"), cfg)
    d = differentiate
    At, Ax, Bt, Bx = d(A, "t"), d(A, "x"), d(B, "t"), d(B, "x")
    bracket = add([
        mul([func("exp", A), add([mul([Ax, Ax]), mul([Const(2), d(Ax, "x")]), mul([MINUS, Ax, Bx])])]),
        mul([MINUS, func("exp", B), add([mul([Bt, Bt]), mul([Const(2), d(Bt, "t")]), mul([MINUS, At, Bt])])]),
    ])
    R00 = simplify(mul([_QUARTER, func("exp", mul([MINUS, B])), bracket]))
    R11 = simplify(mul([MINUS, _QUARTER, func("exp", mul([MINUS, A])), bracket]))
    ricci = {(0, 0): R00, (1, 1): R11}
    g00, g11 = mul([MINUS, func("exp", A)]), func("exp", B)
    scalar = simplify(add([mul([R00, func("exp", mul([MINUS, A])), MINUS]), mul([R11, func("exp", mul([MINUS, B]))])]))
    G = {(0, 0): simplify(mul([_HALF, scalar, g00])), (1, 1): simplify(mul([_HALF, scalar, g11]))}
    geo = Induced2Geometry(A, B, ricci, scalar, G, M.domain)
    _crosscheck_2d(geo, cfg)
    return geo


def _crosscheck_2d(geo: Induced2Geometry, cfg: AnalysisConfig):
    generic = geo.metric.ricci
    for idx in ((0, 0), (0, 1), (1, 1)):
        diff = add([generic[idx], mul([MINUS, geo.ricci.get(idx, ZERO)])])
        r = zero_test(diff, geo.domain, cfg.zero_test)
        if r.state is TriState.NONZERO:
            raise ArithmeticError(f"2D Ricci component {idx} disagrees with the generic computation")


@dataclass
class TwoDCheck:
    holds: bool
    vacuous: bool
    equations: dict[str, Verdict]


def cc_equations_2d(G2: Induced2Geometry, X) -> dict[str, Expr]:
    X0, X1 = (_expr(v) for v in X)
    d = differentiate
    G00, G11 = G2.G[0, 0], G2.G[1, 1]
    return {
        "00": add([mul([d(G00, "t"), X0]), mul([d(G00, "x"), X1]), mul([Const(2), G00, d(X0, "t")])]),
        "01": add([mul([func("exp", G2.B), d(X1, "t")]), mul([MINUS, func("exp", G2.A), d(X0, "x")])]),
        "11": add([mul([d(G11, "t"), X0]), mul([d(G11, "x"), X1]), mul([Const(2), G11, d(X1, "x")])]),
    }


def is_2d_cc(G2: Induced2Geometry, X, cfg: AnalysisConfig = AnalysisConfig()) -> TwoDCheck:
    X = tuple(_expr(v) for v in X)
    if len(X) != 2:
        raise ValueError("an induced 2D field has components (X^0, X^1)")
    for v in X:
        extra = v.variables() - {"t", "x"}
        if extra:
            raise ValueError(f"induced 2D field may not depend on {', '.join(sorted(extra))}")
    vacuous = zero_test(G2.scalar, G2.domain, cfg.zero_test).state is TriState.ZERO
    pts = G2.domain.sample(cfg.samples, cfg.seed)
    verdicts = {}
    for k, e in cc_equations_2d(G2, X).items():
        r = zero_test(e, G2.domain, cfg.zero_test, points=pts)
        verdicts[k] = Verdict(r.state, r.max_abs, r.worst_point)
    if vacuous:
        # G vanishes, so L_X' G = 0 for every X'; the mixed equation only
        # holds after dividing out R and is not required.
        return TwoDCheck(True, True, verdicts)
    return TwoDCheck(all(v.holds for v in verdicts.values()), False, verdicts)

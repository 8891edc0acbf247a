"""Algebraic classification of the curvature tensor.

The Riemann tensor is viewed as a symmetric map on the six-dimensional space
of bivectors. Its rank, together with the kernel N_p = {k : R_abcd k^d = 0},
decides the curvature class A, B, C, D or O at a point.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .checks import Verdict, tensor_vanishes
from .config import AnalysisConfig
from .geometry import PlaneSymmetricMetric, riemann_down
from .symexpr import COORDINATES, Domain, Expr, as_expr
from .symexpr.zerotest import points_at

BIVECTOR_INDEX = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
BIVECTOR_LABELS = tuple(f"[{a}{b}]" for a, b in BIVECTOR_INDEX)
CLASSES = ("A", "B", "C", "D", "O")

# Below this the largest singular value is taken as an exact zero.
ZERO_FLOOR = 1e-12


class RankMismatchError(ValueError):
    pass


Point = Mapping[str, float]


def _as_points(p: Point) -> dict[str, np.ndarray]:
    return {v: np.array([float(p.get(v, 0.0))]) for v in COORDINATES}


def metric_at(M: PlaneSymmetricMetric, p: Point) -> np.ndarray:
    return M.frame.g.evaluate(_as_points(p))[..., 0]


def riemann_at(M: PlaneSymmetricMetric, pts: Mapping[str, np.ndarray]) -> np.ndarray:
    """R_abcd at every point, shape (4, 4, 4, 4, N)."""
    return riemann_down(M).evaluate(pts)


def bivector_matrix(R: np.ndarray) -> np.ndarray:
    """6x6 matrix W[A, B] = R_abcd from a (4, 4, 4, 4) array."""
    W = np.empty((6, 6))
    for i, (a, b) in enumerate(BIVECTOR_INDEX):
        for j, (c, d) in enumerate(BIVECTOR_INDEX):
            W[i, j] = R[a, b, c, d]
    return W


def riemann_matrix_at(M: PlaneSymmetricMetric, p: Point) -> np.ndarray:
    R = riemann_at(M, _as_points(p))[..., 0]
    if not np.all(np.isfinite(R)):
        raise ArithmeticError(f"curvature is not finite at {dict(p)}")
    return bivector_matrix(R)


def rank_with_tol(W: np.ndarray, tau: float = 1e-10) -> int:
    if tau <= 0:
        raise ValueError("tau must be positive")
    s = np.linalg.svd(np.asarray(W, dtype=float), compute_uv=False)
    if s.size == 0 or s[0] <= ZERO_FLOOR:
        return 0
    return int(np.sum(s > tau * s[0]))


@dataclass
class KernelBasis:
    basis: np.ndarray  # rows are k^d, orthonormal in the Euclidean sense

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    def contains(self, k: Sequence[float], tol: float = 1e-8) -> bool:
        k = np.asarray(k, dtype=float)
        k = k / np.linalg.norm(k)
        if self.dim == 0:
            return False
        proj = self.basis.T @ (self.basis @ k)
        return bool(np.linalg.norm(k - proj) <= tol)


def _kernel(R: np.ndarray, tau: float) -> KernelBasis:
    A = R.reshape(64, 4)
    _, s, vt = np.linalg.svd(A)
    if s[0] <= ZERO_FLOOR:
        return KernelBasis(np.eye(4))
    null = vt[s <= tau * s[0]]
    # Put the basis in a reproducible form: reduced row echelon shape of the
    # span, then orthonormalised.
    if null.shape[0]:
        q, _ = np.linalg.qr(_rref(null).T)
        null = q.T
        for i in range(null.shape[0]):
            j = int(np.argmax(np.abs(null[i]) > 1e-12))
            if null[i, j] < 0:
                null[i] = -null[i]
    return KernelBasis(null + 0.0)


def _rref(m: np.ndarray) -> np.ndarray:
    m = m.copy()
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = r + int(np.argmax(np.abs(m[r:, c])))
        if abs(m[piv, c]) < 1e-9:
            continue
        m[[r, piv]] = m[[piv, r]]
        m[r] /= m[r, c]
        for i in range(rows):
            if i != r:
                m[i] -= m[i, c] * m[r]
        r += 1
    return m[:r]


def kernel_Np(M: PlaneSymmetricMetric, p: Point, tau: float = 1e-10) -> KernelBasis:
    R = riemann_at(M, _as_points(p))[..., 0]
    return _kernel(R, tau)


# --- bivectors --------------------------------------------------------------

def bivector(components: Mapping[tuple, float] | Sequence[float]) -> np.ndarray:
    """Antisymmetric 4x4 array from {(a, b): value} or six values in bivector order."""
    F = np.zeros((4, 4))
    items = components.items() if isinstance(components, Mapping) else zip(BIVECTOR_INDEX, components)
    for (a, b), v in items:
        F[a, b] += v
        F[b, a] -= v
    return F


def bivector_vector(F: np.ndarray) -> np.ndarray:
    return np.array([F[a, b] for a, b in BIVECTOR_INDEX])


def _levi_civita() -> np.ndarray:
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
        eps[perm] = -1.0 if inversions % 2 else 1.0
    return eps


_EPS = _levi_civita()


def _dual(F: np.ndarray, g: np.ndarray) -> np.ndarray:
    gi = np.linalg.inv(g)
    Fup = gi @ F @ gi.T
    vol = np.sqrt(abs(np.linalg.det(g)))
    return 0.5 * vol * np.einsum("abcd,cd->ab", _EPS, Fup)


def _invariants(F: np.ndarray, g: np.ndarray) -> tuple[float, float]:
    gi = np.linalg.inv(g)
    Fup = gi @ F @ gi.T
    return float(np.sum(F * Fup)), float(np.sum(_dual(F, g) * Fup))


def bivector_dual(F: np.ndarray, M: PlaneSymmetricMetric, p: Point) -> np.ndarray:
    return _dual(np.asarray(F, dtype=float), metric_at(M, p))


@dataclass(frozen=True)
class BivectorInvariants:
    square: float  # F_ab F^ab
    dual_square: float  # F_ab F*^ab
    simple: bool
    null: bool


def _classify_bivector(F: np.ndarray, g: np.ndarray, tau: float) -> BivectorInvariants:
    sq, dsq = _invariants(F, g)
    scale = float(np.sum(F * F)) or 1.0
    simple = abs(dsq) <= tau * scale
    return BivectorInvariants(sq, dsq, simple, simple and abs(sq) <= tau * scale)


def bivector_invariants(F: np.ndarray, M: PlaneSymmetricMetric, p: Point, tau: float = 1e-10) -> BivectorInvariants:
    return _classify_bivector(np.asarray(F, dtype=float), metric_at(M, p), tau)


def decompose_rank1(W: np.ndarray, g: np.ndarray, tau: float = 1e-10, kernel: KernelBasis | None = None):
    """Write a rank-1 W as alpha * F F^T with F a unit simple bivector."""
    r = rank_with_tol(W, tau)
    if r != 1:
        raise RankMismatchError(f"expected a rank-1 curvature matrix, got rank {r}")
    w, v = np.linalg.eigh(W)
    i = int(np.argmax(np.abs(w)))
    alpha, f = float(w[i]), v[:, i]
    j = int(np.argmax(np.abs(f)))
    if f[j] < 0:
        f = -f
    scale = np.max(np.abs(W))
    residual = float(np.max(np.abs(W - alpha * np.outer(f, f))))
    if residual > 1e-9 * scale:
        raise ArithmeticError(f"rank-1 reconstruction residual {residual:.3e} too large")
    F = bivector(f)
    # F_[ab F_cd] = 0 reduces to a single Pluecker relation in four dimensions.
    pl = F[0, 1] * F[2, 3] - F[0, 2] * F[1, 3] + F[0, 3] * F[1, 2]
    if abs(pl) > 1e-9:
        raise ArithmeticError("rank-1 factor is not a simple bivector")
    if kernel is not None:
        for k in kernel.basis:
            if np.max(np.abs(F @ k)) > 1e-9:
                raise ArithmeticError("blade of the rank-1 factor is not orthogonal to the kernel")
    return alpha, F


def _range_bivectors(W: np.ndarray, tau: float) -> list[np.ndarray]:
    w, v = np.linalg.eigh(W)
    big = np.abs(w) > tau * np.max(np.abs(w))
    return [bivector(v[:, i]) for i in np.flatnonzero(big)]


def _is_dual_pair(W: np.ndarray, g: np.ndarray, tau: float) -> bool:
    """Is the two-dimensional range of W spanned by some F and its dual,
    with F simple and non-null?"""
    F1, F2 = _range_bivectors(W, tau)
    basis = np.stack([bivector_vector(F1), bivector_vector(F2)], axis=1)
    # The span must be closed under the dual map.
    for F in (F1, F2):
        d = bivector_vector(_dual(F, g))
        coef, *_ = np.linalg.lstsq(basis, d, rcond=None)
        if np.linalg.norm(basis @ coef - d) > 1e-8 * max(1.0, np.linalg.norm(d)):
            return False
    # Simple members satisfy a quadratic condition in the mixing angle.
    def q(theta):
        F = np.cos(theta) * F1 + np.sin(theta) * F2
        return _invariants(F, g)[1]

    a, b, c = q(0.0), q(np.pi / 2), q(np.pi / 4)
    # q(theta) = a cos^2 + b sin^2 + m sin cos with m from the diagonal sample
    m = 2 * c - a - b
    roots = np.roots([b, m, a]) if abs(b) > 1e-14 else (np.array([-a / m]) if abs(m) > 1e-14 else np.array([]))
    candidates = [np.arctan(r.real) for r in np.atleast_1d(roots) if abs(r.imag) < 1e-9]
    if abs(b) <= 1e-14:
        candidates.append(np.pi / 2)
    for theta in candidates:
        F = np.cos(theta) * F1 + np.sin(theta) * F2
        inv = _classify_bivector(F, g, 1e-8)
        if inv.simple and not inv.null:
            return True
    return False


@dataclass
class PointAnalysis:
    point: dict[str, float]
    rank: int
    kernel_dim: int
    curvature_class: str
    note: str = ""


def class_at(R: np.ndarray, g: np.ndarray, tau: float) -> PointAnalysis:
    W = bivector_matrix(R)
    r = rank_with_tol(W, tau)
    k = _kernel(R, tau).dim
    note = ""
    if r == 0:
        cls = "O"
    elif r == 1 and k == 2:
        cls = "D"
    elif r in (2, 3) and k == 1:
        cls = "C"
    elif r == 2 and k == 0 and _is_dual_pair(W, g, tau):
        cls = "B"
    else:
        cls = "A"
        if r == 1:
            note = f"rank 1 with dim N_p = {k}"
    return PointAnalysis({}, r, k, cls, note)


@dataclass
class GenericRank:
    rank: int
    histogram: dict[int, int]
    skipped: int = 0

    def __int__(self) -> int:
        return self.rank


@dataclass
class Classification:
    curvature_class: str
    rank: int
    kernel_dim: int
    histogram: dict[int, int]
    kernel: KernelBasis
    kernel_point: dict[str, float]
    points: list[PointAnalysis] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "class": self.curvature_class,
            "rank": self.rank,
            "kernel_dim": self.kernel_dim,
            "rank_histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "kernel": {"point": self.kernel_point, "basis": self.kernel.basis.tolist()},
            "warnings": list(self.warnings),
        }


def _analyse_points(M: PlaneSymmetricMetric, dom: Domain, cfg: AnalysisConfig):
    pts = dom.sample(cfg.samples, cfg.seed)
    R = riemann_at(M, pts)
    G = M.frame.g.evaluate(pts)
    out, skipped = [], 0
    for i in range(cfg.samples):
        Ri, gi = R[..., i], G[..., i]
        if not (np.all(np.isfinite(Ri)) and np.all(np.isfinite(gi))):
            skipped += 1
            continue
        pa = class_at(Ri, gi, cfg.rank_tol)
        pa.point = points_at(pts, i)
        out.append((pa, Ri))
    return out, skipped


def generic_rank(M: PlaneSymmetricMetric, dom: Domain | None = None, cfg: AnalysisConfig = AnalysisConfig()) -> GenericRank:
    analysed, skipped = _analyse_points(M, dom or M.domain, cfg)
    hist = Counter(pa.rank for pa, _ in analysed)
    return GenericRank(max(hist, default=0), dict(sorted(hist.items())), skipped)


def classify(M: PlaneSymmetricMetric, dom: Domain | None = None, cfg: AnalysisConfig = AnalysisConfig()) -> Classification:
    analysed, skipped = _analyse_points(M, dom or M.domain, cfg)
    warnings = []
    if skipped:
        warnings.append(f"{skipped} sample point(s) skipped: curvature not finite (Undetermined)")
    if not analysed:
        raise ArithmeticError("no sample point with finite curvature")
    hist = Counter(pa.rank for pa, _ in analysed)
    rank = max(hist)
    generic = [(pa, R) for pa, R in analysed if pa.rank == rank]
    classes = Counter(pa.curvature_class for pa, _ in generic)
    cls = sorted(classes.items(), key=lambda kv: (-kv[1], kv[0]))[0][0]
    if len(classes) > 1:
        warnings.append("class varies across generic points: " + ", ".join(f"{c}: {n}" for c, n in sorted(classes.items())))
    lower = sorted({pa.rank for pa, _ in analysed if pa.rank < rank})
    if lower:
        warnings.append(f"rank drops to {lower} at {sum(hist[r] for r in lower)} point(s)")
    notes = sorted({pa.note for pa, _ in generic if pa.note})
    warnings.extend(f"anomaly: {n}" for n in notes)
    rep, Rrep = next((pa, R) for pa, R in generic if pa.curvature_class == cls)
    return Classification(
        curvature_class=cls,
        rank=rank,
        kernel_dim=rep.kernel_dim,
        histogram=dict(sorted(hist.items())),
        kernel=_kernel(Rrep, cfg.rank_tol),
        kernel_point=rep.point,
        points=[pa for pa, _ in analysed],
        warnings=warnings,
    )


def coordinate_covector(name: str) -> list[Expr]:
    """The gradient d(name) as covector components."""
    i = COORDINATES.index(name)
    return [as_expr(1 if j == i else 0) for j in range(4)]


def is_covariantly_constant(
    M: PlaneSymmetricMetric,
    k: Sequence[Expr | str | float],
    dom: Domain | None = None,
    cfg: AnalysisConfig = AnalysisConfig(),
) -> Verdict:
    """k_{a;b} = 0 on the domain."""
    comps = [as_expr(c) for c in k]
    if len(comps) != 4:
        raise ValueError("a covector needs four components")
    D = M.frame.covector_derivative(comps)
    return tensor_vanishes(D, dom or M.domain, cfg.zero_test)

"""Deciding whether an expression vanishes identically on a domain.

Simplification is tried first; otherwise the expression is sampled at seeded
points. Sampling is only probabilistically sound, which is adequate for the
analytic expressions handled here.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .evaluate import evaluate_many, magnitude_many
from .nodes import COORDINATES, Const, Expr
from .simplify import simplify


class TriState(enum.Enum):
    ZERO = "Zero"
    NONZERO = "NonZero"
    UNDETERMINED = "Undetermined"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Hyperplane:
    """Points with ``sum(coeffs[v] * v) + offset == 0`` are excluded."""

    coeffs: tuple[tuple[str, float], ...]
    offset: float = 0.0

    @classmethod
    def coordinate(cls, var: str, value: float) -> "Hyperplane":
        return cls(((var, 1.0),), -float(value))

    def distance(self, pts: Mapping[str, np.ndarray]) -> np.ndarray:
        norm = np.sqrt(sum(c * c for _, c in self.coeffs)) or 1.0
        return np.abs(sum(c * pts[v] for v, c in self.coeffs) + self.offset) / norm


DEFAULT_INTERVAL = (-1.0, 1.0)


@dataclass(frozen=True)
class Domain:
    intervals: tuple[tuple[float, float], ...] = (DEFAULT_INTERVAL,) * 4
    excluded: tuple[Hyperplane, ...] = ()
    # Points closer than this to an excluded hyperplane are rejected.
    margin: float = 1e-3

    def __post_init__(self):
        if len(self.intervals) != 4:
            raise ValueError("a domain needs an interval for each of t, x, y, z")
        for name, (lo, hi) in zip(COORDINATES, self.intervals):
            if not hi > lo:
                raise ValueError(f"interval for {name} must have positive length, got [{lo}, {hi}]")

    @classmethod
    def box(cls, excluded=(), **intervals) -> "Domain":
        iv = tuple(tuple(map(float, intervals.get(n, DEFAULT_INTERVAL))) for n in COORDINATES)
        return cls(iv, tuple(excluded))

    def interval(self, var: str) -> tuple[float, float]:
        return self.intervals[COORDINATES.index(var)]

    def with_interval(self, var: str, lo: float, hi: float) -> "Domain":
        iv = list(self.intervals)
        iv[COORDINATES.index(var)] = (float(lo), float(hi))
        return Domain(tuple(iv), self.excluded, self.margin)

    def sample(self, n: int, seed: int) -> dict[str, np.ndarray]:
        """Seeded stratified (jittered grid) sample of ``n`` points."""
        rng = np.random.default_rng(seed)
        pts = self._draw(rng, n)
        for _ in range(100):
            bad = self._rejected(pts)
            if not bad.any():
                return pts
            fresh = self._draw(rng, int(bad.sum()))
            for v in COORDINATES:
                pts[v][bad] = fresh[v]
        raise ValueError("could not sample points away from the excluded hyperplanes")

    def _draw(self, rng, n: int) -> dict[str, np.ndarray]:
        pts = {}
        for v, (lo, hi) in zip(COORDINATES, self.intervals):
            u = (rng.permutation(n) + rng.random(n)) / n
            pts[v] = lo + (hi - lo) * u
        return pts

    def _rejected(self, pts) -> np.ndarray:
        n = len(pts["t"])
        bad = np.zeros(n, dtype=bool)
        for h in self.excluded:
            bad |= h.distance(pts) < self.margin
        return bad


@dataclass(frozen=True)
class ZeroTestConfig:
    samples: int = 32
    eps: float = 1e-9
    # Weight of the rounding-scale estimate in the threshold; 0 gives a purely
    # absolute test.
    scale_guard: float = 1.0
    seed: int = 42

    def __post_init__(self):
        if self.samples < 8:
            raise ValueError("at least 8 samples are required")
        if not self.eps > 0:
            raise ValueError("eps must be positive")


@dataclass
class ZeroTestResult:
    state: TriState
    max_abs: float = 0.0
    worst_point: dict[str, float] | None = None
    nonfinite: int = 0
    structural: bool = False
    threshold_ratio: float = 0.0  # max of |value| / allowed
    details: dict = field(default_factory=dict)


def points_at(pts: Mapping[str, np.ndarray], i: int) -> dict[str, float]:
    return {v: float(pts[v][i]) for v in COORDINATES}


def zero_test(
    e: Expr,
    dom: Domain,
    cfg: ZeroTestConfig = ZeroTestConfig(),
    params: Mapping[str, float] | None = None,
    points: Mapping[str, np.ndarray] | None = None,
) -> ZeroTestResult:
    s = simplify(e)
    if isinstance(s, Const) and s.value == 0:
        return ZeroTestResult(TriState.ZERO, structural=True)
    pts = dict(points) if points is not None else dom.sample(cfg.samples, cfg.seed)
    n = len(pts["t"])
    env = dict(pts)
    if params:
        env.update(params)
    vals = evaluate_many(s, env, n)
    mags = magnitude_many(s, env, n)
    finite = np.isfinite(vals) & np.isfinite(mags)
    allowed = cfg.eps * (1.0 + cfg.scale_guard * np.where(finite, mags, 0.0))
    absval = np.where(finite, np.abs(vals), 0.0)
    ratio = absval / allowed
    i = int(np.argmax(ratio))
    result = ZeroTestResult(
        TriState.ZERO,
        max_abs=float(absval.max(initial=0.0)),
        worst_point=points_at(pts, int(np.argmax(absval))),
        nonfinite=int((~finite).sum()),
        threshold_ratio=float(ratio[i]),
    )
    if (ratio > 1.0).any():
        result.state = TriState.NONZERO
    elif result.nonfinite:
        result.state = TriState.UNDETERMINED
    return result


def is_identically_zero(
    e: Expr,
    dom: Domain,
    cfg: ZeroTestConfig = ZeroTestConfig(),
    params: Mapping[str, float] | None = None,
) -> TriState:
    return zero_test(e, dom, cfg, params).state

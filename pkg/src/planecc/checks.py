"""Deciding that a whole tensor vanishes, with a residual and a witness point."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .symexpr import Domain, TriState, zero_test
from .symexpr.zerotest import ZeroTestConfig, points_at
from .tensors import TensorField


@dataclass
class Verdict:
    """Outcome of an "identically zero" test over every component of a tensor.

    ``residual`` is the largest absolute component value seen at the probe
    points, ``point`` and ``component`` locate it.
    """

    state: TriState
    residual: float = 0.0
    point: dict[str, float] | None = None
    component: tuple | None = None
    undetermined: list[tuple] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.state is TriState.ZERO

    def __bool__(self) -> bool:
        return self.holds

    def as_dict(self) -> dict:
        return {
            "state": str(self.state),
            "holds": self.holds,
            "residual": self.residual,
            "point": self.point,
            "component": list(self.component) if self.component is not None else None,
        }


def tensor_vanishes(T: TensorField, dom: Domain, cfg: ZeroTestConfig, points=None) -> Verdict:
    """Zero-test every stored component; one NonZero component decides."""
    pts = points if points is not None else dom.sample(cfg.samples, cfg.seed)
    worst = Verdict(TriState.ZERO)
    nonzero = False
    for idx, e in T.nonzero():
        r = zero_test(e, dom, cfg, points=pts)
        if r.state is TriState.NONZERO:
            nonzero = True
        elif r.state is TriState.UNDETERMINED:
            worst.undetermined.append(idx)
        if r.max_abs > worst.residual or worst.component is None:
            worst.residual = r.max_abs
            worst.point = r.worst_point
            worst.component = idx
    if nonzero:
        worst.state = TriState.NONZERO
    elif worst.undetermined:
        worst.state = TriState.UNDETERMINED
    if worst.point is None:
        worst.point = points_at(pts, 0)
    return worst


def max_abs_at(T: TensorField, pts) -> tuple[float, dict[str, float] | None, tuple | None]:
    """Largest finite |component| over the points."""
    best = (0.0, None, None)
    if not T.components:
        return best
    vals = T.evaluate(pts)
    for idx in T.components:
        v = np.abs(vals[idx])
        v = np.where(np.isfinite(v), v, 0.0)
        i = int(np.argmax(v))
        if best[1] is None or v[i] > best[0]:
            best = (float(v[i]), points_at(pts, i), idx)
    return best

"""Tolerances and sampling settings shared by the analyses."""
from __future__ import annotations

from dataclasses import dataclass

from .symexpr import ZeroTestConfig


@dataclass(frozen=True)
class AnalysisConfig:
    samples: int = 32
    tol: float = 1e-9  # zero-test epsilon
    rank_tol: float = 1e-10  # relative singular value cutoff
    seed: int = 42

    def __post_init__(self):
        if self.samples < 8:
            raise ValueError("at least 8 samples are required")
        if not (self.tol > 0 and self.rank_tol > 0):
            raise ValueError("tolerances must be positive")

    @property
    def zero_test(self) -> ZeroTestConfig:
        return ZeroTestConfig(samples=self.samples, eps=self.tol, seed=self.seed)

    def as_dict(self) -> dict:
        return {"samples": self.samples, "tol": self.tol, "rank_tol": self.rank_tol}

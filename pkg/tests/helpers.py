"""Shared generators for the collineation property checks."""
import numpy as np

from planecc.casebook import FixtureId, paper_fixture
from planecc.collineations import VectorField, check_vector_field

_PIECES = ["0", "1", "t", "x", "y", "z", "t*x", "x^2", "y^2", "t^2", "exp(t)", "y*z", "t*y"]
_TRIO = [("0", "0", "1", "0"), ("0", "0", "0", "1"), ("0", "0", "z", "-y")]


def random_candidates(n, seed=2024):
    rng = np.random.default_rng(seed)
    fixtures = list(FixtureId)
    for i in range(n):
        fid = fixtures[i % len(fixtures)]
        roll = rng.random()
        if roll < 0.3:
            # combinations of the trio, plus a dilation in y, z now and then
            c = rng.integers(-2, 3, size=3)
            comps = [" + ".join(f"({int(k)})*({t[j]})" for k, t in zip(c, _TRIO)) for j in range(4)]
            if rng.random() < 0.3:
                comps[2] += " + y"
                comps[3] += " + z"
        else:
            comps = []
            for _ in range(4):
                k = int(rng.integers(0, 3))
                terms = rng.choice(len(_PIECES), size=k, replace=False)
                comps.append(" + ".join(f"{int(rng.integers(-2, 3))}*{_PIECES[int(p)]}" for p in terms) or "0")
        yield fid, VectorField.parse(*comps)


def implication_chain(n: int, seed: int = 2024):
    """Check killing => homothety c = 0 => affine => cc on n random candidates.

    Returns the list of violations and how often each property held.
    """
    violations = []
    seen = {"killing": 0, "affine": 0, "cc": 0}
    for fid, X in random_candidates(n, seed):
        r = check_vector_field(paper_fixture(fid), X)
        where = f"{fid.value} {X}"
        if r.is_killing:
            seen["killing"] += 1
            if r.homothety_constant != 0:
                violations.append(f"{where}: killing but c = {r.homothety_constant}")
        if r.homothety_constant is not None and not r.is_affine:
            violations.append(f"{where}: homothetic but not affine")
        if r.is_affine:
            seen["affine"] += 1
            if not r.is_cc:
                violations.append(f"{where}: affine but not cc")
        if r.is_cc:
            seen["cc"] += 1
        if r.is_proper_cc != (r.is_cc and not r.is_affine):
            violations.append(f"{where}: inconsistent proper flag")
    return violations, seen


# One line per acceptance criterion, printed in the terminal summary.
ACCEPTANCE: list[str] = []


def record(name: str, checks: dict[str, bool], detail: str = "") -> bool:
    ok = all(checks.values())
    failed = [k for k, v in checks.items() if not v]
    line = f"{name} {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  {detail}"
    if failed:
        line += "  failed: " + "; ".join(failed)
    ACCEPTANCE.append(line)
    print(line)
    return ok

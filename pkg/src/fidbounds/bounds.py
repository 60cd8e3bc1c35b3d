"""Tight bounds on the fidelity in terms of concurrence and negativity."""

import csv
import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import BoundViolation, DomainError
from .measures import concurrence, fidelity, negativity

# negativity where the two lower-bound branches meet
N_STAR = (math.sqrt(5.0) - 2.0) / 3.0
# above this negativity the fidelity is guaranteed to exceed 1/2
N_TELEPORT = (math.sqrt(2.0) - 1.0) / 2.0
SATURATION_TOL = 1e-8

CURVE_HEADER = ("t", "lower_C", "upper_C", "lower_N", "upper_N")


def _check_unit(name, x):
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {x!r}")


def upper_bound_negativity(N):
    _check_unit("negativity", N)
    return (1.0 + N) / 2.0


def upper_bound_concurrence(C):
    _check_unit("concurrence", C)
    return (1.0 + C) / 2.0


def lower_bound_concurrence(C):
    _check_unit("concurrence", C)
    return max((1.0 + C) / 4.0, C)


def lower_negativity_low_branch(N):
    return 0.25 + (N + math.sqrt(5.0 * N * N + 4.0 * N)) / 8.0


def lower_negativity_high_branch(N):
    return math.sqrt(2.0 * N * (N + 1.0)) - N


def negativity_region(N):
    return "low" if N < N_STAR else "high"


def lower_bound_negativity(N):
    _check_unit("negativity", N)
    if N < N_STAR:
        return lower_negativity_low_branch(N)
    return lower_negativity_high_branch(N)


@dataclass(frozen=True)
class BoundReport:
    C: float
    N: float
    F: float
    upper_from_N: float
    upper_from_C: float
    lower_from_C: float
    lower_from_N: float
    # each margin is >= 0 when the bound holds
    margin_upper_N: float
    margin_upper_C: float
    margin_lower_C: float
    margin_lower_N: float
    saturated_upper_N: bool
    saturated_upper_C: bool
    saturated_lower_C: bool
    saturated_lower_N: bool
    region: str

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict())


def bound_report(F, C, N, tol=1e-9):
    """Evaluate all four bounds for given (F, C, N) and raise on violation."""
    # measures may overshoot [0, 1] by rounding
    C = min(max(C, 0.0), 1.0)
    N = min(max(N, 0.0), 1.0)
    uN = upper_bound_negativity(N)
    uC = upper_bound_concurrence(C)
    lC = lower_bound_concurrence(C)
    lN = lower_bound_negativity(N)
    margins = {
        "upper_N": uN - F,
        "upper_C": uC - F,
        "lower_C": F - lC,
        "lower_N": F - lN,
    }
    for name, m in margins.items():
        if m < -tol:
            raise BoundViolation(name, m, tol)
    if N > C + tol:
        raise BoundViolation("N<=C", C - N, tol)
    return BoundReport(
        C=C,
        N=N,
        F=F,
        upper_from_N=uN,
        upper_from_C=uC,
        lower_from_C=lC,
        lower_from_N=lN,
        margin_upper_N=margins["upper_N"],
        margin_upper_C=margins["upper_C"],
        margin_lower_C=margins["lower_C"],
        margin_lower_N=margins["lower_N"],
        saturated_upper_N=abs(margins["upper_N"]) <= SATURATION_TOL,
        saturated_upper_C=abs(margins["upper_C"]) <= SATURATION_TOL,
        saturated_lower_C=abs(margins["lower_C"]) <= SATURATION_TOL,
        saturated_lower_N=abs(margins["lower_N"]) <= SATURATION_TOL,
        region=negativity_region(N),
    )


def check_bounds(rho, tol=1e-9):
    if tol <= 0:
        raise DomainError("tol must be positive")
    return bound_report(fidelity(rho), concurrence(rho), negativity(rho), tol)


def curve_data(resolution):
    """Rows (t, lower_C, upper_C, lower_N, upper_N) on a uniform grid of [0, 1]."""
    if resolution < 2:
        raise DomainError("resolution must be at least 2")
    t = np.linspace(0.0, 1.0, int(resolution))
    rows = []
    for x in t:
        x = float(x)
        rows.append(
            (
                x,
                lower_bound_concurrence(x),
                upper_bound_concurrence(x),
                lower_bound_negativity(x),
                upper_bound_negativity(x),
            )
        )
    return np.array(rows)


def write_curve_csv(table, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CURVE_HEADER)
    for row in table:
        writer.writerow([f"{v:.17g}" for v in row])

"""Brute-force maximal singlet fraction.

Maximises <psi|rho|psi> over psi = (U (x) 1)|Phi+> with U = Rz(a) Ry(b) Rz(c)
by a dense Euler-angle grid followed by Nelder-Mead polishing.  Nothing here
uses the correlation-matrix closed form, so the two can check each other.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import kernels
from .errors import DomainError, NotNormalized
from .states import as_array

TOP_STARTS = 5


@dataclass(frozen=True)
class OracleResult:
    value: float
    best_angles: tuple
    grid_points: int
    refinement_iterations: int


def me_state(angles):
    return kernels.me_vector(*angles)


def me_overlap(rho, angles):
    psi = me_state(angles)
    return float(np.real(psi.conj() @ as_array(rho) @ psi))


def angle_grid(grid_per_axis):
    """Nested uniform grid: doubling ``grid_per_axis`` keeps every old point."""
    n = int(grid_per_axis)
    full = 2.0 * np.pi * np.arange(n) / n
    half = np.pi * np.arange(n) / n
    return full, half, full


def grid_values(rho, grid_per_axis):
    a, b, c = angle_grid(grid_per_axis)
    return kernels.overlap_grid(as_array(rho), a, b, c)


def best_grid_value(rho, grid_per_axis):
    return float(grid_values(rho, grid_per_axis).max())


def fidelity_oracle(rho, grid_per_axis=24, refine_tol=1e-10):
    if grid_per_axis < 8:
        raise DomainError("grid_per_axis must be at least 8")
    if refine_tol <= 0:
        raise DomainError("refine_tol must be positive")
    m = as_array(rho)
    a, b, c = angle_grid(grid_per_axis)
    vals = kernels.overlap_grid(m, a, b, c)
    flat = vals.ravel()
    top = np.argsort(flat)[::-1][:TOP_STARTS]

    best_val = float(flat[top[0]])
    ia, ib, ic = np.unravel_index(top[0], vals.shape)
    best_x = np.array([a[ia], b[ib], c[ic]])
    iterations = 0

    def neg(x):
        return -me_overlap(m, x)

    step = np.pi / grid_per_axis
    for idx in top:
        ia, ib, ic = np.unravel_index(idx, vals.shape)
        x0 = np.array([a[ia], b[ib], c[ic]])
        simplex = np.vstack([x0, x0 + np.diag([step, step, step])])
        res = minimize(
            neg,
            x0,
            method="Nelder-Mead",
            options={
                "xatol": refine_tol,
                "fatol": refine_tol * 1e-3,
                "initial_simplex": simplex,
                "maxiter": 4000,
            },
        )
        iterations += int(res.nit)
        if -res.fun > best_val:
            best_val = float(-res.fun)
            best_x = res.x
    return OracleResult(best_val, tuple(float(x) for x in best_x), flat.size, iterations)


def pure_concurrence_oracle(psi, tol=1e-10):
    """2|ad - bc| for amplitudes (a, b, c, d)."""
    psi = np.asarray(psi, dtype=complex).reshape(4)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > tol:
        raise NotNormalized(f"state norm is {norm!r}, expected 1")
    a, b, c, d = psi
    return float(2.0 * abs(a * d - b * c))

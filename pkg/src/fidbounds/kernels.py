"""Hot numeric kernels.

Every kernel exists twice: a numba ``@njit`` loop and a vectorised numpy
version.  The public names point at the numba variant unless numba is
missing or ``FIDBOUNDS_DISABLE_NUMBA`` is set to a non-empty value other
than ``0`` at import time.  Both variants are importable directly so tests
and the benchmark can compare them.
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f


def _flag_disabled():
    value = os.environ.get("FIDBOUNDS_DISABLE_NUMBA", "")
    return value not in ("", "0")


USE_NUMBA = HAVE_NUMBA and not _flag_disabled()
BACKEND = "numba" if USE_NUMBA else "numpy"

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


# --------------------------------------------------------------------------
# overlap of a state with the maximally entangled family (U (x) 1)|Phi+>
# U = Rz(a) Ry(b) Rz(c), so psi = vec(U) / sqrt(2) in row-major order
# --------------------------------------------------------------------------


def me_vector(a, b, c):
    cb = np.cos(0.5 * b)
    sb = np.sin(0.5 * b)
    p = np.exp(-0.5j * (a + c))
    m = np.exp(-0.5j * (a - c))
    return np.array([p * cb, -m * sb, np.conj(m) * sb, np.conj(p) * cb]) * _INV_SQRT2


@njit(cache=True)
def _overlap_grid_numba(rho, alphas, betas, gammas):
    na, nb, nc = alphas.shape[0], betas.shape[0], gammas.shape[0]
    out = np.empty((na, nb, nc))
    psi = np.empty(4, dtype=np.complex128)
    for i in range(na):
        for j in range(nb):
            cb = np.cos(0.5 * betas[j]) * _INV_SQRT2
            sb = np.sin(0.5 * betas[j]) * _INV_SQRT2
            for k in range(nc):
                p = np.exp(-0.5j * (alphas[i] + gammas[k]))
                m = np.exp(-0.5j * (alphas[i] - gammas[k]))
                psi[0] = p * cb
                psi[1] = -m * sb
                psi[2] = np.conj(m) * sb
                psi[3] = np.conj(p) * cb
                acc = 0.0
                for r in range(4):
                    row = 0.0j
                    for s in range(4):
                        row += rho[r, s] * psi[s]
                    acc += (np.conj(psi[r]) * row).real
                out[i, j, k] = acc
    return out


def _overlap_grid_numpy(rho, alphas, betas, gammas):
    a = alphas[:, None, None]
    c = gammas[None, None, :]
    cb = np.cos(0.5 * betas)[None, :, None]
    sb = np.sin(0.5 * betas)[None, :, None]
    p = np.exp(-0.5j * (a + c))
    m = np.exp(-0.5j * (a - c))
    psi = np.stack(np.broadcast_arrays(p * cb, -m * sb, np.conj(m) * sb, np.conj(p) * cb), axis=-1)
    psi = psi * _INV_SQRT2
    return np.einsum("...r,rs,...s->...", psi.conj(), rho, psi).real


# --------------------------------------------------------------------------
# Pauli correlation matrices R[ab] = tr(rho s_a (x) s_b), stacked
# --------------------------------------------------------------------------

_PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)
# PAULI_PRODUCTS[a, b] = s_a (x) s_b
PAULI_PRODUCTS = np.einsum("aij,bkl->abikjl", _PAULI, _PAULI).reshape(4, 4, 4, 4)


@njit(cache=True)
def _correlation_batch_numba(rhos, products):
    n = rhos.shape[0]
    out = np.empty((n, 4, 4))
    for t in range(n):
        for a in range(4):
            for b in range(4):
                acc = 0.0
                for i in range(4):
                    for j in range(4):
                        # tr(rho P) = sum_ij rho[i, j] P[j, i]
                        acc += (rhos[t, i, j] * products[a, b, j, i]).real
                out[t, a, b] = acc
    return out


def _correlation_batch_numpy(rhos, products):
    return np.einsum("nij,abji->nab", rhos, products).real


@njit(cache=True)
def _partial_transpose_batch_numba(rhos):
    n = rhos.shape[0]
    out = np.empty_like(rhos)
    for t in range(n):
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    for l in range(2):
                        out[t, 2 * i + j, 2 * k + l] = rhos[t, 2 * i + l, 2 * k + j]
    return out


def _partial_transpose_batch_numpy(rhos):
    n = rhos.shape[0]
    return rhos.reshape(n, 2, 2, 2, 2).transpose(0, 1, 4, 3, 2).reshape(n, 4, 4)


if USE_NUMBA:
    _overlap_grid = _overlap_grid_numba
    _correlation_batch = _correlation_batch_numba
    partial_transpose_batch_impl = _partial_transpose_batch_numba
else:
    _overlap_grid = _overlap_grid_numpy
    _correlation_batch = _correlation_batch_numpy
    partial_transpose_batch_impl = _partial_transpose_batch_numpy


def overlap_grid(rho, alphas, betas, gammas):
    """<psi|rho|psi> for psi on the Euler-angle product grid, shape (na, nb, nc)."""
    rho = np.ascontiguousarray(rho, dtype=np.complex128)
    return _overlap_grid(
        rho,
        np.ascontiguousarray(alphas, dtype=np.float64),
        np.ascontiguousarray(betas, dtype=np.float64),
        np.ascontiguousarray(gammas, dtype=np.float64),
    )


def correlation_batch(rhos):
    rhos = np.ascontiguousarray(rhos, dtype=np.complex128)
    return _correlation_batch(rhos, PAULI_PRODUCTS)


def partial_transpose_batch(rhos):
    rhos = np.ascontiguousarray(rhos, dtype=np.complex128)
    return partial_transpose_batch_impl(rhos)

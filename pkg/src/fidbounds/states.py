"""Two-qubit density matrices and the linear algebra shared by the other modules.

Basis order is |00>, |01>, |10>, |11>, row-major.
"""

import json
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidInput, NotHermitian, NotPositive, NotUnitary, NotUnitTrace

VALIDATION_TOL = 1e-9
RANK_TOL = 1e-10
SVD_TOL = 1e-12

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_0, SIGMA_X, SIGMA_Y, SIGMA_Z)


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated two-qubit state. Build it with :func:`validate`."""

    entries: np.ndarray
    validation_tol: float = VALIDATION_TOL

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries, complex))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def eigvalsh(self):
        return np.linalg.eigvalsh(self.entries)


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """Real 4x4 matrix of Pauli expectation values ``tr(rho s_a (x) s_b)``."""

    R: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "R", _frozen(self.R, float))

    @property
    def bloch_a(self):
        # first row, columns 1..3
        return self.R[0, 1:]

    @property
    def bloch_b(self):
        # first column, rows 1..3
        return self.R[1:, 0]

    @property
    def tilde(self):
        return self.R[1:, 1:]

    @property
    def s_params(self):
        """Diagonal of the spin-spin block; only defined when that block is diagonal."""
        t = self.tilde
        off = t - np.diag(np.diag(t))
        if np.max(np.abs(off)) > SVD_TOL:
            raise ValueError("spin-spin block is not diagonal")
        return np.diag(t).copy()


@dataclass(frozen=True, eq=False)
class LocalUnitary:
    u_a: np.ndarray
    u_b: np.ndarray

    def __post_init__(self):
        for name in ("u_a", "u_b"):
            u = np.asarray(getattr(self, name), dtype=complex)
            if u.shape != (2, 2):
                raise NotUnitary(f"{name} must be 2x2, got shape {u.shape}")
            err = np.max(np.abs(u.conj().T @ u - np.eye(2)))
            if err > 1e-12:
                raise NotUnitary(f"{name} deviates from unitarity by {err:.3e}")
            object.__setattr__(self, name, _frozen(u, complex))

    def matrix(self):
        return np.kron(self.u_a, self.u_b)


def validate(entries, tol=VALIDATION_TOL):
    """Check hermiticity, unit trace and positivity, returning a DensityMatrix.

    Checks run in that order and the first failure is raised.
    """
    if tol < 0:
        raise InvalidInput("tolerance must be nonnegative")
    m = np.asarray(entries, dtype=complex)
    if m.shape != (4, 4):
        raise InvalidInput(f"expected a 4x4 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidInput("matrix has non-finite entries")
    herm_err = np.max(np.abs(m - m.conj().T))
    if herm_err > tol:
        raise NotHermitian(herm_err, tol)
    trace_err = abs(np.trace(m) - 1.0)
    if trace_err > tol:
        raise NotUnitTrace(trace_err, tol)
    lam_min = np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0]
    if lam_min < -tol:
        raise NotPositive(-lam_min, tol)
    return DensityMatrix(m, tol)


def as_array(rho):
    if isinstance(rho, DensityMatrix):
        return rho.entries
    return np.asarray(rho, dtype=complex)


def ket_to_density(psi, tol=VALIDATION_TOL):
    psi = np.asarray(psi, dtype=complex).reshape(4)
    return validate(np.outer(psi, psi.conj()), tol)


def partial_transpose(rho):
    """Transpose on the second qubit: out[(i,j),(k,l)] = in[(i,l),(k,j)]."""
    m = as_array(rho)
    return m.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def correlation_matrix(rho):
    m = as_array(rho)
    return CorrelationMatrix(kernels.correlation_batch(m[None])[0])


def state_from_correlation(R, tol=VALIDATION_TOL):
    """Invert the Pauli expansion: rho = 1/4 sum_ab R[ab] s_a (x) s_b."""
    R = R.R if isinstance(R, CorrelationMatrix) else np.asarray(R, dtype=float)
    if R.shape != (4, 4):
        raise InvalidInput(f"expected a 4x4 correlation matrix, got shape {R.shape}")
    if abs(R[0, 0] - 1.0) > tol:
        raise NotUnitTrace(abs(R[0, 0] - 1.0), tol)
    m = 0.25 * np.einsum("ab,abij->ij", R, kernels.PAULI_PRODUCTS)
    return validate(m, tol)


def apply_local_unitary(rho, u):
    U = u.matrix()
    m = U @ as_array(rho) @ U.conj().T
    tol = rho.validation_tol if isinstance(rho, DensityMatrix) else VALIDATION_TOL
    return validate(0.5 * (m + m.conj().T), tol)


def numerical_rank(rho, rank_tol=RANK_TOL):
    if rank_tol <= 0:
        raise InvalidInput("rank_tol must be positive")
    w = np.linalg.eigvalsh(as_array(rho))
    top = w[-1]
    if top <= 0:
        return 0
    return int(np.count_nonzero(w > rank_tol * top))


def signed_svd_3x3(m, svd_tol=SVD_TOL):
    """Descending singular values and the sign of the determinant.

    The sign is reported as 0 whenever the smallest singular value is
    negligible relative to the largest, which also covers the zero matrix.
    """
    m = np.asarray(m, dtype=float)
    lam = np.linalg.svd(m, compute_uv=False)
    if lam[0] == 0.0 or lam[2] <= svd_tol * lam[0]:
        return lam, 0
    return lam, int(np.sign(np.linalg.det(m)))


def hermitian_eigh(m):
    """Eigen-decomposition of the Hermitian part of ``m`` (ascending)."""
    m = np.asarray(m, dtype=complex)
    return np.linalg.eigh(0.5 * (m + m.conj().T))


# --------------------------------------------------------------------------
# JSON state files
# --------------------------------------------------------------------------


def state_to_dict(rho):
    m = as_array(rho)
    return {"dim": 4, "matrix_re": m.real.tolist(), "matrix_im": m.imag.tolist()}


def state_from_dict(data, tol=VALIDATION_TOL):
    try:
        dim = data["dim"]
        re = np.asarray(data["matrix_re"], dtype=float)
        im = np.asarray(data["matrix_im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed state document: {exc}") from None
    if dim != 4:
        raise InvalidInput(f"only dim 4 states are supported, got dim={dim!r}")
    if re.shape != (4, 4) or im.shape != (4, 4):
        raise InvalidInput("matrix_re and matrix_im must both be 4x4")
    return validate(re + 1j * im, tol)


def dumps_state(rho):
    # repr-based float output round-trips doubles exactly
    return json.dumps(state_to_dict(rho))


def loads_state(text, tol=VALIDATION_TOL):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"state file is not valid JSON: {exc}") from None
    return state_from_dict(data, tol)


def load_state(path, tol=VALIDATION_TOL):
    with open(path, encoding="utf-8") as fh:
        return loads_state(fh.read(), tol)


def save_state(rho, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_state(rho))
        fh.write("\n")

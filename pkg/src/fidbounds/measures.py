"""Fidelity (maximal singlet fraction), concurrence and negativity."""

import json
from dataclasses import asdict, dataclass

import numpy as np

from . import kernels
from .errors import DegenerateEigenvalue, DomainError
from .states import (
    SIGMA_Y,
    as_array,
    correlation_matrix,
    hermitian_eigh,
    numerical_rank,
    partial_transpose,
    signed_svd_3x3,
)

ME_TOL = 1e-8
DEGENERACY_TOL = 1e-12
_YY = np.kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class MeasureReport:
    fidelity: float
    concurrence: float
    negativity: float
    eof: float
    purity: float
    rank: int

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict())


def fidelity(rho):
    """Closed-form maximal singlet fraction from the spin-spin correlation block.

    F = (1 + l1 + l2 - sign(det T) l3) / 4 with l1 >= l2 >= l3 the singular
    values of T.  The raw value is returned, never clamped.
    """
    lam, sign = signed_svd_3x3(correlation_matrix(rho).tilde)
    return float((1.0 + lam[0] + lam[1] - sign * lam[2]) / 4.0)


def _sqrtm_psd(m):
    w, v = hermitian_eigh(m)
    w = np.sqrt(np.clip(w, 0.0, None))
    return (v * w) @ v.conj().T


def concurrence(rho):
    """Wootters concurrence.

    The square roots of the eigenvalues of rho * flip(rho) are the singular
    values of sqrt(rho) (Y(x)Y) sqrt(rho)^*, which avoids a non-Hermitian
    eigenproblem.
    """
    s = _sqrtm_psd(as_array(rho))
    mu = np.linalg.svd(s @ _YY @ s.conj(), compute_uv=False)
    return float(max(0.0, mu[0] - mu[1] - mu[2] - mu[3]))


def negativity(rho):
    lam_min = np.linalg.eigvalsh(partial_transpose(rho))[0]
    return float(max(0.0, -2.0 * lam_min))


def _binary_entropy(p):
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return float(-p * np.log2(p) - (1.0 - p) * np.log2(1.0 - p))


def eof(C):
    """Entanglement of formation as a function of concurrence."""
    if not 0.0 <= C <= 1.0:
        raise DomainError(f"concurrence must lie in [0, 1], got {C!r}")
    return _binary_entropy(0.5 * (1.0 + np.sqrt(1.0 - C * C)))


def pure_concurrence(psi):
    a, b, c, d = np.asarray(psi, dtype=complex).reshape(4)
    return float(2.0 * abs(a * d - b * c))


@dataclass(frozen=True)
class PTDiagnostic:
    lambda_min: float
    eigvec_concurrence: float
    is_maximally_entangled: bool


def negative_pt_eigvec_diagnostic(rho, me_tol=ME_TOL):
    """Inspect the eigenvector belonging to the smallest eigenvalue of rho^Gamma.

    Raises DegenerateEigenvalue if that eigenvalue is negative and not
    simple, since then no single eigenvector is singled out.
    """
    w, v = hermitian_eigh(partial_transpose(rho))
    lam_min = float(w[0])
    if lam_min < 0 and w[1] - w[0] <= DEGENERACY_TOL:
        raise DegenerateEigenvalue(
            f"smallest partial-transpose eigenvalue {lam_min:.3e} is degenerate"
        )
    c = pure_concurrence(v[:, 0])
    return PTDiagnostic(lam_min, c, bool(lam_min < 0 and c >= 1.0 - me_tol))


def measure_report(rho):
    C = concurrence(rho)
    m = as_array(rho)
    return MeasureReport(
        fidelity=fidelity(rho),
        concurrence=C,
        negativity=negativity(rho),
        eof=eof(min(C, 1.0)),
        purity=float(np.trace(m @ m).real),
        rank=numerical_rank(rho),
    )


def measures_batch(rhos):
    """Vectorised (F, C, N) for a stack of states with shape (n, 4, 4)."""
    rhos = np.asarray(rhos, dtype=complex)

    tilde = kernels.correlation_batch(rhos)[:, 1:, 1:]
    lam = np.linalg.svd(tilde, compute_uv=False)
    sign = np.sign(np.linalg.det(tilde))
    sign[(lam[:, 0] == 0.0) | (lam[:, 2] <= 1e-12 * lam[:, 0])] = 0.0
    F = (1.0 + lam[:, 0] + lam[:, 1] - sign * lam[:, 2]) / 4.0

    w, v = np.linalg.eigh(rhos)
    sq = (v * np.sqrt(np.clip(w, 0.0, None))[:, None, :]) @ np.conj(np.swapaxes(v, 1, 2))
    mu = np.linalg.svd(sq @ _YY @ sq.conj(), compute_uv=False)
    C = np.maximum(0.0, mu[:, 0] - mu[:, 1] - mu[:, 2] - mu[:, 3])

    pt = kernels.partial_transpose_batch(rhos)
    N = np.maximum(0.0, -2.0 * np.linalg.eigvalsh(pt)[:, 0])
    return F, C, N

"""Split any two-qubit state into rank-<=2 states with the same spin-spin block.

A full-rank state is moved along a direction that only touches the local
Bloch vector until positivity breaks on both sides; the two boundary states
have rank <= 3 and average back to the input.  A rank-3 state rho = X X^dagger
is moved inside its support, rho(eps) = X (1 + eps Q) X^dagger, with Q chosen
from the null space of the linear map that records the trace and the nine
spin-spin correlations.  The boundary states then have rank <= 2.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DomainError,
    IntervalNotFound,
    NullspaceResidualTooLarge,
    NumericalFailure,
    ZeroDirection,
)
from .kernels import PAULI_PRODUCTS
from .states import (
    RANK_TOL,
    SIGMA_0,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    DensityMatrix,
    as_array,
    hermitian_eigh,
    numerical_rank,
    state_to_dict,
    validate,
)

EPS_TOL = 1e-13
NULLSPACE_TOL = 1e-8
MAX_DOUBLINGS = 200

# (alpha, beta) rows of the rank-3 constraint system: trace then spin-spin
CONSTRAINT_PAIRS = [(0, 0)] + [(i, j) for i in range(1, 4) for j in range(1, 4)]


@dataclass(frozen=True, eq=False)
class PerturbationDirection:
    """Traceless Hermitian direction orthogonal to every s_i (x) s_j, i, j >= 1."""

    D: np.ndarray

    def __post_init__(self):
        D = np.array(self.D, dtype=complex)
        if D.shape != (4, 4):
            raise DomainError("direction must be 4x4")
        if np.max(np.abs(D - D.conj().T)) > 1e-12:
            raise DomainError("direction must be Hermitian")
        if abs(np.trace(D)) > 1e-12:
            raise DomainError("direction must be traceless")
        spin = np.einsum("ij,abji->ab", D, PAULI_PRODUCTS)[1:, 1:]
        if np.max(np.abs(spin)) > 1e-12:
            raise DomainError("direction changes the spin-spin block")
        D.setflags(write=False)
        object.__setattr__(self, "D", D)


BLOCH_DIRECTIONS = tuple(
    PerturbationDirection(np.kron(s, SIGMA_0) / 4.0) for s in (SIGMA_X, SIGMA_Y, SIGMA_Z)
)


@dataclass(frozen=True)
class Split:
    w1: float
    rho1: DensityMatrix
    w2: float
    rho2: DensityMatrix
    lb: float
    ub: float
    # smallest singular value of the constraint matrix (rank-3 splits only)
    residual: float = float("nan")


@dataclass(frozen=True, eq=False)
class Rank2Decomposition:
    weights: list
    components: list = field(default_factory=list)

    def reconstruct(self):
        return sum(w * c.entries for w, c in zip(self.weights, self.components))

    def to_dict(self):
        return {
            "weights": [float(w) for w in self.weights],
            "components": [state_to_dict(c) for c in self.components],
        }

    def to_json(self):
        return json.dumps(self.to_dict())


def _lam_min(base, D, eps):
    return np.linalg.eigvalsh(base + eps * D)[0]


def _boundary(base, D, sign):
    """Largest |eps| along ``sign`` keeping base + eps D positive semidefinite."""
    inside = 0.0
    outside = 2.0 * sign
    for _ in range(MAX_DOUBLINGS):
        if _lam_min(base, D, outside) < 0:
            break
        inside = outside
        outside *= 2.0
    else:
        raise IntervalNotFound(f"no positivity boundary found in direction {sign:+d}")
    while abs(outside - inside) > EPS_TOL:
        mid = 0.5 * (inside + outside)
        if _lam_min(base, D, mid) >= 0:
            inside = mid
        else:
            outside = mid
    # return the PSD side so the endpoint stays a valid state
    return inside


def positivity_interval(rho, D):
    """(lb, ub) such that rho + eps D is PSD exactly for eps in [lb, ub].

    ``rho`` and ``D`` may be any positive definite base and Hermitian
    direction of matching size; the rank-3 split passes the 3x3 reduced
    problem (identity, Q).
    """
    base = as_array(rho)
    D = D.D if isinstance(D, PerturbationDirection) else np.asarray(D, dtype=complex)
    if np.max(np.abs(D)) == 0.0:
        raise ZeroDirection("perturbation direction is zero")
    if np.linalg.eigvalsh(base)[0] <= 0:
        raise IntervalNotFound("base operator is not positive definite")
    lb = _boundary(base, D, -1)
    ub = _boundary(base, D, +1)
    if not lb < 0 < ub:
        raise IntervalNotFound(f"degenerate interval ({lb}, {ub})")
    return lb, ub


def _weights(lb, ub):
    return ub / (ub - lb), -lb / (ub - lb)


def split_rank4(rho):
    """Two rank-<=3 states along a local Bloch direction, averaging to rho."""
    m = as_array(rho)
    tol = rho.validation_tol if isinstance(rho, DensityMatrix) else 1e-9
    last = None
    for direction in BLOCH_DIRECTIONS:
        try:
            lb, ub = positivity_interval(m, direction)
        except IntervalNotFound as exc:
            last = exc
            continue
        if ub - lb < 1e-12:
            continue
        D = direction.D
        w1, w2 = _weights(lb, ub)
        return Split(w1, validate(m + lb * D, tol), w2, validate(m + ub * D, tol), lb, ub)
    raise last or IntervalNotFound("all Bloch directions gave a degenerate interval")


def u3_generators():
    """Orthonormal Hermitian basis of 3x3 matrices (Frobenius inner product)."""
    gens = []
    for i in range(3):
        g = np.zeros((3, 3), dtype=complex)
        g[i, i] = 1.0
        gens.append(g)
    for i in range(3):
        for j in range(i + 1, 3):
            g = np.zeros((3, 3), dtype=complex)
            g[i, j] = g[j, i] = 1.0 / np.sqrt(2.0)
            gens.append(g)
    for i in range(3):
        for j in range(i + 1, 3):
            g = np.zeros((3, 3), dtype=complex)
            g[i, j] = -1j / np.sqrt(2.0)
            g[j, i] = 1j / np.sqrt(2.0)
            gens.append(g)
    return np.array(gens)


_GENERATORS = u3_generators()


def rank3_factor(rho):
    """4x3 factor X with X X^dagger equal to rho restricted to its top three eigenpairs."""
    w, v = hermitian_eigh(as_array(rho))
    return v[:, 1:] * np.sqrt(np.clip(w[1:], 0.0, None))


def constraint_matrix(X):
    """10x9 real matrix A[(a, b), i] = tr(G_i X^dagger (s_a (x) s_b) X)."""
    compressed = np.array([X.conj().T @ PAULI_PRODUCTS[a, b] @ X for a, b in CONSTRAINT_PAIRS])
    return np.einsum("ikl,plk->pi", _GENERATORS, compressed).real


def split_rank3(rho):
    """Two rank-<=2 states with the same trace and spin-spin block, averaging to rho."""
    tol = rho.validation_tol if isinstance(rho, DensityMatrix) else 1e-9
    X = rank3_factor(rho)
    A = constraint_matrix(X)
    _, sv, vt = np.linalg.svd(A)
    residual = float(sv[-1])
    if residual > NULLSPACE_TOL:
        raise NullspaceResidualTooLarge(
            f"constraint matrix has smallest singular value {residual:.3e}"
        )
    q = vt[-1]
    Q = np.einsum("i,ikl->kl", q, _GENERATORS)
    lb, ub = positivity_interval(np.eye(3), Q)
    w1, w2 = _weights(lb, ub)

    def endpoint(eps):
        m = X @ (np.eye(3) + eps * Q) @ X.conj().T
        return validate(0.5 * (m + m.conj().T), tol)

    return Split(w1, endpoint(lb), w2, endpoint(ub), lb, ub, residual)


def decompose_to_rank2(rho, rank_tol=RANK_TOL):
    """Convex decomposition into at most four rank-<=2 states sharing rho's spin-spin block."""
    return _decompose(rho, rank_tol, ("root",))


def _decompose(rho, rank_tol, path, max_rank=4):
    # children of a rank-4 split are rank 3 by construction; a fourth
    # eigenvalue at the 1e-13 level is bisection residue
    r = min(numerical_rank(rho, rank_tol), max_rank)
    try:
        if r <= 2:
            return Rank2Decomposition([1.0], [rho])
        if r == 3:
            s = split_rank3(rho)
            return Rank2Decomposition([s.w1, s.w2], [s.rho1, s.rho2])
        s = split_rank4(rho)
    except NumericalFailure as exc:
        raise exc.at(*path) from exc
    weights, components = [], []
    for label, w, child in (("lb", s.w1, s.rho1), ("ub", s.w2, s.rho2)):
        sub = _decompose(child, rank_tol, path + (label,), max_rank=3)
        weights.extend(w * x for x in sub.weights)
        components.extend(sub.components)
    return Rank2Decomposition(weights, components)

"""Seeded random states and local unitaries.

Each sample draws from its own PCG64 generator seeded by
``SeedSequence([seed, stream, ..., index])``, so any sample can be regenerated in
isolation and parallel workers never share generator state.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .states import LocalUnitary, numerical_rank, validate

log = logging.getLogger(__name__)

RNG_NAME = "numpy PCG64 via SeedSequence([seed, stream, ..., index])"

_STREAM_DENSITY = 1
_STREAM_PURE = 2
_STREAM_UNITARY = 3


@dataclass(frozen=True)
class SampleSpec:
    seed: int
    rank: int
    count: int

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        if self.rank not in (1, 2, 3, 4):
            raise DomainError(f"rank must be 1..4, got {self.rank!r}")
        if self.count < 1:
            raise DomainError("count must be positive")


def sample_rng(seed, *key):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, *key])))


def _ginibre(rng, rows, cols):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_density_matrix(seed, rank, index=0):
    """rho = G G^dagger / tr(G G^dagger) for a 4 x rank complex Gaussian G, as an array."""
    g = _ginibre(sample_rng(seed, _STREAM_DENSITY, rank, index), 4, rank)
    m = g @ g.conj().T
    m = m / np.trace(m).real
    return 0.5 * (m + m.conj().T)


def random_density_array(spec):
    """All samples of ``spec`` stacked into a (count, 4, 4) array."""
    return np.array([random_density_matrix(spec.seed, spec.rank, i) for i in range(spec.count)])


def random_density(spec):
    """Yield ``spec.count`` validated states of rank ``spec.rank``."""
    for i in range(spec.count):
        rho = validate(random_density_matrix(spec.seed, spec.rank, i))
        r = numerical_rank(rho)
        if r != spec.rank:
            log.warning("sample %d has numerical rank %d, expected %d", i, r, spec.rank)
        yield rho


def random_pure(seed, index=0):
    z = _ginibre(sample_rng(seed, _STREAM_PURE, index), 4, 1)[:, 0]
    return z / np.linalg.norm(z)


def haar_unitary_2x2(rng):
    z = _ginibre(rng, 2, 2) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_local_unitary(seed, index=0):
    rng = sample_rng(seed, _STREAM_UNITARY, index)
    u_a = haar_unitary_2x2(rng)
    u_b = haar_unitary_2x2(rng)
    return LocalUnitary(u_a, u_b)


def mixed_rank_ensemble(seed, count):
    """``count`` states cycling through ranks 1, 2, 3, 4; returns (states, ranks)."""
    ranks = np.arange(count) % 4 + 1
    states = np.array([random_density_matrix(seed, int(r), i) for i, r in enumerate(ranks)])
    return states, ranks

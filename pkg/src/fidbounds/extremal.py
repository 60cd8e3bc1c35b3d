"""Constructors for the named state families.

The rank-2 minimisers are returned exactly in their canonical form, without
any local-unitary dressing.
"""

import numpy as np

from .errors import DomainError
from .states import ket_to_density, validate

_S = 1.0 / np.sqrt(2.0)
_BELL = {
    "phi+": np.array([_S, 0, 0, _S]),
    "phi-": np.array([_S, 0, 0, -_S]),
    "psi+": np.array([0, _S, _S, 0]),
    "psi-": np.array([0, _S, -_S, 0]),
}
FAMILY_SWITCH = 1.0 / 3.0


def _check_unit(name, x):
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {x!r}")


def bell_state(kind="phi+"):
    try:
        psi = _BELL[kind]
    except KeyError:
        raise DomainError(f"unknown Bell state {kind!r}; use one of {sorted(_BELL)}") from None
    return ket_to_density(psi)


def werner(p):
    """p |psi-><psi-| + (1 - p) 1/4."""
    _check_unit("p", p)
    singlet = np.outer(_BELL["psi-"], _BELL["psi-"])
    return validate(p * singlet + (1.0 - p) * np.eye(4) / 4.0)


def min_fidelity_low(C):
    """Minimiser for C <= 1/3; fidelity (1 + C) / 4."""
    if not 0.0 <= C <= FAMILY_SWITCH:
        raise DomainError(f"low family needs C in [0, 1/3], got {C!r}")
    disc = np.sqrt(max(0.0, 1.0 - 2.0 * C - 3.0 * C * C))
    m = np.zeros((4, 4))
    m[0, 0] = (1.0 + C) / 2.0
    m[1, 1] = (1.0 - C + disc) / 4.0
    m[2, 2] = (1.0 - C - disc) / 4.0
    m[1, 2] = m[2, 1] = -C / 2.0
    return validate(m)


def min_fidelity_high(C):
    """Minimiser for C >= 1/3; fidelity C."""
    if not FAMILY_SWITCH <= C <= 1.0:
        raise DomainError(f"high family needs C in [1/3, 1], got {C!r}")
    m = np.zeros((4, 4))
    m[0, 0] = 1.0 - C
    m[1, 1] = m[2, 2] = C / 2.0
    m[1, 2] = m[2, 1] = -C / 2.0
    return validate(m)


def min_fidelity_state(C):
    """Rank-2 state with the smallest fidelity compatible with concurrence C."""
    _check_unit("concurrence", C)
    if C <= FAMILY_SWITCH:
        return min_fidelity_low(C)
    return min_fidelity_high(C)


def pure_state_amplitudes(C):
    _check_unit("concurrence", C)
    a = np.sqrt((1.0 + np.sqrt(1.0 - C * C)) / 2.0)
    b = C / (2.0 * a)
    return np.array([a, 0.0, 0.0, b], dtype=complex)


def pure_state_with_concurrence(C):
    """a|00> + b|11> with 2ab = C; saturates F = (1 + C) / 2."""
    return ket_to_density(pure_state_amplitudes(C))

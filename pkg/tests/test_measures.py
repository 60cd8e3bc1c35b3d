import json

import numpy as np
import pytest

from fidbounds import measures
from fidbounds.errors import DegenerateEigenvalue, DomainError
from fidbounds.extremal import bell_state, min_fidelity_state, werner
from fidbounds.sampling import random_density_matrix, random_local_unitary, random_pure
from fidbounds.states import apply_local_unitary, ket_to_density, validate

PRODUCT = np.kron(np.diag([0.7, 0.3]), np.array([[0.6, 0.1j], [-0.1j, 0.4]]))


def werner_oracle(p):
    """Fidelity, concurrence and negativity of p*singlet + (1-p)/4 worked out by hand."""
    return (1 + 3 * p) / 4, max(0.0, (3 * p - 1) / 2), max(0.0, (3 * p - 1) / 2)


def concurrence_reference(rho):
    # textbook route: eigenvalues of the non-Hermitian product rho * flipped(rho)
    yy = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])
    flipped = yy @ rho.conj() @ yy
    ev = np.sort(np.sqrt(np.abs(np.linalg.eigvals(rho @ flipped).real)))[::-1]
    return max(0.0, ev[0] - ev[1] - ev[2] - ev[3])


def test_fidelity_fixed_points():
    assert measures.fidelity(bell_state("phi+")) == pytest.approx(1.0, abs=1e-15)
    assert measures.fidelity(np.eye(4) / 4) == pytest.approx(0.25, abs=1e-15)
    assert measures.fidelity(np.diag([1.0, 0, 0, 0])) == pytest.approx(0.5, abs=1e-15)


@pytest.mark.parametrize("p", np.linspace(0, 1, 11))
def test_werner_closed_forms(p):
    rho = werner(p)
    F, C, N = werner_oracle(p)
    assert measures.fidelity(rho) == pytest.approx(F, abs=1e-12)
    assert measures.concurrence(rho) == pytest.approx(C, abs=1e-12)
    assert measures.negativity(rho) == pytest.approx(N, abs=1e-12)


def test_concurrence_fixed_points():
    assert measures.concurrence(bell_state("phi+")) == pytest.approx(1.0, abs=1e-12)
    assert measures.concurrence(PRODUCT) == pytest.approx(0.0, abs=1e-12)


def test_concurrence_matches_textbook_route():
    for i in range(50):
        rho = random_density_matrix(21, 2 + i % 3, i)
        assert measures.concurrence(rho) == pytest.approx(concurrence_reference(rho), abs=1e-7)


def test_concurrence_on_pure_states():
    for i in range(50):
        psi = random_pure(22, i)
        a, b, c, d = psi
        assert measures.concurrence(np.outer(psi, psi.conj())) == pytest.approx(
            2 * abs(a * d - b * c), abs=1e-10
        )


def test_negativity():
    assert measures.negativity(bell_state("phi+")) == pytest.approx(1.0, abs=1e-15)
    assert measures.negativity(PRODUCT) == 0.0
    # 2x2 block [[1/2, -1/4], [-1/4, 0]] of the partial transpose
    block_min = np.linalg.eigvalsh(np.array([[0.5, -0.25], [-0.25, 0.0]]))[0]
    assert block_min == pytest.approx(0.25 - np.sqrt(2) / 4)
    assert measures.negativity(min_fidelity_state(0.5)) == pytest.approx(-2 * block_min, abs=1e-14)
    assert measures.negativity(min_fidelity_state(0.5)) == pytest.approx(0.2071067811865475, abs=1e-14)


def test_eof():
    assert measures.eof(0.0) == 0.0
    assert measures.eof(1.0) == pytest.approx(1.0)
    grid = [measures.eof(c) for c in np.linspace(0, 1, 100)]
    assert all(b > a for a, b in zip(grid, grid[1:]))
    with pytest.raises(DomainError):
        measures.eof(1.2)
    with pytest.raises(DomainError):
        measures.eof(-0.1)


def test_diagnostic_bell_and_product():
    d = measures.negative_pt_eigvec_diagnostic(bell_state("phi+"))
    assert d.lambda_min == pytest.approx(-0.5)
    assert d.eigvec_concurrence == pytest.approx(1.0)
    assert d.is_maximally_entangled
    d = measures.negative_pt_eigvec_diagnostic(PRODUCT)
    assert d.lambda_min >= 0
    assert not d.is_maximally_entangled
    # degenerate but nonnegative minimum is reported, not raised
    assert not measures.negative_pt_eigvec_diagnostic(np.diag([1.0, 0, 0, 0])).is_maximally_entangled


def test_diagnostic_degenerate_negative_eigenvalue():
    # not a state: a diagonal input is its own partial transpose
    with pytest.raises(DegenerateEigenvalue):
        measures.negative_pt_eigvec_diagnostic(np.diag([-0.1, -0.1, 0.6, 0.6]))


def test_diagnostic_flag_with_symmetric_noise():
    rng = np.random.default_rng(5)
    phi = bell_state("phi+").entries
    flagged = 0
    for _ in range(40):
        p = rng.uniform(0.4, 1.0)
        b = rng.uniform(0, 0.3)
        a = rng.uniform(0, 1 - 2 * b)
        rho = validate(p * phi + (1 - p) * np.diag([a, b, b, 1 - a - 2 * b]))
        d = measures.negative_pt_eigvec_diagnostic(rho)
        if d.is_maximally_entangled:
            flagged += 1
            N, C, F = measures.negativity(rho), measures.concurrence(rho), measures.fidelity(rho)
            assert abs(N - C) <= 1e-8
            assert abs(F - (1 + N) / 2) <= 1e-8
    assert flagged > 20


def test_diagnostic_flag_tolerance_scaling():
    # with noise asymmetry d on |01>, |10> the eigenvector defect 1 - c is second
    # order in (1 - p) d while N - C is first order in (1 - p): a fixed tolerance
    # on 1 - c does not bound |N - C| at the same level as p -> 1
    phi = bell_state("phi+").entries
    ratios = []
    for q in (1e-2, 1e-3, 1e-4):
        rho = validate((1 - q) * phi + q * np.diag([0.4, 0.25, 0.2, 0.15]))
        d = measures.negative_pt_eigvec_diagnostic(rho)
        gap = abs(measures.negativity(rho) - measures.concurrence(rho))
        ratios.append(gap / (1 - d.eigvec_concurrence))
    assert ratios[0] < ratios[1] < ratios[2]
    assert ratios[2] > 1e3


def test_measure_report():
    r = measures.measure_report(bell_state("phi+"))
    assert (r.fidelity, r.concurrence, r.negativity, r.purity, r.rank) == pytest.approx((1, 1, 1, 1, 1))
    r = measures.measure_report(validate(np.eye(4) / 4))
    assert (r.fidelity, r.concurrence, r.negativity, r.purity, r.rank) == pytest.approx((0.25, 0, 0, 0.25, 4))
    r = measures.measure_report(werner(0.9))
    assert (r.fidelity, r.concurrence, r.negativity) == pytest.approx((0.925, 0.85, 0.85), abs=1e-12)
    doc = json.loads(r.to_json())
    assert set(doc) == {"fidelity", "concurrence", "negativity", "eof", "purity", "rank"}


def test_local_unitary_invariance():
    for i in range(100):
        rho = validate(random_density_matrix(31, 1 + i % 4, i % 10))
        out = apply_local_unitary(rho, random_local_unitary(31, i))
        for f in (measures.fidelity, measures.concurrence, measures.negativity):
            assert f(out) == pytest.approx(f(rho), abs=1e-10)


def test_fidelity_convexity(rng):
    for i in range(200):
        r1 = random_density_matrix(41, 1 + i % 4, i)
        r2 = random_density_matrix(42, 1 + (i + 1) % 4, i)
        p = rng.uniform()
        mix = p * r1 + (1 - p) * r2
        assert measures.fidelity(mix) <= p * measures.fidelity(r1) + (1 - p) * measures.fidelity(r2) + 1e-9


def test_pure_states_saturate_upper_bound():
    for i in range(100):
        rho = ket_to_density(random_pure(43, i))
        assert measures.fidelity(rho) == pytest.approx((1 + measures.concurrence(rho)) / 2, abs=1e-10)


def test_batch_matches_scalar():
    rhos = np.array([random_density_matrix(44, 1 + i % 4, i) for i in range(40)])
    F, C, N = measures.measures_batch(rhos)
    for i, rho in enumerate(rhos):
        assert F[i] == pytest.approx(measures.fidelity(rho), abs=1e-13)
        assert C[i] == pytest.approx(measures.concurrence(rho), abs=1e-12)
        assert N[i] == pytest.approx(measures.negativity(rho), abs=1e-13)


def test_report_ranges():
    for i in range(100):
        r = measures.measure_report(validate(random_density_matrix(45, 1 + i % 4, i)))
        assert 0.25 - 1e-9 <= r.fidelity <= 1 + 1e-9
        assert r.negativity <= r.concurrence + 1e-9
        assert 0 <= r.eof <= 1

import numpy as np
import pytest

from conftest import (
    random_local_pair,
    random_proper_orthogonal,
    random_su2,
    random_unitary,
)
from gateforge import gates
from gateforge.errors import (
    ImproperRotationError,
    NegativeDurationError,
    NonUnitaryError,
    NotAProductError,
    NotSymmetricError,
)
from gateforge.linalg import (
    MAGIC,
    PAULI_X,
    PAULI_Z,
    LocalUnitaryPair,
    drift_exponential,
    from_magic,
    is_unitary,
    joint_diagonalize_symmetric_unitary,
    kron_factor,
    so4_to_local,
    special_normalize,
    to_magic,
)

# The magic-basis image of e^{-i pi/4} CNOT: every entry is +-1 or +-i times
# e^{-i pi/4} / 2.
CNOT_MAGIC = (
    np.exp(-1j * np.pi / 4)
    / 2
    * np.array(
        [
            [1, -1j, -1, -1j],
            [1j, 1, 1j, -1],
            [-1, -1j, 1, -1j],
            [1j, -1, 1j, 1],
        ]
    ).T
)


def test_magic_basis_is_unitary():
    assert is_unitary(MAGIC, 1e-14)


def test_to_magic_fixes_identity():
    assert np.allclose(to_magic(np.eye(4)), np.eye(4), atol=1e-14)


def test_to_magic_cnot_explicit_matrix():
    m = to_magic(np.exp(-1j * np.pi / 4) * gates.CNOT)
    assert np.max(np.abs(m - CNOT_MAGIC)) < 1e-12
    assert np.allclose(np.abs(m), 0.5)


def test_to_magic_of_product_is_real():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        pair = random_local_pair(rng)
        m = to_magic(np.kron(pair.u_a, pair.u_b))
        assert np.max(np.abs(m.imag)) <= 1e-9


def test_from_magic_inverts_to_magic():
    rng = np.random.default_rng(5)
    for _ in range(20):
        g = random_unitary(4, rng)
        assert np.max(np.abs(from_magic(to_magic(g)) - g)) <= 1e-12
    assert np.allclose(from_magic(to_magic(gates.CNOT)), gates.CNOT, atol=1e-12)


def test_special_normalize_identity():
    m, c = special_normalize(np.eye(4))
    assert np.allclose(m, np.eye(4))
    assert c == pytest.approx(1.0)


def test_special_normalize_scalar_phase():
    m, c = special_normalize(np.exp(1j * np.pi / 7) * np.eye(4))
    assert c == pytest.approx(np.exp(1j * np.pi / 7), abs=1e-12)
    assert abs(np.linalg.det(m) - 1) < 1e-12


def test_special_normalize_cnot_phase():
    # det(CNOT) = -1; the principal fourth root is e^{i pi/4}, matching the
    # determinant-one normalization e^{-i pi/4} CNOT up to the root branch.
    m, c = special_normalize(gates.CNOT)
    assert c == pytest.approx(np.exp(1j * np.pi / 4), abs=1e-12)
    assert np.allclose(m, np.exp(-1j * np.pi / 4) * gates.CNOT, atol=1e-12)


def test_special_normalize_rejects_nonunitary():
    with pytest.raises(NonUnitaryError):
        special_normalize(np.ones((4, 4)))


def test_joint_diagonalize_identity():
    o, theta = joint_diagonalize_symmetric_unitary(np.eye(4, dtype=complex))
    assert np.allclose(theta, 0)
    assert np.allclose(o @ o.T, np.eye(4), atol=1e-12)
    assert np.linalg.det(o) == pytest.approx(1.0)


def test_joint_diagonalize_cnot_phases():
    m = to_magic(np.exp(-1j * np.pi / 4) * gates.CNOT)
    _, theta = joint_diagonalize_symmetric_unitary(m.T @ m)
    assert np.allclose(np.sort(theta), np.sort([np.pi / 2, np.pi / 2, -np.pi / 2, -np.pi / 2]), atol=1e-10)


@pytest.mark.parametrize("phases", [(0.3, 0.1, -0.2, -0.2), (1.0, 1.0, -1.0, -1.0), (0.5, 0.5, 0.5, 0.5)])
def test_joint_diagonalize_recovers_constructed_phases(phases):
    rng = np.random.default_rng(hash(phases) % 2**32)
    o = random_proper_orthogonal(4, rng)
    m = o.T @ np.diag(np.exp(1j * np.array(phases))) @ o
    o2, theta = joint_diagonalize_symmetric_unitary(m)
    assert np.allclose(np.sort(theta), np.sort(phases), atol=1e-9)
    assert np.max(np.abs(m - o2.T @ np.diag(np.exp(1j * theta)) @ o2)) <= 1e-9
    assert np.linalg.det(o2) == pytest.approx(1.0, abs=1e-10)


def test_joint_diagonalize_random_with_degeneracies():
    rng = np.random.default_rng(42)
    for _ in range(200):
        o = random_proper_orthogonal(4, rng)
        theta = rng.uniform(-np.pi, np.pi, size=4)
        if rng.random() < 0.5:
            theta[1] = theta[0]  # inject duplicates
        if rng.random() < 0.25:
            theta[3] = theta[2]
        m = o.T @ np.diag(np.exp(1j * theta)) @ o
        _, got = joint_diagonalize_symmetric_unitary(m)
        assert np.allclose(np.sort(got), np.sort(theta), atol=1e-8)


def test_joint_diagonalize_rejects_asymmetric():
    m = np.eye(4, dtype=complex)
    m[0, 1], m[1, 0] = 0.6, -0.6
    m[0, 0] = m[1, 1] = 0.8
    assert is_unitary(m, 1e-12)
    with pytest.raises(NotSymmetricError):
        joint_diagonalize_symmetric_unitary(m)


def test_kron_factor_pauli_product():
    pair = kron_factor(np.kron(PAULI_X, PAULI_Z))
    assert np.max(np.abs(pair.matrix() - np.kron(PAULI_X, PAULI_Z))) <= 1e-12
    assert abs(np.linalg.det(pair.u_a) - 1) < 1e-12
    assert abs(np.linalg.det(pair.u_b) - 1) < 1e-12


def test_kron_factor_identity():
    pair = kron_factor(np.eye(4, dtype=complex))
    assert np.allclose(pair.u_a, np.eye(2))
    assert np.allclose(pair.u_b, np.eye(2))
    assert pair.phase == pytest.approx(1.0)


def test_kron_factor_magic_permutation():
    # Swapping magic states 1<->2 and 3<->4 is proper, hence local.
    p = np.array([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=float)
    assert np.linalg.det(p) == pytest.approx(1.0)
    pair = kron_factor(from_magic(p))
    assert np.max(np.abs(pair.matrix() - from_magic(p))) <= 1e-8


def test_kron_factor_random_products_and_gauge_idempotence():
    rng = np.random.default_rng(3)
    for _ in range(200):
        phase = np.exp(2j * np.pi * rng.random())
        m = phase * np.kron(random_su2(rng), random_su2(rng))
        pair = kron_factor(m)
        assert np.max(np.abs(pair.matrix() - m)) <= 1e-9
        again = kron_factor(pair.matrix())
        assert np.max(np.abs(again.u_a - pair.u_a)) <= 1e-9
        assert np.max(np.abs(again.u_b - pair.u_b)) <= 1e-9
        assert abs(again.phase - pair.phase) <= 1e-9


def test_kron_factor_rejects_entangling_gate():
    with pytest.raises(NotAProductError) as err:
        kron_factor(gates.CNOT)
    assert err.value.residual > 1e-3


def test_so4_to_local_identity():
    pair = so4_to_local(np.eye(4))
    assert np.allclose(pair.matrix(), np.eye(4), atol=1e-12)


@pytest.mark.parametrize(
    "o",
    [
        np.array([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=float),
        np.diag([1.0, 1.0, -1.0, -1.0]),
    ],
)
def test_so4_to_local_reassembles(o):
    pair = so4_to_local(o)
    assert np.max(np.abs(pair.matrix() - from_magic(o))) <= 1e-8


def test_so4_to_local_random():
    rng = np.random.default_rng(9)
    for _ in range(100):
        o = random_proper_orthogonal(4, rng)
        pair = so4_to_local(o)
        assert np.max(np.abs(pair.matrix() - from_magic(o))) <= 1e-8


def test_so4_to_local_rejects_improper():
    with pytest.raises(ImproperRotationError):
        so4_to_local(np.diag([1.0, 1.0, 1.0, -1.0]))


def test_drift_exponential_zero_time():
    lam = np.array([0.3, 0.2, -0.1, -0.4])
    assert np.allclose(drift_exponential(lam, 0.0), np.eye(4), atol=1e-14)


def test_drift_exponential_is_unitary_and_additive():
    rng = np.random.default_rng(17)
    for _ in range(50):
        a = rng.normal(size=3)
        lam = np.array([a[0] + a[1] - a[2], a[0] - a[1] + a[2], -a[0] + a[1] + a[2], -a[0] - a[1] - a[2]])
        s, t = rng.uniform(0, 2, size=2)
        whole = drift_exponential(lam, s + t)
        split = drift_exponential(lam, s) @ drift_exponential(lam, t)
        assert np.max(np.abs(whole - split)) <= 1e-10
        assert is_unitary(whole, 1e-10)


def test_drift_exponential_rejects_negative_time():
    with pytest.raises(NegativeDurationError):
        drift_exponential(np.zeros(4), -0.1)


def test_local_pair_matrix_and_dagger():
    rng = np.random.default_rng(23)
    pair = LocalUnitaryPair(random_su2(rng), random_su2(rng), np.exp(0.7j))
    m = pair.matrix()
    assert np.allclose(pair.dagger().matrix(), m.conj().T, atol=1e-12)
    pair.validate()

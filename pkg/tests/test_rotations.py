import numpy as np
import pytest
from hypothesis import given, settings
from numpy.testing import assert_allclose

from conftest import complex_matrices, ginibre, hermitian, hermitian_matrices
from indefkk.core import ODD, HermiticityError, GradedSpace, as_operator, residual
from indefkk.oscillator import build_fock_model
from indefkk.rotations import (
    WickPair,
    double_commuting,
    double_odd_to_even,
    doubled_resolvent_factors,
    doubling_block_identities,
    opposite_equivalence_check,
    opposite_unitary,
    reverse_wick,
    wick_rotate,
)

S1 = np.array([[0, 1], [1, 0]], dtype=complex)
S2 = np.array([[0, -1j], [1j, 0]])


def test_wick_example():
    d = (1 + 1j) * np.array([[0, 1], [0, 0]])
    pair = wick_rotate(d)
    assert_allclose(pair.d_plus.matrix, [[0, 1], [1, 0]], atol=1e-15)
    assert_allclose(pair.d_minus.matrix, [[0, 1j], [-1j, 0]], atol=1e-15)


def test_hermitian_and_scaled_cases(rng):
    s = hermitian(rng, 5)
    pair = wick_rotate(s)
    assert_allclose(pair.d_plus.matrix, s)
    assert_allclose(pair.d_minus.matrix, s)
    pair = wick_rotate((1 + 1j) * s)
    assert_allclose(pair.d_plus.matrix, 2 * s, atol=1e-15)
    assert np.abs(pair.d_minus.matrix).max() <= 1e-15


def test_reverse_examples(rng):
    s = hermitian(rng, 4)
    assert_allclose(reverse_wick(s, s).matrix, s)
    d1, d2 = hermitian(rng, 6), hermitian(rng, 6)
    assert_allclose(reverse_wick(d2, d1).matrix, reverse_wick(d1, d2).matrix.conj().T)


def test_reverse_rejects_non_hermitian():
    with pytest.raises(HermiticityError):
        reverse_wick(np.array([[0, 1], [0, 0]]), np.eye(2))
    with pytest.raises(HermiticityError):
        WickPair(as_operator(np.array([[0, 1], [0, 0]])), as_operator(np.eye(2)))


@settings(max_examples=60, deadline=None)
@given(complex_matrices(max_n=10))
def test_round_trip_property(d):
    pair = wick_rotate(d)
    assert residual(reverse_wick(*pair).matrix, d) <= 1e-12
    assert residual(pair.d_plus.matrix + pair.d_minus.matrix, d + d.conj().T) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(hermitian_matrices(min_n=3, max_n=3), hermitian_matrices(min_n=3, max_n=3))
def test_inverse_round_trip_property(d1, d2):
    back = wick_rotate(reverse_wick(d1, d2))
    assert residual(back.d_plus.matrix, d1) <= 1e-12
    assert residual(back.d_minus.matrix, d2) <= 1e-12


def test_swap_and_unitary_laws(rng):
    d = ginibre(rng, 12)
    pair = wick_rotate(d)
    swapped = wick_rotate(d.conj().T)
    assert residual(swapped.d_plus.matrix, pair.d_minus.matrix) <= 1e-12
    q, _ = np.linalg.qr(ginibre(rng, 12))
    moved = wick_rotate(q @ d @ q.conj().T)
    assert residual(moved.d_plus.matrix, q @ pair.d_plus.matrix @ q.conj().T) <= 1e-12


def test_doubling_examples(rng):
    s, t = np.diag([1.0, 2.0, 3.0]), np.diag([-1.0, 0.5, 4.0])
    s_t, t_t = double_commuting(s, t)
    anti = s_t.matrix @ t_t.matrix + t_t.matrix @ s_t.matrix
    assert np.abs(anti).max() == 0
    s_t, t_t = double_commuting(S1, S2)
    comm = s_t.matrix @ t_t.matrix - t_t.matrix @ s_t.matrix
    assert np.abs(comm).max() <= 1e-15
    res = doubling_block_identities(hermitian(rng, 16), hermitian(rng, 16))
    assert max(res.values()) <= 1e-12
    assert s_t.labels == ("0", "iS", "-iS", "0")


def test_doubling_rejects_non_hermitian():
    with pytest.raises(HermiticityError):
        double_commuting(np.array([[0, 1], [0, 0]]), np.eye(2))


@pytest.mark.parametrize("mu", [-4, -2, -1, -0.5, -0.25, 0.25, 0.5, 1, 2, 4])
def test_resolvent_product(rng, mu):
    s = hermitian(rng, 24)
    s_t, _ = double_commuting(s, hermitian(rng, 24))
    left, right = doubled_resolvent_factors(s, mu)
    direct = np.linalg.inv(s_t.dense() - 1j * mu * np.eye(48))
    assert residual(left @ right, direct) <= 1e-10


def test_resolvent_rejects_zero_mu(rng):
    with pytest.raises(ValueError):
        doubled_resolvent_factors(hermitian(rng, 3), 0.0)


def test_odd_to_even_structure(rng):
    d = ginibre(rng, 32)
    d_t, d_tp, d_tm = double_odd_to_even(d)
    assert all(x.parity == ODD and x.parity_residual() == 0 for x in (d_t, d_tp, d_tm))
    assert residual(reverse_wick(d_tp, d_tm).matrix, d_t.matrix) <= 1e-12
    assert_allclose(d_tp.block(1, 0), d)
    assert_allclose(d_tm.block(0, 1), d)
    assert_allclose(d_tp.block(0, 1), d.conj().T)


def test_odd_to_even_hermitian_input(rng):
    s = hermitian(rng, 5)
    _, d_tp, d_tm = double_odd_to_even(s)
    assert_allclose(d_tp.matrix, d_tm.matrix)


def test_odd_to_even_needs_ungraded_input():
    op = as_operator(S1, GradedSpace.from_signs([1, -1]), ODD)
    with pytest.raises(ValueError):
        double_odd_to_even(op)


def test_opposite_equivalence_ladder():
    a = build_fock_model(1, 8).a[0].toarray()
    rep = opposite_equivalence_check(a)
    assert rep.passed
    assert rep.details["operator"] <= 1e-12 and rep.details["grading"] == 0


def test_opposite_equivalence_zero_and_w():
    rep = opposite_equivalence_check(np.zeros((3, 3)))
    assert rep.residual == 0
    w = opposite_unitary(1).toarray()
    assert_allclose(w @ np.diag([1, -1]) @ w.conj().T, np.diag([-1, 1]))

import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from indefkk.clifford import (
    build_clifford,
    clifford_suite,
    hermitian_generators,
    krein_adjoint,
    krein_checks,
    wick_rotate_clifford,
)
from indefkk.core import as_operator

SIGNATURES = [(t, n - t) for n in range(1, 7) for t in range(n + 1)]


def test_lorentzian_2d_example():
    rep = build_clifford(1, 1)
    g0, g1 = rep.generators
    assert_allclose(g0, [[0, 1], [1, 0]])
    assert_allclose(g1, [[0, 1], [-1, 0]])
    assert_allclose(g0 @ g0, np.eye(2))
    assert_allclose(g1 @ g1, -np.eye(2))
    assert_allclose(rep.grading, np.diag([1, -1]))
    assert_allclose(rep.fundamental_symmetry, g0)


def test_reflection_example():
    rep = build_clifford(1, 1)
    j = rep.fundamental_symmetry
    g0, g1 = rep.generators
    assert_allclose(j @ g0 @ j, g0)
    assert_allclose(j @ g1 @ j, -g1)


def test_riemannian_squares():
    rep = build_clifford(0, 2)
    for g in rep.generators:
        assert_allclose(g @ g, -np.eye(rep.dim))
    assert_allclose(rep.fundamental_symmetry, np.eye(rep.dim))


@pytest.mark.parametrize("t,s", SIGNATURES)
def test_all_identities(t, s):
    rep = build_clifford(t, s)
    assert rep.dim == 2 ** ((t + s) // 2)
    assert max(rep.residuals().values()) <= 1e-12
    assert (rep.grading is None) == ((t + s) % 2 == 1)


@pytest.mark.parametrize("t,s", SIGNATURES)
@pytest.mark.parametrize("sign", [1, -1])
def test_rotation(t, s, sign):
    rep = build_clifford(t, s)
    rot = wick_rotate_clifford(rep, sign)
    assert rot.t == 0 and rot.s == t + s and rot.rotation == sign
    assert rot.clifford_residual() <= 1e-12
    if rep.grading is not None:
        assert_allclose(rot.grading, (-sign) ** t * rep.grading, atol=1e-12)


def test_lorentzian_rotated_grading_signs():
    for s in (1, 3, 5):
        rep = build_clifford(1, s)
        assert_allclose(wick_rotate_clifford(rep, 1).grading, -rep.grading, atol=1e-12)
        assert_allclose(wick_rotate_clifford(rep, -1).grading, rep.grading, atol=1e-12)


def test_rotation_example_1_1():
    rep = build_clifford(1, 1)
    rot = wick_rotate_clifford(rep, 1)
    assert_allclose(rot.generators[0], 1j * rep.generators[0])
    assert_allclose(rot.grading, np.diag([-1, 1]))


def test_rotation_example_1_3():
    rot = wick_rotate_clifford(build_clifford(1, 3), -1)
    gens = rot.generators
    for i, a in enumerate(gens):
        assert_allclose(a @ a, -np.eye(4), atol=1e-15)
        for b in gens[i + 1:]:
            assert np.abs(a @ b + b @ a).max() <= 1e-15


def test_suite_residuals():
    res = clifford_suite(6)
    assert len(res) == len(SIGNATURES)
    assert max(max(v.values()) for v in res.values()) <= 1e-12


def test_krein_adjoint():
    rep = build_clifford(1, 1)
    j = rep.fundamental_symmetry
    assert_allclose(krein_adjoint(rep, j), j)
    assert_allclose(krein_adjoint(rep, rep.generators[0]), rep.generators[0])
    # Krein-symmetric operator: X* = J X J
    x = j @ np.diag([2.0, 5.0])
    assert_allclose(x.conj().T, j @ x @ j)
    assert_allclose(krein_adjoint(rep, x), x)
    op = krein_adjoint(rep, as_operator(j))
    assert_allclose(op.matrix, j)


@pytest.mark.parametrize("t,s", [(1, 1), (1, 3), (2, 2), (3, 3)])
def test_krein_involution(t, s):
    assert max(krein_checks(build_clifford(t, s), np.random.default_rng(t + s)).values()) <= 1e-12


def test_errors():
    with pytest.raises(ValueError):
        build_clifford(0, 0)
    with pytest.raises(ValueError):
        build_clifford(-1, 2)
    with pytest.raises(ValueError):
        wick_rotate_clifford(build_clifford(1, 1), 0)
    with pytest.raises(ValueError):
        krein_adjoint(build_clifford(1, 1), np.eye(3))


def test_hermitian_generators():
    assert_allclose(hermitian_generators(1)[0], [[1]])
    for n in range(1, 7):
        gens = hermitian_generators(n)
        for g in gens:
            assert_allclose(g, g.conj().T)
            assert_allclose(g @ g, np.eye(g.shape[0]))


def test_json_export(tmp_path):
    rep = build_clifford(1, 3)
    text = rep.to_json(tmp_path / "g.json")
    data = json.loads((tmp_path / "g.json").read_text())
    assert data == json.loads(text)
    gens = [np.array(g)[..., 0] + 1j * np.array(g)[..., 1] for g in data["generators"]]
    for a, b in zip(gens, rep.generators):
        assert_allclose(a, b)

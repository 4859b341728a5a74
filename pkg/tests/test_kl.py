import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ginibre, hermitian
from indefkk.core import HermiticityError
from indefkk.cylinder import brute_force_relative_bound, counter_model
from indefkk.kl import (
    ANTICOMMUTING,
    BOUNDED,
    COMMUTING,
    GROWING,
    INCONCLUSIVE,
    BoundSweep,
    ConditionProbe,
    classify,
    doubling_transport,
    refinement_sweep,
    relative_bound,
    resolvent_bound,
)

S1 = np.array([[0, 1], [1, 0]], dtype=complex)
S2 = np.array([[0, -1j], [1j, 0]])
S3 = np.diag([1.0, -1.0]).astype(complex)


def test_probe_examples():
    assert resolvent_bound(ConditionProbe(np.diag([1.0, 2.0]), np.diag([3.0, 4.0]), mode=COMMUTING)) == 0
    assert resolvent_bound(ConditionProbe(S1, S2, mode=ANTICOMMUTING)) == 0
    assert resolvent_bound(ConditionProbe(S3, S1, (1.0,), ANTICOMMUTING)) == 0
    assert resolvent_bound(ConditionProbe(S3, S1, (1.0,), COMMUTING)) == pytest.approx(np.sqrt(2), abs=1e-14)


def test_probe_validation():
    with pytest.raises(ValueError):
        ConditionProbe(S1, S2, ())
    with pytest.raises(ValueError):
        ConditionProbe(S1, S2, (0.0, 1.0))
    with pytest.raises(ValueError):
        ConditionProbe(S1, S2, mode="sideways")
    with pytest.raises(HermiticityError):
        ConditionProbe(np.array([[0, 1], [0, 0]]), S2)


def test_resolvent_bound_matches_direct(rng):
    s, t = hermitian(rng, 12), hermitian(rng, 12)
    probe = ConditionProbe(s, t, (0.5, 2.0), COMMUTING)
    direct = max(
        np.linalg.norm((s @ t - t @ s) @ np.linalg.inv(s - 1j * mu * np.eye(12)), 2) for mu in (0.5, 2.0)
    )
    assert resolvent_bound(probe) == pytest.approx(direct, rel=1e-12)


def test_doubling_transport(rng):
    s, t = hermitian(rng, 10), hermitian(rng, 10)
    for mu in (-1.0, 0.25, 4.0):
        lhs, rhs = doubling_transport(s, t, mu)
        assert lhs <= rhs * (1 + 1e-12)


def test_relative_bound_examples(rng):
    b = hermitian(rng, 9)
    lam = np.linalg.eigvalsh(b)
    assert relative_bound(b, b) == pytest.approx(np.max(np.abs(lam) / (np.abs(lam) + 1)), rel=1e-12)
    assert relative_bound(np.eye(9), b) == pytest.approx(1 / (1 + np.min(np.abs(lam))), rel=1e-12)
    assert relative_bound(np.zeros((9, 9)), b) == 0


def test_relative_bound_rejects_non_hermitian():
    with pytest.raises(HermiticityError):
        relative_bound(np.eye(2), np.array([[0, 1], [0, 0]]))


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 24), st.integers(0, 2**31 - 1))
def test_relative_bound_against_sqrtm_oracle(n, seed):
    rng = np.random.default_rng(seed)
    a, b = ginibre(rng, n), hermitian(rng, n)
    assert relative_bound(a, b) == pytest.approx(brute_force_relative_bound(a, b), rel=1e-8)


def test_sparse_block_path_matches_oracle():
    a, b = counter_model(12, 8)
    assert relative_bound(a, b) == pytest.approx(brute_force_relative_bound(a, b), rel=1e-8)


def test_classify():
    assert classify([1.0, 1.5, 1.9]) == BOUNDED
    assert classify([1e-16, 3e-15, 1e-14]) == BOUNDED
    assert classify([1.0, 2.0, 4.0]) == GROWING
    assert classify([1.0, 2.5, 2.5]) == INCONCLUSIVE


def test_sweep_validation():
    with pytest.raises(ValueError):
        refinement_sweep(lambda n: (np.eye(n), np.eye(n)), [4, 8])
    with pytest.raises(ValueError):
        refinement_sweep(lambda n: (np.eye(n), np.eye(n)), [4, 8, 8])
    with pytest.raises(ValueError):
        BoundSweep((3, 2, 1), (1.0, 1.0, 1.0), BOUNDED)


def test_sweep_propagates_builder_errors():
    def builder(n):
        if n > 4:
            raise RuntimeError("boom")
        return np.eye(n), np.eye(n)

    with pytest.raises(RuntimeError):
        refinement_sweep(builder, [2, 4, 8])


def test_sweep_csv(tmp_path):
    sweep = refinement_sweep(lambda n: (np.eye(n), np.zeros((n, n))), [2, 4, 8])
    assert sweep.verdict == BOUNDED
    path = sweep.to_csv(tmp_path / "s.csv")
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "size,rho,verdict"
    assert lines[1] == "2,1.0,bounded"

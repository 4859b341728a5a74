"""Wick rotation, its reverse, and the 2x2 doubling constructions.

A non-symmetric operator D is traded for the Hermitian pair
``D+ = Re D + Im D`` and ``D- = Re D - Im D``; the reverse map rebuilds
``D = (D1 + D2)/2 + (i/2)(D1 - D2)`` from a Hermitian pair.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass

import numpy as np
import scipy.sparse as sp

from .core import (
    EXACT_TOL,
    ODD,
    NONE,
    GradedOperator,
    GradedSpace,
    SpaceMismatchError,
    adjoint,
    as_operator,
    block2,
    fro,
    imag_part,
    real_part,
    require_hermitian,
    residual,
    todense,
)
from .report import CheckReport, timed_check


@dataclass(frozen=True)
class WickPair:
    """Two Hermitian operators on one space: a Wick rotation ``(D+, D-)`` or any pair ``(D1, D2)``."""

    d_plus: GradedOperator
    d_minus: GradedOperator
    check: InitVar[bool] = True

    def __post_init__(self, check):
        if not self.d_plus.space.same_as(self.d_minus.space):
            raise SpaceMismatchError("the two operators of a pair must share a space")
        if self.d_plus.parity != self.d_minus.parity:
            raise ValueError("the two operators of a pair must have the same parity")
        if not check:
            return
        require_hermitian(self.d_plus, "d_plus")
        require_hermitian(self.d_minus, "d_minus")

    def __iter__(self):
        yield self.d_plus
        yield self.d_minus


@dataclass(frozen=True, eq=False)
class DoubledOperator(GradedOperator):
    """An operator on ``E + E`` kept in 2x2 block form."""

    labels: tuple = ()

    @property
    def base_dim(self) -> int:
        return self.dim // 2

    def block(self, i: int, j: int):
        n = self.base_dim
        m = self.matrix
        if sp.issparse(m):
            m = m.tocsr()
        return m[i * n:(i + 1) * n, j * n:(j + 1) * n]


def wick_rotate(D) -> WickPair:
    D = as_operator(D)
    re, im = real_part(D), imag_part(D)
    # Hermitian by construction
    return WickPair(re + im, re - im, check=False)


def reverse_wick(D1, D2) -> GradedOperator:
    """(D1 + D2)/2 + (i/2)(D1 - D2) for Hermitian D1, D2."""
    D1 = require_hermitian(as_operator(D1), "D1")
    D2 = require_hermitian(as_operator(D2), "D2")
    if not D1.space.same_as(D2.space):
        raise SpaceMismatchError("D1 and D2 act on different spaces")
    parity = D1.parity if D1.parity == D2.parity else NONE
    m = 0.5 * (D1.matrix + D2.matrix) + 0.5j * (D1.matrix - D2.matrix)
    return GradedOperator(m, D1.space, parity)


def _doubled_space(space: GradedSpace) -> GradedSpace:
    return space.doubled()


def double_commuting(S, T) -> tuple[DoubledOperator, DoubledOperator]:
    """S~ = [[0, iS], [-iS, 0]] and T~ = [[0, T], [T, 0]].

    Swaps the roles of commutator and anticommutator:
    ``{S~, T~} = i diag([S,T], -[S,T])`` and ``[S~, T~] = i diag({S,T}, -{S,T})``.
    """
    S = require_hermitian(as_operator(S), "S")
    T = require_hermitian(as_operator(T), "T")
    if not S.space.same_as(T.space):
        raise SpaceMismatchError("S and T act on different spaces")
    space = _doubled_space(S.space)
    s_t = DoubledOperator(block2(None, 1j * S.matrix, -1j * S.matrix, None), space, NONE, ("0", "iS", "-iS", "0"))
    t_t = DoubledOperator(block2(None, T.matrix, T.matrix, None), space, NONE, ("0", "T", "T", "0"))
    return s_t, t_t


def doubling_block_identities(S, T) -> dict[str, float]:
    """Residuals of the two block identities satisfied by :func:`double_commuting`."""
    S, T = as_operator(S), as_operator(T)
    s_t, t_t = double_commuting(S, T)
    comm = S.matrix @ T.matrix - T.matrix @ S.matrix
    anti = S.matrix @ T.matrix + T.matrix @ S.matrix
    lhs_anti = s_t.matrix @ t_t.matrix + t_t.matrix @ s_t.matrix
    lhs_comm = s_t.matrix @ t_t.matrix - t_t.matrix @ s_t.matrix
    return {
        "anticommutator": residual(lhs_anti, 1j * block2(comm, None, None, -comm)),
        "commutator": residual(lhs_comm, 1j * block2(anti, None, None, -anti)),
    }


def doubled_resolvent_factors(S, mu: float) -> tuple[np.ndarray, np.ndarray]:
    """Factor ``(S~ - i mu)^{-1}`` as ``diag(R, R) @ F`` with ``R = (S - i mu)^{-1}``.

    ``F = [[i mu Q, i S Q], [-i S Q, i mu Q]]`` with ``Q = (S + i mu)^{-1}``; the
    second factor is bounded whenever the first is.
    """
    if mu == 0:
        raise ValueError("mu must be nonzero")
    S = require_hermitian(as_operator(S), "S")
    s = todense(S.matrix)
    lam, v = np.linalg.eigh(s)
    vh = v.conj().T
    r = (v / (lam - 1j * mu)) @ vh
    q = (v / (lam + 1j * mu)) @ vh
    sq = (v * (lam / (lam + 1j * mu))) @ vh
    left = block2(r, None, None, r)
    right = block2(1j * mu * q, 1j * sq, -1j * sq, 1j * mu * q)
    return left, right


def double_odd_to_even(D) -> tuple[DoubledOperator, DoubledOperator, DoubledOperator]:
    """Double an operator on an ungraded space into three odd operators on ``E + E``.

    Returns ``D~ = [[0, D+], [D-, 0]]``, ``D~+ = [[0, D*], [D, 0]]`` and
    ``D~- = [[0, D], [D*, 0]]``; the doubled space is graded by ``diag(1, -1)``.
    """
    D = as_operator(D)
    if not D.space.is_trivial:
        raise ValueError("odd-to-even doubling expects an operator on an ungraded space")
    space = D.space.doubled()
    pair = wick_rotate(D)
    d, dh = D.matrix, adjoint(D).matrix
    d_t = DoubledOperator(block2(None, pair.d_plus.matrix, pair.d_minus.matrix, None), space, ODD, ("0", "D+", "D-", "0"))
    d_tp = DoubledOperator(block2(None, dh, d, None), space, ODD, ("0", "D*", "D", "0"))
    d_tm = DoubledOperator(block2(None, d, dh, None), space, ODD, ("0", "D", "D*", "0"))
    return d_t, d_tp, d_tm


def opposite_unitary(n: int):
    """W = [[0, -1], [1, 0]] on ``C^n + C^n``: odd, unitary and anti-self-adjoint."""
    eye = sp.identity(n, dtype=complex, format="csr")
    return block2(None, -eye, eye, None)


def opposite_equivalence_check(D, tol: float = EXACT_TOL) -> CheckReport:
    """Check that W conjugates ``D~+`` to ``-D~-`` and the grading to its negative."""

    def run():
        _, d_tp, d_tm = double_odd_to_even(D)
        n = d_tp.base_dim
        w = opposite_unitary(n)
        wh = w.conj().T
        gamma = d_tp.space.grading
        eye = sp.identity(2 * n, format="csr")
        details = {
            "operator": residual(w @ sp.csr_matrix(d_tp.matrix) @ wh, -sp.csr_matrix(d_tm.matrix)),
            "grading": residual(w @ gamma @ wh, -gamma),
            "unitary": fro(wh @ w - eye),
            "anti_self_adjoint": fro(wh + w),
        }
        return max(details.values()), details

    return timed_check("opposite-module-equivalence", "conjugation by W = [[0,-1],[1,0]]", tol, run)

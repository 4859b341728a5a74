"""Probes of the almost (anti-)commuting conditions and of relative boundedness.

``resolvent_bound`` evaluates ``sup_mu |[S,T](S - i mu)^{-1}|`` (or the
anticommutator version) over a finite grid of ``mu``. ``relative_bound``
is the single-number proxy ``rho(A; B) = |A (|B| + 1)^{-1}|`` and
``refinement_sweep`` tracks it along a sequence of lattice sizes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.csgraph as csgraph

from .core import (
    GradedOperator,
    as_operator,
    fro,
    require_hermitian,
    spectral_norm_iterative,
    todense,
)
from .report import write_csv
from .rotations import doubled_resolvent_factors, double_commuting

COMMUTING = "commuting"
ANTICOMMUTING = "anticommuting"

DEFAULT_MU_GRID = (-4.0, -2.0, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 2.0, 4.0)

BOUNDED = "bounded"
GROWING = "growing"
INCONCLUSIVE = "inconclusive"

# largest diagonal block of |B| we are willing to eigendecompose densely
_MAX_BLOCK = 4096
_DENSE_LIMIT = 1536


@dataclass(frozen=True)
class ConditionProbe:
    S: GradedOperator
    T: GradedOperator
    mu_grid: tuple = DEFAULT_MU_GRID
    mode: str = ANTICOMMUTING

    def __post_init__(self):
        object.__setattr__(self, "S", require_hermitian(as_operator(self.S), "S"))
        object.__setattr__(self, "T", require_hermitian(as_operator(self.T), "T"))
        object.__setattr__(self, "mu_grid", tuple(float(m) for m in self.mu_grid))
        if not self.mu_grid:
            raise ValueError("mu_grid must be nonempty")
        if any(m == 0 for m in self.mu_grid):
            raise ValueError("mu_grid entries must be nonzero")
        if self.mode not in (COMMUTING, ANTICOMMUTING):
            raise ValueError(f"mode must be {COMMUTING!r} or {ANTICOMMUTING!r}")


def _bracket(s, t, mode):
    if mode == COMMUTING:
        return s @ t - t @ s
    return s @ t + t @ s


def resolvent_norms(probe: ConditionProbe) -> dict[float, float]:
    """``|bracket(S, T) (S - i mu)^{-1}|`` for every ``mu`` of the probe."""
    s, t = todense(probe.S.matrix), todense(probe.T.matrix)
    lam, v = np.linalg.eigh(s)
    vh = v.conj().T
    # work in the eigenbasis of S: the resolvent is diagonal there
    c = vh @ _bracket(s, t, probe.mode) @ v
    return {mu: float(np.linalg.norm(c / (lam - 1j * mu)[None, :], 2)) for mu in probe.mu_grid}


def resolvent_bound(probe: ConditionProbe) -> float:
    return max(resolvent_norms(probe).values())


def doubling_transport(S, T, mu: float) -> tuple[float, float]:
    """Return ``(|{S~,T~}(S~ - i mu)^{-1}|, |[S,T](S - i mu)^{-1}| * |F|)``.

    ``F`` is the bounded right factor of :func:`doubled_resolvent_factors`;
    the first number never exceeds the second.
    """
    S, T = as_operator(S), as_operator(T)
    s_t, t_t = double_commuting(S, T)
    st, tt = todense(s_t.matrix), todense(t_t.matrix)
    lhs = (st @ tt + tt @ st) @ np.linalg.inv(st - 1j * mu * np.eye(st.shape[0]))
    _, right = doubled_resolvent_factors(S, mu)
    base = ConditionProbe(S, T, (mu,), COMMUTING)
    return float(np.linalg.norm(lhs, 2)), resolvent_bound(base) * float(np.linalg.norm(right, 2))


def _abs_resolvent_dense(b: np.ndarray) -> np.ndarray:
    lam, v = np.linalg.eigh(b)
    return (v / (np.abs(lam) + 1.0)) @ v.conj().T


def _abs_resolvent_blocks(b) -> sp.csr_matrix:
    """(|B| + 1)^{-1} for sparse Hermitian B, one dense eigensolve per connected block."""
    b = sp.csr_matrix(b)
    n = b.shape[0]
    pattern = (abs(b) + sp.identity(n, format="csr")).tocsr()
    ncomp, labels = csgraph.connected_components(pattern, directed=False)
    rows, cols, vals = [], [], []
    order = np.argsort(labels, kind="stable")
    bounds = np.searchsorted(labels[order], np.arange(ncomp + 1))
    for c in range(ncomp):
        idx = order[bounds[c]:bounds[c + 1]]
        if idx.size > _MAX_BLOCK:
            raise MemoryError(f"|B| block of size {idx.size} is too large for a dense eigensolve")
        block = b[idx][:, idx].toarray()
        r = _abs_resolvent_dense(block)
        rr, cc = np.meshgrid(idx, idx, indexing="ij")
        rows.append(rr.ravel())
        cols.append(cc.ravel())
        vals.append(r.ravel())
    return sp.csr_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(n, n))


def relative_bound(A, B) -> float:
    """rho(A; B) = |A (|B| + 1)^{-1}|, a finite proxy for "A is relatively bounded by B"."""
    A = as_operator(A)
    B = require_hermitian(as_operator(B), "B")
    if A.dim != B.dim:
        raise ValueError("A and B must have the same dimension")
    a, b = A.matrix, B.matrix
    if sp.issparse(a) and a.nnz == 0 or not sp.issparse(a) and not np.any(a):
        return 0.0
    if not sp.issparse(b) and b.shape[0] <= _DENSE_LIMIT:
        m = todense(a) @ _abs_resolvent_dense(np.asarray(b))
        return float(np.linalg.norm(m, 2))
    r = _abs_resolvent_blocks(b)
    m = sp.csr_matrix(a) @ r
    if m.shape[0] <= _DENSE_LIMIT:
        return float(np.linalg.norm(m.toarray(), 2))
    if fro(m) == 0.0:
        return 0.0
    return spectral_norm_iterative(m)


@dataclass(frozen=True)
class BoundSweep:
    sizes: tuple
    values: tuple
    verdict: str

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
            raise ValueError("sizes must be strictly increasing")
        if len(self.sizes) != len(self.values):
            raise ValueError("one value per size")

    @property
    def growth(self) -> float:
        first, last = self.values[0], self.values[-1]
        return float("inf") if first == 0 and last > 0 else (last / first if first else 1.0)

    def rows(self):
        return [(n, repr(float(v)), self.verdict) for n, v in zip(self.sizes, self.values)]

    def to_csv(self, path):
        return write_csv(path, ("size", "rho", "verdict"), self.rows())


def classify(values, zero_tol: float = 1e-10, bounded_ratio: float = 2.0, growth_ratio: float = 3.0) -> str:
    """Bounded if max/min <= 2 (or everything is below ``zero_tol``); growing if last >= 3 x first."""
    values = [float(v) for v in values]
    hi, lo = max(values), min(values)
    if hi <= zero_tol:
        return BOUNDED
    if lo > 0 and hi / lo <= bounded_ratio:
        return BOUNDED
    if values[-1] >= growth_ratio * values[0]:
        return GROWING
    return INCONCLUSIVE


def refinement_sweep(builder, sizes, zero_tol: float = 1e-10) -> BoundSweep:
    """Evaluate ``relative_bound(*builder(n))`` for each ``n`` in ``sizes``.

    Exceptions raised by ``builder`` propagate unchanged.
    """
    sizes = tuple(int(n) for n in sizes)
    if len(sizes) < 3:
        raise ValueError("a refinement sweep needs at least three sizes")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be strictly increasing")
    values = []
    for n in sizes:
        a, b = builder(n)
        values.append(relative_bound(a, b))
    return BoundSweep(sizes, tuple(values), classify(values, zero_tol))

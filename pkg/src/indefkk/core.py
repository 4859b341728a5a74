"""Graded operators on finite-dimensional inner-product spaces.

Everything here works on dense ``numpy`` arrays and on ``scipy.sparse``
matrices alike; the larger lattice and Fock models are assembled sparse.
The inner product is conjugate-linear in the first slot.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

EVEN = "even"
ODD = "odd"
NONE = "none"
PARITIES = (EVEN, ODD, NONE)

#: default gate for statements that are exact algebra
EXACT_TOL = 1e-12

# dense 2-norm below this size, Lanczos above
_DENSE_NORM_LIMIT = 2048


class HermiticityError(ValueError):
    """An operator that must be Hermitian is not (to tolerance)."""


class SpaceMismatchError(ValueError):
    """Two operators live on different graded spaces."""


def is_sparse(x) -> bool:
    return sp.issparse(x)


def fro(x) -> float:
    """Frobenius norm of a dense or sparse matrix (or a vector)."""
    if sp.issparse(x):
        return float(spla.norm(x)) if x.nnz else 0.0
    return float(np.linalg.norm(x))


def todense(x) -> np.ndarray:
    if sp.issparse(x):
        return x.toarray()
    return np.asarray(x)


def _dagger(x):
    if sp.issparse(x):
        return x.conj().T.tocsr()
    return np.asarray(x).conj().T


def _prune(x):
    if sp.issparse(x):
        x = x.tocsr()
        x.eliminate_zeros()
    return x


def residual(x, y) -> float:
    """Frobenius distance between ``x`` and ``y``, scaled by ``max(1, |x|, |y|)``."""
    if sp.issparse(x) != sp.issparse(y):
        x, y = sp.csr_matrix(x), sp.csr_matrix(y)
    scale = max(1.0, fro(x), fro(y))
    return fro(x - y) / scale


@dataclass(frozen=True, eq=False)
class GradedSpace:
    """A finite-dimensional Hilbert space together with its grading involution."""

    grading: object

    def __post_init__(self):
        g = self.grading
        if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] < 1:
            raise ValueError(f"grading must be a non-empty square matrix, got shape {g.shape}")
        eye = sp.identity(g.shape[0], format="csr") if sp.issparse(g) else np.eye(g.shape[0])
        if fro(g - _dagger(g)) > EXACT_TOL or fro(g @ g - eye) > EXACT_TOL * max(1.0, g.shape[0]):
            raise ValueError("grading must be a self-adjoint involution")

    @property
    def dim(self) -> int:
        return self.grading.shape[0]

    @classmethod
    def trivial(cls, dim: int) -> "GradedSpace":
        return _trivial_space(int(dim))

    @classmethod
    def from_signs(cls, signs) -> "GradedSpace":
        signs = np.asarray(signs, dtype=float)
        if not np.all(np.abs(signs) == 1):
            raise ValueError("grading signs must be +1 or -1")
        return cls(sp.diags(signs.astype(complex), format="csr"))

    @property
    def is_trivial(self) -> bool:
        return fro(self.grading - sp.identity(self.dim, format="csr")) == 0.0

    def doubled(self) -> "GradedSpace":
        """The space E + E graded by diag(g, -g)."""
        g = sp.csr_matrix(self.grading)
        return GradedSpace(sp.block_diag([g, -g], format="csr"))

    def tensor_left(self, grading) -> "GradedSpace":
        """Grading ``kron(grading, g)``: a new factor placed as the outer index."""
        return GradedSpace(sp.kron(sp.csr_matrix(grading), sp.csr_matrix(self.grading), format="csr"))

    def same_as(self, other: "GradedSpace") -> bool:
        if self is other:
            return True
        if self.dim != other.dim:
            return False
        return fro(sp.csr_matrix(self.grading) - sp.csr_matrix(other.grading)) == 0.0


@functools.lru_cache(maxsize=64)
def _trivial_space(dim: int) -> GradedSpace:
    # shared instance so that same_as short-circuits on identity
    return GradedSpace(sp.identity(dim, dtype=complex, format="csr"))


@dataclass(frozen=True, eq=False)
class GradedOperator:
    """A square matrix on a :class:`GradedSpace` with a parity label.

    Parity is metadata: it is not enforced at construction because products
    and sums of mixed parity are routine. Use :meth:`parity_residual` to
    validate it.
    """

    matrix: object
    space: GradedSpace
    parity: str = NONE

    def __post_init__(self):
        if self.parity not in PARITIES:
            raise ValueError(f"unknown parity {self.parity!r}")
        shape = self.matrix.shape
        if shape != (self.space.dim, self.space.dim):
            raise ValueError(f"matrix shape {shape} does not match space dimension {self.space.dim}")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.matrix)

    def dense(self) -> np.ndarray:
        return todense(self.matrix)

    def with_matrix(self, matrix, parity: str | None = None) -> "GradedOperator":
        return GradedOperator(matrix, self.space, self.parity if parity is None else parity)

    def parity_residual(self) -> float:
        """Frobenius norm of ``XG - GX`` (even) or ``XG + GX`` (odd); 0 for parity ``none``."""
        if self.parity == NONE:
            return 0.0
        x, g = self.matrix, self.space.grading
        if sp.issparse(x) or sp.issparse(g):
            x, g = sp.csr_matrix(x), sp.csr_matrix(g)
        sign = -1.0 if self.parity == EVEN else 1.0
        return fro(x @ g + sign * (g @ x))

    def check_parity(self, tol: float = EXACT_TOL) -> bool:
        return self.parity_residual() <= tol * max(1.0, fro(self.matrix))

    # arithmetic ---------------------------------------------------------

    def _other(self, other) -> "GradedOperator":
        if not isinstance(other, GradedOperator):
            return NotImplemented
        if not self.space.same_as(other.space):
            raise SpaceMismatchError("operators act on different spaces")
        return other

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        parity = self.parity if self.parity == other.parity else NONE
        return GradedOperator(_prune(self.matrix + other.matrix), self.space, parity)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        parity = self.parity if self.parity == other.parity else NONE
        return GradedOperator(_prune(self.matrix - other.matrix), self.space, parity)

    def __neg__(self):
        return self.with_matrix(-self.matrix)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return self.with_matrix(self.matrix * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return self.with_matrix(self.matrix / scalar)

    def __matmul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return GradedOperator(_prune(self.matrix @ other.matrix), self.space, product_parity(self.parity, other.parity))

    @property
    def H(self) -> "GradedOperator":
        return adjoint(self)


def product_parity(p: str, q: str) -> str:
    if NONE in (p, q):
        return NONE
    return EVEN if p == q else ODD


def _degree(parity: str) -> int | None:
    return {EVEN: 0, ODD: 1}.get(parity)


def as_operator(x, space: GradedSpace | None = None, parity: str = NONE) -> GradedOperator:
    """Wrap a bare matrix; ungraded space unless one is given."""
    if isinstance(x, GradedOperator):
        return x
    if not sp.issparse(x):
        x = np.asarray(x, dtype=complex)
    if space is None:
        space = GradedSpace.trivial(x.shape[0])
    return GradedOperator(x, space, parity)


def identity(space: GradedSpace) -> GradedOperator:
    return GradedOperator(sp.identity(space.dim, dtype=complex, format="csr"), space, EVEN)


def adjoint(X) -> GradedOperator:
    X = as_operator(X)
    return X.with_matrix(_dagger(X.matrix))


def real_part(D) -> GradedOperator:
    """(D + D*) / 2."""
    D = as_operator(D)
    return D.with_matrix(_prune(0.5 * (D.matrix + _dagger(D.matrix))))


def imag_part(D) -> GradedOperator:
    """-(i/2)(D - D*)."""
    D = as_operator(D)
    return D.with_matrix(_prune(-0.5j * (D.matrix - _dagger(D.matrix))))


def commutator(X, Y) -> GradedOperator:
    X, Y = as_operator(X), as_operator(Y)
    return X @ Y - Y @ X


def anticommutator(X, Y) -> GradedOperator:
    X, Y = as_operator(X), as_operator(Y)
    return X @ Y + Y @ X


def _graded_sign(X: GradedOperator, Y: GradedOperator) -> int:
    dx, dy = _degree(X.parity), _degree(Y.parity)
    if dx is None or dy is None:
        return 1
    return -1 if dx * dy else 1


def graded_commutator(X, Y) -> GradedOperator:
    """XY - (-1)^{|X||Y|} YX; the plain commutator if either parity is ``none``."""
    X, Y = as_operator(X), as_operator(Y)
    if _graded_sign(X, Y) < 0:
        return anticommutator(X, Y)
    return commutator(X, Y)


def graded_anticommutator(X, Y) -> GradedOperator:
    """XY + (-1)^{|X||Y|} YX; the plain anticommutator if either parity is ``none``."""
    X, Y = as_operator(X), as_operator(Y)
    if _graded_sign(X, Y) < 0:
        return commutator(X, Y)
    return anticommutator(X, Y)


def graph_inner(S, T, phi, psi) -> complex:
    """(phi|psi) + (S phi|S psi) + (T phi|T psi)."""
    S, T = as_operator(S), as_operator(T)
    if not S.space.same_as(T.space):
        raise SpaceMismatchError("S and T act on different spaces")
    phi, psi = np.asarray(phi), np.asarray(psi)
    if phi.shape != (S.dim,) or psi.shape != (S.dim,):
        raise ValueError(f"vectors must have shape ({S.dim},), got {phi.shape} and {psi.shape}")
    out = np.vdot(phi, psi)
    for X in (S, T):
        out += np.vdot(X.matrix @ phi, X.matrix @ psi)
    return complex(out)


def graph_gram(S, T, basis) -> np.ndarray:
    """Gram matrix of the graph inner product on the columns of ``basis``."""
    S, T = as_operator(S), as_operator(T)
    basis = np.asarray(basis)
    gram = basis.conj().T @ basis
    for X in (S, T):
        xb = X.matrix @ basis
        gram = gram + np.asarray(xb).conj().T @ xb
    return gram


def operator_norm(X) -> float:
    """Largest singular value."""
    m = as_operator(X).matrix
    if m.shape[0] == 0:
        return 0.0
    if sp.issparse(m):
        if m.nnz == 0:
            return 0.0
        if m.shape[0] <= _DENSE_NORM_LIMIT:
            return float(np.linalg.norm(m.toarray(), 2))
        return spectral_norm_iterative(m)
    return float(np.linalg.norm(m, 2))


def spectral_norm_iterative(m, tol: float = 1e-10) -> float:
    # fixed start vector keeps results reproducible
    v0 = np.ones(m.shape[1]) / np.sqrt(m.shape[1]) + 1e-3 * np.cos(np.arange(m.shape[1]))
    v0 = v0.astype(np.result_type(m.dtype, np.float64))
    s = spla.svds(m, k=1, which="LM", return_singular_vectors=False, tol=tol, v0=v0)
    return float(s[0])


def hermitian_residual(X) -> float:
    """Frobenius norm of X - X*."""
    m = as_operator(X).matrix
    return fro(m - _dagger(m))


def is_hermitian(X, tol: float = EXACT_TOL) -> bool:
    X = as_operator(X)
    return hermitian_residual(X) <= tol * max(1.0, fro(X.matrix))


def require_hermitian(X, name: str = "operator", tol: float = EXACT_TOL) -> GradedOperator:
    X = as_operator(X)
    res = hermitian_residual(X)
    if res > tol * max(1.0, fro(X.matrix)):
        raise HermiticityError(f"{name} is not Hermitian (residual {res:.3e})")
    return X


def block2(a, b, c, d):
    """The 2x2 block matrix [[a, b], [c, d]]; ``None`` entries are zero blocks."""
    blocks = [[a, b], [c, d]]
    if any(sp.issparse(x) for row in blocks for x in row if x is not None):
        return sp.bmat(blocks, format="csr")
    n = next(np.asarray(x).shape[0] for row in blocks for x in row if x is not None)
    z = np.zeros((n, n), dtype=complex)
    return np.block([[z if x is None else x for x in row] for row in blocks])

"""Truncated Fock-space model of the harmonic oscillator with fermionic partners.

Tensor ordering: the fermionic factor (dimension ``2**d``) is the outer
Kronecker index, the bosonic factor (dimension ``N**d``) the inner one, so
for ``d = 1`` the operators take the familiar 2x2 block form
``D1 = [[0, a*], [a, 0]]``. Fermion occupation ``1`` is basis index ``1``.

Normalisation: ``a|n> = sqrt(2 omega n)|n-1>`` so that ``[a, a*] = 2 omega``
away from the cutoff, and ``x = (a + a*)/(2 omega)``, ``d/dx = (a - a*)/2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np
import scipy.sparse as sp

from .core import ODD, GradedOperator, GradedSpace, fro, residual
from .kl import relative_bound
from .rotations import double_odd_to_even, reverse_wick, wick_rotate


def _kron_all(factors):
    return reduce(lambda x, y: sp.kron(x, y, format="csr"), factors, sp.identity(1, format="csr"))


def ladder(N: int, omega: float) -> sp.csr_matrix:
    """Single-mode annihilation operator truncated to occupations ``0..N-1``."""
    n = np.arange(1, N)
    return sp.diags(np.sqrt(2.0 * omega * n).astype(complex), 1, shape=(N, N), format="csr")


_B = sp.csr_matrix(np.array([[0, 1], [0, 0]], dtype=complex))
_Z = sp.csr_matrix(np.diag([1.0, -1.0]).astype(complex))
_I2 = sp.identity(2, dtype=complex, format="csr")


@dataclass(frozen=True, eq=False)
class FockModel:
    d: int
    N: int
    omega: float
    margin: int
    a: tuple
    b: tuple
    grading: sp.csr_matrix

    @property
    def boson_dim(self) -> int:
        return self.N ** self.d

    @property
    def fermion_dim(self) -> int:
        return 2 ** self.d

    @property
    def dim(self) -> int:
        return self.boson_dim * self.fermion_dim

    @property
    def space(self) -> GradedSpace:
        return GradedSpace(self.grading)

    def lift_boson(self, x) -> sp.csr_matrix:
        return sp.kron(sp.identity(self.fermion_dim, format="csr"), x, format="csr")

    def lift_fermion(self, y) -> sp.csr_matrix:
        return sp.kron(y, sp.identity(self.boson_dim, format="csr"), format="csr")

    def boson_occupations(self) -> np.ndarray:
        """Array of shape ``(N**d, d)``: the occupation of each mode per basis index."""
        grids = np.indices((self.N,) * self.d).reshape(self.d, -1).T
        return grids

    def fermion_occupations(self) -> np.ndarray:
        return np.indices((2,) * self.d).reshape(self.d, -1).T

    def total_occupations(self) -> tuple[np.ndarray, np.ndarray]:
        """|n| and |s| for every basis vector of the full space."""
        nb = self.boson_occupations().sum(axis=1)
        nf = self.fermion_occupations().sum(axis=1)
        return np.tile(nb, self.fermion_dim), np.repeat(nf, self.boson_dim)

    def position(self, mu: int) -> sp.csr_matrix:
        a = self.a[mu]
        return (a + a.conj().T) / (2.0 * self.omega)

    def derivative(self, mu: int) -> sp.csr_matrix:
        a = self.a[mu]
        return (a - a.conj().T) / 2.0

    def hamiltonian(self) -> sp.csr_matrix:
        """H = sum a*a + d omega on the bosonic factor, lifted to the full space."""
        h = sum(a.conj().T @ a for a in self.a) + self.d * self.omega * sp.identity(self.boson_dim, format="csr")
        return self.lift_boson(h)

    def sigma(self) -> sp.csr_matrix:
        """sum [b*, b] on the fermionic factor, lifted."""
        s = sum(b.conj().T @ b - b @ b.conj().T for b in self.b)
        return self.lift_fermion(s)


def build_fock_model(d: int, N: int, omega: float = 1.0, margin: int = 2) -> FockModel:
    d, N, margin = int(d), int(N), int(margin)
    if d < 1:
        raise ValueError("d must be >= 1")
    if N < 4:
        raise ValueError("N must be >= 4")
    if margin < 1:
        raise ValueError("margin must be >= 1")
    if margin >= N:
        raise ValueError("margin must be smaller than N")
    if not omega > 0:
        raise ValueError("omega must be positive")
    eye_n = sp.identity(N, dtype=complex, format="csr")
    a1 = ladder(N, omega)
    a = tuple(_kron_all([eye_n] * mu + [a1] + [eye_n] * (d - mu - 1)) for mu in range(d))
    b = tuple(_kron_all([_Z] * mu + [_B] + [_I2] * (d - mu - 1)) for mu in range(d))
    grading = sp.kron(_kron_all([_Z] * d), sp.identity(N ** d, format="csr"), format="csr")
    return FockModel(d, N, float(omega), margin, a, b, grading)


@dataclass(frozen=True, eq=False)
class InteriorProjector:
    """Projector onto basis states with every mode occupation below ``N - margin``."""

    matrix: sp.csr_matrix
    indices: np.ndarray

    @property
    def rank(self) -> int:
        return int(self.indices.size)

    def compress(self, x):
        """The block of ``x`` on the range of the projector."""
        x = sp.csr_matrix(x)
        return x[self.indices][:, self.indices]


def interior_projector(model: FockModel) -> InteriorProjector:
    if model.margin >= model.N:
        raise ValueError("margin must be smaller than N")
    inside = np.all(model.boson_occupations() < model.N - model.margin, axis=1)
    mask = np.tile(inside, model.fermion_dim)
    p = sp.diags(mask.astype(complex), format="csr")
    return InteriorProjector(p, np.flatnonzero(mask))


def build_D1_D2(model: FockModel) -> tuple[GradedOperator, GradedOperator]:
    """D1 = sum(a (x) b* + a* (x) b) and D2 = sum(a (x) b + a* (x) b*), fermion factor outer."""
    d1 = sum(sp.kron(b.conj().T, a, format="csr") + sp.kron(b, a.conj().T, format="csr") for a, b in zip(model.a, model.b))
    d2 = sum(sp.kron(b, a, format="csr") + sp.kron(b.conj().T, a.conj().T, format="csr") for a, b in zip(model.a, model.b))
    space = model.space
    return GradedOperator(d1.tocsr(), space, ODD), GradedOperator(d2.tocsr(), space, ODD)


def oscillator_indefinite(model: FockModel) -> GradedOperator:
    """D = (D1 + D2)/2 + (i/2)(D1 - D2)."""
    return reverse_wick(*build_D1_D2(model))


def remark_operator(model: FockModel) -> sp.csr_matrix:
    """sum (i a (x) b - i a* (x) b*), whose square agrees with D2^2 on the interior."""
    return sum(
        1j * sp.kron(b, a, format="csr") - 1j * sp.kron(b.conj().T, a.conj().T, format="csr")
        for a, b in zip(model.a, model.b)
    ).tocsr()


def square_identities(model: FockModel) -> dict[str, float]:
    """Residuals of the squares of D1, D2 (and related identities) on the interior."""
    p = interior_projector(model)
    D1, D2 = build_D1_D2(model)
    d1, d2 = D1.matrix, D2.matrix
    h, sig = model.hamiltonian(), model.sigma()
    w = model.omega
    r = remark_operator(model)
    c = p.compress
    return {
        "D1_squared": residual(c(d1 @ d1), c(h + w * sig)),
        "D2_squared": residual(c(d2 @ d2), c(h - w * sig)),
        "difference": residual(c(d1 @ d1 - d2 @ d2), c(2 * w * sig)),
        "anticommutator": residual(c((d1 + d2) @ (d1 - d2) + (d1 - d2) @ (d1 + d2)), c(4 * w * sig)),
        "remark_square": residual(c(r @ r), c(d2 @ d2)),
    }


def assembly_identities(model: FockModel) -> dict[str, float]:
    """D1 +- D2 in terms of x, d/dx; Hermiticity and oddness of D1, D2. Exact on the full truncation."""
    D1, D2 = build_D1_D2(model)
    d1, d2 = D1.matrix, D2.matrix
    plus = sum(sp.kron(b + b.conj().T, 2 * model.omega * model.position(mu), format="csr") for mu, b in enumerate(model.b))
    minus = sum(sp.kron(b - b.conj().T, -2 * model.derivative(mu), format="csr") for mu, b in enumerate(model.b))
    return {
        "sum": residual(d1 + d2, plus),
        "difference": residual(d1 - d2, minus),
        "D1_hermitian": fro(d1 - d1.conj().T),
        "D2_hermitian": fro(d2 - d2.conj().T),
        "D1_odd": D1.parity_residual(),
        "D2_odd": D2.parity_residual(),
    }


def recovery_identities(model: FockModel) -> dict[str, float]:
    """(DD* + D*D)/2 = H and -(i/2)(D^2 - D*^2) = omega Sigma on the interior; Wick round trip."""
    p = interior_projector(model)
    D1, D2 = build_D1_D2(model)
    D = oscillator_indefinite(model)
    dm = D.matrix
    dh = dm.conj().T.tocsr()
    c = p.compress
    pair = wick_rotate(D)
    return {
        "real_square": residual(c(0.5 * (dm @ dh + dh @ dm)), c(model.hamiltonian())),
        "imag_square": residual(c(-0.5j * (dm @ dm - dh @ dh)), c(model.omega * model.sigma())),
        "wick_D1": residual(pair.d_plus.matrix, D1.matrix),
        "wick_D2": residual(pair.d_minus.matrix, D2.matrix),
    }


def odd_reduction(model: FockModel) -> dict[str, float]:
    """For d = 1: doubling the ungraded operator a reproduces D1, D2 and D."""
    if model.d != 1:
        raise ValueError("the odd reduction is stated for a single mode")
    a = model.a[0]
    bare = GradedOperator(a, GradedSpace.trivial(model.N))
    d_t, d_tp, d_tm = double_odd_to_even(bare)
    D1, D2 = build_D1_D2(model)
    D = oscillator_indefinite(model)
    return {
        "block_is_a": residual(d_tm.block(0, 1), a),
        "plus_is_D1": residual(d_tp.matrix, D1.matrix),
        "minus_is_D2": residual(d_tm.matrix, D2.matrix),
        "doubled_is_D": residual(d_t.matrix, D.matrix),
    }


def sector_labels(model: FockModel, which: str = "D1") -> np.ndarray:
    """Conserved quantity: |n| + |s| for D1, |n| - |s| for D2."""
    nb, nf = model.total_occupations()
    if which == "D1":
        return nb + nf
    if which == "D2":
        return nb - nf
    raise ValueError("which must be 'D1' or 'D2'")


def sector_spectrum(model: FockModel, which: str = "D1", sectors=None) -> list[tuple[int, np.ndarray]]:
    """Eigenvalues of the truncated D1 or D2, one dense eigensolve per conserved sector."""
    D1, D2 = build_D1_D2(model)
    m = (D1 if which == "D1" else D2).matrix
    labels = sector_labels(model, which)
    keys = np.unique(labels) if sectors is None else sectors
    out = []
    for k in keys:
        idx = np.flatnonzero(labels == k)
        if idx.size == 0:
            continue
        block = m[idx][:, idx].toarray()
        out.append((int(k), np.linalg.eigvalsh(block)))
    return out


def ladder_residual(model: FockModel) -> dict[str, float]:
    """Compare eigenvalues against the analytic ladder.

    ``D1_sectors``: in every D1 sector ``k <= N - 1`` the truncation is exact,
    so each eigenvalue is ``+-sqrt(2 omega k)`` (0 for ``k = 0``).
    ``D1_squared``: eigenvalues of the compressed ``D1^2`` are ``2 omega (|n| + |s|)``.
    ``D2_squared``: same for ``D2^2`` with ``2 omega (|n| + d - |s|)``.
    """
    w = model.omega
    worst = 0.0
    for k, ev in sector_spectrum(model, "D1", sectors=range(model.N)):
        target = np.sqrt(2 * w * k)
        worst = max(worst, float(np.max(np.abs(np.abs(ev) - target))))
        # spectrum symmetric about 0 within the sector
        worst = max(worst, float(np.max(np.abs(np.sort(ev) + np.sort(ev)[::-1]))))
    p = interior_projector(model)
    D1, D2 = build_D1_D2(model)
    nb, nf = model.total_occupations()
    nb, nf = nb[p.indices], nf[p.indices]
    out = {"D1_sectors": worst}
    for name, m, expected in (
        ("D1_squared", D1.matrix, 2 * w * (nb + nf)),
        ("D2_squared", D2.matrix, 2 * w * (nb + model.d - nf)),
    ):
        sq = p.compress(m @ m)
        labels = (nb + nf) if name == "D1_squared" else (nb - nf)
        err = 0.0
        for k in np.unique(labels):
            idx = np.flatnonzero(labels == k)
            ev = np.linalg.eigvalsh(sq[idx][:, idx].toarray())
            err = max(err, float(np.max(np.abs(ev - np.sort(expected[idx])))))
        out[name] = err
    return out


def spectrum_rows(model: FockModel, which: str = "D1") -> list[tuple[int, str, int]]:
    """CSV rows ``(index, eigenvalue, sector)`` sorted by sector then eigenvalue."""
    rows = []
    for k, ev in sector_spectrum(model, which):
        for e in ev:
            rows.append((k, float(e)))
    return [(i, repr(e), k) for i, (k, e) in enumerate(rows)]


def bounded_anticommutator(model: FockModel) -> tuple[float, float]:
    """rho(D1^2 - D2^2; D1) on the interior and the bound ``2 omega d``.

    ``{D1 + D2, D1 - D2} = 2 (D1^2 - D2^2)``, so the anticommutator itself is
    bounded by twice this.
    """
    p = interior_projector(model)
    D1, D2 = build_D1_D2(model)
    d1, d2 = D1.matrix, D2.matrix
    a = p.compress(d1 @ d1 - d2 @ d2)
    b = p.compress(d1)
    return relative_bound(a, b), 2 * model.omega * model.d


def fermion_identities(model: FockModel) -> dict[str, float]:
    """CAR relations, grading involution and oddness of each b."""
    eye = sp.identity(model.fermion_dim, format="csr")
    car = anti = odd = 0.0
    g = _kron_all([_Z] * model.d)
    for i, bi in enumerate(model.b):
        odd = max(odd, fro(g @ bi + bi @ g))
        for j, bj in enumerate(model.b):
            target = eye if i == j else 0 * eye
            car = max(car, fro(bi @ bj.conj().T + bj.conj().T @ bi - target))
            anti = max(anti, fro(bi @ bj + bj @ bi))
    return {"car": car, "car_anti": anti, "grading_odd": odd, "grading_involution": fro(g @ g - eye)}

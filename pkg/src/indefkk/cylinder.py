"""Lattice model of the Lorentzian cylinder S^1 x (time circle).

Scalar lattice functions are stored with time as the slow index,
``psi[k * n_theta + j] = psi(t_k, theta_j)``; two-component spinors put the
spinor index outermost. ``P = -i d/dx`` is realised either spectrally (via
the DFT, Nyquist mode at ``-N/2``) or by the central difference stencil.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
import scipy.sparse as sp

from .clifford import build_clifford, wick_rotate_clifford
from .core import ODD, GradedOperator, GradedSpace, imag_part, operator_norm, real_part, residual, todense
from .rotations import double_odd_to_even, wick_rotate

SPECTRAL = "spectral"
CENTRAL = "central"
PERIODIC = "periodic"
ANTIPERIODIC = "antiperiodic"
STENCILS = (SPECTRAL, CENTRAL)
SPIN_STRUCTURES = (PERIODIC, ANTIPERIODIC)


class MetricError(ValueError):
    """The sampled spatial metric is not strictly positive."""


def _breathing(theta, t, L_theta, L_t):
    return (1 + 0.5 * np.sin(2 * np.pi * t / L_t)) ** 2 + 0 * theta


def _ripple(theta, t, L_theta, L_t):
    return (1 + 0.5 * np.sin(2 * np.pi * theta / L_theta)) ** 2 + 0 * t


def _wave(theta, t, L_theta, L_t):
    return (1 + 0.25 * np.sin(2 * np.pi * theta / L_theta) + 0.25 * np.sin(2 * np.pi * t / L_t)) ** 2


METRICS = {
    "flat": lambda theta, t, L_theta, L_t: np.ones(np.broadcast(theta, t).shape),
    "const4": lambda theta, t, L_theta, L_t: 4.0 * np.ones(np.broadcast(theta, t).shape),
    "breathing": _breathing,
    "ripple": _ripple,
    "wave": _wave,
    # deliberately invalid, used to exercise error handling
    "indefinite": lambda theta, t, L_theta, L_t: np.cos(2 * np.pi * theta / L_theta) + 0 * t,
}

#: metrics whose samples do not depend on time
PARALLEL_TIME = ("flat", "const4", "ripple")


# -- one-dimensional derivative matrices ------------------------------------


def fourier_frequencies(N: int, L: float, antiperiodic: bool = False) -> np.ndarray:
    """Eigenvalues of the spectral ``-i d/dx`` in DFT order."""
    k = np.fft.fftfreq(N, d=1.0 / N)
    return (2 * np.pi / L) * (k + (0.5 if antiperiodic else 0.0))


def spectral_derivative(N: int, L: float, antiperiodic: bool = False) -> np.ndarray:
    """Dense Hermitian ``-i d/dx`` on N equispaced points of a circle of length L."""
    k = fourier_frequencies(N, L)
    p = np.fft.ifft(k[:, None] * np.fft.fft(np.eye(N), axis=0), axis=0)
    if antiperiodic:
        # twist by a half-period phase: psi = e^{i pi x / L} phi with phi periodic
        x = np.arange(N) * L / N
        u = np.exp(1j * np.pi * x / L)
        p = (u[:, None] * (p + (np.pi / L) * np.eye(N))) * u.conj()[None, :]
    return 0.5 * (p + p.conj().T)


def central_derivative(N: int, L: float, antiperiodic: bool = False) -> sp.csr_matrix:
    """Sparse Hermitian ``-i (psi_{j+1} - psi_{j-1}) / 2h`` with (anti)periodic wrap."""
    h = L / N
    wrap = -1.0 if antiperiodic else 1.0
    shift = sp.lil_matrix((N, N), dtype=complex)
    for j in range(N):
        shift[j, (j + 1) % N] = wrap if j == N - 1 else 1.0
    shift = shift.tocsr()
    return (-1j * (shift - shift.T) / (2 * h)).tocsr()


def derivative(N: int, L: float, stencil: str = SPECTRAL, antiperiodic: bool = False):
    if stencil == SPECTRAL:
        return spectral_derivative(N, L, antiperiodic)
    if stencil == CENTRAL:
        return central_derivative(N, L, antiperiodic)
    raise ValueError(f"unknown stencil {stencil!r}")


def central_eigenvalues(N: int, L: float, antiperiodic: bool = False) -> np.ndarray:
    h = L / N
    return np.sin(fourier_frequencies(N, L, antiperiodic) * h) / h


# -- the model ---------------------------------------------------------------


@dataclass(frozen=True)
class CylinderModel:
    n_theta: int = 32
    n_t: int = 32
    L_theta: float = 2 * np.pi
    L_t: float = 2 * np.pi
    metric: str = "flat"
    spin_structure: str = PERIODIC
    theta_stencil: str = SPECTRAL
    time_stencil: str = SPECTRAL
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.n_theta < 2 or self.n_t < 2:
            raise ValueError("lattice sizes must be at least 2")
        if not (self.L_theta > 0 and self.L_t > 0):
            raise ValueError("periods must be positive")
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}; known: {', '.join(sorted(METRICS))}")
        if self.spin_structure not in SPIN_STRUCTURES:
            raise ValueError(f"spin structure must be one of {SPIN_STRUCTURES}")
        if self.theta_stencil not in STENCILS or self.time_stencil not in STENCILS:
            raise ValueError(f"stencils must be one of {STENCILS}")

    def with_sizes(self, n_theta: int | None = None, n_t: int | None = None) -> "CylinderModel":
        return replace(self, n_theta=n_theta or self.n_theta, n_t=n_t or self.n_t, _cache={})

    @property
    def scalar_dim(self) -> int:
        return self.n_theta * self.n_t

    @property
    def antiperiodic(self) -> bool:
        return self.spin_structure == ANTIPERIODIC

    def theta(self) -> np.ndarray:
        return np.arange(self.n_theta) * self.L_theta / self.n_theta

    def times(self) -> np.ndarray:
        return np.arange(self.n_t) * self.L_t / self.n_t

    def metric_samples(self) -> np.ndarray:
        """g_{t_k}(theta_j) as an array of shape ``(n_t, n_theta)``."""
        if "g" not in self._cache:
            g = METRICS[self.metric](self.theta()[None, :], self.times()[:, None], self.L_theta, self.L_t)
            g = np.broadcast_to(np.asarray(g, dtype=float), (self.n_t, self.n_theta)).copy()
            if not np.all(np.isfinite(g)) or np.min(g) <= 0:
                raise MetricError(f"metric {self.metric!r} is not strictly positive (min sample {np.min(g):.3g})")
            self._cache["g"] = g
        return self._cache["g"]

    @property
    def is_parallel_time(self) -> bool:
        g = self.metric_samples()
        return bool(np.all(g == g[0]))


def build_circle_dirac(g, L_theta: float = 2 * np.pi, spin_structure: str = PERIODIC, stencil: str = SPECTRAL):
    """D = (f P + P f)/2 with f = g^{-1/2}: the Hermitian ordering of ``-i f d/dtheta``."""
    g = np.asarray(g, dtype=float)
    if g.ndim != 1 or g.size < 2:
        raise ValueError("metric slice must be a 1-d array with at least two samples")
    if not np.all(np.isfinite(g)) or np.min(g) <= 0:
        raise MetricError("metric samples must be strictly positive")
    if spin_structure not in SPIN_STRUCTURES:
        raise ValueError(f"spin structure must be one of {SPIN_STRUCTURES}")
    p = derivative(g.size, L_theta, stencil, spin_structure == ANTIPERIODIC)
    f = g ** -0.5
    if sp.issparse(p):
        fm = sp.diags(f)
        return (0.5 * (fm @ p + p @ fm)).tocsr()
    return 0.5 * (f[:, None] * p + p * f[None, :])


def build_family_operator(model: CylinderModel) -> GradedOperator:
    """Block-diagonal over time slices: ``D(t_k)`` on slice ``k``."""
    g = model.metric_samples()
    if model.is_parallel_time:
        block = sp.csr_matrix(build_circle_dirac(g[0], model.L_theta, model.spin_structure, model.theta_stencil))
        m = sp.kron(sp.identity(model.n_t, format="csr"), block, format="csr")
    else:
        blocks = [
            sp.csr_matrix(build_circle_dirac(row, model.L_theta, model.spin_structure, model.theta_stencil))
            for row in g
        ]
        m = sp.block_diag(blocks, format="csr")
    return GradedOperator(m, GradedSpace.trivial(model.scalar_dim))


def build_time_operator(model: CylinderModel) -> GradedOperator:
    """D2 = -i d/dt acting on the slow index."""
    p = sp.csr_matrix(derivative(model.n_t, model.L_t, model.time_stencil))
    m = sp.kron(p, sp.identity(model.n_theta, format="csr"), format="csr")
    return GradedOperator(m, GradedSpace.trivial(model.scalar_dim))


def build_product_operator(model: CylinderModel) -> GradedOperator:
    """[[0, D1 - i D2], [D1 + i D2, 0]], odd for diag(1, -1)."""
    _, d_tp, _ = double_odd_to_even(build_indefinite_sum(model))
    return GradedOperator(d_tp.matrix, d_tp.space, ODD)


def build_indefinite_sum(model: CylinderModel) -> GradedOperator:
    """D = D1(.) + i D2 on scalar lattice functions."""
    fam, d2 = build_family_operator(model), build_time_operator(model)
    return GradedOperator(fam.matrix + 1j * d2.matrix, fam.space)


def _spinor_space(model: CylinderModel, grading) -> GradedSpace:
    return GradedSpace(sp.kron(sp.csr_matrix(grading), sp.identity(model.scalar_dim, format="csr"), format="csr"))


def _covariant_derivatives(model: CylinderModel):
    """(nabla_t, nabla_theta) as anti-Hermitian scalar operators: ``i D2`` and ``i D(t)``."""
    return 1j * build_time_operator(model).matrix, 1j * build_family_operator(model).matrix


def build_lorentzian_dirac(model: CylinderModel) -> GradedOperator:
    """sum_j kappa(j) gamma(e_j) nabla_j = -gamma0 (x) nabla_t + gamma1 (x) nabla_theta."""
    rep = build_clifford(1, 1)
    nt, nth = _covariant_derivatives(model)
    g0, g1 = (sp.csr_matrix(g) for g in rep.generators)
    m = sp.kron(-g0, nt, format="csr") + sp.kron(g1, nth, format="csr")
    return GradedOperator(m, _spinor_space(model, rep.grading), ODD)


def build_riemannian_dirac(model: CylinderModel, sign: int) -> GradedOperator:
    """sum_j gamma_pm(e_j) nabla_j with the Wick-rotated generators, graded by Gamma^pm."""
    rot = wick_rotate_clifford(build_clifford(1, 1), sign)
    nt, nth = _covariant_derivatives(model)
    g0, g1 = (sp.csr_matrix(g) for g in rot.generators)
    m = sp.kron(g0, nt, format="csr") + sp.kron(g1, nth, format="csr")
    return GradedOperator(m, _spinor_space(model, rot.grading), ODD)


# -- spectra -----------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: np.ndarray
    oracle: np.ndarray
    max_deviation: float

    def rows(self):
        return [(i, repr(float(e)), repr(float(o))) for i, (e, o) in enumerate(zip(self.eigenvalues, self.oracle))]


def _eigenvalues(x) -> np.ndarray:
    if isinstance(x, GradedOperator):
        x = x.matrix
    x = todense(x) if sp.issparse(x) else np.asarray(x)
    if x.ndim == 1:
        return np.sort(x.real)
    return np.linalg.eigvalsh(x)


def compare_spectra(computed, oracle) -> SpectrumReport:
    """Sort both spectra ascending and pair them by index."""
    a, b = _eigenvalues(computed), _eigenvalues(oracle)
    if a.shape != b.shape:
        raise ValueError(f"spectrum sizes differ: {a.size} vs {b.size}")
    dev = float(np.max(np.abs(a - b))) if a.size else 0.0
    return SpectrumReport(a, b, dev)


def torus_product_oracle(model: CylinderModel) -> np.ndarray:
    """Spectrum of the product operator for a constant metric, from Fourier modes."""
    g = model.metric_samples()
    if not np.all(g == g.flat[0]):
        raise ValueError("the Fourier oracle needs a constant metric")
    if model.theta_stencil == SPECTRAL:
        kth = fourier_frequencies(model.n_theta, model.L_theta, model.antiperiodic)
    else:
        kth = central_eigenvalues(model.n_theta, model.L_theta, model.antiperiodic)
    kth = kth * g.flat[0] ** -0.5
    kt = (fourier_frequencies if model.time_stencil == SPECTRAL else central_eigenvalues)(model.n_t, model.L_t)
    r = np.sqrt(kth[None, :] ** 2 + kt[:, None] ** 2).ravel()
    return np.sort(np.concatenate([r, -r]))


def circle_oracle(n_theta: int, L_theta: float, g0: float = 1.0, spin_structure: str = PERIODIC) -> np.ndarray:
    return np.sort(fourier_frequencies(n_theta, L_theta, spin_structure == ANTIPERIODIC) * g0 ** -0.5)


# -- identities --------------------------------------------------------------


def _anticommutator(x, y):
    return x @ y + y @ x


def wick_diagram(model: CylinderModel) -> dict[str, float]:
    """wick_rotate(D) against the directly assembled gamma_pm Dirac operators and gradings."""
    dirac = build_lorentzian_dirac(model)
    pair = wick_rotate(dirac)
    plus, minus = build_riemannian_dirac(model, 1), build_riemannian_dirac(model, -1)
    gamma = dirac.space.grading
    return {
        "plus": residual(pair.d_plus.matrix, plus.matrix),
        "minus": residual(pair.d_minus.matrix, minus.matrix),
        "grading_plus": residual(plus.space.grading, -gamma),
        "grading_minus": residual(minus.space.grading, gamma),
    }


def real_imag_split(model: CylinderModel) -> dict[str, float]:
    """Re and Im of the Lorentzian operator against the analytic spacelike / timelike terms."""
    dirac = build_lorentzian_dirac(model)
    rep = build_clifford(1, 1)
    g0, g1 = (sp.csr_matrix(g) for g in rep.generators)
    fam, d2 = build_family_operator(model).matrix, build_time_operator(model).matrix
    return {
        "real": residual(real_part(dirac).matrix, sp.kron(1j * g1, fam, format="csr")),
        "imag": residual(imag_part(dirac).matrix, sp.kron(-g0, d2, format="csr")),
    }


def re_im_anticommutator(model: CylinderModel):
    dirac = build_lorentzian_dirac(model)
    re, im = real_part(dirac).matrix, imag_part(dirac).matrix
    return _anticommutator(re, im).tocsr(), re


def product_identities(model: CylinderModel) -> dict[str, float]:
    prod = build_product_operator(model)
    d = build_indefinite_sum(model)
    fam, d2 = build_family_operator(model), build_time_operator(model)
    m = prod.matrix
    sq = (m @ m).tocsr()
    n = model.scalar_dim
    off = sp.vstack([sq[:n, n:], sq[n:, :n]]).tocsr()
    direct = sp.bmat([[None, fam.matrix - 1j * d2.matrix], [fam.matrix + 1j * d2.matrix, None]], format="csr")
    return {
        "block_form": residual(m, direct),
        "real_part": residual(real_part(d).matrix, fam.matrix),
        "imag_part": residual(imag_part(d).matrix, d2.matrix),
        "square_off_diagonal": float(abs(off).max()) if off.nnz else 0.0,
        "hermitian": residual(m, m.conj().T),
        "odd": prod.parity_residual(),
    }


def family_residuals(model: CylinderModel) -> dict[str, float]:
    """Per-slice Hermiticity and agreement with independent per-slice builds."""
    fam = build_family_operator(model).matrix.tocsr()
    g = model.metric_samples()
    n = model.n_theta
    herm = 0.0
    match = 0.0
    for k, row in enumerate(g):
        block = fam[k * n:(k + 1) * n, k * n:(k + 1) * n].toarray()
        ref = todense(build_circle_dirac(row, model.L_theta, model.spin_structure, model.theta_stencil))
        herm = max(herm, float(np.abs(block - block.conj().T).max()))
        match = max(match, float(np.abs(block - ref).max()))
    total = fam.nnz - sum(fam[k * n:(k + 1) * n, k * n:(k + 1) * n].nnz for k in range(model.n_t))
    return {"hermitian": herm, "per_slice": match, "off_block_nnz": float(total)}


def slice_variation(model: CylinderModel) -> float:
    """max_k |D(t_{k+1}) - D(t_k)| / dt over the periodic time lattice."""
    g = model.metric_samples()
    dt = model.L_t / model.n_t
    blocks = [todense(build_circle_dirac(row, model.L_theta, model.spin_structure, model.theta_stencil)) for row in g]
    return max(float(np.linalg.norm(blocks[(k + 1) % len(blocks)] - b, 2)) / dt for k, b in enumerate(blocks))


def locality_ratio(model: CylinderModel, phi=None) -> float:
    """|[D, M_phi]| / max|grad phi| for a smooth lattice-sampled function phi."""
    if phi is None:
        def phi(theta, t):
            return np.sin(2 * np.pi * theta / model.L_theta) + 0.5 * np.cos(2 * np.pi * t / model.L_t)
    th, tt = np.meshgrid(model.theta(), model.times())
    vals = phi(th, tt).ravel()
    m = sp.kron(sp.identity(2, format="csr"), sp.diags(vals.astype(complex)), format="csr")
    d = build_lorentzian_dirac(model).matrix
    comm = (d @ m - m @ d).tocsr()
    # max |grad phi| estimated on a fine grid
    fine = 4096
    x = np.linspace(0, model.L_theta, fine, endpoint=False)
    y = np.linspace(0, model.L_t, fine // 8, endpoint=False)
    gx, gy = np.meshgrid(x, y)
    f = phi(gx, gy)
    dth = np.gradient(f, x, axis=1)
    dtt = np.gradient(f, y, axis=0)
    gmax = float(np.max(np.hypot(dth, dtt)))
    return operator_norm(comm) / gmax


def counter_model(n_t: int, n_theta: int = 16, L: float = 2 * np.pi):
    """(A, B) = ({S, T}, S) with S = -i d/dtheta and T = c(theta)(-i d/dt), c = 2 + sin(theta).

    The time derivative uses the central stencil, so ``|{S,T}|`` grows like
    ``1/dt`` while S does not see the time direction at all.
    """
    theta = np.arange(n_theta) * L / n_theta
    s = sp.kron(sp.identity(n_t, format="csr"), sp.csr_matrix(spectral_derivative(n_theta, L)), format="csr")
    c = sp.kron(sp.identity(n_t, format="csr"), sp.diags((2 + np.sin(theta)).astype(complex)), format="csr")
    pt = sp.kron(central_derivative(n_t, L), sp.identity(n_theta, format="csr"), format="csr")
    t = 0.5 * (c @ pt + pt @ c)
    return _anticommutator(s, t).tocsr(), s


def time_dependent_pair(n_t: int, n_theta: int = 16, metric: str = "breathing"):
    """(A, B) = ({Re D, Im D}, Re D) on the cylinder with a time-dependent metric."""
    model = CylinderModel(n_theta=n_theta, n_t=n_t, metric=metric, time_stencil=CENTRAL)
    return re_im_anticommutator(model)


def parallel_time_pair(n_t: int, n_theta: int = 16, metric: str = "flat"):
    model = CylinderModel(n_theta=n_theta, n_t=n_t, metric=metric)
    return re_im_anticommutator(model)


def brute_force_relative_bound(A, B) -> float:
    """|A (|B| + 1)^{-1}| via a dense matrix square root; small sizes only."""
    from scipy.linalg import sqrtm, svdvals

    a, b = todense(A), todense(B)
    absb = sqrtm(b @ b)
    r = np.linalg.inv(absb + np.eye(b.shape[0]))
    return float(svdvals(a @ r)[0])

"""Complex Clifford representations for a metric of signature (t, s).

Convention: ``gamma(v) gamma(w) + gamma(w) gamma(v) = -2 g(v, w)`` where the
first ``t`` basis vectors are timelike (``g = -1``). Timelike generators are
therefore Hermitian with square +1, spacelike ones anti-Hermitian with
square -1. Basis indices are 0-based with the timelike directions first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import reduce
from pathlib import Path

import numpy as np

from .core import GradedOperator, GradedSpace, as_operator, todense

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def _kron_all(factors) -> np.ndarray:
    return reduce(np.kron, factors, np.eye(1, dtype=complex))


def hermitian_generators(n: int) -> list[np.ndarray]:
    """n pairwise anticommuting Hermitian involutions of size 2^(n//2) (Jordan-Wigner)."""
    m = n // 2
    out = []
    for j in range(m):
        for pauli in (_X, _Y):
            out.append(_kron_all([_Z] * j + [pauli] + [_I2] * (m - j - 1)))
    if n % 2:
        out.append(_kron_all([_Z] * m))
    return out


def _product(mats, dim) -> np.ndarray:
    return reduce(np.matmul, mats, np.eye(dim, dtype=complex))


def _grading(generators, t: int) -> np.ndarray:
    n = len(generators)
    phase = 1j ** ((-t + n * (n + 1) // 2) % 4)
    return phase * _product(generators, generators[0].shape[0])


def _fundamental_symmetry(generators, t: int) -> np.ndarray:
    phase = 1j ** ((t * (t - 1) // 2) % 4)
    return phase * _product(generators[:t], generators[0].shape[0])


@dataclass(frozen=True, eq=False)
class CliffordRep:
    t: int
    s: int
    generators: tuple
    grading: np.ndarray | None
    fundamental_symmetry: np.ndarray
    #: +1 / -1 for a Wick-rotated representation, 0 otherwise
    rotation: int = 0

    @property
    def n(self) -> int:
        return self.t + self.s

    @property
    def dim(self) -> int:
        return self.generators[0].shape[0]

    def kappa(self, j: int) -> int:
        return -1 if j < self.t else 1

    def gamma(self, v) -> np.ndarray:
        v = np.asarray(v)
        if v.shape != (self.n,):
            raise ValueError(f"vector must have length {self.n}")
        return sum(c * g for c, g in zip(v, self.generators))

    def reflection(self) -> np.ndarray:
        """r: flips the timelike basis directions."""
        return np.diag([-1.0] * self.t + [1.0] * self.s)

    def clifford_residual(self) -> float:
        eye = np.eye(self.dim)
        worst = 0.0
        for i, a in enumerate(self.generators):
            for j, b in enumerate(self.generators[i:], start=i):
                target = -2.0 * self.kappa(j) * eye if i == j else 0.0 * eye
                worst = max(worst, float(np.abs(a @ b + b @ a - target).max()))
        return worst

    def residuals(self) -> dict[str, float]:
        """Max-abs residuals of every structural identity of the representation."""
        eye = np.eye(self.dim)
        j = self.fundamental_symmetry
        sign = (-1) ** self.t
        r = self.reflection()
        out = {
            "clifford": self.clifford_residual(),
            "J_self_adjoint": float(np.abs(j - j.conj().T).max()),
            "J_involution": float(np.abs(j @ j - eye).max()),
            "J_reflection": max(
                float(np.abs(j @ g @ j - sign * self.gamma(r[:, k])).max())
                for k, g in enumerate(self.generators)
            ),
        }
        if self.grading is not None:
            gm = self.grading
            out["grading_self_adjoint"] = float(np.abs(gm - gm.conj().T).max())
            out["grading_involution"] = float(np.abs(gm @ gm - eye).max())
            out["grading_odd"] = max(float(np.abs(gm @ g + g @ gm).max()) for g in self.generators)
        return out

    def to_json(self, path=None) -> str:
        """Generators (and J, Gamma) as nested ``[re, im]`` arrays."""

        def enc(m):
            return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]

        payload = {
            "t": self.t,
            "s": self.s,
            "rotation": self.rotation,
            "generators": [enc(g) for g in self.generators],
            "fundamental_symmetry": enc(self.fundamental_symmetry),
            "grading": None if self.grading is None else enc(self.grading),
        }
        text = json.dumps(payload, indent=1)
        if path is not None:
            Path(path).write_text(text + "\n", encoding="utf-8")
        return text


def build_clifford(t: int, s: int) -> CliffordRep:
    t, s = int(t), int(s)
    if t < 0 or s < 0:
        raise ValueError("t and s must be nonnegative")
    if t + s == 0:
        raise ValueError("need t + s >= 1")
    n = t + s
    herm = hermitian_generators(n)
    gens = tuple(e if j < t else 1j * e for j, e in enumerate(herm))
    grading = _grading(gens, t) if n % 2 == 0 else None
    return CliffordRep(t, s, gens, grading, _fundamental_symmetry(gens, t))


def wick_rotate_clifford(rep: CliffordRep, sign: int) -> CliffordRep:
    """gamma_pm(v) = pm i gamma(v_t) + gamma(v_s): a Riemannian representation.

    The result is stored as signature ``(0, n)`` with trivial fundamental
    symmetry; its grading is ``(-+1)^t Gamma_M``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    gens = tuple(sign * 1j * g if j < rep.t else g for j, g in enumerate(rep.generators))
    grading = _grading(gens, 0) if rep.n % 2 == 0 else None
    return CliffordRep(0, rep.n, gens, grading, np.eye(rep.dim, dtype=complex), rotation=sign)


def krein_adjoint(rep: CliffordRep, X):
    """X^# = J X* J, the adjoint for the indefinite product <J ., .>."""
    is_op = isinstance(X, GradedOperator)
    m = todense(X.matrix) if is_op else np.asarray(X)
    if m.shape != (rep.dim, rep.dim):
        raise ValueError(f"operator of shape {m.shape} does not act on C^{rep.dim}")
    j = rep.fundamental_symmetry
    out = j @ m.conj().T @ j
    return X.with_matrix(out) if is_op else out


def clifford_suite(max_n: int = 6) -> dict[tuple[int, int], dict[str, float]]:
    """Residuals for every signature with ``1 <= t + s <= max_n``, rotations included."""
    out = {}
    for n in range(1, max_n + 1):
        for t in range(n + 1):
            rep = build_clifford(t, n - t)
            res = rep.residuals()
            for sign in (1, -1):
                rot = wick_rotate_clifford(rep, sign)
                tag = "plus" if sign > 0 else "minus"
                res[f"rotated_{tag}_clifford"] = rot.clifford_residual()
                if rep.grading is not None:
                    expected = (-sign) ** rep.t * rep.grading
                    res[f"rotated_{tag}_grading"] = float(np.abs(rot.grading - expected).max())
            out[(t, n - t)] = res
    return out


def krein_checks(rep: CliffordRep, rng=None) -> dict[str, float]:
    """Involution and anti-multiplicativity of the Krein adjoint on random matrices."""
    rng = np.random.default_rng(0) if rng is None else rng
    d = rep.dim
    x = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2 * d)
    y = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2 * d)
    k = lambda m: krein_adjoint(rep, m)  # noqa: E731
    return {
        "involution": float(np.abs(k(k(x)) - x).max()),
        "anti_multiplicative": float(np.abs(k(x @ y) - k(y) @ k(x)).max()),
    }


def as_graded(rep: CliffordRep, X) -> GradedOperator:
    """Wrap a matrix on the spinor space, graded by Gamma_M when n is even."""
    space = GradedSpace(rep.grading) if rep.grading is not None else None
    return as_operator(np.asarray(X, dtype=complex), space)

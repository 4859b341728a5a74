"""Acceptance gates: one test per criterion, each printing a single PASS/FAIL line."""

import json
import time

import numpy as np
import pytest

from indefkk import clifford as cl
from indefkk import cylinder as cyl
from indefkk import kl
from indefkk import oscillator as osc
from indefkk.cli import main
from indefkk.core import residual
from indefkk.rotations import (
    double_commuting,
    double_odd_to_even,
    doubled_resolvent_factors,
    doubling_block_identities,
    opposite_equivalence_check,
    reverse_wick,
    wick_rotate,
)

from conftest import ginibre, hermitian

EXACT = 1e-12
TRUNCATION = 1e-10
SPECTRAL = 1e-8


@pytest.fixture
def gate(capsys):
    """Run ``body`` under a wall-clock budget and print one verdict line."""

    def run(number, title, budget, body):
        start = time.perf_counter()
        worst, ok = body()
        elapsed = time.perf_counter() - start
        passed = ok and elapsed < budget
        with capsys.disabled():
            tag = "PASS" if passed else "FAIL"
            print(f"\n[{tag}] criterion {number} {title}: worst={worst:.3e} time={elapsed:.2f}s (budget {budget}s)")
        assert ok, f"criterion {number}: worst residual {worst:.3e}"
        assert elapsed < budget, f"criterion {number}: {elapsed:.2f}s over the {budget}s budget"

    return run


def test_criterion_1_round_trip(gate):
    rng = np.random.default_rng(1)

    def body():
        worst = 0.0
        for n in (2, 8, 64, 256):
            for _ in range(200):
                d = ginibre(rng, n)
                worst = max(worst, residual(reverse_wick(*wick_rotate(d)).matrix, d))
                g = ginibre(rng, n)
                d1, d2 = 0.5 * (g + g.conj().T), -0.5j * (g - g.conj().T)
                back = wick_rotate(reverse_wick(d1, d2))
                worst = max(worst, residual(back.d_plus.matrix, d1), residual(back.d_minus.matrix, d2))
        return worst, worst <= EXACT

    gate(1, "Wick rotation round trip", 5.0, body)


def test_criterion_2_inner_product_identities(gate):
    from indefkk.core import adjoint, as_operator, graph_inner, imag_part, real_part

    rng = np.random.default_rng(2)

    def rel(x, y):
        return abs(x - y) / max(1.0, abs(x), abs(y))

    def body():
        worst = 0.0
        n = 24
        for _ in range(100):
            m = ginibre(rng, n)
            d = as_operator(m)
            phi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            psi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            # plain numpy oracle for the graph form of (D, D*)
            md = m.conj().T
            full = np.vdot(phi, psi) + np.vdot(m @ phi, m @ psi) + np.vdot(md @ phi, md @ psi)
            re_im = graph_inner(real_part(d), imag_part(d), phi, psi)
            worst = max(worst, rel(re_im, 0.5 * np.vdot(phi, psi) + 0.5 * full))
            pair = wick_rotate(d)
            worst = max(worst, rel(graph_inner(pair.d_plus, pair.d_minus, phi, psi), full))
            worst = max(worst, rel(graph_inner(d, adjoint(d), phi, psi), full))
        return worst, worst <= EXACT

    gate(2, "graph inner-product identities", 2.0, body)


def test_criterion_3_doubling_and_resolvent(gate):
    rng = np.random.default_rng(3)
    mus = [s * m for m in (0.25, 0.5, 1.0, 2.0, 4.0) for s in (1, -1)]

    def body():
        worst = 0.0
        for n in (1, 2, 8, 16, 32, 64):
            s, t = hermitian(rng, n), hermitian(rng, n)
            worst = max(worst, *doubling_block_identities(s, t).values())
            st = double_commuting(s, t)[0].dense()
            for mu in mus:
                left, right = doubled_resolvent_factors(s, mu)
                worst = max(worst, residual(left @ right, np.linalg.inv(st - 1j * mu * np.eye(2 * n))))
        return worst, worst <= TRUNCATION

    gate(3, "doubling identities and resolvent factorisation", 5.0, body)


def test_criterion_4_odd_even_and_opposite(gate):
    rng = np.random.default_rng(4)

    def body():
        worst = 0.0
        for n in (1, 3, 8, 32, 64, 128):
            d = ginibre(rng, n)
            d_t, d_p, d_m = double_odd_to_even(d)
            worst = max(worst, residual(reverse_wick(d_p, d_m).matrix, d_t.matrix))
            worst = max(worst, *(x.parity_residual() for x in (d_t, d_p, d_m)))
            # independent block oracle: D~+ = [[0, D*], [D, 0]]
            z = np.zeros((n, n))
            worst = max(worst, residual(d_p.dense(), np.block([[z, d.conj().T], [d, z]])))
        for n in (4, 32, 128):
            worst = max(worst, opposite_equivalence_check(ginibre(rng, n)).residual)
        return worst, worst <= EXACT

    gate(4, "odd/even doubling and opposite module", 5.0, body)


def test_criterion_5_clifford(gate):
    def body():
        worst = 0.0
        for res in cl.clifford_suite(6).values():
            worst = max(worst, *res.values())
        # direct oracle: gamma_j gamma_k + gamma_k gamma_j = 2 eta_jk for every signature
        for n in range(1, 7):
            for t in range(n + 1):
                rep = cl.build_clifford(t, n - t)
                eta = np.diag([1.0] * t + [-1.0] * (n - t))
                eye = np.eye(rep.dim)
                for j, gj in enumerate(rep.generators):
                    for k, gk in enumerate(rep.generators):
                        worst = max(worst, float(np.abs(gj @ gk + gk @ gj - 2 * eta[j, k] * eye).max()))
        return worst, worst <= EXACT

    gate(5, "Clifford relations, fundamental symmetry and rotated gradings", 3.0, body)


def test_criterion_6_oscillator(gate):
    def body():
        worst = {"truncation": 0.0, "spectral": 0.0}
        for d in (1, 2, 3):
            for N in (6, 8, 12):
                model = osc.build_fock_model(d, N)
                worst["truncation"] = max(worst["truncation"], *osc.square_identities(model).values())
                worst["truncation"] = max(worst["truncation"], *osc.recovery_identities(model).values())
                worst["spectral"] = max(worst["spectral"], *osc.ladder_residual(model).values())
                # independent eigensolve: compressed D1^2 has eigenvalues 2 omega (|n| + |s|)
                d1, _ = osc.build_D1_D2(model)
                p = osc.interior_projector(model)
                sq = p.compress(d1.matrix @ d1.matrix)
                nb, nf = model.total_occupations()
                total = (nb + nf)[p.indices]
                # D1 conserves |n| + |s|, so eigensolve one sector at a time
                for k in np.unique(total):
                    idx = np.flatnonzero(total == k)
                    ev = np.linalg.eigvalsh(sq[idx][:, idx].toarray())
                    worst["spectral"] = max(worst["spectral"], float(np.abs(ev - 2 * model.omega * k).max()))
        ok = worst["truncation"] <= TRUNCATION and worst["spectral"] <= SPECTRAL
        return max(worst.values()), ok

    gate(6, "oscillator squares, ladder and recovery", 30.0, body)


def test_criterion_7_cylinder(gate):
    def body():
        worst = 0.0
        flat = cyl.CylinderModel(n_theta=32, n_t=32)
        rep = cyl.compare_spectra(cyl.build_product_operator(flat), cyl.torus_product_oracle(flat))
        spectral_ok = rep.max_deviation <= SPECTRAL
        worst = max(worst, rep.max_deviation)

        a, _ = cyl.re_im_anticommutator(cyl.CylinderModel(n_theta=32, n_t=32, metric="ripple"))
        anti = float(abs(a).max()) if a.nnz else 0.0
        diagram = max(cyl.wick_diagram(cyl.CylinderModel(n_theta=32, n_t=32, metric="breathing")).values())
        exact_ok = anti <= EXACT and diagram <= EXACT
        worst = max(worst, anti, diagram)

        sizes = (32, 64, 128)
        tdep = kl.refinement_sweep(cyl.time_dependent_pair, sizes)

        # the brute-force oracle must agree with the fast path before the counter-model is gated
        oracle_vals = []
        oracle_ok = True
        for n_t in (4, 8, 16, 32):
            a, b = cyl.counter_model(n_t, 8)
            slow = cyl.brute_force_relative_bound(a, b)
            oracle_vals.append(slow)
            oracle_ok &= abs(kl.relative_bound(a, b) - slow) <= SPECTRAL * max(1.0, slow)
        oracle_ok &= oracle_vals[-1] / oracle_vals[0] >= 3
        counter = kl.refinement_sweep(cyl.counter_model, sizes) if oracle_ok else None
        sweeps_ok = (
            tdep.verdict == kl.BOUNDED
            and oracle_ok
            and counter.verdict == kl.GROWING
            and counter.growth >= 3
        )
        return worst, spectral_ok and exact_ok and sweeps_ok

    gate(7, "cylinder spectra, Wick diagram and relative-bound sweeps", 60.0, body)


def test_criterion_8_cli_determinism(gate, tmp_path):
    def body():
        reports = []
        for name in ("a", "b"):
            out = tmp_path / f"{name}.json"
            code = main(["check", "clifford", "--seed", "7", "--out", str(out), "--quiet"])
            data = json.loads(out.read_text())
            for check in data["checks"]:
                check.pop("wall_time", None)
            reports.append((code, data))
        same = reports[0][1] == reports[1][1]
        codes_ok = reports[0][0] == 0 and data["passed"]
        cfg = tmp_path / "strict.ini"
        cfg.write_text("[run]\nn_random = 2\nrandom_dims = 64\n[tolerances]\nexact = 1e-300\n")
        codes_ok &= main(["check", "rotations", "--config", str(cfg), "--quiet"]) == 1
        cfg.write_text("[cylinder]\nmetric = indefinite\n")
        codes_ok &= main(["check", "cylinder", "--config", str(cfg), "--quiet"]) == 2
        return 0.0 if same else 1.0, same and codes_ok

    gate(8, "CLI determinism and exit codes", 5.0, body)

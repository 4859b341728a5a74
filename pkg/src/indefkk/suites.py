"""Named check suites and their configuration."""

from __future__ import annotations

import configparser
import time
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import clifford as cl
from . import cylinder as cyl
from . import kl
from . import oscillator as osc
from .core import (
    EVEN,
    ODD,
    GradedOperator,
    GradedSpace,
    adjoint,
    as_operator,
    fro,
    graph_gram,
    graph_inner,
    hermitian_residual,
    imag_part,
    real_part,
    residual,
)
from .report import CheckReport, timed_check
from .rotations import (
    double_commuting,
    double_odd_to_even,
    doubled_resolvent_factors,
    doubling_block_identities,
    opposite_equivalence_check,
    reverse_wick,
    wick_rotate,
)

SUITES = ("core-identities", "rotations", "kl-probes", "clifford", "oscillator", "cylinder")


class ConfigError(ValueError):
    """Invalid suite configuration."""


@dataclass(frozen=True)
class SuiteConfig:
    suite: str = "all"
    seed: int = 42
    tol_exact: float = 1e-12
    tol_truncation: float = 1e-10
    tol_spectral: float = 1e-8
    # random operator batches
    random_dims: tuple = (2, 8, 64, 256)
    n_random: int = 200
    n_triples: int = 100
    # oscillator
    osc_d: tuple = (1,)
    osc_N: tuple = (8,)
    omega: float = 1.0
    margin: int = 2
    # cylinder
    n_theta: int = 32
    n_t: int = 32
    L_theta: float = 2 * np.pi
    L_t: float = 2 * np.pi
    metric: str = "flat"
    spin_structure: str = "periodic"
    sweep_sizes: tuple = (32, 64, 128)
    clifford_max_n: int = 6
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for name in ("tol_exact", "tol_truncation", "tol_spectral", "omega", "L_theta", "L_t"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        if self.suite not in SUITES + ("all",):
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES + ('all',))}")
        if self.spin_structure not in cyl.SPIN_STRUCTURES:
            raise ConfigError(f"spin structure must be one of {cyl.SPIN_STRUCTURES}")
        if self.metric not in cyl.METRICS:
            raise ConfigError(f"unknown metric id {self.metric!r}")
        if len(self.sweep_sizes) < 3 or any(b <= a for a, b in zip(self.sweep_sizes, self.sweep_sizes[1:])):
            raise ConfigError("sweep_sizes must be strictly increasing with at least three entries")

    def to_dict(self) -> dict:
        out = asdict(self)
        out.pop("extra")
        return {k: list(v) if isinstance(v, tuple) else v for k, v in out.items()}


def _ints(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError as exc:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from exc


# INI section -> key -> (field name, parser)
_SCHEMA = {
    "run": {
        "seed": ("seed", int),
        "random_dims": ("random_dims", _ints),
        "n_random": ("n_random", int),
        "n_triples": ("n_triples", int),
        "sweep_sizes": ("sweep_sizes", _ints),
        "clifford_max_n": ("clifford_max_n", int),
    },
    "tolerances": {
        "exact": ("tol_exact", float),
        "truncation": ("tol_truncation", float),
        "spectral": ("tol_spectral", float),
    },
    "oscillator": {
        "d": ("osc_d", _ints),
        "N": ("osc_N", _ints),
        "omega": ("omega", float),
        "margin": ("margin", int),
    },
    "cylinder": {
        "n_theta": ("n_theta", int),
        "n_t": ("n_t", int),
        "L_theta": ("L_theta", float),
        "L_t": ("L_t", float),
        "metric": ("metric", str),
        "spin_structure": ("spin_structure", str),
    },
}


def load_config(path=None, **overrides) -> SuiteConfig:
    """Read an INI file (sections run, tolerances, oscillator, cylinder); keyword overrides win."""
    values = {}
    if path is not None:
        parser = configparser.ConfigParser()
        parser.optionxform = str
        try:
            with open(path, encoding="utf-8") as fh:
                parser.read_file(fh)
        except (OSError, configparser.Error) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        for section in parser.sections():
            if section not in _SCHEMA:
                raise ConfigError(f"unknown config section [{section}]")
            for key, raw in parser.items(section):
                if key not in _SCHEMA[section]:
                    raise ConfigError(f"unknown key {key!r} in [{section}]")
                name, conv = _SCHEMA[section][key]
                try:
                    values[name] = conv(raw.strip())
                except ValueError as exc:
                    raise ConfigError(f"bad value for {section}.{key}: {raw!r}") from exc
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return SuiteConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


# -- helpers -----------------------------------------------------------------


def ginibre(rng, n: int) -> np.ndarray:
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2 * n)


def random_hermitian(rng, n: int) -> np.ndarray:
    g = ginibre(rng, n)
    return 0.5 * (g + g.conj().T)


def random_vector(rng, n: int) -> np.ndarray:
    return (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2)


def _scalar_residual(x, y) -> float:
    return abs(x - y) / max(1.0, abs(x), abs(y))


def _verdict(check_id, anchor, sweep: kl.BoundSweep, expected: str, min_growth: float | None = None) -> CheckReport:
    ok = sweep.verdict == expected and (min_growth is None or sweep.growth >= min_growth)
    details = {f"rho@{n}": v for n, v in zip(sweep.sizes, sweep.values)}
    details["verdict"] = sweep.verdict
    details["growth"] = sweep.growth
    return CheckReport(check_id, anchor, 0.0 if ok else 1.0, 0.5, 0.0, details)


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def _with_time(report: CheckReport, seconds: float) -> CheckReport:
    return replace(report, wall_time=seconds)


# -- suites ------------------------------------------------------------------


def core_suite(cfg: SuiteConfig, rng) -> list[CheckReport]:
    tol = cfg.tol_exact
    out = []

    def decomposition():
        worst = 0.0
        for n in cfg.random_dims:
            for _ in range(cfg.n_random):
                d = ginibre(rng, n)
                re, im = real_part(d).matrix, imag_part(d).matrix
                worst = max(
                    worst,
                    residual(re + 1j * im, d),
                    residual(re - 1j * im, d.conj().T),
                    hermitian_residual(re),
                    hermitian_residual(im),
                )
        return worst

    out.append(timed_check("core.re-im-decomposition", "real and imaginary parts", tol, decomposition))

    def graph_identities():
        first = second = 0.0
        n = 32
        for _ in range(cfg.n_triples):
            d = as_operator(ginibre(rng, n))
            phi, psi = random_vector(rng, n), random_vector(rng, n)
            dh = adjoint(d)
            base = np.vdot(phi, psi)
            rhs = 0.5 * base + 0.5 * graph_inner(d, dh, phi, psi)
            first = max(first, _scalar_residual(graph_inner(real_part(d), imag_part(d), phi, psi), rhs))
            pair = wick_rotate(d)
            second = max(second, _scalar_residual(graph_inner(pair.d_plus, pair.d_minus, phi, psi), graph_inner(d, dh, phi, psi)))
        return max(first, second), {"re_im_form": first, "wick_form": second}

    out.append(timed_check("core.graph-inner-identities", "graph inner products of Re/Im and of the Wick pair", tol, graph_identities))

    def algebra():
        n = 16
        x = ginibre(rng, n)
        signs = np.array([1.0] * (n // 2) + [-1.0] * (n // 2))
        space = GradedSpace.from_signs(signs)
        g = np.diag(signs)
        odd_a = GradedOperator(0.5 * (x - g @ x @ g), space, ODD)
        odd_b = GradedOperator(0.5 * (x.T - g @ x.T @ g), space, ODD)
        prod = odd_a @ odd_b
        basis, _ = np.linalg.qr(ginibre(rng, n))
        gram = graph_gram(as_operator(random_hermitian(rng, n)), as_operator(ginibre(rng, n)), basis)
        lam_min = float(np.linalg.eigvalsh(0.5 * (gram + gram.conj().T))[0])
        details = {
            "involution": residual(adjoint(adjoint(x)).matrix, x),
            "odd_parity": max(odd_a.parity_residual(), odd_b.parity_residual()),
            "odd_times_odd_even": (0.0 if prod.parity == EVEN else 1.0) + prod.parity_residual(),
            "gram_min_eig_deficit": max(0.0, 1.0 - lam_min),
            "hermitian_residual_example": abs(hermitian_residual(np.array([[0, 2], [0, 0]])) - 2 * np.sqrt(2)),
        }
        return max(details.values()), details

    out.append(timed_check("core.parity-and-forms", "graded structure and positivity of the graph form", tol, algebra))
    return out


def rotations_suite(cfg: SuiteConfig, rng) -> list[CheckReport]:
    tol = cfg.tol_exact
    out = []

    def round_trip():
        fwd = bwd = 0.0
        for n in cfg.random_dims:
            for _ in range(cfg.n_random):
                d = ginibre(rng, n)
                pair = wick_rotate(d)
                fwd = max(fwd, residual(reverse_wick(*pair).matrix, d))
                g = ginibre(rng, n)
                d1, d2 = 0.5 * (g + g.conj().T), -0.5j * (g - g.conj().T)
                back = wick_rotate(reverse_wick(d1, d2))
                bwd = max(bwd, residual(back.d_plus.matrix, d1), residual(back.d_minus.matrix, d2))
        return max(fwd, bwd), {"reverse_after_wick": fwd, "wick_after_reverse": bwd}

    out.append(timed_check("rotations.round-trip", "Wick rotation is a bijection onto Hermitian pairs", tol, round_trip))

    def laws():
        n = 16
        d = ginibre(rng, n)
        pair = wick_rotate(d)
        swapped = wick_rotate(d.conj().T)
        q, _ = np.linalg.qr(ginibre(rng, n))
        conj = wick_rotate(q @ d @ q.conj().T)
        details = {
            "swap_plus": residual(swapped.d_plus.matrix, pair.d_minus.matrix),
            "swap_minus": residual(swapped.d_minus.matrix, pair.d_plus.matrix),
            "unitary_plus": residual(conj.d_plus.matrix, q @ pair.d_plus.matrix @ q.conj().T),
            "unitary_minus": residual(conj.d_minus.matrix, q @ pair.d_minus.matrix @ q.conj().T),
            "sum": residual(pair.d_plus.matrix + pair.d_minus.matrix, d + d.conj().T),
        }
        return max(details.values()), details

    out.append(timed_check("rotations.swap-and-unitary-laws", "adjoint swaps the pair; unitary covariance", tol, laws))

    def doubling():
        worst = 0.0
        for n in (2, 4, 16, 32, 64):
            for _ in range(5):
                res = doubling_block_identities(random_hermitian(rng, n), random_hermitian(rng, n))
                worst = max(worst, *res.values())
        return worst

    out.append(timed_check("rotations.doubling-brackets", "doubling exchanges commutator and anticommutator", cfg.tol_truncation, doubling))

    def resolvent():
        worst = 0.0
        for n in (2, 8, 32, 64):
            s = random_hermitian(rng, n)
            s_t, _ = double_commuting(s, random_hermitian(rng, n))
            st = s_t.dense()
            for mu in kl.DEFAULT_MU_GRID:
                left, right = doubled_resolvent_factors(s, mu)
                direct = np.linalg.inv(st - 1j * mu * np.eye(2 * n))
                worst = max(worst, residual(left @ right, direct))
        return worst

    out.append(timed_check("rotations.doubled-resolvent", "two-factor form of the doubled resolvent", cfg.tol_truncation, resolvent))

    def odd_even():
        worst = {"reverse": 0.0, "parity": 0.0, "hermitian": 0.0}
        for n in (1, 2, 8, 32, 64, 128):
            d = ginibre(rng, n)
            d_t, d_tp, d_tm = double_odd_to_even(d)
            worst["reverse"] = max(worst["reverse"], residual(reverse_wick(d_tp, d_tm).matrix, d_t.matrix))
            worst["parity"] = max(worst["parity"], *(x.parity_residual() for x in (d_t, d_tp, d_tm)))
            worst["hermitian"] = max(worst["hermitian"], hermitian_residual(d_tp), hermitian_residual(d_tm))
        return max(worst.values()), worst

    out.append(timed_check("rotations.odd-to-even", "odd/even doubling and its reverse Wick rotation", tol, odd_even))

    report = opposite_equivalence_check(ginibre(rng, 32), tol)
    out.append(replace(report, check_id="rotations.opposite-module.random"))
    model = osc.build_fock_model(1, 8, 1.0)
    report = opposite_equivalence_check(model.a[0].toarray(), tol)
    out.append(replace(report, check_id="rotations.opposite-module.ladder"))
    return out


def kl_suite(cfg: SuiteConfig, rng) -> list[CheckReport]:
    out = []
    s1 = np.array([[0, 1], [1, 0]], dtype=complex)
    s2 = np.array([[0, -1j], [1j, 0]])
    s3 = np.diag([1.0, -1.0]).astype(complex)

    def pauli():
        comm = kl.resolvent_bound(kl.ConditionProbe(s3, s1, (1.0,), kl.COMMUTING))
        anti = kl.resolvent_bound(kl.ConditionProbe(s3, s1, (1.0,), kl.ANTICOMMUTING))
        anti12 = kl.resolvent_bound(kl.ConditionProbe(s1, s2))
        details = {"commuting": abs(comm - np.sqrt(2)), "anticommuting": anti, "sigma1_sigma2": anti12}
        return max(details.values()), details

    out.append(timed_check("kl.pauli-probes", "resolvent-weighted brackets of Pauli matrices", cfg.tol_exact, pauli))

    def transport():
        excess = 0.0
        for n in (4, 16, 32):
            s, t = random_hermitian(rng, n), random_hermitian(rng, n)
            for mu in kl.DEFAULT_MU_GRID:
                lhs, rhs = kl.doubling_transport(s, t, mu)
                excess = max(excess, (lhs - rhs) / max(1.0, rhs))
        return max(excess, 0.0), {"max_relative_excess": excess}

    out.append(timed_check("kl.doubling-transport", "doubled anticommutator bound by commutator data", cfg.tol_truncation, transport))

    def oracle():
        worst = 0.0
        for n in (4, 16, 48):
            a, b = ginibre(rng, n), random_hermitian(rng, n)
            worst = max(worst, _scalar_residual(kl.relative_bound(a, b), cyl.brute_force_relative_bound(a, b)))
        b = random_hermitian(rng, 12)
        lam = np.linalg.eigvalsh(b)
        worst = max(worst, _scalar_residual(kl.relative_bound(b, b), float(np.max(np.abs(lam) / (np.abs(lam) + 1)))))
        worst = max(worst, _scalar_residual(kl.relative_bound(np.eye(12), b), 1.0 / (1.0 + np.min(np.abs(lam)))))
        worst = max(worst, kl.relative_bound(np.zeros((12, 12)), b))
        for n_t in (4, 8, 16):
            a, b = cyl.counter_model(n_t, 8)
            worst = max(worst, _scalar_residual(kl.relative_bound(a, b), cyl.brute_force_relative_bound(a, b)))
        return worst

    out.append(timed_check("kl.relative-bound-oracle", "fast relative bound against dense square-root oracle", cfg.tol_spectral, oracle))

    sweep, secs = _timed(lambda: kl.refinement_sweep(cyl.parallel_time_pair, cfg.sweep_sizes))
    out.append(_with_time(_verdict("kl.parallel-time-sweep", "vanishing anticommutator for parallel time", sweep, kl.BOUNDED), secs))
    return out


def clifford_suite(cfg: SuiteConfig, rng) -> list[CheckReport]:
    out = []
    tol = cfg.tol_exact
    results, secs = _timed(lambda: cl.clifford_suite(cfg.clifford_max_n))
    for (t, s), res in sorted(results.items(), key=lambda kv: (sum(kv[0]), kv[0][0])):
        out.append(CheckReport(f"clifford.signature-{t}-{s}", "Clifford relations, J, grading, rotations", max(res.values()), tol, secs / len(results), res))

    def examples():
        rep = cl.build_clifford(1, 1)
        g0, g1 = rep.generators
        rot = cl.wick_rotate_clifford(rep, 1)
        details = {
            "gamma0": float(np.abs(g0 - np.array([[0, 1], [1, 0]])).max()),
            "gamma1": float(np.abs(g1 - np.array([[0, 1], [-1, 0]])).max()),
            "grading": float(np.abs(rep.grading - np.diag([1, -1])).max()),
            "J_is_gamma0": float(np.abs(rep.fundamental_symmetry - g0).max()),
            "rotated_grading": float(np.abs(rot.grading - np.diag([-1, 1])).max()),
            "krein_J": float(np.abs(cl.krein_adjoint(rep, rep.fundamental_symmetry) - rep.fundamental_symmetry).max()),
            "krein_gamma0": float(np.abs(cl.krein_adjoint(rep, g0) - g0).max()),
        }
        for t, s in ((1, 1), (1, 3), (2, 2), (0, 3)):
            for k, v in cl.krein_checks(cl.build_clifford(t, s), rng).items():
                details[f"krein_{k}_{t}_{s}"] = v
        return max(details.values()), details

    out.append(timed_check("clifford.examples", "explicit (1,1) generators and Krein adjoint", tol, examples))
    return out


def oscillator_suite(cfg: SuiteConfig, rng) -> list[CheckReport]:
    out = []
    for d in cfg.osc_d:
        for N in cfg.osc_N:
            model = osc.build_fock_model(d, N, cfg.omega, cfg.margin)
            tag = f"oscillator.d{d}.N{N}"

            def squares(model=model):
                res = osc.square_identities(model)
                return max(res.values()), res

            def recovery(model=model):
                res = osc.recovery_identities(model)
                return max(res.values()), res

            def ladder(model=model):
                res = osc.ladder_residual(model)
                return max(res.values()), res

            def exact(model=model):
                res = {**osc.assembly_identities(model), **osc.fermion_identities(model)}
                p = osc.interior_projector(model)
                pm, g = p.matrix, model.grading
                res["projector_idempotent"] = fro(pm @ pm - pm)
                res["projector_self_adjoint"] = fro(pm - pm.conj().T)
                res["projector_even"] = fro(pm @ g - g @ pm)
                res["projector_rank"] = float(abs(p.rank - (N - model.margin) ** d * 2 ** d))
                if d == 1:
                    res.update(osc.odd_reduction(model))
                return max(res.values()), res

            def bounded(model=model):
                rho, bound = osc.bounded_anticommutator(model)
                return max(0.0, rho - bound), {"rho": rho, "bound": bound}

            out.append(timed_check(f"{tag}.squares", "squares of D1 and D2 on the interior", cfg.tol_truncation, squares))
            out.append(timed_check(f"{tag}.ladder", "2 omega n ladder spectrum", cfg.tol_spectral, ladder))
            out.append(timed_check(f"{tag}.recovery", "H and Sigma recovered from D", cfg.tol_truncation, recovery))
            out.append(timed_check(f"{tag}.exact", "assembly, CAR, grading, interior projector", cfg.tol_exact, exact))
            out.append(timed_check(f"{tag}.bounded-difference", "D1^2 - D2^2 bounded on the interior", cfg.tol_truncation, bounded))
    return out


def _model(cfg: SuiteConfig, **kw) -> cyl.CylinderModel:
    base = dict(
        n_theta=cfg.n_theta,
        n_t=cfg.n_t,
        L_theta=cfg.L_theta,
        L_t=cfg.L_t,
        metric=cfg.metric,
        spin_structure=cfg.spin_structure,
    )
    base.update(kw)
    return cyl.CylinderModel(**base)


def cylinder_suite(cfg: SuiteConfig, rng) -> list[CheckReport]:
    model = _model(cfg)
    model.metric_samples()  # raises MetricError before any check runs
    parallel = model if model.is_parallel_time else _model(cfg, metric="flat")
    g = model.metric_samples()
    constant = model if np.all(g == g.flat[0]) else _model(cfg, metric="flat")
    out = []

    def family():
        res = cyl.family_residuals(model)
        return max(res.values()), res

    def product():
        res = cyl.product_identities(model)
        return max(res.values()), res

    def torus():
        rep = cyl.compare_spectra(cyl.build_product_operator(constant), cyl.torus_product_oracle(constant))
        return rep.max_deviation, {"n_eigenvalues": float(rep.eigenvalues.size)}

    def circles():
        n = 64
        details = {}
        for name, g0, spin in (("flat", 1.0, "periodic"), ("antiperiodic", 1.0, "antiperiodic"), ("const4", 4.0, "periodic")):
            ev = cyl.build_circle_dirac(np.full(n, g0), 2 * np.pi, spin)
            details[name] = cyl.compare_spectra(ev, cyl.circle_oracle(n, 2 * np.pi, g0, spin)).max_deviation
        return max(details.values()), details

    def split():
        res = {**cyl.real_imag_split(model), **cyl.wick_diagram(model)}
        return max(res.values()), res

    def anticommutator():
        a, _ = cyl.re_im_anticommutator(parallel)
        return (float(abs(a).max()) if a.nnz else 0.0), {"metric": parallel.metric}

    def wick_spectra():
        small = parallel.with_sizes(16, 16)
        pair = wick_rotate(cyl.build_lorentzian_dirac(small))
        return cyl.compare_spectra(pair.d_plus, pair.d_minus).max_deviation

    out.append(timed_check("cylinder.family", "block-diagonal family of circle operators", cfg.tol_truncation, family))
    out.append(timed_check("cylinder.product-operator", "product operator block structure", cfg.tol_exact, product))
    out.append(timed_check("cylinder.torus-spectrum", "product operator against Fourier modes", cfg.tol_spectral, torus))
    out.append(timed_check("cylinder.circle-spectra", "circle operators against Fourier modes", cfg.tol_truncation, circles))
    out.append(timed_check("cylinder.wick-diagram", "Wick rotation of the Lorentzian operator", cfg.tol_exact, split))
    out.append(timed_check("cylinder.parallel-anticommutator", "Re/Im anticommutator for parallel time", cfg.tol_exact, anticommutator))
    out.append(timed_check("cylinder.rotated-spectra", "both Wick rotations share a spectrum", cfg.tol_spectral, wick_spectra))

    tdep = cfg.metric if not model.is_parallel_time else "breathing"
    sizes = cfg.sweep_sizes

    def builder(n, metric=tdep):
        return cyl.time_dependent_pair(n, metric=metric)

    sweep, secs = _timed(lambda: kl.refinement_sweep(builder, sizes))
    out.append(_with_time(_verdict("cylinder.time-dependent-sweep", "anticommutator relatively bounded", sweep, kl.BOUNDED), secs))

    def counter_oracle():
        worst, vals = 0.0, []
        for n_t in (4, 8, 16, 32):
            a, b = cyl.counter_model(n_t, 8)
            fast, slow = kl.relative_bound(a, b), cyl.brute_force_relative_bound(a, b)
            vals.append(slow)
            worst = max(worst, _scalar_residual(fast, slow))
        growth = vals[-1] / vals[0]
        return (worst if growth >= 3 else float("inf")), {"oracle_growth": growth}

    out.append(timed_check("cylinder.counter-model-oracle", "brute-force check of the counter-model", cfg.tol_spectral, counter_oracle))
    sweep, secs = _timed(lambda: kl.refinement_sweep(cyl.counter_model, sizes))
    out.append(_with_time(_verdict("cylinder.counter-model-sweep", "timelike coupling is not relatively bounded", sweep, kl.GROWING, 3.0), secs))

    def locality():
        vals = [
            cyl.locality_ratio(_model(cfg, n_theta=n, n_t=n, metric="wave" if model.is_parallel_time else cfg.metric,
                                      theta_stencil=cyl.CENTRAL, time_stencil=cyl.CENTRAL))
            for n in sizes
        ]
        return max(vals) / min(vals), {f"ratio@{n}": v for n, v in zip(sizes, vals)}

    def variation():
        vals = [cyl.slice_variation(_model(cfg, n_theta=16, n_t=n, metric=tdep)) for n in sizes]
        return max(vals) / min(vals), {f"variation@{n}": v for n, v in zip(sizes, vals)}

    out.append(timed_check("cylinder.locality", "commutators with smooth functions stay bounded", 2.0, locality))
    out.append(timed_check("cylinder.slice-variation", "uniform slice-to-slice variation", 2.0, variation))
    return out


_RUNNERS = {
    "core-identities": core_suite,
    "rotations": rotations_suite,
    "kl-probes": kl_suite,
    "clifford": clifford_suite,
    "oscillator": oscillator_suite,
    "cylinder": cylinder_suite,
}


def run_suite(cfg: SuiteConfig) -> list[CheckReport]:
    names = SUITES if cfg.suite == "all" else (cfg.suite,)
    reports = []
    for name in names:
        rng = np.random.default_rng([cfg.seed, SUITES.index(name)])
        reports.extend(_RUNNERS[name](cfg, rng))
    return reports

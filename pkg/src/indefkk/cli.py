"""Command-line driver.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage,
configuration or model errors (reported as structured JSON).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import cylinder as cyl
from . import kl
from . import oscillator as osc
from .rotations import wick_rotate
from .report import SCHEMA_VERSION, report_payload, write_csv, write_json_atomic
from .suites import SUITES, ConfigError, _model, load_config, run_suite

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

SPECTRUM_MODELS = ("product", "circle", "lorentzian-plus", "lorentzian-minus", "oscillator-D1", "oscillator-D2")
SWEEP_PROBES = {
    "counter-model": cyl.counter_model,
    "time-dependent": cyl.time_dependent_pair,
    "parallel-time": cyl.parallel_time_pair,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _sizes(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="indefkk", description="Finite-dimensional checks for indefinite Kasparov modules.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run a named check suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--config", help="INI file with [run], [tolerances], [oscillator], [cylinder] sections")
    p.add_argument("--seed", type=int)
    p.add_argument("--tol-exact", type=float)
    p.add_argument("--out", help="write the JSON report here (atomically)")
    p.add_argument("--no-timing", action="store_true", help="omit wall-time fields from the JSON report")
    p.add_argument("--quiet", action="store_true")

    p = sub.add_parser("spectrum", help="export the spectrum of a model operator as CSV")
    p.add_argument("model", choices=SPECTRUM_MODELS)
    p.add_argument("--config")
    p.add_argument("--csv", help="output path (stdout if omitted)")

    p = sub.add_parser("sweep", help="relative-bound refinement sweep")
    p.add_argument("probe", choices=sorted(SWEEP_PROBES))
    p.add_argument("--sizes", type=_sizes, default=(32, 64, 128, 256))
    p.add_argument("--n-theta", type=int, default=16)
    p.add_argument("--csv", help="output path (stdout if omitted)")
    return parser


def _error_payload(kind: str, message: str, command: str | None) -> dict:
    return {"schema": SCHEMA_VERSION, "command": command, "error": {"type": kind, "message": message}}


def _emit_csv(header, rows, path):
    if path:
        write_csv(path, header, rows)
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())


def cmd_check(args) -> int:
    cfg = load_config(args.config, suite=args.suite, seed=args.seed, tol_exact=args.tol_exact)
    reports = run_suite(cfg)
    if not args.quiet:
        for r in reports:
            print(r.line())
    payload = report_payload(cfg.suite, reports, cfg.to_dict(), cfg.seed, timing=not args.no_timing)
    if args.out:
        write_json_atomic(payload, args.out)
    failed = payload["n_failed"]
    if not args.quiet:
        print(f"{payload['n_checks'] - failed}/{payload['n_checks']} checks passed")
    return EXIT_OK if failed == 0 else EXIT_FAILED


def cmd_spectrum(args) -> int:
    cfg = load_config(args.config)
    name = args.model
    if name.startswith("oscillator"):
        model = osc.build_fock_model(cfg.osc_d[0], cfg.osc_N[0], cfg.omega, cfg.margin)
        rows = osc.spectrum_rows(model, name.split("-")[1])
        _emit_csv(("index", "eigenvalue", "sector"), rows, args.csv)
        return EXIT_OK
    model = _model(cfg)
    g = model.metric_samples()
    constant = bool((g == g.flat[0]).all())
    if name == "product":
        op = cyl.build_product_operator(model)
        oracle = cyl.torus_product_oracle(model) if constant else None
    elif name == "circle":
        op = cyl.build_circle_dirac(g[0], model.L_theta, model.spin_structure)
        oracle = cyl.circle_oracle(model.n_theta, model.L_theta, g.flat[0], model.spin_structure) if constant else None
    else:
        pair = wick_rotate(cyl.build_lorentzian_dirac(model))
        op = pair.d_plus if name.endswith("plus") else pair.d_minus
        oracle = None
    if oracle is None:
        rep = cyl.compare_spectra(op, op)
        rows = [(i, repr(float(e))) for i, e in enumerate(rep.eigenvalues)]
        _emit_csv(("index", "eigenvalue"), rows, args.csv)
    else:
        rep = cyl.compare_spectra(op, oracle)
        rows = [
            (i, repr(float(e)), repr(float(o)), repr(float(abs(e - o))))
            for i, (e, o) in enumerate(zip(rep.eigenvalues, rep.oracle))
        ]
        _emit_csv(("index", "eigenvalue", "oracle_eigenvalue", "deviation"), rows, args.csv)
    return EXIT_OK


def cmd_sweep(args) -> int:
    probe = SWEEP_PROBES[args.probe]
    sweep = kl.refinement_sweep(lambda n: probe(n, args.n_theta), args.sizes)
    if args.csv:
        sweep.to_csv(args.csv)
    else:
        _emit_csv(("size", "rho", "verdict"), sweep.rows(), None)
    return EXIT_OK


_COMMANDS = {"check": cmd_check, "spectrum": cmd_spectrum, "sweep": cmd_sweep}


def main(argv=None) -> int:
    parser = build_parser()
    command = None
    out = None
    try:
        args = parser.parse_args(argv)
        command = args.command
        out = getattr(args, "out", None)
        return _COMMANDS[command](args)
    except BrokenPipeError:
        # downstream reader (e.g. head) went away; not an error for us
        sys.stderr.close()
        return EXIT_OK
    except UsageError as exc:
        payload = _error_payload("UsageError", str(exc), command)
    except (ConfigError, cyl.MetricError, ValueError, OSError) as exc:
        payload = _error_payload(type(exc).__name__, str(exc), command)
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    if out:
        try:
            write_json_atomic(payload, out)
        except OSError:
            pass
    return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())

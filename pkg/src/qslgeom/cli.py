"""Command-line front end: sweeps, single checks, and an embedded selftest.

Exit codes: 0 ok, 1 bound violation, 2 usage error, 3 runtime error.
All numeric I/O uses the hbar = 1, J = 1 unit system; the CSV column
``tau`` is J tau / hbar.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from . import entangle, evolve, qstate
from .bounds import check_bures, check_mixed_fs, check_pure
from .hamiltonian import cluster_ising, heisenberg_xyz
from .sweeps import SweepConfig, SweepResult, run_sweep, summarize

CSV_HEADER = "theta,tau,dH,overlap_angle,E_G,G_E,lhs,delta"

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3

# flag name -> (python type, default); shared by the CLI and config files
_SWEEP_OPTIONS: dict[str, tuple[type, Any]] = {
    "model": (str, "cluster"),
    "n": (int, 3),
    "j": (float, 1.0),
    "gamma": (float, 0.0),
    "mu": (float, 0.0),
    "h": (float, 0.0),
    "phi": (float, 0.0),
    "theta-min": (float, 0.0),
    "theta-max": (float, float(np.pi)),
    "theta-steps": (int, 61),
    "tau-min": (float, 0.0),
    "tau-max": (float, 3.0),
    "tau-steps": (int, 61),
    "flavor": (str, "pure_fs"),
    "mixing-p": (float, None),
    "seed": (int, 0),
    "saturation-threshold": (float, 0.1),
}


@dataclasses.dataclass(frozen=True)
class CliCommand:
    """A parsed invocation: one verb plus its resolved options."""

    verb: str
    options: dict[str, Any]
    out: str | None = None
    summary_out: str | None = None


def _read_config_file(path: str) -> dict[str, str]:
    """line-oriented ``key = value`` pairs; keys mirror flag names exactly."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qslgeom",
        description=(
            "Geometric time-energy uncertainty vs multipartite entanglement: "
            "run (theta, tau) sweeps, single bound checks, and a selftest."
        ),
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_shared(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="key = value config file; flags override")
        for name, (typ, _) in _SWEEP_OPTIONS.items():
            p.add_argument(f"--{name}", type=typ, default=None, dest=name.replace("-", "_"))

    sweep = sub.add_parser("sweep", help="evaluate a (theta, tau) grid and write CSV")
    add_shared(sweep)
    sweep.add_argument("--out", required=True, help="CSV output path")
    sweep.add_argument("--summary-out", default=None, help="optional JSON summary path")

    check = sub.add_parser("check", help="single bound check, JSON on stdout")
    add_shared(check)
    check.add_argument("--theta", type=float, default=None)
    check.add_argument("--tau", type=float, default=None)

    sub.add_parser("selftest", help="run the embedded oracle suite")
    return parser


def _resolve_options(ns: argparse.Namespace) -> dict[str, Any]:
    file_values: dict[str, str] = {}
    if getattr(ns, "config", None):
        file_values = _read_config_file(ns.config)
        unknown = set(file_values) - set(_SWEEP_OPTIONS) - {"theta", "tau"}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
    resolved: dict[str, Any] = {}
    for name, (typ, default) in _SWEEP_OPTIONS.items():
        cli_val = getattr(ns, name.replace("-", "_"), None)
        if cli_val is not None:
            resolved[name] = cli_val
        elif name in file_values:
            resolved[name] = typ(file_values[name])
        else:
            resolved[name] = default
    for extra in ("theta", "tau"):
        cli_val = getattr(ns, extra, None)
        if cli_val is not None:
            resolved[extra] = cli_val
        elif extra in file_values:
            resolved[extra] = float(file_values[extra])
    return resolved


def parse_args(argv: Sequence[str]) -> CliCommand:
    ns = _build_parser().parse_args(argv)
    if ns.verb == "selftest":
        return CliCommand("selftest", {})
    options = _resolve_options(ns)
    return CliCommand(
        ns.verb,
        options,
        out=getattr(ns, "out", None),
        summary_out=getattr(ns, "summary_out", None),
    )


def _sweep_config(options: dict[str, Any]) -> SweepConfig:
    return SweepConfig(
        model=options["model"],
        n_qubits=options["n"],
        J=options["j"],
        gamma=options["gamma"],
        mu=options["mu"],
        h=options["h"],
        phi=options["phi"],
        theta_range=(options["theta-min"], options["theta-max"], options["theta-steps"]),
        tau_range=(options["tau-min"], options["tau-max"], options["tau-steps"]),
        flavor=options["flavor"],
        mixing_p=options["mixing-p"],
        seed=options["seed"],
        saturation_threshold=options["saturation-threshold"],
    )


def _fmt(x: float) -> str:
    if x == 0.0:  # also normalizes -0.0
        return "0"
    return f"{x:.17g}"


def emit_csv(result: SweepResult, path: str | Path) -> None:
    """Write the grid row-major (theta outer, tau inner), 17 significant
    digits, LF line endings."""
    lines = [CSV_HEADER]
    for row in result.cells:
        for rep in row:
            lines.append(
                ",".join(
                    _fmt(v)
                    for v in (
                        rep.params["theta"],
                        rep.params["tau"],
                        rep.energy_fluctuation,
                        rep.rhs_geodesic,
                        rep.entanglement.e,
                        rep.rhs_entanglement,
                        rep.lhs,
                        rep.delta,
                    )
                )
            )
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _run_sweep_verb(cmd: CliCommand) -> int:
    config = _sweep_config(cmd.options)
    result = run_sweep(config)
    emit_csv(result, cmd.out)
    summary = {"config": dataclasses.asdict(config), "summary": summarize(result)}
    payload = json.dumps(summary, indent=2)
    if cmd.summary_out:
        Path(cmd.summary_out).write_text(payload + "\n")
    print(payload)
    if result.violations:
        thetas, taus = config.thetas(), config.taus()
        for i, j in result.violations:
            rep = result.cells[i][j]
            print(
                f"VIOLATION at cell ({i},{j}): theta={thetas[i]!r} tau={taus[j]!r} "
                f"delta={rep.delta!r} params={rep.params}",
                file=sys.stderr,
            )
        return EXIT_VIOLATION
    return EXIT_OK


def _run_check_verb(cmd: CliCommand) -> int:
    opts = cmd.options
    if "theta" not in opts:
        raise ValueError("check needs --theta (flag or config file)")
    if "tau" not in opts:
        raise ValueError("check needs --tau (flag or config file)")
    config = _sweep_config(opts)
    spec = config.hamiltonian()
    theta, tau = float(opts["theta"]), float(opts["tau"])
    psi0 = qstate.product_state(theta, config.phi, config.n_qubits)
    extra = {"theta": theta, "phi": config.phi}
    if config.flavor == "pure_fs":
        report = check_pure(spec, psi0, tau, extra_params=extra)
        violated = report.delta < -1e-9
    else:
        p = 0.0 if config.mixing_p is None else config.mixing_p
        rho0 = qstate.depolarize(qstate.density_from_pure(psi0), p)
        fn = check_mixed_fs if config.flavor == "mixed_fs" else check_bures
        report = fn(spec, rho0, tau, seed=config.seed, extra_params=extra)
        violated = report.geodesic_margin < -1e-9
    print(json.dumps(report.as_dict(), indent=2))
    return EXIT_VIOLATION if violated else EXIT_OK


# ---------------------------------------------------------------------------
# selftest: the derived-oracle suite, independent of the test tree
# ---------------------------------------------------------------------------

def _selftest_checks() -> list[tuple[str, Callable[[], None]]]:
    def analytic_cluster_point() -> None:
        spec = cluster_ising(2)
        psi0 = qstate.product_state(np.pi / 4.0, 0.0, 2)
        rep = check_pure(spec, psi0, np.pi)
        expect = {
            "lhs": np.pi * np.sqrt(3.0) / 4.0,
            "rhs_entanglement": np.pi / 4.0,
            "delta": np.pi * (np.sqrt(3.0) - 1.0) / 4.0,
        }
        for name, want in expect.items():
            got = getattr(rep, name)
            if abs(got - want) > 1e-9:
                raise AssertionError(f"{name}: got {got!r}, expected {want!r}")
        if abs(rep.entanglement.e - 0.5) > 1e-9:
            raise AssertionError(f"E_G: got {rep.entanglement.e!r}, expected 0.5")

    def propagation_phase() -> None:
        spec = cluster_ising(2)
        psi0 = qstate.product_state(np.pi / 4.0, 0.0, 2)
        psi = evolve.propagate_pure(spec, psi0, np.pi)
        want = 0.5 * np.array([1, 1, 1, -1], dtype=complex)
        if np.max(np.abs(psi.amplitudes - want)) > 1e-12:
            raise AssertionError("cluster phase propagation mismatch")

    def ggm_known_states() -> None:
        for psi, want in ((qstate.ghz_state(3), 0.5), (qstate.w_state(3), 1.0 / 3.0)):
            got = entangle.ggm(psi).e
            if abs(got - want) > 1e-9:
                raise AssertionError(f"GGM: got {got!r}, expected {want!r}")

    def gm_als_vs_brute() -> None:
        rng = np.random.default_rng(20240813)
        states = [qstate.ghz_state(3), qstate.w_state(3)] + [
            qstate.random_state(3, rng) for _ in range(8)
        ]
        for k, psi in enumerate(states):
            als = entangle.gm_als(psi, seed=k).e
            brute = entangle.gm_brute(psi, grid_per_angle=24).e
            if abs(als - brute) > 1e-3:
                raise AssertionError(f"state {k}: ALS {als!r} vs brute {brute!r}")

    def finite_difference_speed() -> None:
        rng = np.random.default_rng(7)
        dt = 1e-4
        for _ in range(5):
            if rng.random() < 0.5:
                spec = cluster_ising(3)
            else:
                spec = heisenberg_xyz(
                    3, gamma=rng.uniform(0, 1), mu=rng.uniform(-1, 1), h=rng.uniform(-2, 2)
                )
            rho0 = qstate.random_density(3, rng)
            closed = evolve.mixed_fs_speed(spec, rho0)
            rho_dt = evolve.propagate_density(spec, rho0, dt)
            pur = float(np.real(np.sum(rho0.matrix.conj() * rho0.matrix)))
            over = float(np.real(np.sum(rho0.matrix.conj() * rho_dt.matrix)))
            fd = np.sqrt(max(4.0 * (1.0 - over / pur), 0.0)) / dt
            if abs(fd - closed) > 1e-5 * max(closed, 1e-30):
                raise AssertionError(f"FD speed {fd!r} vs closed form {closed!r}")

    return [
        ("analytic N=2 cluster point", analytic_cluster_point),
        ("cluster phase propagation", propagation_phase),
        ("GGM of GHZ/W", ggm_known_states),
        ("GM: ALS vs brute oracle", gm_als_vs_brute),
        ("finite-difference FS speed", finite_difference_speed),
    ]


def selftest() -> int:
    """Run the embedded oracle suite and print a pass/fail table."""
    failures = 0
    for name, fn in _selftest_checks():
        try:
            fn()
            status = "pass"
        except Exception as exc:
            status = f"FAIL ({exc})"
            failures += 1
        print(f"{name:<32s} {status}")
    print(f"{len(_selftest_checks()) - failures} passed, {failures} failed")
    return EXIT_OK if failures == 0 else EXIT_RUNTIME


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cmd = parse_args(sys.argv[1:] if argv is None else list(argv))
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if cmd.verb == "sweep":
            return _run_sweep_verb(cmd)
        if cmd.verb == "check":
            return _run_check_verb(cmd)
        return selftest()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())

"""Command-line frontend and serialization.

Four subcommands: `expectations` (observable time series), `density`
(theta-integrated snapshot grids plus a manifest), `maxima` (subpacket maxima
tracks on the orbit sphere) and `check` (self-consistency suite against the
dense numeric oracle).

Outputs are CSV plus a JSON manifest.  Floats are serialized as shortest
round-trip decimals, so identical configs give byte-identical files across
runs and worker counts.  All heavy evaluation may fan out to threads; writing
stays on the main thread.

Exit codes: 0 success, 1 failed check, 2 bad usage or unwritable out_dir.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, fields, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import oracle
from .basis import Spin
from .density import classical_orbit_radius, maxima_track, plane_density
from .model import JBranch, ModelParams, energy
from .observables import orbital_expectation, series, spin_expectation
from .packet import SpinDirection, SpinorPacket, build_packet, make_params
from .propagator import propagate

WORKERS_ENV = "SPINPENDULUM_WORKERS"

EXPECTATIONS_HEADER = ["t", "t_over_Tls", "sx", "sy", "sz", "lx", "ly", "lz", "jx", "jy", "jz", "norm"]
DENSITY_HEADER = ["r", "phi", "d_up", "d_down", "d_total"]
MAXIMA_HEADER = ["t", "t_over_Tls", "component", "theta_star", "phi_star", "value"]

SNAPSHOTS_PER_TLS = 16  # snapshot cadence Delta_t = T_ls / 16


@dataclass
class RunConfig:
    """One run of any subcommand; None fields are resolved from the model."""

    n_mean: float = 4.0
    ratio: Optional[float] = None   # omega0 / omega_ls; default 2 if kappa absent
    kappa: Optional[float] = None   # mutually exclusive with ratio
    spin_theta: float = math.pi     # spin Down
    spin_phi: float = 0.0
    t_max_over_tls: float = 0.5
    n_times: int = 251
    n_r: int = 96
    n_phi: int = 256
    n_theta: Optional[int] = None   # default 2*l_max + 4
    r_max: Optional[float] = None   # default r_cl + 4
    weight_tol: float = 1e-12
    workers: Optional[int] = None   # default: env WORKERS_ENV, else 1
    out_dir: str = "out"

    def validate(self) -> None:
        if self.ratio is not None and self.kappa is not None:
            raise ValueError("give exactly one of --ratio and --kappa")
        if self.n_mean < 0:
            raise ValueError(f"n_mean must be >= 0, got {self.n_mean}")
        if self.n_times < 1:
            raise ValueError(f"n_times must be >= 1, got {self.n_times}")
        if self.n_times > 1 and self.t_max_over_tls <= 0:
            raise ValueError("t_max_over_tls must be > 0 when n_times > 1")
        if self.t_max_over_tls < 0:
            raise ValueError(f"t_max_over_tls must be >= 0, got {self.t_max_over_tls}")
        if self.n_r < 2 or self.n_phi < 4:
            raise ValueError("n_r must be >= 2 and n_phi >= 4")
        if self.workers is not None and self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


def _resolve_workers(value: Optional[int]) -> int:
    if value is not None:
        return value
    env = os.environ.get(WORKERS_ENV, "").strip()
    if env:
        return max(1, int(env))
    return 1


def _load_config_file(path: str) -> Dict[str, object]:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"config file {path} must hold a JSON object")
    # a density manifest doubles as a config (round-trip reproducibility)
    if "config" in data and isinstance(data["config"], dict):
        data = data["config"]
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ValueError(f"unknown config keys: {unknown}")
    return data


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then config file, then explicit flags (flags win)."""
    data = {f.name: f.default for f in fields(RunConfig)}
    if getattr(args, "config", None):
        data.update(_load_config_file(args.config))
    for name in data:
        value = getattr(args, name, None)
        if value is not None:
            data[name] = value
    data["workers"] = _resolve_workers(data["workers"])  # type: ignore[arg-type]
    config = RunConfig(**data)  # type: ignore[arg-type]
    config.validate()
    return config


def _build_model(config: RunConfig) -> Tuple[ModelParams, SpinorPacket]:
    ratio = config.ratio
    if ratio is None and config.kappa is None:
        ratio = 2.0
    params = make_params(
        config.n_mean, kappa=config.kappa, ratio=ratio, weight_tol=config.weight_tol
    )
    spin = SpinDirection(config.spin_theta, config.spin_phi)
    return params, build_packet(params, spin)


def _resolved_grids(config: RunConfig, params: ModelParams) -> RunConfig:
    n_theta = config.n_theta if config.n_theta is not None else 2 * params.l_max + 4
    r_max = (
        config.r_max
        if config.r_max is not None
        else classical_orbit_radius(params.n_mean) + 4.0
    )
    return replace(config, n_theta=n_theta, r_max=r_max)


def _ensure_out_dir(path: str) -> Optional[str]:
    try:
        os.makedirs(path, exist_ok=True)
        probe = os.path.join(path, ".write_probe")
        with open(probe, "w"):
            pass
        os.remove(probe)
    except OSError as exc:
        return f"out_dir not writable: {path}: {exc}"
    return None


def _fmt(x: float) -> str:
    return repr(float(x) + 0.0)  # + 0.0 normalizes -0.0


def _write_csv(path: str, header: Sequence[str], rows) -> int:
    count = 0
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([v if isinstance(v, str) else _fmt(v) for v in row])
            count += 1
    return count


def _time_grid(config: RunConfig, params: ModelParams) -> np.ndarray:
    return np.linspace(0.0, config.t_max_over_tls * params.t_ls, config.n_times)


def cmd_expectations(config: RunConfig) -> int:
    err = _ensure_out_dir(config.out_dir)
    if err:
        print(err, file=sys.stderr)
        return 2
    params, packet = _build_model(config)
    ser = series(packet, _time_grid(config, params), params)
    path = os.path.join(config.out_dir, "expectations.csv")
    n = _write_csv(path, EXPECTATIONS_HEADER, ser.rows())
    print(f"wrote {path} ({n} rows)")
    return 0


def cmd_density(config: RunConfig) -> int:
    err = _ensure_out_dir(config.out_dir)
    if err:
        print(err, file=sys.stderr)
        return 2
    params, packet = _build_model(config)
    config = _resolved_grids(config, params)
    r_grid = np.linspace(0.0, float(config.r_max), config.n_r)
    phi_grid = np.linspace(0.0, 2 * math.pi, config.n_phi, endpoint=False)
    n_snapshots = round(SNAPSHOTS_PER_TLS * config.t_max_over_tls) + 1
    times = [k * params.t_ls / SNAPSHOTS_PER_TLS for k in range(n_snapshots)]
    workers = int(config.workers or 1)

    files = []
    for k, t in enumerate(times):
        snap = propagate(packet, t, params)
        field = plane_density(snap, r_grid, phi_grid, int(config.n_theta), workers, t=t)
        name = f"density_{k:03d}.csv"
        _write_csv(
            os.path.join(config.out_dir, name),
            DENSITY_HEADER,
            (
                (r_grid[i], phi_grid[j], field.d_up[i, j], field.d_down[i, j],
                 field.d_up[i, j] + field.d_down[i, j])
                for i in range(len(r_grid))
                for j in range(len(phi_grid))
            ),
        )
        files.append(name)
    manifest = {
        "command": "density",
        "config": asdict(config),
        "kappa": params.kappa,
        "omega_ls": params.omega_ls,
        "t_ls": params.t_ls,
        "l_max": params.l_max,
        "r_cl": classical_orbit_radius(params.n_mean),
        "snapshot_times": times,
        "files": files,
    }
    manifest_path = os.path.join(config.out_dir, "manifest.json")
    with open(manifest_path, "w", newline="") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {len(files)} snapshots + manifest to {config.out_dir}")
    return 0


def cmd_maxima(config: RunConfig) -> int:
    err = _ensure_out_dir(config.out_dir)
    if err:
        print(err, file=sys.stderr)
        return 2
    params, packet = _build_model(config)
    t_grid = _time_grid(config, params)
    workers = int(config.workers or 1)
    rows = []
    for component in (Spin.UP, Spin.DOWN):
        track = maxima_track(packet, t_grid, component, params, workers=workers)
        for p in track.rows:
            rows.append((p.t, p.t_over_tls, p.component.value, p.theta_star, p.phi_star, p.value))
    path = os.path.join(config.out_dir, "maxima.csv")
    n = _write_csv(path, MAXIMA_HEADER, rows)
    print(f"wrote {path} ({n} rows)")
    return 0


def _check(name: str, error: float, threshold: float) -> Dict[str, object]:
    return {
        "name": name,
        "error": float(error),
        "threshold": float(threshold),
        "pass": bool(error < threshold),
    }


def run_checks(self_test: bool = False) -> List[Dict[str, object]]:
    """Oracle consistency suite; self_test flips the oracle's kappa sign so the
    fidelity and spectrum checks must fail (harness sanity)."""
    checks = []

    # unitarity and j conservation over two pendulum periods
    params = make_params(4.0, ratio=2.0)
    packet = build_packet(params, SpinDirection.down())
    t_grid = np.linspace(0.0, 2 * params.t_ls, 201)
    ser = series(packet, t_grid, params)
    checks.append(_check("unitarity_norm", float(np.max(np.abs(ser.norm - 1.0))), 1e-12))
    j_dev = max(float(np.ptp(getattr(ser, "j")[:, i])) for i in range(3))
    checks.append(_check("j_conservation", j_dev, 1e-10))

    # exact spin revival one full revival period apart
    t_rev = 4 * math.pi / params.kappa
    probe = 0.3123 * params.t_ls
    s_a = spin_expectation(propagate(packet, probe, params))
    s_b = spin_expectation(propagate(packet, probe + t_rev, params))
    rev_err = max(abs(a - b) for a, b in zip(s_a, s_b))
    checks.append(_check("spin_revival", rev_err, 1e-9))

    # dense numeric oracle: small model, consistent truncation on both paths
    params_o = make_params(2.0, ratio=2.0, l_max=8)
    if self_test:
        params_dense = replace(params_o, kappa=-params_o.kappa)
    else:
        params_dense = params_o
    packet_o = build_packet(params_o, SpinDirection.down())
    states = oracle.enumerate_states(params_o.l_max)
    h = oracle.build_hamiltonian(params_dense, states)
    t_half = 0.5 * params_o.t_ls
    psi_num = oracle.cayley_propagate(h, oracle.packet_to_vector(packet_o, states), t_half, 16384)
    psi_spec = oracle.packet_to_vector(propagate(packet_o, t_half, params_o), states)
    checks.append(
        _check("oracle_fidelity", 1.0 - oracle.fidelity(psi_num, psi_spec), 1e-8)
    )

    expected = []
    for l in range(params_o.l_max + 1):
        expected.extend([energy(l, JBranch.PLUS, params_o)] * (2 * l + 2))
        if l >= 1:
            expected.extend([energy(l, JBranch.MINUS, params_o)] * (2 * l))
    eigs = np.linalg.eigvalsh(h)
    spec_err = float(np.max(np.abs(eigs - np.sort(np.asarray(expected)))))
    checks.append(_check("eigenvalue_spectrum", spec_err, 1e-11))

    # analytic observables vs dense operator matrices on an evolved packet
    evolved = propagate(packet_o, 0.37 * params_o.t_ls, params_o)
    vec = oracle.packet_to_vector(evolved, states)
    sx, sy, sz = oracle.spin_matrices(states)
    lx, ly, lz = oracle.orbital_matrices(states)
    s_an = spin_expectation(evolved)
    l_an = orbital_expectation(evolved)
    obs_err = max(
        abs(s_an.x - oracle.expectation(sx, vec)),
        abs(s_an.y - oracle.expectation(sy, vec)),
        abs(s_an.z - oracle.expectation(sz, vec)),
        abs(l_an.x - oracle.expectation(lx, vec)),
        abs(l_an.y - oracle.expectation(ly, vec)),
        abs(l_an.z - oracle.expectation(lz, vec)),
    )
    checks.append(_check("observable_agreement", obs_err, 1e-10))

    # density sum rule on a small grid
    r_cl = classical_orbit_radius(params_o.n_mean)
    field = plane_density(
        packet_o,
        np.linspace(0.0, r_cl + 4.0, 64),
        np.linspace(0.0, 2 * math.pi, 128, endpoint=False),
        2 * params_o.l_max + 4,
    )
    checks.append(_check("density_sum_rule", abs(field.total_mass() - 1.0), 1e-6))
    return checks


def cmd_check(config: RunConfig, self_test: bool) -> int:
    err = _ensure_out_dir(config.out_dir)
    if err:
        print(err, file=sys.stderr)
        return 2
    checks = run_checks(self_test=self_test)
    passed = all(c["pass"] for c in checks)
    report = {"self_test": self_test, "passed": passed, "checks": checks}
    path = os.path.join(config.out_dir, "report.json")
    with open(path, "w", newline="") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    for c in checks:
        status = "PASS" if c["pass"] else "FAIL"
        print(f"{status} {c['name']}: error={c['error']:.3e} threshold={c['threshold']:.1e}")
    print(f"report: {path}")
    return 0 if passed else 1


def _add_common_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", help="JSON config file; explicit flags win")
    sp.add_argument("--n-mean", type=float, dest="n_mean", help="mean oscillator quantum N")
    sp.add_argument("--ratio", type=float, help="omega0 / omega_ls (excludes --kappa)")
    sp.add_argument("--kappa", type=float, help="coupling strength (excludes --ratio)")
    sp.add_argument("--spin-theta", type=float, dest="spin_theta", help="initial spin polar angle")
    sp.add_argument("--spin-phi", type=float, dest="spin_phi", help="initial spin azimuth")
    sp.add_argument(
        "--t-max-tls", "--t-max-over-tls", type=float, dest="t_max_over_tls",
        help="time span in units of T_ls",
    )
    sp.add_argument("--n-times", type=int, dest="n_times", help="number of time samples")
    sp.add_argument("--n-r", type=int, dest="n_r", help="radial grid points")
    sp.add_argument("--n-phi", type=int, dest="n_phi", help="azimuthal grid points")
    sp.add_argument("--n-theta", type=int, dest="n_theta", help="polar quadrature nodes")
    sp.add_argument("--r-max", type=float, dest="r_max", help="radial grid extent")
    sp.add_argument("--weight-tol", type=float, dest="weight_tol", help="Poisson tail cutoff")
    sp.add_argument("--workers", type=int, help="parallel workers (default env or 1)")
    sp.add_argument("--out-dir", dest="out_dir", help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinpendulum",
        description="Spin-orbit pendulum simulator: coherent spinor packets in an "
        "isotropic oscillator with l.s coupling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "expectations": "time series of <s>, <l>, <j> and the norm",
        "density": "theta-integrated density snapshots and manifest",
        "maxima": "subpacket maxima tracks on the orbit sphere",
        "check": "run the numeric-oracle consistency suite",
    }
    for name, text in helps.items():
        sp = sub.add_parser(name, help=text)
        _add_common_flags(sp)
        if name == "check":
            sp.add_argument(
                "--self-test", action="store_true", dest="self_test",
                help="corrupt the oracle's kappa sign; the fidelity check must fail",
            )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.command == "expectations":
        return cmd_expectations(config)
    if args.command == "density":
        return cmd_density(config)
    if args.command == "maxima":
        return cmd_maxima(config)
    if args.command == "check":
        return cmd_check(config, self_test=bool(getattr(args, "self_test", False)))
    parser.error(f"unknown command {args.command}")
    return 2


if __name__ == "__main__":
    sys.exit(main())

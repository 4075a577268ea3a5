"""Command-line front end: figure data, oracle dumps, verification.

Every command writes CSV (comma separated, LF endings, header row, UTF-8)
with values at a fixed significant-digit precision, atomically (temp file
plus rename), so identical configuration and seed give byte-identical
output.  One command per published figure:

  svs-prob    number-state distribution of the squeezed vacuum per level
  cs-prob     number-state distribution of the coherent state per level
  density     coordinate probability density per angular index
  weight      completeness weight curve
  oscillator  trajectory and stationary distribution of the oscillator
  evolve      analytic state against the integration oracle
  verify      full invariant suite (nonzero exit on any failure)
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

import numpy as np

from . import states, verify
from .completeness import weight
from .config import ScenarioConfig, parse_scenario
from .coordrep import default_grid, probability_density
from .dynamics import assemble_A, solve_fg, solve_zeta_xi
from .errors import ParaBoseError
from .fock import AlgebraParams, evolve_trajectory
from .observables import cs_moments
from .oscillator import OscillatorConfig, closed_form_parameters, \
    mean_trajectories, stationary_transition, uncertainty_trajectory
from .states import CsSpec, cs_amplitudes, cs_transition, svs_transition

__all__ = ["main"]


def _fmt(value: float, digits: int) -> str:
    return f"{value:.{digits}g}"


def _write_rows(directory: str, name: str, header: list[str], rows,
                digits: int, plot_script: bool = False) -> str:
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, name)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=f".{name}.", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(
                    v if isinstance(v, str) else _fmt(v, digits)
                    for v in row) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    if plot_script:
        _write_plot_script(directory, name, header)
    return path


def _write_plot_script(directory: str, csv_name: str, header: list[str]) -> None:
    stem = csv_name.rsplit(".", 1)[0]
    path = os.path.join(directory, stem + ".gp")
    lines = [
        "set datafile separator ','",
        "set key autotitle columnhead",
        f"set title '{stem}'",
        "plot " + ", ".join(
            f"'{csv_name}' using 1:{i} with linespoints"
            for i in range(2, len(header) + 1)),
    ]
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=f".{stem}.", text=True)
    with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def _load_config(args) -> ScenarioConfig:
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            cfg = parse_scenario(fh.read(), source=args.config)
    else:
        cfg = ScenarioConfig()
    if args.set:
        cfg = cfg.with_overrides(args.set)
    if args.out:
        cfg = cfg.with_overrides([f"output.dir={args.out}"])
    return cfg


def cmd_svs_prob(cfg: ScenarioConfig, args) -> int:
    digits = cfg["output.digits"]
    zeta = cfg.zeta0()
    n_max = cfg["figure.n_max"]
    for eps in cfg["figure.epsilons"]:
        rows = []
        for n in range(n_max + 1):
            rows.append((float(n), svs_transition(zeta, eps, n)))
            if abs(zeta) == 0.0:
                break  # zero squeeze: every later line vanishes identically
        _write_rows(cfg["output.dir"], f"svs_prob_eps{eps:g}.csv",
                    ["n", "P2n"], rows, digits, args.plot_script)
    return 0


def cmd_cs_prob(cfg: ScenarioConfig, args) -> int:
    digits = cfg["output.digits"]
    zeta, xi = cfg.zeta0(), cfg.xi0()
    n_max = cfg["figure.n_max"]
    for eps in cfg["figure.epsilons"]:
        rows = [(float(n), cs_transition(zeta, xi, eps, n))
                for n in range(n_max + 1)]
        _write_rows(cfg["output.dir"], f"cs_prob_eps{eps:g}.csv",
                    ["n", "Pn"], rows, digits, args.plot_script)
    return 0


def cmd_density(cfg: ScenarioConfig, args) -> int:
    digits = cfg["output.digits"]
    zeta, xi = cfg.zeta0(), cfg.xi0()
    base = cfg.algebra_params()
    for ell in cfg["figure.ells"]:
        spec = CsSpec(zeta=zeta, xi=xi, epsilon=2 * ell + 0.5)
        params = AlgebraParams.from_ell(ell, length_scale=base.length_scale,
                                        hbar=base.hbar)
        grid = default_grid(params, spec, points=cfg["figure.points"])
        wg = probability_density(spec, params, grid)
        rows = [
            (x, psi.real, psi.imag, rho)
            for x, psi, rho in zip(wg.x_values, wg.psi_values, wg.rho_values)
        ]
        _write_rows(cfg["output.dir"], f"density_ell{ell}.csv",
                    ["x", "psi_re", "psi_im", "rho"], rows, digits,
                    args.plot_script)
    return 0


def cmd_weight(cfg: ScenarioConfig, args) -> int:
    digits = cfg["output.digits"]
    levels = [e for e in cfg["figure.epsilons"] if e > 1.0]
    if not levels:
        eps = cfg.epsilon()
        if eps <= 1.0:
            raise ParaBoseError(
                "weight needs a level above 1 (figure.epsilons or "
                "algebra.epsilon)")
        levels = [eps]
    r = np.linspace(0.0, cfg["figure.r_max"], cfg["figure.nodes"])
    for eps in levels:
        w = weight(eps, r)
        rows = list(zip(r.tolist(), np.atleast_1d(w).tolist()))
        _write_rows(cfg["output.dir"], f"weight_eps{eps:g}.csv",
                    ["r", "w"], rows, digits, args.plot_script)
    return 0


def cmd_oscillator(cfg: ScenarioConfig, args) -> int:
    digits = cfg["output.digits"]
    params = cfg.algebra_params()
    ell = params.ell
    if ell is None:
        raise ParaBoseError("oscillator needs an integer level: set algebra.ell")
    omega0 = cfg["schedule.beta"]
    base = OscillatorConfig(omega0=omega0, ell=ell, zeta0=cfg.zeta0(),
                            xi0=cfg.xi0(), l=params.length_scale,
                            hbar=params.hbar)
    times = np.linspace(0.0, cfg["run.t_final"], cfg["run.samples"] + 1)
    rows = []
    for t in times:
        x_m, p_m = mean_trajectories(base, float(t))
        snap = uncertainty_trajectory(base, float(t))
        p = closed_form_parameters(base, float(t))
        m = cs_moments(CsSpec(zeta=p.zeta, xi=p.xi, epsilon=base.epsilon),
                       params)
        rows.append((float(t), x_m, p_m, m.sigma_x, m.sigma_p,
                     snap.heisenberg, snap.schrodinger_robertson))
    _write_rows(cfg["output.dir"], "oscillator_trajectory.csv",
                ["t", "x_mean", "p_mean", "sigma_x", "sigma_p", "heis", "sr"],
                rows, digits, args.plot_script)
    n_max = cfg["figure.n_max"]
    for z0 in cfg["figure.zetas"]:
        sweep = OscillatorConfig(omega0=omega0, ell=ell, zeta0=z0,
                                 xi0=cfg.xi0(), l=params.length_scale,
                                 hbar=params.hbar)
        rows = [(float(n), stationary_transition(sweep, n))
                for n in range(n_max + 1)]
        _write_rows(cfg["output.dir"], f"oscillator_prob_zeta{z0:g}.csv",
                    ["n", "Pn"], rows, digits, args.plot_script)
    return 0


def cmd_evolve(cfg: ScenarioConfig, args) -> int:
    digits = cfg["output.digits"]
    params = cfg.algebra_params()
    sched = cfg.schedule()
    zeta0, xi0 = cfg.zeta0(), cfg.xi0()
    t_final, dt = cfg["run.t_final"], cfg.dt()
    n_samples = cfg["run.samples"]
    traj = solve_zeta_xi(sched, zeta0, xi0, t_final=t_final, dt=dt,
                         epsilon=params.epsilon)
    spec0 = CsSpec(zeta=zeta0, xi=xi0, epsilon=params.epsilon)
    psi0 = cs_amplitudes(spec0, truncation=cfg["run.truncation"])
    times, psis = evolve_trajectory(psi0, sched, t_final, dt, params,
                                    n_samples=n_samples)
    mi = solve_fg(sched, 1.0, zeta0, 0.0, t_final=t_final, dt=dt)
    rows = []
    for t, psi in zip(times, psis):
        p = traj.at(float(t))
        ana = cs_amplitudes(states.cs_spec_from_params(p, params.epsilon),
                            truncation=psi0.truncation)
        fid = abs(complex(np.vdot(ana.amplitudes, psi)))
        a_op = assemble_A(mi, float(t), params, psi0.truncation)
        eig = float(np.linalg.norm(a_op @ psi - xi0 * psi))
        norm_err = abs(float(np.vdot(psi, psi).real) - 1.0)
        rows.append((float(t), fid, eig, norm_err))
    _write_rows(cfg["output.dir"], "evolve_oracle.csv",
                ["t", "fidelity", "eigen_residual", "norm_error"],
                rows, digits, args.plot_script)
    return 0


def cmd_verify(cfg: ScenarioConfig, args) -> int:
    digits = cfg["output.digits"]
    try:
        if args.sabotage:
            states.set_sabotage(True)
        results = verify.run_all(seed=args.seed, config_epsilon=cfg.epsilon())
    finally:
        states.set_sabotage(False)
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        status = {"pass": "PASS", "fail": "FAIL", "excluded": "EXCL"}[r.status]
        lines.append(
            f"{status} {r.name:<{width}} residual {_fmt(r.residual, digits)}"
            f" tolerance {_fmt(r.tolerance, digits)}"
            + (f"  [{r.note}]" if r.note else ""))
    n_fail = sum(1 for r in results if r.failed)
    n_excl = sum(1 for r in results if r.status == "excluded")
    lines.append(f"checks {len(results)} failed {n_fail} excluded {n_excl}")
    report = "\n".join(lines)
    print(report)
    _write_rows(cfg["output.dir"], "verify_report.txt", ["report"],
                [(line,) for line in lines], digits)
    return 1 if n_fail else 0


_COMMANDS = {
    "svs-prob": cmd_svs_prob,
    "cs-prob": cmd_cs_prob,
    "density": cmd_density,
    "weight": cmd_weight,
    "oscillator": cmd_oscillator,
    "evolve": cmd_evolve,
    "verify": cmd_verify,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parabose",
        description="Generalized para-Bose state toolkit: figure data, "
                    "oracle comparisons and the invariant suite.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="scenario file (key = value lines)")
        p.add_argument("--set", action="append", default=[],
                       metavar="KEY=VALUE", help="override a scenario key")
        p.add_argument("--out", help="output directory (overrides output.dir)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized property checks")
        p.add_argument("--plot-script", action="store_true",
                       help="emit a gnuplot script beside each CSV")
        if name == "verify":
            p.add_argument("--sabotage", action="store_true",
                           help="test hook: flip a sign in the squeezed-"
                                "vacuum transition law to prove the suite "
                                "catches mutations")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _load_config(args)
        return _COMMANDS[args.command](cfg, args)
    except ParaBoseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

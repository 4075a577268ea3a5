"""Line-oriented scenario configuration.

A scenario file is ``key = value`` lines with ``#`` comments; the key set is
a closed schema and unknown keys are hard errors carrying the line number.
All numeric parsing is locale-independent (plain ``float``/``int``).

Sections:
  algebra.*   level (epsilon or ell), length scale, hbar
  schedule.*  family plus constant/sinusoidal parameters or a CSV table path
  state.*     squeeze and displacement, rectangular or polar
  run.*       horizon, step, truncation override, sample count
  output.*    directory and emitted precision
  figure.*    sweep lists and grid sizes for the figure-data commands
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .errors import ConfigError
from .fock import AlgebraParams
from .schedules import (
    CoefficientSchedule,
    constant_schedule,
    load_schedule_csv,
    sinusoidal_schedule,
)

__all__ = ["ScenarioConfig", "parse_scenario", "parse_value", "SCHEMA", "DEFAULTS"]


def _parse_float(text: str) -> float:
    return float(text)


def _parse_int(text: str) -> int:
    v = float(text)
    if v != int(v):
        raise ValueError(f"expected an integer, got {text!r}")
    return int(v)


def _parse_str(text: str) -> str:
    return text


def _parse_floats(text: str) -> tuple[float, ...]:
    return tuple(float(p) for p in text.split(",") if p.strip())


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(_parse_int(p) for p in text.split(",") if p.strip())


SCHEMA = {
    "algebra.epsilon": _parse_float,
    "algebra.ell": _parse_int,
    "algebra.l": _parse_float,
    "algebra.hbar": _parse_float,
    "schedule.family": _parse_str,
    "schedule.alpha_re": _parse_float,
    "schedule.alpha_im": _parse_float,
    "schedule.beta": _parse_float,
    "schedule.delta": _parse_float,
    "schedule.alpha_amp_re": _parse_float,
    "schedule.alpha_amp_im": _parse_float,
    "schedule.beta_amp": _parse_float,
    "schedule.omega": _parse_float,
    "schedule.table": _parse_str,
    "state.zeta_re": _parse_float,
    "state.zeta_im": _parse_float,
    "state.zeta_abs": _parse_float,
    "state.zeta_arg": _parse_float,
    "state.xi_re": _parse_float,
    "state.xi_im": _parse_float,
    "state.xi_abs": _parse_float,
    "state.xi_arg": _parse_float,
    "run.t_final": _parse_float,
    "run.dt": _parse_float,
    "run.truncation": _parse_int,
    "run.samples": _parse_int,
    "output.dir": _parse_str,
    "output.digits": _parse_int,
    "figure.epsilons": _parse_floats,
    "figure.ells": _parse_ints,
    "figure.zetas": _parse_floats,
    "figure.n_max": _parse_int,
    "figure.r_max": _parse_float,
    "figure.nodes": _parse_int,
    "figure.points": _parse_int,
}

DEFAULTS = {
    "algebra.epsilon": None,
    "algebra.ell": None,
    "algebra.l": 1.0,
    "algebra.hbar": 1.0,
    "schedule.family": "constant",
    "schedule.alpha_re": 0.0,
    "schedule.alpha_im": 0.0,
    "schedule.beta": 1.0,
    "schedule.delta": 0.0,
    "schedule.alpha_amp_re": 0.0,
    "schedule.alpha_amp_im": 0.0,
    "schedule.beta_amp": 0.0,
    "schedule.omega": 1.0,
    "schedule.table": "",
    "state.zeta_re": 0.0,
    "state.zeta_im": 0.0,
    "state.zeta_abs": None,
    "state.zeta_arg": 0.0,
    "state.xi_re": 0.0,
    "state.xi_im": 0.0,
    "state.xi_abs": None,
    "state.xi_arg": 0.0,
    "run.t_final": 2.0 * math.pi,
    "run.dt": None,
    "run.truncation": None,
    "run.samples": 32,
    "output.dir": "out",
    "output.digits": 12,
    "figure.epsilons": (0.5, 2.5, 4.5, 6.5),
    "figure.ells": (0, 1, 2, 3),
    "figure.zetas": (0.0, 0.25, 0.5, 0.75),
    "figure.n_max": 40,
    "figure.r_max": 0.99,
    "figure.nodes": 400,
    "figure.points": 2048,
}

_FAMILIES = ("constant", "sinusoidal", "tabulated")


def parse_value(key: str, text: str, where: str = "<override>"):
    if key not in SCHEMA:
        raise ConfigError(f"{where}: unknown key {key!r}")
    try:
        return SCHEMA[key](text.strip())
    except ValueError as exc:
        raise ConfigError(f"{where}: bad value for {key!r}: {exc}") from exc


@dataclass(frozen=True)
class ScenarioConfig:
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        merged = dict(DEFAULTS)
        merged.update(self.values)
        object.__setattr__(self, "values", merged)
        family = merged["schedule.family"]
        if family not in _FAMILIES:
            raise ConfigError(
                f"schedule.family must be one of {_FAMILIES}, got {family!r}"
            )

    def __getitem__(self, key: str):
        return self.values[key]

    def with_overrides(self, pairs: list[str]) -> "ScenarioConfig":
        """Apply ``key=value`` strings on top of this configuration."""
        updated = dict(self.values)
        for pair in pairs:
            if "=" not in pair:
                raise ConfigError(f"override {pair!r} is not key=value")
            key, _, text = pair.partition("=")
            key = key.strip()
            updated[key] = parse_value(key, text, where=f"--set {pair!r}")
        return ScenarioConfig(values=updated)

    # -- resolved physics objects --------------------------------------

    def epsilon(self) -> float:
        eps, ell = self["algebra.epsilon"], self["algebra.ell"]
        if eps is None and ell is None:
            return 0.5
        if eps is None:
            return 2 * ell + 0.5
        if ell is not None and eps != 2 * ell + 0.5:
            raise ConfigError(
                f"algebra.epsilon={eps} conflicts with algebra.ell={ell}"
            )
        return float(eps)

    def algebra_params(self) -> AlgebraParams:
        eps = self.epsilon()
        ell = self["algebra.ell"]
        if ell is None:
            half_levels = (eps - 0.5) / 2.0
            if abs(half_levels - round(half_levels)) < 1e-12:
                ell = int(round(half_levels))
        return AlgebraParams(epsilon=eps, ell=ell,
                             length_scale=self["algebra.l"],
                             hbar=self["algebra.hbar"])

    def zeta0(self) -> complex:
        if self["state.zeta_abs"] is not None:
            return cmath.rect(self["state.zeta_abs"], self["state.zeta_arg"])
        return complex(self["state.zeta_re"], self["state.zeta_im"])

    def xi0(self) -> complex:
        if self["state.xi_abs"] is not None:
            return cmath.rect(self["state.xi_abs"], self["state.xi_arg"])
        return complex(self["state.xi_re"], self["state.xi_im"])

    def schedule(self) -> CoefficientSchedule:
        family = self["schedule.family"]
        alpha = complex(self["schedule.alpha_re"], self["schedule.alpha_im"])
        if family == "constant":
            return constant_schedule(alpha, self["schedule.beta"],
                                     self["schedule.delta"])
        if family == "sinusoidal":
            amp = complex(self["schedule.alpha_amp_re"],
                          self["schedule.alpha_amp_im"])
            return sinusoidal_schedule(
                alpha0=alpha, alpha_amp=amp, beta0=self["schedule.beta"],
                beta_amp=self["schedule.beta_amp"],
                delta0=self["schedule.delta"], omega=self["schedule.omega"])
        if not self["schedule.table"]:
            raise ConfigError("schedule.family=tabulated needs schedule.table")
        return load_schedule_csv(self["schedule.table"])

    def dt(self) -> float:
        if self["run.dt"] is not None:
            return float(self["run.dt"])
        return self["run.t_final"] / 4096.0


def parse_scenario(text: str, source: str = "<config>") -> ScenarioConfig:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        key = key.strip()
        values[key] = parse_value(key, val, where=f"{source}:{lineno}")
    return ScenarioConfig(values=values)

"""Truncated para-Bose number basis and the brute-force evolution oracle.

The deformed ladder operators act on number states |n> as

    a |2n>   = sqrt(2n) |2n-1>         a |2n+1>   = sqrt(2(n+eps)) |2n>
    a'|2n>   = sqrt(2(n+eps)) |2n+1>   a'|2n+1>   = sqrt(2(n+1)) |2n+2>

with reflection R = diag((-1)^n), so that [a, a'] = 1 + nu R with
nu = 2 eps - 1.  On an N-dimensional truncation the algebra necessarily
fails on the last rows; invariant checks exclude the truncation boundary.

``evolve_schrodinger`` integrates i d/dt psi = (1/hbar) H(t) psi with fixed-step
classical Runge-Kutta and verifies itself with a halved-step rerun.  It is the
independent oracle against which every closed-form state is checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError, IntegrationError, TruncationError
from .schedules import CoefficientSchedule

__all__ = [
    "AlgebraParams",
    "FockVector",
    "build_ladder",
    "build_hamiltonian",
    "evolve_schrodinger",
    "evolve_trajectory",
    "vacuum_state",
]

NORM_TOL = 1e-8
TAIL_WIDTH = 8
TAIL_TOL = 1e-12
STEP_HALVING_TOL = 1e-8


@dataclass(frozen=True)
class AlgebraParams:
    """Deformation data: ground level eps >= 1/2, optional integer ell with
    eps = 2 ell + 1/2, length scale l and hbar (both default 1)."""

    epsilon: float
    ell: int | None = None
    length_scale: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.epsilon) or self.epsilon < 0.5:
            raise DomainError(f"epsilon must be >= 1/2, got {self.epsilon!r}")
        if self.ell is not None:
            if self.ell != int(self.ell) or self.ell < 0:
                raise DomainError(f"ell must be a nonnegative integer, got {self.ell!r}")
            if self.epsilon != 2 * self.ell + 0.5:
                raise DomainError(
                    f"epsilon={self.epsilon} inconsistent with ell={self.ell} "
                    "(requires epsilon = 2 ell + 1/2)"
                )
        if self.length_scale <= 0:
            raise DomainError("length_scale must be positive")
        if self.hbar <= 0:
            raise DomainError("hbar must be positive")

    @property
    def nu(self) -> float:
        """Wigner deformation parameter nu = 2 eps - 1."""
        return 2.0 * self.epsilon - 1.0

    @classmethod
    def from_ell(cls, ell: int, length_scale: float = 1.0, hbar: float = 1.0):
        return cls(epsilon=2 * int(ell) + 0.5, ell=int(ell),
                   length_scale=length_scale, hbar=hbar)


@dataclass(frozen=True)
class FockVector:
    """Complex amplitude vector on the truncated number basis."""

    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or len(amps) < 2:
            raise ConfigError("FockVector needs a 1-d amplitude array of length >= 2")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def truncation(self) -> int:
        return len(self.amplitudes)

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm_sq() - 1.0) <= tol

    def tail_mass(self, width: int = TAIL_WIDTH) -> float:
        return float(np.sum(np.abs(self.amplitudes[-width:]) ** 2))

    def overlap(self, other: "FockVector") -> complex:
        """<self|other>, zero-padded to the larger truncation."""
        n = min(self.truncation, other.truncation)
        val = complex(np.vdot(self.amplitudes[:n], other.amplitudes[:n]))
        return val

    def padded(self, truncation: int) -> "FockVector":
        if truncation < self.truncation:
            raise TruncationError("cannot shrink a FockVector")
        out = np.zeros(truncation, dtype=complex)
        out[: self.truncation] = self.amplitudes
        return FockVector(out)


def vacuum_state(truncation: int) -> FockVector:
    amps = np.zeros(truncation, dtype=complex)
    amps[0] = 1.0
    return FockVector(amps)


def _ladder_diagonal(params: AlgebraParams, truncation: int) -> np.ndarray:
    # s_k = <k-1| a |k>: sqrt(k) for even k, sqrt(k + nu) for odd k
    k = np.arange(1, truncation, dtype=float)
    s = np.sqrt(np.where(k % 2 == 0, k, k + params.nu))
    return s


def build_ladder(params: AlgebraParams, truncation: int):
    """Dense matrices (a, a_dagger, reflection) at the given truncation."""
    if truncation < 2:
        raise ConfigError(f"truncation must be >= 2, got {truncation}")
    s = _ladder_diagonal(params, truncation)
    a = np.zeros((truncation, truncation), dtype=complex)
    idx = np.arange(truncation - 1)
    a[idx, idx + 1] = s
    a_dagger = a.conj().T.copy()
    reflection = np.diag((-1.0 + 0j) ** np.arange(truncation))
    return a, a_dagger, reflection


def build_hamiltonian(
    params: AlgebraParams,
    alpha: complex,
    beta: float,
    delta: float,
    truncation: int,
) -> np.ndarray:
    """H = (hbar/2)(conj(alpha) a^2 + alpha a'^2) + (hbar beta/2)(a'a + a a')
    + hbar delta, as a dense matrix."""
    a, ad, _ = build_ladder(params, truncation)
    hbar = params.hbar
    a2 = a @ a
    sym = ad @ a + a @ ad
    h = 0.5 * hbar * (np.conj(alpha) * a2 + alpha * a2.conj().T)
    h += 0.5 * hbar * beta * sym
    h += hbar * delta * np.eye(truncation)
    return h


class _Propagator:
    """RK4 stepper for i d/dt psi = (H(t)/hbar) psi (hbar cancels: H carries
    an overall hbar).

    The three Hamiltonian pieces are a second super/subdiagonal and a
    diagonal, so the default fast path applies them as shifted vector
    products; ``dense=True`` keeps full matrix-vector products instead (the
    two must agree bit for bit, which the suite asserts at N = 64).
    """

    def __init__(self, params: AlgebraParams, schedule: CoefficientSchedule,
                 truncation: int, dense: bool = False):
        a, ad, _ = build_ladder(params, truncation)
        self.a2 = a @ a
        self.a2d = self.a2.conj().T.copy()
        self.sym = ad @ a + a @ ad
        self.schedule = schedule
        self.dense = dense
        self.n = truncation
        self.band_up = np.diagonal(self.a2, 2).copy()
        self.band_dn = np.diagonal(self.a2d, -2).copy()
        self.diag = np.diagonal(self.sym).copy()

    def deriv(self, t: float, psi: np.ndarray) -> np.ndarray:
        alpha, beta, delta = self.schedule.coefficients(t)
        if self.dense:
            out = 0.5 * np.conj(alpha) * (self.a2 @ psi)
            out += 0.5 * alpha * (self.a2d @ psi)
            out += 0.5 * beta * (self.sym @ psi)
            out += delta * psi
            return -1j * out
        up = np.zeros(self.n, dtype=complex)
        dn = np.zeros(self.n, dtype=complex)
        up[:-2] = self.band_up * psi[2:]
        dn[2:] = self.band_dn * psi[:-2]
        out = 0.5 * np.conj(alpha) * up
        out += 0.5 * alpha * dn
        out += 0.5 * beta * (self.diag * psi)
        out += delta * psi
        return -1j * out

    def run(self, psi0: np.ndarray, t0: float, t_final: float, n_steps: int,
            sample_steps=None):
        h = (t_final - t0) / n_steps
        psi = psi0.copy()
        samples = {}
        if sample_steps is not None and 0 in sample_steps:
            samples[0] = psi.copy()
        for i in range(n_steps):
            t = t0 + i * h
            self.schedule.check_positive_definite(t)
            k1 = self.deriv(t, psi)
            k2 = self.deriv(t + 0.5 * h, psi + 0.5 * h * k1)
            k3 = self.deriv(t + 0.5 * h, psi + 0.5 * h * k2)
            k4 = self.deriv(t + h, psi + h * k3)
            psi = psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            drift = abs(float(np.vdot(psi, psi).real) - 1.0)
            if drift > NORM_TOL:
                raise IntegrationError(
                    f"norm drift {drift:.3e} exceeds {NORM_TOL} at step {i + 1}; "
                    "reduce dt or enlarge the truncation"
                )
            if sample_steps is not None and (i + 1) in sample_steps:
                samples[i + 1] = psi.copy()
        return psi, samples


def _check_initial(psi0: FockVector):
    if not psi0.is_normalized():
        raise DomainError(
            f"initial state norm^2 = {psi0.norm_sq():.12f} is not 1 within {NORM_TOL}"
        )
    tail = psi0.tail_mass()
    if tail >= TAIL_TOL:
        raise TruncationError(
            f"initial tail mass {tail:.3e} >= {TAIL_TOL}; enlarge the truncation"
        )


def _check_final(psi: np.ndarray):
    tail = float(np.sum(np.abs(psi[-TAIL_WIDTH:]) ** 2))
    if tail >= 1e-10:
        raise TruncationError(
            f"evolution leaked {tail:.3e} probability into the truncation boundary"
        )


def evolve_schrodinger(
    psi0: FockVector,
    schedule: CoefficientSchedule,
    t_final: float,
    dt: float,
    params: AlgebraParams,
    verify_halving: bool = True,
) -> FockVector:
    """Integrate the Schrodinger equation from t=0 to t_final.

    Fixed-step RK4; when ``verify_halving`` a second run at dt/2 must agree
    with the first to 1e-8 in max amplitude difference, otherwise the result
    is rejected.
    """
    if dt <= 0:
        raise ConfigError("dt must be positive")
    _check_initial(psi0)
    if t_final == 0.0:
        return FockVector(psi0.amplitudes.copy())
    n_steps = max(1, int(math.ceil(abs(t_final) / dt)))
    prop = _Propagator(params, schedule, psi0.truncation)
    psi, _ = prop.run(psi0.amplitudes, 0.0, t_final, n_steps)
    if verify_halving:
        psi_half, _ = prop.run(psi0.amplitudes, 0.0, t_final, 2 * n_steps)
        disagreement = float(np.max(np.abs(psi - psi_half)))
        if disagreement > STEP_HALVING_TOL:
            raise IntegrationError(
                f"halved-step rerun disagrees by {disagreement:.3e} "
                f"(> {STEP_HALVING_TOL}); dt too large"
            )
    _check_final(psi)
    return FockVector(psi)


def evolve_trajectory(
    psi0: FockVector,
    schedule: CoefficientSchedule,
    t_final: float,
    dt: float,
    params: AlgebraParams,
    n_samples: int = 32,
    verify_halving: bool = True,
):
    """Evolve and record ``n_samples + 1`` equally spaced states (incl. both
    endpoints).  Returns (times, states) with states of shape
    (n_samples+1, truncation)."""
    if dt <= 0:
        raise ConfigError("dt must be positive")
    if n_samples < 1:
        raise ConfigError("n_samples must be >= 1")
    _check_initial(psi0)
    # round the step count up to a multiple of n_samples so samples sit on steps
    n_steps = max(1, int(math.ceil(abs(t_final) / dt)))
    n_steps = int(math.ceil(n_steps / n_samples)) * n_samples
    stride = n_steps // n_samples
    sample_steps = set(range(0, n_steps + 1, stride))
    prop = _Propagator(params, schedule, psi0.truncation)
    psi, samples = prop.run(psi0.amplitudes, 0.0, t_final, n_steps, sample_steps)
    if verify_halving:
        psi_half, _ = prop.run(psi0.amplitudes, 0.0, t_final, 2 * n_steps)
        disagreement = float(np.max(np.abs(psi - psi_half)))
        if disagreement > STEP_HALVING_TOL:
            raise IntegrationError(
                f"halved-step rerun disagrees by {disagreement:.3e} "
                f"(> {STEP_HALVING_TOL}); dt too large"
            )
    _check_final(psi)
    h = t_final / n_steps
    steps = sorted(samples)
    times = np.array([s * h for s in steps])
    states = np.array([samples[s] for s in steps])
    return times, states

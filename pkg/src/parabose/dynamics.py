"""Integrals of motion for the quadratic para-Bose Hamiltonian.

The Bogoliubov combination A(t) = f a + g a' + phi is an integral of motion
when the coefficients obey

    df/dt = i (beta f - conj(alpha) g),   dg/dt = i (alpha f - beta g),

with phi constant, so mu = |f|^2 - |g|^2 is conserved and
[A, A'] = mu (1 + nu R).  The squeeze zeta = g/f and displacement xi = z/f
parameters obey the equivalent Riccati/linear system

    dzeta/dt = i conj(alpha) zeta^2 - 2 i beta zeta + i alpha,
    dxi/dt   = i (conj(alpha) zeta - beta) xi.

Both solvers are fixed-step RK4 with a mandatory halved-step verification;
the phase integrals accumulated alongside the state use the same RK4 stages,
anchored to zero at t = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError, IntegrationError
from .fock import AlgebraParams, build_ladder
from .schedules import CoefficientSchedule

__all__ = [
    "MotionIntegral",
    "StateParams",
    "StateTrajectory",
    "solve_fg",
    "solve_zeta_xi",
    "assemble_A",
]

MU_DRIFT_TOL = 1e-9
STEP_HALVING_TOL = 1e-8
SQUEEZE_LIMIT = 1.0 - 1e-6
DEFAULT_STEPS = 4096


@dataclass(frozen=True)
class StateParams:
    """Snapshot of the state parameters at one instant.

    ``xi_winding`` counts the full turns the displacement argument has
    accumulated since t = 0: the coherent-state prefactor carries a
    non-integer power of xi, so its principal-branch evaluation must be
    rotated by exp(2 pi i (eps - 1) * winding) to stay on the continuous
    Schrodinger solution once arg xi(t) wraps.
    """

    zeta: complex
    xi: complex
    theta_svs: float  # phase of the squeezed-vacuum family
    theta_cs: float   # phase of the coherent family
    z_eigen: complex | None = None  # conserved eigenvalue z = xi * f, when known
    xi_winding: int = 0


@dataclass(frozen=True)
class MotionIntegral:
    """Trajectories of the Bogoliubov coefficients on the integration grid."""

    times: np.ndarray = field(repr=False)
    f: np.ndarray = field(repr=False)
    g: np.ndarray = field(repr=False)
    phi0: complex
    mu: float            # mu at t = 0
    mu_drift: float      # max |mu(t) - mu(0)| / |mu(0)| over the run

    @property
    def u(self) -> np.ndarray:
        """u(t) = g phi0* - f* phi0 (computed, no downstream consumer)."""
        return self.g * np.conj(self.phi0) - np.conj(self.f) * self.phi0

    def zeta(self) -> np.ndarray:
        return self.g / self.f

    def at(self, t: float) -> tuple[complex, complex]:
        """(f, g) at time t: exact on grid points, linear in between."""
        idx = np.searchsorted(self.times, t)
        for j in (idx - 1, idx, idx + 1):
            if 0 <= j < len(self.times) and abs(self.times[j] - t) <= 1e-12:
                return complex(self.f[j]), complex(self.g[j])
        fr = np.interp(t, self.times, self.f.real) + 1j * np.interp(t, self.times, self.f.imag)
        gr = np.interp(t, self.times, self.g.real) + 1j * np.interp(t, self.times, self.g.imag)
        return complex(fr), complex(gr)


@dataclass(frozen=True)
class StateTrajectory:
    """zeta/xi trajectories plus the accumulated phase integrals.

    ``phase_fg`` is the complex integral of (conj(alpha) zeta - beta) dt, whose
    real part feeds both phases and whose exponential reconstructs f; the
    coherent-family phase is Re(phase_fg) - int(delta), the squeezed-family
    phase is eps * Re(phase_fg) - int(delta).
    """

    times: np.ndarray = field(repr=False)
    zeta: np.ndarray = field(repr=False)
    xi: np.ndarray = field(repr=False)
    phase_fg: np.ndarray = field(repr=False)   # complex J(t)
    delta_integral: np.ndarray = field(repr=False)
    epsilon: float | None = None

    def theta_cs(self) -> np.ndarray:
        return self.phase_fg.real - self.delta_integral

    def theta_svs(self, epsilon: float | None = None) -> np.ndarray:
        eps = self.epsilon if epsilon is None else epsilon
        if eps is None:
            raise ConfigError("theta_svs needs epsilon (pass it or set it on solve)")
        return eps * self.phase_fg.real - self.delta_integral

    def f_reconstructed(self, f0: complex = 1.0) -> np.ndarray:
        """f(t) = f0 exp(-i int (conj(alpha) zeta - beta) dt)."""
        return f0 * np.exp(-1j * self.phase_fg)

    def _index(self, t: float) -> int | None:
        idx = np.searchsorted(self.times, t)
        for j in (idx - 1, idx, idx + 1):
            if 0 <= j < len(self.times) and abs(self.times[j] - t) <= 1e-12:
                return int(j)
        return None

    def xi_windings(self) -> np.ndarray:
        """Integer turns of arg xi(t) relative to the principal value."""
        angles = np.angle(self.xi)
        return np.round((np.unwrap(angles) - angles) / (2.0 * math.pi)).astype(int)

    def at(self, t: float, epsilon: float | None = None) -> StateParams:
        eps = self.epsilon if epsilon is None else epsilon
        j = self._index(t)
        windings = self.xi_windings()
        if j is not None:
            zeta, xi = complex(self.zeta[j]), complex(self.xi[j])
            jre, dint = complex(self.phase_fg[j]), float(self.delta_integral[j])
            wind = int(windings[j])
        else:
            def _li(arr):
                return (np.interp(t, self.times, arr.real)
                        + 1j * np.interp(t, self.times, arr.imag))
            zeta, xi = complex(_li(self.zeta)), complex(_li(self.xi))
            jre = complex(_li(self.phase_fg))
            dint = float(np.interp(t, self.times, self.delta_integral))
            left = max(0, min(len(self.times) - 1,
                              int(np.searchsorted(self.times, t)) - 1))
            wind = int(windings[left])
        theta_cs = jre.real - dint
        theta_svs = (eps * jre.real - dint) if eps is not None else math.nan
        return StateParams(zeta=zeta, xi=xi, theta_svs=theta_svs,
                           theta_cs=theta_cs, z_eigen=None, xi_winding=wind)


def _rk4_complex(deriv, y0, t_final: float, n_steps: int, guard=None):
    """Fixed-step RK4 over a tuple of complex scalars; records every step.

    Scalar arithmetic on purpose: these systems have 2-4 components and a
    numpy round-trip per stage would dominate the cost.
    """
    h = t_final / n_steps
    y = tuple(complex(v) for v in y0)
    dim = len(y)
    out = np.empty((n_steps + 1, dim), dtype=complex)
    out[0] = y
    sixth = h / 6.0
    for i in range(n_steps):
        t = i * h
        k1 = deriv(t, y)
        k2 = deriv(t + 0.5 * h, tuple(y[j] + 0.5 * h * k1[j] for j in range(dim)))
        k3 = deriv(t + 0.5 * h, tuple(y[j] + 0.5 * h * k2[j] for j in range(dim)))
        k4 = deriv(t + h, tuple(y[j] + h * k3[j] for j in range(dim)))
        y = tuple(
            y[j] + sixth * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j])
            for j in range(dim)
        )
        if guard is not None:
            guard(t + h, y)
        out[i + 1] = y
    return out


def _resolve_steps(t_final: float, dt: float | None) -> int:
    if t_final == 0:
        raise ConfigError("t_final must be nonzero")
    if dt is None:
        return DEFAULT_STEPS
    if dt <= 0:
        raise ConfigError("dt must be positive")
    return max(1, int(math.ceil(abs(t_final) / dt)))


def solve_fg(
    schedule: CoefficientSchedule,
    f0: complex,
    g0: complex,
    phi0: complex = 0.0,
    t_final: float = 2.0 * math.pi,
    dt: float | None = None,
    verify_halving: bool = True,
) -> MotionIntegral:
    """Integrate the Bogoliubov coefficient ODEs and certify mu conservation."""
    f0, g0, phi0 = complex(f0), complex(g0), complex(phi0)
    mu0 = abs(f0) ** 2 - abs(g0) ** 2
    if abs(abs(f0) - abs(g0)) == 0.0:
        raise DomainError("|f0| = |g0| makes the inverse Bogoliubov map singular")
    n_steps = _resolve_steps(t_final, dt)

    def deriv(t, y):
        alpha, beta, _ = schedule.coefficients(t)
        f, g = y
        return (1j * (beta * f - alpha.conjugate() * g),
                1j * (alpha * f - beta * g))

    def guard(t, y):
        schedule.check_positive_definite(t)
        f, g = y
        if abs(abs(f) - abs(g)) < 1e-14 * max(abs(f), 1.0):
            raise IntegrationError(f"|f| = |g| crossing at t={t}")

    traj = _rk4_complex(deriv, [f0, g0], t_final, n_steps, guard)
    if verify_halving:
        traj_half = _rk4_complex(deriv, [f0, g0], t_final, 2 * n_steps)
        disagreement = float(np.max(np.abs(traj[-1] - traj_half[-1])))
        if disagreement > STEP_HALVING_TOL:
            raise IntegrationError(
                f"halved-step rerun disagrees by {disagreement:.3e}; dt too large"
            )
    f, g = traj[:, 0], traj[:, 1]
    mu_t = np.abs(f) ** 2 - np.abs(g) ** 2
    drift = float(np.max(np.abs(mu_t - mu0))) / abs(mu0)
    if drift > MU_DRIFT_TOL:
        raise IntegrationError(
            f"mu drift {drift:.3e} exceeds {MU_DRIFT_TOL}; reduce dt"
        )
    times = np.linspace(0.0, t_final, n_steps + 1)
    return MotionIntegral(times=times, f=f, g=g, phi0=phi0, mu=mu0, mu_drift=drift)


def solve_zeta_xi(
    schedule: CoefficientSchedule,
    zeta0: complex,
    xi0: complex,
    t_final: float = 2.0 * math.pi,
    dt: float | None = None,
    epsilon: float | None = None,
    verify_halving: bool = True,
) -> StateTrajectory:
    """Integrate the squeeze/displacement ODEs with phase accumulation.

    The state vector carries (zeta, xi, J, int delta) through the same RK4
    stages, J being the complex integral of (conj(alpha) zeta - beta) dt.
    Errors out if |zeta| reaches 1 - 1e-6 (series convergence lost).
    """
    zeta0, xi0 = complex(zeta0), complex(xi0)
    if abs(zeta0) >= 1.0:
        raise DomainError(f"|zeta0| must be < 1, got {abs(zeta0)}")
    n_steps = _resolve_steps(t_final, dt)

    def deriv(t, y):
        alpha, beta, delta = schedule.coefficients(t)
        zeta, xi = y[0], y[1]
        ac = alpha.conjugate()
        dzeta = 1j * ac * zeta * zeta - 2j * beta * zeta + 1j * alpha
        dxi = 1j * (ac * zeta - beta) * xi
        return (dzeta, dxi, ac * zeta - beta, complex(delta))

    def guard(t, y):
        schedule.check_positive_definite(t)
        if abs(y[0]) >= SQUEEZE_LIMIT:
            raise IntegrationError(f"squeeze blow-up: |zeta| -> 1 at t={t}")

    y0 = [zeta0, xi0, 0.0, 0.0]
    traj = _rk4_complex(deriv, y0, t_final, n_steps, guard)
    if verify_halving:
        traj_half = _rk4_complex(deriv, y0, t_final, 2 * n_steps)
        disagreement = float(np.max(np.abs(traj[-1] - traj_half[-1])))
        if disagreement > STEP_HALVING_TOL:
            raise IntegrationError(
                f"halved-step rerun disagrees by {disagreement:.3e}; dt too large"
            )
    times = np.linspace(0.0, t_final, n_steps + 1)
    return StateTrajectory(
        times=times,
        zeta=traj[:, 0],
        xi=traj[:, 1],
        phase_fg=traj[:, 2],
        delta_integral=traj[:, 3].real.copy(),
        epsilon=epsilon,
    )


def assemble_A(
    mi: MotionIntegral,
    t: float,
    params: AlgebraParams,
    truncation: int,
) -> np.ndarray:
    """Integral-of-motion matrix A(t) = f(t) a + g(t) a' + phi0."""
    f, g = mi.at(t)
    a, ad, _ = build_ladder(params, truncation)
    return f * a + g * ad + mi.phi0 * np.eye(truncation)

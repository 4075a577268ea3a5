"""Closed-form squeezed-vacuum and coherent states on the para-Bose basis.

Squeezed-vacuum family (even sector only):

    c_{2n} = (1-|zeta|^2)^(eps/2) e^{i theta} (-zeta)^n
             sqrt(Gamma(n+eps) / (n! Gamma(eps)))

Coherent family (eigenstates of the transformed lowering operator, all
parities):

    c_{2n}   =  pre sqrt(n!) (-zeta)^n L_n^{eps-1}(xi^2/(2 zeta)) / sqrt(Gamma(n+eps))
    c_{2n+1} =  pre (xi/sqrt 2) sqrt(n!) (-zeta)^n L_n^{eps}(xi^2/(2 zeta))
                / sqrt(Gamma(n+eps+1))

with prefactor

    pre = (xi/sqrt 2)^(eps-1)
          sqrt((1-|zeta|^2) / (I_{eps-1}(y) + I_eps(y)))
          exp( conj(zeta) xi^2 / (2 (1-|zeta|^2)) + i theta ),
    y = |xi|^2 / (1-|zeta|^2).

The combination (-zeta)^n L_n^alpha(xi^2/(2 zeta)) is evaluated through a
rescaled three-term recurrence that is exact for every |zeta| < 1 and reduces
termwise to the zeta -> 0 limit (xi^2/2)^n / n!, so no argument ever diverges.
The transition distribution P_n = |c_n|^2 has the closed parity-split form
implemented in ``cs_transition``; as printed it is algebraically identical to
|c_n|^2 (the exponential in it is exactly |exp(conj(zeta) xi^2 / ...)|^2, and
its inner index labels the parity pair n = 2m or n = 2m+1).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError, TruncationError
from .fock import FockVector
from .specfun import bessel_i, log_gamma

__all__ = [
    "SvsSpec",
    "CsSpec",
    "svs_spec_from_params",
    "cs_spec_from_params",
    "svs_amplitudes",
    "svs_transition",
    "svs_overlap",
    "cs_amplitudes",
    "cs_transition",
    "cs_overlap",
    "mean_reflection",
]

SVS_TAIL_BOUND = 1e-14
CS_TAIL_BOUND = 1e-16
MAX_PAIRS = 200_000
RENORM_WARN_TOL = 1e-9

# Test hook for mutation detection: flips a sign inside the squeezed-vacuum
# transition formula so the verification suite demonstrably fails.
_SABOTAGE_TRANSITION = False


def set_sabotage(enabled: bool) -> None:
    global _SABOTAGE_TRANSITION
    _SABOTAGE_TRANSITION = bool(enabled)


def _check_state_inputs(zeta: complex, epsilon: float) -> None:
    if not math.isfinite(epsilon) or epsilon < 0.5:
        raise DomainError(f"epsilon must be >= 1/2, got {epsilon!r}")
    if abs(zeta) > 1.0 - 1e-6:
        raise DomainError(f"|zeta| must stay below 1 - 1e-6, got {abs(zeta)}")


@dataclass(frozen=True)
class SvsSpec:
    """Squeezed-vacuum state data: squeeze zeta, level eps, phase theta."""

    zeta: complex
    epsilon: float
    theta: float = 0.0

    def __post_init__(self):
        _check_state_inputs(self.zeta, self.epsilon)


@dataclass(frozen=True)
class CsSpec:
    """Coherent state data: squeeze zeta, displacement xi, level eps, phase."""

    zeta: complex
    xi: complex
    epsilon: float
    theta: float = 0.0

    def __post_init__(self):
        _check_state_inputs(self.zeta, self.epsilon)
        if not (math.isfinite(abs(self.xi))):
            raise DomainError(f"xi must be finite, got {self.xi!r}")


def svs_spec_from_params(params, epsilon: float) -> SvsSpec:
    """Squeezed-vacuum spec from a dynamics snapshot (its phase is exact)."""
    return SvsSpec(zeta=params.zeta, epsilon=epsilon, theta=params.theta_svs)


def cs_spec_from_params(params, epsilon: float) -> CsSpec:
    """Coherent spec from a dynamics snapshot, branch corrected.

    Folds the displacement-argument winding into the phase,
    theta = theta_cs + 2 pi (eps - 1) winding, so the constructor's
    principal-branch prefactor lands on the continuous Schrodinger solution
    even after arg xi(t) wraps.
    """
    winding = getattr(params, "xi_winding", 0)
    theta = params.theta_cs + 2.0 * math.pi * (epsilon - 1.0) * winding
    return CsSpec(zeta=params.zeta, xi=params.xi, epsilon=epsilon, theta=theta)


def _gamma_ratio_sqrt(n: int, epsilon: float) -> float:
    """sqrt(n! / Gamma(n + eps))."""
    return math.exp(0.5 * (log_gamma(n + 1.0) - log_gamma(n + epsilon)))


def _arg_from_above(x: complex) -> float:
    """Principal argument; the negative real axis is approached from above."""
    if x.imag == 0.0 and x.real < 0.0:
        return math.pi
    return math.atan2(x.imag, x.real)


def _negligible_xi(xi: complex) -> bool:
    """True when |xi|^2 underflows: the displacement acts as exactly zero."""
    return xi == 0.0 or abs(xi) ** 2 == 0.0


# ---------------------------------------------------------------------------
# Bessel helpers on the real axis (normalization and parity mean).
# Beyond y ~ 600 the unscaled values overflow, so the large-argument series
# for exp(-y) I_kappa(y) sqrt(2 pi y) takes over.

_ASYMPTOTIC_Y = 600.0
_SMALL_Y = 1e-6


def _i_scaled_series(kappa: float, y: float, terms: int = 12) -> float:
    """Asymptotic series S with I_kappa(y) ~ e^y / sqrt(2 pi y) * S."""
    mu = 4.0 * kappa * kappa
    s = 1.0
    term = 1.0
    for k in range(1, terms):
        term *= -(mu - (2 * k - 1) ** 2) / (8.0 * k * y)
        s += term
    return s


def _i_small_pair(epsilon: float, y: float) -> tuple[float, float]:
    """Leading small-argument factors (s_lo, t) with
    I_{eps-1}(y) = (y/2)^(eps-1)/Gamma(eps) * s_lo and I_eps = I_{eps-1} * t;
    relative error O(y^4), and no underflow however small y is."""
    q = 0.25 * y * y
    s_lo = 1.0 + q / epsilon + q * q / (2.0 * epsilon * (epsilon + 1.0))
    s_hi = 1.0 + q / (epsilon + 1.0) \
        + q * q / (2.0 * (epsilon + 1.0) * (epsilon + 2.0))
    t = 0.5 * y / epsilon * s_hi / s_lo
    return s_lo, t


def _log_i_sum(epsilon: float, y: float) -> float:
    """ln( I_{eps-1}(y) + I_eps(y) ) for real y > 0, under/overflow-safe."""
    if y < _SMALL_Y:
        s_lo, t = _i_small_pair(epsilon, y)
        return ((epsilon - 1.0) * math.log(0.5 * y) - log_gamma(epsilon)
                + math.log(s_lo) + math.log1p(t))
    if y <= _ASYMPTOTIC_Y:
        total = bessel_i(epsilon - 1.0, y).real + bessel_i(epsilon, y).real
        return math.log(total)
    s = _i_scaled_series(epsilon - 1.0, y) + _i_scaled_series(epsilon, y)
    return y - 0.5 * math.log(2.0 * math.pi * y) + math.log(s)


def _i_parity_ratio(epsilon: float, y: float) -> float:
    """( I_{eps-1}(y) - I_eps(y) ) / ( I_{eps-1}(y) + I_eps(y) ), y > 0."""
    if y < _SMALL_Y:
        _, t = _i_small_pair(epsilon, y)
        return (1.0 - t) / (1.0 + t)
    if y <= _ASYMPTOTIC_Y:
        lo = bessel_i(epsilon - 1.0, y).real
        hi = bessel_i(epsilon, y).real
        return (lo - hi) / (lo + hi)
    lo = _i_scaled_series(epsilon - 1.0, y)
    hi = _i_scaled_series(epsilon, y)
    return (lo - hi) / (lo + hi)


# ---------------------------------------------------------------------------
# Scaled Laguerre columns.

def _scaled_laguerre_column(n_pairs: int, alpha: float, zeta: complex,
                            x: complex) -> np.ndarray:
    """M_n = (-zeta)^n L_n^alpha(x / zeta) for n < n_pairs, where x = xi^2/2.

    Recurrence (n+1) M_{n+1} = (x - zeta (2n+1+alpha)) M_n - zeta^2 (n+alpha)
    M_{n-1}; at zeta = 0 it degenerates to M_n = x^n / n! termwise, so the
    column is continuous across the zero-squeeze point.
    """
    out = np.empty(n_pairs, dtype=complex)
    out[0] = 1.0
    if n_pairs == 1:
        return out
    out[1] = x - zeta * (1.0 + alpha)
    z2 = zeta * zeta
    for n in range(1, n_pairs - 1):
        out[n + 1] = ((x - zeta * (2 * n + 1 + alpha)) * out[n]
                      - z2 * (n + alpha) * out[n - 1]) / (n + 1)
    return out


def _svs_pairs(zeta_abs: float, epsilon: float, tail: float = SVS_TAIL_BOUND) -> int:
    """Smallest pair count whose geometric tail bound drops below ``tail``."""
    q = zeta_abs * zeta_abs
    if q == 0.0:
        return 1
    term = 1.0  # P_{2n} / (1-|zeta|^2)^eps, starting at n = 0
    n = 0
    while n < MAX_PAIRS:
        ratio = q * (n + epsilon) / (n + 1.0)
        term *= ratio
        n += 1
        if ratio < 1.0 and term / (1.0 - ratio) < tail:
            return n + 1
    raise TruncationError(
        f"no admissible truncation below {2 * MAX_PAIRS} for |zeta|={zeta_abs}"
    )


def _pair_masses(n_pairs: int, zeta: complex, xi: complex,
                 epsilon: float) -> np.ndarray:
    """Unnormalized per-pair masses |c_2n|^2 + |c_{2n+1}|^2 (prefactor off)."""
    x = 0.5 * xi * xi
    col_e = _scaled_laguerre_column(n_pairs, epsilon - 1.0, zeta, x)
    col_o = _scaled_laguerre_column(n_pairs, epsilon, zeta, x)
    w = np.empty(n_pairs)
    for n in range(n_pairs):
        w[n] = (abs(col_e[n]) * _gamma_ratio_sqrt(n, epsilon)) ** 2 \
            + 0.5 * abs(xi) ** 2 * (abs(col_o[n])
                                    * _gamma_ratio_sqrt(n, epsilon + 1.0)) ** 2
    return w


def _cs_pairs(zeta: complex, xi: complex, epsilon: float,
              tail: float = CS_TAIL_BOUND) -> int:
    """Minimal pair count with relative tail mass below ``tail``.

    Scans the true per-pair masses over a working window that keeps growing
    until the trailing decay is safely geometric (asymptotic ratio
    |zeta|^2 < 1) and the geometric closure beyond the window is negligible;
    the window ratio is smoothed over eight pairs because the Laguerre
    factors oscillate through near-zeros.
    """
    zeta, xi = complex(zeta), complex(xi)
    zeta_abs, xi_abs = abs(zeta), abs(xi)
    lam = 0.5 * xi_abs * xi_abs / max(1.0 - zeta_abs, 0.05)
    guess = 16 + _svs_pairs(zeta_abs, epsilon) \
        + int(lam + 12.0 * math.sqrt(lam + 4.0) + 24.0)
    while True:
        guess = min(guess, MAX_PAIRS)
        w = _pair_masses(guess, zeta, xi, epsilon)
        total = float(np.sum(w))
        tip = max(float(np.max(w[-8:])), 1e-320)
        ratio = min((w[-1] / w[-9]) ** 0.125 if w[-9] > 0 else 0.0, 0.999)
        ratio = max(ratio, zeta_abs**2)
        beyond = tip * ratio / (1.0 - ratio)
        if (ratio < 0.95 and beyond < tail * total) or guess >= MAX_PAIRS:
            break
        guess = int(guess * 1.5) + 16
    if guess >= MAX_PAIRS and beyond >= tail * total:
        raise TruncationError(
            f"no admissible truncation below {2 * MAX_PAIRS} pairs for "
            f"|zeta|={zeta_abs}, |xi|={xi_abs}"
        )
    remaining = beyond
    n_pairs = guess
    for n in range(guess - 1, 0, -1):
        remaining += w[n]
        if remaining / total >= tail:
            n_pairs = n + 2
            break
    else:
        n_pairs = 2
    return min(max(n_pairs, 2), MAX_PAIRS)


def _resolve_pairs(auto_pairs: int, truncation: int | None) -> tuple[int, int]:
    """(n_pairs, N) honoring an upward-only truncation override."""
    n_auto = min(auto_pairs, MAX_PAIRS)
    if truncation is None:
        n_pairs = n_auto
        return n_pairs, 2 * n_pairs
    if truncation % 2 != 0:
        raise ConfigError(f"truncation must be even, got {truncation}")
    if truncation < 2 * n_auto:
        raise TruncationError(
            f"requested truncation {truncation} is below the analytic tail "
            f"requirement {2 * n_auto}; overrides may only enlarge it"
        )
    return truncation // 2, truncation


def _finalize(amps: np.ndarray, what: str) -> FockVector:
    norm_sq = float(np.sum(np.abs(amps) ** 2))
    residual = abs(norm_sq - 1.0)
    if residual > RENORM_WARN_TOL:
        warnings.warn(
            f"{what} normalization residual {residual:.3e} exceeds "
            f"{RENORM_WARN_TOL}; renormalizing (possible special-function "
            "regression)",
            RuntimeWarning,
            stacklevel=3,
        )
        amps = amps / math.sqrt(norm_sq)
    return FockVector(amps)


# ---------------------------------------------------------------------------
# Squeezed-vacuum family.

def _svs_coefficient_column(zeta: complex, epsilon: float,
                            n_pairs: int) -> np.ndarray:
    """(-zeta)^n sqrt(Gamma(n+eps)/(n! Gamma(eps))) for n < n_pairs.

    The even-sector amplitude kernel, missing only the common factor
    (1-|zeta|^2)^(eps/2) e^{i theta}; completeness quadratures read it
    directly because that factor cancels their radial weight exactly.
    """
    out = np.empty(n_pairs, dtype=complex)
    c = 1.0 + 0.0j
    for n in range(n_pairs):
        out[n] = c
        c *= -zeta * math.sqrt((n + epsilon) / (n + 1.0))
    return out


def svs_amplitudes(spec: SvsSpec, truncation: int | None = None) -> FockVector:
    """Amplitude vector of the squeezed-vacuum state; odd entries vanish."""
    zeta, eps = complex(spec.zeta), float(spec.epsilon)
    n_pairs, n_total = _resolve_pairs(_svs_pairs(abs(zeta), eps), truncation)
    amps = np.zeros(n_total, dtype=complex)
    pref = (1.0 - abs(zeta) ** 2) ** (eps / 2.0) * np.exp(1j * spec.theta)
    amps[0:2 * n_pairs:2] = pref * _svs_coefficient_column(zeta, eps, n_pairs)
    return _finalize(amps, "svs_amplitudes")


def svs_transition(zeta: complex, epsilon: float, n: int) -> float:
    """P_{2n} = (1-|zeta|^2)^eps Gamma(n+eps) |zeta|^(2n) / (n! Gamma(eps))."""
    _check_state_inputs(zeta, epsilon)
    if n < 0 or n != int(n):
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    n = int(n)
    q = abs(zeta) ** 2
    sign = +1.0 if not _SABOTAGE_TRANSITION else -1.0
    base = (1.0 - sign * q) ** epsilon
    if q == 0.0:
        return float(base) if n == 0 else 0.0
    log_term = (log_gamma(n + epsilon) - log_gamma(n + 1.0) - log_gamma(epsilon)
                + n * math.log(q))
    # probabilities may poke past 1 by an ulp of the log-gamma evaluation
    return min(float(base * math.exp(log_term)), 1.0)


def svs_overlap(spec1: SvsSpec, spec2: SvsSpec,
                phase_integral: float | None = None) -> complex:
    """<spec1|spec2> in closed form.

    The dynamical phase is exp(i eps * phase_integral) with phase_integral =
    int Re[alpha (zeta2* - zeta1*)] dt; when omitted it is inferred from the
    stored state phases (theta2 - theta1), which equals the same quantity for
    two states evolved under one schedule.
    """
    if spec1.epsilon != spec2.epsilon:
        raise DomainError("svs_overlap requires equal epsilon")
    eps = spec1.epsilon
    z1, z2 = complex(spec1.zeta), complex(spec2.zeta)
    base = ((1.0 - abs(z1) ** 2) ** (eps / 2.0)
            * (1.0 - abs(z2) ** 2) ** (eps / 2.0)
            * (1.0 - np.conj(z1) * z2) ** (-eps))
    if phase_integral is None:
        phase = np.exp(1j * (spec2.theta - spec1.theta))
    else:
        phase = np.exp(1j * eps * phase_integral)
    return complex(base * phase)


# ---------------------------------------------------------------------------
# Coherent family.

def _cs_prefactor(spec: CsSpec) -> complex:
    """Common amplitude prefactor, assembled in log space (overflow-safe)."""
    zeta, xi, eps = complex(spec.zeta), complex(spec.xi), float(spec.epsilon)
    one = 1.0 - abs(zeta) ** 2
    y = abs(xi) ** 2 / one
    w = np.conj(zeta) * xi * xi / (2.0 * one)
    log_mag = ((eps - 1.0) * math.log(abs(xi) / math.sqrt(2.0))
               + 0.5 * math.log(one)
               - 0.5 * _log_i_sum(eps, y)
               + w.real)
    arg = (eps - 1.0) * _arg_from_above(xi) + w.imag + spec.theta
    return math.exp(log_mag) * complex(math.cos(arg), math.sin(arg))


def cs_amplitudes(spec: CsSpec, truncation: int | None = None) -> FockVector:
    """Amplitude vector of the generalized coherent state.

    At xi = 0 the odd sector vanishes identically and the even amplitudes
    reduce (with the coherent-family phase) to the squeezed-vacuum series;
    the xi -> 0 limit is taken along the positive real axis.
    """
    zeta, xi, eps = complex(spec.zeta), complex(spec.xi), float(spec.epsilon)
    if _negligible_xi(xi):
        svs = svs_amplitudes(SvsSpec(zeta=zeta, epsilon=eps, theta=spec.theta),
                             truncation)
        return svs
    n_pairs, n_total = _resolve_pairs(_cs_pairs(zeta, xi, eps),
                                      truncation)
    x = 0.5 * xi * xi
    m_even = _scaled_laguerre_column(n_pairs, eps - 1.0, zeta, x)
    m_odd = _scaled_laguerre_column(n_pairs, eps, zeta, x)
    pre = _cs_prefactor(spec)
    amps = np.zeros(n_total, dtype=complex)
    odd_factor = xi / math.sqrt(2.0)
    for n in range(n_pairs):
        amps[2 * n] = pre * m_even[n] * _gamma_ratio_sqrt(n, eps)
        amps[2 * n + 1] = (pre * odd_factor * m_odd[n]
                           * _gamma_ratio_sqrt(n, eps + 1.0))
    return _finalize(amps, "cs_amplitudes")


def cs_transition(zeta: complex, xi: complex, epsilon: float, n: int) -> float:
    """P_n = |c_n|^2 of the coherent state, parity split in closed form."""
    _check_state_inputs(zeta, epsilon)
    if n < 0 or n != int(n):
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    n = int(n)
    zeta, xi = complex(zeta), complex(xi)
    if _negligible_xi(xi):
        if n % 2 == 1:
            return 0.0
        return svs_transition(zeta, epsilon, n // 2)
    m, parity = divmod(n, 2)
    one = 1.0 - abs(zeta) ** 2
    y = abs(xi) ** 2 / one
    log_k = ((epsilon - 1.0) * math.log(0.5 * abs(xi) ** 2)
             + math.log(one)
             + (np.conj(zeta) * xi * xi).real / one
             - _log_i_sum(epsilon, y))
    x = 0.5 * xi * xi
    if parity == 0:
        col = _scaled_laguerre_column(m + 1, epsilon - 1.0, zeta, x)
        log_term = log_gamma(m + 1.0) - log_gamma(m + epsilon)
        return min(float(abs(col[m]) ** 2 * math.exp(log_k + log_term)), 1.0)
    col = _scaled_laguerre_column(m + 1, epsilon, zeta, x)
    log_term = (log_gamma(m + 1.0) - log_gamma(m + epsilon + 1.0)
                + math.log(0.5 * abs(xi) ** 2))
    return min(float(abs(col[m]) ** 2 * math.exp(log_k + log_term)), 1.0)


def cs_overlap(spec1: CsSpec, spec2: CsSpec) -> complex:
    """<spec1|spec2> via the bilinear Laguerre series, truncated at the
    squeeze tail bound.  Zero-displacement cases are taken as limits."""
    if spec1.epsilon != spec2.epsilon:
        raise DomainError("cs_overlap requires equal epsilon")
    eps = float(spec1.epsilon)
    z1, x1 = complex(spec1.zeta), complex(spec1.xi)
    z2, x2 = complex(spec2.zeta), complex(spec2.xi)
    if _negligible_xi(x1) and _negligible_xi(x2):
        base = ((1.0 - abs(z1) ** 2) ** (eps / 2.0)
                * (1.0 - abs(z2) ** 2) ** (eps / 2.0)
                * (1.0 - np.conj(z1) * z2) ** (-eps))
        return complex(base * np.exp(1j * (spec2.theta - spec1.theta)))
    if _negligible_xi(x1) or _negligible_xi(x2):
        # mixed limit: fall back to the amplitude series
        n = max(2 * _cs_pairs(z1, x1, eps),
                2 * _cs_pairs(z2, x2, eps))
        v1 = cs_amplitudes(spec1, truncation=n)
        v2 = cs_amplitudes(spec2, truncation=n)
        return v1.overlap(v2)
    n_pairs = max(_cs_pairs(z1, x1, eps),
                  _cs_pairs(z2, x2, eps))
    m1e = _scaled_laguerre_column(n_pairs, eps - 1.0, z1, 0.5 * x1 * x1)
    m1o = _scaled_laguerre_column(n_pairs, eps, z1, 0.5 * x1 * x1)
    m2e = _scaled_laguerre_column(n_pairs, eps - 1.0, z2, 0.5 * x2 * x2)
    m2o = _scaled_laguerre_column(n_pairs, eps, z2, 0.5 * x2 * x2)
    odd_w = np.conj(x1) * x2 / 2.0
    total = 0.0 + 0.0j
    for n in range(n_pairs):
        even = np.conj(m1e[n]) * m2e[n] * _gamma_ratio_sqrt(n, eps) ** 2
        odd = (odd_w * np.conj(m1o[n]) * m2o[n]
               * _gamma_ratio_sqrt(n, eps + 1.0) ** 2)
        total += even + odd
    return complex(np.conj(_cs_prefactor(spec1)) * _cs_prefactor(spec2) * total)


def mean_reflection(zeta: complex, xi: complex, epsilon: float) -> float:
    """Parity expectation of the coherent state,

        (I_{eps-1}(y) - I_eps(y)) / (I_{eps-1}(y) + I_eps(y)),

    y = |xi|^2/(1-|zeta|^2); exactly 1 at xi = 0 (pure even state)."""
    _check_state_inputs(zeta, epsilon)
    if _negligible_xi(complex(xi)):
        return 1.0
    y = abs(xi) ** 2 / (1.0 - abs(zeta) ** 2)
    return float(_i_parity_ratio(float(epsilon), y))

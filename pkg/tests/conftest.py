import math

import numpy as np
import pytest

from parabose.coordrep import vacuum_wavefunction
from parabose.specfun import laguerre, log_gamma


def fock_basis_wavefunction(n, ell, l, x):
    """<x|n> built from the vacuum through the Laguerre ladder identities.

    Independent coordinate-space oracle: even states carry
    L_m^(2l-1/2)(x^2/l^2), odd states an extra x/l and L_m^(2l+1/2).
    """
    eps = 2 * ell + 0.5
    x = np.asarray(x, dtype=float)
    psi0 = vacuum_wavefunction(ell, l, x)
    m, parity = divmod(n, 2)
    lag = np.array([laguerre(m, 2 * ell - 0.5 + parity, xx**2 / l**2)
                    for xx in x])
    if parity == 0:
        pref = (-1) ** m * math.exp(
            0.5 * (log_gamma(m + 1.0) + log_gamma(eps) - log_gamma(m + eps)))
        return pref * lag * psi0
    pref = (-1) ** m * math.exp(
        0.5 * (log_gamma(m + 1.0) + log_gamma(eps) - log_gamma(m + eps + 1.0)))
    return pref * (x / l) * lag * psi0


@pytest.fixture
def rng():
    return np.random.default_rng(1234)

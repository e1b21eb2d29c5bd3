"""Shared test helpers.

The Crank-Nicolson stepper below is a deliberately independent numerical
route: a banded implicit finite-difference integrator with none of the
closed-form machinery under test.  Tests use it to evolve initial data and
compare against analytic superpositions.  It lives in the test tree on
purpose -- the library itself never time-steps.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_banded

from matterwave.units import UnitSystem, natural


def crank_nicolson_evolve(
    psi0: np.ndarray,
    x: np.ndarray,
    dt: float,
    nsteps: int,
    potential=None,
    units: UnitSystem = None,
    left_value=None,
) -> np.ndarray:
    """Evolve i hbar psi_t = -hbar^2/(2m) psi_xx + V psi on a uniform grid.

    Unconditionally stable, norm-preserving (for real V), second order in
    dt and dx.  Hard-wall (psi = 0) boundaries: callers must keep the
    support away from the edges or want the walls.  ``left_value(t)``, if
    given, drives the first node as a time-dependent Dirichlet boundary
    (an emitting aperture at x[0]).
    """
    units = units or natural()
    x = np.asarray(x, dtype=float)
    dx = x[1] - x[0]
    n = x.size
    v = np.zeros(n, dtype=complex)
    if potential is not None:
        v = np.asarray(potential(x), dtype=complex)

    # i hbar (psi^{n+1} - psi^n)/dt = H (psi^{n+1} + psi^n)/2
    # (1 + i dt H / (2 hbar)) psi^{n+1} = (1 - i dt H / (2 hbar)) psi^n
    kin = units.hbar**2 / (2.0 * units.mass * dx**2)
    diag = 2.0 * kin + v
    off = -kin
    lam = 1j * dt / (2.0 * units.hbar)

    ab_plus = np.zeros((3, n), dtype=complex)
    ab_plus[0, 1:] = lam * off
    ab_plus[1, :] = 1.0 + lam * diag
    ab_plus[2, :-1] = lam * off
    if left_value is not None:
        # identity row pins the boundary node to the prescribed value
        ab_plus[1, 0] = 1.0
        ab_plus[0, 1] = 0.0

    psi = np.asarray(psi0, dtype=complex).copy()
    t = 0.0
    for _ in range(nsteps):
        rhs = (1.0 - lam * diag) * psi
        rhs[:-1] -= lam * off * psi[1:]
        rhs[1:] -= lam * off * psi[:-1]
        t += dt
        if left_value is not None:
            rhs[0] = left_value(t)
        psi = solve_banded((1, 1), ab_plus, rhs)
    return psi

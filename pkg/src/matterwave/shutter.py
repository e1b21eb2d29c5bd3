"""Sudden-release and sudden-blocking transients of a monochromatic beam.

A beam confined to x < 0 and released at t = 0 develops temporal
interference fringes at a fixed detector -- the free-space analogue of
Fresnel diffraction at a straight edge.  This module provides:

* the released-beam solution for a shutter of arbitrary reflectivity,
* the universal Fresnel edge-density profile and its fringe geometry
  (principal extrema, main-fringe width, both located by search),
* the complementary problem -- an established beam suddenly blocked by a
  perfect or partially transparent (delta) mirror,
* repeated block-and-release cycles (projective chopping), whose
  transmission dies out as the chopping rate grows.

All closed forms are term sums from :mod:`matterwave.wavekit`; densities
follow from sampling them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar
from scipy.signal import fftconvolve

from .specfun import fresnel, free_kernel
from .units import UnitSystem, natural
from .wavekit import MoshinskyWave, PiecewiseWave, PlaneWave, WaveField, WaveSum

__all__ = [
    "ShutterSpec",
    "shutter_wave",
    "fresnel_edge_density",
    "theta_coordinate",
    "edge_extrema_theta",
    "principal_extrema",
    "fringe_width",
    "fringe_constant",
    "chop_hard_mirror",
    "chop_delta_mirror",
    "zeno_chop",
]


@dataclass(frozen=True)
class ShutterSpec:
    """Beam wavenumber and shutter reflection amplitude."""

    k: float
    R: complex = 0.0
    units: UnitSystem = None

    def __post_init__(self):
        if self.units is None:
            object.__setattr__(self, "units", natural())
        if self.k <= 0:
            raise ValueError("beam wavenumber k must be positive")
        if abs(self.R) > 1 + 1e-12:
            raise ValueError("|R| must not exceed 1")


def shutter_wave(spec: ShutterSpec, x=None, t=None):
    """Released-beam solution for a shutter of reflectivity R.

    The state prepared for t < 0 is (e^{ikx} + R e^{-ikx}) Theta(-x); after
    release each half evolves into its own edge wave.  Returns the two-term
    closed form; pass x and t to get the evaluated array instead.
    """
    wave = WaveSum(
        (
            MoshinskyWave(coeff=1.0, k=spec.k),
            MoshinskyWave(coeff=spec.R, k=-spec.k),
        )
    )
    if x is not None and t is not None:
        return wave(x, t, spec.units)
    return wave


# ----------------------------------------------------------------------
# fringe geometry of the totally absorbing shutter
# ----------------------------------------------------------------------


def fresnel_edge_density(theta):
    """Universal edge density (1/2)[(1/2 + C)^2 + (1/2 + S)^2].

    This is |psi|^2 of the released beam expressed in the similarity
    coordinate theta; it tends to 1 deep inside the beam (theta -> +inf),
    to 0 in the shadow (theta -> -inf), and equals 1/4 at the classical
    front theta = 0.
    """
    c, s = fresnel(theta)
    return 0.5 * ((0.5 + c) ** 2 + (0.5 + s) ** 2)


def theta_coordinate(x, k, t, units: UnitSystem = None):
    """Similarity coordinate theta = sqrt(hbar t/(m pi)) (k - m x/(hbar t))."""
    u = units or natural()
    if t <= 0:
        raise ValueError("t must be positive")
    return np.sqrt(u.hbar * t / (u.mass * np.pi)) * (
        k - u.mass * np.asarray(x) / (u.hbar * t)
    )


def _first_extremum(f, theta_lo, theta_hi, kind, step=0.01):
    """Leftmost local extremum of f on a coarse grid, golden refined."""
    sign = -1.0 if kind == "max" else 1.0
    grid = np.arange(theta_lo, theta_hi + step, step)
    vals = sign * f(grid)
    for i in range(1, len(grid) - 1):
        if vals[i] < vals[i - 1] and vals[i] <= vals[i + 1]:
            res = minimize_scalar(
                lambda th: sign * f(th),
                bracket=(grid[i - 1], grid[i], grid[i + 1]),
                method="golden",
                options={"xtol": 1e-12},
            )
            return float(res.x)
    raise RuntimeError(f"no local {kind} of the edge density in the scan range")


def edge_extrema_theta():
    """(theta_max, theta_min): first maximum and first minimum of the
    edge density, located by coarse scan plus golden-section refinement."""
    tmax = _first_extremum(fresnel_edge_density, 0.0, 6.0, "max")
    tmin = _first_extremum(fresnel_edge_density, tmax, tmax + 6.0, "min")
    return tmax, tmin


def principal_extrema(k, t, units: UnitSystem = None):
    """Positions (x_max, x_min) of the first density maximum/minimum.

    Both trail the classical front x = hbar k t/m by an offset growing as
    sqrt(t): x = hbar k t/m - sqrt(pi hbar t/m) * theta_extremum.
    """
    u = units or natural()
    if t <= 0:
        raise ValueError("t must be positive")
    tmax, tmin = edge_extrema_theta()
    front = u.hbar * k * t / u.mass
    scale = np.sqrt(np.pi * u.hbar * t / u.mass)
    return front - scale * tmax, front - scale * tmin


def fringe_constant():
    """Width of the main fringe in the similarity coordinate.

    Distance between the two crossings of the edge density with the
    incident-beam density 1 that bracket the first maximum.
    """
    tmax, tmin = edge_extrema_theta()
    g = lambda th: fresnel_edge_density(th) - 1.0
    left = brentq(g, 0.0, tmax, xtol=1e-13)
    right = brentq(g, tmax, tmin, xtol=1e-13)
    return right - left


def fringe_width(k, t, units: UnitSystem = None):
    """Main-fringe width c sqrt(pi hbar t/m); c is k-independent."""
    u = units or natural()
    if t <= 0:
        raise ValueError("t must be positive")
    return fringe_constant() * np.sqrt(np.pi * u.hbar * t / u.mass)


# ----------------------------------------------------------------------
# sudden blocking of an established beam
# ----------------------------------------------------------------------


def chop_hard_mirror(k, x=None, t=None, units: UnitSystem = None):
    """Plane wave e^{ikx} cut at t = 0 by a perfect mirror at x = 0.

    Each half-line then evolves with a hard-wall node at the origin; odd
    images give a two-term closed form per side.  The left side builds up
    the standing wave 2i sin(kx) e^{-i hbar k^2 t/(2m)}; the right side is
    the decaying remnant of the severed beam.
    """
    left = WaveSum(
        (
            MoshinskyWave(coeff=1.0, k=k),
            MoshinskyWave(coeff=-1.0, k=k, sx=-1.0),
        )
    )
    right = WaveSum(
        (
            MoshinskyWave(coeff=1.0, k=-k, sx=-1.0),
            MoshinskyWave(coeff=-1.0, k=-k),
        )
    )
    wave = PiecewiseWave(((-np.inf, 0.0, left), (0.0, np.inf, right)))
    if x is not None and t is not None:
        u = units or natural()
        return wave(x, t, u)
    return wave


def chop_delta_mirror(k, kappa, x=None, t=None, units: UnitSystem = None):
    """Plane wave cut at t = 0 by a delta mirror of strength kappa.

    kappa = m eta / hbar^2 for a barrier eta delta(x).  The solution is the
    undisturbed beam minus four edge waves (two per incident direction,
    one at the beam wavenumber and one at the mirror's evanescent pole
    -i kappa); it relaxes to the stationary delta-scattering state with
    T = k/(k + i kappa), R = -kappa/(kappa - i k).  kappa = 0 returns the
    free beam; kappa -> inf recovers the perfect mirror (T -> 0, R -> -1).
    """
    if kappa < 0:
        raise ValueError("kappa must be nonnegative")

    def side(sx):
        terms = [PlaneWave(coeff=1.0, k=k)]
        for nu in (+1.0, -1.0):
            c = kappa / (kappa - 1j * nu * k)
            terms.append(MoshinskyWave(coeff=-c, k=nu * k, sx=sx))
            terms.append(MoshinskyWave(coeff=+c, k=-1j * kappa, sx=sx))
        return WaveSum(tuple(terms))

    wave = PiecewiseWave(((-np.inf, 0.0, side(-1.0)), (0.0, np.inf, side(+1.0))))
    if x is not None and t is not None:
        u = units or natural()
        return wave(x, t, u)
    return wave


def delta_mirror_amplitudes(k, kappa):
    """Stationary transmission and reflection amplitudes of a delta mirror.

    T = k/(k + i kappa) and R = -kappa/(kappa - i k), the unique pair
    satisfying continuity (1 + R = T), the derivative jump
    T' - (1 - R)' = 2 kappa T at the origin, and the hard-mirror limit
    R -> -1 as kappa -> inf.
    """
    return k / (k + 1j * kappa), -kappa / (kappa - 1j * k)


# ----------------------------------------------------------------------
# projective chopping
# ----------------------------------------------------------------------


def zeno_chop(initial: WaveField, dt: float, n_steps: int, pad_factor: float = 4.0):
    """Alternate free flight over dt with projection onto x < 0.

    Returns (norm_history, pi_distribution): the surviving norm after each
    of the ``n_steps`` cycles (starting at 1), and the removal-rate record
    (t_i, Pi_i) with Pi the per-cycle removed norm normalized to a unit
    time integral -- the arrival-time distribution of the removed flux.

    The free step is a discrete convolution with the exact free kernel on
    a grid padded to ``pad_factor`` times the initial support, so nothing
    wraps around; probability reaching the pad edge simply leaves.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if n_steps < 0:
        raise ValueError("n_steps must be nonnegative")
    u = initial.units
    x = initial.x
    dx = x[1] - x[0]
    if not np.allclose(np.diff(x), dx, rtol=1e-9):
        raise ValueError("zeno_chop needs a uniform grid")
    psi = initial.psi[-1].copy()
    norm0 = np.trapezoid(np.abs(psi) ** 2, x)
    if not np.isfinite(norm0) or abs(norm0 - 1.0) > 1e-6:
        raise ValueError("initial state must be normalized (trapezoid norm 1)")
    if np.any((x >= 0) & (np.abs(psi) ** 2 > 1e-12)):
        raise ValueError("initial state must be supported on x < 0")
    # the kernel chirp must be well resolved by the grid; at the guard
    # boundary the windowed-kernel step is still good to ~1e-5 per step
    width = np.sqrt(u.hbar * dt / u.mass)
    if dx > width / 6.0:
        raise ValueError(
            f"grid too coarse for dt: need dx <= sqrt(hbar dt/m)/6 = {width / 6.0:.3g}"
        )

    # pad symmetrically to pad_factor times the occupied span
    span = x[-1] - x[0]
    n_pad = int(np.ceil((pad_factor - 1.0) * span / 2.0 / dx))
    x_work = np.concatenate(
        [x[0] - dx * np.arange(n_pad, 0, -1), x, x[-1] + dx * np.arange(1, n_pad + 1)]
    )
    work = np.zeros(x_work.size, dtype=complex)
    work[n_pad : n_pad + x.size] = psi

    xi = dx * np.arange(-(x_work.size - 1), x_work.size)
    kernel = free_kernel(xi, dt, hbar=u.hbar, mass=u.mass) * dx
    # beyond |xi| = pi hbar dt/(m dx) the kernel chirp is aliased and the
    # sampled sum no longer self-cancels; window the kernel inside that
    # limit (flat to half-Nyquist displacement -- velocities up to
    # pi hbar/(2 m dx), ample for any resolved state) with a smooth
    # roll-off whose residual ringing falls off faster than any power of
    # the ~0.1 hbar dt/(m dx^2) chirp oscillations it spans
    w_max = 0.9 * np.pi * u.hbar * dt / (u.mass * dx)
    if w_max < np.abs(xi[-1]):
        aw = np.abs(xi)
        flat = 0.55 * w_max
        win = np.where(aw <= flat, 1.0, 0.0)
        ramp = (aw > flat) & (aw < w_max)
        if np.any(ramp):
            # C-infinity (Planck) taper: truncation ringing decays faster
            # than any power of the taper's oscillation count
            s = (aw[ramp] - flat) / (w_max - flat)
            with np.errstate(over="ignore"):
                win[ramp] = 1.0 / (1.0 + np.exp(1.0 / (1.0 - s) - 1.0 / s))
        kernel = kernel * win

    right = x_work >= 0
    norms = [1.0]
    removed = []
    for _ in range(n_steps):
        work = fftconvolve(work, kernel, mode="same")
        lost = np.trapezoid(np.abs(work[right]) ** 2, x_work[right])
        work[right] = 0.0
        surv = np.trapezoid(np.abs(work) ** 2, x_work)
        removed.append(lost)
        norms.append(surv)

    removed = np.asarray(removed)
    times = dt * np.arange(1, n_steps + 1)
    total = removed.sum()
    pi = removed / (total * dt) if total > 0 else np.zeros_like(removed)
    return np.asarray(norms), (times, pi)

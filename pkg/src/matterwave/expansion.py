"""Free expansion of trap eigenstates.

Sudden release from a hard-wall box or a harmonic trap, the bifurcation
of excited box states into momentum branches, half-line (radial s-wave)
expansion via image charges, and the short-time series for a wave with a
sharp boundary.

Hard-wall box
-------------
An eigenstate sqrt(2/L) sin(n pi x / L) released at t = 0 evolves into a
four-term superposition of cutoff plane waves,

    psi_n(x, t) = (1 / 2i) sqrt(2/L) sum_{s = +-1} s [
        e^{i s k_n L} M(x - L, s k_n, t) - M(x, s k_n, t) ],

with k_n = n pi / L.  At t = 0 each M reduces to a sharply cut plane
wave and the bracket collapses to the eigenstate; at later times the two
momentum components +-hbar k_n separate, splitting the density of every
excited state into two branches (the ground state alone stays unimodal,
its momentum distribution being peaked at k = 0).  The crossover is set
by the time a particle with momentum hbar k_n needs to traverse half the
box,

    t_n = m L / (2 hbar k_n) = m L^2 / (2 n pi hbar).

Harmonic trap
-------------
Sudden turn-off of a harmonic trap evolves eigenstates by a pure scaling
law: with b(t) = sqrt(1 + omega^2 t^2) and tau(t) = arctan(omega t) /
omega,

    psi_n(x, t) = b^{-1/2} phi_n(x / b) exp(i m x^2 bdot / (2 hbar b)
                                           - i (n + 1/2) omega tau),

so |psi_n(x, t)|^2 = |phi_n(x/b)|^2 / b exactly: the density profile is
stretched but never restructured, and every width grows linearly once
t >> 1/omega.

Both release protocols can start from the same energy: a box level n and
a trap level n-1 are isoenergetic when omega = hbar n^2 pi^2 /
((2n - 1) m L^2), which makes the contrast between box branching and
harmonic self-similarity a pure effect of the initial *shape*.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import eval_hermite

from .units import UnitSystem, natural
from .wavekit import MoshinskyWave, WaveSum

__all__ = [
    "BoxState",
    "HOState",
    "box_evolve",
    "ho_evolve",
    "matched_frequency",
    "bifurcation_time",
    "detect_bifurcation",
    "box_momentum_density",
    "radial_swave_evolve",
    "short_time_boundary",
]


# ----------------------------------------------------------------------
# trap eigenstates
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class BoxState:
    """Hard-wall box eigenstate sqrt(2/L) sin(n pi x / L) on [0, L]."""

    n: int
    L: float
    units: UnitSystem = None

    def __post_init__(self):
        if self.units is None:
            object.__setattr__(self, "units", natural())
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 1):
            raise ValueError(f"box quantum number must be an integer >= 1, got {self.n}")
        if not self.L > 0:
            raise ValueError(f"box length must be positive, got {self.L}")

    @property
    def k_n(self) -> float:
        """Wavenumber n pi / L of the two momentum components."""
        return self.n * np.pi / self.L

    @property
    def energy(self) -> float:
        """Eigenenergy hbar^2 k_n^2 / (2 m)."""
        u = self.units
        return (u.hbar * self.k_n) ** 2 / (2.0 * u.mass)


@dataclass(frozen=True)
class HOState:
    """Harmonic-trap eigenstate, quantum number n >= 0, frequency omega."""

    n: int
    omega: float
    units: UnitSystem = None

    def __post_init__(self):
        if self.units is None:
            object.__setattr__(self, "units", natural())
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 0):
            raise ValueError(f"trap quantum number must be an integer >= 0, got {self.n}")
        if not self.omega > 0:
            raise ValueError(f"trap frequency must be positive, got {self.omega}")

    @property
    def energy(self) -> float:
        """Eigenenergy hbar omega (n + 1/2)."""
        return self.units.hbar * self.omega * (self.n + 0.5)

    def profile(self, x):
        """Normalized stationary profile phi_n(x) (real Hermite-Gaussian).

        phi_n(x) = (m omega / (pi hbar))^{1/4} / sqrt(2^n n!)
                   * e^{-m omega x^2 / (2 hbar)} * H_n(sqrt(m omega / hbar) x)
        """
        u = self.units
        a = u.mass * self.omega / u.hbar  # inverse squared oscillator length
        x = np.asarray(x, dtype=float)
        norm = (a / np.pi) ** 0.25 / np.sqrt(
            2.0**self.n * float(math.factorial(self.n))
        )
        return norm * np.exp(-0.5 * a * x**2) * eval_hermite(self.n, np.sqrt(a) * x)


# ----------------------------------------------------------------------
# box release
# ----------------------------------------------------------------------


def box_evolve(state: BoxState) -> WaveSum:
    """Exact free evolution of a hard-wall box eigenstate released at t = 0.

    Returns the four-term cutoff-plane-wave superposition

        (1 / 2i) sqrt(2/L) sum_{s = +-1} s [ e^{i s k_n L} M(x - L, s k_n, t)
                                             - M(x, s k_n, t) ],

    a :class:`~matterwave.wavekit.WaveSum` evaluable at any (x, t >= 0).
    At t = 0 it reproduces sqrt(2/L) sin(n pi x / L) on [0, L] exactly
    (hard zeros outside, half-amplitude convention at the walls).
    """
    L, kn = state.L, state.k_n
    c = np.sqrt(2.0 / L) / 2j
    terms = []
    for s in (+1.0, -1.0):
        phase = np.exp(1j * s * kn * L)
        terms.append(MoshinskyWave(coeff=c * s * phase, k=s * kn, x0=-L))
        terms.append(MoshinskyWave(coeff=-c * s, k=s * kn))
    return WaveSum(tuple(terms))


def matched_frequency(n: int, L: float, units: UnitSystem = None) -> float:
    """Trap frequency making HO level n-1 isoenergetic with box level n.

    hbar omega (n - 1/2) = hbar^2 n^2 pi^2 / (2 m L^2)  gives

        omega = hbar n^2 pi^2 / ((2 n - 1) m L^2).
    """
    units = units or natural()
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValueError(f"box quantum number must be an integer >= 1, got {n}")
    if not L > 0:
        raise ValueError(f"box length must be positive, got {L}")
    return units.hbar * n**2 * np.pi**2 / ((2 * n - 1) * units.mass * L**2)


def bifurcation_time(n: int, L: float, units: UnitSystem = None) -> float:
    """Branch-separation time scale t_n = m L^2 / (2 n pi hbar).

    The time for a particle moving at the state's momentum hbar k_n to
    cross half the box; beyond it the density of any excited box state
    (n >= 2) has split into two counter-propagating branches.
    """
    units = units or natural()
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValueError(f"box quantum number must be an integer >= 1, got {n}")
    if not L > 0:
        raise ValueError(f"box length must be positive, got {L}")
    return units.mass * L**2 / (2.0 * n * np.pi * units.hbar)


def detect_bifurcation(
    state: BoxState,
    t_span: tuple = (0.05, 4.0),
    n_scan: int = 120,
    n_x: int = 4001,
) -> float:
    """Measure the branch-split time from the evolving density profile.

    Scans t (over ``t_span`` in units of the formula time t_n) and
    returns the first time at which the density along the box-center
    trajectory — the stationary mean position x = L/2, tracked at the
    scale of one density fringe L/n so that the eigenstate's own nodes
    do not trigger — drops below half of the branch maxima (the global
    profile maximum), refined by bisection.  Returns ``nan`` if the
    profile never splits in the scanned window; the ground state never
    does.
    """
    u = state.units
    wave = box_evolve(state)
    tn = bifurcation_time(state.n, state.L, u)
    xc = 0.5 * state.L
    fringe = state.L / state.n
    v_branch = u.hbar * state.k_n / u.mass

    def split(t):
        half_width = state.L + v_branch * t
        x = np.linspace(xc - half_width, xc + half_width, n_x)
        rho = np.abs(wave(x, t, u)) ** 2
        central = np.abs(x - xc) <= fringe
        return np.max(rho[central]) - 0.5 * np.max(rho)

    ts = np.linspace(t_span[0] * tn, t_span[1] * tn, n_scan)
    prev_t = None
    for t in ts:
        if split(t) < 0.0:
            if prev_t is None:
                return float(t)
            lo, hi = prev_t, t
            for _ in range(50):
                mid = 0.5 * (lo + hi)
                if split(mid) < 0.0:
                    hi = mid
                else:
                    lo = mid
            return float(0.5 * (lo + hi))
        prev_t = t
    return float("nan")


def box_momentum_density(n: int, L: float, k) -> np.ndarray:
    """Momentum distribution |phi_tilde_n(k)|^2 of a box eigenstate.

        |phi_tilde_n(k)|^2 = (2 pi n^2 / L^3) [1 - (-1)^n cos(k L)]
                             / (k^2 - k_n^2)^2,

    normalized to unit integral over k.  The singularities at k = +-k_n
    are removable; within |k -+ k_n| L < 1e-4 the value is evaluated by
    the Taylor limit of the numerator (the distribution tends to
    L / (4 pi) at the peaks, independent of n).
    """
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValueError(f"box quantum number must be an integer >= 1, got {n}")
    if not L > 0:
        raise ValueError(f"box length must be positive, got {L}")
    k_in = np.asarray(k, dtype=float)
    scalar = k_in.ndim == 0
    k = np.atleast_1d(k_in)
    kn = n * np.pi / L
    pref = 2.0 * np.pi * n**2 / L**3
    out = np.empty(k.shape, dtype=float)

    # Distance to the nearer removable singularity decides the branch.
    delta = np.where(np.abs(k - kn) <= np.abs(k + kn), k - kn, k + kn)
    near = np.abs(delta) * L < 1e-4

    far = ~near
    if np.any(far):
        kf = k[far]
        num = 1.0 - (-1.0) ** n * np.cos(kf * L)
        out[far] = pref * num / (kf**2 - kn**2) ** 2
    if np.any(near):
        # 1 - (-1)^n cos((k_n + d) L) = 1 - cos(d L)
        #                             = (d L)^2/2 (1 - s^2/12 + s^4/360),
        # s = d L, while (k^2 - k_n^2)^2 = d^2 (k + nearer k_n)^2 exactly.
        d = delta[near]
        s = d * L
        other = k[near] - d  # +-k_n, whichever is nearer
        num_over_d2 = 0.5 * L**2 * (1.0 - s**2 / 12.0 + s**4 / 360.0)
        out[near] = pref * num_over_d2 / (k[near] + other) ** 2
    return float(out[0]) if scalar else out


# ----------------------------------------------------------------------
# harmonic-trap release
# ----------------------------------------------------------------------


def ho_evolve(state: HOState, x, t):
    """Free evolution of a harmonic-trap eigenstate after sudden turn-off.

    Pure scaling law: with b = sqrt(1 + omega^2 t^2), bdot = omega^2 t / b
    and tau = arctan(omega t) / omega,

        psi_n(x, t) = b^{-1/2} phi_n(x / b)
                      * exp(i m x^2 bdot / (2 hbar b) - i (n + 1/2) omega tau),

    so the density is the initial one stretched by b: structure moves,
    none is created or destroyed.
    """
    if t < 0:
        raise ValueError(f"release dynamics defined for t >= 0, got t = {t}")
    u = state.units
    w = state.omega
    b = np.sqrt(1.0 + (w * t) ** 2)
    bdot = w**2 * t / b
    tau = np.arctan(w * t) / w
    x = np.asarray(x, dtype=float)
    phase = np.exp(
        1j * u.mass * x**2 * bdot / (2.0 * u.hbar * b)
        - 1j * (state.n + 0.5) * w * tau
    )
    out = state.profile(x / b) / np.sqrt(b) * phase
    return out if out.shape else complex(out)


# ----------------------------------------------------------------------
# half-line (radial s-wave) release
# ----------------------------------------------------------------------


def radial_swave_evolve(psi0_radial, r, t, units: UnitSystem = None):
    """Half-line evolution with a hard wall at the origin, by images.

        psi_s(r, t) = psi_0(r, t) - psi_0(-r, t),   r > 0,

    where ``psi0_radial`` is the *free* (whole-line) evolution of the
    initial radial function extended by zero to r < 0 — any wave object
    or callable psi(x, t[, units]).  The image term enforces the node at
    r = 0, so psi_s solves the half-line problem with Dirichlet wall.
    """
    units = units or natural()
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("radial coordinate must satisfy r >= 0")

    def ev(xx):
        try:
            return psi0_radial(xx, t, units)
        except TypeError:
            return psi0_radial(xx, t)

    out = ev(r) - ev(-r)
    return out if out.shape else complex(out)


# ----------------------------------------------------------------------
# short-time series at a sharp boundary
# ----------------------------------------------------------------------


def short_time_boundary(psi0_derivatives, x, t, units: UnitSystem = None):
    """Short-time wavefunction beyond a sharp boundary from boundary data.

    For an initial state confined to y < 0 with a sharp edge at y = 0,
    the wave transmitted to x > 0 at small times is controlled entirely
    by the boundary values: with eta = sqrt(hbar t / 2 m) / x (valid for
    eta << 1, i.e. hbar t / (2 m x^2) << 1),

        psi(x, t) = sqrt(i/pi) e^{i m x^2 / (2 hbar t)} * [
              eta * psi(0)
            - 2 i eta^3 * (psi(0) + x psi'(0))
            - 4 eta^5  * (3 (psi(0) + x psi'(0)) + x^2 psi''(0)) ],

    truncated after ``len(psi0_derivatives)`` terms (at most three).
    ``psi0_derivatives`` lists psi(0-), psi'(0-), psi''(0-).  The
    leading behavior is t^{1/2} whenever the boundary value psi(0-) is
    nonzero; if it vanishes the series starts at eta^3 ~ t^{3/2}.
    """
    units = units or natural()
    derivs = list(psi0_derivatives)
    if not 1 <= len(derivs) <= 3:
        raise ValueError(
            "supply one to three boundary derivatives (value, slope, curvature)"
        )
    order = len(derivs)
    while len(derivs) < 3:
        derivs.append(0.0)
    d0, d1, d2 = (complex(d) for d in derivs)

    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("the series describes the region beyond the edge: x > 0")
    if not t > 0:
        raise ValueError(f"short-time series requires t > 0, got t = {t}")

    eta = np.sqrt(units.hbar * t / (2.0 * units.mass)) / x
    series = eta * d0
    if order >= 2:
        series = series - 2j * eta**3 * (d0 + x * d1)
    if order >= 3:
        series = series - 4.0 * eta**5 * (3.0 * (d0 + x * d1) + x**2 * d2)
    pref = np.sqrt(1j / np.pi) * np.exp(
        1j * units.mass * x**2 / (2.0 * units.hbar * t)
    )
    out = pref * series
    return out if out.shape else complex(out)

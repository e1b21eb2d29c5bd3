"""Phase-space views of transient matter waves.

Wigner quasi-probability distributions for the sharply cut plane wave
and for hard-wall box eigenstates, their free classical-trajectory
evolution, a discrete Wigner transform for sampled fields (the oracle
for the closed forms), and the symplectic tomogram of the released
beam.

Conventions
-----------
The Wigner function used throughout is

    W(x, p) = (1 / pi hbar) Integral dy  psi*(x + y) psi(x - y)
                                          e^{2 i p y / hbar},

whose marginals are Integral dp W = |psi(x)|^2 and Integral dx W =
|psi_tilde(p/hbar)|^2 / hbar.  For the (non-normalizable) cut plane
wave W carries dimensions of 1/momentum; exports record that in their
metadata.  The symplectic tomogram is the Radon transform of W,

    T(X, mu, nu) = Integral dx dp  W(x, p) delta(X - mu x - nu p),

with no extra 2 pi hbar divisor, so a frame (1, 0) returns the spatial
density profile itself and free evolution acts as the frame shift
nu -> nu + mu hbar t / m.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import fresnel

from .units import UnitSystem, natural
from .wavekit import WaveField, grid2d_to_binary, grid2d_to_csv

__all__ = [
    "PhasePoint",
    "TomographyFrame",
    "WignerGrid",
    "wigner_cutoff_plane",
    "wigner_box_eigenstate",
    "wigner_free_evolve",
    "wigner_numeric",
    "wigner_marginal_position",
    "wigner_marginal_momentum",
    "tomogram_shutter",
    "radon_transform",
]


# ----------------------------------------------------------------------
# domain types
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class PhasePoint:
    """A point (or grid broadcast) in phase space."""

    x: object
    p: object

    def __post_init__(self):
        for name in ("x", "p"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"phase-space coordinate {name} must be finite")


@dataclass(frozen=True)
class TomographyFrame:
    """Quadrature frame X = mu x + nu p of the symplectic tomogram."""

    mu: float
    nu: float

    def __post_init__(self):
        if not (np.isfinite(self.mu) and np.isfinite(self.nu)):
            raise ValueError("frame coefficients must be finite")
        if self.mu == 0.0 and self.nu == 0.0:
            raise ValueError("frame (mu, nu) = (0, 0) does not define a quadrature")


@dataclass
class WignerGrid:
    """Dense W(x_i, p_j) samples with its axes and export hooks."""

    x: np.ndarray
    p: np.ndarray
    W: np.ndarray
    units: UnitSystem
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.p = np.asarray(self.p, dtype=float)
        self.W = np.asarray(self.W, dtype=float)
        if self.W.shape != (self.x.size, self.p.size):
            raise ValueError("W must have shape (len(x), len(p))")

    def to_csv(self, path) -> None:
        grid2d_to_csv(path, self.x, self.p, self.W, labels=("x", "p", "W"),
                      units=self.units, meta=self.meta)

    def to_binary(self, path_base):
        return grid2d_to_binary(path_base, self.x, self.p, self.W,
                                labels=("x", "p", "W"), units=self.units,
                                meta=self.meta)

    def marginal_position(self) -> np.ndarray:
        """Trapezoid Integral dp W -> |psi(x)|^2 (exact on the conjugate grid)."""
        dp = self.p[1] - self.p[0]
        return self.W.sum(axis=1) * dp

    def marginal_momentum(self) -> np.ndarray:
        """Trapezoid Integral dx W -> |psi_tilde(p/hbar)|^2 / hbar."""
        return np.trapezoid(self.W, self.x, axis=0)


# ----------------------------------------------------------------------
# closed forms
# ----------------------------------------------------------------------


def wigner_cutoff_plane(p0, pt: PhasePoint, units: UnitSystem = None):
    """Wigner function of the sharply cut plane wave e^{i p0 x / hbar} Theta(-x).

        W(x, p) = (1/pi) sin[-2 x (p0 - p) / hbar] / (p0 - p)   for x < 0,
                  0                                             for x >= 0,

    with the removable singularity W(x, p0) = -2x / (pi hbar).  Positive
    everywhere it is nonzero along p = p0; oscillates and takes negative
    values away from it.  Dimensions 1/momentum (the state itself is not
    normalizable).
    """
    units = units or natural()
    hbar = units.hbar
    x = np.asarray(pt.x, dtype=float)
    p = np.asarray(pt.p, dtype=float)
    x, p = np.broadcast_arrays(x, p)
    # sin(2 x (p - p0)/hbar) / (p0 - p) = (-2x/hbar) sinc(2 x (p - p0) / (pi hbar))
    w = (-2.0 * x / (np.pi * hbar)) * np.sinc(2.0 * x * (p - p0) / (np.pi * hbar))
    w = np.where(x < 0.0, w, 0.0)
    return w if w.shape else float(w)


def _halfbox_kernel(x, p, kn, L, hbar):
    """The left-half-box Wigner kernel; x measured from the nearer wall."""
    a_plus = p / hbar + kn
    a_minus = p / hbar - kn
    # sin(2 a x) / (4 a) = (x/2) sinc(2 a x / pi)
    s_plus = 0.5 * x * np.sinc(2.0 * a_plus * x / np.pi)
    s_minus = 0.5 * x * np.sinc(2.0 * a_minus * x / np.pi)
    # sin(2 p x / hbar) / (2 p / hbar) = x sinc(2 p x / (pi hbar))
    s_zero = x * np.sinc(2.0 * p * x / (np.pi * hbar))
    return (2.0 / (np.pi * hbar * L)) * (
        s_plus + s_minus - np.cos(2.0 * kn * x) * s_zero
    )


def wigner_box_eigenstate(n: int, L: float, pt: PhasePoint,
                          units: UnitSystem = None):
    """Wigner function of the hard-wall box eigenstate sqrt(2/L) sin(n pi x/L).

    Piecewise in the distance to the nearer wall (the eigenstate is
    symmetric about L/2): for x in [0, L/2] the kernel is

        P_n(x, p) = (2 / (pi hbar L)) { sum_{s=+-1}
                        sin[2 (p/hbar + s k_n) x] / (4 (p/hbar + s k_n))
                        - cos(2 k_n x) sin(2 p x / hbar) / (2 p / hbar) },

    for x in [L/2, L] it is P_n(L - x, p), and zero outside the box.
    All three removable singularities (p = -+ hbar k_n and p = 0) are
    evaluated by their sinc limits.  Takes negative values for every
    excited state.
    """
    units = units or natural()
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValueError(f"box quantum number must be an integer >= 1, got {n}")
    if not L > 0:
        raise ValueError(f"box length must be positive, got {L}")
    hbar = units.hbar
    kn = n * np.pi / L
    x = np.asarray(pt.x, dtype=float)
    p = np.asarray(pt.p, dtype=float)
    x, p = np.broadcast_arrays(x, p)
    xw = np.where(x <= 0.5 * L, x, L - x)  # distance to the nearer wall
    w = _halfbox_kernel(xw, p, kn, L, hbar)
    w = np.where((x >= 0.0) & (x <= L), w, 0.0)
    return w if w.shape else float(w)


def wigner_free_evolve(w0, pt: PhasePoint, t: float, units: UnitSystem = None,
                       flow=None):
    """Evolve a Wigner sampler along classical trajectories.

    For free motion W(x, p; t) = W0(x - p t / m, p): each phase-space
    point is carried back along the straight line it arrived on.  A
    different linear flow may be supplied as ``flow(x, p, t) ->
    (x0, p0)``, the inverse map to the initial time (exact for
    potentials at most quadratic in x).
    """
    units = units or natural()
    x = np.asarray(pt.x, dtype=float)
    p = np.asarray(pt.p, dtype=float)
    x, p = np.broadcast_arrays(x, p)
    if flow is None:
        x0, p0 = x - p * t / units.mass, p
    else:
        x0, p0 = flow(x, p, t)
    return w0(x0, p0)


# ----------------------------------------------------------------------
# discrete transform (oracle)
# ----------------------------------------------------------------------


def wigner_numeric(fieldobj: WaveField, p=None, t_index: int = 0) -> WignerGrid:
    """Discrete Wigner transform of a sampled wavefunction.

    Quadrature of psi*(x + y) psi(x - y) e^{2 i p y / hbar} over the
    grid offsets y; the field must be uniformly sampled and decay at the
    grid ends.  With the default conjugate momentum grid (spacing
    pi hbar / (N dx)) the discrete position marginal sum_j W dp equals
    |psi(x)|^2 identically, which makes this the oracle for the closed
    forms.
    """
    x = fieldobj.x
    psi = fieldobj.psi[t_index]
    units = fieldobj.units
    n = x.size
    if n < 3:
        raise ValueError("need at least 3 samples")
    dx = x[1] - x[0]
    steps = np.diff(x)
    if not np.allclose(steps, dx, rtol=1e-9, atol=0.0):
        raise ValueError("wigner_numeric requires a uniform grid")
    if p is None:
        dp = np.pi * units.hbar / (n * dx)
        p = (np.arange(n) - n // 2) * dp
    else:
        p = np.asarray(p, dtype=float)

    # m[i, J + j] = psi*(x_i + y_j) psi(x_i - y_j), y_j = j dx
    J = n - 1
    m = np.zeros((n, 2 * n - 1), dtype=complex)
    for i in range(n):
        jmax = min(i, n - 1 - i)
        j = np.arange(-jmax, jmax + 1)
        m[i, J + j] = np.conj(psi[i + j]) * psi[i - j]
    y = (np.arange(2 * n - 1) - J) * dx
    kernel = np.exp(2j * np.outer(y, p) / units.hbar)
    W = np.real(m @ kernel) * dx / (np.pi * units.hbar)
    meta = {"dimensions": "W ~ 1/momentum", "t": float(fieldobj.t[t_index])}
    return WignerGrid(x=x, p=p, W=W, units=units, meta=meta)


# ----------------------------------------------------------------------
# marginals (oscillatory-tail aware)
# ----------------------------------------------------------------------


def _cesaro_symmetric(vals, dx, fraction=0.5):
    """Integral of samples on a symmetric grid, Cesaro-averaged.

    Computes the partial trapezoid integrals I_m over nested symmetric
    windows (center +- m dx) and returns the mean of I over the outer
    ``fraction`` of window sizes — averaging out conditionally
    convergent oscillatory tails (the slowly decaying 1/p envelopes of
    sharp-edge states).  Expects an odd number of samples.
    """
    vals = np.asarray(vals)
    c = vals.shape[-1] // 2
    pair = vals[..., c - 1 :: -1] + vals[..., c + 1 :]  # v(c-m) + v(c+m)
    # I_1 = dx (v_c + pair_1/2);  I_{m+1} - I_m = dx (pair_m + pair_{m+1})/2
    i1 = dx * (vals[..., c] + 0.5 * pair[..., 0])
    inc = 0.5 * dx * (pair[..., :-1] + pair[..., 1:])
    partial = np.concatenate(
        [i1[..., None], i1[..., None] + np.cumsum(inc, axis=-1)], axis=-1
    )
    k0 = int((1.0 - fraction) * (partial.shape[-1] - 1))
    return partial[..., k0:].mean(axis=-1)


def wigner_marginal_position(w, x, p_center=0.0, p_max=150.0, n_p=60001,
                             cesaro=True):
    """Integral dp W(x, p) -> |psi(x)|^2 for a Wigner sampler w(x, p).

    Integrates over the symmetric window p_center +- p_max; with
    ``cesaro`` the conditionally convergent oscillatory tail is averaged
    over the outer half of the window (sharp-edge states fall off as
    slowly as 1/p, so the plain trapezoid never settles).
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    n_p = int(n_p) | 1
    p = p_center + np.linspace(-p_max, p_max, n_p)
    vals = w(x[:, None], p[None, :])
    dp = p[1] - p[0]
    if cesaro:
        return _cesaro_symmetric(vals, dp)
    return np.trapezoid(vals, p, axis=-1)


def wigner_marginal_momentum(w, p, x_lo, x_hi, n_x=20001):
    """Integral dx W(x, p) -> |psi_tilde(p/hbar)|^2 / hbar on [x_lo, x_hi]."""
    p = np.atleast_1d(np.asarray(p, dtype=float))
    x = np.linspace(x_lo, x_hi, int(n_x))
    vals = w(x[None, :], p[:, None])
    return np.trapezoid(vals, x, axis=-1)


# ----------------------------------------------------------------------
# symplectic tomography
# ----------------------------------------------------------------------


def tomogram_shutter(X, frame: TomographyFrame, k, t, units: UnitSystem = None):
    """Symplectic tomogram of the suddenly released cut plane wave.

    In the quadrature X = mu x + nu p, with taut = hbar t / m and
    s = mu taut + nu,

        T(X, mu, nu) = (1 / 2|mu|) { [1/2 + C(xi)]^2 + [1/2 + S(xi)]^2 },
        xi = (k s - X) / sqrt(2 mu s),

    valid on the real branch mu s > 0, where C and S are the Fresnel
    integrals in the plain-quadratic-phase normalization C(xi) =
    sqrt(2/pi) Integral_0^xi cos(u^2) du (and S likewise with sin).
    The frame (1, 0) reduces exactly to the released-beam density
    profile, and free evolution enters only through the frame shift
    nu -> nu + mu taut.
    """
    units = units or natural()
    mu, nu = frame.mu, frame.nu
    taut = units.hbar * t / units.mass
    s = mu * taut + nu
    if not mu * s > 0:
        raise ValueError(
            "real-branch tomogram needs mu (mu hbar t / m + nu) > 0; "
            f"got mu = {mu}, nu = {nu}, t = {t}"
        )
    X = np.asarray(X, dtype=float)
    xi = (k * s - X) / np.sqrt(2.0 * mu * s)
    sf, cf = fresnel(xi * np.sqrt(2.0 / np.pi))
    out = ((0.5 + cf) ** 2 + (0.5 + sf) ** 2) / (2.0 * abs(mu))
    return out if out.shape else float(out)


def radon_transform(w, X, frame: TomographyFrame, p_max=50.0, n_p=1000001,
                    cesaro=True):
    """Numeric Radon transform of a Wigner sampler along a frame.

        T(X, mu, nu) = (1/|mu|) Integral dp  W((X - nu p) / mu, p),

    the delta line X = mu x + nu p integrated out in x (mu != 0).
    Oscillatory tails of non-normalizable states are Cesaro-averaged
    over the outer half of the p window.

    For sharp-edge states the integrand carries a chirp whose local
    phase rate grows like 4 |nu p / mu|, so the grid must resolve the
    window ends: keep dp well below pi mu / (4 nu p_max).  A modest
    window that still contains the stationary-phase zone |p| ~ |X/nu|
    beats a wide under-sampled one (aliased tails do not average out).
    """
    if frame.mu == 0.0:
        raise ValueError("numeric Radon path needs mu != 0")
    X = np.atleast_1d(np.asarray(X, dtype=float))
    n_p = int(n_p) | 1
    p = np.linspace(-p_max, p_max, n_p)
    x_line = (X[:, None] - frame.nu * p[None, :]) / frame.mu
    vals = w(x_line, p[None, :])
    dp = p[1] - p[0]
    if cesaro:
        out = _cesaro_symmetric(vals, dp) / abs(frame.mu)
    else:
        out = np.trapezoid(vals, p, axis=-1) / abs(frame.mu)
    return out

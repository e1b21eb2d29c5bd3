"""Special functions for transient matter-wave dynamics.

The central object is the Moshinsky function

    M(x, k, t) = (1/2) exp(i m x^2 / (2 hbar t)) w(-u),
    u = (1 + i)/2 * sqrt(hbar t / m) * (k - m x / (hbar t)),

the free-propagator image of a chopped plane wave e^{ikx} Theta(-x).  Here
w is the Faddeyeva function w(z) = exp(-z^2) erfc(-iz).  Everything else in
the package reduces to sums of M evaluations, so this module also provides

* an overflow-safe scaled representation (``ScaledComplex``) for lower
  half-plane arguments where |exp(-z^2)| overflows double precision,
* the Fresnel integrals in the pi t^2 / 2 convention (Cornu spiral), and
* the large-|u| asymptotic series of M with its two-region plane-wave rule.

Upper half-plane w values are bounded by 1 and are delegated to
``scipy.special.wofz``; the lower half plane uses the reflection identity
w(z) = 2 exp(-z^2) - w(-z) with the exponential kept in log form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import fresnel as _scipy_fresnel
from scipy.special import gamma as _gamma
from scipy.special import wofz as _wofz

__all__ = [
    "ScaledComplex",
    "faddeyeva",
    "faddeyeva_scaled",
    "fresnel",
    "moshinsky",
    "moshinsky_scaled",
    "moshinsky_asymptotic",
    "free_kernel",
]

_SQRT_PI = math.sqrt(math.pi)
# switch to the scaled path once |exp(-z^2)| exceeds exp(_LOG_BIG)
_LOG_BIG = 500.0


@dataclass(frozen=True)
class ScaledComplex:
    """A complex number stored as exp(log_mag) * exp(i phase).

    Keeps quantities like exp(-z^2) for z far in the lower half plane
    representable: log_mag may exceed the ~709 overflow limit of a double.
    """

    log_mag: float
    phase: float

    @classmethod
    def from_complex(cls, z: complex) -> "ScaledComplex":
        z = complex(z)
        if z == 0:
            return cls(-math.inf, 0.0)
        return cls(math.log(abs(z)), math.atan2(z.imag, z.real))

    @classmethod
    def from_exponent(cls, w: complex) -> "ScaledComplex":
        """The number exp(w) for complex w, without evaluating exp."""
        w = complex(w)
        return cls(w.real, w.imag)

    def to_complex(self) -> complex:
        """Collapse to a plain complex; overflows to inf past ~1e308."""
        if self.log_mag == -math.inf:
            return 0j
        mag = math.exp(self.log_mag) if self.log_mag < 709.0 else math.inf
        return complex(mag * math.cos(self.phase), mag * math.sin(self.phase))

    @property
    def is_finite_complex(self) -> bool:
        return self.log_mag < 709.0

    def __mul__(self, other):
        if isinstance(other, ScaledComplex):
            return ScaledComplex(self.log_mag + other.log_mag, self.phase + other.phase)
        return self * ScaledComplex.from_complex(other)

    __rmul__ = __mul__

    def __neg__(self):
        return ScaledComplex(self.log_mag, self.phase + math.pi)

    def __add__(self, other):
        if not isinstance(other, ScaledComplex):
            other = ScaledComplex.from_complex(other)
        a, b = self, other
        if a.log_mag < b.log_mag:
            a, b = b, a
        if a.log_mag == -math.inf:
            return a
        # factor out the larger magnitude; the residual bracket is O(1)
        small = math.exp(min(b.log_mag - a.log_mag, 0.0))
        bracket = complex(
            math.cos(a.phase) + small * math.cos(b.phase),
            math.sin(a.phase) + small * math.sin(b.phase),
        )
        if bracket == 0:
            return ScaledComplex(-math.inf, 0.0)
        return ScaledComplex(
            a.log_mag + math.log(abs(bracket)),
            math.atan2(bracket.imag, bracket.real),
        )

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, ScaledComplex):
            other = ScaledComplex.from_complex(other)
        return self + (-other)

    def conjugate(self) -> "ScaledComplex":
        return ScaledComplex(self.log_mag, -self.phase)

    def abs_squared_log(self) -> float:
        """log |z|^2, always finite arithmetic."""
        return 2.0 * self.log_mag


def faddeyeva(z):
    """w(z) = exp(-z^2) erfc(-iz), vectorized over complex arrays.

    Overflows to inf for lower half-plane arguments with Re(-z^2) beyond
    ~709; use :func:`faddeyeva_scaled` there.
    """
    with np.errstate(over="ignore", invalid="ignore"):
        return _wofz(z)


def faddeyeva_scaled(z: complex) -> ScaledComplex:
    """Overflow-safe w(z) for a single complex argument.

    For Im z >= 0 (and for benign lower half-plane points) this is just the
    library value; otherwise the reflection w(z) = 2 exp(-z^2) - w(-z) is
    carried out with exp(-z^2) held in log form.
    """
    z = complex(z)
    log_expsq = (-z * z).real
    if z.imag >= 0.0 or log_expsq < _LOG_BIG:
        return ScaledComplex.from_complex(complex(_wofz(z)))
    big = ScaledComplex.from_exponent(-z * z) * 2.0
    return big - ScaledComplex.from_complex(complex(_wofz(-z)))


def fresnel(theta):
    """Fresnel integrals C(theta), S(theta) in the pi t^2 / 2 convention."""
    s, c = _scipy_fresnel(theta)
    return c, s


def free_kernel(x, t, x_src=0.0, t_src=0.0, hbar=1.0, mass=1.0):
    """Free single-particle propagator K0(x, t | x_src, t_src)."""
    dt = t - t_src
    pref = np.sqrt(mass / (2j * np.pi * hbar * dt))
    return pref * np.exp(1j * mass * (x - x_src) ** 2 / (2.0 * hbar * dt))


def _moshinsky_u(x, k, t, hbar, mass):
    return 0.5 * (1.0 + 1j) * np.sqrt(hbar * t / mass + 0j) * (k - mass * x / (hbar * t))


def moshinsky(x, k, t, hbar=1.0, mass=1.0):
    """Moshinsky function M(x, k, t); broadcasts over array arguments.

    ``t`` may be complex with Im t <= 0 (analytic continuation used by the
    Gaussian-packet solutions); t = 0 returns the initial condition
    e^{ikx} Theta(-x) with Theta(0) = 1/2.  Real t < 0 is a domain error.
    Out-of-range magnitudes (deep classically-forbidden resonance terms)
    overflow to inf; :func:`moshinsky_scaled` keeps them representable.
    """
    x, k, t = np.broadcast_arrays(
        np.asarray(x), np.asarray(k), np.asarray(t)
    )
    tc = np.asarray(t, dtype=complex)
    if np.any(tc.imag > 1e-12):
        raise ValueError("moshinsky requires Im t <= 0")
    if np.any((tc.imag == 0) & (tc.real < 0)):
        raise ValueError("moshinsky requires t >= 0 on the real axis")
    out = np.empty(np.shape(x), dtype=complex)
    zero_t = tc == 0
    if np.any(zero_t):
        xz = np.asarray(x, dtype=float)[zero_t]
        kz = np.asarray(k, dtype=complex)[zero_t]
        step = np.where(xz < 0, 1.0, np.where(xz == 0, 0.5, 0.0))
        out[zero_t] = np.exp(1j * kz * xz) * step
    live = ~zero_t
    if np.any(live):
        xl = np.asarray(x, dtype=complex)[live]
        kl = np.asarray(k, dtype=complex)[live]
        tl = tc[live]
        u = _moshinsky_u(xl, kl, tl, hbar, mass)
        with np.errstate(over="ignore", invalid="ignore"):
            vals = 0.5 * np.exp(1j * mass * xl * xl / (2.0 * hbar * tl)) * _wofz(-u)
        bad = ~np.isfinite(vals)
        if np.any(bad):
            idx = np.nonzero(bad)[0]
            for i in idx:
                vals[i] = moshinsky_scaled(
                    complex(xl[i]).real, complex(kl[i]), complex(tl[i]),
                    hbar=hbar, mass=mass,
                ).to_complex()
        out[live] = vals
    if out.ndim == 0:
        return complex(out)
    return out


def moshinsky_scaled(x, k, t, hbar=1.0, mass=1.0) -> ScaledComplex:
    """M(x, k, t) as a :class:`ScaledComplex` (scalar arguments only).

    Needed when Re(-u^2) is large and positive, e.g. resonance poles
    k_n = a_n - i b_n evaluated far beyond the classical front where the
    exp(b_n x)-type growth exceeds double range before cancellation.
    """
    tc = complex(t)
    if tc == 0:
        xr = float(x)
        if xr > 0:
            return ScaledComplex(-math.inf, 0.0)
        val = ScaledComplex.from_exponent(1j * complex(k) * xr)
        return val if xr < 0 else val * 0.5
    if tc.imag > 1e-12 or (tc.imag == 0 and tc.real < 0):
        raise ValueError("moshinsky_scaled requires t >= 0 or Im t < 0")
    u = _moshinsky_u(complex(x), complex(k), tc, hbar, mass)
    pref = ScaledComplex.from_exponent(1j * mass * complex(x) ** 2 / (2.0 * hbar * tc))
    return pref * faddeyeva_scaled(-u) * 0.5


_DOUBLE_FACT_CACHE = {0: 1.0}


def _double_factorial(n: int) -> float:
    # (2n-1)!! with the usual (-1)!! = 1 convention
    if n not in _DOUBLE_FACT_CACHE:
        _DOUBLE_FACT_CACHE[n] = float(_gamma(n + 0.5)) * 2.0**n / _SQRT_PI
    return _DOUBLE_FACT_CACHE[n]


def moshinsky_asymptotic(x, k, t, order=3, hbar=1.0, mass=1.0):
    """Large-argument asymptotics of M(x, k, t).

    Two regions, split at the classical front x = hbar Re(k) t / m:

    * behind or on the front (x <= front): plane wave
      exp(ikx - i hbar k^2 t / (2m)) plus the descending series;
    * ahead of the front: the series alone,

    with the series  exp(i m x^2/(2 hbar t)) / (2 pi i) *
    sum_{n=0}^{order-1} Gamma(n + 1/2) / u^{2n+1}.  ``order`` counts series
    terms retained (order >= 1).
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    x = np.asarray(x, dtype=float)
    k = complex(k)
    t = float(t)
    if t <= 0:
        raise ValueError("asymptotic form needs t > 0")
    u = _moshinsky_u(x + 0j, k, t, hbar, mass)
    inv_u2 = 1.0 / (u * u)
    series = np.zeros_like(u)
    pow_term = 1.0 / u
    for n in range(order):
        series = series + float(_gamma(n + 0.5)) * pow_term
        pow_term = pow_term * inv_u2
    series = series * np.exp(1j * mass * x * x / (2.0 * hbar * t)) / (2j * np.pi)
    front = hbar * k.real * t / mass
    plane = np.where(
        x <= front,
        np.exp(1j * k * x - 1j * hbar * k * k * t / (2.0 * mass)),
        0.0,
    )
    result = plane + series
    if result.ndim == 0:
        return complex(result)
    return result

"""Closed-form wavefunction algebra and sampled fields.

Transient solutions in this package are finite sums of a few analytic
building blocks, each switched on at its own emission time:

* ``PlaneWave``      -- c exp(i k x - i omega (t - t0)),
* ``MoshinskyWave``  -- c [prefactor] M(s x + v (t-t0) + x0, k, (t-t0) + i ti),
* ``GaussianWave``   -- free minimum-uncertainty packet, exact evolution,
* ``KernelWave``     -- free propagator from a point source.

``WaveSum`` holds a tuple of terms and evaluates their superposition;
``PiecewiseWave`` switches between sums on x-intervals (mirror and
delta-barrier solutions need different closed forms left and right of the
scatterer).  ``sample`` turns any of these into a ``WaveField`` -- a dense
(t, x) array with unit metadata that the serializers below write as CSV,
JSON, or raw binary with a JSON sidecar.

All evaluators broadcast over x for a scalar t; time grids are looped at
the sampling level.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .specfun import free_kernel, moshinsky
from .units import UnitSystem, natural

__all__ = [
    "PlaneWave",
    "MoshinskyWave",
    "GaussianWave",
    "KernelWave",
    "WaveSum",
    "PiecewiseWave",
    "WaveField",
    "sample",
    "mirror",
    "tdse_residual",
    "wavefield_to_csv",
    "wavefield_from_csv",
    "wavefield_to_json",
    "wavefield_from_json",
    "grid2d_to_csv",
    "grid2d_to_binary",
]


# ----------------------------------------------------------------------
# terms
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class PlaneWave:
    """c exp(i k x) exp(-i [hbar k^2/(2m) + V/hbar] (t - t0)), gated at t0."""

    coeff: complex
    k: complex
    t0: float = 0.0
    v_pot: complex = 0.0

    def evaluate(self, x, t, units: UnitSystem):
        dt = t - self.t0
        if dt < 0:
            return np.zeros(np.shape(x), dtype=complex)
        omega = units.hbar * self.k**2 / (2.0 * units.mass) + self.v_pot / units.hbar
        return self.coeff * np.exp(1j * self.k * np.asarray(x) - 1j * omega * dt)


@dataclass(frozen=True)
class MoshinskyWave:
    """A (possibly dressed) Moshinsky term.

    Evaluates, for t >= t0 and zero otherwise,

        c * P(x, t) * exp(-i v_pot (t-t0)/hbar)
          * M(sx * x + v * (t-t0) + x0,  k,  (t-t0) + i t_imag)

    with P = exp(i k_pre x - i hbar k_pre^2 (t-t0)/(2m)) when ``k_pre`` is
    set and 1 otherwise.  The affine argument map covers mirrored
    coordinates (sx = -1), co-moving frames (v != 0, Gaussian-packet
    solutions), shifted sources (x0) and complex-time continuation
    (t_imag < 0).
    """

    coeff: complex
    k: complex
    x0: float = 0.0
    sx: float = 1.0
    v: float = 0.0
    t0: float = 0.0
    t_imag: float = 0.0
    k_pre: complex | None = None
    v_pot: complex = 0.0

    def evaluate(self, x, t, units: UnitSystem):
        dt = t - self.t0
        if dt < 0:
            return np.zeros(np.shape(x), dtype=complex)
        x = np.asarray(x, dtype=float)
        arg = self.sx * x + self.v * dt + self.x0
        tm = dt + 1j * self.t_imag if self.t_imag != 0.0 else dt
        val = moshinsky(arg, self.k, tm, hbar=units.hbar, mass=units.mass)
        out = self.coeff * val
        if self.k_pre is not None:
            out = out * np.exp(
                1j * self.k_pre * x
                - 1j * units.hbar * self.k_pre**2 * dt / (2.0 * units.mass)
            )
        if self.v_pot != 0.0:
            out = out * np.exp(-1j * self.v_pot * dt / units.hbar)
        return out


@dataclass(frozen=True)
class GaussianWave:
    """Free minimum-uncertainty packet, exact time evolution.

    At t = t0 the packet is (2 pi sigma^2)^(-1/4) e^{i k0 x} *
    exp(-(x - x0)^2/(4 sigma^2)); it spreads with the complex width
    1 + i (t-t0)/tau, tau = 2 m sigma^2 / hbar.
    """

    coeff: complex
    k0: float
    x0: float
    sigma: float
    t0: float = 0.0

    def evaluate(self, x, t, units: UnitSystem):
        dt = t - self.t0
        x = np.asarray(x, dtype=float)
        tau = 2.0 * units.mass * self.sigma**2 / units.hbar
        spread = 1.0 + 1j * dt / tau
        center = self.x0 + units.hbar * self.k0 * dt / units.mass
        norm = (2.0 * np.pi * self.sigma**2) ** (-0.25) / np.sqrt(spread)
        phase = np.exp(
            1j * self.k0 * x - 1j * units.hbar * self.k0**2 * dt / (2.0 * units.mass)
        )
        return (
            self.coeff
            * norm
            * phase
            * np.exp(-((x - center) ** 2) / (4.0 * self.sigma**2 * spread))
        )


@dataclass(frozen=True)
class KernelWave:
    """c K0(x, t | x_src, t_src): free spreading from a point emission."""

    coeff: complex
    x_src: float = 0.0
    t_src: float = 0.0

    def evaluate(self, x, t, units: UnitSystem):
        if t <= self.t_src:
            return np.zeros(np.shape(x), dtype=complex)
        return self.coeff * free_kernel(
            np.asarray(x, dtype=float), t, self.x_src, self.t_src,
            hbar=units.hbar, mass=units.mass,
        )


Term = PlaneWave | MoshinskyWave | GaussianWave | KernelWave


# ----------------------------------------------------------------------
# superpositions
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class WaveSum:
    """Finite superposition of closed-form terms."""

    terms: tuple

    def __call__(self, x, t, units: UnitSystem = None):
        units = units or natural()
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        for term in self.terms:
            out += term.evaluate(x, t, units)
        return out

    def __add__(self, other):
        if isinstance(other, WaveSum):
            return WaveSum(self.terms + other.terms)
        return NotImplemented

    def scaled(self, factor: complex) -> "WaveSum":
        return WaveSum(tuple(replace(t, coeff=t.coeff * factor) for t in self.terms))

    def shifted(self, t_shift: float) -> "WaveSum":
        """Delay every term's emission time by t_shift."""
        out = []
        for t in self.terms:
            if isinstance(t, KernelWave):
                out.append(replace(t, t_src=t.t_src + t_shift))
            else:
                out.append(replace(t, t0=t.t0 + t_shift))
        return WaveSum(tuple(out))


@dataclass(frozen=True)
class PiecewiseWave:
    """x-interval switched superpositions: ((xlo, xhi, WaveSum), ...).

    Intervals are half-open [xlo, xhi); the final interval includes its
    right edge.  Points outside every interval evaluate to zero.
    """

    pieces: tuple

    def __call__(self, x, t, units: UnitSystem = None):
        units = units or natural()
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        last = len(self.pieces) - 1
        for i, (xlo, xhi, wave) in enumerate(self.pieces):
            mask = (x >= xlo) & ((x <= xhi) if i == last else (x < xhi))
            if np.any(mask):
                out[mask] = wave(x[mask], t, units)
        return out


def mirror(wave):
    """The spatially reflected wave psi(-x, t) as a new term sum."""
    if isinstance(wave, PiecewiseWave):
        pieces = tuple(
            (-xhi, -xlo, mirror(ws)) for (xlo, xhi, ws) in reversed(wave.pieces)
        )
        return PiecewiseWave(pieces)
    out = []
    for t in wave.terms:
        if isinstance(t, PlaneWave):
            out.append(replace(t, k=-t.k))
        elif isinstance(t, MoshinskyWave):
            kp = -t.k_pre if t.k_pre is not None else None
            out.append(replace(t, sx=-t.sx, k_pre=kp))
        elif isinstance(t, GaussianWave):
            out.append(replace(t, k0=-t.k0, x0=-t.x0))
        elif isinstance(t, KernelWave):
            out.append(replace(t, x_src=-t.x_src))
        else:
            raise TypeError(f"cannot mirror term {t!r}")
    return WaveSum(tuple(out))


# ----------------------------------------------------------------------
# sampled fields
# ----------------------------------------------------------------------


@dataclass
class WaveField:
    """Dense complex samples psi[t_i, x_j] with unit metadata."""

    x: np.ndarray
    t: np.ndarray
    psi: np.ndarray
    units: UnitSystem
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.t = np.atleast_1d(np.asarray(self.t, dtype=float))
        self.psi = np.asarray(self.psi, dtype=complex)
        if self.psi.ndim == 1:
            self.psi = self.psi[None, :]
        if self.psi.shape != (self.t.size, self.x.size):
            raise ValueError("psi must have shape (len(t), len(x))")

    def density(self) -> np.ndarray:
        return np.abs(self.psi) ** 2

    def current(self) -> np.ndarray:
        """Probability current hbar/m Im(psi* d psi/dx), centered differences."""
        dpsi = np.gradient(self.psi, self.x, axis=1)
        return (self.units.hbar / self.units.mass) * np.imag(
            np.conj(self.psi) * dpsi
        )

    def norm(self) -> np.ndarray:
        """Trapezoid L2 norm squared at each time."""
        return np.trapezoid(self.density(), self.x, axis=1)


def sample(wave, x, t, units: UnitSystem = None, meta: dict | None = None) -> WaveField:
    """Evaluate a closed-form wave (or any callable psi(x, t)) on a grid."""
    units = units or natural()
    x = np.asarray(x, dtype=float)
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    psi = np.empty((ts.size, x.size), dtype=complex)
    for i, ti in enumerate(ts):
        if isinstance(wave, (WaveSum, PiecewiseWave)):
            psi[i] = wave(x, ti, units)
        else:
            psi[i] = wave(x, ti)
    return WaveField(x=x, t=ts, psi=psi, units=units, meta=dict(meta or {}))


def tdse_residual(
    wave,
    x,
    t,
    h: float = 1e-3,
    dt: float = 1e-4,
    potential: Callable | None = None,
    units: UnitSystem = None,
) -> float:
    """Max |i hbar dpsi/dt - H psi| / max |psi| by centered differences.

    ``wave`` is a closed-form sum or a callable psi(x, t); ``potential`` an
    optional V(x) callable (complex allowed).  Points must stay clear of
    potential kinks by at least h since the stencil straddles +-h.
    """
    units = units or natural()
    x = np.asarray(x, dtype=float)

    def ev(xx, tt):
        if isinstance(wave, (WaveSum, PiecewiseWave)):
            return wave(xx, tt, units)
        return wave(xx, tt)

    psi0 = ev(x, t)
    ddt = (ev(x, t + dt) - ev(x, t - dt)) / (2.0 * dt)
    d2x = (ev(x + h, t) - 2.0 * psi0 + ev(x - h, t)) / h**2
    hpsi = -(units.hbar**2) / (2.0 * units.mass) * d2x
    if potential is not None:
        hpsi = hpsi + np.asarray(potential(x), dtype=complex) * psi0
    res = 1j * units.hbar * ddt - hpsi
    scale = np.max(np.abs(psi0))
    if scale == 0:
        return float(np.max(np.abs(res)))
    return float(np.max(np.abs(res)) / scale)


# ----------------------------------------------------------------------
# serialization
# ----------------------------------------------------------------------

_FMT = "%.17g"


def _units_header(units: UnitSystem) -> list[str]:
    return [
        f"# units: {units.name}",
        f"# hbar = {_FMT % units.hbar} [{units.energy_unit} {units.time_unit}]",
        f"# mass = {_FMT % units.mass} "
        f"[{units.energy_unit} {units.time_unit}^2/{units.length_unit}^2]",
        f"# x in {units.length_unit}, t in {units.time_unit}",
    ]


def wavefield_to_csv(fieldobj: WaveField, path) -> None:
    """Long-format CSV: one row per (x, t) sample, '#' metadata header."""
    lines = ["# matterwave wavefield v1"]
    lines += _units_header(fieldobj.units)
    for key in sorted(fieldobj.meta):
        lines.append(f"# meta {key} = {fieldobj.meta[key]}")
    lines.append("x,t,re,im,abs2")
    for i, ti in enumerate(fieldobj.t):
        row = fieldobj.psi[i]
        for j, xj in enumerate(fieldobj.x):
            z = row[j]
            lines.append(
                ",".join(
                    _FMT % v for v in (xj, ti, z.real, z.imag, abs(z) ** 2)
                )
            )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def wavefield_from_csv(path, units: UnitSystem = None) -> WaveField:
    meta = {}
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("meta "):
                    key, _, val = body[5:].partition("=")
                    meta[key.strip()] = val.strip()
                continue
            if line.startswith("x,"):
                continue
            rows.append([float(v) for v in line.split(",")])
    data = np.asarray(rows)
    xs = np.unique(data[:, 0])
    ts = np.unique(data[:, 1])
    psi = np.full((ts.size, xs.size), np.nan, dtype=complex)
    xi = np.searchsorted(xs, data[:, 0])
    ti = np.searchsorted(ts, data[:, 1])
    psi[ti, xi] = data[:, 2] + 1j * data[:, 3]
    return WaveField(x=xs, t=ts, psi=psi, units=units or natural(), meta=meta)


def wavefield_to_json(fieldobj: WaveField, path=None):
    doc = {
        "schema": "matterwave.wavefield/1",
        "units": fieldobj.units.as_dict(),
        "meta": fieldobj.meta,
        "x": fieldobj.x.tolist(),
        "t": fieldobj.t.tolist(),
        "re": fieldobj.psi.real.tolist(),
        "im": fieldobj.psi.imag.tolist(),
    }
    if path is not None:
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)
    return doc


def wavefield_from_json(path) -> WaveField:
    if isinstance(path, dict):
        doc = path
    else:
        with open(path) as fh:
            doc = json.load(fh)
    u = doc["units"]
    units = UnitSystem(
        u["name"], u["hbar"], u["mass"],
        u["length_unit"], u["time_unit"], u["energy_unit"],
    )
    psi = np.asarray(doc["re"], dtype=float) + 1j * np.asarray(doc["im"], dtype=float)
    return WaveField(
        x=np.asarray(doc["x"]), t=np.asarray(doc["t"]), psi=psi,
        units=units, meta=doc.get("meta", {}),
    )


def grid2d_to_csv(path, xs, ys, z, labels=("x", "p", "W"), units: UnitSystem = None,
                  meta: dict | None = None) -> None:
    """Dense 2-D scalar field as x,y,value triplets with a '#' header."""
    lines = ["# matterwave grid2d v1"]
    if units is not None:
        lines += _units_header(units)
    for key in sorted(meta or {}):
        lines.append(f"# meta {key} = {meta[key]}")
    lines.append(",".join(labels))
    z = np.asarray(z)
    for i, xv in enumerate(xs):
        for j, yv in enumerate(ys):
            lines.append(",".join(_FMT % v for v in (xv, yv, z[i, j])))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def grid2d_to_binary(path_base, xs, ys, z, labels=("x", "p", "W"),
                     units: UnitSystem = None, meta: dict | None = None):
    """Row-major float64 binary dump plus a JSON sidecar describing it."""
    z = np.ascontiguousarray(np.asarray(z, dtype=np.float64))
    bin_path = str(path_base) + ".f64"
    z.tofile(bin_path)
    sidecar = {
        "schema": "matterwave.grid2d/1",
        "binary": bin_path.rsplit("/", 1)[-1],
        "dtype": "float64",
        "order": "C",
        "shape": list(z.shape),
        "labels": list(labels),
        "axis0": np.asarray(xs, dtype=float).tolist(),
        "axis1": np.asarray(ys, dtype=float).tolist(),
        "units": units.as_dict() if units is not None else None,
        "meta": meta or {},
    }
    json_path = str(path_base) + ".json"
    with open(json_path, "w") as fh:
        json.dump(sidecar, fh, indent=1, sort_keys=True)
    return bin_path, json_path

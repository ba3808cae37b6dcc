"""Spinor fields on a finite 1-D lattice window.

A walker state carries two complex amplitudes (right-mover, left-mover) per
site.  The window is dense: ``amps[j]`` belongs to lattice site
``offset + j``.  Sites outside the window are implicitly zero.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

NORM_TOL = 1e-12

# Per-site probability below this is treated as numerically empty when
# trimming window edges.  Far below any double-precision amplitude noise.
TRIM_THRESHOLD = 1e-300


class NormalizationError(ValueError):
    """State construction rejected because the total probability is not 1."""


@dataclass(frozen=True)
class LatticeUnits:
    """Site spacing, time step, hbar and light speed; all default to 1."""

    d: float = 1.0
    tau: float = 1.0
    hbar: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        for name in ("d", "tau", "hbar", "c"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


@dataclass(frozen=True)
class BlochAngles:
    """Polar/azimuthal angles of a pure internal state on the Bloch sphere.

    gamma in [0, pi], phi in [0, 2*pi).
    """

    gamma: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.gamma <= math.pi:
            raise ValueError("gamma must lie in [0, pi]")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError("phi must lie in [0, 2*pi)")


@dataclass(frozen=True, eq=False)
class SpinorField:
    """Immutable two-component field over a dense window of lattice sites.

    Attributes
    ----------
    offset : int
        Lattice index of the first stored site.
    amps : ndarray, shape (N, 2), complex128
        Column 0 holds the right-mover amplitude, column 1 the left-mover.
        The array is read-only.
    step_count : int
        Number of time steps elapsed since construction of the initial state.
    """

    offset: int
    amps: np.ndarray
    step_count: int = 0

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amps, dtype=np.complex128)
        if amps.ndim != 2 or amps.shape[1] != 2 or amps.shape[0] == 0:
            raise ValueError("amps must have shape (N, 2) with N >= 1")
        if not np.all(np.isfinite(amps.view(np.float64))):
            raise ValueError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)
        if self.step_count < 0:
            raise ValueError("step_count must be non-negative")
        if abs(self.norm_sq() - 1.0) > NORM_TOL:
            raise NormalizationError(
                f"total probability {self.norm_sq():.17g} differs from 1 "
                f"by more than {NORM_TOL}"
            )

    @classmethod
    def _from_evolution(cls, offset: int, amps: np.ndarray, step_count: int) -> "SpinorField":
        """Internal constructor for evolution results.

        Skips the norm gate (drift over very long runs is measured by tests,
        not clamped) but keeps the shape/finiteness checks.
        """
        obj = object.__new__(cls)
        arr = np.ascontiguousarray(amps, dtype=np.complex128)
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise ValueError("amplitudes must be finite")
        arr.setflags(write=False)
        object.__setattr__(obj, "offset", int(offset))
        object.__setattr__(obj, "amps", arr)
        object.__setattr__(obj, "step_count", int(step_count))
        return obj

    def norm_sq(self) -> float:
        a = self.amps
        return float(np.sum(a.real * a.real + a.imag * a.imag))

    @property
    def sites(self) -> np.ndarray:
        """Lattice indices of the stored window."""
        return self.offset + np.arange(self.amps.shape[0])

    def site_probabilities(self) -> np.ndarray:
        a = self.amps
        return np.sum(a.real * a.real + a.imag * a.imag, axis=1)


def _trim_window(offset: int, amps: np.ndarray) -> tuple[int, np.ndarray]:
    # Drop numerically empty sites from the window ends only; interior zeros
    # (parity structure) must stay in place.
    p = np.sum(amps.real**2 + amps.imag**2, axis=1)
    keep = np.flatnonzero(p >= TRIM_THRESHOLD)
    if keep.size == 0:
        return offset, amps
    lo, hi = int(keep[0]), int(keep[-1]) + 1
    return offset + lo, amps[lo:hi]


def make_localized(n0: int, a: complex, b: complex) -> SpinorField:
    """Field concentrated on a single site with internal amplitudes (a, b).

    Raises NormalizationError unless |a|^2 + |b|^2 = 1 within 1e-12.
    """
    a, b = complex(a), complex(b)
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > NORM_TOL:
        raise NormalizationError("|a|^2 + |b|^2 must equal 1")
    return SpinorField(offset=int(n0), amps=np.array([[a, b]], dtype=np.complex128))


def from_bloch(n0: int, angles: BlochAngles) -> SpinorField:
    """Localized field with a = cos(gamma/2), b = e^(i*phi) * sin(gamma/2)."""
    a = math.cos(angles.gamma / 2.0)
    b = cmath.exp(1j * angles.phi) * math.sin(angles.gamma / 2.0)
    return SpinorField(offset=int(n0), amps=np.array([[a, b]], dtype=np.complex128))


def probability(field: SpinorField) -> list[tuple[int, float]]:
    """Per-site probabilities |psi_R|^2 + |psi_L|^2 as (site, p) pairs."""
    ps = field.site_probabilities()
    return [(int(n), float(p)) for n, p in zip(field.sites, ps)]


def position_moment(field: SpinorField, r: int) -> float:
    """r-th moment of the position distribution, in lattice-index units."""
    if r < 1:
        raise ValueError("moment order r must be a positive integer")
    ns = field.sites.astype(float)
    return float(np.sum(ns**r * field.site_probabilities()))


def std_deviation(field: SpinorField) -> float:
    mean = position_moment(field, 1)
    var = position_moment(field, 2) - mean * mean
    # var can round slightly negative for a point mass
    return math.sqrt(max(var, 0.0))

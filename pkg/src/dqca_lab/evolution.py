"""Step operators and momentum-space machinery for the three lattice models.

Models
------
QW      coined walk: coin rotation C(theta) followed by the conditional shift.
DQCA    Dirac automaton: damped conditional shift plus an on-site -i*beta*sigma_x
        internal kick (the stay-put term that distinguishes it from the walk).
Meyer   general banded two-component cellular automaton with matrices
        parametrized by (rho, theta_m).

All three are nearest-neighbour banded unitaries

    psi(n, t+1) = wm @ psi(n-1, t) + w0 @ psi(n, t) + wp @ psi(n+1, t)

and become 2x2 blocks U(p) = wm e^{-ip} + w0 + wp e^{+ip} in the
quasi-momentum basis.  The momentum variable used throughout is the
dimensionless p*d/hbar in [-pi, pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .backend import evolve_banded
from .state import LatticeUnits, SpinorField, _trim_window

_SIN_FLOOR = 1e-14


class SingularPointError(ValueError):
    """Raised where sin(lambda(p)) vanishes and v(p) or H(p) is undefined."""


@dataclass(frozen=True)
class QW:
    """Coined-walk parameters; theta in [0, pi/2] biases the coin toss."""

    theta: float
    units: LatticeUnits = LatticeUnits()

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi / 2.0:
            raise ValueError("theta must lie in [0, pi/2]")


@dataclass(frozen=True)
class DQCA:
    """Dirac-automaton parameters; |beta| <= 1 plays the role of a mass."""

    beta: float
    units: LatticeUnits = LatticeUnits()

    def __post_init__(self):
        if not abs(self.beta) <= 1.0:
            raise ValueError("|beta| must not exceed 1")


@dataclass(frozen=True)
class Meyer:
    """Banded-automaton parameters (rho, theta_m); any reals are unitary."""

    rho: float
    theta_m: float
    units: LatticeUnits = LatticeUnits()


ModelParams = Union[QW, DQCA, Meyer]


def band_matrices(params: ModelParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The (wm, w0, wp) block matrices of the one-step banded update."""
    if isinstance(params, QW):
        ct, st = math.cos(params.theta), math.sin(params.theta)
        wm = np.array([[ct, -st], [0, 0]], dtype=np.complex128)
        w0 = np.zeros((2, 2), dtype=np.complex128)
        wp = np.array([[0, 0], [st, ct]], dtype=np.complex128)
    elif isinstance(params, DQCA):
        c = math.sqrt(1.0 - params.beta**2)
        ib = -1j * params.beta
        wm = np.array([[c, 0], [0, 0]], dtype=np.complex128)
        w0 = np.array([[0, ib], [ib, 0]], dtype=np.complex128)
        wp = np.array([[0, 0], [0, c]], dtype=np.complex128)
    elif isinstance(params, Meyer):
        cr, sr = math.cos(params.rho), math.sin(params.rho)
        ct, st = math.cos(params.theta_m), math.sin(params.theta_m)
        wm = cr * np.array([[0, 1j * st], [0, ct]], dtype=np.complex128)
        w0 = sr * np.array([[st, -1j * ct], [-1j * ct, st]], dtype=np.complex128)
        wp = cr * np.array([[ct, 0], [1j * st, 0]], dtype=np.complex128)
    else:
        raise TypeError(f"unsupported model parameters: {params!r}")
    return wm, w0, wp


def evolve(field: SpinorField, params: ModelParams, t: int) -> SpinorField:
    """Apply t steps of the model's unitary; t = 0 returns the input field."""
    t = int(t)
    if t < 0:
        raise ValueError("step count must be non-negative")
    if t == 0:
        return field
    wm, w0, wp = band_matrices(params)
    amps = evolve_banded(field.amps, wm, w0, wp, t)
    offset, amps = _trim_window(field.offset - t, amps)
    return SpinorField._from_evolution(offset, amps, field.step_count + t)


def step(field: SpinorField, params: ModelParams) -> SpinorField:
    return evolve(field, params, 1)


def qw_step(field: SpinorField, params: QW) -> SpinorField:
    if not isinstance(params, QW):
        raise TypeError("qw_step requires QW parameters")
    return step(field, params)


def dqca_step(field: SpinorField, params: DQCA) -> SpinorField:
    if not isinstance(params, DQCA):
        raise TypeError("dqca_step requires DQCA parameters")
    return step(field, params)


def meyer_step(field: SpinorField, params: Meyer) -> SpinorField:
    if not isinstance(params, Meyer):
        raise TypeError("meyer_step requires Meyer parameters")
    return step(field, params)


def momentum_unitary(p: float, params: ModelParams) -> np.ndarray:
    """The 2x2 block U(p) = wm e^{-ip} + w0 + wp e^{+ip}."""
    wm, w0, wp = band_matrices(params)
    phase = np.exp(1j * float(p))
    return wm / phase + w0 + wp * phase


def _dispersion_coeffs(params: ModelParams) -> tuple[float, float]:
    # Half-trace of U(p) is real for all three models: cos(lambda) = A + K cos p.
    if isinstance(params, QW):
        return 0.0, math.cos(params.theta)
    if isinstance(params, DQCA):
        return 0.0, math.sqrt(1.0 - params.beta**2)
    if isinstance(params, Meyer):
        return (
            math.sin(params.rho) * math.sin(params.theta_m),
            math.cos(params.rho) * math.cos(params.theta_m),
        )
    raise TypeError(f"unsupported model parameters: {params!r}")


def dispersion(p, params: ModelParams):
    """Eigenphase lambda(p) in [0, pi] of U(p); eigenvalues are e^{-+i lambda}.

    Accepts a scalar or an array of momenta.
    """
    a, k = _dispersion_coeffs(params)
    lam = np.arccos(np.clip(a + k * np.cos(p), -1.0, 1.0))
    return lam.item() if np.ndim(lam) == 0 else lam


def group_velocity(p, params: ModelParams):
    """d(lambda)/dp.  Singular where sin(lambda) = 0 (only at |K| = 1)."""
    a, k = _dispersion_coeffs(params)
    lam = np.arccos(np.clip(a + k * np.cos(p), -1.0, 1.0))
    sl = np.sin(lam)
    if np.any(sl < _SIN_FLOOR):
        raise SingularPointError("group velocity undefined where sin(lambda) = 0")
    v = k * np.sin(p) / sl
    return v.item() if np.ndim(v) == 0 else v


@dataclass(frozen=True)
class MomentumEigensystem:
    """Dispersion data of the Dirac automaton at one quasi-momentum."""

    p: float
    lam: float
    v: float
    phi_plus: np.ndarray
    phi_minus: np.ndarray


def eigensystem(p: float, params: DQCA) -> MomentumEigensystem:
    """Closed-form eigenvectors of the Dirac-automaton block U(p).

    phi_s = (sqrt(1+s*v), s*sqrt(1-s*v)) / sqrt(2) with eigenvalue e^{-i*s*lam}.
    """
    if not isinstance(params, DQCA):
        raise TypeError("eigensystem requires DQCA parameters")
    p = float(p)
    lam = dispersion(p, params)
    v = group_velocity(p, params)  # raises at singular points
    vecs = {}
    for s in (+1, -1):
        vecs[s] = np.array(
            [math.sqrt(max(1.0 + s * v, 0.0)), s * math.sqrt(max(1.0 - s * v, 0.0))],
            dtype=np.complex128,
        ) / math.sqrt(2.0)
    return MomentumEigensystem(p=p, lam=lam, v=v, phi_plus=vecs[+1], phi_minus=vecs[-1])


def _matrix_power_batch(u: np.ndarray, t: int) -> np.ndarray:
    """u^t for a stack of 2x2 matrices via repeated squaring.

    Keeps the rounding error at O(log t) matrix products instead of the
    O(t * eps / sin lambda) growth of an eigenphase route.
    """
    result = np.broadcast_to(np.eye(2, dtype=np.complex128), u.shape).copy()
    base = u.copy()
    while t:
        if t & 1:
            result = base @ result
        t >>= 1
        if t:
            base = base @ base
    return result


def spectral_evolve(
    init: SpinorField, params: ModelParams, t: int, grid_size: int | None = None
) -> SpinorField:
    """Evolve t steps through the quasi-momentum representation.

    Exact (not approximate) second engine: the state is band-limited on the
    integer lattice, so an FFT grid with no wraparound reproduces direct
    stepping to rounding error.  grid_size defaults to the next power of two
    holding the grown support; an explicit value must be even and at least
    support + 2*t + 1.
    """
    t = int(t)
    if t < 0:
        raise ValueError("step count must be non-negative")
    if t == 0:
        return init
    support = init.amps.shape[0]
    needed = support + 2 * t + 1
    if grid_size is None:
        grid_size = 1 << (needed - 1).bit_length()
    else:
        grid_size = int(grid_size)
        if grid_size % 2:
            raise ValueError("grid_size must be even")
        if grid_size < needed:
            raise ValueError(
                f"grid_size {grid_size} < {needed} would wrap the support around"
            )

    wm, w0, wp = band_matrices(params)
    ps = 2.0 * np.pi * np.fft.fftfreq(grid_size)
    phase = np.exp(1j * ps)[:, None, None]
    u = wm[None, :, :] / phase + w0[None, :, :] + wp[None, :, :] * phase
    ut = _matrix_power_batch(u, t)

    arr = np.zeros((grid_size, 2), dtype=np.complex128)
    arr[t : t + support] = init.amps
    spec = np.fft.fft(arr, axis=0)
    spec = np.einsum("kij,kj->ki", ut, spec)
    out = np.fft.ifft(spec, axis=0)[: support + 2 * t]

    offset, amps = _trim_window(init.offset - t, out)
    return SpinorField._from_evolution(offset, amps, init.step_count + t)


def extract_hamiltonian(
    p: float, params: ModelParams, units: LatticeUnits | None = None
) -> np.ndarray:
    """Hermitian generator H(p) with exp(-i*tau*H(p)/hbar) = U(p).

    Uses H = (hbar*lam / (tau*sin lam)) * (i/2)(U - U^dag), the matrix
    logarithm specialized to a det-1 unitary with eigenphases -+lam.  For the
    Dirac automaton this is the closed form
    (hbar*lam/(tau*sin lam)) * [[sqrt(1-beta^2) sin p, beta], [beta, ...]].
    """
    if units is None:
        units = params.units
    p = float(p)
    lam = dispersion(p, params)
    sl = math.sin(lam)
    if sl < _SIN_FLOOR:
        raise SingularPointError("H(p) undefined where sin(lambda) = 0")
    u = momentum_unitary(p, params)
    h = (units.hbar * lam / (units.tau * sl)) * (0.5j) * (u - u.conj().T)
    return 0.5 * (h + h.conj().T)  # scrub rounding asymmetry


def dirac_limit_check(params: DQCA, units: LatticeUnits | None = None, p_max: float = 0.1) -> float:
    """Max operator-norm gap between H(p) and the Dirac Hamiltonian.

    The comparison matrix is [[c*P, m*c^2], [m*c^2, -c*P]] with physical
    momentum P = hbar*p/d and mass m = beta*hbar/(d*c).  Requires tau = d/c.
    Vanishes as beta and p_max go to zero (cubic in the small parameters).
    """
    if not isinstance(params, DQCA):
        raise TypeError("dirac_limit_check requires DQCA parameters")
    if units is None:
        units = params.units
    if not math.isclose(units.tau, units.d / units.c, rel_tol=1e-12):
        raise ValueError("Dirac limit requires tau = d/c")
    mass_term = params.beta * units.hbar / units.tau  # m*c^2 with m = beta*hbar/(d*c)
    worst = 0.0
    for q in np.linspace(-p_max, p_max, 129):
        try:
            h = extract_hamiltonian(q, params, units)
        except SingularPointError:
            continue  # only at q=0 for beta=0, where both matrices vanish
        p_phys = units.hbar * q / units.d
        dirac = np.array(
            [[units.c * p_phys, mass_term], [mass_term, -units.c * p_phys]],
            dtype=np.complex128,
        )
        worst = max(worst, float(np.linalg.norm(h - dirac, 2)))
    return worst

"""Entanglement between the internal (coin) space and the lattice.

The reduced coin state of a pure lattice spinor is the 2x2 matrix obtained by
tracing out position; its von Neumann entropy measures how entangled the two
sectors have become.  For the Dirac automaton the long-time, time-averaged
reduced state has a closed form in the initial amplitudes, exposed here next
to the instantaneous quantities so the two can be compared.
"""

from __future__ import annotations

import cmath
import math
import warnings

import numpy as np

from .evolution import ModelParams, evolve
from .state import NORM_TOL, BlochAngles, SpinorField

_EIG_FLOOR = 1e-15


def reduced_density(field: SpinorField) -> np.ndarray:
    """Trace out position: rho = sum over sites of psi(n) psi(n)^dagger."""
    return np.einsum("ni,nj->ij", field.amps, field.amps.conj())


def entropy(rho: np.ndarray) -> float:
    """Von Neumann entropy -Tr(rho log2 rho) of a 2x2 density matrix.

    Eigenvalues are clamped to [0, 1] and anything below 1e-15 is treated as
    an exact zero (0 log 0 = 0), so pure states give exactly 0.0.
    """
    w = np.linalg.eigvalsh(np.asarray(rho, dtype=np.complex128))
    w = np.clip(w.real, 0.0, 1.0)
    w = w[w >= _EIG_FLOOR]
    return float(-(w * np.log2(w)).sum()) + 0.0  # +0.0 scrubs -0.0 for pure states


def asymptotic_reduced_density(beta: float, a: complex, b: complex) -> np.ndarray:
    """Time-averaged long-time reduced coin state of the Dirac automaton.

    For a walk started from amplitudes (a, b) on one site,

        rho = (1/2) [[beta|b|^2 - (beta-2)|a|^2,  2 beta Re(a b*)      ],
                     [2 beta Re(a b*),            beta|a|^2 - (beta-2)|b|^2]]

    which has unit trace by construction.  The time-averaging argument
    behind the formula degenerates at beta = 0 (massless, no averaging) and
    beta = 1 (flat dispersion), so those endpoints trigger a warning.
    """
    beta = float(beta)
    if not 0.0 <= beta <= 1.0:
        raise ValueError("beta must lie in [0, 1]")
    if beta in (0.0, 1.0):
        warnings.warn(
            "asymptotic reduced density is degenerate at beta = 0 or 1",
            stacklevel=2,
        )
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > NORM_TOL:
        raise ValueError("initial amplitudes must satisfy |a|^2+|b|^2 = 1")
    aa = abs(a) ** 2
    bb = abs(b) ** 2
    off = beta * (a * np.conj(b)).real
    return np.array(
        [
            [0.5 * (beta * bb - (beta - 2.0) * aa), off],
            [off, 0.5 * (beta * aa - (beta - 2.0) * bb)],
        ],
        dtype=np.complex128,
    )


def asymptotic_reduced_density_bloch(beta: float, angles: BlochAngles) -> np.ndarray:
    """Same asymptotic state parametrized by Bloch angles.

    Substitutes a = cos(gamma/2), b = e^{i phi} sin(gamma/2); in these
    variables the diagonal reads (1 +- (1-beta) cos gamma)/2 and the
    off-diagonal (beta/2) sin gamma cos phi, so the state is maximally mixed
    on the circle gamma = pi/2, phi in {pi/2, 3pi/2} for every beta.
    """
    a = math.cos(angles.gamma / 2.0)
    b = cmath.exp(1j * angles.phi) * math.sin(angles.gamma / 2.0)
    return asymptotic_reduced_density(beta, a, b)


def entropy_series(
    init: SpinorField, params: ModelParams, t_max: int
) -> list[tuple[int, float]]:
    """Entanglement entropy after each of t = 0 .. t_max exact steps."""
    t_max = int(t_max)
    if t_max < 1:
        raise ValueError("t_max must be a positive integer")
    out = []
    field = init
    for t in range(t_max + 1):
        if t:
            field = evolve(field, params, 1)
        out.append((t, entropy(reduced_density(field))))
    return out

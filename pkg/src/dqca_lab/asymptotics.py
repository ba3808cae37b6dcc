"""Long-time analytic machinery for the Dirac automaton and the coined walk.

Two complementary approximations to the distribution after many steps:

* the weak limit, a smooth density for the rescaled position x/t that
  captures the envelope and all moments but none of the fringes;
* the stationary-phase closed forms for the oscillatory Fourier integrals,
  which do resolve the fringes at lattice sites.

The oscillatory integrals can also be evaluated by brute-force panel
quadrature (`oscillatory_integral`), which serves as the exact reference the
closed forms are judged against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .evolution import DQCA, dispersion, group_velocity
from .state import NORM_TOL, NormalizationError

_BOUNDARY_MARGIN = 1e-9
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)
_MAX_PANELS = 1 << 17


def _require_mass(beta: float) -> float:
    beta = float(beta)
    if not 0.0 < abs(beta) < 1.0:
        raise ValueError("mass parameter must satisfy 0 < |beta| < 1")
    return beta


def weak_limit_pdf_dqca(y: float, beta: float) -> float:
    """Limiting density of x/t for the Dirac automaton.

    |beta| / (pi (1-y^2) sqrt(1-beta^2-y^2)) on |y| < sqrt(1-beta^2); the
    density is even in y and diverges (integrably) at the support edge.
    """
    beta = _require_mass(beta)
    y = float(y)
    rad = 1.0 - beta**2 - y * y
    if rad <= 0.0:
        raise ValueError("y outside the open support |y| < sqrt(1-beta^2)")
    return abs(beta) / (math.pi * (1.0 - y * y) * math.sqrt(rad))


def weak_limit_pdf_qw(y: float, theta: float, a: complex, b: complex) -> float:
    """Limiting density of x/t for the coined walk started from (a, b).

    The even envelope |sin t| / (pi (1-y^2) sqrt(cos^2 t - y^2)) times a
    linear tilt fixed by the initial spinor; the tilt drops out for the
    symmetric start a = 1/sqrt(2), b = i/sqrt(2).
    """
    theta = float(theta)
    if not 0.0 < theta < math.pi / 2.0:
        raise ValueError("theta must lie strictly inside (0, pi/2)")
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > NORM_TOL:
        raise NormalizationError("initial amplitudes must satisfy |a|^2+|b|^2 = 1")
    y = float(y)
    ct = math.cos(theta)
    rad = ct * ct - y * y
    if rad <= 0.0:
        raise ValueError("y outside the open support |y| < |cos theta|")
    tilt = 1.0 - (abs(b) ** 2 - abs(a) ** 2 - math.sin(2 * theta) * (a * np.conj(b)).real / ct**2) * y
    return abs(math.sin(theta)) / (math.pi * (1.0 - y * y) * math.sqrt(rad)) * tilt


def weak_limit_moment(r: int, beta: float) -> float:
    """r-th moment of the Dirac-automaton weak-limit density.

    Odd moments vanish by symmetry and are returned as exact zeros.  Even
    moments are integrated after the substitution y = bound*sin(u), which
    removes the inverse-square-root endpoint singularities.
    """
    r = int(r)
    if r < 1:
        raise ValueError("moment order must be a positive integer")
    beta = _require_mass(beta)
    if r % 2:
        return 0.0
    bound = math.sqrt(1.0 - beta**2)
    ab = abs(beta)

    def integrand(u):
        s = bound * math.sin(u)
        return s**r * ab / (math.pi * (1.0 - s * s))

    val, _ = quad(integrand, -math.pi / 2.0, math.pi / 2.0, epsabs=1e-12, epsrel=1e-12)
    return val


def weak_limit_mass(lo: float, hi: float, beta: float) -> float:
    """Probability the weak-limit variable falls in [lo, hi], in closed form.

    The substitution y = bound*sin(u) turns the density into a rational
    function of tan(u) with antiderivative arctan(|beta| tan u)/pi, so bin
    masses need no quadrature at all.
    """
    beta = _require_mass(beta)
    bound = math.sqrt(1.0 - beta**2)
    ab = abs(beta)
    lo = max(float(lo), -bound)
    hi = min(float(hi), bound)
    if hi <= lo:
        return 0.0

    def cdf(y):
        u = math.asin(y / bound)
        if u >= math.pi / 2.0 - 1e-15:
            return 1.0
        if u <= -math.pi / 2.0 + 1e-15:
            return 0.0
        return (math.atan(ab * math.tan(u)) + math.pi / 2.0) / math.pi

    return cdf(hi) - cdf(lo)


def asymptotic_sigma(t: float, beta: float) -> float:
    """Ballistic width t*sqrt(1-|beta|) of the position distribution."""
    t = float(t)
    if t < 0.0:
        raise ValueError("time must be non-negative")
    if abs(beta) > 1.0:
        raise ValueError("|beta| must not exceed 1")
    return t * math.sqrt(1.0 - abs(beta))


@dataclass(frozen=True)
class StationaryPointData:
    """Stationary-point geometry of the phase lambda(p) + alpha*p."""

    alpha: float
    p_s: float
    lambda_s: float
    lambda_pp: float
    phi_alpha: float


def stationary_points(alpha: float, beta: float) -> StationaryPointData:
    """Solve v(p) = -alpha for the Dirac automaton and package the geometry.

    For alpha > 0 the roots are -p_s and pi + p_s with
    p_s = arccos sqrt((1-beta^2-alpha^2) / ((1-alpha^2)(1-beta^2))); the sign
    of alpha only mirrors them, so all returned fields depend on |alpha|.
    The phase curvature lambda_pp vanishes at |alpha| = sqrt(1-beta^2), which
    is excluded (the closed forms diverge there).
    """
    beta = _require_mass(beta)
    alpha = float(alpha)
    bound = math.sqrt(1.0 - beta**2)
    if abs(alpha) > bound * (1.0 - _BOUNDARY_MARGIN):
        raise ValueError("alpha at or beyond the causal boundary sqrt(1-beta^2)")
    num = 1.0 - beta**2 - alpha**2
    den = (1.0 - alpha**2) * (1.0 - beta**2)
    p_s = math.acos(min(1.0, math.sqrt(num / den)))
    lambda_s = math.acos(max(-1.0, min(1.0, bound * math.cos(p_s))))
    lambda_pp = math.sqrt(num) * (1.0 - alpha**2) / abs(beta)
    return StationaryPointData(
        alpha=alpha,
        p_s=p_s,
        lambda_s=lambda_s,
        lambda_pp=lambda_pp,
        phi_alpha=lambda_s - abs(alpha) * p_s,
    )


@dataclass(frozen=True)
class OscillatoryIntegralResult:
    value: complex
    method: str  # "exact-quadrature" | "stationary-phase"
    est_error: float


class QuadratureError(RuntimeError):
    """Panel refinement hit its budget; .best holds the last estimate."""

    def __init__(self, message: str, best: complex, est_error: float):
        super().__init__(message)
        self.best = best
        self.est_error = est_error


def _phase_weight(kind: int, p: np.ndarray, params: DQCA) -> np.ndarray:
    if kind == 1:
        return np.ones_like(p)
    v = group_velocity(p, params)
    if kind == 2:
        return v
    if kind == 3:
        return np.sqrt(np.clip(1.0 - v * v, 0.0, None))
    raise ValueError("kind must be 1, 2 or 3")


def oscillatory_integral(
    kind: int, alpha: float, t: int, beta: float, tol: float = 1e-8
) -> OscillatoryIntegralResult:
    """Brute-force evaluation of the Fourier integral behind the spinor.

    Integrates e^{i t (lambda(p) + alpha p)} g(p) / (2 pi) over one Brillouin
    zone with composite 16-point Gauss-Legendre panels, doubling the panel
    count until two refinements agree to `tol`.  The integrand completes
    roughly t oscillations, so the initial panel count scales with t.
    """
    kind = int(kind)
    if kind not in (1, 2, 3):
        raise ValueError("kind must be 1, 2 or 3")
    t = int(t)
    if t < 1:
        raise ValueError("time step must be a positive integer")
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    beta = _require_mass(beta)
    alpha = float(alpha)
    params = DQCA(beta)

    def composite(panels: int) -> complex:
        h = 2.0 * math.pi / panels
        centers = -math.pi + h * (np.arange(panels) + 0.5)
        nodes = (centers[:, None] + 0.5 * h * _GL_NODES[None, :]).ravel()
        lam = dispersion(nodes, params)
        vals = np.exp(1j * t * (lam + alpha * nodes)) * _phase_weight(kind, nodes, params)
        per_panel = vals.reshape(panels, _GL_NODES.size) @ _GL_WEIGHTS
        return complex(per_panel.sum() * (0.5 * h) / (2.0 * math.pi))

    panels = max(8, t)
    prev = None
    while True:
        cur = composite(panels)
        if prev is not None and abs(cur - prev) <= tol:
            return OscillatoryIntegralResult(cur, "exact-quadrature", abs(cur - prev))
        if 2 * panels > _MAX_PANELS:
            est = abs(cur - prev) if prev is not None else math.inf
            raise QuadratureError(
                f"no convergence to {tol:g} within {_MAX_PANELS} panels", cur, est
            )
        prev = cur
        panels *= 2


def stationary_phase_integral(
    kind: int, alpha: float, t: int, beta: float
) -> OscillatoryIntegralResult:
    """Leading-order stationary-phase value of the same Fourier integral.

    Both stationary points contribute:

        I ~ (2 pi t lambda_pp)^{-1/2} [e^{i(t phi + pi/4)}
                                       + e^{i(t(|alpha| pi - phi + pi) - pi/4)}]

    with phi = lambda_s - |alpha| p_s, then scaled by -alpha (kind 2) or
    sqrt(1-alpha^2) (kind 3).  The quoted est_error is the next-order scale
    (t lambda_pp)^{-3/2}, a heuristic, not a bound.
    """
    kind = int(kind)
    if kind not in (1, 2, 3):
        raise ValueError("kind must be 1, 2 or 3")
    t = int(t)
    if t < 1:
        raise ValueError("time step must be a positive integer")
    sp = stationary_points(alpha, beta)
    amp = 1.0 / math.sqrt(2.0 * math.pi * t * sp.lambda_pp)
    val = amp * (
        np.exp(1j * (t * sp.phi_alpha + math.pi / 4.0))
        + np.exp(1j * (t * (abs(sp.alpha) * math.pi - sp.phi_alpha + math.pi) - math.pi / 4.0))
    )
    if kind == 2:
        val = -sp.alpha * val
    elif kind == 3:
        val = math.sqrt(1.0 - sp.alpha**2) * val
    return OscillatoryIntegralResult(
        complex(val), "stationary-phase", (t * sp.lambda_pp) ** -1.5
    )


def stationary_phase_spinor(
    n: int, t: int, beta: float, a: complex, b: complex
) -> tuple[complex, complex]:
    """Approximate spinor at lattice site n after t steps, start (a, b) at 0.

    Assembles psi_R = a Re I1 - a Re I2 - i b Im I3 and
    psi_L = b Re I1 + b Re I2 - i a Im I3 from the stationary-phase values.
    Outside the causal cone |n| <= t sqrt(1-beta^2) the amplitudes are
    exponentially small and are clamped to exact zeros.
    """
    n = int(n)
    t = int(t)
    if t < 1:
        raise ValueError("time step must be a positive integer")
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > NORM_TOL:
        raise NormalizationError("initial amplitudes must satisfy |a|^2+|b|^2 = 1")
    beta = _require_mass(beta)
    alpha = n / t
    bound = math.sqrt(1.0 - beta**2)
    if abs(alpha) > bound * (1.0 - _BOUNDARY_MARGIN):
        return (0j, 0j)
    i1 = stationary_phase_integral(1, alpha, t, beta).value
    i2 = -alpha * i1
    i3 = math.sqrt(1.0 - alpha**2) * i1
    psi_r = a * i1.real - a * i2.real - 1j * b * i3.imag
    psi_l = b * i1.real + b * i2.real - 1j * a * i3.imag
    return (complex(psi_r), complex(psi_l))


def stationary_phase_prob_right_init(alpha: float, t: int, beta: float) -> float:
    """Closed-form site probability for the start (1, 0), lattice points only.

    P = (pi t lambda_pp)^{-1} {(1+alpha)^2 [1+(-1)^{t+n}] cos^2(t phi + pi/4)
                               + (1-alpha^2) [1-(-1)^{t+n}] sin^2(t phi + pi/4)}

    where n = t*alpha must be an integer: the parity factor is computed from
    the integers t and n, never from floating-point powers.  Unlike the
    coined walk, both parities carry weight at every time step.
    """
    t = int(t)
    if t < 1:
        raise ValueError("time step must be a positive integer")
    alpha = float(alpha)
    n_real = alpha * t
    n = round(n_real)
    if abs(n_real - n) > 1e-9:
        raise ValueError("alpha*t must be an integer (lattice point)")
    sp = stationary_points(alpha, beta)
    sign = 1 if (t + n) % 2 == 0 else -1
    arg = t * sp.phi_alpha + math.pi / 4.0
    return (
        (1.0 + alpha) ** 2 * (1 + sign) * math.cos(arg) ** 2
        + (1.0 - alpha**2) * (1 - sign) * math.sin(arg) ** 2
    ) / (math.pi * t * sp.lambda_pp)

"""Simulation toolkit for the Dirac quantum cellular automaton and the
one-dimensional discrete-time quantum walk.

Exact lattice evolution (direct banded stepping and an FFT spectral engine),
long-time analytic approximations (weak-limit density and stationary-phase
reconstruction), coin-lattice entanglement measures, and a CSV-emitting CLI.
"""

import os

# Thread cap must land in the environment before numpy loads its BLAS.
_threads = os.environ.get("DQCA_LAB_THREADS")
if _threads:
    for _var in (
        "OMP_NUM_THREADS",
        "OPENBLAS_NUM_THREADS",
        "MKL_NUM_THREADS",
        "NUMEXPR_NUM_THREADS",
    ):
        os.environ.setdefault(_var, _threads)
del os, _threads

__version__ = "0.1.0"

from .backend import active_backend
from .state import (
    BlochAngles,
    LatticeUnits,
    NormalizationError,
    SpinorField,
    from_bloch,
    make_localized,
    position_moment,
    probability,
    std_deviation,
)
from .evolution import (
    DQCA,
    Meyer,
    ModelParams,
    MomentumEigensystem,
    QW,
    SingularPointError,
    band_matrices,
    dirac_limit_check,
    dispersion,
    dqca_step,
    eigensystem,
    evolve,
    extract_hamiltonian,
    group_velocity,
    meyer_step,
    momentum_unitary,
    qw_step,
    spectral_evolve,
    step,
)
from .asymptotics import (
    OscillatoryIntegralResult,
    QuadratureError,
    StationaryPointData,
    asymptotic_sigma,
    oscillatory_integral,
    stationary_phase_integral,
    stationary_phase_prob_right_init,
    stationary_phase_spinor,
    stationary_points,
    weak_limit_mass,
    weak_limit_moment,
    weak_limit_pdf_dqca,
    weak_limit_pdf_qw,
)
from .entanglement import (
    asymptotic_reduced_density,
    asymptotic_reduced_density_bloch,
    entropy,
    entropy_series,
    reduced_density,
)

__all__ = [
    "__version__",
    "active_backend",
    "BlochAngles",
    "LatticeUnits",
    "NormalizationError",
    "SpinorField",
    "from_bloch",
    "make_localized",
    "position_moment",
    "probability",
    "std_deviation",
    "DQCA",
    "Meyer",
    "ModelParams",
    "MomentumEigensystem",
    "QW",
    "SingularPointError",
    "band_matrices",
    "dirac_limit_check",
    "dispersion",
    "dqca_step",
    "eigensystem",
    "evolve",
    "extract_hamiltonian",
    "group_velocity",
    "meyer_step",
    "momentum_unitary",
    "qw_step",
    "spectral_evolve",
    "step",
    "OscillatoryIntegralResult",
    "QuadratureError",
    "StationaryPointData",
    "asymptotic_sigma",
    "oscillatory_integral",
    "stationary_phase_integral",
    "stationary_phase_prob_right_init",
    "stationary_phase_spinor",
    "stationary_points",
    "weak_limit_mass",
    "weak_limit_moment",
    "weak_limit_pdf_dqca",
    "weak_limit_pdf_qw",
    "asymptotic_reduced_density",
    "asymptotic_reduced_density_bloch",
    "entropy",
    "entropy_series",
    "reduced_density",
]

"""Kernel backend selection: compiled extension if built, numpy otherwise."""

try:
    from . import _kernels as _impl
except ImportError:  # extension not compiled on this install
    from . import _kernels_py as _impl

step_banded = _impl.step_banded
evolve_banded = _impl.evolve_banded


def active_backend() -> str:
    """Name of the stepping kernel in use: 'compiled' or 'numpy'."""
    return _impl.BACKEND_NAME

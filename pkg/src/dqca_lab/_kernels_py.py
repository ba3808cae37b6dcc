"""Pure-numpy fallback for the banded stepping kernel.

Semantics are identical to the compiled extension: ``evolve_banded`` applies
``steps`` rounds of

    new[n] = wm @ old[n-1] + w0 @ old[n] + wp @ old[n+1]

to a field stored as an (N, 2) complex array, growing the window by one site
on each side per step.  Output shape is (N + 2*steps, 2).
"""

import numpy as np

BACKEND_NAME = "numpy"


def step_banded(amps: np.ndarray, wm: np.ndarray, w0: np.ndarray, wp: np.ndarray) -> np.ndarray:
    """One banded update; output row j corresponds to input row j-1."""
    n = amps.shape[0]
    out = np.zeros((n + 2, 2), dtype=np.complex128)
    out[2:] += amps @ wm.T
    out[1:-1] += amps @ w0.T
    out[:-2] += amps @ wp.T
    return out


def evolve_banded(
    amps: np.ndarray, wm: np.ndarray, w0: np.ndarray, wp: np.ndarray, steps: int
) -> np.ndarray:
    cur = np.asarray(amps, dtype=np.complex128)
    wmT = wm.T.copy()
    w0T = w0.T.copy()
    wpT = wp.T.copy()
    for _ in range(steps):
        n = cur.shape[0]
        nxt = np.zeros((n + 2, 2), dtype=np.complex128)
        nxt[2:] += cur @ wmT
        nxt[1:-1] += cur @ w0T
        nxt[:-2] += cur @ wpT
        cur = nxt
    return cur

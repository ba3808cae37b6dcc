import math

import numpy as np
import pytest

BETA_STAR = 1.0 / math.sqrt(2.0)


def oracle_evolve(amp_map, mats, steps):
    """Dict-based reference stepper, independent of the array kernels.

    amp_map: {site: (psi_R, psi_L)}.  Applies new[n] = wm@old[n-1] +
    w0@old[n] + wp@old[n+1] literally, site by site.
    """
    wm, w0, wp = mats
    state = {int(n): np.asarray(v, dtype=complex) for n, v in amp_map.items()}
    for _ in range(steps):
        new = {}
        for n, vec in state.items():
            for shift, mat in ((1, wm), (0, w0), (-1, wp)):
                tgt = n + shift
                if tgt not in new:
                    new[tgt] = np.zeros(2, dtype=complex)
                new[tgt] += mat @ vec
        state = new
    return state


def field_to_map(field):
    return {int(n): field.amps[i] for i, n in enumerate(field.sites)}


def max_map_diff(map_a, map_b):
    diff = 0.0
    for n in set(map_a) | set(map_b):
        va = map_a.get(n, np.zeros(2))
        vb = map_b.get(n, np.zeros(2))
        diff = max(diff, float(np.abs(va - vb).max()))
    return diff


@pytest.fixture
def rng():
    return np.random.default_rng(20260815)


def random_localized_map(rng, width=4):
    amps = rng.normal(size=(width, 2)) + 1j * rng.normal(size=(width, 2))
    amps /= np.sqrt((np.abs(amps) ** 2).sum())
    return {n - width // 2: amps[n] for n in range(width)}

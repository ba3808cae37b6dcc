import math

import numpy as np
import pytest

from dqca_lab import (
    DQCA,
    BlochAngles,
    LatticeUnits,
    NormalizationError,
    SpinorField,
    evolve,
    from_bloch,
    make_localized,
    position_moment,
    probability,
    std_deviation,
)


def test_make_localized_basic():
    f = make_localized(3, 1.0, 0.0)
    assert f.offset == 3
    assert f.step_count == 0
    assert f.amps.shape == (1, 2)
    assert f.amps[0, 0] == 1.0 and f.amps[0, 1] == 0.0
    assert f.norm_sq() == pytest.approx(1.0, abs=1e-15)
    assert list(f.sites) == [3]


def test_make_localized_rejects_unnormalized():
    with pytest.raises(NormalizationError):
        make_localized(0, 1.0, 1.0)
    with pytest.raises(NormalizationError):
        make_localized(0, 0.5, 0.5)


def test_field_validation():
    with pytest.raises(ValueError):
        SpinorField(offset=0, amps=np.zeros((3,), dtype=complex))
    with pytest.raises(ValueError):
        SpinorField(offset=0, amps=np.zeros((0, 2), dtype=complex))
    with pytest.raises(ValueError):
        SpinorField(offset=0, amps=np.array([[np.nan, 0.0]], dtype=complex))
    with pytest.raises(NormalizationError):
        SpinorField(offset=0, amps=np.array([[0.5, 0.5]], dtype=complex))
    with pytest.raises(ValueError):
        SpinorField(offset=0, amps=np.array([[1.0, 0.0]], dtype=complex), step_count=-1)


def test_amps_are_read_only():
    f = make_localized(0, 1.0, 0.0)
    with pytest.raises(ValueError):
        f.amps[0, 0] = 0.0


def test_from_bloch():
    f = from_bloch(0, BlochAngles(0.0, 0.0))
    assert f.amps[0, 0] == 1.0 and f.amps[0, 1] == 0.0
    f = from_bloch(2, BlochAngles(math.pi / 2.0, math.pi / 2.0))
    assert f.offset == 2
    assert abs(f.amps[0, 0] - 1.0 / math.sqrt(2.0)) < 1e-15
    assert abs(f.amps[0, 1] - 1j / math.sqrt(2.0)) < 1e-15


def test_bloch_angles_ranges():
    with pytest.raises(ValueError):
        BlochAngles(-0.1, 0.0)
    with pytest.raises(ValueError):
        BlochAngles(math.pi + 0.1, 0.0)
    with pytest.raises(ValueError):
        BlochAngles(1.0, 2.0 * math.pi)
    with pytest.raises(ValueError):
        BlochAngles(1.0, -0.1)
    BlochAngles(math.pi, 0.0)  # boundary gamma allowed


def test_lattice_units_positive():
    with pytest.raises(ValueError):
        LatticeUnits(d=0.0)
    with pytest.raises(ValueError):
        LatticeUnits(tau=-1.0)
    u = LatticeUnits(d=2.0, tau=2.0, hbar=3.0, c=1.0)
    assert u.d == 2.0


def test_probability_pairs():
    amps = np.array([[0.6, 0.0], [0.0, 0.8j]], dtype=complex)
    f = SpinorField(offset=-1, amps=amps)
    assert probability(f) == [(-1, pytest.approx(0.36)), (0, pytest.approx(0.64))]


def test_moments_and_std():
    amps = np.zeros((3, 2), dtype=complex)
    amps[0, 0] = 0.5
    amps[2, 0] = math.sqrt(0.75)
    f = SpinorField(offset=0, amps=amps)
    # mass 1/4 at site 0, 3/4 at site 2
    assert position_moment(f, 1) == pytest.approx(1.5)
    assert position_moment(f, 2) == pytest.approx(3.0)
    assert std_deviation(f) == pytest.approx(math.sqrt(0.75))
    with pytest.raises(ValueError):
        position_moment(f, 0)


def test_std_of_point_mass_is_zero():
    assert std_deviation(make_localized(7, 0.0, 1.0)) == 0.0


def test_window_trim_keeps_interior_zeros():
    # beta=1 turns the automaton into a pure on-site kick: the window must
    # not grow at all (grown edges are exact zeros and get trimmed away).
    f = evolve(make_localized(0, 1.0, 0.0), DQCA(1.0), 5)
    assert f.amps.shape == (1, 2)
    assert f.offset == 0
    assert f.step_count == 5
    assert f.amps[0, 0] == 0.0
    assert abs(f.amps[0, 1] - (-1j)) < 1e-15


def test_window_growth_bounded_by_cone():
    f0 = make_localized(2, 1.0, 0.0)
    f = evolve(f0, DQCA(0.5), 9)
    assert f.sites.min() >= 2 - 9
    assert f.sites.max() <= 2 + 9
    assert f.norm_sq() == pytest.approx(1.0, abs=1e-12)

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import TONE, sampled_harmonics, series_j
from scwdetect.errors import IncompatibleGridError, InvalidArgumentError
from scwdetect.field import CarrierSpec, from_carrier, total_power
from scwdetect.modulation import (ModulationTone, combine_tones, modulation_kernel,
                                  normalize_phase, phase_modulate)

index = st.floats(0.0, 0.5)
phase = st.floats(0.0, 2 * math.pi)


def carrier(E0=1.0):
    return from_carrier(CarrierSpec(E0), TONE)


def coeff_diff(f, g):
    K = max(f.truncation, g.truncation)
    return max(abs(f.coeff(k) - g.coeff(k)) for k in range(-K, K + 1))


def test_tone_phase_normalized():
    assert ModulationTone(0.1, -math.pi / 2).phase == pytest.approx(3 * math.pi / 2)
    assert ModulationTone(0.1, 2 * math.pi).phase == 0.0
    assert 0 <= normalize_phase(-1e-18) < 2 * math.pi


def test_negative_index_rejected():
    with pytest.raises(InvalidArgumentError):
        ModulationTone(-0.1)


class TestPhaseModulate:
    def test_zero_index_is_identity(self):
        f = phase_modulate(carrier(0.8), ModulationTone(0.0, 1.0, TONE))
        assert coeff_diff(f, carrier(0.8)) == 0

    def test_first_sidebands(self):
        f = phase_modulate(carrier(), ModulationTone(0.09, 0.0, TONE))
        j1 = series_j(1, 0.09)
        assert f.coeff(1) == pytest.approx(1j * j1, abs=1e-15)
        assert f.coeff(-1) == pytest.approx(1j * j1, abs=1e-15)

    def test_opposite_tones_cancel(self):
        f = phase_modulate(carrier(), ModulationTone(0.09, 0.0, TONE))
        f = phase_modulate(f, ModulationTone(0.09, math.pi, TONE))
        assert coeff_diff(f, carrier()) <= 1e-12

    @pytest.mark.parametrize("m,phi", [(0.09, 0.0), (0.09, 1.3), (0.5, 4.0), (1.5, 2.2)])
    def test_matches_sampled_field(self, m, phi):
        # FFT of exp(i m cos(theta + phi)), no Bessel functions involved
        f = phase_modulate(carrier(), ModulationTone(m, phi, TONE))
        ref = sampled_harmonics(lambda th: np.exp(1j * m * np.cos(th + phi)), f.truncation)
        assert np.max(np.abs(f.coeffs - ref)) <= 1e-13

    def test_carrier_convention_both_forms_agree(self):
        # i^k J_k(m) e^{ik phi} and i^|k| J_|k|(m) e^{ik phi} are the same numbers
        m, phi, K = 0.7, 0.4, 6
        a = [1j ** k * series_j(k, m) * cmath.exp(1j * k * phi) for k in range(-K, K + 1)]
        b = modulation_kernel(m, phi, K)
        assert np.max(np.abs(np.array(a) - b)) <= 1e-14

    def test_tone_mismatch(self):
        f = phase_modulate(carrier(), ModulationTone(0.1, 0.0, TONE))
        with pytest.raises(IncompatibleGridError):
            phase_modulate(f, ModulationTone(0.1, 0.0, 2 * TONE))

    def test_carrier_adopts_tone(self):
        f = phase_modulate(carrier(), ModulationTone(0.1, 0.0, 2 * TONE))
        assert f.tone_freq == 2 * TONE

    def test_truncation_follows_rule(self):
        f = phase_modulate(carrier(), ModulationTone(1.2, 0.0, TONE))
        assert f.truncation == 14
        g = phase_modulate(f, ModulationTone(1.0, 0.0, TONE))
        assert g.truncation == 15


class TestCombine:
    def test_aligned(self):
        c = combine_tones(ModulationTone(0.09, 0.3), ModulationTone(0.09, 0.3))
        assert c.index == pytest.approx(0.18)
        assert c.phase == pytest.approx(0.3)

    def test_opposed(self):
        c = combine_tones(ModulationTone(0.09, 0.0), ModulationTone(0.09, math.pi))
        assert c.index == pytest.approx(0.0, abs=1e-16)

    def test_exact_cancellation_phase_convention(self):
        c = combine_tones(ModulationTone(0.0, 1.0), ModulationTone(0.0, 2.0))
        assert (c.index, c.phase) == (0.0, 0.0)

    def test_quadrature(self):
        c = combine_tones(ModulationTone(0.09, math.pi / 2), ModulationTone(0.09, 0.0))
        assert c.index == pytest.approx(0.09 * math.sqrt(2), rel=1e-15)

    def test_mismatch(self):
        with pytest.raises(IncompatibleGridError):
            combine_tones(ModulationTone(0.1, 0, TONE), ModulationTone(0.1, 0, TONE * 1.01))

    @given(index, phase, index, phase)
    def test_index_formula_and_bounds(self, ma, pa, mb, pb):
        c = combine_tones(ModulationTone(ma, pa), ModulationTone(mb, pb))
        ref = math.sqrt(max(ma * ma + mb * mb + 2 * ma * mb * math.cos(pa - pb), 0.0))
        assert c.index == pytest.approx(ref, abs=1e-12)
        assert abs(ma - mb) - 1e-12 <= c.index <= ma + mb + 1e-12
        assert 0 <= c.phase < 2 * math.pi


@settings(max_examples=60, deadline=None)
@given(index, phase, index, phase)
def test_composition_law(ma, pa, mb, pb):
    a, b = ModulationTone(ma, pa, TONE), ModulationTone(mb, pb, TONE)
    two = phase_modulate(phase_modulate(carrier(), a), b)
    c = combine_tones(a, b)
    one = phase_modulate(carrier(), ModulationTone(c.index, c.phase, TONE))
    assert coeff_diff(two, one) <= 1e-10


@settings(max_examples=40, deadline=None)
@given(index, phase, index, phase)
def test_commutes(ma, pa, mb, pb):
    a, b = ModulationTone(ma, pa, TONE), ModulationTone(mb, pb, TONE)
    ab = phase_modulate(phase_modulate(carrier(), a), b)
    ba = phase_modulate(phase_modulate(carrier(), b), a)
    assert coeff_diff(ab, ba) <= 1e-14


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 2.0), phase, st.floats(0.1, 5.0))
def test_energy_conserved(m, phi, E0):
    f = phase_modulate(carrier(E0), ModulationTone(m, phi, TONE))
    assert total_power(f) == pytest.approx(E0 * E0, rel=1e-12)

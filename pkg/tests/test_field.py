import math

import numpy as np
import pytest

from conftest import TONE
from scwdetect.errors import InvalidArgumentError
from scwdetect.field import (CarrierSpec, MultimodeField, evaluate_envelope, from_carrier,
                             period_grid, sideband_power, total_power, truncation_for)
from scwdetect.modulation import ModulationTone, phase_modulate

# frozen: 10 uW * (1 - J_0(0.09)^2), J_0 from the power-series oracle
PS_AT_009 = 4.043853673660336e-08
# frozen: root of 1 - J_0(m)^2 = 0.05 by bisection on the power-series oracle
INDEX_FOR_5PCT = 0.3192644381240255


def modulated(m, phi=0.0, E0=1.0):
    return phase_modulate(from_carrier(CarrierSpec(E0), TONE), ModulationTone(m, phi, TONE))


class TestFromCarrier:
    def test_unmodulated(self):
        f = from_carrier(CarrierSpec(1.0), TONE, 8)
        assert f.truncation == 8
        assert f.coeff(0) == 1
        assert all(f.coeff(k) == 0 for k in range(-8, 9) if k)

    def test_zero_field(self):
        f = from_carrier(CarrierSpec(0.0), TONE, 8)
        assert not np.any(f.coeffs)

    def test_paper_carrier_power(self):
        f = from_carrier(CarrierSpec.from_power(10e-6), TONE, 8)
        assert f.coeff(0).real == pytest.approx(3.1623e-3, rel=1e-4)

    @pytest.mark.parametrize("K", [0, -3])
    def test_bad_truncation(self, K):
        with pytest.raises(InvalidArgumentError):
            from_carrier(CarrierSpec(1.0), TONE, K)

    def test_negative_amplitude(self):
        with pytest.raises(InvalidArgumentError):
            CarrierSpec(-1.0)


def test_absent_indices_are_zero():
    f = from_carrier(CarrierSpec(1.0), TONE, 3)
    assert f.coeff(10) == 0
    assert f.as_dict().keys() == set(range(-3, 4))


def test_coeffs_are_immutable():
    f = from_carrier(CarrierSpec(1.0), TONE, 3)
    with pytest.raises(ValueError):
        f.coeffs[0] = 5


def test_truncation_rule():
    assert truncation_for(0.09) == 13
    assert truncation_for(2.0) == 14


class TestEnvelope:
    def test_carrier_only(self):
        f = from_carrier(CarrierSpec(0.7), TONE)
        assert evaluate_envelope(f, 1.234e-10) == pytest.approx(0.7)

    def test_symmetric_pair(self):
        a = 0.3 - 0.2j
        c = np.zeros(5, complex)
        c[1] = c[3] = a
        f = MultimodeField(0.0, TONE, c)
        assert evaluate_envelope(f, 0.0) == pytest.approx(2 * a)

    def test_constant_modulus(self):
        E0 = math.sqrt(10e-6)
        f = modulated(0.09, 0.7, E0)
        env = evaluate_envelope(f, period_grid(TONE))
        assert np.max(np.abs(np.abs(env) / E0 - 1)) <= 1e-9

    @pytest.mark.parametrize("m", [0.2, 0.8, 1.5])
    def test_constant_modulus_up_to_1p5(self, m):
        f = modulated(m, 2.1)
        assert f.truncation >= m + 12
        env = evaluate_envelope(f, period_grid(TONE))
        assert np.max(np.abs(np.abs(env) - 1)) <= 1e-9

    def test_periodic(self):
        f = modulated(0.6, 1.0)
        t = np.linspace(0, 3e-10, 17)
        period = 2 * math.pi / TONE
        assert np.allclose(evaluate_envelope(f, t), evaluate_envelope(f, t + period),
                           rtol=0, atol=1e-12)

    def test_linear(self):
        f = modulated(0.4, 0.3)
        g = f.replace_coeffs(2.5 * f.coeffs)
        t = period_grid(TONE, 32)
        assert np.allclose(evaluate_envelope(g, t), 2.5 * evaluate_envelope(f, t))


class TestPower:
    def test_carrier_only(self):
        assert total_power(from_carrier(CarrierSpec(2.0), TONE)) == 4.0
        assert sideband_power(from_carrier(CarrierSpec(2.0), TONE)) == 0.0

    def test_zero(self):
        assert total_power(from_carrier(CarrierSpec(0.0), TONE)) == 0.0

    def test_modulation_conserves_power(self):
        f = modulated(0.09, 0.0, 1.0)
        assert total_power(f) == pytest.approx(1.0, rel=1e-12)

    def test_sideband_power_at_alice_index(self):
        f = modulated(0.09, 0.0, math.sqrt(10e-6))
        assert sideband_power(f) == pytest.approx(PS_AT_009, rel=1e-10)
        # same order as the 40 nW quoted for the weak-signal trace
        assert 20e-9 < sideband_power(f) < 80e-9

    def test_sideband_power_five_percent(self):
        f = modulated(INDEX_FOR_5PCT, 0.0, math.sqrt(10e-6))
        assert sideband_power(f) == pytest.approx(0.5e-6, rel=1e-10)

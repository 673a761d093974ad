"""Numerical model of coherent detection for subcarrier-wave CV-QKD.

Phase-modulated multimode fields, the homodyne-like, phase-diversity and
heterodyne receivers built on them, and a 4-PSK symbol layer.
"""

from .bessel import balanced_index, besselj, besselj_orders, solve_j0_equals
from .detection import (DetectorParams, IQSample, balanced_current_timedomain,
                        classical_heterodyne, classical_homodyne, classical_powers,
                        heterodyne_normalized_amplitude, heterodyne_output_timedomain,
                        heterodyne_output_timeseries, homodyne_normalized, homodyne_output,
                        homodyne_output_timedomain, phase_diversity_measure)
from .errors import BandwidthError, IncompatibleGridError, InvalidArgumentError
from .field import (CarrierSpec, MultimodeField, evaluate_envelope, from_carrier,
                    period_grid, sideband_power, total_power)
from .filtering import FilterProfile, carrier_separator, heterodyne_profile, split
from .modulation import CombinedTone, ModulationTone, combine_tones, phase_modulate
from .protocol import SymbolDecision, TrialResult, decide, encode, run_trial

__version__ = "0.1.0"

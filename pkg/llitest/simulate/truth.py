# ***************************************************************************
# Copyright the llitest authors 2024
#
# Licensed under the Eclipse Public License 2.0, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ***************************************************************************

"""
Hidden truth of a simulated campaign: the injected c tensor and the slowly drifting laboratory
conditions (magnetic field, field gradient, axial trap frequency, ac Stark shift, preparation
phase and signal offset), plus the calibration laws that turn field and trap frequency into
frequency shifts of the two-ion state.
"""
import dataclasses
import math
from typing import Tuple

import numpy as np

from llitest.frames import transform
from llitest.frames.tensor import CTensorSCCEF, FrameConfig
from llitest.iondynamics.parity import DFSStateSpec
from llitest.util import constants
from llitest.util.errors import PhysicsDomainError


@dataclasses.dataclass(frozen=True)
class DriftModel:
    """mean + amplitude * sum_i w_i sin(2 pi T / P_i + phase_i) with equal weights summing to one.

    The deviation from the mean never exceeds the amplitude.
    """
    mean: float
    amplitude: float = 0.0
    periods_s: Tuple[float, ...] = (3600.0,)
    phases: Tuple[float, ...] = (0.0,)

    def __post_init__(self):
        if len(self.periods_s) != len(self.phases) or not self.periods_s:
            raise PhysicsDomainError('drift periods and phases must be non-empty and of equal length')
        if any(p <= 0 for p in self.periods_s):
            raise PhysicsDomainError('drift periods must be positive: {}'.format(self.periods_s))

    @classmethod
    def build(cls, mean, amplitude, periods_h, seed, index):
        """Builds a drift with phases drawn deterministically from (seed, index)."""
        rng = np.random.default_rng([seed, index])
        phases = tuple(float(p) for p in rng.uniform(0, 2 * np.pi, size=len(periods_h)))
        return cls(mean=mean, amplitude=amplitude,
                   periods_s=tuple(p * constants.SECONDS_PER_HOUR for p in periods_h), phases=phases)

    @classmethod
    def static(cls, value):
        return cls(mean=value)

    def __call__(self, T):
        T = np.asarray(T, dtype=float)
        weight = 1.0 / len(self.periods_s)
        deviation = sum(weight * np.sin(2 * np.pi * T / period + phase)
                        for period, phase in zip(self.periods_s, self.phases))
        value = self.mean + self.amplitude * deviation
        return float(value) if np.ndim(value) == 0 else value


@dataclasses.dataclass(frozen=True)
class Calibration:
    """Calibration laws of the systematic shifts of the two-ion state."""
    zeeman_ref_shift_hz: float = 8.9
    b_ref_G: float = 3.930
    quadrupole_slope_hz_mm2_per_V: float = 4.0
    ion_mass_kg: float = constants.CA40_ION_MASS_KG

    @classmethod
    def from_config(cls, config):
        systematics = config['systematics']
        return cls(zeeman_ref_shift_hz=systematics['zeeman_ref_shift_hz'], b_ref_G=systematics['b_ref_G'],
                   quadrupole_slope_hz_mm2_per_V=systematics['quadrupole_slope_hz_mm2_per_V'],
                   ion_mass_kg=systematics['ion_mass_u'] * constants.ATOMIC_MASS_UNIT_KG)

    def quadratic_zeeman(self, b_G):
        """Quadratic Zeeman shift k B^2 with k fixed by the shift at the reference field."""
        return self.zeeman_ref_shift_hz * (np.asarray(b_G, dtype=float) / self.b_ref_G) ** 2

    def field_gradient(self, f_axial_kHz):
        """Electric field gradient m w_z^2 / e along the trap axis, in V/mm^2."""
        omega_z = 2 * np.pi * np.asarray(f_axial_kHz, dtype=float) * 1e3
        return self.ion_mass_kg * omega_z ** 2 / constants.ELEMENTARY_CHARGE_C * 1e-6

    def quadrupole_shift(self, f_axial_kHz):
        return self.quadrupole_slope_hz_mm2_per_V * self.field_gradient(f_axial_kHz)

    def zeeman_slope_hz_per_mG(self, b_G):
        return 2 * self.zeeman_ref_shift_hz * b_G / self.b_ref_G ** 2 * 1e-3

    def quadrupole_slope_hz_per_kHz(self, f_axial_kHz):
        return 2 * self.quadrupole_shift(f_axial_kHz) / f_axial_kHz

    def to_config(self):
        return {'zeeman_ref_shift_hz': self.zeeman_ref_shift_hz, 'b_ref_G': self.b_ref_G,
                'quadrupole_slope_hz_mm2_per_V': self.quadrupole_slope_hz_mm2_per_V,
                'ion_mass_u': self.ion_mass_kg / constants.ATOMIC_MASS_UNIT_KG}


@dataclasses.dataclass(frozen=True)
class TruthModel:
    """All time arguments are seconds since the epoch of the frame."""
    c: CTensorSCCEF
    frame: FrameConfig
    calibration: Calibration
    b_field_G: DriftModel
    gradient_hz: DriftModel
    f_axial_kHz: DriftModel
    ac_stark_hz: DriftModel
    phi_offset_rad: DriftModel
    signal_offset: DriftModel

    @classmethod
    def from_config(cls, config):
        truth = config['truth']
        seed = truth['drift_seed']
        b_periods = truth['b_drift_periods_h']
        f_periods = truth['f_axial_drift_periods_h']
        return cls(
            c=CTensorSCCEF.from_dict(truth['c']),
            frame=FrameConfig.from_config(config),
            calibration=Calibration.from_config(config),
            b_field_G=DriftModel.build(truth['b_mean_G'], truth['b_drift_mG'] * 1e-3, b_periods, seed, 0),
            gradient_hz=DriftModel.build(truth['gradient_hz'], truth['gradient_drift_hz'], b_periods, seed, 1),
            f_axial_kHz=DriftModel.build(truth['f_axial_mean_kHz'], truth['f_axial_drift_kHz'], f_periods, seed, 2),
            ac_stark_hz=DriftModel.build(truth['ac_stark_hz'], abs(truth['ac_stark_hz']) * truth['ac_stark_rel_drift'],
                                         f_periods, seed, 3),
            phi_offset_rad=DriftModel.build(0.0, truth['phi_offset_drift_rad'], b_periods, seed, 4),
            signal_offset=DriftModel.build(truth['signal_offset'], truth['signal_offset_drift'], f_periods, seed, 5),
        )

    def with_tensor(self, c):
        return dataclasses.replace(self, c=c)

    def summary(self, blind=False):
        """Returns the truth as a config-like dict; blind leaves out the tensor."""
        summary = {
            'b_mean_G': self.b_field_G.mean, 'b_drift_mG': self.b_field_G.amplitude * 1e3,
            'gradient_hz': self.gradient_hz.mean, 'gradient_drift_hz': self.gradient_hz.amplitude,
            'f_axial_mean_kHz': self.f_axial_kHz.mean, 'f_axial_drift_kHz': self.f_axial_kHz.amplitude,
            'ac_stark_hz': self.ac_stark_hz.mean, 'phi_offset_drift_rad': self.phi_offset_rad.amplitude,
            'signal_offset': self.signal_offset.mean, 'signal_offset_drift': self.signal_offset.amplitude,
        }
        if not blind:
            summary['c'] = self.c.to_dict()
        return summary


def systematics_frequency(T, truth):
    """Shifts common to both states: quadratic Zeeman, electric quadrupole and ac Stark."""
    cal = truth.calibration
    return (cal.quadratic_zeeman(truth.b_field_G(T)) + cal.quadrupole_shift(truth.f_axial_kHz(T))
            + truth.ac_stark_hz(T))


def truth_frequency(T, truth, handedness, pair_sens):
    """Instantaneous oscillation frequency in Hz of the L or R two-ion state at T.

    Args:
        T: seconds since the epoch (scalar or array)
        truth: TruthModel
        handedness: 'L' or 'R'; the gradient term enters with + for L and - for R
        pair_sens: pair sensitivity in Hz per unit C0(2)
    """
    sign = DFSStateSpec(handedness).gradient_sign
    lorentz = pair_sens * np.asarray(transform.c02_at(truth.c, T, truth.frame))
    value = lorentz + systematics_frequency(T, truth) + sign * np.asarray(truth.gradient_hz(T))
    return float(value) if np.ndim(value) == 0 else value

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
Domain types of the frame transformation: the Lorentz-violation tensor in the Sun-centred
celestial-equatorial frame (SCCEF), the laboratory location and Earth motion, and the
harmonic decomposition of the laboratory observable C0(2).
"""
import dataclasses
import math
from typing import List

import numpy as np
import pandas as pd
import toml

from llitest.util import constants
from llitest.util.errors import ConfigError, InputFormatError, PhysicsDomainError


@dataclasses.dataclass(frozen=True)
class CTensorSCCEF:
    """Symmetric tensor c_{mu nu} in the SCCEF; only the ten independent components are stored."""
    c_TT: float = 0.0
    c_TX: float = 0.0
    c_TY: float = 0.0
    c_TZ: float = 0.0
    c_XX: float = 0.0
    c_YY: float = 0.0
    c_ZZ: float = 0.0
    c_XY: float = 0.0
    c_XZ: float = 0.0
    c_YZ: float = 0.0

    def __post_init__(self):
        for name in constants.C_COMPONENTS:
            value = getattr(self, name)
            if not math.isfinite(value):
                raise PhysicsDomainError('tensor component {} is not finite: {}'.format(name, value))

    @classmethod
    def from_dict(cls, components):
        """Builds a tensor from a mapping of component names to values; missing components are 0."""
        unknown = [name for name in components.keys() if name not in constants.C_COMPONENTS]
        if unknown:
            raise InputFormatError('unknown tensor components: {}'.format(', '.join(unknown)))
        values = {}
        for name, value in components.items():
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise InputFormatError('tensor component {} must be a number: {!r}'.format(name, value))
            values[name] = float(value)
        return cls(**values)

    @classmethod
    def from_file(cls, path):
        """Loads a tensor from a TOML file holding a [c] table."""
        try:
            data = toml.load(path)
        except toml.TomlDecodeError as e:
            raise InputFormatError('malformed tensor file {}: {}'.format(path, e))
        except OSError as e:
            raise InputFormatError('cannot read tensor file {}: {}'.format(path, e))
        if 'c' not in data or not isinstance(data['c'], dict):
            raise InputFormatError('tensor file {} has no [c] table'.format(path))
        return cls.from_dict(data['c'])

    @classmethod
    def from_vector(cls, vector):
        return cls(*[float(v) for v in vector])

    def to_dict(self):
        return dataclasses.asdict(self)

    def to_vector(self):
        return np.array([getattr(self, name) for name in constants.C_COMPONENTS])

    def to_matrix(self):
        """Returns the 4x4 symmetric matrix with index order (T, X, Y, Z)."""
        return np.array([
            [self.c_TT, self.c_TX, self.c_TY, self.c_TZ],
            [self.c_TX, self.c_XX, self.c_XY, self.c_XZ],
            [self.c_TY, self.c_XY, self.c_YY, self.c_YZ],
            [self.c_TZ, self.c_XZ, self.c_YZ, self.c_ZZ],
        ])

    @property
    def c_x_minus_y(self):
        return self.c_XX - self.c_YY

    def anisotropic_components(self):
        """Returns the spatial combinations (c_X-Y, c_XY, c_XZ, c_YZ) probed by a sidereal fit."""
        return np.array([self.c_x_minus_y, self.c_XY, self.c_XZ, self.c_YZ])


@dataclasses.dataclass(frozen=True)
class FrameConfig:
    """Laboratory colatitude, Earth rotation and orbit, and the time origin of the sidereal model.

    Angles are in radians, angular frequencies in rad/s and speeds in units of c.
    """
    chi: float = math.radians(52.1)
    eta: float = math.radians(23.4)
    omega_sidereal: float = constants.OMEGA_SIDEREAL
    omega_annual: float = constants.OMEGA_ANNUAL
    beta_orbital: float = 1e-4
    beta_rotation: float = 1.5e-6
    epoch_utc: str = constants.VERNAL_EQUINOX_2014_UTC
    rotation_speed_includes_colatitude: bool = False

    def __post_init__(self):
        if not 0 < self.chi < math.pi:
            raise ConfigError('colatitude must lie in (0, pi): {}'.format(self.chi))
        if not self.omega_sidereal > self.omega_annual > 0:
            raise ConfigError('angular frequencies must satisfy omega_sidereal > omega_annual > 0')
        if not 0 <= self.beta_rotation < 1 or not 0 <= self.beta_orbital < 1:
            raise ConfigError('boosts must lie in [0, 1)')
        if self.beta_orbital > 0 and self.beta_rotation >= self.beta_orbital:
            raise ConfigError('beta_rotation must be smaller than beta_orbital')

    @classmethod
    def from_config(cls, config):
        frame = config['frame']
        return cls(
            chi=math.radians(frame['chi_deg']),
            eta=math.radians(frame['eta_deg']),
            omega_sidereal=2 * math.pi / frame['sidereal_day_s'],
            omega_annual=2 * math.pi / frame['sidereal_year_s'],
            beta_orbital=frame['beta_orbital'],
            beta_rotation=frame['beta_rotation'],
            epoch_utc=frame['epoch_utc'],
            rotation_speed_includes_colatitude=frame['rotation_speed_includes_colatitude'],
        )

    @property
    def lab_speed(self):
        """Speed of the laboratory due to the Earth's rotation."""
        if self.rotation_speed_includes_colatitude:
            return self.beta_rotation
        return self.beta_rotation * math.sin(self.chi)

    def epoch_unix_s(self):
        return parse_utc(self.epoch_utc)

    def seconds_since_epoch(self, unix_s):
        return np.asarray(unix_s, dtype=float) - self.epoch_unix_s()

    def to_config(self):
        """Returns the frame section in config units (degrees and periods)."""
        return {
            'chi_deg': math.degrees(self.chi),
            'eta_deg': math.degrees(self.eta),
            'sidereal_day_s': 2 * math.pi / self.omega_sidereal,
            'sidereal_year_s': 2 * math.pi / self.omega_annual,
            'beta_orbital': self.beta_orbital,
            'beta_rotation': self.beta_rotation,
            'epoch_utc': self.epoch_utc,
            'rotation_speed_includes_colatitude': self.rotation_speed_includes_colatitude,
        }


def parse_utc(timestamp):
    """Converts an ISO-8601 UTC timestamp to unix seconds."""
    try:
        ts = pd.Timestamp(timestamp)
    except ValueError as e:
        raise ConfigError('invalid UTC timestamp "{}": {}'.format(timestamp, e))
    if ts.tzinfo is None:
        ts = ts.tz_localize('UTC')
    return ts.timestamp()


@dataclasses.dataclass(frozen=True)
class HarmonicRow:
    label: str
    omega: float
    C: float
    S: float


@dataclasses.dataclass(frozen=True)
class HarmonicTable:
    """C0(2)(T) = offset + sum_j (C_j cos(omega_j T) + S_j sin(omega_j T))."""
    offset: float
    rows: List[HarmonicRow]

    def row(self, label):
        for row in self.rows:
            if row.label == label:
                return row
        raise KeyError(label)

    def to_frame(self):
        records = [('offset', 0.0, self.offset, 0.0)]
        records.extend((row.label, row.omega, row.C, row.S) for row in self.rows)
        return pd.DataFrame.from_records(records, columns=['frequency_label', 'omega_rad_per_s', 'C_j', 'S_j'])

    def to_csv(self, path):
        self.to_frame().to_csv(path, index=False, float_format='%.17g')

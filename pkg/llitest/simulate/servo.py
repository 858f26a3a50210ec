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
Phase-feedback servo of the Ramsey measurement. For every (state, duration) slot the servo keeps
the accumulated phase Phi and applies the laser phase pi/2 - Phi, which holds the fringe at its
zero crossing; the correction measured in each block is added to Phi.
"""
import dataclasses
import logging
import math
from typing import Dict

import numpy as np

from llitest.util.constants import SLOTS
from llitest.util.errors import PhysicsDomainError


def phase_correction(s, amplitude):
    """Phase correction arccos(s/A) - pi/2 from an offset-free signal s.

    Returns:
        (dphi, clamped): the correction in [-pi/2, pi/2], and whether |s| exceeded the amplitude,
        in which case the arccos argument was clamped to +-1
    """
    if amplitude <= 0:
        raise PhysicsDomainError('fringe amplitude must be positive: {}'.format(amplitude))
    ratio = s / amplitude
    clamped = abs(ratio) > 1
    if clamped:
        logging.debug('phase correction clamped: s={} amplitude={}'.format(s, amplitude))
        ratio = math.copysign(1.0, ratio)
    return math.acos(ratio) - math.pi / 2, clamped


def offset_cancelled_signal(s_phi, s_phi_plus_pi):
    """Removes the common additive offset of the signals at laser phases phi and phi + pi."""
    return (s_phi - s_phi_plus_pi) / 2


@dataclasses.dataclass
class ServoState:
    """Accumulated phase per slot (L_short, L_long, R_short, R_long)."""
    phases: Dict[str, float] = dataclasses.field(default_factory=lambda: {slot: 0.0 for slot in SLOTS})

    @classmethod
    def locked(cls, phases):
        """Servo locked to the given accumulated phases."""
        return cls(phases={slot: float(phases[slot]) for slot in SLOTS})

    def laser_phase(self, slot):
        return math.pi / 2 - self.phases[slot]

    def apply(self, slot, dphi):
        self.phases[slot] += dphi
        return self.phases[slot]

    def copy(self):
        return ServoState(phases=dict(self.phases))

    def frequency(self, handedness, t_short, t_long):
        """Frequency held by the servo: (Phi_long - Phi_short) / (2 pi (t_long - t_short))."""
        return (self.phases[handedness + '_long'] - self.phases[handedness + '_short']) / \
            (2 * np.pi * (t_long - t_short))

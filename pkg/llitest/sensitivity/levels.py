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
Atomic level data of Ca+ consumed by the sensitivity calculation. Reduced matrix elements are
inputs from electronic-structure calculations; they can be overridden in the [level] section
of the configuration.
"""
import dataclasses
import logging

from llitest.util import constants
from llitest.util.errors import PhysicsDomainError

# label -> J, <J||T2||J> (a.u.), <p^2> (a.u.), absolute uncertainties of both, and the
# coefficients (const, m_J^2 slope) in Hz printed alongside the matrix elements
KNOWN_LEVELS = {
    'D3/2': {
        'J': 1.5, 't2_me_au': 7.09, 'p2_me_au': 0.75, 't2_unc_au': 0.12, 'p2_unc_au': 0.09,
        'printed_coefficients_hz': (2.17e15, -1.47e15),
    },
    'D5/2': {
        'J': 2.5, 't2_me_au': 9.25, 'p2_me_au': 0.75, 't2_unc_au': 0.15, 'p2_unc_au': 0.09,
        'printed_coefficients_hz': (2.16e15, -7.42e14),
    },
    'S1/2': {
        'J': 0.5, 't2_me_au': 0.0, 'p2_me_au': 0.0, 't2_unc_au': 0.0, 'p2_unc_au': 0.0,
        'printed_coefficients_hz': None,
    },
}


@dataclasses.dataclass(frozen=True)
class LevelSpec:
    label: str
    J: float
    t2_reduced_me: float
    p2_me: float
    t2_rel_uncertainty: float = 0.02
    p2_rel_uncertainty: float = 0.12
    provenance: str = 'tabulated'

    def __post_init__(self):
        if (2 * self.J) % 1 != 0 or self.J <= 0:
            raise PhysicsDomainError('J must be a positive half-integer: {}'.format(self.J))
        if self.J < 1.5:
            raise PhysicsDomainError('level {} (J={}) has no tensor sensitivity; J >= 3/2 is required'.format(
                self.label, _fmt_half(self.J)))
        if self.t2_reduced_me <= 0 or self.p2_me <= 0:
            raise PhysicsDomainError('matrix elements of level {} must be positive: t2={}, p2={}'.format(
                self.label, self.t2_reduced_me, self.p2_me))

    @classmethod
    def from_config(cls, config, label=None):
        """Builds the level from the [level] section.

        Zero J or matrix elements take the tabulated values of the label; an untabulated label
        must give all three explicitly.
        """
        level = config['level']
        label = label or level['label']
        known = KNOWN_LEVELS.get(label)
        explicit = {name: level[name] for name in ('J', 't2_me_au', 'p2_me_au') if level[name]}
        if known is None and len(explicit) < 3:
            raise PhysicsDomainError('unknown level "{}"; tabulated levels are {} (or give level.J, '
                                     'level.t2_me_au and level.p2_me_au)'.format(label, ', '.join(KNOWN_LEVELS)))
        values = dict(known or {})
        values.update(explicit)
        if explicit:
            logging.info('level {}: config overrides {}'.format(label, explicit))
        return cls(label=label, J=values['J'], t2_reduced_me=values['t2_me_au'], p2_me=values['p2_me_au'],
                   t2_rel_uncertainty=level['t2_rel_uncertainty'], p2_rel_uncertainty=level['p2_rel_uncertainty'],
                   provenance='config' if explicit else 'tabulated')

    @classmethod
    def tabulated(cls, label):
        known = KNOWN_LEVELS.get(label)
        if known is None:
            raise PhysicsDomainError('unknown level "{}"'.format(label))
        return cls(label=label, J=known['J'], t2_reduced_me=known['t2_me_au'], p2_me=known['p2_me_au'],
                   t2_rel_uncertainty=known['t2_unc_au'] / known['t2_me_au'] if known['t2_me_au'] else 0.0,
                   p2_rel_uncertainty=known['p2_unc_au'] / known['p2_me_au'] if known['p2_me_au'] else 0.0)

    def printed_coefficients(self):
        """Returns the printed (const, m_J^2 slope) in Hz for tabulated matrix elements, or None."""
        known = KNOWN_LEVELS.get(self.label)
        if known is None or self.provenance != 'tabulated':
            return None
        return known['printed_coefficients_hz']

    def to_config(self):
        return {'label': self.label, 'J': self.J, 't2_me_au': self.t2_reduced_me, 'p2_me_au': self.p2_me,
                't2_rel_uncertainty': self.t2_rel_uncertainty, 'p2_rel_uncertainty': self.p2_rel_uncertainty}


@dataclasses.dataclass(frozen=True)
class SensitivityCoefficients:
    """Energy shift (const_hz + mj2_hz * m_J^2) * C0(2), in Hz."""
    const_hz: float
    mj2_hz: float
    au_to_hz: float = constants.AU_TO_HZ

    def shift(self, m_J, c02):
        return (self.const_hz + self.mj2_hz * m_J ** 2) * c02


@dataclasses.dataclass(frozen=True)
class MonopoleCouplings:
    """Isotropic couplings entering the m_J-independent shift."""
    C0_0: float = 0.0
    c00: float = 0.0
    U_over_c2: float = 0.0


def _fmt_half(value):
    twice = int(round(2 * value))
    return str(twice // 2) if twice % 2 == 0 else '{}/2'.format(twice)

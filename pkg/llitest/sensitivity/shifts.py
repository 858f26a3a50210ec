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

import logging
import math

from llitest.sensitivity.levels import SensitivityCoefficients
from llitest.util import constants
from llitest.util.errors import PhysicsDomainError


def angular_factor(J, m_J):
    """Wigner-Eckart angular factor of the rank-2 operator for the Zeeman sublevel m_J of level J."""
    if (2 * J) % 1 != 0 or J < 1.5:
        raise PhysicsDomainError('angular factor requires a half-integer J >= 3/2: {}'.format(J))
    if abs(m_J) > J or (J - m_J) % 1 != 0:
        raise PhysicsDomainError('m_J={} is not a sublevel of J={}'.format(m_J, J))
    denominator = math.sqrt((2 * J + 3) * (J + 1) * (2 * J + 1) * J * (2 * J - 1))
    return (-J * (J + 1) + 3 * m_J ** 2) / denominator


def tensor_shift(level, m_J, c02):
    """Energy shift in Hz of sublevel m_J due to the laboratory observable C0(2)."""
    return -angular_factor(level.J, m_J) * level.t2_reduced_me * constants.AU_TO_HZ * c02 / 6.0


def coefficients(level):
    """Splits the tensor shift of a level into its m_J-independent part and its m_J^2 slope.

    A warning is logged when the result differs from the printed coefficients of a tabulated
    level by more than 0.5%.
    """
    J = level.J
    denominator = math.sqrt((2 * J + 3) * (J + 1) * (2 * J + 1) * J * (2 * J - 1))
    scale = -level.t2_reduced_me * constants.AU_TO_HZ / 6.0 / denominator
    coeffs = SensitivityCoefficients(const_hz=scale * -J * (J + 1), mj2_hz=scale * 3)

    printed = level.printed_coefficients()
    if printed is not None:
        for name, computed, quoted in zip(('const', 'm_J^2'), (coeffs.const_hz, coeffs.mj2_hz), printed):
            if abs(computed - quoted) > constants.COEFFICIENT_WARN_TOLERANCE * abs(quoted):
                logging.warning('{} {} coefficient {:.4g} Hz differs from the printed {:.4g} Hz'.format(
                    level.label, name, computed, quoted))
    return coeffs


def ion_sensitivity(level):
    """Per-ion sensitivity Q: shift of m_J=J minus shift of m_J=1/2, in Hz per unit C0(2)."""
    return tensor_shift(level, level.J, 1.0) - tensor_shift(level, 0.5, 1.0)


def pair_sensitivity(level):
    """Sensitivity of the two-ion entangled state of D5/2 (+-5/2 against +-1/2), Hz per unit C0(2)."""
    if level.J != 2.5:
        raise PhysicsDomainError('the two-ion entangled state is defined for J=5/2, not level {}'.format(level.label))
    return 2 * ion_sensitivity(level)


def scalar_shift(level, mono):
    """m_J-independent shift in Hz from the monopole couplings; it cancels in every sublevel difference."""
    return -(mono.C0_0 - 2.0 / 3.0 * mono.U_over_c2 * mono.c00) * level.p2_me / 2.0 * constants.AU_TO_HZ

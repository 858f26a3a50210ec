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

import tabulate

from llitest.sensitivity import shifts
from llitest.sensitivity.levels import LevelSpec, MonopoleCouplings, _fmt_half
from llitest.util.logging_util import llitest_status


def process_sensitivity_command(args, config):
    """Processes the sensitivity command.

    Prints the sensitivity report of the level named by --level (or level.label of the config),
    or only the two-ion pair sensitivity if --pair is given.

    Returns:
        list of report rows (quantity, value, unit, note)
    """
    level = LevelSpec.from_config(config, label=getattr(args, 'level', None) or None)
    logging.info('sensitivity of level {}'.format(level))
    if getattr(args, 'pair', False):
        pair = shifts.pair_sensitivity(level)
        llitest_status('pair sensitivity of {}: {:.4g} Hz per unit C0(2)'.format(level.label, pair))
        return [('pair sensitivity', pair, 'Hz', '')]
    rows = sensitivity_report(level)
    print(tabulate.tabulate(rows, headers=['quantity', 'value', 'unit', 'note'], floatfmt='.5g'))
    return rows


def sensitivity_report(level):
    """Returns the rows of the sensitivity report of a level.

    Rows cover the matrix elements and their provenance, the coefficients of C0(2) with the
    printed comparison values, the per-ion Q, the pair sensitivity (J=5/2 only) and the scalar
    coefficient of C0(0).
    """
    coeffs = shifts.coefficients(level)
    printed = level.printed_coefficients()
    rows = [
        ('<J||T2||J>', level.t2_reduced_me, 'a.u.', '{} (+-{:.0%})'.format(level.provenance, level.t2_rel_uncertainty)),
        ('<p^2>', level.p2_me, 'a.u.', '{} (+-{:.0%})'.format(level.provenance, level.p2_rel_uncertainty)),
        ('const coefficient', coeffs.const_hz, 'Hz', __printed_note(coeffs.const_hz, printed, 0)),
        ('m_J^2 coefficient', coeffs.mj2_hz, 'Hz', __printed_note(coeffs.mj2_hz, printed, 1)),
        ('per-ion Q (m_J={} vs 1/2)'.format(_fmt_half(level.J)), shifts.ion_sensitivity(level), 'Hz', ''),
    ]
    if level.J == 2.5:
        rows.append(('pair sensitivity', shifts.pair_sensitivity(level), 'Hz', 'two-ion entangled state'))
    rows.append(('scalar coefficient of C0(0)', shifts.scalar_shift(level, MonopoleCouplings(C0_0=1.0)), 'Hz',
                 'same for all m_J'))
    return rows


def __printed_note(computed, printed, index):
    if printed is None:
        return ''
    quoted = printed[index]
    return 'printed {:.3g} ({:+.1%})'.format(quoted, (computed - quoted) / abs(quoted))

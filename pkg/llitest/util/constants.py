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

import math
import os

# name of default config file
LLITEST_DEFAULT_CONFIG_FILE = 'llitest_config.toml'

# prefix of the output directory created for a run when --out is not given
LLITEST_OUTPUT_DIR_PREFIX = 'llitest-output-'

# name of the log file written to the directory the CLI is started from (LLITEST_CLI_DIR)
LLITEST_LOG_FILE = 'llitest.log'

LLITEST_CLI_DIR = os.getcwd()

# conversion of one atomic unit of energy to Hz (E_h / h)
AU_TO_HZ = 6.57968e15

# mass of 40Ca+ in kg and the elementary charge in C
ATOMIC_MASS_UNIT_KG = 1.66053906660e-27
CA40_MASS_U = 39.962590863
CA40_ION_MASS_KG = CA40_MASS_U * ATOMIC_MASS_UNIT_KG
ELEMENTARY_CHARGE_C = 1.602176634e-19

SECONDS_PER_HOUR = 3600.0

# sidereal day and sidereal year in seconds
SIDEREAL_DAY_S = 86164.0905
SIDEREAL_YEAR_S = 365.256363004 * 86400.0

OMEGA_SIDEREAL = 2 * math.pi / SIDEREAL_DAY_S
OMEGA_ANNUAL = 2 * math.pi / SIDEREAL_YEAR_S

# vernal equinox 2014, time origin of the sidereal phase
VERNAL_EQUINOX_2014_UTC = '2014-03-20T16:57:00Z'

# start of the 23-hour campaign
CAMPAIGN_START_UTC = '2014-04-19T03:00:00Z'

# order of the independent SCCEF tensor components
C_COMPONENTS = ('c_TT', 'c_TX', 'c_TY', 'c_TZ', 'c_XX', 'c_YY', 'c_ZZ', 'c_XY', 'c_XZ', 'c_YZ')

# anisotropic combinations reached by the daily/semi-daily fit, in the order of the bounds vectors
C_COMBINATION_NAMES = ('c_X-Y', 'c_XY', 'c_XZ', 'c_YZ')

# fitted sidereal model parameters
FIT_PARAM_NAMES = ('offset', 'A', 'B', 'C', 'D')

# measurement slots of a block: (handedness, Ramsey duration)
HANDEDNESS = ('L', 'R')
DURATIONS = ('short', 'long')
SLOTS = tuple('{}_{}'.format(h, d) for h in HANDEDNESS for d in DURATIONS)

# reason codes for points dropped or bins skipped during analysis
REASON_MISSING_B_FIELD = 'missing_b_field'
REASON_OUTLIER = 'outlier'
REASON_TOO_FEW_POINTS = 'too_few_points'

# suffixes and names of files written by the simulate/analyze/transform commands
DATASET_FILE_SUFFIX = '_dataset.csv'
DATASET_META_SUFFIX = '.meta.toml'
FIT_RESULT_FILE = 'fit.json'
ALLAN_FILE = 'allan.csv'
BINNED_FILE = 'binned.csv'
CLOSURE_REPORT_FILE = 'closure.json'
HARMONIC_TABLE_FILE = 'harmonic_table.csv'
C02_SERIES_FILE = 'c02_series.csv'

# relative disagreement above which computed coefficients are reported against the printed ones
COEFFICIENT_WARN_TOLERANCE = 5e-3

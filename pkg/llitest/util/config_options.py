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
This module contains the specification of all llitest configuration options.
The specification drives the creation of argument parsers, the default TOML config,
and TOML file checking for required options and value constraints.
"""
import argparse
import copy

import tabulate

from llitest.util import constants


def get_options_spec(command=None, subcommand=None, load_format=True):
    """Returns options specification.

    Returns the options specification for the given command and subcommand if specified; otherwise, returns
    the entire options specification

    Args:
        command: command (or non-command section) to load option spec for
        subcommand: subcommand (of command) to load option spec for
        load_format: whether to use loaded format (which omits some fields); used only if command
            or subcommand is specified
    """
    if command is None:
        return copy.deepcopy(__options_spec)
    if subcommand is None:
        spec = copy.copy(__options_spec[command])
    else:
        spec = copy.copy(__options_spec[command]['subcommands'][subcommand])
    if load_format:
        spec.pop('is_cli_command', None)
        spec.pop('help_message', None)
        spec.pop('subcommands', None)
    return spec


def print_options_with_help(command=None, tablefmt='simple'):
    """Prints configuration options.

    Prints configuration options along with help messages for all options of the given command, if provided,
    or all configuration options otherwise.

    Args:
        command: command to print configuration options for
        tablefmt: table format for the tabulate module
    """
    opt_spec = get_options_spec(command, load_format=False)
    output = []
    if command:
        commands = [command]
        opt_spec = {command: opt_spec}
    else:
        commands = list(opt_spec.keys())

    for cmd in commands:
        __append_output_for_command(cmd, opt_spec[cmd], output)
        output.append(['', '', ''])

    tabulate.PRESERVE_WHITESPACE = True
    print(tabulate.tabulate(output, tablefmt=tablefmt,
                            headers=['TOML name ("*"=req, "^"=CLI-only)', 'CLI name', 'Description']))


def __append_output_for_command(cmd, opt_spec, output, subcmd=None):
    """Appends options list for command to output."""
    if subcmd is not None:
        output.append(['', '', ''])
    cmdstr = cmd if subcmd is None else '{}.{}'.format(cmd, subcmd)
    output.append([cmdstr, '', opt_spec['help_message'] if 'help_message' in opt_spec.keys() else ''])
    for opt_name in opt_spec.keys():
        if opt_name in ['is_cli_command', 'help_message']:
            continue
        opt_info = opt_spec[opt_name]
        if opt_name == 'subcommands':
            for subcmd in opt_info.keys():
                __append_output_for_command(cmd, opt_info[subcmd], output, subcmd)
        else:
            fmtname = opt_name
            if opt_info['required'] == True:
                fmtname += '*'
            if not opt_info['is_toml_option']:
                fmtname += '^'
            output.append([
                fmtname,
                '{}/{}'.format(opt_info['short_name'], opt_info['long_name']) if opt_info['is_cli_option'] else '',
                opt_info['help_message']
            ])


# value constraints; each returns an empty string if the value is acceptable, and an
# explanation otherwise

def __positive(opt_name, value, config):
    return '' if value > 0 else '"{}" must be positive: {}'.format(opt_name, value)


def __non_negative(opt_name, value, config):
    return '' if value >= 0 else '"{}" must not be negative: {}'.format(opt_name, value)


def __unit_interval(opt_name, value, config):
    return '' if 0 <= value <= 1 else '"{}" must lie in [0, 1]: {}'.format(opt_name, value)


def __colatitude(opt_name, value, config):
    return '' if 0 < value < 180 else '"{}" must lie strictly between 0 and 180 degrees: {}'.format(opt_name, value)


def __orbital_boost(opt_name, value, config):
    if not 0 <= value < 1:
        return '"{}" must lie in [0, 1): {}'.format(opt_name, value)
    if config['frame']['beta_rotation'] >= value and value > 0:
        return '"beta_rotation" ({}) must be smaller than "{}" ({})'.format(
            config['frame']['beta_rotation'], opt_name, value)
    return ''


def __sidereal_year(opt_name, value, config):
    if value <= config['frame']['sidereal_day_s']:
        return '"{}" must exceed "sidereal_day_s": {}'.format(opt_name, value)
    return ''


def __long_ramsey(opt_name, value, config):
    if value <= config['ramsey']['t_short_s']:
        return '"{}" ({}) must exceed "t_short_s" ({})'.format(opt_name, value, config['ramsey']['t_short_s'])
    return ''


def __gaps(opt_name, value, config):
    for gap in value:
        if len(gap) != 2 or gap[0] >= gap[1]:
            return '"{}" entries must be [start_s, end_s] pairs with start < end: {}'.format(opt_name, gap)
    return ''


def __periods(opt_name, value, config):
    if not value or any(p <= 0 for p in value):
        return '"{}" must be a non-empty list of positive periods: {}'.format(opt_name, value)
    return ''


__options_spec = {

    # "general" options: applicable to all commands
    # when adding a cli option, make sure its long name is similar to the option name,
    # with hyphens instead of underscores
    'general': {
        'is_cli_command': False,
        'config_file': {
            'required': False,
            'is_toml_option': False,
            'is_cli_option': True,
            'short_name': '-cf',
            'long_name': '--config-file',
            'type': argparse.FileType('r'),
            'default_value': constants.LLITEST_DEFAULT_CONFIG_FILE,
            'aliases': ['--config'],
            'help_message': 'path to TOML file containing configuration options (also accepted as --config)'
        },
        'log_level': {
            'required': False,
            'is_toml_option': False,
            'is_cli_option': True,
            'short_name': '-l',
            'long_name': '--log-level',
            'type': str,
            'choices': ['CRITICAL', 'ERROR', 'WARNING', 'INFO', 'DEBUG'],
            'default_value': 'ERROR',
            'help_message': 'logging level for printing diagnostic messages; options are CRITICAL, ERROR, WARNING, INFO, DEBUG'
        },
        'seed': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': True,
            'short_name': '-s',
            'long_name': '--seed',
            'type': int,
            'default_value': 20140419,
            'constraint': __non_negative,
            'help_message': 'seed of the random number generator; runs are reproducible given config and seed'
        },
        'output_dir': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': True,
            'short_name': '-o',
            'long_name': '--out',
            'type': str,
            'default_value': '',
            'help_message': 'directory for output files (default: llitest-output-<command> in the current directory)'
        },
        'blind': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': True,
            'short_name': '-b',
            'long_name': '--blind',
            'type': bool,
            'default_value': False,
            'help_message': 'omit the injected c tensor from dataset metadata and reports'
        },
        'version': {
            'required': False,
            'is_toml_option': False,
            'is_cli_option': True,
            'short_name': '-v',
            'long_name': '--version',
            'type': bool,
            'default_value': False,
            'help_message': 'print CLI version number'
        },
    },

    # laboratory location, Earth motion and time origin
    'frame': {
        'is_cli_command': False,
        'chi_deg': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 52.1,
            'constraint': __colatitude,
            'help_message': 'colatitude of the laboratory in degrees (Berkeley, CA: 52.1)'
        },
        'eta_deg': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 23.4,
            'help_message': 'angle between the ecliptic and the equatorial plane in degrees (23.4)'
        },
        'sidereal_day_s': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': constants.SIDEREAL_DAY_S,
            'constraint': __positive,
            'help_message': 'sidereal rotation period of the Earth in seconds (23.93 h)'
        },
        'sidereal_year_s': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': constants.SIDEREAL_YEAR_S,
            'constraint': __sidereal_year,
            'help_message': 'sidereal orbital period of the Earth in seconds'
        },
        'beta_orbital': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 1e-4,
            'constraint': __orbital_boost,
            'help_message': 'orbital speed of the Earth in units of c (1e-4)'
        },
        'beta_rotation': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 1.5e-6,
            'constraint': __non_negative,
            'help_message': 'equatorial rotation speed of the Earth in units of c (1.5e-6)'
        },
        'rotation_speed_includes_colatitude': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': bool,
            'default_value': False,
            'help_message': 'treat beta_rotation as the laboratory speed itself instead of scaling it by sin(chi)'
        },
        'epoch_utc': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': str,
            'default_value': constants.VERNAL_EQUINOX_2014_UTC,
            'help_message': 'time origin T=0 of the sidereal model, ISO-8601 UTC (vernal equinox 2014)'
        },
    },

    # atomic level used for the sensitivity coefficients
    'level': {
        'is_cli_command': False,
        'label': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': str,
            'default_value': 'D5/2',
            'help_message': 'level label; tabulated levels are D3/2, D5/2 and S1/2'
        },
        'J': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 0.0,
            'constraint': __non_negative,
            'help_message': 'total angular momentum; 0 takes the tabulated value of the label'
        },
        't2_me_au': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 0.0,
            'constraint': __non_negative,
            'help_message': 'reduced matrix element <J||T2||J> in atomic units; 0 takes the tabulated value '
                            '(D3/2: 7.09, D5/2: 9.25)'
        },
        'p2_me_au': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 0.0,
            'constraint': __non_negative,
            'help_message': 'matrix element <p^2> in atomic units; 0 takes the tabulated value (0.75)'
        },
        't2_rel_uncertainty': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 0.02,
            'constraint': __non_negative,
            'help_message': 'relative uncertainty of the tensor coefficient, reported only (0.02)'
        },
        'p2_rel_uncertainty': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 0.12,
            'constraint': __non_negative,
            'help_message': 'relative uncertainty of the scalar coefficient, reported only (0.12)'
        },
    },

    # measurement block timing and readout
    'ramsey': {
        'is_cli_command': False,
        't_short_s': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 0.005,
            'constraint': __positive,
            'help_message': 'short Ramsey duration in seconds (5 ms)'
        },
        't_long_s': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 0.100,
            'constraint': __long_ramsey,
            'help_message': 'long Ramsey duration in seconds (100 ms)'
        },
        'n_cycles_per_signal': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': int,
            'default_value': 200,
            'constraint': __positive,
            'help_message': 'experimental cycles per signal, split evenly between laser phases phi and phi+pi (200)'
        },
        'block_period_s': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 60.0,
            'constraint': __positive,
            'help_message': 'duration of one measurement block in seconds (60)'
        },
        'campaign_hours': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 23.0,
            'constraint': __positive,
            'help_message': 'duration of the campaign in hours (23)'
        },
        'start_time_utc': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': str,
            'default_value': constants.CAMPAIGN_START_UTC,
            'help_message': 'campaign start, ISO-8601 UTC (2014-04-19T03:00:00Z)'
        },
        'gaps': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': list,
            'default_value': [],
            'constraint': __gaps,
            'help_message': 'intervals [start_s, end_s] after campaign start without blocks'
        },
        'contrast': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 0.5,
            'constraint': __unit_interval,
            'help_message': 'fringe contrast at zero Ramsey time; the mixed state holds the entangled state with 50% probability (0.5)'
        },
        'decay_tau_s': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 0.155,
            'constraint': __positive,
            'help_message': 'exponential decay constant of the fringe in seconds (155 ms)'
        },
        'projection_noise': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': bool,
            'default_value': True,
            'help_message': 'sample finite-shot readout; false evaluates signals at their expectation value'
        },
        'target_asd_hz': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 3.3,
            'constraint': __non_negative,
            'help_message': 'white-noise level of the averaged frequency in Hz*sqrt(s); excess noise is added on top of '
                            'projection noise to reach it, 0 disables excess noise (3.3)'
        },
        'b_probe_sigma_mG': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 0.05,
            'constraint': __non_negative,
            'help_message': 'noise of one magnetic field probe measurement in mG (0.05)'
        },
        'f_axial_probe_every': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': int,
            'default_value': 10,
            'constraint': __positive,
            'help_message': 'probe the axial trap frequency once every this many blocks (10)'
        },
        'f_axial_probe_sigma_kHz': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 0.02,
            'constraint': __non_negative,
            'help_message': 'noise of one axial frequency probe measurement in kHz (0.02)'
        },
    },

    # hidden truth injected by the simulator
    'truth': {
        'is_cli_command': False,
        'c': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': dict,
            'default_value': {name: 0.0 for name in constants.C_COMPONENTS},
            'help_message': 'SCCEF c tensor components c_TT ... c_YZ injected as Lorentz violation'
        },
        'b_mean_G': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 3.930,
            'constraint': __positive,
            'help_message': 'mean magnetic field in G (3.930)'
        },
        'b_drift_mG': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 0.5,
            'constraint': __non_negative,
            'help_message': 'largest deviation of the magnetic field from its mean in mG (0.5, i.e. 1 mG peak to peak)'
        },
        'b_drift_periods_h': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': list,
            'default_value': [1.7, 2.9, 4.3],
            'constraint': __periods,
            'help_message': 'periods in hours of the components of the magnetic field drift'
        },
        'f_axial_mean_kHz': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 210.0,
            'constraint': __positive,
            'help_message': 'mean axial trap frequency in kHz (210)'
        },
        'f_axial_drift_kHz': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 0.5,
            'constraint': __non_negative,
            'help_message': 'largest deviation of the axial frequency from its mean in kHz (0.5, i.e. 1 kHz peak to peak)'
        },
        'f_axial_drift_periods_h': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': list,
            'default_value': [1.3, 2.3, 3.4],
            'constraint': __periods,
            'help_message': 'periods in hours of the components of the axial frequency drift'
        },
        'gradient_hz': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 100.0,
            'help_message': 'linear Zeeman shift from the field gradient, opposite for L and R states, in Hz (100)'
        },
        'gradient_drift_hz': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 5.0,
            'constraint': __non_negative,
            'help_message': 'largest deviation of the gradient shift in Hz (5)'
        },
        'ac_stark_hz': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 0.120,
            'help_message': 'differential ac Stark shift of the two-ion state in Hz (0.120)'
        },
        'ac_stark_rel_drift': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 1e-2,
            'constraint': __non_negative,
            'help_message': 'relative stability of the ac Stark shift (1e-2)'
        },
        'phi_offset_drift_rad': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 0.3,
            'constraint': __non_negative,
            'help_message': 'largest deviation of the state preparation phase in rad (0.3)'
        },
        'signal_offset': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 0.0,
            'help_message': 'mean additive offset B of the oscillation signal (0)'
        },
        'signal_offset_drift': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 0.02,
            'constraint': __non_negative,
            'help_message': 'largest deviation of the signal offset B (0.02)'
        },
        'drift_seed': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': int,
            'default_value': 1,
            'constraint': __non_negative,
            'help_message': 'seed for the phases of the drift components (independent of the run seed)'
        },
    },

    # calibration laws shared by the simulator truth and the analysis corrections
    'systematics': {
        'is_cli_command': False,
        'zeeman_ref_shift_hz': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 8.9,
            'help_message': 'quadratic Zeeman shift at the reference field in Hz (8.9)'
        },
        'b_ref_G': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 3.930,
            'constraint': __positive,
            'help_message': 'reference field of the quadratic Zeeman calibration in G (3.930)'
        },
        'quadrupole_slope_hz_mm2_per_V': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 4.0,
            'help_message': 'quadrupole shift per unit electric field gradient in Hz mm^2/V (4.0)'
        },
        'ion_mass_u': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': constants.CA40_MASS_U,
            'constraint': __positive,
            'help_message': 'ion mass in atomic mass units, used for the field gradient m*w_z^2/e'
        },
    },

    # binning, fitting and outlier policy
    'analysis': {
        'is_cli_command': False,
        'bin_width_s': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 3600.0,
            'constraint': __positive,
            'help_message': 'width of the bins fitted by the sidereal model in seconds (60 min)'
        },
        'min_points_per_bin': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': int,
            'default_value': 2,
            'constraint': __positive,
            'help_message': 'bins with fewer points are skipped (2)'
        },
        'outlier_sigma': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': float,
            'default_value': 5.0,
            'constraint': __positive,
            'help_message': 'clamp-flagged blocks farther than this many robust sigmas from the running median are dropped (5)'
        },
        'outlier_window': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': int,
            'default_value': 31,
            'constraint': __positive,
            'help_message': 'number of blocks in the running median window (31)'
        },
        'scale_with_chi2': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': False,
            'type': bool,
            'default_value': True,
            'help_message': 'scale fit uncertainties by sqrt(chi2_reduced) when it exceeds 1'
        },
    },

    # "config" command: initialize or list configuration options
    'config': {
        'is_cli_command': True,
        'help_message': 'Initialize configuration file or list configuration options',
        'subcommands': {
            'init': {
                'help_message': 'Create an initial configuration file with default values',
                'file': {
                    'required': False,
                    'is_toml_option': False,
                    'is_cli_option': True,
                    'short_name': '-f',
                    'long_name': '--file',
                    'type': str,
                    'default_value': '',
                    'help_message': 'name of configuration file to be initialized (default: print to stdout)'
                },
            },
            'list': {
                'help_message': 'List all configuration options',
            },
        },
    },

    # "sensitivity" command: sensitivity coefficients of a level
    'sensitivity': {
        'is_cli_command': True,
        'help_message': 'Print the sensitivity of a D-state level to the c tensor',
        'level': {
            'required': False,
            'is_toml_option': False,
            'is_cli_option': True,
            'short_name': '-lv',
            'long_name': '--level',
            'type': str,
            'default_value': '',
            'help_message': 'level label overriding level.label (D3/2, D5/2)'
        },
        'pair': {
            'required': False,
            'is_toml_option': False,
            'is_cli_option': True,
            'short_name': '-p',
            'long_name': '--pair',
            'type': bool,
            'default_value': False,
            'help_message': 'print only the two-ion pair sensitivity in Hz per unit C0(2)'
        },
    },

    # "transform" command: SCCEF tensor to laboratory observable
    'transform': {
        'is_cli_command': True,
        'help_message': 'Transform a SCCEF c tensor into the laboratory C0(2) harmonic table or time series',
        'c_file': {
            'required': False,
            'is_toml_option': False,
            'is_cli_option': True,
            'short_name': '-i',
            'long_name': '--c-file',
            'type': str,
            'default_value': '',
            'help_message': 'TOML file with a [c] table of tensor components (default: truth.c of the config)'
        },
        'table': {
            'required': False,
            'is_toml_option': False,
            'is_cli_option': True,
            'short_name': '-t',
            'long_name': '--table',
            'type': bool,
            'default_value': False,
            'help_message': 'write the harmonic table (default when neither --table nor --series is given)'
        },
        'series': {
            'required': False,
            'is_toml_option': False,
            'is_cli_option': True,
            'short_name': '-ser',
            'long_name': '--series',
            'type': bool,
            'default_value': False,
            'help_message': 'write C0(2) sampled over time'
        },
        'span_hours': {
            'required': False,
            'is_toml_option': False,
            'is_cli_option': True,
            'short_name': '-sh',
            'long_name': '--span-hours',
            'type': float,
            'default_value': 48.0,
            'help_message': 'time span of the series in hours, starting at the epoch (48)'
        },
        'step_s': {
            'required': False,
            'is_toml_option': False,
            'is_cli_option': True,
            'short_name': '-st',
            'long_name': '--step-s',
            'type': float,
            'default_value': 600.0,
            'help_message': 'sampling step of the series in seconds (600)'
        },
        'at': {
            'required': False,
            'is_toml_option': False,
            'is_cli_option': True,
            'short_name': '-at',
            'long_name': '--at',
            'type': float,
            'default_value': None,
            'help_message': 'also print C0(2) at this time (seconds since the epoch), from the table and directly'
        },
    },

    # "simulate" command: synthetic measurement campaign
    'simulate': {
        'is_cli_command': True,
        'help_message': 'Simulate a measurement campaign and write the dataset and its metadata',
        'hours': {
            'required': False,
            'is_toml_option': False,
            'is_cli_option': True,
            'short_name': '-hr',
            'long_name': '--hours',
            'type': float,
            'default_value': 0.0,
            'help_message': 'campaign duration in hours overriding ramsey.campaign_hours'
        },
        'inject': {
            'required': False,
            'is_toml_option': False,
            'is_cli_option': True,
            'short_name': '-inj',
            'long_name': '--inject',
            'type': list,
            'default_value': [],
            'help_message': 'tensor components to inject, e.g. c_XZ=1e-18 (override truth.c)'
        },
        'name': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': True,
            'short_name': '-n',
            'long_name': '--name',
            'type': str,
            'default_value': 'campaign',
            'help_message': 'base name of the dataset files (campaign)'
        },
    },

    # "analyze" command: corrections, binning, sidereal fit, bounds, Allan deviation
    'analyze': {
        'is_cli_command': True,
        'help_message': 'Analyze a dataset: sidereal fit, c tensor bounds and Allan deviation',
        'dataset': {
            'required': True,
            'is_toml_option': True,
            'is_cli_option': True,
            'short_name': '-d',
            'long_name': '--dataset',
            'type': str,
            'default_value': '',
            'help_message': 'dataset CSV written by the simulate command (or any CSV with the same columns)'
        },
    },

    # "allan" command: Allan deviation only
    'allan': {
        'is_cli_command': True,
        'help_message': 'Compute the Allan deviation of the corrected frequency of a dataset',
        'dataset': {
            'required': True,
            'is_toml_option': True,
            'is_cli_option': True,
            'short_name': '-d',
            'long_name': '--dataset',
            'type': str,
            'default_value': '',
            'help_message': 'dataset CSV written by the simulate command'
        },
    },

    # "closure" command: inject, simulate, analyze and compare
    'closure': {
        'is_cli_command': True,
        'help_message': 'Inject a c tensor, simulate, analyze and report the recovered values and pulls',
        'inject': {
            'required': False,
            'is_toml_option': False,
            'is_cli_option': True,
            'short_name': '-inj',
            'long_name': '--inject',
            'type': list,
            'default_value': [],
            'help_message': 'tensor components to inject, e.g. c_XZ=1e-18 (override truth.c)'
        },
        'hours': {
            'required': False,
            'is_toml_option': False,
            'is_cli_option': True,
            'short_name': '-hr',
            'long_name': '--hours',
            'type': float,
            'default_value': 0.0,
            'help_message': 'campaign duration in hours overriding ramsey.campaign_hours'
        },
        'n_seeds': {
            'required': False,
            'is_toml_option': True,
            'is_cli_option': True,
            'short_name': '-ns',
            'long_name': '--n-seeds',
            'type': int,
            'default_value': 1,
            'constraint': __positive,
            'help_message': 'number of seeded campaigns; seeds run from --seed upward (1)'
        },
    },
}

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

import toml

from . import constants, config_options
from .errors import ConfigError


def load_config(args=None, config_file=None):
    """Loads config options.

    Creates default config options object, updates it with options specified in the toml file and the
    command line (in that order, so that command-line values override toml file values for options that
    are specified in both places), validates it and returns the final options object.

    Args:
        args: parsed command-line arguments
        config_file: name of (or open handle to) config file to be loaded

    Returns:
        dict: dictionary containing configuration options for run

    Raises:
        ConfigError: if the toml file cannot be parsed or validation fails
    """
    # initialize config
    llitest_config = init_config()

    # load config toml file, if one is given, and merge it into initialized config; this ensures that
    # options missing in the toml file are initialized to their default values
    if config_file is None and args is not None:
        config_file = getattr(args, 'config_file', None)
    if config_file is not None:
        toml_config = __read_toml(config_file)
        __warn_unknown_options(toml_config)
        __merge_config(llitest_config, toml_config)
    logging.debug('config: {}'.format(llitest_config))

    command = None
    if args is not None:
        # update general options with values specified in command line
        __update_config_with_cli_value(config=llitest_config['general'],
                                       options_spec=config_options.get_options_spec(command='general'),
                                       args=args)
        command = getattr(args, 'command', None)
        if command and command in llitest_config:
            __update_config_with_cli_value(config=llitest_config[command],
                                           options_spec=config_options.get_options_spec(command=command),
                                           args=args)

    # validate loaded config information, raise if validation errors occur
    val_failure_msgs = validate_config(config=llitest_config, command=command)
    if val_failure_msgs:
        raise ConfigError('configuration options validation failed:\n{}'.format(''.join(val_failure_msgs)))

    logging.debug('validated config: {}'.format(llitest_config))
    return llitest_config


def init_config():
    """Initializes config.

    Initializes and returns config data structure containing default values for all
    configuration options (excluding non-toml options, which should not be loaded).

    Returns:
        dict containing initialized options
    """
    options_spec = config_options.get_options_spec()
    config = {}

    for opt_name in options_spec.keys():
        if not options_spec[opt_name]['is_cli_command']:
            config[opt_name] = __init_options(options_spec[opt_name])
        else:
            cmd_opts_spec = options_spec[opt_name]
            subcmd_opts_spec = cmd_opts_spec.pop('subcommands', {})
            options = __init_options(cmd_opts_spec)
            # commands without toml options (and subcommand-only commands) are left out of the file
            if options:
                config[opt_name] = options
            for subcmd in subcmd_opts_spec.keys():
                sub_options = __init_options(subcmd_opts_spec[subcmd])
                if sub_options:
                    config.setdefault(opt_name, {})[subcmd] = sub_options

    return config


def apply_injections(config, injections):
    """Sets truth tensor components from "name=value" strings.

    Args:
        config: loaded config, updated in place
        injections: list of strings such as "c_XZ=1e-18"

    Raises:
        ConfigError: if an entry is malformed or names an unknown component
    """
    for entry in injections or []:
        name, sep, value = entry.partition('=')
        name = name.strip()
        if not sep or name not in constants.C_COMPONENTS:
            raise ConfigError('invalid injection "{}"; expected <component>=<value> with component one of {}'.format(
                entry, ', '.join(constants.C_COMPONENTS)))
        try:
            config['truth']['c'][name] = float(value)
        except ValueError:
            raise ConfigError('invalid value in injection "{}"'.format(entry))
        logging.info('injecting {} = {}'.format(name, config['truth']['c'][name]))


def validate_config(config, command=None):
    """Validate loaded config information.

    Validates the non-command sections and the section of the given command. The validation checks
    ensure that: (1) values have the declared types, (2) required parameters do not have their default
    values, (3) enum types have valid values, and (4) value constraints hold.

    Returns:
        list of validation failure messages; empty if the config is valid
    """
    options_spec = config_options.get_options_spec()
    scopes = [name for name, spec in options_spec.items() if not spec['is_cli_command']]
    if command is not None and command in config and command in options_spec:
        scopes.append(command)

    val_failure_msgs = []
    for scope in scopes:
        scope_spec = config_options.get_options_spec(scope)
        type_errors = __check_types(config[scope], scope_spec)
        val_failure_msgs.extend('\t- Invalid value in "{}": {}\n'.format(scope, msg) for msg in type_errors)
        if type_errors:
            continue
        missing = [opt for opt, spec in scope_spec.items()
                   if spec['is_toml_option'] and spec['required'] and config[scope][opt] == spec['default_value']]
        if missing:
            val_failure_msgs.append('\t- Missing required options for "{}": {}\n'.format(scope, missing))

    # constraints may refer to other sections, so they run only on a well-typed config
    if val_failure_msgs:
        return val_failure_msgs
    for scope in scopes:
        for opt_name, opt in config_options.get_options_spec(scope).items():
            if opt_name not in config[scope]:
                continue
            value = config[scope][opt_name]
            if 'choices' in opt and value not in opt['choices']:
                val_failure_msgs.append('\t- Value for option "{}" must be one of {}: {}\n'.format(
                    opt_name, opt['choices'], value))
            if 'constraint' in opt:
                msg = opt['constraint'](opt_name, value, config)
                if msg:
                    val_failure_msgs.append('\t- Violated parameter constraint: {}\n'.format(msg))
    return val_failure_msgs


def __check_types(config, options_spec):
    """Checks declared option types, converting integers given for float options."""
    errors = []
    for opt_name, opt in options_spec.items():
        if not opt['is_toml_option'] or opt_name not in config:
            continue
        value = config[opt_name]
        opt_type = opt['type']
        if opt_type == float:
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
                errors.append('"{}" must be a finite number: {!r}'.format(opt_name, value))
            else:
                config[opt_name] = float(value)
        elif opt_type == int:
            if isinstance(value, bool) or not isinstance(value, int):
                errors.append('"{}" must be an integer: {!r}'.format(opt_name, value))
        elif opt_type == list:
            if not isinstance(value, list):
                errors.append('"{}" must be a list: {!r}'.format(opt_name, value))
        elif opt_type == dict:
            errors.extend(__check_tensor_table(opt_name, value))
        elif not isinstance(value, opt_type):
            errors.append('"{}" must be of type {}: {!r}'.format(opt_name, opt_type.__name__, value))
    return errors


def __check_tensor_table(opt_name, value):
    if not isinstance(value, dict):
        return ['"{}" must be a table'.format(opt_name)]
    errors = []
    for name, component in value.items():
        if name not in constants.C_COMPONENTS:
            errors.append('unknown tensor component "{}" in "{}"'.format(name, opt_name))
        elif isinstance(component, bool) or not isinstance(component, (int, float)) \
                or not math.isfinite(component):
            errors.append('tensor component "{}" must be a finite number: {!r}'.format(name, component))
        else:
            value[name] = float(component)
    return errors


def __read_toml(config_file):
    try:
        return toml.load(config_file)
    except toml.TomlDecodeError as e:
        raise ConfigError('failed to parse config file: {}'.format(e))
    except OSError as e:
        raise ConfigError('failed to read config file: {}'.format(e))


def __warn_unknown_options(toml_config):
    options_spec = config_options.get_options_spec()
    for section, values in toml_config.items():
        if section not in options_spec:
            logging.warning('ignoring unknown config section "{}"'.format(section))
            continue
        if not isinstance(values, dict):
            continue
        for opt_name in values.keys():
            if opt_name not in options_spec[section] and opt_name not in options_spec[section].get('subcommands', {}):
                logging.warning('unknown config option "{}.{}"'.format(section, opt_name))


def __init_options(options_spec):
    """
    Given a dictionary of options spec, creates a config with each option to its default value while
    excluding non-toml options
    """
    ret_config = {}
    options_spec.pop('help_message', None)
    options_spec.pop('is_cli_command', None)
    for option_name in options_spec.keys():
        if options_spec[option_name]['is_toml_option']:
            ret_config[option_name] = options_spec[option_name]['default_value']
    return ret_config


def __update_config_with_cli_value(config, options_spec, args):
    """Updates config object with cli option values.

    For the given config object and options spec, updates the config value for options that are
    specified in the given command-line args. Options not given on the command line are None (or
    False for flags) in the args namespace.
    """
    for opt_name in options_spec.keys():
        if options_spec[opt_name]['is_cli_option'] and options_spec[opt_name]['is_toml_option']:
            if hasattr(args, opt_name):
                opt_value = getattr(args, opt_name)
                if opt_value is not None and opt_value is not False:
                    config[opt_name] = opt_value


def __merge_config(base_config, update_config):
    """Merge two config specs.

    Updates base config with data in update config.
    """
    for key, val in update_config.items():
        if isinstance(val, dict):
            baseval = base_config.setdefault(key, {})
            __merge_config(baseval, val)
        else:
            base_config[key] = val

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

import argparse
import logging
import os
import sys

import toml

from ._version import __version__
from .util import logging_util, config_util, config_options
from .util.constants import *

# spec fields that describe a command rather than one of its options
__COMMAND_FIELDS = ('is_cli_command', 'help_message', 'subcommands')


def __create_command_parsers(subparsers, commands_spec):
    """Adds one parser per CLI command, and per subcommand where the command has any.

    Args:
        subparsers: subparsers action of the main parser
        commands_spec: options specification of the CLI commands
    """
    for cmd, cmd_spec in commands_spec.items():
        cmd_parser = subparsers.add_parser(cmd, help=cmd_spec.get('help_message'))
        __add_arguments_to_parser(cmd_parser, cmd_spec)
        subcmds_spec = cmd_spec.get('subcommands', {})
        if not subcmds_spec:
            continue
        subcmd_parsers = cmd_parser.add_subparsers(dest='sub_command', required=True)
        for subcmd, subcmd_spec in subcmds_spec.items():
            subcmd_parser = subcmd_parsers.add_parser(subcmd.replace('_', '-'),
                                                      help=subcmd_spec.get('help_message'))
            __add_arguments_to_parser(subcmd_parser, subcmd_spec)


def __argument_kwargs(option_name, option):
    """Maps an option specification onto add_argument keyword arguments."""
    if option_name == 'version':
        return dict(help=option['help_message'], action='version', version=__version__)
    kwargs = dict(help=option['help_message'], dest=option_name)
    arg_type = option['type']
    if arg_type == bool:
        kwargs['action'] = 'store_true'
    elif arg_type == list:
        # e.g. --inject c_XZ=1e-18 c_YZ=2e-18
        kwargs['nargs'] = '+'
    else:
        kwargs['type'] = arg_type
    if 'choices' in option:
        kwargs['choices'] = option['choices']
    if option_name == 'log_level':
        kwargs['default'] = option['default_value']
    return kwargs


def __add_arguments_to_parser(parser, options_spec):
    """Adds an argument for every CLI option of the given options specification to the parser."""
    for option_name, option in options_spec.items():
        if option_name in __COMMAND_FIELDS or not option['is_cli_option']:
            continue
        names = [option['short_name'], option['long_name']] + option.get('aliases', [])
        parser.add_argument(*names, **__argument_kwargs(option_name, option))


def __process_config_commands(args):
    """Processes config commands (init, list)."""
    if args.sub_command == 'init':
        config = config_util.init_config()
        if hasattr(args, 'file') and args.file:
            with open(args.file, 'w') as f:
                toml.dump(config, f)
            logging_util.llitest_status('Config file written to: {}'.format(args.file))
        else:
            print('\n{}'.format(toml.dumps(config)))
    else:
        config_options.print_options_with_help()


def parse_arguments(parser, options_spec, argv=None):
    # add the arguments for the main parser for non-command top-level options in the option spec
    commands_spec = {}
    for opt_name in options_spec.keys():
        if not options_spec[opt_name]['is_cli_command']:
            if opt_name == 'general':
                __add_arguments_to_parser(parser, options_spec[opt_name])
        else:
            commands_spec[opt_name] = options_spec[opt_name]

    # a config file in the working directory is used unless another one is given
    if os.path.isfile(LLITEST_DEFAULT_CONFIG_FILE):
        parser.set_defaults(config_file=LLITEST_DEFAULT_CONFIG_FILE)

    subparser = parser.add_subparsers(dest='command')
    __create_command_parsers(subparser, commands_spec)

    return parser.parse_args(argv)


def perform_checks_init_logger(args, parser):
    """Handles invocations without a command and the config command, then initializes logging.

    Returns:
        False if the invocation was fully handled here, True otherwise
    """
    if args.command is None:
        parser.print_help()
        return False

    if args.command == 'config':
        __process_config_commands(args)
        return False

    logging_util.init_logging(os.path.join(LLITEST_CLI_DIR, LLITEST_LOG_FILE), args.log_level)
    logging.debug('args: {}'.format(args))
    return True


def load_configuration(args):
    if getattr(args, 'config_file', None) is not None:
        logging_util.llitest_status('Loading config file {}'.format(args.config_file.name))
    llitest_config = config_util.load_config(args=args)
    logging.info('config: {}'.format(llitest_config))
    return llitest_config

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
import sys

from .analyze import analyze
from .frames import report as frames_report
from .llitest import *
from .sensitivity import report as sensitivity_report
from .simulate import simulate
from .util import logging_util
from .util.errors import LLITestError

COMMANDS = {
    'sensitivity': sensitivity_report.process_sensitivity_command,
    'transform': frames_report.process_transform_command,
    'simulate': simulate.process_simulate_command,
    'analyze': analyze.process_analyze_command,
    'allan': analyze.process_allan_command,
    'closure': analyze.process_closure_command,
}


def main(argv=None):
    """Main entry point for the llitest command.

    Parses command-line arguments, loads configuration information and executes the specified
    command. Errors of the llitest library end the process with one status line and the exit code
    of the error class.
    """
    parser = argparse.ArgumentParser(prog='llitest',
        description='Simulation and analysis of a trapped-ion test of local Lorentz invariance for electrons')

    args = parse_arguments(parser, config_options.get_options_spec(), argv)
    try:
        if not perform_checks_init_logger(args, parser):
            return
        llitest_config = load_configuration(args)
        COMMANDS[args.command](args, llitest_config)
    except LLITestError as e:
        logging.error(e.status_line())
        logging_util.llitest_status(e.status_line(), error=True)
        sys.exit(e.exit_code)


if __name__ == '__main__':  # pragma: no cover
    main()

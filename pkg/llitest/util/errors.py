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
Exceptions raised by the llitest library. Each class carries the process exit code and the
machine-readable reason used by the CLI when the error reaches the top level.
"""


class LLITestError(Exception):
    exit_code = 1
    reason = 'error'

    def status_line(self):
        return 'reason={} exit_code={} message={}'.format(self.reason, self.exit_code, self)


class ConfigError(LLITestError):
    exit_code = 3
    reason = 'config'


class InputFormatError(LLITestError):
    exit_code = 4
    reason = 'input_format'


class InsufficientDataError(LLITestError):
    exit_code = 5
    reason = 'insufficient_data'


class PhysicsDomainError(LLITestError):
    exit_code = 6
    reason = 'physics_domain'


class NumericalError(LLITestError):
    exit_code = 7
    reason = 'numerical'

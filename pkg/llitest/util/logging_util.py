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

from datetime import datetime
import logging
import logging.handlers
import sys

LOG_FORMAT = '%(asctime)s [%(thread)d] [%(levelname)-4.4s] [%(funcName)-10.10s] %(message)s'


def __handler(handler, level):
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler.setLevel(level)
    return handler


def init_logging(logfile, loglevel):
    """Sends records of the root logger at loglevel and above to a rotating log file and the console."""
    level = getattr(logging, loglevel)
    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    # main() may run several times in one process
    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)
        handler.close()

    root_logger.addHandler(__handler(
        logging.handlers.RotatingFileHandler(logfile, maxBytes=10 * 1024 * 1024, backupCount=2), level))
    root_logger.addHandler(__handler(logging.StreamHandler(), level))


def llitest_status(msg, error=False):
    stamp = datetime.now().strftime('%H:%M:%S.%f')[:-3]
    print('[llitest|{}] {}{}'.format(stamp, 'ERROR: ' if error else '', msg))
    sys.stdout.flush()

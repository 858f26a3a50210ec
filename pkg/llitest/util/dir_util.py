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
import os

from .constants import *


def get_output_dir(config, command):
    """Returns the output directory of a command, creating it if needed.

    The directory is general.output_dir when set; otherwise llitest-output-<command> under the
    directory the CLI was started from.
    """
    output_dir = config['general']['output_dir']
    if not output_dir:
        output_dir = os.path.join(LLITEST_CLI_DIR, LLITEST_OUTPUT_DIR_PREFIX + command)
    if not os.path.isdir(output_dir):
        os.makedirs(output_dir)
        logging.info('created output directory {}'.format(output_dir))
    return output_dir


def dataset_paths(output_dir, name):
    """Returns the dataset CSV and metadata sidecar paths for a dataset name."""
    csv_file = os.path.join(output_dir, name + DATASET_FILE_SUFFIX)
    return csv_file, csv_file + DATASET_META_SUFFIX


def meta_path_for(dataset_file):
    return dataset_file + DATASET_META_SUFFIX

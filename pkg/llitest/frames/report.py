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

import numpy as np
import pandas as pd
import tabulate

from llitest.frames.tensor import CTensorSCCEF, FrameConfig
from llitest.frames import transform
from llitest.util import dir_util
from llitest.util.constants import *
from llitest.util.errors import ConfigError
from llitest.util.logging_util import llitest_status


def process_transform_command(args, config):
    """Processes the transform command.

    Loads the tensor (from --c-file, or truth.c of the config), and writes the harmonic table
    and/or the sampled C0(2) series to the output directory.

    Args:
        args: parsed command-line arguments
        config: loaded configuration options

    Returns:
        list of written files
    """
    if getattr(args, 'c_file', None):
        c = CTensorSCCEF.from_file(args.c_file)
        logging.info('loaded tensor from {}: {}'.format(args.c_file, c))
    else:
        c = CTensorSCCEF.from_dict(config['truth']['c'])
    frame = FrameConfig.from_config(config)
    output_dir = dir_util.get_output_dir(config, 'transform')

    write_series = bool(getattr(args, 'series', False))
    write_table = bool(getattr(args, 'table', False)) or not write_series

    written = []
    table = transform.harmonic_table(c, frame)
    if write_table:
        table_file = os.path.join(output_dir, HARMONIC_TABLE_FILE)
        table.to_csv(table_file)
        print(tabulate.tabulate(table.to_frame().values.tolist(),
                                headers=['frequency', 'omega (rad/s)', 'C_j', 'S_j'], floatfmt='.6g'))
        llitest_status('Harmonic table written to: {}'.format(table_file))
        written.append(table_file)

    if write_series:
        series = c02_series(c, frame, span_hours=__value(args, 'span_hours', 48.0),
                            step_s=__value(args, 'step_s', 600.0))
        series_file = os.path.join(output_dir, C02_SERIES_FILE)
        series.to_csv(series_file, index=False, float_format='%.17g')
        llitest_status('C0(2) series with {} samples written to: {}'.format(len(series), series_file))
        written.append(series_file)

    at = getattr(args, 'at', None)
    if at is not None:
        llitest_status('C0(2)({} s) = {:.12g} (direct), {:.12g} (harmonic table)'.format(
            at, transform.c02_at(c, at, frame), transform.harmonic_reconstruct(table, at)))
    return written


def c02_series(c, frame, span_hours, step_s):
    """Samples C0(2) from the epoch over span_hours at the given step."""
    if span_hours <= 0 or step_s <= 0:
        raise ConfigError('series span and step must be positive: {} h, {} s'.format(span_hours, step_s))
    t = np.arange(0.0, span_hours * SECONDS_PER_HOUR + step_s / 2, step_s)
    return pd.DataFrame({'t_s': t, 'c02': transform.c02_at(c, t, frame)})


def __value(args, name, default):
    value = getattr(args, name, None)
    return default if value is None else value

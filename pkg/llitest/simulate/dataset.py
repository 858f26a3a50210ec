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
Campaign dataset: one CSV row per measurement block and a TOML sidecar with the run metadata.
"""
import dataclasses
import logging
import os
from typing import Optional

import numpy as np
import pandas as pd
import toml

from llitest.simulate.campaign import BlockRecord
from llitest.util import dir_util
from llitest.util.constants import SLOTS
from llitest.util.errors import InputFormatError

DATASET_COLUMNS = (['block', 't_utc_s', 't_epoch_s']
                   + [prefix + slot for slot in SLOTS for prefix in ('dphi_', 'servo_phase_', 's_hat_')]
                   + ['b_meas_mG', 'f_axial_meas_kHz', 'clamp_flags', 'order', 'seed_trace'])

# columns the analysis cannot do without; the rest are informational
REQUIRED_COLUMNS = (['t_epoch_s'] + ['servo_phase_' + slot for slot in SLOTS]
                    + ['b_meas_mG', 'f_axial_meas_kHz'])

TEXT_COLUMNS = {'clamp_flags': str, 'order': str, 'seed_trace': str}


@dataclasses.dataclass
class CampaignDataset:
    records: pd.DataFrame
    meta: Optional[dict] = None

    @classmethod
    def from_records(cls, records, meta=None):
        frame = pd.DataFrame([record.to_row() for record in records], columns=DATASET_COLUMNS)
        return cls(records=frame, meta=meta)

    def __len__(self):
        return len(self.records)

    def blocks(self):
        return [BlockRecord.from_row(row) for row in self.records.to_dict(orient='records')]

    def write(self, csv_file):
        """Writes the CSV and, if metadata is present, the sidecar next to it."""
        self.records.to_csv(csv_file, index=False, float_format='%.17g')
        if self.meta is not None:
            with open(dir_util.meta_path_for(csv_file), 'w') as f:
                toml.dump(self.meta, f)
        logging.info('wrote {} blocks to {}'.format(len(self), csv_file))

    @classmethod
    def read(cls, csv_file):
        """Reads a dataset CSV and its sidecar, if there is one.

        Raises:
            InputFormatError: if the file cannot be parsed, required columns are missing, or
                numeric columns hold non-numeric values
        """
        if not os.path.isfile(csv_file):
            raise InputFormatError('dataset file not found: {}'.format(csv_file))
        try:
            records = pd.read_csv(csv_file, dtype=TEXT_COLUMNS)
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
            raise InputFormatError('cannot parse dataset {}: {}'.format(csv_file, e))
        validate_schema(records)

        meta = None
        meta_file = dir_util.meta_path_for(csv_file)
        if os.path.isfile(meta_file):
            try:
                meta = toml.load(meta_file)
            except toml.TomlDecodeError as e:
                raise InputFormatError('cannot parse dataset metadata {}: {}'.format(meta_file, e))
        else:
            logging.info('no metadata sidecar for {}; configuration values are used'.format(csv_file))
        return cls(records=records, meta=meta)


def validate_schema(records):
    missing = [column for column in REQUIRED_COLUMNS if column not in records.columns]
    if missing:
        raise InputFormatError('dataset is missing columns: {}'.format(', '.join(missing)))
    for column in REQUIRED_COLUMNS:
        if not pd.api.types.is_numeric_dtype(records[column]):
            converted = pd.to_numeric(records[column], errors='coerce')
            bad = converted.isna() & records[column].notna()
            if bad.any():
                raise InputFormatError('column {} holds non-numeric values, first at row {}'.format(
                    column, int(np.flatnonzero(bad.to_numpy())[0])))
            records[column] = converted
    if records['t_epoch_s'].isna().any() or any(records['servo_phase_' + slot].isna().any() for slot in SLOTS):
        raise InputFormatError('block times and servo phases must not be empty')
    if 'clamp_flags' not in records.columns:
        records['clamp_flags'] = '0' * len(SLOTS)
    records['clamp_flags'] = records['clamp_flags'].fillna('0' * len(SLOTS))

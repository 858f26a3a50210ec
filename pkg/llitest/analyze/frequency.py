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
From block records to corrected frequency points and binned points.
"""
import dataclasses
import logging
import math
from typing import List, Tuple

import numpy as np
import pandas as pd

from llitest.simulate.servo import ServoState
from llitest.util.constants import HANDEDNESS, REASON_MISSING_B_FIELD, REASON_OUTLIER, REASON_TOO_FEW_POINTS
from llitest.util.errors import InsufficientDataError


@dataclasses.dataclass(frozen=True)
class FrequencyPoint:
    """L/R averaged frequency at t (seconds since epoch) with the corrections that were subtracted."""
    t: float
    f_bar: float
    sigma: float
    corrections_applied: Tuple[float, float] = (0.0, 0.0)
    n: int = 1
    block: int = -1
    clamped: bool = False

    @property
    def zeeman_hz(self):
        return self.corrections_applied[0]

    @property
    def quadrupole_hz(self):
        return self.corrections_applied[1]


@dataclasses.dataclass
class CorrectedSeries:
    points: List[FrequencyPoint]
    dropped: List[Tuple[int, str]]

    def arrays(self):
        """Returns (t, f_bar, sigma) as numpy arrays."""
        return (np.array([p.t for p in self.points]), np.array([p.f_bar for p in self.points]),
                np.array([p.sigma for p in self.points]))


def block_frequency(block, cfg):
    """Frequencies (f_L, f_R, f_bar) of a block from the long/short servo phase difference."""
    servo = ServoState.locked(block.servo_phase)
    f_l, f_r = (servo.frequency(h, cfg.t_short, cfg.t_long) for h in HANDEDNESS)
    return f_l, f_r, (f_l + f_r) / 2


def block_frequencies(records, cfg):
    """Vectorized block_frequency over the rows of a dataset frame."""
    scale = 2 * np.pi * cfg.effective_duration
    f_l = (records['servo_phase_L_long'] - records['servo_phase_L_short']) / scale
    f_r = (records['servo_phase_R_long'] - records['servo_phase_R_short']) / scale
    return pd.DataFrame({'f_L': f_l, 'f_R': f_r, 'f_bar': (f_l + f_r) / 2})


def apply_corrections(point, b_meas_G, f_axial_meas_kHz, cal):
    """Subtracts the quadratic Zeeman and quadrupole shifts at the measured field and trap frequency.

    Returns:
        the corrected FrequencyPoint, or None if the field measurement is missing
    """
    if b_meas_G is None or not math.isfinite(b_meas_G):
        return None
    zeeman = float(cal.quadratic_zeeman(b_meas_G))
    quadrupole = float(cal.quadrupole_shift(f_axial_meas_kHz))
    return dataclasses.replace(point, f_bar=point.f_bar - zeeman - quadrupole,
                               corrections_applied=(zeeman, quadrupole))


def correct_series(records, cfg, cal, block_sigma, outlier_sigma=5.0, outlier_window=31):
    """Turns dataset records into corrected frequency points.

    Axial frequencies between probes are carried forward from the last probe (and backward before
    the first). Blocks without a field measurement are dropped, as are blocks with a clamped phase
    correction that lie more than outlier_sigma robust standard deviations from the running median.

    Args:
        records: dataset frame
        cfg: RamseyConfig of the dataset
        cal: Calibration
        block_sigma: standard deviation assigned to a single block
        outlier_sigma: outlier threshold
        outlier_window: blocks in the running median

    Returns:
        CorrectedSeries
    """
    if len(records) == 0:
        raise InsufficientDataError('dataset holds no blocks')
    f_axial = records['f_axial_meas_kHz'].ffill().bfill()
    if f_axial.isna().all():
        raise InsufficientDataError('dataset holds no axial frequency measurement')
    freqs = block_frequencies(records, cfg)
    blocks = records['block'] if 'block' in records.columns else pd.Series(np.arange(len(records)))
    clamped = records['clamp_flags'].astype(str).str.contains('1')

    points, dropped = [], []
    for i in range(len(records)):
        point = FrequencyPoint(t=float(records['t_epoch_s'].iat[i]), f_bar=float(freqs['f_bar'].iat[i]),
                               sigma=block_sigma, block=int(blocks.iat[i]), clamped=bool(clamped.iat[i]))
        b_meas_mG = records['b_meas_mG'].iat[i]
        corrected = apply_corrections(point, b_meas_mG * 1e-3, float(f_axial.iat[i]), cal)
        if corrected is None:
            dropped.append((point.block, REASON_MISSING_B_FIELD))
            continue
        points.append(corrected)

    points, outliers = __drop_outliers(points, outlier_sigma, outlier_window)
    dropped.extend((p.block, REASON_OUTLIER) for p in outliers)
    for block, reason in dropped:
        logging.info('dropped block {}: {}'.format(block, reason))
    return CorrectedSeries(points=points, dropped=dropped)


def __drop_outliers(points, outlier_sigma, window):
    if not any(p.clamped for p in points):
        return points, []
    values = pd.Series([p.f_bar for p in points])
    median = values.rolling(window, center=True, min_periods=1).median()
    residual = values - median
    robust_sigma = 1.4826 * float(np.median(np.abs(residual - np.median(residual))))
    keep, outliers = [], []
    for point, res in zip(points, residual):
        if point.clamped and abs(res) > outlier_sigma * robust_sigma:
            outliers.append(point)
        else:
            keep.append(point)
    return keep, outliers


def bin_series(points, width=3600.0, min_points=2):
    """Averages points in consecutive bins of the given width, starting at the first point.

    Each bin is timestamped at the mean time of its points; its sigma is the standard error of the
    scatter of its points.

    Returns:
        (binned points, skipped bins as (bin index, reason))
    """
    if not points:
        raise InsufficientDataError('no points to bin')
    t = np.array([p.t for p in points])
    index = np.floor((t - t[0]) / width).astype(int)
    binned, skipped = [], []
    for bin_index in np.unique(index):
        members = [p for p, k in zip(points, index) if k == bin_index]
        if len(members) < max(min_points, 2):
            skipped.append((int(bin_index), REASON_TOO_FEW_POINTS))
            logging.info('skipped bin {} with {} points'.format(bin_index, len(members)))
            continue
        f = np.array([p.f_bar for p in members])
        binned.append(FrequencyPoint(
            t=float(np.mean([p.t for p in members])),
            f_bar=float(np.mean(f)),
            sigma=float(np.std(f, ddof=1) / math.sqrt(len(members))),
            corrections_applied=(float(np.mean([p.zeeman_hz for p in members])),
                                 float(np.mean([p.quadrupole_hz for p in members]))),
            n=len(members),
        ))
    return binned, skipped

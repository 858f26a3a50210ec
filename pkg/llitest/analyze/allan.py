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

import dataclasses
import logging
import math

import numpy as np
import pandas as pd

from llitest.simulate.campaign import qpn_block_sigma
from llitest.util.errors import InsufficientDataError


@dataclasses.dataclass(frozen=True)
class AllanSeries:
    taus: np.ndarray
    sigmas: np.ndarray

    def to_frame(self):
        return pd.DataFrame({'tau_s': self.taus, 'sigma_f_hz': self.sigmas})

    def to_csv(self, path):
        self.to_frame().to_csv(path, index=False, float_format='%.17g')

    def at(self, tau):
        """Value at tau, extrapolated as h / sqrt(tau) beyond the computed range."""
        if tau <= self.taus[-1]:
            return float(np.interp(tau, self.taus, self.sigmas))
        return fit_white_noise(self) / math.sqrt(tau)


def allan(values, tau0):
    """Overlapping Allan deviation of a frequency series with cadence tau0.

    Averaging times are octaves of tau0 up to a quarter of the series duration. Points are
    treated as consecutive; gaps in the series are not bridged.

    Raises:
        InsufficientDataError: with fewer than 4 points
    """
    y = np.asarray(values, dtype=float)
    n = len(y)
    if n < 4:
        raise InsufficientDataError('Allan deviation needs at least 4 points, got {}'.format(n))
    # phase (time error) series
    x = np.concatenate([[0.0], np.cumsum(y)]) * tau0
    taus, sigmas = [], []
    m = 1
    while m <= n / 4:
        d = x[2 * m:] - 2 * x[m:-m] + x[:-2 * m]
        sigmas.append(math.sqrt(np.sum(d ** 2) / (2 * len(d))) / (m * tau0))
        taus.append(m * tau0)
        m *= 2
    logging.debug('allan deviation: {}'.format(list(zip(taus, sigmas))))
    return AllanSeries(taus=np.array(taus), sigmas=np.array(sigmas))


def allan_of_points(points):
    """Allan deviation of FrequencyPoints, with the cadence taken as the median time step."""
    if len(points) < 4:
        raise InsufficientDataError('Allan deviation needs at least 4 points, got {}'.format(len(points)))
    t = np.array([p.t for p in points])
    tau0 = float(np.median(np.diff(t)))
    return allan([p.f_bar for p in points], tau0)


def fit_white_noise(series):
    """Returns h of the white-noise line sigma_f = h / sqrt(tau) that best matches the series in log space."""
    mask = series.sigmas > 0
    if not mask.any():
        return 0.0
    return float(np.exp(np.mean(np.log(series.sigmas[mask]) + 0.5 * np.log(series.taus[mask]))))


def allan_slope(series):
    """Log-log slope of the Allan deviation; -1/2 for white frequency noise."""
    mask = series.sigmas > 0
    if mask.sum() < 2:
        raise InsufficientDataError('slope needs at least 2 nonzero Allan points')
    slope, _ = np.polyfit(np.log(series.taus[mask]), np.log(series.sigmas[mask]), 1)
    return float(slope)


def qpn_allan_line(ramsey):
    """Projection-noise limit h (Hz sqrt(s)) of the averaged frequency for a Ramsey configuration."""
    return qpn_block_sigma(ramsey) * math.sqrt(ramsey.block_period)

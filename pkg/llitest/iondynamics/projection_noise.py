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

import numpy as np

from llitest.util.errors import PhysicsDomainError


def make_rng(rng_seed):
    """Returns a numpy Generator; an existing Generator is passed through."""
    if isinstance(rng_seed, np.random.Generator):
        return rng_seed
    return np.random.default_rng(rng_seed)


def sample_signal(p_ideal, contrast, n_cycles, rng_seed, offset=0.0):
    """Draws the finite-shot estimate of a parity signal.

    Each of the n_cycles cycles yields parity +1 with probability (1 + contrast*p_ideal + offset)/2
    and -1 otherwise. The estimate is the mean parity, which is unbiased for contrast*p_ideal + offset.

    Args:
        p_ideal: ideal parity in [-1, 1]
        contrast: fringe contrast in [0, 1]
        n_cycles: number of experimental cycles
        rng_seed: seed (int or sequence) or numpy Generator
        offset: additive signal offset

    Returns:
        (s_hat, sigma): the estimate and its binomial standard error
    """
    if n_cycles < 1:
        raise PhysicsDomainError('number of cycles must be positive: {}'.format(n_cycles))
    if abs(p_ideal) > 1:
        raise PhysicsDomainError('ideal parity must lie in [-1, 1]: {}'.format(p_ideal))
    if not 0 <= contrast <= 1:
        raise PhysicsDomainError('contrast must lie in [0, 1]: {}'.format(contrast))
    expected = contrast * p_ideal + offset
    if abs(expected) > 1:
        raise PhysicsDomainError('signal {} is not a valid parity expectation'.format(expected))
    rng = make_rng(rng_seed)
    n_plus = rng.binomial(n_cycles, (1 + expected) / 2)
    s_hat = 2.0 * n_plus / n_cycles - 1.0
    return s_hat, signal_sigma(s_hat, n_cycles)


def signal_sigma(s, n_cycles):
    """Binomial standard error of a mean parity s from n_cycles cycles."""
    return float(np.sqrt(max(1.0 - s * s, 0.0) / n_cycles))

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
Parity oscillation of the two-ion entangled state in the decoherence-free subspace.

The L state superposes |+5/2,-5/2> and |+1/2,-1/2>; R is its mirror image. The energy difference
of the two components makes the parity P = P+ - P- oscillate at delta_E/h. Only half of the
prepared mixed state is entangled, so the fringe contrast is at most the entangled fraction.
"""
import dataclasses
import logging
from typing import Dict

import numpy as np
from scipy.optimize import curve_fit

from llitest.util.constants import HANDEDNESS
from llitest.util.errors import NumericalError, PhysicsDomainError


@dataclasses.dataclass(frozen=True)
class DFSStateSpec:
    handedness: str = 'L'
    entangled_fraction: float = 0.5
    phi_R: float = 0.0

    def __post_init__(self):
        if self.handedness not in HANDEDNESS:
            raise PhysicsDomainError('handedness must be one of {}: {}'.format(HANDEDNESS, self.handedness))
        if not 0 <= self.entangled_fraction <= 1:
            raise PhysicsDomainError('entangled fraction must lie in [0, 1]: {}'.format(self.entangled_fraction))

    @property
    def contrast(self):
        return self.entangled_fraction

    @property
    def gradient_sign(self):
        """Sign of the linear Zeeman shift from a field gradient; opposite for L and R."""
        return 1.0 if self.handedness == 'L' else -1.0


@dataclasses.dataclass(frozen=True)
class FringeModel:
    amplitude: float
    offset: float = 0.0
    frequency: float = 0.0
    phase_offset: float = 0.0
    decay_tau: float = 0.155

    def __post_init__(self):
        if not 0 <= self.amplitude <= 1:
            raise PhysicsDomainError('fringe amplitude must lie in [0, 1]: {}'.format(self.amplitude))
        if self.decay_tau <= 0:
            raise PhysicsDomainError('decay constant must be positive: {}'.format(self.decay_tau))

    def envelope(self, t):
        return self.amplitude * np.exp(-np.asarray(t, dtype=float) / self.decay_tau)


@dataclasses.dataclass(frozen=True)
class FringeFit:
    model: FringeModel
    errors: Dict[str, float]
    chi2_reduced: float


def parity_expectation(delta_e_over_h, t, phi):
    """Ideal parity of the entangled state after free evolution for t seconds."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise PhysicsDomainError('evolution time must not be negative')
    value = np.cos(2 * np.pi * delta_e_over_h * t + phi)
    return float(value) if value.ndim == 0 else value


def fringe_signal(model, t, phi_laser):
    """Decaying oscillation signal A exp(-t/tau) cos(2 pi f t + phi_offset + phi_laser) + B."""
    t = np.asarray(t, dtype=float)
    value = model.envelope(t) * parity_expectation(model.frequency, t, model.phase_offset + phi_laser) + model.offset
    return float(value) if np.ndim(value) == 0 else value


def __fringe(t, amplitude, frequency, phase, decay_tau, offset):
    return amplitude * np.exp(-t / decay_tau) * np.cos(2 * np.pi * frequency * t + phase) + offset


def fit_fringe(t, s, guess, sigma=None):
    """Fits the decaying fringe model to a measured fringe.

    Args:
        t: Ramsey durations in seconds
        s: measured signal
        guess: FringeModel with starting values
        sigma: optional 1-sigma errors of s

    Returns:
        FringeFit with the fitted model and 1-sigma parameter errors

    Raises:
        NumericalError: if the fit does not converge
    """
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    p0 = [guess.amplitude, guess.frequency, guess.phase_offset, guess.decay_tau, guess.offset]
    try:
        popt, pcov = curve_fit(__fringe, t, s, p0=p0, sigma=sigma, absolute_sigma=sigma is not None,
                               maxfev=20000)
    except (RuntimeError, ValueError) as e:
        raise NumericalError('fringe fit failed: {}'.format(e))
    perr = np.sqrt(np.diag(pcov))
    residuals = s - __fringe(t, *popt)
    weights = np.ones_like(s) if sigma is None else 1 / np.asarray(sigma, dtype=float) ** 2
    dof = max(len(t) - len(popt), 1)
    chi2_reduced = float(np.sum(weights * residuals ** 2) / dof)

    amplitude, frequency, phase, decay_tau, offset = popt
    # fold a negative amplitude into the phase
    if amplitude < 0:
        amplitude, phase = -amplitude, phase + np.pi
    phase = float(np.angle(np.exp(1j * phase)))
    model = FringeModel(amplitude=float(min(amplitude, 1.0)), offset=float(offset), frequency=float(frequency),
                        phase_offset=phase, decay_tau=float(abs(decay_tau)))
    errors = dict(zip(['amplitude', 'frequency', 'phase_offset', 'decay_tau', 'offset'], map(float, perr)))
    logging.info('fringe fit: {} errors: {}'.format(model, errors))
    return FringeFit(model=model, errors=errors, chi2_reduced=chi2_reduced)

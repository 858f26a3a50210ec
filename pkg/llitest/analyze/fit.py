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
Sidereal fit of binned frequencies and its translation into bounds on the spatial components
of the c tensor.
"""
import dataclasses
import logging
import math
from typing import Dict, List

import numpy as np
import scipy.linalg

from llitest.frames import transform
from llitest.frames.tensor import CTensorSCCEF
from llitest.sensitivity.kappa import c_to_kappa
from llitest.util.constants import C_COMBINATION_NAMES, FIT_PARAM_NAMES
from llitest.util.errors import InsufficientDataError, NumericalError


@dataclasses.dataclass(frozen=True)
class FitResult:
    """Parameters (offset, A, B, C, D) of offset + A cos wT + B sin wT + C cos 2wT + D sin 2wT."""
    params: np.ndarray
    covariance: np.ndarray
    chi2_reduced: float
    n_points: int
    scaled: bool = False

    @property
    def sigmas(self):
        return np.sqrt(np.diag(self.covariance))

    def param(self, name):
        return float(self.params[FIT_PARAM_NAMES.index(name)])

    def sigma(self, name):
        return float(self.sigmas[FIT_PARAM_NAMES.index(name)])

    def to_dict(self):
        return {
            'params': dict(zip(FIT_PARAM_NAMES, map(float, self.params))),
            'sigmas': dict(zip(FIT_PARAM_NAMES, map(float, self.sigmas))),
            'covariance': self.covariance.tolist(),
            'chi2_reduced': self.chi2_reduced,
            'n_points': self.n_points,
            'scaled': self.scaled,
        }


@dataclasses.dataclass(frozen=True)
class Combination:
    """Unit vector over (c_X-Y, c_XY, c_XZ, c_YZ) with the value and 1-sigma error of its projection."""
    coefficients: np.ndarray
    value: float
    sigma: float

    def label(self, precision=2):
        terms = ['{:+.{}f}{}'.format(k, precision, name) for k, name in zip(self.coefficients, C_COMBINATION_NAMES)]
        return ' '.join(terms)


@dataclasses.dataclass(frozen=True)
class CBounds:
    combos: List[Combination]
    c_values: np.ndarray
    c_covariance: np.ndarray

    @property
    def c_sigmas(self):
        return np.sqrt(np.diag(self.c_covariance))


def design_matrix(t, omega):
    wt = omega * np.asarray(t, dtype=float)
    return np.column_stack([np.ones_like(wt), np.cos(wt), np.sin(wt), np.cos(2 * wt), np.sin(2 * wt)])


def fit_harmonics(t, y, sigma, omega, method='qr'):
    """Weighted least squares of the sidereal model.

    Args:
        t: seconds since the epoch
        y: values in Hz
        sigma: 1-sigma errors of y, or None for unit weights
        omega: sidereal angular frequency in rad/s
        method: 'qr' (orthogonal factorization) or 'normal' (normal equations)

    Raises:
        InsufficientDataError: with fewer than 6 points
        NumericalError: if the design matrix is rank deficient
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    n_params = len(FIT_PARAM_NAMES)
    if len(t) < n_params + 1:
        raise InsufficientDataError('sidereal fit needs at least {} points, got {}'.format(n_params + 1, len(t)))
    weights = __weights(sigma, len(t))
    xw = design_matrix(t, omega) * weights[:, None]
    yw = y * weights
    if np.linalg.matrix_rank(xw) < n_params:
        raise NumericalError('sidereal design matrix is rank deficient; the points do not resolve the harmonics')

    if method == 'qr':
        q, r = scipy.linalg.qr(xw, mode='economic')
        params = scipy.linalg.solve_triangular(r, q.T @ yw)
        r_inv = scipy.linalg.solve_triangular(r, np.eye(n_params))
        covariance = r_inv @ r_inv.T
    elif method == 'normal':
        normal = xw.T @ xw
        params = scipy.linalg.solve(normal, xw.T @ yw, assume_a='pos')
        covariance = scipy.linalg.inv(normal)
    else:
        raise ValueError('unknown fit method: {}'.format(method))

    residuals = yw - xw @ params
    chi2_reduced = float(residuals @ residuals / (len(t) - n_params))
    logging.info('sidereal fit: params={} chi2_reduced={:.3f} n={}'.format(params, chi2_reduced, len(t)))
    return FitResult(params=params, covariance=(covariance + covariance.T) / 2, chi2_reduced=chi2_reduced,
                     n_points=len(t))


def __weights(sigma, n):
    if sigma is None:
        return np.ones(n)
    sigma = np.asarray(sigma, dtype=float)
    positive = sigma > 0
    if not positive.any():
        logging.warning('all point errors are zero; fitting with unit weights')
        return np.ones(n)
    if not positive.all():
        logging.warning('{} points with zero error get the smallest nonzero error'.format(int((~positive).sum())))
        sigma = np.where(positive, sigma, sigma[positive].min())
    return 1.0 / sigma


def fit_sidereal(binned, omega, method='qr'):
    """Fits the sidereal model to binned FrequencyPoints (times in seconds since the epoch)."""
    return fit_harmonics([p.t for p in binned], [p.f_bar for p in binned], [p.sigma for p in binned],
                         omega, method=method)


def scale_uncertainties(fit):
    """Scales the covariance by chi2_reduced when it exceeds 1; sigmas never decrease."""
    if fit.chi2_reduced <= 1:
        return fit
    return dataclasses.replace(fit, covariance=fit.covariance * fit.chi2_reduced, scaled=True)


def amplitude_map(pair_sens, frame):
    """Matrix mapping (c_X-Y, c_XY, c_XZ, c_YZ) to the fitted amplitudes (A, B, C, D)."""
    k_daily = pair_sens * -3 * math.sin(2 * frame.chi)
    s2 = math.sin(frame.chi) ** 2
    return np.array([
        [0.0, 0.0, k_daily, 0.0],
        [0.0, 0.0, 0.0, k_daily],
        [pair_sens * -1.5 * s2, 0.0, 0.0, 0.0],
        [0.0, pair_sens * -3 * s2, 0.0, 0.0],
    ])


def c_bounds(fit, pair_sens, frame):
    """Converts the fitted amplitudes into uncorrelated combinations of c components.

    The c-space covariance is diagonalized; each eigenvector gives a combination whose sign is
    chosen so that its largest coefficient is positive. Combinations are sorted by sigma.

    Raises:
        NumericalError: if the amplitude map or the covariance is singular
    """
    jac = amplitude_map(pair_sens, frame)
    if abs(np.linalg.det(jac)) == 0 or np.linalg.cond(jac) > 1e12:
        raise NumericalError('amplitudes do not determine the c components at colatitude {:.2f} deg'.format(
            math.degrees(frame.chi)))
    jac_inv = np.linalg.inv(jac)
    c_values = jac_inv @ fit.params[1:]
    c_cov = jac_inv @ fit.covariance[1:, 1:] @ jac_inv.T
    c_cov = (c_cov + c_cov.T) / 2
    eigvals, eigvecs = np.linalg.eigh(c_cov)
    if eigvals.min() <= 1e-12 * eigvals.max() or eigvals.max() <= 0:
        raise NumericalError('covariance of the c components is singular')

    combos = []
    for k in range(len(eigvals)):
        vec = eigvecs[:, k]
        if vec[np.argmax(np.abs(vec))] < 0:
            vec = -vec
        combos.append(Combination(coefficients=vec, value=float(vec @ c_values), sigma=float(math.sqrt(eigvals[k]))))
    return CBounds(combos=combos, c_values=c_values, c_covariance=c_cov)


def kappa_scales():
    """kappa_e- component per unit of each of (c_X-Y, c_XY, c_XZ, c_YZ), from c_to_kappa."""
    units = [
        (CTensorSCCEF(c_XX=0.5, c_YY=-0.5), 'k_XX_minus_YY'),
        (CTensorSCCEF(c_XY=1.0), 'k_XY'),
        (CTensorSCCEF(c_XZ=1.0), 'k_XZ'),
        (CTensorSCCEF(c_YZ=1.0), 'k_YZ'),
    ]
    return np.array([getattr(c_to_kappa(c), name) for c, name in units])


def bounds_as_kappa(bounds):
    """Returns each combination taken over the matching kappa_e- components, with its value and sigma."""
    scales = kappa_scales()
    k_values = scales * bounds.c_values
    k_cov = bounds.c_covariance * np.outer(scales, scales)
    return [{'coefficients': combo.coefficients, 'value': float(combo.coefficients @ k_values),
             'sigma': float(math.sqrt(combo.coefficients @ k_cov @ combo.coefficients))}
            for combo in bounds.combos]


def expected_params(c, frame, pair_sens):
    """Amplitudes (A, B, C, D) in Hz that a tensor c produces in the sidereal fit."""
    table = transform.harmonic_table(c, frame)
    daily, semi = table.row('omega'), table.row('2omega')
    return pair_sens * np.array([daily.C, daily.S, semi.C, semi.S])


def corrections_false_signal(points, omega) -> Dict[str, Dict[str, float]]:
    """Fits the sidereal model to the applied corrections alone.

    Returns:
        for each of 'zeeman', 'quadrupole' and 'total', the amplitudes A..D in Hz and the largest
        of them under 'max'
    """
    t = [p.t for p in points]
    sources = {
        'zeeman': [p.zeeman_hz for p in points],
        'quadrupole': [p.quadrupole_hz for p in points],
        'total': [p.zeeman_hz + p.quadrupole_hz for p in points],
    }
    result = {}
    for source, values in sources.items():
        fit = fit_harmonics(t, values, None, omega)
        amplitudes = dict(zip(FIT_PARAM_NAMES[1:], map(float, fit.params[1:])))
        amplitudes['max'] = max(abs(v) for v in amplitudes.values())
        result[source] = amplitudes
    return result

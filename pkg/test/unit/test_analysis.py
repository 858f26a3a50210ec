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

import math
import os
import sys
import unittest

import numpy as np
import pandas as pd

sys.path.insert(0, os.path.abspath(os.path.dirname(__file__))+os.sep+'..'+os.sep+'..')
from llitest.analyze import allan as allan_util
from llitest.analyze import fit as fit_util
from llitest.analyze.analyze import AnalysisContext, analyze_dataset, pull_study
from llitest.analyze.frequency import FrequencyPoint, apply_corrections, bin_series, correct_series
from llitest.frames.tensor import CTensorSCCEF, FrameConfig
from llitest.sensitivity import shifts
from llitest.sensitivity.kappa import c_to_kappa
from llitest.sensitivity.levels import LevelSpec
from llitest.simulate.campaign import RamseyConfig
from llitest.simulate.simulate import simulate_dataset
from llitest.simulate.truth import Calibration
from llitest.util import config_util, constants
from llitest.util.errors import InsufficientDataError, NumericalError


class AnalysisTest(unittest.TestCase):

    frame = FrameConfig()
    omega = constants.OMEGA_SIDEREAL
    pair_sens = shifts.pair_sensitivity(LevelSpec.tabulated('D5/2'))
    hourly = np.arange(23) * 3600.0 + 1800.0

    def __fit_of(self, params, sigma=0.01):
        """Fit result with the given parameters and independent errors."""
        return fit_util.FitResult(params=np.asarray(params, dtype=float), covariance=np.eye(5) * sigma ** 2,
                                  chi2_reduced=1.0, n_points=23)

    def test_fit_recovers_exact_model(self) -> None:
        """Test both solvers recover noiseless parameters"""
        truth = np.array([0.12, 0.03, -0.02, 0.01, 0.005])
        y = fit_util.design_matrix(self.hourly, self.omega) @ truth
        sigma = np.full(len(y), 0.05)
        qr_fit = fit_util.fit_harmonics(self.hourly, y, sigma, self.omega, method='qr')
        normal_fit = fit_util.fit_harmonics(self.hourly, y, sigma, self.omega, method='normal')
        np.testing.assert_allclose(qr_fit.params, truth, atol=1e-12)
        np.testing.assert_allclose(normal_fit.params, qr_fit.params, atol=1e-10)
        np.testing.assert_allclose(normal_fit.covariance, qr_fit.covariance, rtol=1e-8)
        self.assertAlmostEqual(0.0, qr_fit.chi2_reduced, delta=1e-12)
        self.assertEqual(23, qr_fit.n_points)
        self.assertAlmostEqual(0.03, qr_fit.param('A'))

    def test_fit_covariance(self) -> None:
        """Test the covariance is the inverse of the weighted normal matrix"""
        sigma = np.linspace(0.01, 0.03, len(self.hourly))
        fit = fit_util.fit_harmonics(self.hourly, np.zeros(len(sigma)), sigma, self.omega)
        x = fit_util.design_matrix(self.hourly, self.omega) / sigma[:, None]
        np.testing.assert_allclose(fit.covariance, np.linalg.inv(x.T @ x), rtol=1e-8)
        self.assertAlmostEqual(0.01 * math.sqrt(2 / 23), fit_util.fit_harmonics(
            self.hourly, np.zeros(23), np.full(23, 0.01), self.omega).sigma('A'), delta=0.002)

    def test_fit_errors(self) -> None:
        """Test too few points, degenerate times and unknown solvers"""
        self.assertRaises(InsufficientDataError, fit_util.fit_harmonics, self.hourly[:5], np.zeros(5), None,
                          self.omega)
        self.assertRaises(NumericalError, fit_util.fit_harmonics, np.full(8, 100.0), np.zeros(8), None, self.omega)
        self.assertRaises(ValueError, fit_util.fit_harmonics, self.hourly, np.zeros(23), None, self.omega,
                          'svd')

    def test_fit_zero_errors(self) -> None:
        """Test points with zero errors fall back to the smallest nonzero error"""
        sigma = np.full(23, 0.02)
        sigma[4] = 0.0
        with self.assertLogs(level='WARNING'):
            fit = fit_util.fit_harmonics(self.hourly, np.zeros(23), sigma, self.omega)
        self.assertTrue(np.all(np.isfinite(fit.sigmas)))

    def test_scale_uncertainties(self) -> None:
        """Test errors are inflated by chi2_reduced above 1 only"""
        rng = np.random.default_rng(8)
        y = rng.normal(0.0, 0.05, size=len(self.hourly))
        fit = fit_util.fit_harmonics(self.hourly, y, np.full(len(y), 0.01), self.omega)
        self.assertGreater(fit.chi2_reduced, 1.0)
        scaled = fit_util.scale_uncertainties(fit)
        self.assertTrue(scaled.scaled)
        np.testing.assert_allclose(scaled.sigmas, fit.sigmas * math.sqrt(fit.chi2_reduced))
        unscaled = fit_util.scale_uncertainties(fit_util.fit_harmonics(self.hourly, y, np.full(len(y), 1.0),
                                                                       self.omega))
        self.assertFalse(unscaled.scaled)

    def test_amplitude_map_matches_table(self) -> None:
        """Test the amplitude map against the harmonic table"""
        c = CTensorSCCEF(c_XX=2e-18, c_YY=-1e-18, c_XY=3e-18, c_XZ=-1e-18, c_YZ=4e-18)
        np.testing.assert_allclose(fit_util.amplitude_map(self.pair_sens, self.frame) @ c.anisotropic_components(),
                                   fit_util.expected_params(c, self.frame, self.pair_sens), rtol=1e-12)

    def test_c_bounds(self) -> None:
        """Test c components and uncorrelated combinations from fitted amplitudes"""
        c = CTensorSCCEF(c_XX=1e-18, c_YY=-1e-18, c_XY=-3e-18, c_XZ=5e-19, c_YZ=2e-18)
        params = np.concatenate([[0.1], fit_util.expected_params(c, self.frame, self.pair_sens)])
        fit = self.__fit_of(params, sigma=1e-4)
        bounds = fit_util.c_bounds(fit, self.pair_sens, self.frame)
        np.testing.assert_allclose(bounds.c_values, c.anisotropic_components(), rtol=1e-9)
        vectors = np.array([combo.coefficients for combo in bounds.combos])
        np.testing.assert_allclose(vectors @ vectors.T, np.eye(4), atol=1e-12)
        sigmas = [combo.sigma for combo in bounds.combos]
        self.assertListEqual(sorted(sigmas), sigmas)
        for combo in bounds.combos:
            self.assertGreater(combo.coefficients[np.argmax(np.abs(combo.coefficients))], 0)
            self.assertAlmostEqual(combo.value, combo.coefficients @ c.anisotropic_components(), delta=1e-27)
        kappa = fit_util.bounds_as_kappa(bounds)
        self.assertAlmostEqual(2 * bounds.combos[0].sigma, kappa[0]['sigma'], delta=1e-30)
        k = c_to_kappa(c)
        k_components = np.array([k.k_XX_minus_YY, k.k_XY, k.k_XZ, k.k_YZ])
        for combo, row in zip(bounds.combos, kappa):
            self.assertAlmostEqual(combo.coefficients @ k_components, row['value'], delta=1e-26)
        self.assertIn('c_XZ', bounds.combos[0].label())

    def test_c_bounds_degenerate_colatitude(self) -> None:
        """Test the daily amplitudes vanish at the equator"""
        equator = FrameConfig(chi=math.pi / 2)
        self.assertRaises(NumericalError, fit_util.c_bounds, self.__fit_of(np.zeros(5)), self.pair_sens, equator)

    def test_corrections_false_signal(self) -> None:
        """Test the fit of applied corrections alone"""
        t = np.arange(0.0, 23 * 3600.0, 60.0)
        points = [FrequencyPoint(t=ti, f_bar=0.0, sigma=0.0,
                                 corrections_applied=(8.9 + 0.01 * math.cos(self.omega * ti), 2.884))
                  for ti in t]
        result = fit_util.corrections_false_signal(points, self.omega)
        self.assertAlmostEqual(0.01, result['zeeman']['A'], delta=1e-9)
        self.assertAlmostEqual(0.0, result['quadrupole']['max'], delta=1e-9)
        self.assertAlmostEqual(0.01, result['total']['max'], delta=1e-9)

    def test_apply_corrections(self) -> None:
        """Test Zeeman and quadrupole corrections and the missing field case"""
        cal = Calibration()
        point = FrequencyPoint(t=0.0, f_bar=12.0, sigma=0.4)
        corrected = apply_corrections(point, 3.930, 210.0, cal)
        self.assertAlmostEqual(8.9, corrected.zeeman_hz)
        self.assertAlmostEqual(2.884, corrected.quadrupole_hz, delta=0.01)
        self.assertAlmostEqual(12.0 - 8.9 - corrected.quadrupole_hz, corrected.f_bar)
        self.assertIsNone(apply_corrections(point, float('nan'), 210.0, cal))

    def test_bin_series(self) -> None:
        """Test bin averages, errors and skipped bins"""
        points = [FrequencyPoint(t=60.0 * k, f_bar=float(k % 2), sigma=0.0) for k in range(60)]
        points.append(FrequencyPoint(t=3700.0, f_bar=5.0, sigma=0.0))
        binned, skipped = bin_series(points, width=3600.0, min_points=2)
        self.assertEqual(1, len(binned))
        self.assertEqual([(1, constants.REASON_TOO_FEW_POINTS)], skipped)
        self.assertAlmostEqual(0.5, binned[0].f_bar)
        self.assertAlmostEqual(1770.0, binned[0].t)
        self.assertEqual(60, binned[0].n)
        self.assertAlmostEqual(np.std([k % 2 for k in range(60)], ddof=1) / math.sqrt(60), binned[0].sigma)
        self.assertRaises(InsufficientDataError, bin_series, [])

    def test_correct_series(self) -> None:
        """Test dropped blocks and axial frequency hold between measurements"""
        config = config_util.init_config()
        config['ramsey']['projection_noise'] = False
        config['ramsey']['target_asd_hz'] = 0.0
        dataset = simulate_dataset(config, hours=0.5)
        records = dataset.records.copy()
        records.loc[7, 'b_meas_mG'] = np.nan
        cfg = RamseyConfig.from_config(config)
        series = correct_series(records, cfg, Calibration(), block_sigma=0.4)
        self.assertEqual(29, len(series.points))
        self.assertEqual([(7, constants.REASON_MISSING_B_FIELD)], series.dropped)
        self.assertEqual(series.points[1].quadrupole_hz, series.points[2].quadrupole_hz)
        t, f, sigma = series.arrays()
        np.testing.assert_array_equal(sigma, 0.4)

        records['f_axial_meas_kHz'] = np.nan
        self.assertRaises(InsufficientDataError, correct_series, records, cfg, Calibration(), 0.4)

    def test_allan_white_noise(self) -> None:
        """Test the Allan deviation of white frequency noise"""
        rng = np.random.default_rng(21)
        series = allan_util.allan(rng.normal(0.0, 1.0, size=8192), tau0=1.0)
        self.assertEqual(1.0, series.taus[0])
        self.assertEqual(2048.0, series.taus[-1])
        self.assertAlmostEqual(1.0, series.sigmas[0], delta=0.05)
        short = allan_util.AllanSeries(taus=series.taus[:8], sigmas=series.sigmas[:8])
        self.assertAlmostEqual(-0.5, allan_util.allan_slope(short), delta=0.1)
        self.assertAlmostEqual(1.0, allan_util.fit_white_noise(short), delta=0.1)
        self.assertAlmostEqual(allan_util.fit_white_noise(series) / 100.0, series.at(1e4), delta=1e-12)
        self.assertListEqual(['tau_s', 'sigma_f_hz'], list(series.to_frame().columns))
        self.assertRaises(InsufficientDataError, allan_util.allan, [1.0, 2.0, 3.0], 1.0)

    def test_qpn_allan_line(self) -> None:
        """Test the projection-noise reference line"""
        self.assertAlmostEqual(0.3632 * math.sqrt(60), allan_util.qpn_allan_line(RamseyConfig()), delta=0.02)

    def test_noiseless_campaign_recovers_injection(self) -> None:
        """Test the full analysis recovers an injected c_XZ without noise"""
        config = config_util.init_config()
        config['ramsey'].update({'projection_noise': False, 'target_asd_hz': 0.0, 'b_probe_sigma_mG': 0.0,
                                 'f_axial_probe_every': 1, 'f_axial_probe_sigma_kHz': 0.0})
        config['truth']['ac_stark_rel_drift'] = 0.0
        config['truth']['c']['c_XZ'] = 1e-18
        dataset = simulate_dataset(config)
        result = analyze_dataset(dataset, AnalysisContext.build(config, dataset.meta))
        expected = fit_util.expected_params(CTensorSCCEF(c_XZ=1e-18), self.frame, self.pair_sens)
        self.assertAlmostEqual(expected[0], result.fit.param('A'), delta=0.01 * abs(expected[0]))
        for name in ('B', 'C', 'D'):
            self.assertAlmostEqual(0.0, result.fit.param(name), delta=0.02 * abs(expected[0]))
        self.assertAlmostEqual(config['truth']['ac_stark_hz'], result.fit.param('offset'), delta=1e-3)
        self.assertAlmostEqual(1e-18, result.bounds.c_values[2], delta=2e-20)
        self.assertEqual(23, result.fit.n_points)
        self.assertEqual([], result.corrected.dropped)
        self.assertIn('combos', result.to_dict())

    def test_pull_study(self) -> None:
        """Test a noisy inject-and-recover cycle and its error scale"""
        config = config_util.init_config()
        config['truth']['c']['c_XZ'] = 1e-18
        summary = pull_study(config, [5])
        self.assertEqual((1, 4), summary.param_pulls.shape)
        self.assertTrue(np.all(np.abs(summary.param_pulls) < 4))
        self.assertTrue(np.all(np.abs(summary.c_pulls) < 4))
        sigma_a = summary.results[0].fit.sigma('A')
        self.assertGreater(sigma_a, 0.008)
        self.assertLess(sigma_a, 0.03)
        self.assertEqual(7, len(summary.rows()[0]))


class CampaignStatisticsTest(unittest.TestCase):
    """Seeded default 23 h campaigns, without and with an injected tensor."""

    n_seeds = 20

    @classmethod
    def setUpClass(cls) -> None:
        config = config_util.init_config()
        cls.zero_truth = pull_study(config, range(100, 100 + cls.n_seeds))
        injected = config_util.init_config()
        injected['truth']['c'].update({'c_XX': 1.5e-18, 'c_YY': -1.5e-18, 'c_XY': 3e-18, 'c_XZ': 1e-18,
                                       'c_YZ': 3e-18})
        cls.injected = pull_study(injected, range(200, 200 + cls.n_seeds))

    def test_allan_deviation_of_default_campaign(self) -> None:
        """Test the white-noise level and slope of the Allan deviation"""
        slopes = [allan_util.allan_slope(result.allan) for result in self.zero_truth.results]
        at_23h = [result.allan.at(82800.0) for result in self.zero_truth.results]
        self.assertAlmostEqual(-0.5, float(np.mean(slopes)), delta=0.05)
        self.assertAlmostEqual(3.3 / math.sqrt(82800.0), float(np.mean(at_23h)), delta=0.1 * 11.5e-3)
        levels = [allan_util.fit_white_noise(result.allan) for result in self.zero_truth.results]
        self.assertAlmostEqual(3.3, float(np.mean(levels)), delta=0.1 * 3.3)

    def test_zero_truth_pulls(self) -> None:
        """Test pulls of A..D and of the c components are centred with unit width"""
        for pulls in (self.zero_truth.param_pulls, self.zero_truth.c_pulls):
            # bounds scaled to the number of seeds
            np.testing.assert_array_less(np.abs(pulls.mean(axis=0)), 0.75)
            np.testing.assert_array_less(pulls.std(axis=0), 1.5)
            np.testing.assert_array_less(0.55, pulls.std(axis=0))
        c_sigmas = np.array([result.bounds.c_sigmas for result in self.zero_truth.results])
        self.assertTrue(np.all((c_sigmas > 1e-19) & (c_sigmas < 1e-17)))

    def test_injected_tensor_is_recovered(self) -> None:
        """Test injected c components are recovered within 2 sigma"""
        np.testing.assert_allclose([3e-18, 3e-18, 1e-18, 3e-18], self.injected.expected_c, rtol=1e-12)
        coverage = self.injected.coverage(self.injected.c_pulls)
        np.testing.assert_array_less(0.79, coverage)
        self.assertGreaterEqual(float(np.mean(np.abs(self.injected.c_pulls) <= 2)), 0.9)

    def test_false_signal_of_default_drifts(self) -> None:
        """Test the corrections alone fake less than 0.5 mHz (field) and 3 mHz (axial frequency)"""
        for result in self.zero_truth.results + self.injected.results:
            self.assertLess(result.false_signal['zeeman']['max'], 0.5e-3)
            self.assertLess(result.false_signal['quadrupole']['max'], 3e-3)
            self.assertLess(result.false_signal['total']['max'], 3e-3)


if __name__ == '__main__':
    unittest.main()

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
import shutil
import sys
import tempfile
import unittest

import numpy as np
import pandas as pd

sys.path.insert(0, os.path.abspath(os.path.dirname(__file__))+os.sep+'..'+os.sep+'..')
from llitest.analyze.frequency import block_frequency
from llitest.frames import transform
from llitest.sensitivity import shifts
from llitest.sensitivity.levels import LevelSpec
from llitest.simulate import campaign
from llitest.simulate.campaign import BlockRecord, RamseyConfig
from llitest.simulate.dataset import CampaignDataset
from llitest.simulate.servo import ServoState, offset_cancelled_signal, phase_correction
from llitest.simulate.simulate import simulate_dataset
from llitest.simulate.truth import Calibration, DriftModel, TruthModel, truth_frequency
from llitest.util import config_util, constants, dir_util
from llitest.util.errors import ConfigError, InputFormatError, PhysicsDomainError


def quiet_config(hours=2.0):
    """Default config without projection, excess or measurement noise."""
    config = config_util.init_config()
    config['ramsey'].update({'projection_noise': False, 'target_asd_hz': 0.0, 'b_probe_sigma_mG': 0.0,
                             'f_axial_probe_sigma_kHz': 0.0, 'campaign_hours': hours})
    return config


class SimulatorTest(unittest.TestCase):

    pair_sens = shifts.pair_sensitivity(LevelSpec.tabulated('D5/2'))

    def setUp(self) -> None:
        self.output_dir = tempfile.mkdtemp(prefix='llitest-simulate-')

    def tearDown(self) -> None:
        shutil.rmtree(self.output_dir, ignore_errors=True)

    def test_phase_correction(self) -> None:
        """Test phase corrections and clamping"""
        self.assertEqual((0.0, False), phase_correction(0.0, 0.5))
        dphi, clamped = phase_correction(-0.25, 0.5)
        self.assertAlmostEqual(math.pi / 6, dphi)
        self.assertFalse(clamped)
        dphi, clamped = phase_correction(0.7, 0.5)
        self.assertAlmostEqual(-math.pi / 2, dphi)
        self.assertTrue(clamped)
        self.assertAlmostEqual(0.1, offset_cancelled_signal(0.3, 0.1))

    def test_single_block_frequency(self) -> None:
        """Test a 1 Hz servo phase difference over the effective duration"""
        cfg = RamseyConfig()
        servo = ServoState()
        servo.apply('L_long', 2 * math.pi * cfg.effective_duration * 1.0)
        servo.apply('R_long', 2 * math.pi * cfg.effective_duration * 1.0)
        self.assertAlmostEqual(1.0, servo.frequency('L', cfg.t_short, cfg.t_long))
        self.assertAlmostEqual(math.pi / 2, servo.laser_phase('L_short'))
        copy = servo.copy()
        copy.apply('L_short', 1.0)
        self.assertEqual(0.0, servo.phases['L_short'])

    def test_ramsey_config(self) -> None:
        """Test default campaign layout and validation"""
        cfg = RamseyConfig.from_config(config_util.init_config())
        self.assertEqual(1380, cfg.n_blocks)
        self.assertAlmostEqual(0.095, cfg.effective_duration)
        self.assertEqual(60, RamseyConfig.from_config(config_util.init_config(), hours=1.0).n_blocks)
        self.assertRaises(ConfigError, RamseyConfig, t_short=0.1, t_long=0.05)
        self.assertTrue(RamseyConfig(gaps=((60.0, 180.0),)).in_gap(120.0))

    def test_noise_budget(self) -> None:
        """Test projection noise and the excess noise calibrated against the servo"""
        cfg = RamseyConfig()
        qpn = campaign.qpn_block_sigma(cfg)
        self.assertAlmostEqual(0.363, qpn, delta=0.003)
        target = 3.3 / math.sqrt(60)
        linear = math.sqrt(target ** 2 - qpn ** 2)
        self.assertAlmostEqual(0.2226, linear, delta=0.003)
        excess = campaign.calibrate_excess_noise(cfg)
        self.assertGreater(excess, 0.0)
        self.assertAlmostEqual(target, campaign.servo_block_sigma(cfg, excess), delta=0.02 * target)
        # an independent servo run delivers the target as well
        self.assertAlmostEqual(target, campaign.servo_block_sigma(cfg, excess, n_blocks=16384, seed=7),
                               delta=0.05 * target)
        # campaign length and field measurement noise do not enter the calibration
        self.assertEqual(excess, campaign.calibrate_excess_noise(RamseyConfig(campaign_duration=3600.0,
                                                                              b_probe_sigma_mG=0.2)))
        self.assertEqual(0.0, campaign.calibrate_excess_noise(RamseyConfig(target_asd_hz=0.0)))
        self.assertEqual(0.0, campaign.calibrate_excess_noise(RamseyConfig(target_asd_hz=1.0)))
        self.assertEqual(0.0, campaign.qpn_block_sigma(RamseyConfig(projection_noise=False)))

    def test_calibration_slopes(self) -> None:
        """Test Zeeman and quadrupole sensitivities at the operating point"""
        cal = Calibration()
        self.assertAlmostEqual(8.9, cal.quadratic_zeeman(3.930))
        self.assertAlmostEqual(4.53e-3, cal.zeeman_slope_hz_per_mG(3.930), delta=0.01e-3)
        self.assertAlmostEqual(0.721, cal.field_gradient(210.0), delta=0.002)
        self.assertAlmostEqual(2.884, cal.quadrupole_shift(210.0), delta=0.01)
        self.assertAlmostEqual(27.5e-3, cal.quadrupole_slope_hz_per_kHz(210.0), delta=0.1e-3)

    def test_drift_bounds(self) -> None:
        """Test drifts stay within their amplitude and are reproducible"""
        drift = DriftModel.build(3.93, 5e-4, [1.7, 2.9, 4.3], seed=1, index=0)
        values = drift(np.linspace(0, 1e6, 10001))
        self.assertTrue(np.all(np.abs(values - 3.93) <= 5e-4 + 1e-12))
        self.assertEqual(drift, DriftModel.build(3.93, 5e-4, [1.7, 2.9, 4.3], seed=1, index=0))
        self.assertNotEqual(drift.phases, DriftModel.build(3.93, 5e-4, [1.7, 2.9, 4.3], seed=1, index=1).phases)
        self.assertEqual(2.0, DriftModel.static(2.0)(123.0))

    def test_gradient_cancels_in_average(self) -> None:
        """Test the field gradient enters L and R with opposite signs"""
        truth = TruthModel.from_config(config_util.init_config())
        T = np.linspace(0, 86400, 50)
        f_l = truth_frequency(T, truth, 'L', self.pair_sens)
        f_r = truth_frequency(T, truth, 'R', self.pair_sens)
        np.testing.assert_allclose(f_l - f_r, 2 * truth.gradient_hz(T), rtol=1e-12)
        np.testing.assert_allclose((f_l + f_r) / 2, f_l - truth.gradient_hz(T), rtol=1e-12)

    def test_noiseless_servo_tracks_truth(self) -> None:
        """Test the servo holds the true frequencies without noise"""
        config = quiet_config(hours=1.0)
        config['truth']['c']['c_XZ'] = 1e-18
        cfg = RamseyConfig.from_config(config)
        truth = TruthModel.from_config(config)
        records, excess = campaign.run_campaign(cfg, truth, seed=3, pair_sens=self.pair_sens)
        self.assertEqual(0.0, excess)
        self.assertEqual(60, len(records))
        for record in records:
            f_l, f_r, f_bar = block_frequency(record, cfg)
            self.assertAlmostEqual(truth_frequency(record.t_epoch_s, truth, 'L', self.pair_sens), f_l, delta=1e-9)
            self.assertAlmostEqual(truth_frequency(record.t_epoch_s, truth, 'R', self.pair_sens), f_r, delta=1e-9)
            self.assertFalse(record.clamped)
            self.assertListEqual([0, 1, 2, 3], sorted(record.order))

    def test_signal_offset_cancels(self) -> None:
        """Test an additive signal offset leaves the phase corrections unchanged"""
        cfg = RamseyConfig(projection_noise=False, target_asd_hz=0.0, b_probe_sigma_mG=0.0)
        config = quiet_config()
        plain = TruthModel.from_config(config)
        shifted = TruthModel(**dict(vars(plain), signal_offset=DriftModel.static(0.3)))
        T = 5000.0
        state = campaign.locked_servo(T, plain, cfg, self.pair_sens)
        # move the servo off the operating point so the corrections are nonzero
        for slot in constants.SLOTS:
            state.apply(slot, 0.2)
        first = campaign.run_block(T, plain, cfg, state.copy(), 1, self.pair_sens)
        second = campaign.run_block(T, shifted, cfg, state.copy(), 1, self.pair_sens)
        for slot in constants.SLOTS:
            self.assertAlmostEqual(-0.2, first.dphi[slot], places=9)
            self.assertAlmostEqual(first.dphi[slot], second.dphi[slot], places=12)

    def test_frequency_step_response(self) -> None:
        """Test a 1 Hz frequency step is corrected within one block"""
        cfg = RamseyConfig(projection_noise=False, target_asd_hz=0.0, b_probe_sigma_mG=0.0)
        plain = TruthModel.from_config(quiet_config())
        T = 5000.0
        stepped = TruthModel(**dict(vars(plain), ac_stark_hz=DriftModel.static(plain.ac_stark_hz(T) + 1.0)))
        state = campaign.locked_servo(T, plain, cfg, self.pair_sens)
        before = [state.frequency(h, cfg.t_short, cfg.t_long) for h in constants.HANDEDNESS]
        record = campaign.run_block(T, stepped, cfg, state, 1, self.pair_sens)
        for h in constants.HANDEDNESS:
            self.assertAlmostEqual(2 * math.pi * 0.095 * 1.0, record.dphi[h + '_long'] - record.dphi[h + '_short'],
                                   places=9)
            self.assertAlmostEqual(2 * math.pi * cfg.t_long, record.dphi[h + '_long'], places=9)
        f_l, f_r, f_bar = block_frequency(record, cfg)
        self.assertAlmostEqual(before[0] + 1.0, f_l, places=9)
        self.assertAlmostEqual(before[1] + 1.0, f_r, places=9)
        self.assertFalse(record.clamped)

    def test_gradient_invariance_of_campaign(self) -> None:
        """Test the mean of L and R does not depend on the field gradient"""
        averages, left = [], []
        for gradient in (100.0, 200.0):
            config = quiet_config(hours=1.0)
            config['truth']['gradient_hz'] = gradient
            cfg = RamseyConfig.from_config(config)
            records, _ = campaign.run_campaign(cfg, TruthModel.from_config(config), seed=3, pair_sens=self.pair_sens)
            frequencies = np.array([block_frequency(record, cfg) for record in records])
            left.append(frequencies[:, 0])
            averages.append(frequencies[:, 2])
        np.testing.assert_allclose(averages[0], averages[1], rtol=0, atol=1e-9)
        np.testing.assert_allclose(left[1] - left[0], 100.0, rtol=0, atol=1e-9)

    def test_prepared_state(self) -> None:
        """Test the prepared state carries the contrast, the phase offset and the handedness"""
        cfg = RamseyConfig(contrast=0.4)
        state = cfg.state('R', phi_R=0.3)
        self.assertEqual(0.4, state.contrast)
        self.assertEqual(0.3, state.phi_R)
        self.assertEqual(-1.0, state.gradient_sign)
        self.assertRaises(PhysicsDomainError, cfg.state, 'X')
        truth = TruthModel.from_config(quiet_config())
        self.assertRaises(PhysicsDomainError, truth_frequency, 0.0, truth, 'X', self.pair_sens)

    def test_block_times_and_gaps(self) -> None:
        """Test blocks inside gaps are omitted"""
        config = quiet_config(hours=1.0)
        config['ramsey']['gaps'] = [[600.0, 1200.0]]
        cfg = RamseyConfig.from_config(config)
        times = campaign.block_times(cfg, TruthModel.from_config(config).frame)
        self.assertEqual(50, len(times))
        self.assertNotIn(10, [block for block, _, _ in times])
        block, t_utc, T = times[0]
        self.assertEqual(0, block)
        self.assertAlmostEqual(t_utc - T, 1395334620.0)

    def test_simulation_is_deterministic(self) -> None:
        """Test equal seeds give identical datasets and different seeds differ"""
        config = config_util.init_config()
        first = simulate_dataset(config, seed=42, hours=1.0)
        second = simulate_dataset(config, seed=42, hours=1.0)
        third = simulate_dataset(config, seed=43, hours=1.0)
        pd.testing.assert_frame_equal(first.records, second.records)
        self.assertDictEqual(first.meta, second.meta)
        self.assertFalse(first.records['servo_phase_L_long'].equals(third.records['servo_phase_L_long']))
        self.assertEqual('42:0', first.records['seed_trace'][0])

    def test_dataset_files(self) -> None:
        """Test dataset CSV and sidecar writing, reading and blinding"""
        config = config_util.init_config()
        config['general']['blind'] = True
        config['truth']['c']['c_XY'] = 1e-18
        dataset = simulate_dataset(config, hours=1.0)
        csv_file, meta_file = dir_util.dataset_paths(self.output_dir, 'unit')
        dataset.write(csv_file)
        self.assertTrue(os.path.isfile(meta_file))

        loaded = CampaignDataset.read(csv_file)
        self.assertEqual(len(dataset), len(loaded))
        self.assertNotIn('c', loaded.meta['truth'])
        self.assertTrue(loaded.meta['run']['blind'])
        self.assertEqual(60, loaded.meta['run']['n_blocks'])
        original, restored = dataset.blocks()[5], loaded.blocks()[5]
        self.assertIsInstance(restored, BlockRecord)
        self.assertEqual(original.servo_phase, restored.servo_phase)
        self.assertEqual(original.order, restored.order)
        self.assertEqual(original.clamp_flags, restored.clamp_flags)
        self.assertTrue(math.isnan(restored.f_axial_meas_kHz))
        self.assertFalse(math.isnan(loaded.blocks()[10].f_axial_meas_kHz))

    def test_dataset_schema_errors(self) -> None:
        """Test missing files, missing columns and non-numeric values are rejected"""
        self.assertRaises(InputFormatError, CampaignDataset.read, os.path.join(self.output_dir, 'none.csv'))
        self.assertRaises(InputFormatError, CampaignDataset.read,
                          os.path.join('test', 'data', 'truncated_dataset.csv'))
        dataset = simulate_dataset(quiet_config(hours=0.5))
        dataset.records['b_meas_mG'] = dataset.records['b_meas_mG'].astype(object)
        dataset.records.loc[3, 'b_meas_mG'] = 'broken'
        csv_file = os.path.join(self.output_dir, 'broken_dataset.csv')
        dataset.records.to_csv(csv_file, index=False)
        self.assertRaises(InputFormatError, CampaignDataset.read, csv_file)


if __name__ == '__main__':
    unittest.main()

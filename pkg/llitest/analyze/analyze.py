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
import json
import logging
import os
from typing import List, Optional

import numpy as np
import pandas as pd
import tabulate
import tqdm

from llitest.analyze import allan as allan_util
from llitest.analyze import fit as fit_util
from llitest.analyze.frequency import CorrectedSeries, bin_series, correct_series
from llitest.frames.tensor import CTensorSCCEF, FrameConfig
from llitest.sensitivity import shifts
from llitest.sensitivity.levels import LevelSpec
from llitest.simulate.campaign import RamseyConfig, qpn_block_sigma
from llitest.simulate.dataset import CampaignDataset
from llitest.simulate.simulate import simulate_dataset
from llitest.simulate.truth import Calibration
from llitest.util import config_util, dir_util
from llitest.util.constants import *
from llitest.util.errors import InputFormatError
from llitest.util.logging_util import llitest_status


@dataclasses.dataclass(frozen=True)
class AnalysisContext:
    """Settings of the analysis: those of the dataset metadata where present, else the config."""
    ramsey: RamseyConfig
    frame: FrameConfig
    calibration: Calibration
    pair_sens: float
    analysis: dict

    @classmethod
    def build(cls, config, meta=None):
        merged = {section: dict(values) for section, values in config.items() if isinstance(values, dict)}
        if meta:
            for section in ('frame', 'ramsey', 'systematics'):
                if section in meta:
                    merged[section].update(meta[section])
        try:
            ramsey = RamseyConfig.from_config(merged)
            frame = FrameConfig.from_config(merged)
            calibration = Calibration.from_config(merged)
        except KeyError as e:
            raise InputFormatError('dataset metadata is missing {}'.format(e))
        if meta and 'level' in meta and 'pair_sensitivity_hz' in meta['level']:
            pair_sens = float(meta['level']['pair_sensitivity_hz'])
        else:
            pair_sens = shifts.pair_sensitivity(LevelSpec.from_config(config))
        return cls(ramsey=ramsey, frame=frame, calibration=calibration, pair_sens=pair_sens,
                   analysis=config['analysis'])


@dataclasses.dataclass
class AnalysisResult:
    corrected: CorrectedSeries
    binned: list
    skipped_bins: list
    fit: fit_util.FitResult
    bounds: fit_util.CBounds
    allan: allan_util.AllanSeries
    false_signal: dict

    def to_dict(self):
        result = self.fit.to_dict()
        kappa = fit_util.bounds_as_kappa(self.bounds)
        result['combos'] = [{
            'coefficients': dict(zip(C_COMBINATION_NAMES, map(float, combo.coefficients))),
            'value': combo.value,
            'sigma': combo.sigma,
            'kappa_value': k['value'],
            'kappa_sigma': k['sigma'],
        } for combo, k in zip(self.bounds.combos, kappa)]
        result['c_values'] = dict(zip(C_COMBINATION_NAMES, map(float, self.bounds.c_values)))
        result['c_sigmas'] = dict(zip(C_COMBINATION_NAMES, map(float, self.bounds.c_sigmas)))
        result['false_signal'] = self.false_signal
        result['dropped'] = [{'block': block, 'reason': reason} for block, reason in self.corrected.dropped]
        result['skipped_bins'] = [{'bin': index, 'reason': reason} for index, reason in self.skipped_bins]
        return result


def analyze_dataset(dataset, context):
    """Corrections, binning, sidereal fit, c bounds, Allan deviation and false-signal check."""
    analysis = context.analysis
    corrected = correct_series(dataset.records, context.ramsey, context.calibration,
                               block_sigma=qpn_block_sigma(context.ramsey),
                               outlier_sigma=analysis['outlier_sigma'], outlier_window=analysis['outlier_window'])
    binned, skipped = bin_series(corrected.points, width=analysis['bin_width_s'],
                                 min_points=analysis['min_points_per_bin'])
    min_bins = len(FIT_PARAM_NAMES) + 1
    span = corrected.points[-1].t - corrected.points[0].t
    if len(binned) < min_bins and span > 0:
        # short campaigns: narrow the bins so the sidereal fit stays determined
        width = span / (2 * min_bins)
        logging.warning('{} bins of {:.0f} s are too few for the sidereal fit; rebinning at {:.0f} s'.format(
            len(binned), analysis['bin_width_s'], width))
        binned, skipped = bin_series(corrected.points, width=width, min_points=analysis['min_points_per_bin'])
    fit = fit_util.fit_sidereal(binned, context.frame.omega_sidereal)
    if analysis['scale_with_chi2']:
        fit = fit_util.scale_uncertainties(fit)
    bounds = fit_util.c_bounds(fit, context.pair_sens, context.frame)
    allan = allan_util.allan_of_points(corrected.points)
    false_signal = fit_util.corrections_false_signal(corrected.points, context.frame.omega_sidereal)
    return AnalysisResult(corrected=corrected, binned=binned, skipped_bins=skipped, fit=fit, bounds=bounds,
                          allan=allan, false_signal=false_signal)


def __load(config, command):
    dataset_file = config[command]['dataset']
    dataset = CampaignDataset.read(dataset_file)
    llitest_status('Loaded {} blocks from {}'.format(len(dataset), dataset_file))
    return dataset, AnalysisContext.build(config, dataset.meta)


def process_analyze_command(args, config):
    """Processes the analyze command: writes fit.json, binned.csv and allan.csv.

    Returns:
        AnalysisResult
    """
    dataset, context = __load(config, 'analyze')
    result = analyze_dataset(dataset, context)
    output_dir = dir_util.get_output_dir(config, 'analyze')

    with open(os.path.join(output_dir, FIT_RESULT_FILE), 'w') as f:
        json.dump(result.to_dict(), f, indent=2)
    pd.DataFrame({
        't_epoch_s': [p.t for p in result.binned],
        'f_bar_hz': [p.f_bar for p in result.binned],
        'sigma_hz': [p.sigma for p in result.binned],
        'n': [p.n for p in result.binned],
    }).to_csv(os.path.join(output_dir, BINNED_FILE), index=False, float_format='%.17g')
    result.allan.to_csv(os.path.join(output_dir, ALLAN_FILE))

    print(tabulate.tabulate([(name, result.fit.param(name), result.fit.sigma(name)) for name in FIT_PARAM_NAMES],
                            headers=['parameter', 'value (Hz)', 'sigma (Hz)'], floatfmt='.4g'))
    print(tabulate.tabulate([(combo.label(), combo.value, combo.sigma) for combo in result.bounds.combos],
                            headers=['combination', 'value', 'sigma'], floatfmt='.3g'))
    llitest_status('chi2_reduced={:.3f} ({}scaled); {} blocks dropped, {} bins skipped'.format(
        result.fit.chi2_reduced, '' if result.fit.scaled else 'not ', len(result.corrected.dropped),
        len(result.skipped_bins)))
    llitest_status('Analysis results written to: {}'.format(output_dir))
    return result


def process_allan_command(args, config):
    """Processes the allan command: writes allan.csv and prints the white-noise level."""
    dataset, context = __load(config, 'allan')
    analysis = context.analysis
    corrected = correct_series(dataset.records, context.ramsey, context.calibration,
                               block_sigma=qpn_block_sigma(context.ramsey),
                               outlier_sigma=analysis['outlier_sigma'], outlier_window=analysis['outlier_window'])
    series = allan_util.allan_of_points(corrected.points)
    output_dir = dir_util.get_output_dir(config, 'allan')
    allan_file = os.path.join(output_dir, ALLAN_FILE)
    series.to_csv(allan_file)
    print(tabulate.tabulate(series.to_frame().values.tolist(), headers=['tau (s)', 'sigma_f (Hz)'], floatfmt='.4g'))
    h = allan_util.fit_white_noise(series)
    llitest_status('sigma_f = {:.3g} Hz/sqrt(tau) (projection noise {:.3g} Hz/sqrt(tau)); {:.3g} Hz at {:.0f} s'.format(
        h, allan_util.qpn_allan_line(context.ramsey), h / np.sqrt(len(corrected.points) * context.ramsey.block_period),
        len(corrected.points) * context.ramsey.block_period))
    llitest_status('Allan deviation written to: {}'.format(allan_file))
    return series


@dataclasses.dataclass
class PullSummary:
    """Pulls (fitted - expected) / sigma per seed for A..D and for the c components."""
    seeds: List[int]
    expected_params: np.ndarray
    expected_c: np.ndarray
    param_pulls: np.ndarray
    c_pulls: np.ndarray
    results: list

    def coverage(self, pulls, k=2.0):
        return np.mean(np.abs(pulls) <= k, axis=0)

    def rows(self):
        rows = []
        names = list(FIT_PARAM_NAMES[1:]) + list(C_COMBINATION_NAMES)
        pulls = np.hstack([self.param_pulls, self.c_pulls])
        expected = np.concatenate([self.expected_params, self.expected_c])
        last = self.results[-1]
        fitted = np.concatenate([last.fit.params[1:], last.bounds.c_values])
        sigmas = np.concatenate([last.fit.sigmas[1:], last.bounds.c_sigmas])
        coverage = self.coverage(pulls)
        for k, name in enumerate(names):
            rows.append((name, expected[k], fitted[k], sigmas[k], float(np.mean(pulls[:, k])),
                         float(np.std(pulls[:, k])) if len(self.seeds) > 1 else float('nan'), float(coverage[k])))
        return rows


def pull_study(config, seeds, hours=None, progress=False):
    """Runs seeded simulate-and-analyze cycles and collects the pulls of the fitted parameters."""
    c = CTensorSCCEF.from_dict(config['truth']['c'])
    results, param_pulls, c_pulls = [], [], []
    context = None
    for seed in tqdm.tqdm(seeds, desc='seeds', disable=not progress):
        dataset = simulate_dataset(config, seed=seed, hours=hours)
        context = AnalysisContext.build(config, dataset.meta)
        result = analyze_dataset(dataset, context)
        expected_params = fit_util.expected_params(c, context.frame, context.pair_sens)
        expected_c = c.anisotropic_components()
        param_pulls.append((result.fit.params[1:] - expected_params) / result.fit.sigmas[1:])
        c_pulls.append((result.bounds.c_values - expected_c) / result.bounds.c_sigmas)
        results.append(result)
        logging.info('seed {}: pulls {} {}'.format(seed, param_pulls[-1], c_pulls[-1]))
    return PullSummary(seeds=list(seeds), expected_params=expected_params, expected_c=expected_c,
                       param_pulls=np.array(param_pulls), c_pulls=np.array(c_pulls), results=results)


def process_closure_command(args, config):
    """Processes the closure command: injects, simulates, analyzes and reports the pulls.

    Returns:
        PullSummary
    """
    config_util.apply_injections(config, getattr(args, 'inject', None))
    n_seeds = config['closure']['n_seeds']
    first_seed = config['general']['seed']
    summary = pull_study(config, range(first_seed, first_seed + n_seeds), hours=getattr(args, 'hours', None),
                         progress=n_seeds > 1)

    rows = summary.rows()
    keys = ['quantity', 'injected', 'recovered', 'sigma', 'pull_mean', 'pull_std', 'coverage_2sigma']
    if config['general']['blind']:
        rows = [row[:1] + row[2:] for row in rows]
        keys.remove('injected')
    print(tabulate.tabulate(rows, headers=[key.replace('_', ' ') for key in keys], floatfmt='.3g'))
    report = {
        'seeds': summary.seeds,
        'rows': [dict(zip(keys, row)) for row in rows],
    }
    output_dir = dir_util.get_output_dir(config, 'closure')
    report_file = os.path.join(output_dir, CLOSURE_REPORT_FILE)
    with open(report_file, 'w') as f:
        json.dump(report, f, indent=2, default=float)
    llitest_status('Closure report written to: {}'.format(report_file))
    return summary

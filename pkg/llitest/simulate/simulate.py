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

from llitest._version import __version__
from llitest.sensitivity import shifts
from llitest.sensitivity.levels import LevelSpec
from llitest.simulate.campaign import RamseyConfig, run_campaign
from llitest.simulate.dataset import CampaignDataset
from llitest.simulate.truth import TruthModel
from llitest.util import config_util, dir_util
from llitest.util.logging_util import llitest_status


def process_simulate_command(args, config):
    """Processes the simulate command.

    Applies --inject and --hours, runs the campaign and writes <name>_dataset.csv with its
    metadata sidecar to the output directory.

    Returns:
        path of the dataset CSV
    """
    config_util.apply_injections(config, getattr(args, 'inject', None))
    dataset = simulate_dataset(config, hours=getattr(args, 'hours', None), progress=True)
    output_dir = dir_util.get_output_dir(config, 'simulate')
    csv_file, meta_file = dir_util.dataset_paths(output_dir, config['simulate']['name'])
    dataset.write(csv_file)
    llitest_status('Simulated {} blocks; dataset written to: {}'.format(len(dataset), csv_file))
    return csv_file


def simulate_dataset(config, seed=None, hours=None, progress=False):
    """Runs a campaign for the loaded config and returns it as a CampaignDataset with metadata."""
    seed = config['general']['seed'] if seed is None else seed
    blind = config['general']['blind']
    ramsey = RamseyConfig.from_config(config, hours=hours)
    truth = TruthModel.from_config(config)
    level = LevelSpec.from_config(config)
    pair_sens = shifts.pair_sensitivity(level)
    logging.info('simulating {} blocks with seed {} (pair sensitivity {:.4g} Hz)'.format(
        ramsey.n_blocks, seed, pair_sens))

    records, excess_noise_hz = run_campaign(ramsey, truth, seed, pair_sens, progress=progress)
    meta = {
        'run': {'seed': seed, 'version': __version__, 'blind': blind, 'n_blocks': len(records),
                'excess_noise_hz': excess_noise_hz},
        'frame': truth.frame.to_config(),
        'ramsey': ramsey.to_config(),
        'level': dict(level.to_config(), pair_sensitivity_hz=pair_sens),
        'systematics': truth.calibration.to_config(),
        'truth': truth.summary(blind=blind),
    }
    return CampaignDataset.from_records(records, meta=meta)

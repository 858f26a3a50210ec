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
import functools
import logging
import math
from typing import Dict, List, Tuple

import numpy as np
import tqdm

from llitest.frames.tensor import CTensorSCCEF, FrameConfig, parse_utc
from llitest.iondynamics.parity import DFSStateSpec, FringeModel, parity_expectation
from llitest.iondynamics.projection_noise import make_rng, sample_signal
from llitest.simulate.servo import ServoState, offset_cancelled_signal, phase_correction
from llitest.simulate.truth import Calibration, DriftModel, TruthModel, truth_frequency
from llitest.util import constants
from llitest.util.constants import SLOTS, SECONDS_PER_HOUR
from llitest.util.errors import ConfigError

# servo runs that set the excess noise: blocks, seed, autocovariance lags, iterations and
# relative tolerance on the delivered noise
CALIBRATION_BLOCKS = 2048
CALIBRATION_SEED = 1120
CALIBRATION_MAX_LAG = 4
CALIBRATION_ITERATIONS = 4
CALIBRATION_TOLERANCE = 0.005


@dataclasses.dataclass(frozen=True)
class RamseyConfig:
    t_short: float = 0.005
    t_long: float = 0.100
    n_cycles_per_signal: int = 200
    block_period: float = 60.0
    campaign_duration: float = 23 * SECONDS_PER_HOUR
    start_time_utc: str = constants.CAMPAIGN_START_UTC
    gaps: Tuple[Tuple[float, float], ...] = ()
    contrast: float = 0.5
    decay_tau: float = 0.155
    projection_noise: bool = True
    target_asd_hz: float = 3.3
    b_probe_sigma_mG: float = 0.05
    f_axial_probe_every: int = 10
    f_axial_probe_sigma_kHz: float = 0.02

    def __post_init__(self):
        if not self.t_long > self.t_short > 0:
            raise ConfigError('Ramsey durations must satisfy t_long > t_short > 0: {}, {}'.format(
                self.t_short, self.t_long))
        if self.n_cycles_per_signal < 2:
            raise ConfigError('at least 2 cycles per signal are needed for the phase pair')
        if self.block_period <= 0 or self.campaign_duration <= 0:
            raise ConfigError('block period and campaign duration must be positive')
        if not 0 < self.contrast <= 1:
            raise ConfigError('contrast must lie in (0, 1]: {}'.format(self.contrast))

    @classmethod
    def from_config(cls, config, hours=None):
        ramsey = config['ramsey']
        duration_h = hours if hours else ramsey['campaign_hours']
        return cls(
            t_short=ramsey['t_short_s'], t_long=ramsey['t_long_s'],
            n_cycles_per_signal=ramsey['n_cycles_per_signal'], block_period=ramsey['block_period_s'],
            campaign_duration=duration_h * SECONDS_PER_HOUR, start_time_utc=ramsey['start_time_utc'],
            gaps=tuple((float(a), float(b)) for a, b in ramsey['gaps']),
            contrast=ramsey['contrast'], decay_tau=ramsey['decay_tau_s'],
            projection_noise=ramsey['projection_noise'], target_asd_hz=ramsey['target_asd_hz'],
            b_probe_sigma_mG=ramsey['b_probe_sigma_mG'], f_axial_probe_every=ramsey['f_axial_probe_every'],
            f_axial_probe_sigma_kHz=ramsey['f_axial_probe_sigma_kHz'],
        )

    def to_config(self):
        return {
            't_short_s': self.t_short, 't_long_s': self.t_long, 'n_cycles_per_signal': self.n_cycles_per_signal,
            'block_period_s': self.block_period, 'campaign_hours': self.campaign_duration / SECONDS_PER_HOUR,
            'start_time_utc': self.start_time_utc, 'gaps': [list(gap) for gap in self.gaps],
            'contrast': self.contrast, 'decay_tau_s': self.decay_tau, 'projection_noise': self.projection_noise,
            'target_asd_hz': self.target_asd_hz, 'b_probe_sigma_mG': self.b_probe_sigma_mG,
            'f_axial_probe_every': self.f_axial_probe_every, 'f_axial_probe_sigma_kHz': self.f_axial_probe_sigma_kHz,
        }

    @property
    def effective_duration(self):
        return self.t_long - self.t_short

    @property
    def n_blocks(self):
        return int(round(self.campaign_duration / self.block_period))

    def ramsey_time(self, slot):
        return self.t_short if slot.endswith('short') else self.t_long

    def state(self, handedness, phi_R=0.0):
        """Prepared two-ion state; the entangled fraction of the mixed state sets the fringe contrast."""
        return DFSStateSpec(handedness, entangled_fraction=self.contrast, phi_R=phi_R)

    def amplitude(self, t):
        """Fringe amplitude after t seconds of free evolution."""
        return self.contrast * math.exp(-t / self.decay_tau)

    def in_gap(self, offset_s):
        return any(start <= offset_s < end for start, end in self.gaps)


@dataclasses.dataclass
class BlockRecord:
    block: int
    t_utc_s: float
    t_epoch_s: float
    dphi: Dict[str, float]
    servo_phase: Dict[str, float]
    s_hat: Dict[str, float]
    b_meas_mG: float
    f_axial_meas_kHz: float
    clamp_flags: Tuple[bool, ...]
    order: Tuple[int, ...]
    seed_trace: str

    def to_row(self):
        row = {'block': self.block, 't_utc_s': self.t_utc_s, 't_epoch_s': self.t_epoch_s}
        for slot in SLOTS:
            row['dphi_' + slot] = self.dphi[slot]
            row['servo_phase_' + slot] = self.servo_phase[slot]
            row['s_hat_' + slot] = self.s_hat[slot]
        row['b_meas_mG'] = self.b_meas_mG
        row['f_axial_meas_kHz'] = self.f_axial_meas_kHz
        row['clamp_flags'] = ''.join('1' if flag else '0' for flag in self.clamp_flags)
        row['order'] = '-'.join(str(index) for index in self.order)
        row['seed_trace'] = self.seed_trace
        return row

    @classmethod
    def from_row(cls, row):
        return cls(
            block=int(row['block']), t_utc_s=float(row['t_utc_s']), t_epoch_s=float(row['t_epoch_s']),
            dphi={slot: float(row['dphi_' + slot]) for slot in SLOTS},
            servo_phase={slot: float(row['servo_phase_' + slot]) for slot in SLOTS},
            s_hat={slot: float(row['s_hat_' + slot]) for slot in SLOTS},
            b_meas_mG=float(row['b_meas_mG']), f_axial_meas_kHz=float(row['f_axial_meas_kHz']),
            clamp_flags=tuple(flag == '1' for flag in str(row['clamp_flags'])),
            order=tuple(int(index) for index in str(row['order']).split('-')),
            seed_trace=str(row['seed_trace']),
        )

    @property
    def clamped(self):
        return any(self.clamp_flags)


def locked_servo(T, truth, cfg, pair_sens):
    """Servo state locked to the true phases at T (lock acquisition is not simulated)."""
    phases = {}
    for slot in SLOTS:
        handedness = slot.split('_')[0]
        state = cfg.state(handedness, phi_R=truth.phi_offset_rad(T))
        f = truth_frequency(T, truth, handedness, pair_sens)
        phases[slot] = 2 * np.pi * f * cfg.ramsey_time(slot) + state.phi_R
    return ServoState.locked(phases)


def run_block(T, truth, cfg, servo_state, rng_seed, pair_sens, excess_noise_hz=0.0, block=0, t_utc_s=0.0):
    """Runs one measurement block and updates the servo state in place.

    The four slots are measured in random order. For each slot the true phase accumulated during
    the Ramsey time is probed at laser phases phi and phi + pi with half of the cycles each; the
    offset-cancelled signal gives the phase correction that is added to the servo.

    Args:
        T: block time in seconds since the epoch
        truth: TruthModel
        cfg: RamseyConfig
        servo_state: ServoState, updated in place
        rng_seed: seed or numpy Generator of this block
        pair_sens: pair sensitivity in Hz per unit C0(2)
        excess_noise_hz: standard deviation of the white frequency noise common to both states
        block: block index
        t_utc_s: block time in unix seconds, recorded only

    Returns:
        BlockRecord
    """
    rng = make_rng(rng_seed)
    order = tuple(int(index) for index in rng.permutation(len(SLOTS)))
    excess = rng.normal(0.0, excess_noise_hz) if excess_noise_hz > 0 else 0.0
    offset = truth.signal_offset(T)
    n_half = cfg.n_cycles_per_signal // 2
    fringes = {}
    for h in constants.HANDEDNESS:
        state = cfg.state(h, phi_R=truth.phi_offset_rad(T))
        fringes[h] = FringeModel(amplitude=state.contrast, offset=offset,
                                 frequency=truth_frequency(T, truth, h, pair_sens) + excess,
                                 phase_offset=state.phi_R, decay_tau=cfg.decay_tau)

    dphi, s_hat, clamp_flags = {}, {}, [False] * len(SLOTS)
    for index in order:
        slot = SLOTS[index]
        t = cfg.ramsey_time(slot)
        fringe = fringes[slot.split('_')[0]]
        amplitude = float(fringe.envelope(t))
        parity = parity_expectation(fringe.frequency, t, fringe.phase_offset + servo_state.laser_phase(slot))
        if cfg.projection_noise:
            s_phi, _ = sample_signal(parity, amplitude, n_half, rng, offset=offset)
            s_phi_pi, _ = sample_signal(-parity, amplitude, n_half, rng, offset=offset)
        else:
            s_phi = amplitude * parity + offset
            s_phi_pi = -amplitude * parity + offset
        s_hat[slot] = offset_cancelled_signal(s_phi, s_phi_pi)
        dphi[slot], clamp_flags[index] = phase_correction(s_hat[slot], amplitude)
        servo_state.apply(slot, dphi[slot])
        if clamp_flags[index]:
            logging.warning('block {}: phase correction of {} clamped'.format(block, slot))

    b_meas_mG = truth.b_field_G(T) * 1e3
    if cfg.b_probe_sigma_mG > 0:
        b_meas_mG += rng.normal(0.0, cfg.b_probe_sigma_mG)
    f_axial_meas_kHz = float('nan')
    if block % cfg.f_axial_probe_every == 0:
        f_axial_meas_kHz = truth.f_axial_kHz(T)
        if cfg.f_axial_probe_sigma_kHz > 0:
            f_axial_meas_kHz += rng.normal(0.0, cfg.f_axial_probe_sigma_kHz)

    return BlockRecord(block=block, t_utc_s=t_utc_s, t_epoch_s=T, dphi=dphi,
                       servo_phase=dict(servo_state.phases), s_hat=s_hat, b_meas_mG=b_meas_mG,
                       f_axial_meas_kHz=f_axial_meas_kHz, clamp_flags=tuple(clamp_flags), order=order,
                       seed_trace=_seed_trace(rng_seed))


def _seed_trace(rng_seed):
    if isinstance(rng_seed, (list, tuple)):
        return ':'.join(str(part) for part in rng_seed)
    if isinstance(rng_seed, np.random.Generator):
        return ''
    return str(rng_seed)


def qpn_block_sigma(cfg):
    """Projection-noise standard deviation in Hz of the L/R averaged frequency of one block."""
    if not cfg.projection_noise:
        return 0.0
    sigma_s = 1 / math.sqrt(2 * (cfg.n_cycles_per_signal // 2))
    sigma_short = sigma_s / cfg.amplitude(cfg.t_short)
    sigma_long = sigma_s / cfg.amplitude(cfg.t_long)
    sigma_f = math.hypot(sigma_short, sigma_long) / (2 * math.pi * cfg.effective_duration)
    return sigma_f / math.sqrt(2)


def calibrate_excess_noise(cfg):
    """Standard deviation in Hz of the per-block white frequency noise that, together with projection
    noise, gives an Allan deviation of target_asd_hz / sqrt(tau) for the averaged frequency.

    The level is set against the servo itself: starting from the linear budget, the excess noise is
    adjusted until a seeded servo run at constant frequency delivers the target level. Phase
    corrections beyond the linear range of the fringe and clamped corrections make the delivered
    noise larger than the linear budget predicts.
    """
    if cfg.target_asd_hz <= 0:
        return 0.0
    # only block timing and readout enter the calibration
    timing = dataclasses.replace(cfg, campaign_duration=cfg.block_period, start_time_utc=constants.CAMPAIGN_START_UTC,
                                 gaps=(), b_probe_sigma_mG=0.0, f_axial_probe_every=1, f_axial_probe_sigma_kHz=0.0)
    return __calibrated_excess(timing)


@functools.lru_cache(maxsize=32)
def __calibrated_excess(cfg):
    target = cfg.target_asd_hz / math.sqrt(cfg.block_period)
    qpn = qpn_block_sigma(cfg)
    if target <= qpn:
        logging.warning('target noise {:.4g} Hz per block is below projection noise {:.4g} Hz; '
                        'no excess noise added'.format(target, qpn))
        return 0.0
    excess = math.sqrt(target ** 2 - qpn ** 2)
    for iteration in range(CALIBRATION_ITERATIONS):
        delivered = servo_block_sigma(cfg, excess)
        logging.debug('calibration {}: excess {:.4g} Hz delivers {:.4g} Hz'.format(iteration, excess, delivered))
        if abs(delivered - target) <= CALIBRATION_TOLERANCE * target:
            break
        excess = math.sqrt(max(excess ** 2 + target ** 2 - delivered ** 2, 0.0))
    if excess == 0.0:
        logging.warning('servo noise alone exceeds the target noise {:.4g} Hz per block'.format(target))
    logging.info('projection noise {:.4g} Hz, excess noise {:.4g} Hz per block'.format(qpn, excess))
    return excess


def servo_block_sigma(cfg, excess_noise_hz, n_blocks=CALIBRATION_BLOCKS, seed=CALIBRATION_SEED):
    """White-noise level in Hz of the L/R averaged block frequency held by the servo.

    The servo runs at constant true frequency. The level is the long-run standard deviation of the
    block frequencies (variance plus twice the autocovariances of the first lags), so a clamped
    correction and its catch-up in the next block count as they do at long averaging times.
    """
    truth = __still_truth()
    servo_state = locked_servo(0.0, truth, cfg, 0.0)
    f_bar = np.empty(n_blocks)
    for block in range(n_blocks):
        run_block(0.0, truth, cfg, servo_state, [seed, block], 0.0, excess_noise_hz=excess_noise_hz, block=block)
        f_bar[block] = np.mean([servo_state.frequency(h, cfg.t_short, cfg.t_long) for h in constants.HANDEDNESS])
    deviation = f_bar - f_bar.mean()
    variance = float(np.mean(deviation ** 2))
    for lag in range(1, CALIBRATION_MAX_LAG + 1):
        variance += 2 * float(np.mean(deviation[lag:] * deviation[:-lag]))
    return math.sqrt(max(variance, 0.0))


def __still_truth():
    still = DriftModel.static
    cal = Calibration()
    return TruthModel(c=CTensorSCCEF(), frame=FrameConfig(), calibration=cal,
                      b_field_G=still(cal.b_ref_G), gradient_hz=still(0.0), f_axial_kHz=still(210.0),
                      ac_stark_hz=still(0.0), phi_offset_rad=still(0.0), signal_offset=still(0.0))


def block_times(cfg, frame):
    """Returns (block index, unix time, seconds since epoch) of every block outside the gaps."""
    start = parse_utc(cfg.start_time_utc)
    epoch = frame.epoch_unix_s()
    times = []
    for block in range(cfg.n_blocks):
        offset = block * cfg.block_period
        if cfg.in_gap(offset):
            continue
        times.append((block, start + offset, start + offset - epoch))
    return times


def run_campaign(cfg, truth, seed, pair_sens, progress=False):
    """Runs all blocks of a campaign.

    Block k draws its random numbers from a generator seeded with (seed, k), so a campaign is a
    pure function of its inputs.

    Returns:
        (records, excess_noise_hz): list of BlockRecord and the excess noise used
    """
    excess_noise_hz = calibrate_excess_noise(cfg)
    times = block_times(cfg, truth.frame)
    if not times:
        logging.warning('all blocks fall into gaps')
        return [], excess_noise_hz
    servo_state = locked_servo(times[0][2], truth, cfg, pair_sens)
    records: List[BlockRecord] = []
    for block, t_utc, T in tqdm.tqdm(times, desc='blocks', disable=not progress):
        records.append(run_block(T, truth, cfg, servo_state, [seed, block], pair_sens,
                                 excess_noise_hz=excess_noise_hz, block=block, t_utc_s=t_utc))
    n_clamped = sum(record.clamped for record in records)
    logging.info('campaign: {} blocks, {} with clamped phase corrections'.format(len(records), n_clamped))
    return records, excess_noise_hz

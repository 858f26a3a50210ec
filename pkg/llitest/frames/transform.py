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
import math

import numpy as np

from llitest.frames.tensor import HarmonicRow, HarmonicTable

# harmonic labels as multiples (n_annual, n_sidereal) of (Omega, omega)
HARMONICS = (
    ('omega', 0, 1),
    ('2omega', 0, 2),
    ('Omega', 1, 0),
    ('2Omega', 2, 0),
    ('Omega-omega', 1, -1),
    ('Omega+omega', 1, 1),
    ('2Omega-omega', 2, -1),
    ('2Omega+omega', 2, 1),
    ('Omega-2omega', 1, -2),
    ('Omega+2omega', 1, 2),
    ('2Omega-2omega', 2, -2),
    ('2Omega+2omega', 2, 2),
)


def rotation_to_lab(T, cfg):
    """Rotation from SCCEF spatial axes to laboratory axes (x East, y North, z up).

    Args:
        T: seconds since the epoch, scalar or array
        cfg: FrameConfig

    Returns:
        3x3 matrix, or an array of shape (n, 3, 3) for array input
    """
    T = np.asarray(T, dtype=float)
    wt = cfg.omega_sidereal * T
    cw, sw = np.cos(wt), np.sin(wt)
    cx, sx = math.cos(cfg.chi), math.sin(cfg.chi)
    zero = np.zeros_like(wt)
    # third row is the orthonormal completion of the first two
    rot = np.array([
        [-sw, cw, zero],
        [-cx * cw, -cx * sw, zero + sx],
        [sx * cw, sx * sw, zero + cx],
    ])
    return np.moveaxis(rot, [0, 1], [-2, -1])


def boost_vector(T, cfg):
    """Velocity of the laboratory in the SCCEF, in units of c.

    The orbital term runs at the annual frequency with the ecliptic tilt; the rotational term runs
    at the sidereal frequency with the laboratory speed (FrameConfig.lab_speed).

    Returns:
        3-vector, or an array of shape (n, 3) for array input
    """
    T = np.asarray(T, dtype=float)
    big_wt = cfg.omega_annual * T
    wt = cfg.omega_sidereal * T
    bo, br = cfg.beta_orbital, cfg.lab_speed
    beta = np.array([
        bo * np.sin(big_wt) - br * np.sin(wt),
        -bo * math.cos(cfg.eta) * np.cos(big_wt) + br * np.cos(wt),
        -bo * math.sin(cfg.eta) * np.cos(big_wt),
    ])
    return np.moveaxis(beta, 0, -1)


def lorentz_map(T, cfg):
    """Returns the rotation part and the first-order boost part of the SCCEF-to-lab map.

    Both are arrays of shape (..., 4, 4) indexed [SCCEF index, lab index] with index 0 for time.
    """
    rot = rotation_to_lab(T, cfg)
    beta = boost_vector(T, cfg)
    shape = rot.shape[:-2]
    l0 = np.zeros(shape + (4, 4))
    l0[..., 0, 0] = 1.0
    l0[..., 1:, 1:] = np.swapaxes(rot, -1, -2)
    l1 = np.zeros(shape + (4, 4))
    l1[..., 0, 1:] = np.einsum('...jk,...k->...j', rot, beta)
    l1[..., 1:, 0] = beta
    return l0, l1


def lab_tensor(c, T, cfg):
    """Transforms c into the laboratory frame, dropping terms of second order in the boost."""
    l0, l1 = lorentz_map(T, cfg)
    cm = c.to_matrix()
    rotated = np.einsum('...Ma,MN,...Nb->...ab', l0, cm, l0)
    boosted = np.einsum('...Ma,MN,...Nb->...ab', l1, cm, l0)
    return rotated + boosted + np.swapaxes(boosted, -1, -2)


def c02_at(c, T, cfg):
    """Laboratory observable C0(2) = c_jj - 3 c_zz at time T (seconds since epoch, scalar or array)."""
    lab = lab_tensor(c, T, cfg)
    c02 = np.trace(lab[..., 1:, 1:], axis1=-2, axis2=-1) - 3 * lab[..., 3, 3]
    return float(c02) if np.ndim(c02) == 0 else c02


def harmonic_table(c, cfg):
    """Closed-form amplitudes of C0(2)(T) at the sidereal and annual harmonics.

    Terms of the boost beyond first order are absent; rows at twice the annual frequency are
    identically zero in this order.
    """
    chi, eta = cfg.chi, cfg.eta
    s2 = math.sin(chi) ** 2
    sin2chi = math.sin(2 * chi)
    bo, br = cfg.beta_orbital, cfg.lab_speed
    ann = 3 * math.cos(2 * chi) + 1

    amplitudes = {
        'omega': (-3 * sin2chi * c.c_XZ + 2 * c.c_TY * br,
                  -3 * sin2chi * c.c_YZ - 2 * c.c_TX * br),
        '2omega': (-1.5 * s2 * (c.c_XX - c.c_YY),
                   -3 * s2 * c.c_XY),
        'Omega': (-0.5 * bo * ann * (c.c_TY * math.cos(eta) - 2 * c.c_TZ * math.sin(eta)),
                  0.5 * bo * ann * c.c_TX),
        'Omega-omega': (1.5 * bo * sin2chi * math.sin(eta) * c.c_TX,
                        -1.5 * bo * sin2chi * (c.c_TY * math.sin(eta) + c.c_TZ * (1 + math.cos(eta)))),
        'Omega+omega': (1.5 * bo * sin2chi * math.sin(eta) * c.c_TX,
                        -1.5 * bo * sin2chi * (c.c_TZ * (1 - math.cos(eta)) - c.c_TY * math.sin(eta))),
        'Omega-2omega': (-3 * bo * math.cos(eta / 2) ** 2 * s2 * c.c_TY,
                         -3 * bo * math.cos(eta / 2) ** 2 * s2 * c.c_TX),
        'Omega+2omega': (3 * bo * math.sin(eta / 2) ** 2 * s2 * c.c_TY,
                         -3 * bo * math.sin(eta / 2) ** 2 * s2 * c.c_TX),
    }
    offset = (c.c_XX + c.c_YY + c.c_ZZ) - 1.5 * s2 * (c.c_XX + c.c_YY) - 3 * math.cos(chi) ** 2 * c.c_ZZ

    rows = []
    for label, n_annual, n_sidereal in HARMONICS:
        omega = n_annual * cfg.omega_annual + n_sidereal * cfg.omega_sidereal
        C, S = amplitudes.get(label, (0.0, 0.0))
        rows.append(HarmonicRow(label=label, omega=omega, C=C, S=S))
    logging.debug('harmonic table offset={} rows={}'.format(offset, rows))
    return HarmonicTable(offset=offset, rows=rows)


def harmonic_reconstruct(table, T):
    """Evaluates a harmonic table at T (seconds since epoch, scalar or array)."""
    T = np.asarray(T, dtype=float)
    value = np.full_like(T, table.offset)
    for row in table.rows:
        value = value + row.C * np.cos(row.omega * T) + row.S * np.sin(row.omega * T)
    return float(value) if np.ndim(value) == 0 else value

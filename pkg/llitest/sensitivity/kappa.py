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
Mapping between the photon-sector anisotropy matrix kappa_e- and the electron tensor c, which
are related by a choice of coordinates: the traceless spatial part of c is half of kappa_e-.
"""
import dataclasses

import numpy as np

from llitest.frames.tensor import CTensorSCCEF


@dataclasses.dataclass(frozen=True)
class KappaEMinus:
    k_XX_minus_YY: float = 0.0
    k_XY: float = 0.0
    k_XZ: float = 0.0
    k_YZ: float = 0.0
    k_ZZ: float = 0.0

    @property
    def k_XX(self):
        return (self.k_XX_minus_YY - self.k_ZZ) / 2

    @property
    def k_YY(self):
        return (-self.k_XX_minus_YY - self.k_ZZ) / 2

    def to_matrix(self):
        return np.array([
            [self.k_XX, self.k_XY, self.k_XZ],
            [self.k_XY, self.k_YY, self.k_YZ],
            [self.k_XZ, self.k_YZ, self.k_ZZ],
        ])


def kappa_to_c(k):
    """Returns the traceless spatial c tensor equivalent to kappa_e-; other components are 0."""
    return CTensorSCCEF(c_XX=k.k_XX / 2, c_YY=k.k_YY / 2, c_ZZ=k.k_ZZ / 2,
                        c_XY=k.k_XY / 2, c_XZ=k.k_XZ / 2, c_YZ=k.k_YZ / 2)


def c_to_kappa(c):
    """Returns kappa_e- from the traceless part of the spatial block of c."""
    trace = c.c_XX + c.c_YY + c.c_ZZ
    return KappaEMinus(k_XX_minus_YY=2 * (c.c_XX - c.c_YY), k_XY=2 * c.c_XY, k_XZ=2 * c.c_XZ,
                       k_YZ=2 * c.c_YZ, k_ZZ=2 * (c.c_ZZ - trace / 3))

# **************************************************************************
# *
# * pyspinctl: microwave-only control of an electron-nuclear spin pair
# *
# * This program is free software: you can redistribute it and/or modify
# * it under the terms of the GNU General Public License as published by
# * the Free Software Foundation, either version 3 of the License, or
# * (at your option) any later version.
# *
# * This program is distributed in the hope that it will be useful,
# * but WITHOUT ANY WARRANTY; without even the implied warranty of
# * MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# * GNU General Public License for more details.
# *
# * You should have received a copy of the GNU General Public License
# * along with this program.  If not, see <https://www.gnu.org/licenses/>.
# *
# **************************************************************************
"""
System configuration files of the eseem and scan commands. They are INI
files with the sections [system], [tensor], [scan] and [eseem]; list
values are written in JSON.

    [system]
    omega_I_MHz = -14.728
    A_MHz = -29.271
    B_MHz = 3.655
    offset = auto:2324

    [tensor]
    principal_MHz = [-29, -91, -61]
    euler_deg = [0, 0, 0]
    field_dir = [1, 0, 0]

When [system] has no A_MHz and B_MHz they are computed from the tensor
and its field_dir.
"""

import json
import logging
import os
from configparser import RawConfigParser, Error as ConfigParserError

import numpy as np

from pyspinctl.constants import (OFFSET_AUTO_2324, OFFSET_MODES, STATE_BA,
                                 PROTON_GAMMA_MHZ_T, FINITE_W1_MHZ,
                                 FINITE_PI2_LEN_NS, ESEEM_PULSES_FINITE)
from pyspinctl.exceptions import ConfigException, SpinctlException
from pyspinctl.spin.model import (SpinParams, HyperfineTensor,
                                  hyperfineFromOrientation)

logger = logging.getLogger(__name__)

SECTION_SYSTEM = 'system'
SECTION_TENSOR = 'tensor'
SECTION_SCAN = 'scan'
SECTION_ESEEM = 'eseem'

DEFAULT_STEP_DEG = 10.0


class SystemConfig:
    """ Values read from a system configuration file. """
    def __init__(self, path):
        self.path = path
        self.params = None
        self.tensor = None
        self.fieldDir = None
        self.gamma = PROTON_GAMMA_MHZ_T
        self.fieldsMT = []
        self.stepDeg = DEFAULT_STEP_DEG
        self.directions = None
        self.pulses = ESEEM_PULSES_FINITE
        self.w1MHz = FINITE_W1_MHZ
        self.pi2LenNs = FINITE_PI2_LEN_NS

    @classmethod
    def load(cls, path):
        """ Read the file, raising ConfigException on any problem. """
        cp = RawConfigParser(comment_prefixes=('#', ';'))
        cp.optionxform = str  # keep key case, e.g. A_MHz
        try:
            if not os.path.isfile(path) or not cp.read(path):
                raise ConfigException("Missing configuration file %s" % path)
        except ConfigParserError as e:
            raise ConfigException("Cannot read %s: %s" % (path, e))

        conf = cls(path)
        reader = _SectionReader(cp, path)
        try:
            if cp.has_section(SECTION_TENSOR):
                conf._loadTensor(reader)
            if cp.has_section(SECTION_SYSTEM):
                conf._loadSystem(reader)
            if cp.has_section(SECTION_SCAN):
                conf._loadScan(reader)
            if cp.has_section(SECTION_ESEEM):
                conf._loadEseem(reader)
        except ConfigException:
            raise
        except (SpinctlException, ValueError, TypeError) as e:
            raise ConfigException("%s: %s" % (path, e))
        return conf

    def _loadTensor(self, r):
        s = SECTION_TENSOR
        self.tensor = HyperfineTensor.fromDegrees(
            r.getList(s, 'principal_MHz', length=3),
            r.getList(s, 'euler_deg', length=3, default=[0, 0, 0]))
        fieldDir = r.getList(s, 'field_dir', length=3, default=None)
        if fieldDir is not None:
            self.fieldDir = _normalized(fieldDir, r, s, 'field_dir')

    def _loadSystem(self, r):
        s = SECTION_SYSTEM
        omegaI = r.getFloat(s, 'omega_I_MHz')
        A = r.getFloat(s, 'A_MHz', default=None)
        B = r.getFloat(s, 'B_MHz', default=None)
        if A is None or B is None:
            if self.tensor is None or self.fieldDir is None:
                raise ConfigException("%s: [system] needs A_MHz and B_MHz, "
                                      "or a [tensor] with field_dir"
                                      % self.path)
            A, B = hyperfineFromOrientation(self.tensor, self.fieldDir)
            logger.info("A = %g MHz, B = %g MHz from the tensor", A, B)
        offset = r.get(s, 'offset', OFFSET_AUTO_2324)
        if offset not in OFFSET_MODES:
            offset = r.getFloat(s, 'offset')
        self.params = SpinParams.fromMHz(omegaI, A, B, offset=offset,
                                         initial=r.get(s, 'initial', STATE_BA))

    def _loadScan(self, r):
        s = SECTION_SCAN
        self.gamma = r.getFloat(s, 'gamma_MHz_per_T', PROTON_GAMMA_MHZ_T)
        self.fieldsMT = [float(b) for b in r.getList(s, 'B0_mT')]
        self.stepDeg = r.getFloat(s, 'step_deg', DEFAULT_STEP_DEG)
        directions = r.getList(s, 'directions', default=None)
        if directions is not None:
            self.directions = [_normalized(d, r, s, 'directions')
                               for d in directions]

    def _loadEseem(self, r):
        s = SECTION_ESEEM
        self.pulses = r.get(s, 'pulses', ESEEM_PULSES_FINITE)
        self.w1MHz = r.getFloat(s, 'w1_MHz', FINITE_W1_MHZ)
        self.pi2LenNs = r.getFloat(s, 'pi2_len_ns', FINITE_PI2_LEN_NS)

    def requireParams(self):
        if self.params is None:
            raise ConfigException("%s has no [system] section" % self.path)
        return self.params

    def requireTensor(self):
        if self.tensor is None:
            raise ConfigException("%s has no [tensor] section" % self.path)
        return self.tensor


_MISSING = object()


def _normalized(values, reader, section, key):
    """ Directions are given in any length, stored as unit vectors. """
    v = np.asarray(values, dtype=float)
    norm = float(np.linalg.norm(v)) if v.shape == (3,) else 0.0
    if not np.isfinite(norm) or norm == 0:
        reader._fail(section, key, '%s is not a non zero 3D vector'
                     % (values,))
    return v / norm


class _SectionReader:
    """ Typed getters over a parsed file, errors name file, section and
    key. """
    def __init__(self, cp, path):
        self.cp = cp
        self.path = path

    def _fail(self, section, key, message):
        raise ConfigException("%s [%s] %s: %s" % (self.path, section, key,
                                                  message))

    def get(self, section, key, default=_MISSING):
        if self.cp.has_option(section, key):
            return self.cp.get(section, key).strip()
        if default is _MISSING:
            self._fail(section, key, 'missing value')
        return default

    def getFloat(self, section, key, default=_MISSING):
        value = self.get(section, key, default)
        if value is None or isinstance(value, float):
            return value
        try:
            return float(value)
        except (TypeError, ValueError):
            self._fail(section, key, "'%s' is not a number" % value)

    def getList(self, section, key, length=None, default=_MISSING):
        value = self.get(section, key, default)
        if not isinstance(value, str):
            return value
        try:
            items = json.loads(value)
        except ValueError:
            self._fail(section, key, "'%s' is not a JSON list" % value)
        if not isinstance(items, list) or (length and len(items) != length):
            self._fail(section, key, 'expected a list of %s values'
                       % (length or 'several'))
        return items

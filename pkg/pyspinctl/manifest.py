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
Run manifest written next to every command output. It holds no time
stamps, so rerunning a command with the same inputs rewrites the same
bytes.
"""

import json

from pyspinctl.constants import LAST_VERSION
from pyspinctl.utils import writeText


class RunManifest:
    """ Command, inputs, resolved parameters, flags and outputs. """
    def __init__(self, command, inputs=(), version=LAST_VERSION):
        self.command = command
        self.inputs = list(inputs)
        self.version = version
        self.params = {}
        self.flags = {}
        self.outputs = []
        self.extra = {}

    def setParams(self, **params):
        self.params.update(params)

    def setFlags(self, **flags):
        self.flags.update(flags)

    def addOutput(self, path):
        self.outputs.append(path)
        return path

    def toDict(self):
        d = {'command': self.command,
             'inputs': self.inputs,
             'version': self.version,
             'parameters': self.params,
             'flags': self.flags,
             'outputs': self.outputs}
        d.update(self.extra)
        return d

    def toJson(self):
        return json.dumps(self.toDict(), indent=2, sort_keys=True,
                          default=_jsonDefault) + '\n'

    def write(self, path):
        writeText(path, self.toJson())
        return path

    @classmethod
    def read(cls, path):
        with open(path) as f:
            return json.load(f)


def _jsonDefault(value):
    """ numpy scalars and arrays. """
    if hasattr(value, 'tolist'):
        return value.tolist()
    raise TypeError('%r is not JSON serializable' % (value,))

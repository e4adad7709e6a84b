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

import os
import sys
from enum import Enum

import numpy as np


def prettyDict(d):
    print("{")
    for k, v in d.items():
        print("    %s: %s" % (k, v))
    print("}")


def envVarOn(varName, env=None):
    """ Is variable set to True in the environment? """
    v = env.get(varName) if env else os.environ.get(varName)
    return v is not None and v.lower() in ['true', 'yes', 'on', '1']


# ------------- Colored message strings -----------------------------

class StrColors(Enum):
    gray = 30
    red = 31
    green = 32
    yellow = 33
    cyan = 36


def getColorStr(text, color, bold=False, stream=None):
    """ Add ANSI color codes to the string if the stream is a terminal.
    Params:
     text: text to be colored
     color: one of StrColors
     bold: bold the text
     stream: stream the text will be written to, stdout by default
    """
    stream = stream or sys.stdout
    if not getattr(stream, 'isatty', lambda: False)():
        return text

    attr = [str(color.value)]

    if bold:
        attr.append('1')
    return '\x1b[%sm%s\x1b[0m' % (';'.join(attr), text)


def redStr(text, stream=None):
    return getColorStr(text, color=StrColors.red, stream=stream)


def greenStr(text, stream=None):
    return getColorStr(text, color=StrColors.green, stream=stream)


def yellowStr(text, stream=None):
    return getColorStr(text, color=StrColors.yellow, stream=stream)


def cyanStr(text, stream=None):
    return getColorStr(text, color=StrColors.cyan, stream=stream)


# ------------- Numbers -----------------------------

def isPower2(num):
    """ Return True if 'num' is a power of 2. """
    return num > 0 and ((num & (num - 1)) == 0)


def nextPower2(num):
    """ Smallest power of two greater or equal than num. """
    p = 1
    while p < num:
        p <<= 1
    return p


def formatNumber(value):
    """ Shortest decimal text that reads back to the same float,
    never in exponent form. """
    text = np.format_float_positional(float(value), trim='-')
    return '0' if text in ('-0', '0') else text

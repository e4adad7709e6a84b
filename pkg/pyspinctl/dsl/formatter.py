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
Canonical text of (SpinParams, Sequence). The output is byte
deterministic and parses back to equal values.
"""

from pyspinctl.constants import (OFFSET_AUTO_2324, STATE_BA, UNIT_NS,
                                 UNIT_MHZ, UNIT_DEG)
from pyspinctl.exceptions import ValidationException
from pyspinctl.sequence.events import PulseSpec, Delay, Dephase, Sample
from pyspinctl.utils import formatNumber

INDENT = '  '


def formatAngle(angleDeg):
    if angleDeg == 180.0:
        return 'pi'
    if angleDeg == 90.0:
        return 'pi/2'
    return '%s %s' % (formatNumber(angleDeg), UNIT_DEG)


def _systemValues(params):
    """ Values as given in MHz, or the resolved ones for parameters built
    directly in rad/ns. """
    source = params.getSource()
    if source is None:
        resolved = params.toMHz()
        source = {'omega_I_MHz': resolved['omega_I_MHz'],
                  'A_MHz': resolved['A_MHz'],
                  'B_MHz': -resolved['B_MHz'] if params.bSignFlipped()
                  else resolved['B_MHz'],
                  'offset': resolved['OmegaS_MHz']}
    offset = source.get('offset', OFFSET_AUTO_2324)
    if not isinstance(offset, str):
        offset = formatNumber(offset)
    return [('omega_I_MHz', formatNumber(source['omega_I_MHz'])),
            ('A_MHz', formatNumber(source['A_MHz'])),
            ('B_MHz', formatNumber(source['B_MHz'])),
            ('offset', offset),
            ('initial', params.getInitial() or STATE_BA)]


def _formatEvent(event):
    if isinstance(event, PulseSpec):
        text = 'pulse %s on %s' % (formatAngle(event.angleDeg), event.target)
        if event.isFinite():
            text += ' finite(w1=%s %s, len=%s %s)' % (
                formatNumber(event.w1MHz), UNIT_MHZ,
                formatNumber(event.lengthNs), UNIT_NS)
        return text + ';'
    if isinstance(event, Delay):
        text = 'delay %s %s' % (formatNumber(event.duration), UNIT_NS)
        if event.sampleEvery is not None:
            text += ' sample every %s %s' % (formatNumber(event.sampleEvery),
                                             UNIT_NS)
        return text + ';'
    if isinstance(event, Dephase):
        return 'dephase;'
    if isinstance(event, Sample):
        return 'sample %s;' % event.label
    raise ValidationException('Cannot format event %r' % (event,))


def formatSource(params, sequence):
    """ Canonical text, LF line endings and a final newline. """
    lines = ['system {']
    lines += ['%s%s = %s;' % (INDENT, k, v) for k, v in _systemValues(params)]
    lines += ['}', 'sequence {']
    lines += [INDENT + _formatEvent(e) for e in sequence.events]
    grid = sequence.sampling
    if grid is not None:
        lines.append('%sgrid from %s %s step %s %s count %d;' % (
            INDENT, formatNumber(grid.start), UNIT_NS,
            formatNumber(grid.step), UNIT_NS, grid.count))
    lines.append('}')
    return '\n'.join(lines) + '\n'

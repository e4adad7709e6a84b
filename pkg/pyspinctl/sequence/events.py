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
Event values making up a pulse sequence, the optional sampling grid,
and the Trace recorded while running them.

Events are immutable plain values compared by content, so a sequence
read back from its canonical text compares equal to the original.
"""

import math

from pyspinctl.constants import (PULSE_IDEAL_SELECTIVE,
                                 PULSE_IDEAL_SEMISELECTIVE, PULSE_FINITE,
                                 TRANSITIONS, DOUBLETS, MHZ_TO_RAD_NS,
                                 OBSERVABLES)
from pyspinctl.exceptions import ValidationException


class Event:
    """ Base class of the sequence events. """
    _fields = ()

    def getDuration(self):
        """ Simulated time (ns) taken by the event. """
        return 0.0

    def validate(self):
        """ Return a list with errors, empty if the event is fine. """
        return []

    def _values(self):
        return tuple(getattr(self, f) for f in self._fields)

    def __eq__(self, other):
        return type(self) is type(other) and self._values() == other._values()

    def __hash__(self):
        return hash((type(self).__name__,) + self._values())

    def __repr__(self):
        return '%s(%s)' % (type(self).__name__, ', '.join(
            '%s=%r' % (f, v) for f, v in zip(self._fields, self._values())))


class PulseSpec(Event):
    """ Microwave or rf pulse.

    The angle is kept in degrees as given (pi is 180) so canonical text
    is exact; getAngle() returns radians. Phase 0 rotates about y.
    Finite pulses carry their field strength in MHz and length in ns.
    """
    _fields = ('kind', 'target', 'angleDeg', 'phase', 'w1MHz', 'lengthNs')

    def __init__(self, kind, target, angleDeg, phase=0.0, w1MHz=None,
                 lengthNs=None):
        self.kind = kind
        self.target = target
        self.angleDeg = float(angleDeg)
        self.phase = float(phase)
        self.w1MHz = None if w1MHz is None else float(w1MHz)
        self.lengthNs = None if lengthNs is None else float(lengthNs)

    @classmethod
    def ideal(cls, target, angleDeg, phase=0.0):
        """ Ideal pulse, selective on a transition or semi-selective on
        a doublet depending on the target. """
        kind = (PULSE_IDEAL_SEMISELECTIVE if target in DOUBLETS
                else PULSE_IDEAL_SELECTIVE)
        return cls(kind, target, angleDeg, phase)

    @classmethod
    def finite(cls, target, angleDeg, w1MHz, lengthNs, phase=0.0):
        return cls(PULSE_FINITE, target, angleDeg, phase, w1MHz, lengthNs)

    def getAngle(self):
        return math.radians(self.angleDeg)

    def getOmega1(self):
        """ Field strength in rad/ns. """
        return self.w1MHz * MHZ_TO_RAD_NS

    def isFinite(self):
        return self.kind == PULSE_FINITE

    def getDuration(self):
        return self.lengthNs if self.isFinite() else 0.0

    def validate(self):
        errors = []
        if not math.isfinite(self.angleDeg):
            errors.append('pulse angle should be finite')
        if self.kind == PULSE_IDEAL_SELECTIVE:
            if self.target not in TRANSITIONS:
                errors.append('selective pulse target should be one of %s'
                              % ', '.join(TRANSITIONS))
        elif self.kind in (PULSE_IDEAL_SEMISELECTIVE, PULSE_FINITE):
            if self.target not in DOUBLETS:
                errors.append('%s pulse target should be a doublet (%s)'
                              % (self.kind, ', '.join(DOUBLETS)))
        else:
            errors.append("unknown pulse kind '%s'" % self.kind)
        if self.isFinite():
            if self.w1MHz is None or not math.isfinite(self.w1MHz):
                errors.append('finite pulse needs a finite w1')
            if (self.lengthNs is None or not math.isfinite(self.lengthNs)
                    or self.lengthNs <= 0):
                errors.append('finite pulse length should be positive')
        return errors


class Delay(Event):
    """ Free evolution. With sampleEvery, observables are recorded at
    k*sampleEvery for k = 0..floor(duration/sampleEvery). """
    _fields = ('duration', 'sampleEvery')

    def __init__(self, duration, sampleEvery=None):
        self.duration = float(duration)
        self.sampleEvery = None if sampleEvery is None else float(sampleEvery)

    def getDuration(self):
        return self.duration

    def getSampleOffsets(self):
        if self.sampleEvery is None:
            return []
        count = int(math.floor(self.duration / self.sampleEvery + 1e-9))
        return [k * self.sampleEvery for k in range(count + 1)]

    def validate(self):
        errors = []
        if not math.isfinite(self.duration) or self.duration < 0:
            errors.append('delay duration should be finite and >= 0')
        if self.sampleEvery is not None and not (
                math.isfinite(self.sampleEvery) and self.sampleEvery > 0):
            errors.append('sampling step should be positive')
        return errors


class Dephase(Event):
    """ Loss of every coherence of the eigenbasis. """
    pass


class Sample(Event):
    """ Record the observables under a label. """
    _fields = ('label',)

    def __init__(self, label):
        self.label = label


class SamplingGrid:
    """ Uniform sampling in absolute time across the delays. """
    def __init__(self, start, step, count):
        self.start = float(start)
        self.step = float(step)
        self.count = int(count)

    def getTimes(self):
        return [self.start + k * self.step for k in range(self.count)]

    def validate(self):
        errors = []
        if self.start < 0:
            errors.append('sampling start should be >= 0')
        if not self.step > 0:
            errors.append('sampling step should be positive')
        if self.count < 1:
            errors.append('sampling count should be at least 1')
        return errors

    def __eq__(self, other):
        return (isinstance(other, SamplingGrid)
                and (self.start, self.step, self.count)
                == (other.start, other.step, other.count))

    def __hash__(self):
        return hash((self.start, self.step, self.count))

    def __repr__(self):
        return 'SamplingGrid(%g, %g, %d)' % (self.start, self.step, self.count)


class Sequence:
    """ Ordered events with an optional sampling grid. """
    def __init__(self, events, sampling=None):
        self.events = list(events)
        self.sampling = sampling

    def getDuration(self):
        return sum(e.getDuration() for e in self.events)

    def validate(self):
        """ Check the sequence, the errors name the event index. """
        errors = []
        if not self.events:
            errors.append('sequence should have at least one event')
        for i, event in enumerate(self.events):
            if not isinstance(event, Event):
                errors.append('event %d: %r is not a sequence event'
                              % (i, event))
                continue
            errors.extend('event %d: %s' % (i, e) for e in event.validate())
        if self.sampling is not None:
            errors.extend(self.sampling.validate())
            if not errors and self.sampling.getTimes()[-1] > \
                    self.getDuration() + 1e-9:
                errors.append('sampling grid ends after the sequence '
                              '(%g ns)' % self.getDuration())
        return errors

    def __eq__(self, other):
        return (isinstance(other, Sequence) and self.events == other.events
                and self.sampling == other.sampling)

    def __len__(self):
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def __repr__(self):
        return 'Sequence(%r, sampling=%r)' % (self.events, self.sampling)


class Trace:
    """ Sampled times (ns), optional labels and a column per observable. """
    def __init__(self, observables=OBSERVABLES):
        self.times = []
        self.labels = []
        self.values = {name: [] for name in observables}

    def append(self, time, values, label=None):
        self.times.append(float(time))
        self.labels.append(label)
        for name, column in self.values.items():
            column.append(float(values[name]))

    def getColumn(self, name):
        try:
            return self.values[name]
        except KeyError:
            raise ValidationException("Trace has no column '%s', available: %s"
                                      % (name, ', '.join(self.values)))

    def getObservables(self):
        return list(self.values)

    def select(self, names):
        """ Copy restricted to the given observables. """
        trace = Trace(names)
        for name in names:
            trace.values[name] = list(self.getColumn(name))
        trace.times = list(self.times)
        trace.labels = list(self.labels)
        return trace

    def __len__(self):
        return len(self.times)

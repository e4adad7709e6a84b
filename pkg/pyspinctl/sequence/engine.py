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
Execution of event sequences on a density matrix and the closed form of
the free nuclear nutation from the |ba> state, used as an oracle.
"""

import logging
import math

import numpy as np

from pyspinctl.constants import (PULSE_IDEAL_SELECTIVE,
                                 PULSE_IDEAL_SEMISELECTIVE, OBS_IZ, OBS_SX,
                                 OBS_SZ, OBS_POPULATIONS, OBSERVABLES)
from pyspinctl.exceptions import EngineException
from pyspinctl.params import checkValue, FiniteValue, NonNegative
from pyspinctl.spin import (buildOperator, expHermitian, evolve, expectation,
                            populations, asMatrix, IZ, SX, SZ)
from pyspinctl.spin.model import buildHamiltonian, derive
from pyspinctl.spin.pulses import (freePropagator, idealSelectivePulse,
                                   idealSemiselective, finitePulse, dephase)
from .events import PulseSpec, Delay, Dephase, Sample, Trace

logger = logging.getLogger(__name__)


def observables(rho):
    """ Values of every trace column for the state rho. """
    values = {OBS_IZ: expectation(rho, buildOperator(IZ)),
              OBS_SX: expectation(rho, buildOperator(SX)),
              OBS_SZ: expectation(rho, buildOperator(SZ))}
    values.update(zip(OBS_POPULATIONS, populations(rho)))
    return values


def pulsePropagator(p, pulse):
    """ Unitary of a PulseSpec for the parameters p. """
    if pulse.kind == PULSE_IDEAL_SELECTIVE:
        return idealSelectivePulse(p, pulse.target, pulse.getAngle(),
                                   pulse.phase)
    if pulse.kind == PULSE_IDEAL_SEMISELECTIVE:
        return idealSemiselective(p, pulse.target, pulse.getAngle(),
                                  pulse.phase)
    return finitePulse(p, pulse.getOmega1(), pulse.lengthNs, pulse.phase)


class _Recorder:
    """ Collects the samples of one run. """
    def __init__(self, seq):
        self.trace = Trace(OBSERVABLES)
        self.grid = list(seq.sampling.getTimes()) if seq.sampling else []
        self.nextGrid = 0

    def record(self, time, rho, label=None):
        self.trace.append(time, observables(rho), label)

    def pendingGrid(self, end, inclusive=False):
        """ Grid times up to end, consumed in order. """
        times = []
        while self.nextGrid < len(self.grid):
            g = self.grid[self.nextGrid]
            if g < end - 1e-9 or (inclusive and g <= end + 1e-9):
                times.append(g)
                self.nextGrid += 1
            else:
                break
        return times


def run(rho0, p, seq):
    """ Apply the events of seq in order to rho0.

    Ideal pulses are instantaneous, finite pulses advance the clock by
    their length. Samples come from Sample events, sampled delays and the
    sequence grid. Returns the final state and the Trace.

    Trace rows follow the events, so the same time can appear twice: a
    delay sampled at its end followed by an ideal pulse and a Sample
    records the state before and after the pulse at one instant.
    """
    rho = asMatrix(rho0, 'initial state')
    errors = seq.validate()
    if errors:
        raise EngineException('Invalid sequence: %s' % '; '.join(errors))

    recorder = _Recorder(seq)
    H = buildHamiltonian(p)
    clock = 0.0

    for i, event in enumerate(seq.events):
        if isinstance(event, Delay):
            offsets = set(event.getSampleOffsets())
            for g in recorder.pendingGrid(clock + event.duration):
                offsets.add(g - clock)
            for offset in sorted(offsets):
                recorder.record(clock + offset,
                                evolve(rho, expHermitian(H, offset)))
            rho = evolve(rho, freePropagator(p, event.duration))
            clock += event.duration
        elif isinstance(event, PulseSpec):
            if event.isFinite():
                inside = recorder.pendingGrid(clock + event.lengthNs)
                if any(g > clock + 1e-9 for g in inside):
                    raise EngineException(
                        'Sampling point %g ns falls inside the finite pulse '
                        'of event %d' % (max(inside), i))
                for g in inside:
                    recorder.record(g, rho)
            rho = evolve(rho, pulsePropagator(p, event))
            clock += event.getDuration()
        elif isinstance(event, Dephase):
            rho = dephase(rho, p)
        elif isinstance(event, Sample):
            recorder.record(clock, rho, event.label)

    # Grid points at the very end of the sequence
    for g in recorder.pendingGrid(clock, inclusive=True):
        recorder.record(g, rho)

    logger.debug("Sequence of %d events run, %d samples, %g ns",
                 len(seq), len(recorder.trace), clock)
    return rho, recorder.trace


def closedFormEvolution(p, t):
    """ State reached from |ba><ba| after free evolution for t ns,
    written element by element in the product basis. Only the beta
    manifold block is populated. """
    checkValue('time', t, FiniteValue, NonNegative)
    d = derive(p)
    wt = d.omega34 * t
    s = math.sin(d.etaBeta)
    rho = np.zeros((4, 4), dtype=complex)
    rho[2, 2] = 1 - 0.5 * s ** 2 * (1 - math.cos(wt))
    rho[3, 3] = 0.5 * s ** 2 * (1 - math.cos(wt))
    real = -0.5 * math.sin(2 * d.etaBeta) * math.sin(wt / 2) ** 2
    imag = 0.5 * s * math.sin(wt)
    rho[2, 3] = real - 1j * imag
    rho[3, 2] = real + 1j * imag
    return rho

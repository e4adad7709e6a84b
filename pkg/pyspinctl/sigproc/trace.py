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
Uniformly sampled real traces and magnitude spectra, with their CSV
forms (time_ns,value and freq_MHz,magnitude).
"""

import numpy as np

from pyspinctl.constants import MIN_SPECTRAL_SAMPLES
from pyspinctl.exceptions import ValidationException, EngineException
from pyspinctl.params import checkValue, FiniteValue, Positive
from pyspinctl.utils import writeCsv, readCsv

TRACE_HEADER = ('time_ns', 'value')
SPECTRUM_HEADER = ('freq_MHz', 'magnitude')


class RealTrace:
    """ Samples taken at t0 + k*dt (ns). """
    def __init__(self, t0, dt, samples):
        checkValue('t0', t0, FiniteValue)
        checkValue('dt', dt, FiniteValue, Positive)
        self.t0 = float(t0)
        self.dt = float(dt)
        self.samples = np.asarray(samples, dtype=float).copy()
        if self.samples.ndim != 1:
            raise ValidationException("Trace samples should be one "
                                      "dimensional")

    def getTimes(self):
        return self.t0 + self.dt * np.arange(len(self.samples))

    def withSamples(self, samples):
        return RealTrace(self.t0, self.dt, samples)

    def checkSpectral(self, operation):
        """ Raise EngineException if too short for spectral processing. """
        if len(self.samples) < MIN_SPECTRAL_SAMPLES:
            raise EngineException("%s needs at least %d samples, the trace "
                                  "has %d" % (operation, MIN_SPECTRAL_SAMPLES,
                                              len(self.samples)))

    @classmethod
    def fromTrace(cls, trace, column):
        """ RealTrace from one column of a uniformly sampled sequence
        Trace. """
        times = np.asarray(trace.times)
        if len(times) < 2:
            raise EngineException("Need at least two samples to build a "
                                  "uniform trace")
        steps = np.diff(times)
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=1e-9):
            raise EngineException("Trace is not uniformly sampled")
        return cls(times[0], steps[0], trace.getColumn(column))

    def writeCsv(self, path):
        writeCsv(path, TRACE_HEADER,
                 zip(map(float, self.getTimes()), map(float, self.samples)))

    @classmethod
    def readCsv(cls, path):
        header, rows = readCsv(path)
        if tuple(header) != TRACE_HEADER or len(rows) < 2:
            raise ValidationException("%s is not a trace CSV (%s)"
                                      % (path, ','.join(TRACE_HEADER)))
        data = np.array(rows, dtype=float)
        return cls(data[0, 0], data[1, 0] - data[0, 0], data[:, 1])

    def __len__(self):
        return len(self.samples)


class Spectrum:
    """ Magnitudes of the non negative frequencies k*df (MHz) of an
    nFft point transform. """
    def __init__(self, df, magnitudes, nFft):
        self.df = float(df)
        self.magnitudes = np.asarray(magnitudes, dtype=float)
        self.nFft = int(nFft)

    def getFrequencies(self):
        return self.df * np.arange(len(self.magnitudes))

    def writeCsv(self, path):
        writeCsv(path, SPECTRUM_HEADER,
                 zip(map(float, self.getFrequencies()),
                     map(float, self.magnitudes)))

    def __len__(self):
        return len(self.magnitudes)

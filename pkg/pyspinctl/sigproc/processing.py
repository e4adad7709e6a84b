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
ESEEM trace processing: baseline removal, Gaussian apodization,
zero filled real transform and peak picking.
"""

import logging
import warnings

import numpy as np
from scipy.optimize import least_squares, curve_fit, OptimizeWarning

from pyspinctl.config import Config
from pyspinctl.constants import (BASELINE_BIEXP, BASELINE_POLYEXP,
                                 BASELINE_POLY, BASELINE_NONE, BASELINE_MODELS,
                                 WINDOW_SIGMA_FRACTION)
from pyspinctl.params import (checkValue, OneOf, Positive, PowerOfTwo, GE,
                              GT, LT, FiniteValue)
from pyspinctl.utils import nextPower2
from .trace import Spectrum

logger = logging.getLogger(__name__)

# Time constants tried as seeds, as fractions of the trace span
SEED_FRACTIONS = np.geomspace(0.01, 10.0, 10)
RANDOM_STARTS = 6
REFINED_SEEDS = 3


class BaselineFit:
    """ Fitted baseline curve and how it was obtained. """
    def __init__(self, model, curve, params=None, fallback=False):
        self.model = model
        self.curve = curve
        self.params = params or {}
        self.fallback = fallback

    def toDict(self):
        return {'model': self.model, 'fallback': self.fallback,
                'params': {k: float(v) for k, v in self.params.items()}}


def _biexpDesign(u, logTaus):
    t1, t2 = np.exp(logTaus)
    return np.column_stack([np.ones_like(u), np.exp(-u / t1),
                            np.exp(-u / t2)])


def _projectedResidual(logTaus, u, y):
    """ Residual once the linear coefficients are solved for. """
    design = _biexpDesign(u, logTaus)
    coeffs = np.linalg.lstsq(design, y, rcond=None)[0]
    return design @ coeffs - y


def _fitBiexp(u, y, seed):
    """ Variable projection fit of c0 + a1 exp(-u/t1) + a2 exp(-u/t2).
    Seeds come from a geometric grid plus random starts, the best ones
    are refined with least squares on the log time constants. """
    rng = np.random.default_rng(seed)
    seeds = [(a, b) for i, a in enumerate(SEED_FRACTIONS)
             for b in SEED_FRACTIONS[i + 1:]]
    seeds += [tuple(sorted(pair)) for pair in
              10 ** rng.uniform(-2, 1, size=(RANDOM_STARTS, 2))]
    scored = sorted(
        (float(np.sum(_projectedResidual(np.log(s), u, y) ** 2)), i, s)
        for i, s in enumerate(seeds))

    best = None
    for _, _, s in scored[:REFINED_SEEDS]:
        result = least_squares(_projectedResidual, np.log(s), args=(u, y),
                               xtol=1e-12, ftol=1e-12, gtol=1e-12,
                               max_nfev=2000)
        cost = float(np.sum(result.fun ** 2))
        if np.all(np.isfinite(result.x)) and (best is None or cost < best[0]):
            best = (cost, result.x)
    if best is None:
        raise ArithmeticError("no finite biexponential fit")

    logTaus = best[1]
    design = _biexpDesign(u, logTaus)
    coeffs = np.linalg.lstsq(design, y, rcond=None)[0]
    curve = design @ coeffs
    if not np.all(np.isfinite(curve)):
        raise ArithmeticError("biexponential fit is not finite")
    t1, t2 = np.exp(logTaus)
    return curve, {'c0': coeffs[0], 'a1': coeffs[1], 't1': t1,
                   'a2': coeffs[2], 't2': t2}


def _polyexp(u, c0, b0, b1, b2):
    return c0 + np.exp(b0 + b1 * u + b2 * u ** 2)


def _fitPolyexp(u, y):
    """ c0 + exp(b0 + b1 u + b2 u^2), the exponent a second degree
    polynomial. """
    span = np.ptp(y)
    c0 = float(np.min(y) - 0.1 * span)
    b2, b1, b0 = np.polyfit(u, np.log(y - c0), 2)
    with warnings.catch_warnings():
        warnings.simplefilter('error', OptimizeWarning)
        params, _ = curve_fit(_polyexp, u, y, p0=(c0, b0, b1, b2),
                              maxfev=5000)
    curve = _polyexp(u, *params)
    if not np.all(np.isfinite(curve)):
        raise ArithmeticError("exponential polynomial fit is not finite")
    return curve, dict(zip(('c0', 'b0', 'b1', 'b2'), params))


def _fitPoly(u, y):
    coeffs = np.polyfit(u, y, 2)
    return np.polyval(coeffs, u), dict(zip(('p2', 'p1', 'p0'), coeffs))


def fitBaseline(trace, model=BASELINE_BIEXP, seed=None):
    """ Fit the baseline of a trace with the given model. Time is scaled
    to the trace span for the fit, fitted time constants are reported in
    that unit. A failed exponential fit falls back to a second degree
    polynomial and is flagged. """
    checkValue('baseline model', model, OneOf(BASELINE_MODELS))
    trace.checkSpectral('baseline correction')
    y = trace.samples
    n = len(y)
    if model == BASELINE_NONE:
        return BaselineFit(model, np.zeros(n))
    if np.ptp(y) == 0:
        return BaselineFit(model, np.full(n, y[0]), {'c0': y[0]})

    u = np.arange(n) / (n - 1)
    seed = Config.SPINCTL_SEED if seed is None else seed
    try:
        if model == BASELINE_BIEXP:
            curve, params = _fitBiexp(u, y, seed)
        elif model == BASELINE_POLYEXP:
            curve, params = _fitPolyexp(u, y)
        else:
            curve, params = _fitPoly(u, y)
        return BaselineFit(model, curve, params)
    except (ArithmeticError, ValueError, RuntimeError, OptimizeWarning,
            np.linalg.LinAlgError) as e:
        logger.warning("Baseline fit '%s' failed (%s), using a second "
                       "degree polynomial", model, e)
        curve, params = _fitPoly(u, y)
        return BaselineFit(BASELINE_POLY, curve, params, fallback=True)


def baselineCorrect(trace, model=BASELINE_BIEXP, seed=None):
    """ Trace minus its fitted baseline. """
    fit = fitBaseline(trace, model, seed)
    return trace.withSamples(trace.samples - fit.curve)


def apodize(trace, sigmaFraction=WINDOW_SIGMA_FRACTION):
    """ Multiply by exp(-(k/(sigmaFraction n))^2 / 2), a Gaussian anchored
    at the first sample. Fractions above 1 are clamped to 1. """
    checkValue('window fraction', sigmaFraction, FiniteValue, Positive)
    if sigmaFraction > 1:
        logger.warning("Window fraction %g clamped to 1", sigmaFraction)
        sigmaFraction = 1.0
    n = len(trace.samples)
    k = np.arange(n)
    window = np.exp(-0.5 * (k / (sigmaFraction * n)) ** 2)
    return trace.withSamples(trace.samples * window)


def spectrum(trace, zeroFillTo=None):
    """ Magnitude of the real transform zero filled to zeroFillTo points
    (default the next power of two of twice the samples). """
    trace.checkSpectral('spectrum')
    n = len(trace.samples)
    nFft = nextPower2(2 * n) if zeroFillTo is None else zeroFillTo
    checkValue('zero fill size', nFft, PowerOfTwo(), GE(n))
    magnitudes = np.abs(np.fft.rfft(trace.samples, int(nFft)))
    # dt in ns gives frequencies in GHz, scaled to MHz
    return Spectrum(1e3 / (nFft * trace.dt), magnitudes, nFft)


def peakPick(spec, thresholdFraction=0.1):
    """ Interior local maxima above thresholdFraction of the largest
    magnitude, positions refined with a 3-point parabola. Returns
    (frequency MHz, magnitude) pairs, largest first. """
    checkValue('threshold fraction', thresholdFraction, FiniteValue, GT(0.0),
               LT(1.0))
    y = spec.magnitudes
    if len(y) < 3 or np.max(y) <= 0:
        return []
    level = thresholdFraction * np.max(y)
    peaks = []
    for k in range(1, len(y) - 1):
        if y[k] > y[k - 1] and y[k] >= y[k + 1] and y[k] > level:
            denom = y[k - 1] - 2 * y[k] + y[k + 1]
            delta = 0.0 if denom == 0 else 0.5 * (y[k - 1] - y[k + 1]) / denom
            magnitude = y[k] - 0.25 * (y[k - 1] - y[k + 1]) * delta
            peaks.append(((k + delta) * spec.df, float(magnitude)))
    return sorted(peaks, key=lambda pk: (-pk[1], pk[0]))

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
Named experiments on the pair: preparation of the |ba> pseudopure state
with microwave pulses only, echo detection of the 2/4 population
difference, nuclear lock and release, and three pulse ESEEM.
"""

import logging
import math

import numpy as np

from pyspinctl.config import Config
from pyspinctl.constants import (DOUBLET_2324, DOUBLET_1314, TRANSITION_24,
                                 STATE_BA, OBS_SX, OBS_POPDIFF, ESEEM_TAU_NS,
                                 ESEEM_T_START_NS, ESEEM_DT_NS, ESEEM_N,
                                 ESEEM_PULSES_FINITE, ESEEM_PULSES_IDEAL,
                                 FINITE_W1_MHZ, FINITE_PI2_LEN_NS,
                                 PRODUCT_STATES, BLIND_SPOT_FRACTION)
from pyspinctl.exceptions import EngineException
from pyspinctl.params import (checkValue, checkEngine, FiniteValue, Positive,
                              NonNegative, GE, OneOf)
from pyspinctl.spin import (buildOperator, expHermitian, evolve, expectation,
                            populations, thermalState, asMatrix, SX, SY)
from pyspinctl.spin.model import buildHamiltonian, derive, radToMhz, mhzToRad
from pyspinctl.spin.pulses import (freePropagator, idealSelectivePulse,
                                   idealSemiselective, finitePulse, dephase)
from .events import Trace

logger = logging.getLogger(__name__)


# ------------------------- Pseudopure preparation -------------------------

def cos2PhiExact(etaAlpha):
    """ cos(2 phi) giving three equal populations after the 24 pulse. """
    s2 = math.sin(etaAlpha / 2) ** 2
    c2 = math.cos(etaAlpha / 2) ** 2
    return (-1 + 2 * s2) / (2 * c2 + 1)


def cos2PhiApprox(etaAlpha):
    """ Small angle form of cos2PhiExact. """
    return -1.0 / 3 + etaAlpha ** 2 / 6


class PseudopureReport:
    """ Outcome of the microwave only preparation. """
    def __init__(self, rho, diagonalBefore, diagonalAfter, cos2Phi,
                 cos2PhiApprox, betaEff, fidelity):
        self.rho = rho
        self.diagonalBefore = diagonalBefore
        self.diagonalAfter = diagonalAfter
        self.cos2Phi = cos2Phi
        self.cos2PhiApprox = cos2PhiApprox
        self.betaEff = betaEff
        self.fidelity = fidelity

    def toDict(self):
        return {'diagonal_before_1314': [float(v) for v in self.diagonalBefore],
                'diagonal_after_1314': [float(v) for v in self.diagonalAfter],
                'cos2phi_exact': self.cos2Phi,
                'cos2phi_approx': self.cos2PhiApprox,
                'beta_eff_deg': math.degrees(self.betaEff),
                'fidelity': self.fidelity}


def pseudopureFidelity(rho, target=STATE_BA):
    """ Weight of the target population deviation against the spread of
    the other three, 1 for a perfect pseudopure state of either sign.
    The mean of the other populations is the uniform background. """
    pops = populations(rho)
    k = PRODUCT_STATES.index(target)
    others = np.delete(pops, k)
    background = others.mean()
    signal = abs(pops[k] - background)
    spread = float(np.sum(np.abs(others - background)))
    if signal + spread <= 0:
        return 0.0
    return float(signal / (signal + spread))


def pseudopureReport(p, target=STATE_BA, approximate=False):
    """ Prepare |ba><ba| from thermal equilibrium: selective pulse on 24
    with effective angle arccos(cos 2 phi), dephasing, then a semi-selective
    pi pulse on 1314. With approximate=True the small angle cos 2 phi is
    used instead of the exact one. """
    checkValue('target', target, OneOf((STATE_BA,)))
    d = derive(p)
    if d.cancellationMismatch > Config.getNumericTolerance():
        logger.warning("Preparing the pseudopure state %.4g MHz away from "
                       "exact cancellation, populations will not be equal",
                       radToMhz(d.cancellationMismatch))

    exact = cos2PhiExact(d.etaAlpha)
    approx = cos2PhiApprox(d.etaAlpha)
    betaEff = math.acos(approx if approximate else exact)
    cosEta = math.cos(d.eta)
    if abs(cosEta) < Config.getStructTolerance():
        raise EngineException("The 24 transition is not allowed here "
                              "(cos eta = 0), cannot prepare the state")

    rho = evolve(thermalState(),
                 idealSelectivePulse(p, TRANSITION_24, betaEff / cosEta))
    rho = dephase(rho, p)
    before = populations(rho)
    rho = evolve(rho, idealSemiselective(p, DOUBLET_1314, math.pi))
    report = PseudopureReport(rho, before, populations(rho), exact, approx,
                              betaEff, pseudopureFidelity(rho, target))
    logger.debug("Pseudopure preparation: fidelity %.6f", report.fidelity)
    return report


def preparePseudopure(p, target=STATE_BA, approximate=False):
    return pseudopureReport(p, target, approximate).rho


# ------------------------------ Detection --------------------------------

def detectionDelay(p, m=1):
    """ tau = 2 pi m / |omega34| in ns. """
    checkValue('m', m, GE(1))
    d = derive(p)
    if d.omega34 == 0:
        raise EngineException("omega34 is zero, no detection delay exists")
    return 2 * math.pi * m / abs(d.omega34)


def detectPopDiff(rho, p, m=1, tau=None):
    """ Echo (pi/2)2324 - tau - (pi)2324 - tau read as <Sx>.

    tau defaults to 2 pi m/|omega34|; other values are accepted with a
    warning. The value is linear in the state and vanishes when the
    populations of levels 2 and 4 (and of 1 and 3) are equal.
    """
    rho = asMatrix(rho, 'rho')
    if tau is None:
        tau = detectionDelay(p, m)
    else:
        checkValue('tau', tau, FiniteValue, NonNegative)
        period = detectionDelay(p)
        ratio = tau / period
        if abs(ratio - round(ratio)) > 1e-6 or round(ratio) < 1:
            logger.warning("Detection delay %g ns is not a multiple of "
                           "2pi/|omega34| = %g ns", tau, period)
    free = freePropagator(p, tau)
    rho = evolve(rho, idealSemiselective(p, DOUBLET_2324, math.pi / 2))
    rho = evolve(rho, free)
    rho = evolve(rho, idealSemiselective(p, DOUBLET_2324, math.pi))
    rho = evolve(rho, free)
    return expectation(rho, buildOperator(SX))


# --------------------------- Lock and release ----------------------------

def lockReleaseExperiment(p, schedule, step, count, start=0.0, m=1):
    """ Nuclear lock and release detected by the echo.

    Thermal equilibrium gets a (pi)2324 pulse at t = 0, then the delays of
    schedule follow with a (pi)2324 pulse between consecutive ones; free
    evolution continues after the last one. The detected population
    difference is sampled at detection start times start + k*step.
    """
    checkValue('step', step, FiniteValue, Positive)
    checkValue('count', count, GE(1))
    checkValue('start', start, FiniteValue, NonNegative)
    for delay in schedule:
        checkValue('schedule delay', delay, FiniteValue, NonNegative)

    flip = idealSemiselective(p, DOUBLET_2324, math.pi)
    H = buildHamiltonian(p)
    boundaries = [0.0]
    states = [evolve(thermalState(), flip)]
    for delay in schedule[:-1]:
        rho = evolve(states[-1], freePropagator(p, delay))
        boundaries.append(boundaries[-1] + delay)
        states.append(evolve(rho, flip))

    trace = Trace((OBS_POPDIFF,))
    tau = detectionDelay(p, m)
    for k in range(int(count)):
        t = start + k * step
        j = int(np.searchsorted(boundaries, t + 1e-9, side='right')) - 1
        rho = evolve(states[j], expHermitian(H, t - boundaries[j]))
        trace.append(t, {OBS_POPDIFF: detectPopDiff(rho, p, tau=tau)})
    return trace


# --------------------------------- ESEEM ----------------------------------

def electronCoherenceFilter(rho):
    """ Keep the alpha-alpha and beta-beta blocks of rho. """
    kept = np.zeros_like(rho)
    kept[:2, :2] = rho[:2, :2]
    kept[2:, 2:] = rho[2:, 2:]
    return kept


def eseemPulse(p, pulses=ESEEM_PULSES_FINITE, w1MHz=FINITE_W1_MHZ,
               lengthNs=FINITE_PI2_LEN_NS):
    """ The pi/2 pulse of the ESEEM sequence. """
    checkValue('pulses', pulses, OneOf((ESEEM_PULSES_FINITE,
                                        ESEEM_PULSES_IDEAL)))
    if pulses == ESEEM_PULSES_IDEAL:
        return expHermitian(buildOperator(SY), math.pi / 2)
    return finitePulse(p, mhzToRad(w1MHz), lengthNs)


def eseem3Pulse(p, tau=ESEEM_TAU_NS, tStart=ESEEM_T_START_NS, dt=ESEEM_DT_NS,
                n=ESEEM_N, pulses=ESEEM_PULSES_FINITE, w1MHz=FINITE_W1_MHZ,
                pi2LenNs=FINITE_PI2_LEN_NS, rho0=None):
    """ Stimulated echo pi/2 - tau - pi/2 - T - pi/2 - tau versus T.

    Electron coherences are removed during T, as the phase cycle of the
    measurement does, so only nuclear frequencies modulate the echo.
    Returns the <Sx> trace sampled at T = tStart + k*dt.
    """
    checkEngine('n', n, GE(2))
    checkEngine('dt', dt, FiniteValue, Positive)
    checkValue('tau', tau, FiniteValue, NonNegative)
    checkValue('T start', tStart, FiniteValue, NonNegative)

    P = eseemPulse(p, pulses, w1MHz, pi2LenNs)
    freeTau = freePropagator(p, tau)
    rho = thermalState() if rho0 is None else asMatrix(rho0, 'rho0')
    rho = evolve(evolve(evolve(rho, P), freeTau), P)
    rho = electronCoherenceFilter(rho)

    H = buildHamiltonian(p)
    sx = buildOperator(SX)
    trace = Trace((OBS_SX,))
    for k in range(int(n)):
        T = tStart + k * dt
        echo = evolve(evolve(evolve(rho, expHermitian(H, T)), P), freeTau)
        trace.append(T, {OBS_SX: expectation(echo, sx)})
    return trace


class BlindSpotReport:
    """ Mims suppression factors 1 - cos(w tau) of both nuclear lines and
    the modulation depth k = (B omegaI / (w12 w34))^2. """
    def __init__(self, tau, lines, depth):
        self.tau = tau
        self.lines = lines
        self.depth = depth

    def getSuppressed(self, fraction=BLIND_SPOT_FRACTION):
        """ Lines within fraction of a blind spot. """
        return [(f, factor) for f, factor in self.lines
                if factor < 2 * fraction]

    def toDict(self):
        return {'tau_ns': self.tau,
                'lines': [{'freq_MHz': f, 'factor': factor}
                          for f, factor in self.lines],
                'modulation_depth': self.depth}


def blindSpots(p, tau):
    d = derive(p)
    lines = [(radToMhz(abs(w)), 1 - math.cos(w * tau))
             for w in (d.omega12, d.omega34)]
    product = d.omega12 * d.omega34
    depth = 0.0 if product == 0 else (p.B * p.omegaI / product) ** 2
    report = BlindSpotReport(tau, lines, depth)
    for f, factor in report.getSuppressed():
        logger.warning("Nuclear line at %.4g MHz is close to a blind spot "
                       "for tau = %g ns (factor %.3g)", f, tau, factor)
    return report

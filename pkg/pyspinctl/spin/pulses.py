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
Propagators of the pair: free evolution, ideal single transition
rotations, rectangular microwave pulses of finite length, ideal pulses
on a doublet of EPR transitions, and the dephasing channel.

All pulses share the phase convention of the rotating frame: phase 0 is
a rotation about y, phase pi/2 about x.
"""

import logging
import math
import threading

import numpy as np

from pyspinctl.constants import (TRANSITIONS, ALLOWED_TRANSITIONS, DOUBLETS,
                                 TRANSITION_24)
from pyspinctl.params import (checkValue, FiniteValue, NonNegative, Positive,
                              OneOf)
from .operators import (buildOperator, expHermitian, dagger, asMatrix,
                        gateFidelity, SX, SY)
from .model import buildHamiltonian, derive, diagonalizer

logger = logging.getLogger(__name__)

# Level indexes (0 based) joined by each transition and doublet
TRANSITION_LEVELS = {'12': (0, 1), '34': (2, 3), '13': (0, 2), '24': (1, 3)}
DOUBLET_LEVELS = {'2324': (1, (2, 3)), '1314': (0, (2, 3))}


class PropagatorCache:
    """ Read mostly store of propagators keyed by (parameters, pulse).
    Lookups and inserts are guarded by a lock so several scan workers
    can share it. """
    def __init__(self, maxSize=256):
        self._maxSize = maxSize
        self._items = {}
        self._lock = threading.Lock()

    def get(self, key, builder):
        with self._lock:
            value = self._items.get(key)
        if value is None:
            value = builder()
            value.flags.writeable = False
            with self._lock:
                if len(self._items) >= self._maxSize:
                    self._items.clear()
                self._items[key] = value
        return value

    def clear(self):
        with self._lock:
            self._items.clear()

    def __len__(self):
        return len(self._items)


_cache = PropagatorCache()


def getPropagatorCache():
    return _cache


def _phaseOperator(x, y, phase):
    return y * math.cos(phase) + x * math.sin(phase)


def _twoLevel(j, k, phase):
    """ Spin 1/2 rotation generator between levels j < k (0 based). """
    g = np.zeros((4, 4), dtype=complex)
    value = 0.5 * (math.sin(phase) - 1j * math.cos(phase))
    g[j, k] = value
    g[k, j] = np.conj(value)
    return g


def freePropagator(p, t):
    """ exp(-i H0 t) for t >= 0 ns. """
    checkValue('free evolution time', t, FiniteValue, NonNegative)
    return _cache.get((p, 'free', float(t)),
                      lambda: expHermitian(buildHamiltonian(p), t))


def idealSelectivePulse(p, target, angle, phase=0.0):
    """ Instantaneous rotation of nominal angle on a single transition
    ('12', '34', '13' or '24').

    The 24 pulse is the microwave pulse on resonance with the allowed
    line, exp[-i angle cos(eta) Sy24] at phase 0, and acts on the
    product states |ab>, |bb>. The other targets rotate the two
    eigenstates they join, built in the eigenbasis and taken back to the
    product basis with U^+ (.) U.

    The allowed EPR transitions 13 and 24 rotate by angle*cos(eta), the
    nuclear ones by the nominal angle.
    """
    checkValue('target', target, OneOf(TRANSITIONS))
    checkValue('angle', angle, FiniteValue)
    checkValue('phase', phase, FiniteValue)

    def build():
        d = derive(p)
        factor = math.cos(d.eta) if target in ALLOWED_TRANSITIONS else 1.0
        j, k = TRANSITION_LEVELS[target]
        rotation = expHermitian(_twoLevel(j, k, phase), angle * factor)
        if target == TRANSITION_24:
            return rotation
        U = diagonalizer(p, d)
        return dagger(U) @ rotation @ U

    return _cache.get((p, 'selective', target, float(angle), float(phase)),
                      build)


def finitePulse(p, omega1, duration, phase=0.0):
    """ Rectangular pulse exp[-i(H0 + omega1 (Sy cos phase + Sx sin phase))
    duration], omega1 in rad/ns and duration in ns. The offset OmegaS
    of p sets the carrier. """
    checkValue('omega1', omega1, FiniteValue)
    checkValue('duration', duration, FiniteValue, Positive)
    checkValue('phase', phase, FiniteValue)

    def build():
        drive = _phaseOperator(buildOperator(SX), buildOperator(SY), phase)
        return expHermitian(buildHamiltonian(p) + omega1 * drive, duration)

    return _cache.get((p, 'finite', float(omega1), float(duration),
                       float(phase)), build)


def semiselectiveGenerator(p, doublet, phase=0.0):
    """ Generator of the ideal doublet pulse in the product basis.

    The eigenbasis image of the drive keeps only the elements between the
    shared level and the two levels of the other manifold, rescaled so the
    shared level sees a spin 1/2 coupling (a nominal pi inverts it).
    """
    checkValue('doublet', doublet, OneOf(DOUBLETS))
    U = diagonalizer(p)
    drive = _phaseOperator(buildOperator(SX), buildOperator(SY), phase)
    G = U @ drive @ dagger(U)
    shared, others = DOUBLET_LEVELS[doublet]

    filtered = np.zeros_like(G)
    for k in others:
        filtered[shared, k] = G[shared, k]
        filtered[k, shared] = G[k, shared]

    strength = math.sqrt(sum(abs(G[shared, k]) ** 2 for k in others))
    if strength == 0:
        logger.warning("Doublet %s has no drive matrix elements", doublet)
        return np.zeros((4, 4), dtype=complex)
    filtered *= 0.5 / strength
    return dagger(U) @ filtered @ U


def idealSemiselective(p, doublet, angle, phase=0.0):
    """ Instantaneous pulse exciting both EPR transitions of a doublet,
    '2324' (forbidden 23 with allowed 24) or '1314'. """
    checkValue('doublet', doublet, OneOf(DOUBLETS))
    checkValue('angle', angle, FiniteValue)
    return _cache.get(
        (p, 'semiselective', doublet, float(angle), float(phase)),
        lambda: expHermitian(semiselectiveGenerator(p, doublet, phase), angle))


def sharedLevel(doublet):
    """ Level index (0 based) shared by the two transitions of a doublet. """
    return DOUBLET_LEVELS[doublet][0]


def dephase(rho, p):
    """ Drop every coherence of the eigenbasis: U^+ diag(U rho U^+) U. """
    rho = asMatrix(rho, 'rho')
    U = diagonalizer(p)
    inEigen = U @ rho @ dagger(U)
    return dagger(U) @ np.diag(np.diag(inEigen)) @ U


def togglingFidelity(p, V, W, duration):
    """ Overlap of an instantaneous pulse V with a finite one W of the
    given length, after removing the free evolution of each half:
    |Tr(V^+ F W F)|/4 with F = free(duration/2)^+. """
    half = dagger(freePropagator(p, duration / 2))
    return gateFidelity(V, half @ W @ half)


def finitePulseFidelity(p, doublet, omega1, duration, angle=math.pi,
                        phase=0.0):
    """ Fidelity of the rectangular pulse against its ideal doublet model,
    used to report how far a configured pulse is from the ideal one. """
    V = idealSemiselective(p, doublet, angle, phase)
    W = finitePulse(p, omega1, duration, phase)
    return togglingFidelity(p, V, W, duration)

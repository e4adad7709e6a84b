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
Rotating frame Hamiltonian of the pair

    H0 = OmegaS Sz + omegaI Iz + A SzIz + B SzIx

its analytic diagonalization, the derived nuclear frequencies and mixing
angles, and the mapping from a hyperfine tensor orientation to (A, B).
"""

import logging
import math

import numpy as np
from scipy.spatial.transform import Rotation

from pyspinctl.config import Config
from pyspinctl.constants import (MHZ_TO_RAD_NS, DOUBLET_2324, DOUBLET_1314,
                                 DOUBLETS, OFFSET_AUTO_2324, OFFSET_AUTO_1314,
                                 OFFSET_MODES, STATE_BA, INITIAL_STATES)
from pyspinctl.exceptions import ValidationException, EngineException
from pyspinctl.executor import getExecutor
from pyspinctl.params import (checkValue, FiniteValue, UnitVector, NonEmpty,
                              OneOf, Positive)
from .operators import buildOperator, SZ, IZ, SZIZ, SZIX, dagger

logger = logging.getLogger(__name__)


def mhzToRad(value):
    """ Ordinary frequency in MHz to angular frequency in rad/ns. """
    return value * MHZ_TO_RAD_NS


def radToMhz(value):
    return value / MHZ_TO_RAD_NS


class SpinParams:
    """ Hamiltonian coefficients, all angular frequencies in rad/ns.

    B is kept non negative: a negative value is folded and remembered
    with bSignFlipped(). The values given in MHz (if any) are kept as
    source so the sequence formatter can write them back unchanged.
    """
    def __init__(self, omegaS, omegaI, A, B, source=None, initial=STATE_BA):
        for name, value in (('OmegaS', omegaS), ('omegaI', omegaI),
                            ('A', A), ('B', B)):
            checkValue(name, value, FiniteValue)
        checkValue('initial', initial, OneOf(INITIAL_STATES))
        self._omegaS = float(omegaS)
        self._omegaI = float(omegaI)
        self._A = float(A)
        self._bSignFlipped = B < 0
        self._B = abs(float(B))
        self._source = dict(source) if source else None
        self._initial = initial

    @classmethod
    def fromMHz(cls, omega_I_MHz, A_MHz, B_MHz, offset=OFFSET_AUTO_2324,
                initial=STATE_BA):
        """ Build from ordinary frequencies. offset is either one of the
        auto modes ('auto:2324', 'auto:1314') or the OmegaS/2pi in MHz. """
        source = {'omega_I_MHz': float(omega_I_MHz),
                  'A_MHz': float(A_MHz),
                  'B_MHz': float(B_MHz),
                  'offset': offset}
        p = cls(0.0, mhzToRad(omega_I_MHz), mhzToRad(A_MHz), mhzToRad(B_MHz),
                source=source, initial=initial)
        if isinstance(offset, str):
            checkValue('offset', offset, OneOf(OFFSET_MODES))
            doublet = DOUBLET_2324 if offset == OFFSET_AUTO_2324 else DOUBLET_1314
            omegaS = resonanceOffset(p, doublet)
        else:
            omegaS = mhzToRad(float(offset))
        return p.withOffset(omegaS)

    def withOffset(self, omegaS):
        """ Copy of these parameters with a new OmegaS (rad/ns). """
        p = SpinParams(self._omegaS, self._omegaI, self._A, self._B,
                       source=self._source, initial=self._initial)
        checkValue('OmegaS', omegaS, FiniteValue)
        p._omegaS = float(omegaS)
        p._bSignFlipped = self._bSignFlipped
        return p

    def withInitial(self, initial):
        p = self.withOffset(self._omegaS)
        checkValue('initial', initial, OneOf(INITIAL_STATES))
        p._initial = initial
        return p

    @property
    def omegaS(self):
        return self._omegaS

    @property
    def omegaI(self):
        return self._omegaI

    @property
    def A(self):
        return self._A

    @property
    def B(self):
        return self._B

    def bSignFlipped(self):
        return self._bSignFlipped

    def getSource(self):
        return dict(self._source) if self._source else None

    def getInitial(self):
        return self._initial

    def isWeakCoupling(self):
        return abs(self._A) < 2 * abs(self._omegaI)

    def toMHz(self):
        """ Resolved values in MHz, as written in manifests. """
        return {'OmegaS_MHz': radToMhz(self._omegaS),
                'omega_I_MHz': radToMhz(self._omegaI),
                'A_MHz': radToMhz(self._A),
                'B_MHz': radToMhz(self._B)}

    def _key(self):
        return (self._omegaS, self._omegaI, self._A, self._B, self._initial)

    def __eq__(self, other):
        return isinstance(other, SpinParams) and (
            self._key() == other._key()
            and self.getSource() == other.getSource())

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return ('SpinParams(OmegaS=%g, omegaI=%g, A=%g, B=%g rad/ns)'
                % (self._omegaS, self._omegaI, self._A, self._B))


class DerivedQuantities:
    """ Nuclear transition frequencies (rad/ns) and mixing angles (rad). """
    def __init__(self, omega12, omega34, etaAlpha, etaBeta,
                 cancellationMismatch, degenerate=False):
        self.omega12 = omega12
        self.omega34 = omega34
        self.etaAlpha = etaAlpha
        self.etaBeta = etaBeta
        self.eta = (etaAlpha - etaBeta) / 2
        self.cancellationMismatch = cancellationMismatch
        self.sinEtaBeta = math.sin(etaBeta)
        self.degenerate = degenerate

    def getPeriod34(self):
        """ Nutation period 2pi/|omega34| in ns, inf at the degenerate point. """
        return math.inf if self.omega34 == 0 else 2 * math.pi / abs(self.omega34)

    def toDict(self):
        return {'omega12_MHz': radToMhz(self.omega12),
                'omega34_MHz': radToMhz(self.omega34),
                'eta_alpha_deg': math.degrees(self.etaAlpha),
                'eta_beta_deg': math.degrees(self.etaBeta),
                'eta_deg': math.degrees(self.eta),
                'mismatch_MHz': radToMhz(self.cancellationMismatch),
                'sin_eta_beta': self.sinEtaBeta,
                'degenerate': self.degenerate}


def buildHamiltonian(p):
    """ H0 = OmegaS Sz + omegaI Iz + A SzIz + B SzIx in rad/ns. """
    return (p.omegaS * buildOperator(SZ)
            + p.omegaI * buildOperator(IZ)
            + p.A * buildOperator(SZIZ)
            + p.B * buildOperator(SZIX))


def derive(p):
    """ Signed nuclear frequencies and the mixing angles of both electron
    manifolds.

    The angles use the two argument arctangent with the quadrant that makes
    the eigenvalue differences of the diagonalized H0 equal omega12 and
    omega34 (both negative): etaBeta = atan2(-B, A - 2 omegaI) and
    etaAlpha = atan2(B, -(A + 2 omegaI)). Both keep the printed tangent
    -B/(A +- 2 omegaI); at exact cancellation etaBeta = -pi/2.
    """
    wI, A, B = p.omegaI, p.A, p.B
    omega12 = -math.hypot(wI + A / 2, B / 2)
    omega34 = -math.hypot(wI - A / 2, B / 2)
    mismatch = abs(A - 2 * wI)

    tol = Config.getStructTolerance()
    degenerate = mismatch <= tol and B <= tol
    etaAlpha = math.atan2(B, -(A + 2 * wI))
    etaBeta = 0.0 if degenerate else math.atan2(-B, A - 2 * wI)
    if degenerate:
        logger.debug("Degenerate point A = 2 omegaI, B = 0: etaBeta set to 0")

    return DerivedQuantities(omega12, omega34, etaAlpha, etaBeta, mismatch,
                             degenerate=degenerate)


def _rotationBlock(angle):
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    return np.array([[c, -s], [s, c]])


def diagonalizer(p, derived=None):
    """ Block rotation U with H0d = U H0 U^+ diagonal, built from the half
    angles etaAlpha/2 (levels 1, 2) and etaBeta/2 (levels 3, 4). """
    d = derived or derive(p)
    U = np.zeros((4, 4), dtype=complex)
    U[:2, :2] = _rotationBlock(d.etaAlpha)
    U[2:, 2:] = _rotationBlock(d.etaBeta)
    return U


def toEigenbasis(m, p, U=None):
    U = diagonalizer(p) if U is None else U
    return U @ m @ dagger(U)


def fromEigenbasis(m, p, U=None):
    U = diagonalizer(p) if U is None else U
    return dagger(U) @ m @ U


def eigenEnergies(p):
    """ Diagonal of U H0 U^+ in level order 1..4. """
    return np.real(np.diag(toEigenbasis(buildHamiltonian(p), p)))


def resonanceOffset(p, doublet):
    """ OmegaS (rad/ns) centring the two EPR transitions of a doublet,
    i.e. the mean of omega23 and omega24 (or omega13 and omega14) is zero.
    Any OmegaS already in p is ignored. """
    checkValue('doublet', doublet, OneOf(DOUBLETS))
    E = eigenEnergies(p.withOffset(0.0))
    shared = E[1] if doublet == DOUBLET_2324 else E[0]
    # Shared level moves with +OmegaS/2, the beta manifold with -OmegaS/2
    return float((E[2] + E[3]) / 2 - shared)


class HyperfineTensor:
    """ Hyperfine tensor given by its principal values (MHz) and the
    orientation of its principal frame, intrinsic z-y-z Euler angles in
    radians. """
    def __init__(self, principalValues, eulerAngles=(0.0, 0.0, 0.0)):
        self.principalValues = np.asarray(principalValues, dtype=float)
        if self.principalValues.shape != (3,):
            raise ValidationException("Hyperfine tensor needs three principal "
                                      "values, got %s" % (principalValues,))
        self.eulerAngles = np.asarray(eulerAngles, dtype=float)
        checkValue('principal values', self.principalValues, FiniteValue)
        checkValue('euler angles', self.eulerAngles, FiniteValue)
        self.rotation = Rotation.from_euler('ZYZ', self.eulerAngles).as_matrix()

    @classmethod
    def fromDegrees(cls, principalValues, eulerDeg=(0.0, 0.0, 0.0)):
        return cls(principalValues, np.radians(eulerDeg))

    def getMatrix(self):
        """ Tensor in the laboratory frame, MHz. """
        R = self.rotation
        return R @ np.diag(self.principalValues) @ R.T


def hyperfineFromOrientation(tensor, fieldDir):
    """ Secular A and pseudo secular B (MHz, B >= 0) for a static field
    along the unit vector fieldDir. """
    n = np.asarray(fieldDir, dtype=float)
    checkValue('field direction', n, UnitVector())
    a = tensor.getMatrix() @ n
    A = float(n @ a)
    B = math.sqrt(max(float(a @ a) - A * A, 0.0))
    return A, B


def protonOmegaI(gammaMHzPerT):
    """ Return the map B0 (T) -> omegaI (rad/ns) with omegaI = -gamma B0. """
    def omegaIFn(B0):
        return mhzToRad(-gammaMHzPerT * B0)
    return omegaIFn


class ScanGrid:
    """ Orientations (unit vectors) crossed with static fields (T).
    Points are numbered direction major, field minor. """
    def __init__(self, directions, fields):
        self.directions = [np.asarray(d, dtype=float) for d in directions]
        self.fields = [float(b) for b in fields]

    @classmethod
    def sphere(cls, stepDeg, fields):
        """ Polar angle 0..180 and azimuth 0..360 (excluded) in steps of
        stepDeg degrees, one direction per pole. """
        checkValue('grid step', stepDeg, FiniteValue, Positive)
        directions = []
        nTheta = int(round(180.0 / stepDeg))
        nPhi = max(1, int(round(360.0 / stepDeg)))
        for i in range(nTheta + 1):
            theta = math.radians(min(i * stepDeg, 180.0))
            phis = [0.0] if i in (0, nTheta) else [
                math.radians(j * stepDeg) for j in range(nPhi)]
            for phi in phis:
                directions.append([math.sin(theta) * math.cos(phi),
                                   math.sin(theta) * math.sin(phi),
                                   math.cos(theta)])
        return cls(directions, fields)

    def points(self):
        return [(d, b) for d in self.directions for b in self.fields]

    def __len__(self):
        return len(self.directions) * len(self.fields)


class ScanRow:
    """ One evaluated grid point. """
    def __init__(self, index, direction, B0, mismatch, sinEtaBeta, A, B):
        self.index = index
        self.direction = direction
        self.B0 = B0
        self.mismatch = mismatch
        self.sinEtaBeta = sinEtaBeta
        self.A = A
        self.B = B

    def getMismatchMHz(self):
        return radToMhz(self.mismatch)


def _evaluatePoint(index, tensor, omegaIFn, direction, B0):
    A, B = hyperfineFromOrientation(tensor, direction)
    p = SpinParams(0.0, omegaIFn(B0), mhzToRad(A), mhzToRad(B))
    d = derive(p)
    return ScanRow(index, direction, B0, d.cancellationMismatch,
                   d.sinEtaBeta, A, B)


def cancellationScan(tensor, omegaIFn, grid, nThreads=None):
    """ Evaluate |A - 2 omegaI| over the grid and sort ascending, ties
    broken by grid index. omegaIFn maps B0 (T) to omegaI (rad/ns). """
    points = grid.points()
    checkValue('scan grid', points, NonEmpty, exceptionClass=EngineException)
    nThreads = Config.SPINCTL_SCAN_THREADS if nThreads is None else nThreads
    tasks = [(lambda i=i, d=d, b=b: _evaluatePoint(i, tensor, omegaIFn, d, b))
             for i, (d, b) in enumerate(points)]
    rows = getExecutor(nThreads).runTasks(tasks)
    logger.debug("Scanned %d grid points", len(rows))
    return sorted(rows, key=lambda r: (r.mismatch, r.index))

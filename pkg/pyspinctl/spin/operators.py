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
Dense 4x4 algebra for the S=1/2, I=1/2 pair in the Cartesian product
basis |aa>, |ab>, |ba>, |bb> (electron first, alpha = +1/2).

Matrices are plain complex numpy arrays of shape (4, 4). Frequencies are
angular, in rad/ns, so that H*t is dimensionless with t in ns.
"""

import numpy as np

from pyspinctl.config import Config
from pyspinctl.constants import PRODUCT_STATES
from pyspinctl.exceptions import ValidationException

# Operator labels
SX = 'Sx'
SY = 'Sy'
SZ = 'Sz'
IX = 'Ix'
IY = 'Iy'
IZ = 'Iz'
SZIZ = 'SzIz'
SZIX = 'SzIx'
SYIZ = 'SyIz'
SY24 = 'Sy24'
IDENTITY = 'identity'

OPERATOR_LABELS = (SX, SY, SZ, IX, IY, IZ, SZIZ, SZIX, SYIZ, SY24, IDENTITY)

_PAULI_HALF = {
    'x': np.array([[0, 1], [1, 0]], dtype=complex) / 2,
    'y': np.array([[0, -1j], [1j, 0]], dtype=complex) / 2,
    'z': np.array([[1, 0], [0, -1]], dtype=complex) / 2,
}
_ID2 = np.eye(2, dtype=complex)


def _frozen(m):
    m = np.array(m, dtype=complex)
    m.flags.writeable = False
    return m


def _electron(axis):
    return np.kron(_PAULI_HALF[axis], _ID2)


def _nuclear(axis):
    return np.kron(_ID2, _PAULI_HALF[axis])


def _buildTable():
    sx, sy, sz = _electron('x'), _electron('y'), _electron('z')
    ix, iy, iz = _nuclear('x'), _nuclear('y'), _nuclear('z')
    table = {
        SX: sx, SY: sy, SZ: sz,
        IX: ix, IY: iy, IZ: iz,
        SZIZ: sz @ iz,
        SZIX: sz @ ix,
        SYIZ: sy @ iz,
        SY24: 0.5 * sy - sy @ iz,
        IDENTITY: np.eye(4, dtype=complex),
    }
    return {k: _frozen(v) for k, v in table.items()}


_OPERATORS = _buildTable()


def buildOperator(name):
    """ Return the canonical matrix of the operator with the given label. """
    try:
        return _OPERATORS[name]
    except (KeyError, TypeError):
        raise ValidationException("Unknown spin operator '%s', valid labels "
                                  "are: %s" % (name, ', '.join(OPERATOR_LABELS)))


def asMatrix(m, name='matrix'):
    """ Convert to a complex 4x4 array checking shape and finiteness. """
    a = np.asarray(m, dtype=complex)
    if a.shape != (4, 4):
        raise ValidationException("%s should be 4x4, got shape %s"
                                  % (name, a.shape))
    if not np.all(np.isfinite(a)):
        raise ValidationException("%s has non finite entries" % name)
    return a


def dagger(m):
    return np.conj(m).T


def hermiticityError(m):
    return float(np.max(np.abs(m - dagger(m))))


def unitarityError(u):
    return float(np.max(np.abs(u @ dagger(u) - np.eye(len(u)))))


def isHermitian(m, tol=None):
    tol = Config.getStructTolerance() if tol is None else tol
    return hermiticityError(m) <= tol


def isUnitary(u, tol=None):
    tol = Config.getStructTolerance() if tol is None else tol
    return unitarityError(u) <= tol


def checkHermitian(m, name='H', tol=None):
    m = asMatrix(m, name)
    if not isHermitian(m, tol):
        raise ValidationException("%s is not Hermitian, max |H - H^+| = %g"
                                  % (name, hermiticityError(m)))
    return m


def checkUnitary(u, name='U', tol=None):
    u = asMatrix(u, name)
    tol = Config.getNumericTolerance() if tol is None else tol
    if not isUnitary(u, tol):
        raise ValidationException("%s is not unitary, max |UU^+ - 1| = %g"
                                  % (name, unitarityError(u)))
    return u


def expHermitian(H, t):
    """ exp(-i H t) through the eigendecomposition of the Hermitian H.
    H in rad/ns and t in ns. """
    H = checkHermitian(H)
    if not np.isfinite(t):
        raise ValidationException("Evolution time should be finite, got %s" % t)
    w, v = np.linalg.eigh(H)
    return (v * np.exp(-1j * w * t)) @ dagger(v)


def evolve(rho, U):
    """ Conjugate the state with a unitary: U rho U^+. """
    rho = asMatrix(rho, 'rho')
    U = checkUnitary(U)
    return U @ rho @ dagger(U)


def expectation(rho, O):
    """ Re Tr(rho O), the imaginary part is checked to be negligible. """
    rho = asMatrix(rho, 'rho')
    O = asMatrix(O, 'observable')
    value = np.trace(rho @ O)
    scale = max(1.0, float(np.max(np.abs(rho))) * float(np.max(np.abs(O))))
    if abs(value.imag) >= Config.getNumericTolerance() * scale:
        raise ValidationException("Expectation value has an imaginary part "
                                  "of %g, is the observable Hermitian?"
                                  % value.imag)
    return float(value.real)


def sigmaState(label):
    """ Projector onto one product basis state: 'aa', 'ab', 'ba' or 'bb'.
    sigmaState('ba') has its single 1 at row/column 3. """
    if label not in PRODUCT_STATES:
        raise ValidationException("Unknown product state '%s', valid labels "
                                  "are: %s" % (label, ', '.join(PRODUCT_STATES)))
    rho = np.zeros((4, 4), dtype=complex)
    k = PRODUCT_STATES.index(label)
    rho[k, k] = 1.0
    return rho


def thermalState():
    """ High temperature deviation density matrix, sigma0 = -Sz. """
    return -np.array(buildOperator(SZ))


def diagonalState(populations):
    return np.diag(np.asarray(populations, dtype=complex))


def populations(rho):
    return np.real(np.diag(rho)).copy()


def gateFidelity(V, W):
    """ Phase insensitive overlap |Tr(V^+ W)| / 4 of two unitaries. """
    V = asMatrix(V, 'V')
    W = asMatrix(W, 'W')
    return float(abs(np.trace(dagger(V) @ W)) / len(V))

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
Validators used to check the preconditions of the engine operations.
Each validator is callable and returns a list of error messages, empty
when the value is fine. Use checkValue to turn them into exceptions.
"""

import math

import numpy as np

from pyspinctl.exceptions import ValidationException, EngineException
from pyspinctl.utils import isPower2


class Validator(object):
    pass


class Conditional(Validator):
    """ Simple validation based on a condition.
    If the value doesn't meet the condition,
    the error will be returned.
    """
    def __init__(self, error, allowsNull=False):
        self.error = error
        self._allowsNull = allowsNull

    def __call__(self, value):
        errors = []
        if value is not None or not self._allowsNull:
            try:
                ok = self._condition(value)
            except (TypeError, ValueError):
                ok = False
            if not ok:
                errors.append(self.error)
        return errors


class Finite(Conditional):
    def __init__(self, error='Value should be a finite number'):
        Conditional.__init__(self, error)
        self._condition = lambda value: bool(np.all(np.isfinite(value)))


class NonEmptyCondition(Conditional):
    def __init__(self, error='Value cannot be empty'):
        Conditional.__init__(self, error)
        self._condition = lambda value: len(value) > 0


class LT(Conditional):
    def __init__(self, threshold,
                 error='Value should be less than the threshold'):
        Conditional.__init__(self, error)
        self._condition = lambda value: value < threshold


class GT(Conditional):
    def __init__(self, threshold,
                 error='Value should be greater than the threshold'):
        Conditional.__init__(self, error)
        self._condition = lambda value: value > threshold


class GE(Conditional):
    def __init__(self, threshold,
                 error='Value should be greater or equal than the threshold'):
        Conditional.__init__(self, error)
        self._condition = lambda value: value >= threshold


class OneOf(Conditional):
    def __init__(self, choices, error=None):
        Conditional.__init__(self, error or 'Value should be one of %s'
                             % ', '.join(str(c) for c in choices))
        self._condition = lambda value: value in choices


class PowerOfTwo(Conditional):
    def __init__(self, error='Value should be a power of two'):
        Conditional.__init__(self, error)
        self._condition = lambda value: int(value) == value and isPower2(int(value))


class UnitVector(Conditional):
    def __init__(self, tol=1e-9, error='Direction should be a unit vector'):
        Conditional.__init__(self, error)
        self._condition = lambda value: (
            np.shape(value) == (3,)
            and abs(math.sqrt(float(np.dot(value, value))) - 1.0) <= tol)


# --------- Some constants validators ---------------------

Positive = GT(0.0, error='Value should be greater than zero')

NonNegative = GE(0.0, error='Value should not be negative')

NonEmpty = NonEmptyCondition()

FiniteValue = Finite()


def checkValue(name, value, *validators, exceptionClass=ValidationException):
    """ Run the validators over value and raise with the first error,
    prefixed by the parameter name. """
    for validator in validators:
        errors = validator(value)
        if errors:
            raise exceptionClass('%s: %s (got %s)' % (name, errors[0], value))
    return value


def checkEngine(name, value, *validators):
    """ Same as checkValue, failures are engine preconditions. """
    return checkValue(name, value, *validators,
                      exceptionClass=EngineException)

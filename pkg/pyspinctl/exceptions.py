""" Module to define pyspinctl exceptions"""
from pyspinctl.constants import EXIT_INPUT_ERROR, EXIT_ENGINE_ERROR


class SpinctlException(Exception):
    """Root exception it has an extra attribute exitCode that is the
     status the command line returns when the error reaches it"""
    def __init__(self, *args, exitCode=EXIT_ENGINE_ERROR):
        self._exitCode = exitCode
        super().__init__(*args)

    def getExitCode(self):
        return self._exitCode


class ValidationException(SpinctlException):
    """ Invalid input value: bad label, non-Hermitian matrix, negative
    duration... """
    def __init__(self, *args, exitCode=EXIT_INPUT_ERROR):
        super().__init__(*args, exitCode=exitCode)


class ConfigException(SpinctlException):
    """ Missing or unreadable configuration. """
    def __init__(self, *args, exitCode=EXIT_INPUT_ERROR):
        super().__init__(*args, exitCode=exitCode)


class ParseException(SpinctlException):
    """ Sequence file could not be parsed, holds the diagnostics. """
    def __init__(self, diagnostics, origin=''):
        self._diagnostics = list(diagnostics)
        self._origin = origin
        first = self._diagnostics[0] if self._diagnostics else None
        super().__init__(str(first) if first else 'parse error',
                         exitCode=EXIT_INPUT_ERROR)

    def getDiagnostics(self):
        return self._diagnostics

    def getOrigin(self):
        return self._origin


class EngineException(SpinctlException):
    """ Engine precondition failed (too few samples, bad grid...). """
    pass

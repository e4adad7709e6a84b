import inspect
import os

from .constants import *

HOME = os.path.abspath(os.path.dirname(__file__))


def join(*paths):
    """ join paths from HOME . """
    return os.path.join(HOME, *paths)


def findResource(filename):
    """ Return the full path of a bundled resource file, or None. """
    path = join(RESOURCES, filename)
    return path if os.path.exists(path) else None


class Config:
    """ Main Config for pyspinctl. It contains the main configuration values
    providing default values or, if present, taking them from the environment.
    None of the variables is mandatory.
    """

    @staticmethod
    def __get(key, default):
        value = os.environ.get(key, default)
        # Expand user and variables if string value
        if isinstance(value, str):
            value = os.path.expandvars(os.path.expanduser(value))

        return value

    _get = __get.__func__

    # User dependent paths
    SPINCTL_USER_DATA = _get('SPINCTL_USER_DATA', '~/SpinctlUserData')

    # LOGS PATHS
    SPINCTL_LOGS = _get('SPINCTL_LOGS', os.path.join(SPINCTL_USER_DATA, 'logs'))
    SPINCTL_LOG = _get('SPINCTL_LOG', os.path.join(SPINCTL_LOGS, 'spinctl.log'))

    # Where the output of the tests will be stored
    SPINCTL_TESTS_OUTPUT = _get('SPINCTL_TESTS_OUTPUT',
                                os.path.join(SPINCTL_USER_DATA, 'Tests'))

    # Numerical tolerances: structural checks (hermiticity, unitarity)
    # and numerical equivalence checks
    SPINCTL_TOL_STRUCT = float(_get(SPINCTL_TOL_STRUCT, TOL_STRUCT_DEFAULT))
    SPINCTL_TOL_NUMERIC = float(_get(SPINCTL_TOL_NUMERIC, TOL_NUMERIC_DEFAULT))

    # Worker threads used by orientation scans
    SPINCTL_SCAN_THREADS = int(_get(SPINCTL_SCAN_THREADS, 1))

    # Seed for the baseline fit random restarts
    SPINCTL_SEED = int(_get(SPINCTL_SEED, 0))

    # ---- Getters ---- #
    @classmethod
    def getVars(cls):
        """ Return a dictionary with all variables defined
        in this Config.
        """
        configVars = dict()
        # For each variable, also in base classes
        for baseCls in inspect.getmro(cls):
            for name, value in vars(baseCls).items():
                # Skip methods and internal attributes starting with __
                # (e.g __doc__, __module__, etc)
                if (isinstance(value, (str, int, float))
                        and name.startswith('SPINCTL_')):
                    configVars[name] = str(value)
        return configVars

    @classmethod
    def printVars(cls):
        """ Print the variables dict, mostly for debugging. """
        from .utils import prettyDict
        prettyDict(cls.getVars())

    @classmethod
    def getStructTolerance(cls):
        return cls.SPINCTL_TOL_STRUCT

    @classmethod
    def getNumericTolerance(cls):
        return cls.SPINCTL_TOL_NUMERIC

    @classmethod
    def setTolerance(cls, numeric, struct=None):
        """ Override the tolerances for this process, --tolerance in the
        command line ends here. """
        cls.SPINCTL_TOL_NUMERIC = float(numeric)
        if struct is not None:
            cls.SPINCTL_TOL_STRUCT = float(struct)

    @staticmethod
    def debugOn(*args):
        from .utils import envVarOn
        return bool(envVarOn(SPINCTL_DEBUG, *args))

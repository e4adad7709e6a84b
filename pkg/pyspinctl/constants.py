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
This modules contains constants related to pyspinctl
"""
import math

# Versions
VERSION_0_1 = '0.1.0'
VERSION_0_2 = '0.2.0'

# For a new release, define a new constant and assign it to LAST_VERSION
# The existing one has to be added to OLD_VERSIONS list.
LAST_VERSION = VERSION_0_2
OLD_VERSIONS = (VERSION_0_1,)

# Dir names
RESOURCES = 'resources'

# Environment variables
SPINCTL_DEBUG = 'SPINCTL_DEBUG'
SPINCTL_TOL_STRUCT = 'SPINCTL_TOL_STRUCT'
SPINCTL_TOL_NUMERIC = 'SPINCTL_TOL_NUMERIC'
SPINCTL_SCAN_THREADS = 'SPINCTL_SCAN_THREADS'
SPINCTL_SEED = 'SPINCTL_SEED'

# Tolerance defaults
TOL_STRUCT_DEFAULT = 1e-12
TOL_NUMERIC_DEFAULT = 1e-10

# Unit conversions, internal frequencies are angular in rad/ns
TWO_PI = 2 * math.pi
MHZ_TO_RAD_NS = TWO_PI * 1e-3

# Proton gyromagnetic ratio, gamma/2pi in MHz/T
PROTON_GAMMA_MHZ_T = 42.577

# Transition and doublet labels
TRANSITION_12 = '12'
TRANSITION_34 = '34'
TRANSITION_13 = '13'
TRANSITION_24 = '24'
DOUBLET_2324 = '2324'
DOUBLET_1314 = '1314'

TRANSITIONS = (TRANSITION_12, TRANSITION_34, TRANSITION_13, TRANSITION_24)
ALLOWED_TRANSITIONS = (TRANSITION_13, TRANSITION_24)
NUCLEAR_TRANSITIONS = (TRANSITION_12, TRANSITION_34)
DOUBLETS = (DOUBLET_2324, DOUBLET_1314)
TARGETS = TRANSITIONS + DOUBLETS

# Pulse kinds
PULSE_IDEAL_SELECTIVE = 'ideal_selective'
PULSE_IDEAL_SEMISELECTIVE = 'ideal_semiselective'
PULSE_FINITE = 'finite'

# Resonance offset modes
OFFSET_AUTO_2324 = 'auto:2324'
OFFSET_AUTO_1314 = 'auto:1314'
OFFSET_MODES = (OFFSET_AUTO_2324, OFFSET_AUTO_1314)

# Product basis state labels, electron first
STATE_AA = 'aa'
STATE_AB = 'ab'
STATE_BA = 'ba'
STATE_BB = 'bb'
STATE_THERMAL = 'thermal'
PRODUCT_STATES = (STATE_AA, STATE_AB, STATE_BA, STATE_BB)
INITIAL_STATES = PRODUCT_STATES + (STATE_THERMAL,)

# Observables recorded in traces
OBS_IZ = 'Iz'
OBS_SX = 'Sx'
OBS_SZ = 'Sz'
OBS_POPULATIONS = ('p1', 'p2', 'p3', 'p4')
OBSERVABLES = (OBS_IZ, OBS_SX, OBS_SZ) + OBS_POPULATIONS
OBS_POPDIFF = 'popdiff'

# Blind spot warning: a line whose Mims factor is below this fraction of
# its maximum (2) is reported
BLIND_SPOT_FRACTION = 0.05

# Experiment defaults
FINITE_W1_MHZ = 15.6
FINITE_PI_LEN_NS = 32.0
FINITE_PI2_LEN_NS = 16.0
ESEEM_TAU_NS = 200.0
ESEEM_DT_NS = 8.0
ESEEM_N = 512
ESEEM_T_START_NS = 56.0
ESEEM_PULSES_FINITE = 'finite'
ESEEM_PULSES_IDEAL = 'ideal'

# Signal processing
BASELINE_BIEXP = 'biexp'
BASELINE_POLYEXP = 'polyexp'
BASELINE_POLY = 'poly'
BASELINE_NONE = 'none'
BASELINE_MODELS = (BASELINE_BIEXP, BASELINE_POLYEXP, BASELINE_POLY,
                   BASELINE_NONE)
WINDOW_SIGMA_FRACTION = 0.4
MIN_SPECTRAL_SAMPLES = 8

# CLI exit codes
EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_ENGINE_ERROR = 3

# Parser
MAX_DIAGNOSTICS = 20
SEVERITY_ERROR = 'error'
SEVERITY_WARNING = 'warning'
STDIN_ORIGIN = '<stdin>'

# Units accepted in sequence files
UNIT_MHZ = 'MHz'
UNIT_MT = 'mT'
UNIT_NS = 'ns'
UNIT_DEG = 'deg'
UNITS = (UNIT_MHZ, UNIT_MT, UNIT_NS, UNIT_DEG)

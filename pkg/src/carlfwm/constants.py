"""Physical constants (CODATA, via scipy) and unit factors.

Everything inside the package is SI. The factors below are only used at the
configuration / report boundary.
"""

from scipy import constants as _sc

HBAR = _sc.hbar
C = _sc.c
EPS0 = _sc.epsilon_0
KB = _sc.k
AMU = _sc.atomic_mass

# Cs-133
CS_MASS_AMU = 132.905451961

LENGTH_UNITS = {"m": 1.0, "cm": 1e-2, "mm": 1e-3, "um": 1e-6, "nm": 1e-9}
RATE_UNITS = {"1/s": 1.0}
ANGULAR_UNITS = {"rad/s": 1.0}
MASS_UNITS = {"kg": 1.0, "amu": AMU}
TEMPERATURE_UNITS = {"K": 1.0, "mK": 1e-3, "uK": 1e-6, "nK": 1e-9}
DENSITY_UNITS = {"1/m3": 1.0, "1/cm3": 1e6}
DIPOLE_UNITS = {"C*m": 1.0}

W_PER_CM2 = 1e4  # W/m^2 in one W/cm^2

"""Regular (a,b)-modules over C[[b]] with Gaussian-rational coefficients."""

from .errors import *  # noqa: F401,F403
from .scalars import I, ONE, ZERO, Scalar, parse_scalar
from .series import Series, parse_series, format_series

__version__ = "0.1.0"

"""Exact Carlitz calculus over local fields of positive characteristic.

Perfected Laurent-series arithmetic over F_Q with precision tracking, the
Carlitz operator ring with normal-form rewriting, a Cauchy solver for
evolution equations in Carlitz derivatives, and the associated
hypergeometric functions with their identities.

Parameters throughout are restricted to the perfection of a constant-field
extension F_{q^m}((x)): exponents in Z[1/q], coefficients in F_{q^m}.
Every quantity the calculus manipulates (brackets [n] for n in Z or inf,
their q-power roots, and rational expressions of these) lives there;
general elements of the completed algebraic closure are out of scope.
"""

from .errors import (
    CarlitzError, InadmissibleError, NotInvertibleError,
    ParameterMismatchError, ParseError, PrecisionError, UsageError,
)
from .ffield import FFElement, FieldParams
from .series import INF, AtLeast, PerfSeries
from .brackets import (
    INFINITY, bracket, carlitz_D, carlitz_L, pochhammer,
    pochhammer_thakur, shift_down, shift_up,
)

__all__ = [
    "CarlitzError", "InadmissibleError", "NotInvertibleError",
    "ParameterMismatchError", "ParseError", "PrecisionError", "UsageError",
    "FFElement", "FieldParams", "INF", "AtLeast", "PerfSeries",
    "INFINITY", "bracket", "carlitz_D", "carlitz_L", "pochhammer",
    "pochhammer_thakur", "shift_down", "shift_up",
]

__version__ = "0.1.0"

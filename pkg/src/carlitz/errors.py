"""Exception hierarchy shared by all carlitz modules.

Errors split into two families: usage errors (bad arguments, mismatched
field configurations) and mathematical refusals (inadmissible parameters,
values indistinguishable from zero at the working precision).  The CLI maps
refusals to exit code 1 and usage errors to exit code 2.
"""


class CarlitzError(Exception):
    """Base class for all library errors."""

    reason_code = "error"


class ParameterMismatchError(CarlitzError):
    """Operands belong to different field configurations or variable counts."""

    reason_code = "parameter-mismatch"


class UsageError(CarlitzError):
    """Malformed argument (wrong type, out-of-range index, bad mode)."""

    reason_code = "usage"


class NotInvertibleError(CarlitzError):
    """Series has no invertible leading term at its stated precision."""

    reason_code = "not-invertible"


class PrecisionError(CarlitzError):
    """A value is zero at its precision but not known to be exactly zero."""

    reason_code = "indeterminate-at-precision"


class InadmissibleError(CarlitzError):
    """A lower parameter coincides with a bracket value, or an evolution
    equation fails its admissibility condition."""

    reason_code = "inadmissible"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(CarlitzError):
    """Syntax error in a series, operator, or file format.

    ``span`` is a (start, end) pair of character offsets into the source.
    """

    reason_code = "syntax"

    def __init__(self, message, span=None):
        if span is not None:
            message = "%s (at %d..%d)" % (message, span[0], span[1])
        super().__init__(message)
        self.span = span

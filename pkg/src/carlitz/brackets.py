"""Basic Carlitz quantities over F_Q((x)) and its perfection.

The bracket [n] = x^(q^n) - x is the function-field analog of the integer
n; [0] = 0 and the limit point is [inf] = -x.  Negative indices make sense
inside the perfection, where q^n = 1/q^|n| is a legal exponent.  From the
brackets come the two factorials

    D_n = [n] [n-1]^q ... [1]^(q^(n-1))      (with D_0 = 1)
    L_n = [n] [n-1] ... [1]                  (with L_0 = 1)

and two shifted-factorial ("Pochhammer") symbols: the classical-integer
one with the three-case definition, and the field-parameter one

    <a>_m = ([0]-a)^(q^m) ([1]-a)^(q^(m-1)) ... ([m-1]-a)^q,   <a>_0 = 1,

which satisfies <a>_(m+1) = ([m]-a)^q <a>_m^q.  The unit parameter shifts

    T_up(a) = (a - [1])^(1/q),     T_down(a) = a^q + [1]

are mutually inverse and extend the integer shift: T_up([-n]) = [-n-1].

D_n, L_n and the brackets are memoized per field configuration (bounded
caches on the FieldParams instance; entries are immutable, so concurrent
reads are safe and a racing recompute is benign).
"""

from __future__ import annotations

from .errors import UsageError
from .series import INF, PerfSeries
from .ffield import FieldParams

#: Index value for the limit bracket [inf] = -x.
INFINITY = INF


def bracket(params: FieldParams, n) -> PerfSeries:
    """[n] = x^(q^n) - x for integer n (any sign); [inf] = -x; [0] = 0."""
    if n == INFINITY:
        return PerfSeries.monomial(params, 1, -1)
    if not isinstance(n, int):
        raise UsageError("bracket index must be an integer or INFINITY")
    cache = params.bracket_cache
    if n in cache:
        return cache[n]
    from fractions import Fraction
    e = Fraction(params.q) ** n
    result = PerfSeries.from_terms(params, {e: 1}) - PerfSeries.x(params)
    if abs(n) <= params.cache_limit:
        cache[n] = result
    return result


def carlitz_D(params: FieldParams, n: int) -> PerfSeries:
    """D_n, computed through D_n = [n] * D_(n-1)^q; D_0 = 1."""
    if n < 0:
        raise UsageError("D_n needs n >= 0")
    cache = params.d_cache
    if n in cache:
        return cache[n]
    if n == 0:
        result = PerfSeries.one(params)
    else:
        result = bracket(params, n) * carlitz_D(params, n - 1).frobenius(1)
    if n <= params.cache_limit:
        cache[n] = result
    return result


def carlitz_L(params: FieldParams, n: int) -> PerfSeries:
    """L_n = [n][n-1]...[1]; L_0 = 1."""
    if n < 0:
        raise UsageError("L_n needs n >= 0")
    cache = params.l_cache
    if n in cache:
        return cache[n]
    if n == 0:
        result = PerfSeries.one(params)
    else:
        result = bracket(params, n) * carlitz_L(params, n - 1)
    if n <= params.cache_limit:
        cache[n] = result
    return result


def pochhammer_thakur(params: FieldParams, alpha: int, n: int,
                      prec=None) -> PerfSeries:
    """The integer-parameter Pochhammer symbol (alpha)_n.

    Three cases: D_(n+alpha-1)^(q^(1-alpha)) for alpha >= 1;
    (-1)^(n-alpha) L_(-alpha-n)^(-q^n) for alpha <= 0 with n <= -alpha;
    and 0 for alpha <= 0 with n > -alpha.

    The middle case inverts L, whose reciprocal is an infinite series when
    the L-index is positive; ``prec`` (absolute output precision) controls
    that inversion and defaults to the standard invert window.
    """
    if n < 0:
        raise UsageError("(alpha)_n needs n >= 0")
    if alpha >= 1:
        return carlitz_D(params, n + alpha - 1).frobenius(-(alpha - 1))
    if n > -alpha:
        return PerfSeries.zero(params)
    ell = carlitz_L(params, -alpha - n)
    value = ell.frobenius(n).invert(prec=prec)
    if (n - alpha) % 2:
        value = -value
    return value


def pochhammer(a: PerfSeries, m: int, mode: str = "direct") -> PerfSeries:
    """The field-parameter symbol <a>_m; exact when ``a`` is exact.

    mode="direct" multiplies the m Frobenius-twisted factors; with
    mode="recurrent" the recurrence <a>_(m+1) = ([m]-a)^q <a>_m^q is
    iterated instead.  The two must agree exactly.
    """
    if m < 0:
        raise UsageError("<a>_m needs m >= 0")
    params = a.params
    if mode == "direct":
        result = PerfSeries.one(params)
        for k in range(m):
            result = result * (bracket(params, k) - a).frobenius(m - k)
        return result
    if mode == "recurrent":
        result = PerfSeries.one(params)
        for k in range(m):
            result = (bracket(params, k) - a).frobenius(1) * result.frobenius(1)
        return result
    raise UsageError("mode must be 'direct' or 'recurrent', got %r" % (mode,))


def shift_up(a: PerfSeries) -> PerfSeries:
    """T_up(a) = (a - [1])^(1/q); sends [-n] to [-n-1]."""
    return (a - bracket(a.params, 1)).frobenius(-1)


def shift_down(a: PerfSeries) -> PerfSeries:
    """T_down(a) = a^q + [1]; inverse of shift_up."""
    return a.frobenius(1) + bracket(a.params, 1)

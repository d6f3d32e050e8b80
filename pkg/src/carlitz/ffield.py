"""Exact arithmetic in the coefficient field F_Q, Q = p^(v*m).

A :class:`FieldParams` fixes the prime p, the Carlitz parameter q = p^v,
the constant-field extension degree m, and an irreducible modulus of degree
v*m over Z/p.  Field elements are residues modulo that modulus; internally
they are encoded as integers (base-p digit strings), and all arithmetic is
table driven: a discrete-log/exp pair for multiplication and per-power
Frobenius tables.  Fields this small (Q <= a few thousand) make the tables
essentially free and every coefficient operation O(1).

The q-power Frobenius ``frob`` is the central structural map: it permutes
F_Q, so q-th roots always exist and are unique, which is what makes the
perfection arithmetic in :mod:`carlitz.series` exact.
"""

from __future__ import annotations

from .errors import UsageError

# Build a full Q x Q addition table only below this size; beyond it,
# addition falls back to digitwise base-p arithmetic.
_ADD_TABLE_LIMIT = 512


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# dense polynomial helpers over Z/p (used only for setup and validation)
# ---------------------------------------------------------------------------

def _poly_trim(a):
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a, mod, p):
    a = [c % p for c in a]
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], -1, p)
    while len(a) > dm:
        if a[-1] == 0:
            a.pop()
            continue
        f = a[-1] * inv_lead % p
        sh = len(a) - 1 - dm
        for i, c in enumerate(mod):
            a[sh + i] = (a[sh + i] - f * c) % p
        a.pop()
    a += [0] * (dm - len(a))
    return a


def _poly_mulmod(a, b, mod, p):
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _poly_rem(res, mod, p)


def _poly_powmod(base, e, mod, p):
    r = _poly_rem([1], mod, p)
    b = _poly_rem(list(base), mod, p)
    while e:
        if e & 1:
            r = _poly_mulmod(r, b, mod, p)
        b = _poly_mulmod(b, b, mod, p)
        e >>= 1
    return r


def _poly_gcd(a, b, p):
    a = _poly_trim([c % p for c in a])
    b = _poly_trim([c % p for c in b])
    while b != [0]:
        dm = len(b) - 1
        inv_lead = pow(b[-1], -1, p)
        r = a[:]
        while len(r) - 1 >= dm and r != [0]:
            if r[-1] == 0:
                r.pop()
                r = r or [0]
                continue
            f = r[-1] * inv_lead % p
            sh = len(r) - 1 - dm
            for i, c in enumerate(b):
                r[sh + i] = (r[sh + i] - f * c) % p
            r.pop()
            r = r or [0]
        a, b = b, _poly_trim(r)
    return a


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_irreducible(mod, p):
    """Rabin irreducibility test for a monic polynomial over Z/p.

    Degree-1 polynomials are always irreducible; otherwise require
    x^(p^n) = x mod f together with gcd(x^(p^(n/l)) - x, f) = 1 for every
    prime l dividing n.  For degree <= 4 this in particular rules out
    linear and quadratic factors, subsuming the no-roots quick check.
    """
    n = len(mod) - 1
    if n == 1:
        return True
    # quick reject: a root in F_p gives a linear factor
    for a in range(p):
        if sum(c * pow(a, i, p) for i, c in enumerate(mod)) % p == 0:
            return False
    x = [0, 1]
    xpn = _poly_powmod(x, p ** n, mod, p)
    target = _poly_rem(x, mod, p)
    if xpn != target:
        return False
    for ell in _prime_factors(n):
        xq = _poly_powmod(x, p ** (n // ell), mod, p)
        diff = _poly_trim([(c - t) % p for c, t in zip(xq, target)])
        g = _poly_gcd(diff, mod, p)
        if len(g) - 1 > 0:
            return False
    return True


# Shipped moduli (ascending coefficients, monic) keyed by (p, degree).
# All verified irreducible by _is_irreducible at import of the test suite.
DEFAULT_MODULI = {
    (2, 1): (0, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (3, 1): (0, 1),
    (3, 2): (1, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (5, 1): (0, 1),
    (5, 2): (2, 0, 1),
}

_DEFAULT_QV = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 8: (2, 3), 9: (3, 2)}

_params_cache: dict = {}


class FieldParams:
    """Field configuration: coefficient field F_Q with Carlitz parameter q.

    Immutable after construction.  Elements of F_Q are referred to by
    integer index (base-p digits of the residue); the wrapper class
    :class:`FFElement` carries an index together with its params.
    """

    __slots__ = (
        "p", "v", "m", "modulus", "q", "Q", "deg",
        "_exp", "_log", "_neg", "_frob", "_add_table",
        "zero_idx", "one_idx", "minus_one_idx", "gen_idx",
        "d_cache", "l_cache", "bracket_cache", "cache_limit",
    )

    def __init__(self, p: int, v: int, m: int, modulus=None):
        if not _is_prime(p):
            raise UsageError("p must be prime, got %r" % (p,))
        if v < 1 or m < 1:
            raise UsageError("v and m must be positive integers")
        self.p = p
        self.v = v
        self.m = m
        self.q = p ** v
        self.deg = v * m
        self.Q = p ** self.deg
        if modulus is None:
            try:
                modulus = DEFAULT_MODULI[(p, self.deg)]
            except KeyError:
                raise UsageError(
                    "no shipped modulus for p=%d, degree %d; pass one explicitly"
                    % (p, self.deg))
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != self.deg + 1 or modulus[-1] == 0:
            raise UsageError(
                "modulus must be monic of degree exactly %d" % self.deg)
        if modulus[-1] != 1:
            inv = pow(modulus[-1], -1, p)
            modulus = tuple(c * inv % p for c in modulus)
        if not _is_irreducible(list(modulus), p):
            raise UsageError("modulus %r is reducible over F_%d" % (modulus, p))
        self.modulus = modulus
        self._build_tables()
        self.d_cache = {}
        self.l_cache = {}
        self.bracket_cache = {}
        self.cache_limit = 64

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def default(q: int, m: int = 1) -> "FieldParams":
        """The shipped configuration for Carlitz parameter q and extension m."""
        key = (q, m)
        if key not in _params_cache:
            if q not in _DEFAULT_QV:
                raise UsageError(
                    "no shipped configuration for q=%d (have %s); "
                    "construct FieldParams(p, v, m, modulus) directly"
                    % (q, sorted(_DEFAULT_QV)))
            p, v = _DEFAULT_QV[q]
            _params_cache[key] = FieldParams(p, v, m)
        return _params_cache[key]

    # -- table construction --------------------------------------------------

    def _coeffs_of(self, idx):
        out = []
        for _ in range(self.deg):
            idx, r = divmod(idx, self.p)
            out.append(r)
        return out

    def _idx_of(self, coeffs):
        idx = 0
        for c in reversed(coeffs):
            idx = idx * self.p + (c % self.p)
        return idx

    def _build_tables(self):
        p, Q, deg, mod = self.p, self.Q, self.deg, list(self.modulus)
        self.zero_idx = 0
        self.one_idx = 1
        self.minus_one_idx = self._idx_of([p - 1] + [0] * (deg - 1))

        def mul_raw(a, b):
            pa = self._coeffs_of(a)
            pb = self._coeffs_of(b)
            return self._idx_of(_poly_mulmod(pa, pb, mod, p))

        # negation table
        self._neg = [self._idx_of([(-c) % p for c in self._coeffs_of(i)])
                     for i in range(Q)]

        # find the least primitive element and build exp/log tables
        order_target = Q - 1
        factors = _prime_factors(order_target) if order_target > 1 else []
        gen = None
        for cand in range(1, Q):
            ok = True
            for ell in factors:
                e = order_target // ell
                acc = 1
                b = cand
                while e:
                    if e & 1:
                        acc = mul_raw(acc, b)
                    b = mul_raw(b, b)
                    e >>= 1
                if acc == 1:
                    ok = False
                    break
            if ok:
                gen = cand
                break
        self.gen_idx = gen if gen is not None else 1
        exp = [1] * max(order_target, 1)
        cur = 1
        for k in range(1, order_target):
            cur = mul_raw(cur, self.gen_idx)
            exp[k] = cur
        log = [0] * Q
        for k, val in enumerate(exp):
            log[val] = k
        self._exp = exp
        self._log = log

        # addition table (small fields only)
        if Q <= _ADD_TABLE_LIMIT:
            tbl = []
            for a in range(Q):
                ca = self._coeffs_of(a)
                row = []
                for b in range(Q):
                    cb = self._coeffs_of(b)
                    row.append(self._idx_of([(x + y) % p for x, y in zip(ca, cb)]))
                tbl.append(row)
            self._add_table = tbl
        else:
            self._add_table = None

        # frob[e][i] = i^(q^e) for e in 0..m-1 (q^m is the identity on F_Q)
        frob = [list(range(Q))]
        for _ in range(1, self.m):
            prev = frob[-1]
            frob.append([self.pow_int(prev[i], self.q) for i in range(Q)])
        self._frob = frob

    # -- low level integer-index arithmetic ----------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add_table is not None:
            return self._add_table[a][b]
        p = self.p
        ca = self._coeffs_of(a)
        cb = self._coeffs_of(b)
        return self._idx_of([(x + y) % p for x, y in zip(ca, cb)])

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        n = self.Q - 1
        return self._exp[(self._log[a] + self._log[b]) % n]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.Q)
        n = self.Q - 1
        return self._exp[(-self._log[a]) % n]

    def pow_int(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        n = self.Q - 1
        return self._exp[(self._log[a] * e) % n] if n else 1

    def frob(self, a: int, e: int) -> int:
        """a^(q^e) for any integer e; for e < 0 this is the unique q^|e|-th root."""
        return self._frob[e % self.m][a]

    def from_int(self, k: int) -> int:
        """Image of the rational integer k in F_Q (reduction mod p)."""
        k %= self.p
        acc = 0
        for _ in range(k):
            acc = self.add(acc, 1)
        return acc

    def dlog(self, a: int) -> int:
        """Discrete log base the canonical generator; a must be nonzero."""
        if a == 0:
            raise ZeroDivisionError("dlog of zero")
        return self._log[a]

    # -- wrapper and misc ----------------------------------------------------

    def element(self, coeffs) -> "FFElement":
        coeffs = list(coeffs) + [0] * (self.deg - len(coeffs))
        if len(coeffs) != self.deg:
            raise UsageError("expected at most %d coefficients" % self.deg)
        return FFElement(self, self._idx_of(coeffs))

    def zero(self) -> "FFElement":
        return FFElement(self, 0)

    def one(self) -> "FFElement":
        return FFElement(self, 1)

    def gen(self) -> "FFElement":
        """The canonical multiplicative generator g of F_Q^*."""
        return FFElement(self, self.gen_idx)

    def coeff_str(self, idx: int) -> str:
        """Canonical text for a coefficient: integer for prime fields,
        a power g^j of the generator otherwise."""
        if self.deg == 1:
            return str(self._coeffs_of(idx)[0])
        if idx == 0:
            return "0"
        if idx == 1:
            return "1"
        j = self._log[idx]
        return "g" if j == 1 else "g^%d" % j

    def __eq__(self, other):
        return (isinstance(other, FieldParams)
                and (self.p, self.v, self.m, self.modulus)
                == (other.p, other.v, other.m, other.modulus))

    def __hash__(self):
        return hash((self.p, self.v, self.m, self.modulus))

    def __repr__(self):
        return "FieldParams(p=%d, v=%d, m=%d)" % (self.p, self.v, self.m)


class FFElement:
    """An element of the coefficient field F_Q, always reduced.

    Thin wrapper over an integer index; arithmetic delegates to the
    parent's tables.  Supports +, -, *, /, ** and ``frob`` for q-power
    maps in both directions.
    """

    __slots__ = ("params", "idx")

    def __init__(self, params: FieldParams, idx: int):
        self.params = params
        self.idx = idx

    @property
    def coeffs(self):
        return tuple(self.params._coeffs_of(self.idx))

    def _check(self, other):
        if not isinstance(other, FFElement):
            raise UsageError("expected FFElement, got %r" % type(other))
        if other.params != self.params:
            from .errors import ParameterMismatchError
            raise ParameterMismatchError("elements of different fields")

    def __add__(self, other):
        self._check(other)
        return FFElement(self.params, self.params.add(self.idx, other.idx))

    def __sub__(self, other):
        self._check(other)
        return FFElement(self.params, self.params.sub(self.idx, other.idx))

    def __neg__(self):
        return FFElement(self.params, self.params.neg(self.idx))

    def __mul__(self, other):
        self._check(other)
        return FFElement(self.params, self.params.mul(self.idx, other.idx))

    def __truediv__(self, other):
        self._check(other)
        return FFElement(self.params, self.params.mul(self.idx, self.params.inv(other.idx)))

    def __pow__(self, e):
        return FFElement(self.params, self.params.pow_int(self.idx, e))

    def frob(self, e: int = 1) -> "FFElement":
        return FFElement(self.params, self.params.frob(self.idx, e))

    def __bool__(self):
        return self.idx != 0

    def __eq__(self, other):
        return (isinstance(other, FFElement) and self.params == other.params
                and self.idx == other.idx)

    def __hash__(self):
        return hash((self.params, self.idx))

    def __repr__(self):
        return "FFElement(%s)" % self.params.coeff_str(self.idx)

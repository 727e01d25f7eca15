"""Finite-field arithmetic for GF(q) and GF(q^m), plus dense linear algebra.

Elements are plain Python ints.  An element of an extension field of degree
d over a subfield with ``o`` elements is the integer whose base-``o`` digits
(little-endian) are its coordinates in the polynomial basis 1, x, ..., x^(d-1).
For towers this nests: GF(q^m) elements are base-q integers whose digits are
GF(q) elements, which are themselves base-p integers when q = p^e.

The modulus of every extension is the lexicographically smallest monic
irreducible polynomial of the right degree, coefficients compared from the
constant term upward, so identical (q, m) always yield identical arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exceptions import DimensionMismatch, NotAPrimePower

_LOG_TABLE_MAX_ORDER = 4096  # exp/log tables built eagerly below this order


def factor_prime_power(q: int):
    """Return (p, e) with q = p^e, or raise NotAPrimePower."""
    if q < 2:
        raise NotAPrimePower(f"{q} is not a prime power")
    p = None
    d = 2
    n = q
    while d * d <= n:
        if n % d == 0:
            p = d
            break
        d += 1
    if p is None:
        return q, 1  # q itself prime
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise NotAPrimePower(f"{q} is not a prime power")
    return p, e


class PrimeField:
    """GF(p) with arithmetic mod p."""

    def __init__(self, p: int):
        self.order = p
        self.char = p
        self.char2 = p == 2

    def add(self, a, b):
        return (a + b) % self.order

    def sub(self, a, b):
        return (a - b) % self.order

    def neg(self, a):
        return -a % self.order

    def mul(self, a, b):
        return a * b % self.order

    def inv(self, a):
        if a % self.order == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.order - 2, self.order)

    def pow(self, a, k):
        return pow(a, k, self.order)

    def digits(self, a):
        return (a,)

    def __repr__(self):
        return f"GF({self.order})"


class ExtensionField:
    """GF(o^deg) built over a subfield with o elements.

    ``modulus`` is the little-endian coefficient tuple of the monic degree-deg
    modulus polynomial (length deg + 1, top coefficient 1).
    """

    def __init__(self, sub, deg: int, modulus=None):
        self.subfield = sub
        self.deg = deg
        self.order = sub.order**deg
        self.char = sub.char
        self.char2 = sub.char == 2
        if modulus is None:
            modulus = _smallest_irreducible(sub, deg)
        self.modulus = tuple(modulus)
        assert len(self.modulus) == deg + 1 and self.modulus[-1] == 1
        self._suborder = sub.order
        # q=2 fast path: elements are bit-polynomials, modulus packed as an int
        self._gf2 = sub.order == 2
        self._mod_int = None
        if self._gf2:
            self._mod_int = sum(c << i for i, c in enumerate(self.modulus))
        self._exp = None
        self._log = None
        if self.order <= _LOG_TABLE_MAX_ORDER:
            self._build_log_tables()

    # -- packing -------------------------------------------------------

    def digits(self, a):
        """Little-endian coordinate digits of a in the polynomial basis."""
        o = self._suborder
        out = []
        for _ in range(self.deg):
            a, r = divmod(a, o)
            out.append(r)
        return tuple(out)

    def from_digits(self, digits):
        o = self._suborder
        a = 0
        for c in reversed(digits):
            a = a * o + c
        return a

    # -- arithmetic ----------------------------------------------------

    def add(self, a, b):
        if self.char2:
            return a ^ b
        sub = self.subfield
        o = self._suborder
        out = 0
        shift = 1
        for _ in range(self.deg):
            out += sub.add(a % o, b % o) * shift
            a //= o
            b //= o
            shift *= o
        return out

    def sub(self, a, b):
        if self.char2:
            return a ^ b
        sub = self.subfield
        o = self._suborder
        out = 0
        shift = 1
        for _ in range(self.deg):
            out += sub.sub(a % o, b % o) * shift
            a //= o
            b //= o
            shift *= o
        return out

    def neg(self, a):
        if self.char2:
            return a
        sub = self.subfield
        o = self._suborder
        out = 0
        shift = 1
        for _ in range(self.deg):
            out += sub.neg(a % o) * shift
            a //= o
            shift *= o
        return out

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_raw(a, b)

    def _mul_raw(self, a, b):
        if self._gf2:
            return _gf2_mulmod(a, b, self._mod_int, self.deg)
        da = self.digits(a)
        db = self.digits(b)
        sub = self.subfield
        conv = [0] * (2 * self.deg - 1)
        for i, ca in enumerate(da):
            if ca == 0:
                continue
            for j, cb in enumerate(db):
                if cb:
                    conv[i + j] = sub.add(conv[i + j], sub.mul(ca, cb))
        # reduce by the monic modulus
        for i in range(len(conv) - 1, self.deg - 1, -1):
            c = conv[i]
            if c == 0:
                continue
            conv[i] = 0
            for j in range(self.deg):
                mj = self.modulus[j]
                if mj:
                    conv[i - self.deg + j] = sub.sub(
                        conv[i - self.deg + j], sub.mul(c, mj)
                    )
        return self.from_digits(conv[: self.deg])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self._exp is not None:
            return self._exp[self.order - 1 - self._log[a]]
        if self._gf2:
            return _gf2_inv(a, self._mod_int)
        return _poly_inv(self.digits(a), self.modulus, self.subfield, self)

    def pow(self, a, k):
        if k < 0:
            return self.pow(self.inv(a), -k)
        r = 1
        while k:
            if k & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            k >>= 1
        return r

    def _build_log_tables(self):
        n = self.order - 1
        factors = _prime_factors(n)
        g = None
        if n == 1:
            g = 1
        else:
            for cand in range(2, self.order):
                if all(self._pow_raw(cand, n // p) != 1 for p in factors):
                    g = cand
                    break
        assert g is not None, "multiplicative group must be cyclic"
        exp = [0] * (2 * n)
        log = [0] * self.order
        v = 1
        for i in range(n):
            exp[i] = v
            exp[i + n] = v
            log[v] = i
            v = self._mul_raw(v, g)
        self._exp = exp
        self._log = log

    def _pow_raw(self, a, k):
        r = 1
        while k:
            if k & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            k >>= 1
        return r

    def __repr__(self):
        return f"GF({self._suborder}^{self.deg})"


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


# -- GF(2)[x] helpers on bit-packed ints --------------------------------


def _gf2_mulmod(a, b, mod, deg):
    r = 0
    top = 1 << deg
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= mod
    return r


def _gf2_divmod(a, b):
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def _gf2_inv(a, mod):
    # extended Euclid over GF(2)[x]
    r0, r1 = mod, a
    s0, s1 = 0, 1
    while r1 > 1:
        q, r = _gf2_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 ^ _gf2_clmul(q, s1)
    if r1 == 0:
        raise ZeroDivisionError("element not invertible")
    return s1


def _gf2_clmul(a, b):
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
    return r


# -- generic polynomial helpers over a subfield --------------------------


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b, f):
    a = list(a)
    db = len(b) - 1
    inv_lead = f.inv(b[-1])
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == 0:
            continue
        coef = f.mul(c, inv_lead)
        q[i - db] = coef
        for j, bj in enumerate(b):
            if bj:
                a[i - db + j] = f.sub(a[i - db + j], f.mul(coef, bj))
    return _poly_trim(q), _poly_trim(a)


def _poly_mul(a, b, f):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            if cb:
                out[i + j] = f.add(out[i + j], f.mul(ca, cb))
    return _poly_trim(out)


def _poly_sub(a, b, f):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for j, cb in enumerate(b):
        if cb:
            out[j] = f.sub(out[j], cb)
    return _poly_trim(out)


def _poly_inv(a_digits, modulus, f, ext):
    r0, r1 = list(modulus), _poly_trim(list(a_digits))
    s0, s1 = [], [1]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1, f)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, f), f)
    if not r1:
        raise ZeroDivisionError("element not invertible")
    lead_inv = f.inv(r1[0])
    s1 = [f.mul(lead_inv, c) for c in s1]
    s1 += [0] * (ext.deg - len(s1))
    return ext.from_digits(s1)


# -- irreducibility -------------------------------------------------------


def _poly_powmod_x(exponent, modulus, f):
    """x^exponent mod modulus over the coefficient field f."""
    result = [1]
    base = [0, 1]
    base = _poly_divmod(base, list(modulus), f)[1] if len(modulus) <= 2 else base
    e = exponent
    while e:
        if e & 1:
            result = _poly_divmod(_poly_mul(result, base, f), list(modulus), f)[1]
        base = _poly_divmod(_poly_mul(base, base, f), list(modulus), f)[1]
        e >>= 1
    return result


def _poly_gcd(a, b, f):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_divmod(a, b, f)[1]
    return a


def is_irreducible(coeffs, f) -> bool:
    """Rabin's deterministic test for a monic polynomial over the field f.

    ``coeffs`` is little-endian of degree m >= 1 with top coefficient 1.
    """
    m = len(coeffs) - 1
    if m == 1:
        return True
    q = f.order
    mod = list(coeffs)
    # x^(q^m) == x mod f
    xqm = _poly_powmod_x(q**m, mod, f)
    if _poly_trim(_poly_sub(xqm, [0, 1], f)):
        return False
    for p in _prime_factors(m):
        xqk = _poly_powmod_x(q ** (m // p), mod, f)
        g = _poly_gcd(_poly_sub(xqk, [0, 1], f), mod, f)
        if len(g) != 1:
            return False
    return True


def _smallest_irreducible(sub, deg):
    """Lex-smallest monic irreducible of the given degree over ``sub``.

    Coefficients are compared from the constant term upward.  For deg >= 2 a
    zero constant term forces divisibility by x, so the search starts at
    constant term 1.
    """
    q = sub.order
    if deg == 1:
        return (0, 1)
    import itertools

    for c0 in range(1, q):
        for rest in itertools.product(range(q), repeat=deg - 1):
            cand = (c0,) + rest + (1,)
            if is_irreducible(cand, sub):
                return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


# -- field context --------------------------------------------------------


class FieldContext:
    """Arithmetic for GF(q) and GF(q^m) with a fixed polynomial basis.

    ``base`` operates on GF(q) elements, ``ext`` on GF(q^m) elements.  The
    basis of GF(q^m) over GF(q) is 1, alpha, ..., alpha^(m-1) where alpha is
    the residue of x; as packed integers these are q^0, ..., q^(m-1).
    GF(q) embeds into GF(q^m) as the integers 0..q-1 unchanged.
    """

    def __init__(self, q: int, m: int):
        if m < 1:
            raise NotAPrimePower(f"extension degree must be positive, got {m}")
        p, e = factor_prime_power(q)
        self.q = q
        self.p = p
        self.e = e
        self.m = m
        self.base = PrimeField(p) if e == 1 else ExtensionField(PrimeField(p), e)
        self.ext = ExtensionField(self.base, m)
        self.order = self.ext.order
        self.modulus = self.ext.modulus
        self.basis = tuple(q**i for i in range(m))
        # sanity: basis expands to the identity, hence is independent
        assert all(self.ext.digits(b)[i] == 1 for i, b in enumerate(self.basis))

    def digits(self, a):
        """Coordinates of a GF(q^m) element in the fixed basis."""
        return self.ext.digits(a)

    def from_digits(self, digits):
        return self.ext.from_digits(digits)

    def expand(self, xs) -> "Matrix":
        """Expansion map GF(q^m)^r -> GF(q)^(m x r); column i expands xs[i]."""
        cols = [self.ext.digits(x) for x in xs]
        data = [[cols[i][j] for i in range(len(xs))] for j in range(self.m)]
        return Matrix(self.base, data, rows=self.m, cols=len(xs))

    def rank_of_elements(self, xs) -> int:
        """GF(q)-rank of a tuple of GF(q^m) elements."""
        if self.base.order == 2:
            return gf2_rank(xs)
        return self.expand(xs).rank()

    def __repr__(self):
        return f"FieldContext(q={self.q}, m={self.m})"


@lru_cache(maxsize=None)
def make_field(q: int, m: int) -> FieldContext:
    """Build (and cache) the field context for GF(q^m) over GF(q)."""
    return FieldContext(q, m)


def gf2_rank(rows) -> int:
    """Rank over GF(2) of bit-packed row vectors."""
    pivots = {}
    r = 0
    for v in rows:
        while v:
            hb = v.bit_length()
            w = pivots.get(hb)
            if w is None:
                pivots[hb] = v
                r += 1
                break
            v ^= w
    return r


# -- dense matrices --------------------------------------------------------


@dataclass
class LinearSolution:
    """Outcome of solve_linear: status is 'unique', 'none' or 'many'."""

    status: str
    x: tuple | None = None


class Matrix:
    """Dense matrix over a field object (PrimeField or ExtensionField)."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, data, rows=None, cols=None):
        self.field = field
        self.data = [list(r) for r in data]
        self.rows = len(self.data) if rows is None else rows
        self.cols = (len(self.data[0]) if self.data else 0) if cols is None else cols
        assert all(len(r) == self.cols for r in self.data)

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, [[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    def copy(self):
        return Matrix(self.field, self.data, self.rows, self.cols)

    def transpose(self):
        data = [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return Matrix(self.field, data, self.cols, self.rows)

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.cols} != {other.rows}")
        f = self.field
        out = Matrix.zeros(f, self.rows, other.cols)
        for i in range(self.rows):
            row = self.data[i]
            orow = out.data[i]
            for k in range(self.cols):
                a = row[k]
                if a == 0:
                    continue
                brow = other.data[k]
                for j in range(other.cols):
                    b = brow[j]
                    if b:
                        orow[j] = f.add(orow[j], f.mul(a, b))
        return out

    def mul_vec(self, vec):
        """Matrix times column vector, returned as a tuple."""
        if self.cols != len(vec):
            raise DimensionMismatch(f"{self.cols} != {len(vec)}")
        f = self.field
        out = []
        for i in range(self.rows):
            acc = 0
            row = self.data[i]
            for k, v in enumerate(vec):
                if v and row[k]:
                    acc = f.add(acc, f.mul(row[k], v))
            out.append(acc)
        return tuple(out)

    def stack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols and other.rows:
            raise DimensionMismatch("column counts differ")
        return Matrix(self.field, self.data + other.data, self.rows + other.rows, self.cols)

    def rref(self):
        """Reduced row echelon form; returns (matrix, pivot column list)."""
        f = self.field
        a = [list(r) for r in self.data]
        pivots = []
        r = 0
        for c in range(self.cols):
            # partial pivot by first nonzero
            pr = None
            for i in range(r, self.rows):
                if a[i][c] != 0:
                    pr = i
                    break
            if pr is None:
                continue
            a[r], a[pr] = a[pr], a[r]
            inv = f.inv(a[r][c])
            if inv != 1:
                a[r] = [f.mul(inv, v) for v in a[r]]
            for i in range(self.rows):
                if i != r and a[i][c] != 0:
                    coef = a[i][c]
                    a[i] = [f.sub(a[i][j], f.mul(coef, a[r][j])) for j in range(self.cols)]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return Matrix(f, a, self.rows, self.cols), pivots

    def rank(self) -> int:
        if self.field.order == 2 and self.cols <= 512:
            packed = [sum(1 << j for j, v in enumerate(row) if v) for row in self.data]
            return gf2_rank(packed)
        f = self.field
        a = [list(r) for r in self.data]
        rank = 0
        for c in range(self.cols):
            pr = None
            for i in range(rank, self.rows):
                if a[i][c] != 0:
                    pr = i
                    break
            if pr is None:
                continue
            a[rank], a[pr] = a[pr], a[rank]
            inv = f.inv(a[rank][c])
            for i in range(rank + 1, self.rows):
                if a[i][c] != 0:
                    coef = f.mul(a[i][c], inv)
                    a[i] = [f.sub(a[i][j], f.mul(coef, a[rank][j])) for j in range(c, self.cols)]
                    a[i] = [0] * c + a[i]
            rank += 1
            if rank == self.rows:
                break
        return rank

    def right_kernel_basis(self):
        """Basis (list of row tuples) of {x : self . x^T = 0}."""
        rr, pivots = self.rref()
        f = self.field
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            v = [0] * self.cols
            v[fc] = 1
            for r, pc in enumerate(pivots):
                v[pc] = f.neg(rr.data[r][fc])
            basis.append(tuple(v))
        return basis

    def row_tuples(self):
        return tuple(tuple(r) for r in self.data)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.data!r})"


def rank(m: Matrix) -> int:
    """Gaussian-elimination rank of a matrix over GF(q) or GF(q^m)."""
    return m.rank()


def solve_linear(a: Matrix, b) -> LinearSolution:
    """Solve a . x = b exactly.

    Returns Unique(x) iff the system is consistent with rank(a) = cols,
    'many' for a consistent rank-deficient system, 'none' when inconsistent.
    """
    if len(b) != a.rows:
        raise DimensionMismatch(f"rhs length {len(b)} != {a.rows} rows")
    f = a.field
    aug = Matrix(f, [list(a.data[i]) + [b[i]] for i in range(a.rows)], a.rows, a.cols + 1)
    rr, pivots = aug.rref()
    if a.cols in pivots:
        return LinearSolution("none")
    if len(pivots) < a.cols:
        return LinearSolution("many")
    x = [0] * a.cols
    for r, pc in enumerate(pivots):
        x[pc] = rr.data[r][a.cols]
    return LinearSolution("unique", tuple(x))

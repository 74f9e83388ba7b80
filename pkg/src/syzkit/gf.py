"""Exact arithmetic in GF(p^a) with integer-encoded elements.

An element c_0 + c_1 x + ... + c_{a-1} x^{a-1} of GF(p)[x]/(f) is stored as
the integer sum c_i p^i.  All arithmetic entry points accept Python ints or
numpy integer arrays and return the same kind of object.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

MAX_ORDER = 1 << 20
LOG_TABLE_LIMIT = 1 << 16
ADD_TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


# ----------------------------------------------------------------------------
# integers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
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


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, a) with q = p^a, or raise."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = prime_factors(q)
    if len(p) != 1:
        raise FieldError(f"{q} is not a prime power")
    a, r = 0, q
    while r > 1:
        r //= p[0]
        a += 1
    return p[0], a


# ----------------------------------------------------------------------------
# polynomials over the prime field, coefficient tuples from the constant term up


def _gfp_trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _gfp_mod(f, g, p):
    f = _gfp_trim(f)
    g = _gfp_trim(g)
    inv = pow(g[-1], p - 2, p) if p > 2 else 1
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        c = (f[-1] * inv) % p
        shift = len(f) - 1 - dg
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
        f = _gfp_trim(f)
    return f


def _gf2_int(f) -> int:
    return sum(1 << i for i, c in enumerate(f) if c & 1)


def _gf2_mod_int(f: int, g: int) -> int:
    dg = g.bit_length() - 1
    while f and f.bit_length() - 1 >= dg:
        f ^= g << (f.bit_length() - 1 - dg)
    return f


def is_irreducible_gfp(f, p: int) -> bool:
    """Trial division of f by every monic polynomial of degree <= deg(f)/2."""
    f = _gfp_trim(f)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if p == 2:
        fi = _gf2_int(f)
        for d in range(1, n // 2 + 1):
            for low in range(1 << d):
                if _gf2_mod_int(fi, (1 << d) | low) == 0:
                    return False
        return True
    for d in range(1, n // 2 + 1):
        for code in range(p**d):
            g = [(code // p**i) % p for i in range(d)] + [1]
            if not _gfp_mod(f, g, p):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, a: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree a, ordered by the integer sum c_i p^i."""
    for low in range(p**a):
        f = [(low // p**i) % p for i in range(a)] + [1]
        if is_irreducible_gfp(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {a} over GF({p})")  # pragma: no cover


# ----------------------------------------------------------------------------
# fields


class Field:
    """The field GF(p)[x]/(modulus).  Immutable; obtain instances via make_field."""

    def __init__(self, p: int, a: int, modulus: tuple[int, ...]):
        self.p = p
        self.a = a
        self.q = p**a
        self.modulus = tuple(int(c) for c in modulus)
        self.char2 = p == 2
        self._modint = _gf2_int(self.modulus) if self.char2 else None
        self._digits = np.array([p**i for i in range(a)], dtype=np.int64)
        self._exp = None
        self._log = None
        self._add_table = None
        self._neg_table = None
        if not self.char2 and a > 1 and self.q <= ADD_TABLE_LIMIT:
            x = np.arange(self.q, dtype=np.int64)
            dx = self.to_digits(x)
            s = (dx[:, None, :] + dx[None, :, :]) % p
            self._add_table = (s * self._digits).sum(axis=2)
            self._neg_table = (((-dx) % p) * self._digits).sum(axis=1)
        self.gen = self._find_generator()
        if self.q <= LOG_TABLE_LIMIT:
            self._build_tables()

    # -- identity ---------------------------------------------------------
    def __repr__(self):
        return f"GF({self.p}^{self.a})" if self.a > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.a, self.modulus) == (
            other.p,
            other.a,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.a, self.modulus))

    def descriptor(self) -> str:
        return " ".join(str(v) for v in (self.p, self.a, *self.modulus))

    @property
    def dtype(self):
        return np.uint8 if self.q <= 256 else (np.uint16 if self.q <= 65536 else np.uint32)

    # -- raw single-element multiplication (no tables) --------------------
    def _mul_raw(self, x: int, y: int) -> int:
        if self.char2:
            r = 0
            while y:
                if y & 1:
                    r ^= x
                y >>= 1
                x <<= 1
            return _gf2_mod_int(r, self._modint)
        p, a = self.p, self.a
        dx = [(x // p**i) % p for i in range(a)]
        dy = [(y // p**i) % p for i in range(a)]
        prod = [0] * (2 * a - 1)
        for i, u in enumerate(dx):
            if u:
                for j, v in enumerate(dy):
                    prod[i + j] += u * v
        prod = [c % p for c in prod]
        r = _gfp_mod(prod, self.modulus, p)
        return sum(c * p**i for i, c in enumerate(r))

    def _pow_raw(self, x: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, x)
            x = self._mul_raw(x, x)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        facs = prime_factors(self.q - 1)
        for g in range(2, self.q):
            if all(self._pow_raw(g, (self.q - 1) // f) != 1 for f in facs):
                return g
        raise FieldError("no generator")  # pragma: no cover

    def _build_tables(self):
        q = self.q
        exp = np.zeros(2 * q, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        v = 1
        for i in range(q - 1):
            exp[i] = v
            log[v] = i
            v = self._mul_raw(v, self.gen)
        exp[q - 1 : 2 * (q - 1)] = exp[: q - 1]
        self._exp = exp
        self._log = log

    # -- digit helpers ------------------------------------------------------
    def to_digits(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        return (x[..., None] // self._digits) % self.p

    def from_digits(self, d) -> np.ndarray:
        d = np.asarray(d, dtype=np.int64) % self.p
        return (d * self._digits).sum(axis=-1)

    @property
    def has_tables(self) -> bool:
        return self._exp is not None

    @property
    def exp_table(self):
        return self._exp

    @property
    def log_table(self):
        return self._log

    # -- vectorized arithmetic ---------------------------------------------
    @staticmethod
    def _wrap(res, scalar):
        return int(res) if scalar else res

    def add(self, x, y):
        scalar = np.isscalar(x) and np.isscalar(y)
        if self.char2:
            return self._wrap(np.bitwise_xor(x, y), scalar)
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.a == 1:
            return self._wrap((x + y) % self.p, scalar)
        if self._add_table is not None:
            return self._wrap(self._add_table[x, y], scalar)
        return self._wrap(self.from_digits(self.to_digits(x) + self.to_digits(y)), scalar)

    def neg(self, x):
        scalar = np.isscalar(x)
        if self.char2:
            return x
        x = np.asarray(x, dtype=np.int64)
        if self.a == 1:
            return self._wrap((-x) % self.p, scalar)
        if self._neg_table is not None:
            return self._wrap(self._neg_table[x], scalar)
        return self._wrap(self.from_digits(-self.to_digits(x)), scalar)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        scalar = np.isscalar(x) and np.isscalar(y)
        if scalar and self.a == 1:
            return (int(x) * int(y)) % self.p
        if self._exp is not None:
            x = np.asarray(x, dtype=np.int64)
            y = np.asarray(y, dtype=np.int64)
            lx = self._log[x]
            ly = self._log[y]
            res = np.where((x == 0) | (y == 0), 0, self._exp[(lx + ly) % (self.q - 1)])
            return self._wrap(res, scalar)
        if scalar:
            return self._mul_raw(int(x), int(y))
        x, y = np.broadcast_arrays(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64))
        if self.char2:
            return self._clmul_vec(x, y)
        flat = np.array([self._mul_raw(int(u), int(v)) for u, v in zip(x.ravel(), y.ravel())])
        return flat.reshape(x.shape)

    def _clmul_vec(self, x, y):
        r = np.zeros(x.shape, dtype=np.int64)
        for i in range(self.a):
            r ^= np.where((y >> i) & 1, x << i, 0)
        m = self._modint
        for d in range(2 * self.a - 2, self.a - 1, -1):
            r ^= np.where((r >> d) & 1, m << (d - self.a), 0)
        return r

    def pow(self, x, e: int):
        scalar = np.isscalar(x)
        if self._exp is not None:
            x = np.asarray(x, dtype=np.int64)
            if e == 0:
                return self._wrap(np.ones_like(x), scalar)
            if e < 0:
                if np.any(x == 0):
                    raise ZeroDivisionError("division by zero")
            lx = self._log[x]
            res = np.where(x == 0, 0, self._exp[(lx * (e % (self.q - 1))) % (self.q - 1)])
            return self._wrap(res, scalar)
        if e < 0:
            return self.pow(self.inv(x), -e)
        r = 1 if scalar else np.ones_like(np.asarray(x, dtype=np.int64))
        base = x
        while e:
            if e & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            e >>= 1
        return r

    def inv(self, x):
        scalar = np.isscalar(x)
        if np.any(np.asarray(x) == 0):
            raise ZeroDivisionError("division by zero")
        if self._exp is not None:
            x = np.asarray(x, dtype=np.int64)
            return self._wrap(self._exp[(self.q - 1 - self._log[x]) % (self.q - 1)], scalar)
        return self.pow(x, self.q - 2)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def frobenius(self, x, q_sub: int, i: int = 1):
        """x -> x^(q_sub^i); q_sub must be a power of the characteristic."""
        if q_sub % self.p:
            raise FieldError("Frobenius base must be a power of the characteristic")
        e = pow(q_sub, i, self.q - 1) if self.q > 2 else 1
        if e == 0:
            e = self.q - 1
        return self.pow(x, e)

    # -- conveniences ----------------------------------------------------
    def element(self, v: int) -> "FieldElement":
        return FieldElement(self, v)

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def random(self, rng, size=None, nonzero=False):
        lo = 1 if nonzero else 0
        return rng.integers(lo, self.q, size=size, dtype=np.int64)

    def dot(self, x, y):
        s = 0
        for u, v in zip(np.asarray(x).ravel(), np.asarray(y).ravel()):
            s = self.add(s, self.mul(int(u), int(v)))
        return s


@lru_cache(maxsize=None)
def _make_field_cached(p, a, modulus):
    return Field(p, a, modulus)


def make_field(p: int, a: int = 1, modulus=None) -> Field:
    """Build GF(p^a).  Without a modulus the canonical (smallest) irreducible is used."""
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if a < 1:
        raise FieldError("degree must be positive")
    if p**a > MAX_ORDER:
        raise FieldError(f"field order {p}^{a} exceeds {MAX_ORDER}")
    if modulus is None:
        modulus = default_modulus(p, a)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != a + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree a")
        if not is_irreducible_gfp(modulus, p):
            raise FieldError("reducible modulus")
    return _make_field_cached(p, a, modulus)


def field_of_order(q: int) -> Field:
    p, a = prime_power(q)
    return make_field(p, a)


def parse_field_descriptor(line: str) -> Field:
    vals = [int(v) for v in line.split()]
    p, a = vals[0], vals[1]
    return make_field(p, a, tuple(vals[2:]))


# ----------------------------------------------------------------------------
# elements


class FieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        value = int(value)
        if not 0 <= value < field.q:
            raise FieldError(f"{value} is not an element of {field}")
        self.field = field
        self.value = value

    def _other(self, o):
        if isinstance(o, FieldElement):
            if o.field != self.field:
                raise FieldError("field mismatch")
            return o.value
        return int(o) % self.field.p if self.field.a == 1 else int(o)

    def __add__(self, o):
        return FieldElement(self.field, self.field.add(self.value, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return FieldElement(self.field, self.field.sub(self.value, self._other(o)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, o):
        return FieldElement(self.field, self.field.mul(self.value, self._other(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return FieldElement(self.field, self.field.div(self.value, self._other(o)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, int(e)))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, o):
        if isinstance(o, FieldElement):
            return self.field == o.field and self.value == o.value
        return self.value == o

    def __hash__(self):
        return hash((self.field, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value}@{self.field!r}"


def field_arith(op: str, x: FieldElement, y=None) -> FieldElement:
    """Dispatch helper: op in {add, sub, mul, div, inv, pow}."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "inv":
        return x.inverse()
    if op == "pow":
        return x ** int(y)
    raise FieldError(f"unknown operation {op}")


# ----------------------------------------------------------------------------
# towers


class SubfieldEmbedding:
    """GF(q) inside GF(q^m), both realized in the polynomial basis of their own moduli.

    The image of the small field's variable is the smallest-encoded root of the
    small modulus inside {0} U <g^((Q-1)/(q-1))>, g the big field's generator.
    The basis of the big field over the small one is 1, x, ..., x^(m-1).
    """

    def __init__(self, small: Field, big: Field):
        if small.p != big.p or big.a % small.a:
            raise FieldError(f"{small} is not a subfield of {big}")
        self.small = small
        self.big = big
        self.m = big.a // small.a
        q, Q = small.q, big.q
        if small.a == 1:
            root = 0
        else:
            h = big._pow_raw(big.gen, (Q - 1) // (q - 1))
            cands = [0]
            v = 1
            for _ in range(q - 1):
                cands.append(v)
                v = big._mul_raw(v, h)
            roots = []
            for z in cands:
                acc = 0
                for c in reversed(small.modulus):
                    acc = big.add(big._mul_raw(acc, z), c)
                if acc == 0:
                    roots.append(z)
            root = min(roots)
        self.root = root
        powers = [1]
        for _ in range(1, small.a):
            powers.append(big._mul_raw(powers[-1], root))
        table = np.zeros(q, dtype=np.int64)
        for v in range(q):
            acc = 0
            for i in range(small.a):
                c = (v // small.p**i) % small.p
                if c:
                    acc = big.add(acc, big._mul_raw(c, powers[i]))
            table[v] = acc
        self.table = table
        self.basis = [big.p**j for j in range(self.m)]
        # column (j, i) holds the GF(p) digits of root^i * x^j
        n = big.a
        T = np.zeros((n, n), dtype=np.int64)
        for j in range(self.m):
            for i in range(small.a):
                T[:, j * small.a + i] = big.to_digits(big._mul_raw(powers[i], self.basis[j]))
        self._T = T
        self._Tinv = _gfp_inverse(T, big.p)
        self._small_digits = np.array([small.p**i for i in range(small.a)], dtype=np.int64)

    def inject(self, v):
        scalar = np.isscalar(v)
        r = self.table[np.asarray(v, dtype=np.int64)]
        return int(r) if scalar else r

    def expand(self, z) -> np.ndarray:
        """Coordinates of z (scalar or array) over the small field; trailing axis of length m."""
        d = self.big.to_digits(z)
        c = (d @ self._Tinv.T) % self.big.p
        c = c.reshape(c.shape[:-1] + (self.m, self.small.a))
        return (c * self._small_digits).sum(axis=-1)

    def recombine(self, coeffs) -> np.ndarray:
        coeffs = np.asarray(coeffs, dtype=np.int64)
        acc = np.zeros(coeffs.shape[:-1], dtype=np.int64)
        for j in range(self.m):
            acc = self.big.add(acc, self.big.mul(self.inject(coeffs[..., j]), self.basis[j]))
        return acc


def _gfp_inverse(T, p):
    n = T.shape[0]
    A = np.concatenate([T % p, np.eye(n, dtype=np.int64)], axis=1)
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if A[i, c] % p), None)
        if piv is None:
            raise FieldError("singular basis matrix")
        A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), p - 2, p)) % p
        for i in range(n):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        r += 1
    return A[:, n:]


def frobenius(x: FieldElement, q_sub: int, i: int = 1) -> FieldElement:
    return FieldElement(x.field, x.field.frobenius(x.value, q_sub, i))


def subfield_expand(emb: SubfieldEmbedding, z: FieldElement) -> list[FieldElement]:
    if z.field != emb.big:
        raise FieldError("element does not belong to the big field")
    return [FieldElement(emb.small, int(c)) for c in emb.expand(z.value)]


# ----------------------------------------------------------------------------
# polynomials over a Field: int64 coefficient arrays, constant term first


def poly_trim(f) -> np.ndarray:
    f = np.asarray(f, dtype=np.int64)
    nz = np.nonzero(f)[0]
    return f[: nz[-1] + 1] if len(nz) else f[:0]


def poly_deg(f) -> int:
    return len(poly_trim(f)) - 1


def poly_add(F: Field, f, g):
    n = max(len(f), len(g))
    a = np.zeros(n, dtype=np.int64)
    b = np.zeros(n, dtype=np.int64)
    a[: len(f)] = f
    b[: len(g)] = g
    return poly_trim(F.add(a, b))


def poly_sub(F: Field, f, g):
    return poly_add(F, f, F.neg(np.asarray(g, dtype=np.int64)))


def poly_mul(F: Field, f, g):
    f = poly_trim(f)
    g = poly_trim(g)
    if not len(f) or not len(g):
        return np.zeros(0, dtype=np.int64)
    out = np.zeros(len(f) + len(g) - 1, dtype=np.int64)
    for i, c in enumerate(f):
        if c:
            out[i : i + len(g)] = F.add(out[i : i + len(g)], F.mul(int(c), g))
    return poly_trim(out)


def poly_divmod(F: Field, f, g):
    f = poly_trim(f).copy()
    g = poly_trim(g)
    if not len(g):
        raise ZeroDivisionError("division by zero polynomial")
    dg = len(g) - 1
    inv_lead = F.inv(int(g[-1]))
    if len(f) - 1 < dg:
        return np.zeros(0, dtype=np.int64), f
    quo = np.zeros(len(f) - dg, dtype=np.int64)
    for d in range(len(f) - 1, dg - 1, -1):
        c = int(f[d])
        if c:
            c = F.mul(c, inv_lead)
            quo[d - dg] = c
            f[d - dg : d + 1] = F.sub(f[d - dg : d + 1], F.mul(c, g))
    return poly_trim(quo), poly_trim(f[:dg])


def poly_mod(F: Field, f, g):
    return poly_divmod(F, f, g)[1]


def poly_monic(F: Field, f):
    f = poly_trim(f)
    if not len(f):
        return f
    return F.mul(F.inv(int(f[-1])), f)


def poly_gcd(F: Field, f, g):
    f = poly_trim(f)
    g = poly_trim(g)
    while len(g):
        f, g = g, poly_mod(F, f, g)
    return poly_monic(F, f)


def poly_deriv(F: Field, f):
    f = poly_trim(f)
    if len(f) <= 1:
        return np.zeros(0, dtype=np.int64)
    out = np.zeros(len(f) - 1, dtype=np.int64)
    for i in range(1, len(f)):
        c = int(f[i])
        k = i % F.p
        s = 0
        for _ in range(k):
            s = F.add(s, c)
        out[i - 1] = s
    return poly_trim(out)


def poly_eval(F: Field, f, x):
    """Horner evaluation of f at every entry of x."""
    x = np.asarray(x, dtype=np.int64)
    acc = np.zeros(x.shape, dtype=np.int64)
    for c in reversed(poly_trim(f)):
        acc = F.add(F.mul(acc, x), int(c))
    return acc


def poly_powmod(F: Field, f, e: int, g):
    result = np.array([1], dtype=np.int64)
    base = poly_mod(F, f, g)
    while e:
        if e & 1:
            result = poly_mod(F, poly_mul(F, result, base), g)
        base = poly_mod(F, poly_mul(F, base, base), g)
        e >>= 1
    return result


def is_irreducible(F: Field, g) -> bool:
    """Ben-Or test: gcd(g, x^(Q^i) - x) = 1 for 1 <= i <= deg(g)/2."""
    g = poly_monic(F, g)
    t = len(g) - 1
    if t < 1:
        return False
    if t == 1:
        return True
    x = np.array([0, 1], dtype=np.int64)
    h = x
    for _ in range(t // 2):
        h = poly_powmod(F, h, F.q, g)
        d = poly_gcd(F, g, poly_sub(F, h, x))
        if len(d) > 1:
            return False
    return True


def is_squarefree(F: Field, g) -> bool:
    d = poly_deriv(F, g)
    if not len(d):
        return False
    return len(poly_gcd(F, g, d)) == 1


def find_irreducible(F: Field, t: int, rng, mode: str = "irr", max_tries: int = 10**6):
    """Uniform random monic degree-t polynomial over F, by rejection on the requested property."""
    if t < 1:
        raise FieldError("degree must be positive")
    for _ in range(max_tries):
        g = np.concatenate([F.random(rng, size=t), [1]]).astype(np.int64)
        if mode == "any":
            return g
        if mode == "irr" and is_irreducible(F, g):
            return g
        if mode == "sqfr" and is_squarefree(F, g):
            return g
    raise FieldError("rejection cap exceeded in find_irreducible")

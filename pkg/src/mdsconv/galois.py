"""Exact arithmetic in GF(p) and GF(p^N).

Elements are stored as canonical integer indices: for a prime field the index
is the representative in [0, p); for an extension field with coefficient
vector (c_0, ..., c_{N-1}) it is sum(c_i * p**i). Index 0 is always the zero
element and index 1 the identity, for every field.

Deterministic choices, fixed once so that constructions and code files are
reproducible:

* default modulus: the lowest monic irreducible polynomial of degree N,
  comparing coefficient lists degree-descending (the conventional table
  order, e.g. x^4+x+1 for GF(16));
* element enumeration: increasing canonical index, i.e. lexicographic on
  coefficient vectors read from the highest degree down (``find_*`` helpers
  return the first element of the enumeration that qualifies).
"""

from __future__ import annotations

import itertools
from array import array

from .errors import (
    DegreeMismatch,
    DivisionByZero,
    EvenOrderField,
    FactorizationUnavailable,
    FieldMismatch,
    NotPrime,
    OrderNotDividing,
    ParamDomain,
    ReducibleModulus,
    ZeroElement,
)

# Fields up to this order get dense lookup tables (used by the hot kernels).
TABLE_LIMIT = 2048

# Direct factoring is only attempted below this; beyond it the caller must
# supply the prime factors of q - 1.
_FACTOR_LIMIT = 1 << 64


# ---------------------------------------------------------------------------
# integer number theory: primality, factoring (trial division + Pollard rho)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin, deterministic for n < 3.3e24 with the fixed base set."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of composite n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    from math import gcd

    seed = 1
    while True:
        y, c, m = seed, seed + 2, 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
        seed += 1


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: multiplicity}."""
    factors: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _pollard_brent(m)
        stack.append(d)
        stack.append(m // d)
    return factors


def prime_power(m: int):
    """(p, e) with m = p**e if m is a prime power, else None."""
    if m < 2:
        return None
    f = factorize(m)
    if len(f) != 1:
        return None
    return next(iter(f.items()))


# ---------------------------------------------------------------------------
# polynomial arithmetic over GF(p), used for moduli and extension fields

def _ptrim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmul_mod_p(a, b, p):
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _ptrim(res)


def _prem(a, m, p):
    """Remainder of a modulo monic m, coefficients in GF(p)."""
    a = a[:]
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1]
        if c:
            off = len(a) - 1 - dm
            for j in range(dm + 1):
                a[off + j] = (a[off + j] - c * m[j]) % p
        a.pop()
    return _ptrim(a)


def _pgcd(a, b, p):
    a, b = a[:], b[:]
    while b:
        # make b monic before reducing
        lead_inv = pow(b[-1], -1, p)
        bm = [x * lead_inv % p for x in b]
        a, b = bm, _prem(a, bm, p)
    return a


def _ppow_mod(base, e, m, p):
    result = [1]
    base = _prem(base, m, p)
    while e:
        if e & 1:
            result = _prem(_pmul_mod_p(result, base, p), m, p)
        base = _prem(_pmul_mod_p(base, base, p), m, p)
        e >>= 1
    return result


# bit-packed variants for GF(2)[x]; bit i is the coefficient of x^i

def _pmul2(a: int, b: int) -> int:
    res = 0
    while b:
        if b & 1:
            res ^= a
        a <<= 1
        b >>= 1
    return res


def _prem2(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    da = a.bit_length() - 1
    while da >= dm:
        a ^= m << (da - dm)
        da = a.bit_length() - 1
    return a


def _pgcd2(a: int, b: int) -> int:
    while b:
        a, b = b, _prem2(a, b)
    return a


def _ppow_mod2(base: int, e: int, m: int) -> int:
    result = 1
    base = _prem2(base, m)
    while e:
        if e & 1:
            result = _prem2(_pmul2(result, base), m)
        base = _prem2(_pmul2(base, base), m)
        e >>= 1
    return result


def poly_is_irreducible(coeffs, p: int) -> bool:
    """Rabin's test for a monic polynomial over GF(p)."""
    n = len(coeffs) - 1
    if n < 1 or coeffs[-1] % p != 1:
        raise DegreeMismatch("polynomial must be monic of degree >= 1")
    if n == 1:
        return True
    if p == 2:
        m = 0
        for i, c in enumerate(coeffs):
            if c & 1:
                m |= 1 << i
        x = 2
        if _ppow_mod2(x, 1 << n, m) != x:
            return False
        for r in factorize(n):
            h = _ppow_mod2(x, 1 << (n // r), m) ^ x
            if _pgcd2(h, m).bit_length() - 1 > 0:
                return False
        return True
    m = [c % p for c in coeffs]
    x = [0, 1]
    if _prem(x, m, p) != _ppow_mod(x, p**n, m, p):
        return False
    for r in factorize(n):
        h = _ppow_mod(x, p ** (n // r), m, p)
        diff = _ptrim([(a - b) % p for a, b in itertools.zip_longest(h, x, fillvalue=0)])
        g = _pgcd(diff, m, p) if diff else m
        if len(g) - 1 > 0:
            return False
    return True


_MODULUS_CACHE: dict[tuple[int, int], tuple[int, ...]] = {}


def default_modulus(p: int, n: int) -> tuple[int, ...]:
    """First monic irreducible of degree n over GF(p).

    Candidates are compared by their coefficient list read degree-descending,
    which reproduces the conventional table choices (x^4+x+1 for GF(16),
    x^3+x+1 for GF(8)). The returned tuple is little-endian.
    """
    key = (p, n)
    if key not in _MODULUS_CACHE:
        for high in itertools.product(range(p), repeat=n):
            if high[-1] == 0:
                continue  # constant term zero: divisible by x
            cand = list(reversed(high)) + [1]
            if poly_is_irreducible(cand, p):
                _MODULUS_CACHE[key] = tuple(cand)
                break
        else:
            raise ReducibleModulus(f"no irreducible of degree {n} over GF({p})")
    return _MODULUS_CACHE[key]


# ---------------------------------------------------------------------------
# fields and elements

class Field:
    """A finite field GF(p^N) with canonical integer element indices."""

    def __init__(self, p: int, N: int = 1, modulus=None, q_minus_1_factors=None):
        if not is_prime(p):
            raise NotPrime(p)
        if N < 1:
            raise ParamDomain(f"extension degree must be >= 1, got {N}")
        self.p = p
        self.N = N
        self.q = p**N
        if N == 1:
            self.modulus = None
        elif modulus is None:
            self.modulus = default_modulus(p, N)
        else:
            mod = tuple(int(c) % p for c in modulus)
            if len(mod) != N + 1 or mod[-1] != 1:
                raise DegreeMismatch(
                    f"modulus must be monic of degree {N}, got {list(modulus)}"
                )
            if not poly_is_irreducible(list(mod), p):
                raise ReducibleModulus(f"{list(modulus)} is reducible over GF({p})")
            self.modulus = mod
        if q_minus_1_factors is not None:
            self.q_minus_1_factors = tuple(sorted(int(f) for f in q_minus_1_factors))
            self._check_supplied_factors()
        else:
            self.q_minus_1_factors = None
        if p == 2 and N > 1:
            self._mpack = sum(1 << i for i, c in enumerate(self.modulus) if c)
        self._primitive_idx = None
        self._tables = None
        self._q1_primes = None

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.N == other.N
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.N, self.modulus))

    def __repr__(self):
        if self.N == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.N})"

    # -- index arithmetic ------------------------------------------------------

    def _digits(self, idx: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.N):
            idx, d = divmod(idx, p)
            out.append(d)
        return out

    def _pack(self, digits) -> int:
        idx = 0
        for d in reversed(list(digits)):
            idx = idx * self.p + d
        return idx

    def add(self, a: int, b: int) -> int:
        if self.N == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        return self._pack((x + y) % p for x, y in zip(self._digits(a), self._digits(b)))

    def sub(self, a: int, b: int) -> int:
        if self.N == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        return self._pack((x - y) % p for x, y in zip(self._digits(a), self._digits(b)))

    def neg(self, a: int) -> int:
        if self.N == 1:
            return -a % self.p
        if self.p == 2:
            return a
        p = self.p
        return self._pack(-x % p for x in self._digits(a))

    def mul(self, a: int, b: int) -> int:
        if self.N == 1:
            return a * b % self.p
        if self.p == 2:
            res = 0
            mpack = self._mpack
            topbit = 1 << self.N
            while b:
                if b & 1:
                    res ^= a
                b >>= 1
                a <<= 1
                if a & topbit:
                    a ^= mpack
            return res
        prod = _pmul_mod_p(self._digits(a), self._digits(b), self.p)
        rem = _prem(prod, list(self.modulus), self.p)
        rem += [0] * (self.N - len(rem))
        return self._pack(rem)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self!r}")
        if self.N == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        """a**e with an exact (arbitrarily large) integer exponent."""
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        e %= self.q - 1
        if self.N == 1:
            return pow(a, e, self.p)
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # -- elements and enumeration ---------------------------------------------

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value!r} does not belong to {self!r}")
            return value
        if isinstance(value, int):
            if self.N == 1:
                return FieldElement(self, value % self.p)
            if not 0 <= value < self.q:
                raise ParamDomain(
                    f"index {value} out of range for {self!r}; pass a coefficient list"
                )
            return FieldElement(self, value)
        digits = [int(c) % self.p for c in value]
        if len(digits) > self.N:
            raise DegreeMismatch(f"coefficient vector longer than {self.N}")
        digits += [0] * (self.N - len(digits))
        return FieldElement(self, self._pack(digits))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def enumerate_indices(self):
        """All element indices in the canonical enumeration order.

        Indices increase, which orders coefficient vectors lexicographically
        from the highest-degree coefficient down; for N = 1 this is simply
        0, 1, ..., p-1.
        """
        return iter(range(self.q))

    def coeffs_of(self, idx: int) -> tuple[int, ...]:
        return tuple(self._digits(idx))

    def repr_of(self, idx: int):
        """JSON representation: int for a prime field, coefficient list otherwise."""
        if self.N == 1:
            return idx
        return list(self._digits(idx))

    def index_of_repr(self, rep) -> int:
        return self.element(rep).val

    # -- factorization of the multiplicative group order ------------------------

    def _check_supplied_factors(self):
        m = self.q - 1
        for r in self.q_minus_1_factors:
            if r < 2 or not is_prime(r):
                raise FactorizationUnavailable(f"supplied factor {r} is not prime")
            if m % r:
                raise FactorizationUnavailable(f"{r} does not divide q-1")
            while m % r == 0:
                m //= r
        if m != 1:
            raise FactorizationUnavailable(
                "supplied factor list does not cover q-1 completely"
            )

    def group_order_prime_factors(self) -> tuple[int, ...]:
        """Distinct prime factors of q - 1."""
        if self._q1_primes is None:
            if self.q_minus_1_factors is not None:
                self._q1_primes = tuple(sorted(set(self.q_minus_1_factors)))
            elif self.q - 1 < _FACTOR_LIMIT:
                self._q1_primes = tuple(sorted(factorize(self.q - 1)))
            else:
                raise FactorizationUnavailable(
                    f"q-1 = {self.q - 1} is too large to factor; supply "
                    "q_minus_1_factors"
                )
        return self._q1_primes

    # -- lookup tables -----------------------------------------------------------

    def tables(self):
        """Dense arithmetic tables, or None when the field is too large."""
        if self.q > TABLE_LIMIT:
            return None
        if self._tables is None:
            self._tables = SmallFieldTables(self)
        return self._tables

    # -- serialization -------------------------------------------------------------

    def to_json_dict(self) -> dict:
        doc: dict = {"p": self.p, "N": self.N}
        if self.N > 1:
            doc["modulus"] = list(self.modulus)
        if self.q_minus_1_factors is not None:
            doc["q_minus_1_factors"] = [str(f) for f in self.q_minus_1_factors]
        return doc

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Field":
        return cls(
            int(doc["p"]),
            int(doc.get("N", 1)),
            modulus=doc.get("modulus"),
            q_minus_1_factors=doc.get("q_minus_1_factors"),
        )


class FieldElement:
    """Immutable element of a Field, identified by its canonical index."""

    __slots__ = ("field", "val")

    def __init__(self, field: Field, val: int):
        self.field = field
        self.val = val

    def _coerce(self, other) -> "FieldElement":
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self!r} and {other!r} live in different fields")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, self.field.add(self.val, other.val))

    def __sub__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, self.field.sub(self.val, other.val))

    def __mul__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.val, other.val))

    def __truediv__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, self.field.div(self.val, other.val))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.val))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.val, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.val))

    def is_zero(self) -> bool:
        return self.val == 0

    def __bool__(self):
        return self.val != 0

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.val == other.val
        )

    def __hash__(self):
        return hash((self.field, self.val))

    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs_of(self.val)

    def repr_json(self):
        return self.field.repr_of(self.val)

    def __repr__(self):
        return f"{self.field!r}:{self.field.repr_of(self.val)}"


def field_create(p: int, N: int = 1, modulus=None, q_minus_1_factors=None) -> Field:
    return Field(p, N, modulus=modulus, q_minus_1_factors=q_minus_1_factors)


# ---------------------------------------------------------------------------
# multiplicative structure

def element_order(x: FieldElement) -> int:
    """Smallest d >= 1 with x**d = 1; always divides q - 1."""
    if x.val == 0:
        raise ZeroElement("the zero element has no multiplicative order")
    field = x.field
    d = field.q - 1
    for r in field.group_order_prime_factors():
        while d % r == 0 and field.pow(x.val, d // r) == 1:
            d //= r
    return d


def find_primitive(field: Field) -> FieldElement:
    """First element in canonical enumeration order whose order is q - 1.

    Primitivity is verified against every prime factor of q - 1, never
    assumed; huge fields therefore need q_minus_1_factors.
    """
    if field._primitive_idx is None:
        m = field.q - 1
        if m == 1:
            field._primitive_idx = 1
        else:
            primes = field.group_order_prime_factors()
            for idx in field.enumerate_indices():
                if idx == 0:
                    continue
                if all(field.pow(idx, m // r) != 1 for r in primes):
                    field._primitive_idx = idx
                    break
    return FieldElement(field, field._primitive_idx)


def find_element_of_order(field: Field, d: int) -> FieldElement:
    if d < 1 or (field.q - 1) % d != 0:
        raise OrderNotDividing(f"{d} does not divide q-1 = {field.q - 1}")
    g = find_primitive(field)
    y = FieldElement(field, field.pow(g.val, (field.q - 1) // d))
    if element_order(y) != d:
        raise OrderNotDividing(f"internal order check failed for d = {d}")
    return y


def find_nonsquare(field: Field) -> FieldElement:
    """A nonsquare element of a field of odd order (a primitive element)."""
    if field.q % 2 == 0:
        raise EvenOrderField("every element of a char-2 field is a square")
    b = find_primitive(field)
    minus_one = field.neg(1)
    if field.pow(b.val, (field.q - 1) // 2) != minus_one:
        raise EvenOrderField("Euler criterion check failed")  # unreachable
    return b


def is_square(x: FieldElement) -> bool:
    """Euler criterion; the field order must be odd."""
    field = x.field
    if field.q % 2 == 0:
        raise EvenOrderField("squareness is trivial in char-2 fields")
    if x.val == 0:
        return True
    return field.pow(x.val, (field.q - 1) // 2) == 1


# ---------------------------------------------------------------------------
# dense tables for the hot kernels

class SmallFieldTables:
    """Flat mul/add tables plus neg/inv maps for a field with q <= TABLE_LIMIT.

    mul and add are row-major q*q lists: op(a, b) = table[a*q + b].
    """

    __slots__ = ("q", "mul", "add", "neg", "inv", "_arrays")

    def __init__(self, field: Field):
        q = field.q
        self.q = q
        g = find_primitive(field).val
        exp = [1] * (q - 1)
        for m in range(1, q - 1):
            exp[m] = field.mul(exp[m - 1], g)
        log = [0] * q
        for m, v in enumerate(exp):
            log[v] = m
        mul = [0] * (q * q)
        for a in range(1, q):
            la = log[a]
            row = a * q
            for b in range(1, q):
                mul[row + b] = exp[(la + log[b]) % (q - 1)]
        if field.N == 1:
            p = field.p
            add = [(a + b) % p for a in range(q) for b in range(q)]
            neg = [-a % p for a in range(q)]
        elif field.p == 2:
            add = [a ^ b for a in range(q) for b in range(q)]
            neg = list(range(q))
        else:
            add = [field.add(a, b) for a in range(q) for b in range(q)]
            neg = [field.neg(a) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            inv[a] = exp[(q - 1 - log[a]) % (q - 1)]
        self.mul = mul
        self.add = add
        self.neg = neg
        self.inv = inv
        self._arrays = None

    def arrays(self):
        """int32 array views for the compiled kernels (cached)."""
        if self._arrays is None:
            self._arrays = (
                array("i", self.mul),
                array("i", self.add),
                array("i", self.neg),
                array("i", self.inv),
            )
        return self._arrays

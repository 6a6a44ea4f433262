"""Finite fields F_p[t]/(f) with table-driven arithmetic.

Elements are encoded as integers ``sum(c_i * p**i)`` where ``c_i`` are the
coefficients of the residue polynomial in ``t``.  All four operation tables
are precomputed, so arithmetic on whole numpy arrays of codes is a single
fancy-indexing step.  This is the desk-scale regime: ``q <= 1024``.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from .errors import InputError

MAX_ORDER = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % k for k in range(2, int(n**0.5) + 1))


def _poly_mod_p(a, b, p):
    """Remainder of a by monic b over F_p (low-to-high coefficient lists)."""
    a = [x % p for x in a]
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1]
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def is_irreducible(modulus, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    m = len(modulus) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if modulus[0] % p == 0:
        return False
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod_p(modulus, list(low) + [1], p):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree m in lexicographic (high-first) order."""
    if m == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=m):
        cand = tuple(reversed(low)) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise InputError(f"no irreducible polynomial of degree {m} over F_{p}")


class GF:
    """The field F_p[t]/(modulus).

    ``modulus`` is a monic coefficient list, low degree first.  Instances are
    cached, so ``GF(3, (1, 0, 1)) is GF(3, (1, 0, 1))``.
    """

    def __new__(cls, p: int, modulus=None):
        modulus = (0, 1) if modulus is None else tuple(int(c) % p for c in modulus)
        return _make_field(p, modulus)

    def _setup(self, p, modulus):
        if not is_prime(p):
            raise InputError(f"{p} is not prime")
        if len(modulus) < 2 or modulus[-1] != 1:
            raise InputError("modulus must be monic of degree >= 1")
        if not is_irreducible(modulus, p):
            raise InputError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.m = len(modulus) - 1
        self.q = p**self.m
        if self.q > MAX_ORDER:
            raise InputError(f"field order {self.q} exceeds desk-scale limit {MAX_ORDER}")
        self.modulus = modulus
        m, q = self.m, self.q
        self.powers = p ** np.arange(m, dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        self.vec = (codes[:, None] // self.powers[None, :]) % p
        # t^k mod f for k < 2m-1, as component vectors
        red = np.zeros((max(2 * m - 1, 1), m), dtype=np.int64)
        for k in range(m):
            red[k, k] = 1
        for k in range(m, 2 * m - 1):
            prev = red[k - 1]
            top = prev[m - 1]
            nxt = np.zeros(m, dtype=np.int64)
            nxt[1:] = prev[:-1]
            nxt = (nxt - top * np.array(modulus[:m], dtype=np.int64)) % p
            red[k] = nxt
        self._red = red
        V = self.vec
        self.add = self.encode_many((V[:, None, :] + V[None, :, :]) % p)
        self.sub = self.encode_many((V[:, None, :] - V[None, :, :]) % p)
        self.neg = self.encode_many((-V) % p)
        prod = np.zeros((q, q, 2 * m - 1), dtype=np.int64)
        for i in range(m):
            for j in range(m):
                prod[:, :, i + j] += V[:, None, i] * V[None, :, j]
        self.mul = self.encode_many(self._reduce(prod))
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(self.mul[a] == 1)[0][0])
        self.inv = inv
        self._gen = None
        self._log = None

    def _reduce(self, comps):
        """Reduce trailing-axis components of length 2m-1 modulo the modulus."""
        m = self.m
        out = comps[..., :m].copy()
        for k in range(m, comps.shape[-1]):
            out += comps[..., k : k + 1] * self._red[k]
        return out % self.p

    def encode_many(self, comps):
        return (np.asarray(comps, dtype=np.int64) % self.p) @ self.powers

    # -- element-level API -------------------------------------------------
    def __call__(self, x) -> FieldElem:
        if isinstance(x, FieldElem):
            if x.field is not self:
                raise InputError("element belongs to a different field")
            return x
        if isinstance(x, (list, tuple)):
            if len(x) > self.m:
                raise InputError("too many coordinates for field element")
            comps = list(x) + [0] * (self.m - len(x))
            return FieldElem(self, int(self.encode_many(comps)))
        return FieldElem(self, int(x) % self.p)

    def elem(self, code: int) -> FieldElem:
        return FieldElem(self, int(code))

    @property
    def zero(self):
        return FieldElem(self, 0)

    @property
    def one(self):
        return FieldElem(self, 1)

    def from_int(self, n: int) -> int:
        """Code of the image of the integer n (prime subfield)."""
        return int(n) % self.p

    def elements(self):
        return [FieldElem(self, c) for c in range(self.q)]

    def nonzero_codes(self):
        return range(1, self.q)

    def pow_code(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if k == 0 else 0
        if k < 0:
            a, k = int(self.inv[a]), -k
        out = 1
        while k:
            if k & 1:
                out = int(self.mul[out, a])
            a = int(self.mul[a, a])
            k >>= 1
        return out

    def generator(self) -> int:
        """Code of the smallest primitive element of the multiplicative group."""
        if self._gen is None:
            order = self.q - 1
            primes = [r for r in range(2, order + 1) if order % r == 0 and is_prime(r)]
            for g in range(1, self.q):
                if all(self.pow_code(g, order // r) != 1 for r in primes):
                    self._gen = g
                    break
            log = np.full(self.q, -1, dtype=np.int64)
            x = 1
            for k in range(order):
                log[x] = k
                x = int(self.mul[x, self._gen])
            self._log = log
        return self._gen

    def log(self, a: int) -> int:
        self.generator()
        if a == 0:
            raise ZeroDivisionError("log of zero")
        return int(self._log[a])

    def nth_root(self, a: int, e: int):
        """Some e-th root of a (deterministic via the generator), or None."""
        if a == 0:
            return 0
        g = self.generator()
        la, order = self.log(a), self.q - 1
        # solve e*x = la mod order
        from math import gcd

        d = gcd(e, order)
        if la % d:
            return None
        x = (la // d) * pow(e // d, -1, order // d) % (order // d)
        return self.pow_code(g, x)

    def random_code(self, rng, nonzero=False) -> int:
        lo = 1 if nonzero else 0
        return int(rng.integers(lo, self.q))

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    def __reduce__(self):
        return (GF, (self.p, self.modulus))


@functools.lru_cache(maxsize=None)
def _make_field(p, modulus):
    obj = object.__new__(GF)
    obj._setup(p, modulus)
    return obj


def field_of_degree(p: int, m: int = 1) -> GF:
    return GF(p, default_modulus(p, m))


class FieldElem:
    """Element of a :class:`GF`, stored by code."""

    __slots__ = ("field", "code")

    def __init__(self, field: GF, code: int):
        self.field = field
        self.code = int(code)

    def _other(self, other):
        if isinstance(other, FieldElem):
            return other.code
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.add[self.code, o])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.sub[self.code, o])

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.sub[o, self.code])

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.mul[self.code, o])

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.field, self.field.neg[self.code])

    def inverse(self):
        if self.code == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        return FieldElem(self.field, self.field.inv[self.code])

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * FieldElem(self.field, o).inverse()

    def __pow__(self, k: int):
        return FieldElem(self.field, self.field.pow_code(self.code, k))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field is other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.code))

    def __bool__(self):
        return self.code != 0

    def coords(self) -> list[int]:
        return [int(c) for c in self.field.vec[self.code]]

    def __repr__(self):
        f = self.field
        if f.m == 1:
            return f"{self.code}"
        terms = []
        for i, c in enumerate(self.coords()):
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(f"{c}{('*' + mono) if mono else ''}" if c != 1 or not mono else mono)
        return " + ".join(terms) if terms else "0"

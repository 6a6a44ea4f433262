"""Truncated Laurent series over a finite field, with precision tracking.

A :class:`LaurentSeries` is known modulo ``Y**prec`` where ``Y**e == X``.
The stored coefficients cover exponents ``val .. prec-1``; the leading one is
nonzero unless the series is the precision-tagged zero (``val == prec``).
Every operation returns the largest precision it can prove; nothing is
silently padded.

The Frobenius ``phi`` substitutes ``Y -> Y**p``, ``psi`` is its canonical
left inverse (unramified only), and ``gamma`` is the action of ``a`` in
``Z_p^x`` through ``X -> (1+X)**a - 1``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DivisionByZero,
    InputError,
    InsufficientPadicPrecision,
    NotAPower,
    NotOneUnit,
    PrecisionExhausted,
    RamifiedUnsupported,
)
from .field import GF, FieldElem


# ---------------------------------------------------------------------------
# p-adic bookkeeping


def val_p(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PadicUnit:
    """An element of Z_p^x known modulo p**prec."""

    residue: int
    prec: int
    p: int

    def __post_init__(self):
        if self.prec < 1:
            raise InputError("p-adic precision must be >= 1")
        object.__setattr__(self, "residue", self.residue % self.p**self.prec)
        if self.residue % self.p == 0:
            raise InputError(f"{self.residue} is not a unit mod {self.p}")

    @classmethod
    def from_rational(cls, x, p: int, prec: int) -> PadicUnit:
        x = Fraction(x)
        mod = p**prec
        return cls(x.numerator * pow(x.denominator, -1, mod) % mod, prec, p)

    def __mul__(self, other: PadicUnit) -> PadicUnit:
        prec = min(self.prec, other.prec)
        return PadicUnit(self.residue * other.residue, prec, self.p)

    def inverse(self) -> PadicUnit:
        mod = self.p**self.prec
        return PadicUnit(pow(self.residue, -1, mod), self.prec, self.p)

    def __pow__(self, k: int) -> PadicUnit:
        mod = self.p**self.prec
        return PadicUnit(pow(self.residue, k, mod), self.prec, self.p)

    def mod_p(self) -> int:
        return self.residue % self.p


@dataclass(frozen=True)
class ZpExponent:
    """The p-adic integer numerator/denominator, used modulo p**prec."""

    numerator: int
    denominator: int
    prec: int
    p: int

    def __post_init__(self):
        if self.denominator <= 0 or self.denominator % self.p == 0:
            raise InputError("exponent denominator must be positive and prime to p")

    def residue(self) -> int:
        mod = self.p**self.prec
        return self.numerator * pow(self.denominator, -1, mod) % mod

    def __add__(self, other: ZpExponent) -> ZpExponent:
        return ZpExponent(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
            min(self.prec, other.prec),
            self.p,
        )

    def __mul__(self, other: ZpExponent) -> ZpExponent:
        return ZpExponent(
            self.numerator * other.numerator,
            self.denominator * other.denominator,
            min(self.prec, other.prec),
            self.p,
        )

    def __eq__(self, other):
        if not isinstance(other, ZpExponent):
            return NotImplemented
        prec = min(self.prec, other.prec)
        mod = self.p**prec
        return self.p == other.p and self.residue() % mod == other.residue() % mod

    def __hash__(self):
        return hash((self.p, self.residue()))


def padic_digits_needed(p: int, n: int) -> int:
    """Smallest M with p**M >= n."""
    M = 1
    while p**M < n:
        M += 1
    return M


# ---------------------------------------------------------------------------
# raw coefficient helpers (arrays of field codes)


def _mul_codes(F: GF, a: np.ndarray, b: np.ndarray, L: int) -> np.ndarray:
    """Product of two coefficient arrays, truncated to L terms."""
    la, lb = min(len(a), L), min(len(b), L)
    if L <= 0:
        return np.zeros(0, dtype=np.int64)
    if la == 0 or lb == 0:
        return np.zeros(L, dtype=np.int64)
    a, b = a[:la], b[:lb]
    p = F.p
    if F.m == 1:
        out = np.convolve(a, b)[:L] % p
    else:
        A, B = F.vec[a], F.vec[b]
        m = F.m
        n = min(la + lb - 1, L)
        # Kronecker substitution: pack the components of each coefficient
        # into one integer so that a single convolution does the work
        bound = min(la, lb) * m * (p - 1) ** 2
        bits = bound.bit_length() + 1
        if (2 * m - 1) * bits <= 62:
            shifts = np.array([1 << (bits * i) for i in range(m)], dtype=np.int64)
            prod = np.convolve(A @ shifts, B @ shifts)[:n]
            mask = (1 << bits) - 1
            R = np.stack([(prod >> (bits * k)) & mask for k in range(2 * m - 1)], axis=1)
            out = F.encode_many(F._reduce(R % p))
            if len(out) < L:
                out = np.concatenate([out, np.zeros(L - len(out), dtype=np.int64)])
            return out.astype(np.int64)
        R = np.zeros((n, 2 * m - 1), dtype=np.int64)
        for i in range(m):
            ai = A[:, i]
            if not ai.any():
                continue
            for j in range(m):
                bj = B[:, j]
                if bj.any():
                    R[:, i + j] += np.convolve(ai, bj)[:n]
        out = F.encode_many(F._reduce(R % p))
    if len(out) < L:
        out = np.concatenate([out, np.zeros(L - len(out), dtype=np.int64)])
    return out.astype(np.int64)


def _add_codes(F: GF, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = max(len(a), len(b))
    if len(a) < n:
        a = np.concatenate([a, np.zeros(n - len(a), dtype=np.int64)])
    if len(b) < n:
        b = np.concatenate([b, np.zeros(n - len(b), dtype=np.int64)])
    return F.add[a, b]


def _inv_unit_codes(F: GF, u: np.ndarray, L: int) -> np.ndarray:
    """Inverse of a power series with nonzero constant term, mod Y**L (Newton)."""
    g = np.array([F.inv[u[0]]], dtype=np.int64)
    n = 1
    while n < L:
        n = min(2 * n, L)
        ug = _mul_codes(F, u, g, n)
        two_minus = F.neg[ug]
        two_minus[0] = F.add[two_minus[0], F.from_int(2)]
        g = _mul_codes(F, g, two_minus, n)
    return g[:L]


_LUCAS = {}


def _binom_mod_p_table(p: int) -> np.ndarray:
    if p not in _LUCAS:
        t = np.zeros((p, p), dtype=np.int64)
        for n in range(p):
            for k in range(n + 1):
                t[n, k] = math.comb(n, k) % p
        _LUCAS[p] = t
    return _LUCAS[p]


def binom_mod_p(n: np.ndarray, k: np.ndarray, p: int) -> np.ndarray:
    """C(n, k) mod p by Lucas' theorem, vectorized; n, k >= 0."""
    t = _binom_mod_p_table(p)
    n, k = np.broadcast_arrays(np.asarray(n, dtype=np.int64), np.asarray(k, dtype=np.int64))
    out = np.ones(n.shape, dtype=np.int64)
    n, k = n.copy(), k.copy()
    while (n > 0).any() or (k > 0).any():
        out = out * t[n % p, k % p] % p
        n //= p
        k //= p
    return out


@functools.lru_cache(maxsize=256)
def _one_plus_x_pow(p: int, A: int, L: int) -> np.ndarray:
    """Coefficients of (1+X)**A mod X**L over F_p, A >= 0."""
    return binom_mod_p(A, np.arange(L), p)


def _gamma_matrix(p: int, A: int, L: int) -> np.ndarray:
    """F_p matrix whose row k is ((1+X)**A - 1)**k mod X**L."""
    size = 64
    while size < L:
        size *= 2
    mod = p ** padic_digits_needed(p, size)
    return _gamma_matrix_cached(p, A % mod, size)[:L, :L]


@functools.lru_cache(maxsize=64)
def _gamma_matrix_cached(p: int, A: int, L: int) -> np.ndarray:
    ks = np.arange(L)
    # ((1+X)^A - 1)^k = sum_j C(k,j) (-1)^(k-j) (1+X)^(A j)
    shift = binom_mod_p(ks[:, None], ks[None, :], p)
    sign = np.where((ks[:, None] - ks[None, :]) % 2 == 0, 1, p - 1)
    shift = shift * sign % p
    mod = p ** padic_digits_needed(p, L)
    rows = binom_mod_p((A * ks[:, None]) % mod, ks[None, :], p)
    # entries stay below p*p*L << 2**53, so the float product is exact
    K = np.rint(shift.astype(np.float64) @ rows.astype(np.float64)) % p
    K.flags.writeable = False
    return K


# ---------------------------------------------------------------------------


class SeriesRing:
    """E((Y)) with Y**e = X.  Cached per (field, e)."""

    _cache: dict = {}

    def __new__(cls, field: GF, e: int = 1):
        key = (id(field), e)
        if key not in cls._cache:
            if e < 1:
                raise InputError("ramification index must be >= 1")
            obj = object.__new__(cls)
            obj.field = field
            obj.e = e
            obj.p = field.p
            cls._cache[key] = obj
        return cls._cache[key]

    def __reduce__(self):
        return (SeriesRing, (self.field, self.e))

    def __repr__(self):
        var = "X" if self.e == 1 else f"Y (Y^{self.e}=X)"
        return f"{self.field}(({var}))"

    def zero(self, prec: int) -> LaurentSeries:
        return LaurentSeries(self, prec, np.zeros(0, dtype=np.int64), prec)

    def const(self, c, prec: int) -> LaurentSeries:
        code = c.code if isinstance(c, FieldElem) else self.field.from_int(c)
        return LaurentSeries(self, 0, np.array([code], dtype=np.int64), prec)

    def one(self, prec: int) -> LaurentSeries:
        return self.const(1, prec)

    def monomial(self, c, k: int, prec: int) -> LaurentSeries:
        """c * Y**k (c a FieldElem or int)."""
        code = c.code if isinstance(c, FieldElem) else self.field.from_int(c)
        return LaurentSeries(self, k, np.array([code], dtype=np.int64), prec)

    def gen(self, prec: int) -> LaurentSeries:
        return self.monomial(1, 1, prec)

    def X(self, prec: int) -> LaurentSeries:
        return self.monomial(1, self.e, prec)

    def from_codes(self, codes, val: int, prec: int) -> LaurentSeries:
        return LaurentSeries(self, val, np.asarray(codes, dtype=np.int64), prec)

    def from_ints(self, ints, val: int, prec: int) -> LaurentSeries:
        """Coefficients given as prime-field integers."""
        return self.from_codes([self.field.from_int(c) for c in ints], val, prec)

    def random(self, rng, val: int, prec: int, density: float = 1.0, unit=True) -> LaurentSeries:
        L = prec - val
        codes = rng.integers(0, self.field.q, size=L).astype(np.int64)
        if density < 1.0:
            codes[rng.random(L) > density] = 0
        if unit and L:
            codes[0] = self.field.random_code(rng, nonzero=True)
        return LaurentSeries(self, val, codes, prec)


class LaurentSeries:
    __slots__ = ("ring", "val", "coeffs", "prec")

    def __init__(self, ring: SeriesRing, val: int, coeffs: np.ndarray, prec: int):
        coeffs = np.asarray(coeffs, dtype=np.int64)
        L = prec - val
        if L < 0:
            L = 0
            val = prec
        coeffs = coeffs[:L]
        nz = np.flatnonzero(coeffs)
        if len(nz) == 0:
            val, coeffs = prec, coeffs[:0]
        elif nz[0]:
            val += int(nz[0])
            coeffs = coeffs[nz[0]:]
        self.ring = ring
        self.val = int(val)
        self.coeffs = coeffs
        self.prec = int(prec)

    # -- basic properties ---------------------------------------------------
    @property
    def field(self) -> GF:
        return self.ring.field

    @property
    def e(self) -> int:
        return self.ring.e

    @property
    def p(self) -> int:
        return self.ring.p

    def is_zero(self) -> bool:
        return self.val >= self.prec

    def valuation(self) -> int:
        if self.is_zero():
            raise PrecisionExhausted(f"valuation not certified: zero mod Y^{self.prec}")
        return self.val

    @property
    def val_x(self) -> Fraction:
        return Fraction(self.valuation(), self.e)

    def coeff(self, k: int) -> int:
        if k >= self.prec:
            raise PrecisionExhausted(f"coefficient of Y^{k} beyond precision {self.prec}")
        i = k - self.val
        if i < 0 or i >= len(self.coeffs):
            return 0
        return int(self.coeffs[i])

    def coeff_array(self, lo: int, hi: int) -> np.ndarray:
        """Codes of the coefficients of Y**lo .. Y**(hi-1)."""
        if hi > self.prec:
            raise PrecisionExhausted(f"coefficients up to Y^{hi - 1} beyond precision {self.prec}")
        out = np.zeros(max(hi - lo, 0), dtype=np.int64)
        a, b = max(lo, self.val), min(hi, self.val + len(self.coeffs))
        if a < b:
            out[a - lo : b - lo] = self.coeffs[a - self.val : b - self.val]
        return out

    def lead(self) -> FieldElem:
        return self.field.elem(self.coeffs[0]) if len(self.coeffs) else self.field.zero

    def truncate(self, prec: int) -> LaurentSeries:
        if prec >= self.prec:
            return self
        return LaurentSeries(self.ring, self.val, self.coeffs, prec)

    def with_prec(self, prec: int) -> LaurentSeries:
        """Declare the stored coefficients exact up to a *higher* precision.

        Only valid for series known to be polynomials (exact inputs)."""
        return LaurentSeries(self.ring, self.val, self.coeffs, prec)

    def _check(self, other):
        if not isinstance(other, LaurentSeries):
            raise TypeError("expected LaurentSeries")
        if other.ring is not self.ring:
            if other.field is not self.field:
                raise InputError("series over different fields")
            e = math.lcm(self.e, other.e)
            return self.ramify(e // self.e), other.ramify(e // other.e)
        return self, other

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, FieldElem)):
            other = self.ring.const(other, self.prec)
        a, b = self._check(other)
        prec = min(a.prec, b.prec)
        lo = min(a.val, b.val, prec)
        ca = a.coeff_array(lo, prec) if a.val < prec else np.zeros(prec - lo, dtype=np.int64)
        cb = b.coeff_array(lo, prec) if b.val < prec else np.zeros(prec - lo, dtype=np.int64)
        return LaurentSeries(a.ring, lo, a.field.add[ca, cb], prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.ring, self.val, self.field.neg[self.coeffs], self.prec)

    def __sub__(self, other):
        if isinstance(other, (int, FieldElem)):
            other = self.ring.const(other, self.prec)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> LaurentSeries:
        code = c.code if isinstance(c, FieldElem) else self.field.from_int(c)
        return LaurentSeries(self.ring, self.val, self.field.mul[code, self.coeffs], self.prec)

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by Y**k."""
        return LaurentSeries(self.ring, self.val + k, self.coeffs, self.prec + k)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self.scale(other)
        a, b = self._check(other)
        prec = min(a.prec + b.val, b.prec + a.val)
        val = a.val + b.val
        L = prec - val
        if a.is_zero() or b.is_zero() or L <= 0:
            return a.ring.zero(prec)
        return LaurentSeries(a.ring, val, _mul_codes(a.field, a.coeffs, b.coeffs, L), prec)

    __rmul__ = __mul__

    def inverse(self) -> LaurentSeries:
        if self.is_zero():
            raise DivisionByZero(f"series is zero mod Y^{self.prec}")
        L = self.prec - self.val
        inv = _inv_unit_codes(self.field, self.coeffs, L)
        return LaurentSeries(self.ring, -self.val, inv, L - self.val)

    def __truediv__(self, other):
        if isinstance(other, (int, FieldElem)):
            c = other if isinstance(other, FieldElem) else self.field(other)
            return self.scale(c.inverse())
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int) -> LaurentSeries:
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return self.ring.one(self.prec - self.val)
        base, result = self, None
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        """Agreement at the common precision."""
        if isinstance(other, (int, FieldElem)):
            other = self.ring.const(other, self.prec)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        d = self - other
        return d.is_zero()

    __hash__ = None

    def agrees(self, other, prec: int) -> bool:
        return (self - other).val >= prec

    # -- operators ------------------------------------------------------------
    def phi(self) -> LaurentSeries:
        p = self.p
        if self.is_zero():
            return self.ring.zero(p * self.prec)
        L = len(self.coeffs)
        out = np.zeros((L - 1) * p + 1, dtype=np.int64)
        out[::p] = self.coeffs
        return LaurentSeries(self.ring, p * self.val, out, p * self.prec)

    def psi(self) -> LaurentSeries:
        if self.e != 1:
            raise RamifiedUnsupported("psi is only defined on E((X))")
        p, F = self.p, self.field
        out_prec = self.prec // p
        if self.is_zero():
            return self.ring.zero(out_prec)
        out_val = self.val // p
        if out_val >= out_prec:
            return self.ring.zero(out_prec)
        lo, hi = p * out_val, p * out_prec
        arr = self.coeff_array(lo, hi).reshape(-1, p)
        acc = arr[:, 0].copy()
        for r in range(1, p):
            col = arr[:, r]
            acc = F.add[acc, F.neg[col] if r % 2 else col]
        return LaurentSeries(self.ring, out_val, acc, out_prec)

    def gamma(self, a: PadicUnit) -> LaurentSeries:
        """[a] f = f((1+X)**a - 1).  Requires p**a.prec >= relative precision."""
        if a.p != self.p:
            raise InputError("p-adic unit for a different prime")
        if self.is_zero():
            return self
        if self.e != 1:
            raise RamifiedUnsupported("use ramified_gamma for e > 1")
        L = self.prec - self.val
        if self.p**a.prec < L:
            raise InsufficientPadicPrecision(
                f"need p^M >= {L}, have p^{a.prec} = {self.p**a.prec}"
            )
        F = self.field
        K = _gamma_matrix(self.p, a.residue, L)
        # unit part: sum u_k ([a]X)^k
        u = self.coeff_array(self.val, self.prec)
        # K is a float array with entries < p; the products stay exact
        if F.m == 1:
            img = np.rint(u.astype(np.float64) @ K).astype(np.int64) % self.p
        else:
            img = F.encode_many(np.rint(K.T @ F.vec[u].astype(np.float64)).astype(np.int64) % self.p)
        unit = LaurentSeries(self.ring, 0, img, L)
        if self.val == 0:
            return unit
        w = gamma_x_ratio(self.ring, a, L)
        return (w ** self.val).shift(self.val) * unit

    def ramified_gamma(self, a: PadicUnit, root_code: int) -> LaurentSeries:
        """[a] on E((Y)), Y**e = X, with [a]Y = Y * r * (([a]X)/(aX))**(1/e)."""
        e, p = self.e, self.p
        if self.is_zero():
            return self
        L = self.prec - self.val
        base = SeriesRing(self.field, 1)
        Lx = -(-L // e) + 1
        if p**a.prec < L:
            raise InsufficientPadicPrecision(f"need p^M >= {L}")
        ratio = gamma_x_ratio(base, a, Lx).scale(self.field(a.residue % p).inverse())
        root = one_unit_pow(ratio.ramify(e), ZpExponent(1, e, a.prec, p))
        rho = root.scale(self.field.elem(root_code)).truncate(L)
        out = self.ring.zero(self.prec)
        acc = rho ** self.val if self.val else self.ring.one(L)
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(acc.scale(self.field.elem(c)).shift(self.val + k))
            acc = (acc * rho).truncate(L)
        for t in terms:
            out = out + t
        return out.truncate(self.prec)

    def ramify(self, k: int) -> LaurentSeries:
        """Re-express in Z with Z**k = Y."""
        if k == 1:
            return self
        ring = SeriesRing(self.field, self.e * k)
        if self.is_zero():
            return ring.zero(self.prec * k)
        out = np.zeros((len(self.coeffs) - 1) * k + 1, dtype=np.int64)
        out[::k] = self.coeffs
        return LaurentSeries(ring, self.val * k, out, self.prec * k)

    def __repr__(self):
        if self.is_zero():
            return f"O({self._var()}^{self.prec})"
        terms = []
        for i, c in enumerate(self.coeffs[:8]):
            if c:
                k = self.val + i
                mono = "1" if k == 0 else (self._var() if k == 1 else f"{self._var()}^{k}")
                ce = self.field.elem(c)
                terms.append(mono if c == 1 and k != 0 else f"({ce})*{mono}" if k else f"{ce}")
        more = " + ..." if np.any(self.coeffs[8:]) else ""
        return " + ".join(terms) + more + f" + O({self._var()}^{self.prec})"

    def _var(self):
        return "X" if self.e == 1 else "Y"


def gamma_x_ratio(ring: SeriesRing, a: PadicUnit, L: int) -> LaurentSeries:
    """([a]X)/X as a unit power series mod X**L."""
    A = a.residue
    coeffs = _one_plus_x_pow(ring.p, A, L + 1)[1:]
    F = ring.field
    return LaurentSeries(ring, 0, np.array([F.from_int(c) for c in coeffs], dtype=np.int64), L)


def gamma_twist_base(ring: SeriesRing, a: PadicUnit, L: int) -> LaurentSeries:
    """The 1-unit aX/[a](X) mod X**L."""
    return gamma_x_ratio(ring, a, L).inverse().scale(ring.field.from_int(a.residue))


# ---------------------------------------------------------------------------
# 1-unit exponentiation


def is_one_unit(u: LaurentSeries) -> bool:
    return not u.is_zero() and u.val == 0 and int(u.coeffs[0]) == 1


def one_unit_pow(u: LaurentSeries, t) -> LaurentSeries:
    """u**t for a 1-unit u and a p-adic exponent t (ZpExponent or int).

    Since (u-1) has positive valuation, u**(p**M) = 1 mod Y**(p**M); the
    exponent therefore only matters modulo p**M, and p**M must cover the
    precision."""
    if isinstance(t, int) and t >= 0:
        if not is_one_unit(u):
            raise NotOneUnit("base is not congruent to 1 mod Y")
        return u**t if t else u.ring.one(u.prec)
    if isinstance(t, int):
        t = ZpExponent(t, 1, padic_digits_needed(u.p, u.prec), u.p)
    if not is_one_unit(u):
        raise NotOneUnit("base is not congruent to 1 mod Y")
    if u.p**t.prec < u.prec:
        raise InsufficientPadicPrecision(f"need p^M >= {u.prec}, have p^{t.prec}")
    T = t.residue()
    if T == 0:
        return u.ring.one(u.prec)
    return u**T


def exponent_recover(u: LaurentSeries, base: LaurentSeries, prec: int | None = None) -> ZpExponent:
    """Find t with base**t = u mod Y**prec, one p-adic digit at a time."""
    if not is_one_unit(base) or (base - 1).is_zero():
        raise NotOneUnit("base must be a 1-unit different from 1")
    p = u.p
    N = min(u.prec, base.prec) if prec is None else prec
    if not is_one_unit(u):
        raise NotAPower("target is not a 1-unit")
    vb = (base - 1).valuation()
    t, k = 0, 0
    cur, b = u.truncate(N), base.truncate(N)
    while (cur - 1).val < N:
        if vb * p**k >= N:
            raise NotAPower("residual error beyond the range of base powers")
        window = min(vb * p ** (k + 1), N)
        for digit in range(p):
            cand = b**digit if digit else b.ring.one(N)
            if (cur - cand).val >= window:
                break
        else:
            raise NotAPower(f"no digit matches at position {k}")
        t += digit * p**k
        if digit:
            cur = cur * (b**digit).inverse()
        b = b**p
        k += 1
    M = max(k, padic_digits_needed(p, max(N // vb, 1)))
    return ZpExponent(t, 1, M, p)

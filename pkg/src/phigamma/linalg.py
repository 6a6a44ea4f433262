"""Linear algebra over F_q (code arrays) and over E((Y)) (series matrices)."""

from __future__ import annotations

import numpy as np

from .errors import DivisionByZero, PrecisionExhausted
from .field import GF
from .series import LaurentSeries, PadicUnit, SeriesRing

# ---------------------------------------------------------------------------
# finite-field matrices, entries are codes


def fq_matmul(F: GF, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.m == 1:
        return (A @ B) % F.p
    Av, Bv = F.vec[A], F.vec[B]
    m = F.m
    parts = [None] * (2 * m - 1)
    for i in range(m):
        for j in range(m):
            t = Av[..., i] @ Bv[..., j]
            parts[i + j] = t if parts[i + j] is None else parts[i + j] + t
    return F.encode_many(F._reduce(np.stack(parts, axis=-1) % F.p))


def fq_rref(F: GF, M: np.ndarray):
    """Reduced row echelon form and pivot columns."""
    M = np.array(M, dtype=np.int64)
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = F.mul[F.inv[M[r, c]], M[r]]
        col = M[:, c].copy()
        col[r] = 0
        M = F.sub[M, F.mul[col[:, None], M[r][None, :]]]
        pivots.append(c)
        r += 1
    return M, pivots


def fq_rank(F: GF, M) -> int:
    return len(fq_rref(F, M)[1])


def fq_nullspace(F: GF, M: np.ndarray) -> np.ndarray:
    """Basis of {x : M x = 0}, returned as the rows of an array."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    R, piv = fq_rref(F, M)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(piv):
            basis[i, pc] = F.neg[R[r, f]]
    return basis


def fq_solve(F: GF, A: np.ndarray, b: np.ndarray):
    """One solution x of A x = b, or None."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    R, piv = fq_rref(F, np.hstack([A, b]))
    n = A.shape[1]
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, pc in enumerate(piv):
        x[pc] = R[r, n]
    return x


def fq_inv(F: GF, A: np.ndarray):
    n = A.shape[0]
    R, piv = fq_rref(F, np.hstack([A, np.eye(n, dtype=np.int64)]))
    if piv[:n] != list(range(n)):
        return None
    return R[:, n:]


def fq_det(F: GF, A: np.ndarray) -> int:
    A = np.array(A, dtype=np.int64)
    n = A.shape[0]
    det = 1
    for c in range(n):
        nz = np.flatnonzero(A[c:, c])
        if len(nz) == 0:
            return 0
        k = c + nz[0]
        if k != c:
            A[[c, k]] = A[[k, c]]
            det = F.neg[det]
        piv = A[c, c]
        det = F.mul[det, piv]
        f = F.mul[A[c + 1 :, c], F.inv[piv]]
        A[c + 1 :] = F.sub[A[c + 1 :], F.mul[f[:, None], A[c][None, :]]]
    return int(det)


# ---------------------------------------------------------------------------
# matrices over E((Y))


class SMat:
    """A dense matrix of LaurentSeries over one ring."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring: SeriesRing, rows):
        self.ring = ring
        self.rows = [list(r) for r in rows]

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __setitem__(self, ij, v):
        i, j = ij
        self.rows[i][j] = v

    @classmethod
    def identity(cls, ring: SeriesRing, d: int, prec: int) -> SMat:
        return cls(ring, [[ring.one(prec) if i == j else ring.zero(prec) for j in range(d)] for i in range(d)])

    @classmethod
    def zeros(cls, ring, r, c, prec) -> SMat:
        return cls(ring, [[ring.zero(prec) for _ in range(c)] for _ in range(r)])

    @classmethod
    def diag(cls, ring, entries, prec=None) -> SMat:
        d = len(entries)
        prec = prec if prec is not None else min(e.prec for e in entries)
        return cls(ring, [[entries[i] if i == j else ring.zero(prec) for j in range(d)] for i in range(d)])

    @classmethod
    def from_codes(cls, ring, C: np.ndarray, prec: int) -> SMat:
        """Constant matrix from an array of field codes."""
        C = np.asarray(C)
        return cls(ring, [[ring.from_codes([C[i, j]], 0, prec) for j in range(C.shape[1])] for i in range(C.shape[0])])

    def map(self, fn) -> SMat:
        return SMat(self.ring, [[fn(x) for x in r] for r in self.rows])

    def copy(self) -> SMat:
        return SMat(self.ring, self.rows)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other: SMat) -> SMat:
        return SMat(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: SMat) -> SMat:
        return SMat(self.ring, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.map(lambda x: -x)

    def __matmul__(self, other: SMat) -> SMat:
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = None
                for t in range(k):
                    a, b = self.rows[i][t], other.rows[t][j]
                    term = a * b
                    acc = term if acc is None else acc + term
                row.append(acc)
            out.append(row)
        return SMat(self.ring, out)

    def scale(self, s) -> SMat:
        return self.map(lambda x: x * s)

    def transpose(self) -> SMat:
        return SMat(self.ring, [list(c) for c in zip(*self.rows)])

    def phi(self) -> SMat:
        return self.map(lambda x: x.phi())

    def psi(self) -> SMat:
        return self.map(lambda x: x.psi())

    def gamma(self, a: PadicUnit) -> SMat:
        return self.map(lambda x: x.gamma(a))

    def truncate(self, prec: int) -> SMat:
        return self.map(lambda x: x.truncate(prec))

    def with_prec(self, prec: int) -> SMat:
        return self.map(lambda x: x.with_prec(prec))

    # -- valuations / precision -------------------------------------------------
    @property
    def prec(self) -> int:
        return min(x.prec for r in self.rows for x in r)

    def valuation(self) -> int:
        """Minimal valuation of the entries; raises if the matrix is zero at precision."""
        vals = [x.val for r in self.rows for x in r if not x.is_zero()]
        if not vals:
            raise PrecisionExhausted("matrix is zero at its precision")
        return min(vals)

    def min_val(self) -> int:
        return min(x.val for r in self.rows for x in r)

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, SMat) or self.shape != other.shape:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def constant_codes(self) -> np.ndarray:
        """The coefficient of Y^0 of every entry, as a code array."""
        return np.array([[x.coeff(0) for x in r] for r in self.rows], dtype=np.int64)

    def coeff_codes(self, k: int) -> np.ndarray:
        return np.array([[x.coeff(k) for x in r] for r in self.rows], dtype=np.int64)

    def shift(self, k: int) -> SMat:
        return self.map(lambda x: x.shift(k))

    # -- elimination ---------------------------------------------------------
    def inverse(self) -> SMat:
        """Gauss-Jordan with a minimal-valuation pivot in each column."""
        n, m = self.shape
        if n != m:
            raise ValueError("square matrix required")
        A = [list(r) for r in self.rows]
        prec0 = self.prec
        B = SMat.identity(self.ring, n, 2 * (prec0 - self.min_val())).rows
        for c in range(n):
            best = None
            for r in range(c, n):
                x = A[r][c]
                if not x.is_zero() and (best is None or x.val < A[best][c].val):
                    best = r
            if best is None:
                raise DivisionByZero("matrix is singular at its precision")
            A[c], A[best] = A[best], A[c]
            B[c], B[best] = B[best], B[c]
            inv = A[c][c].inverse()
            A[c] = [x * inv for x in A[c]]
            B[c] = [x * inv for x in B[c]]
            for r in range(n):
                if r != c and not A[r][c].is_zero():
                    f = A[r][c]
                    A[r] = [x - f * y for x, y in zip(A[r], A[c])]
                    B[r] = [x - f * y for x, y in zip(B[r], B[c])]
                elif r != c:
                    A[r][c] = self.ring.zero(A[r][c].prec)
        return SMat(self.ring, B)

    def det(self) -> LaurentSeries:
        """Determinant by elimination with full minimal-valuation pivoting."""
        n, m = self.shape
        if n == 1:
            return self.rows[0][0]
        A = [list(r) for r in self.rows]
        det = None
        sign = 1
        cols = list(range(n))
        for step in range(n):
            best = None
            for r in range(step, n):
                for c in cols[step:]:
                    x = A[r][c]
                    if not x.is_zero() and (best is None or x.val < A[best[0]][best[1]].val):
                        best = (r, c)
            if best is None:
                return self.ring.zero(min(x.prec for r in A[step:] for x in r))
            r, c = best
            if r != step:
                A[r], A[step] = A[step], A[r]
                sign = -sign
            ci = cols.index(c)
            if ci != step:
                cols[ci], cols[step] = cols[step], cols[ci]
                sign = -sign
            piv = A[step][c]
            det = piv if det is None else det * piv
            inv = piv.inverse()
            for r2 in range(step + 1, n):
                x = A[r2][c]
                if not x.is_zero():
                    f = x * inv
                    A[r2] = [y - f * z for y, z in zip(A[r2], A[step])]
        return det if sign == 1 else -det

    def __repr__(self):
        return "SMat(\n  " + "\n  ".join(repr(r) for r in self.rows) + "\n)"


def smat_from_series(rows) -> SMat:
    return SMat(rows[0][0].ring, rows)


def column(ring: SeriesRing, entries) -> SMat:
    return SMat(ring, [[e] for e in entries])

"""Dense exact matrices over finite fields and rational function fields.

Finite-field matrices hold int64 code arrays and delegate the heavy kernels
to the field's vectorized table arithmetic.  Function-field matrices hold
RatFunc entries; their rank is computed by fraction-free (Bareiss) elimination
on a denominator-cleared polynomial matrix, with an FFT/Kronecker fast path
for the exact divisions that dominate large eliminations.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

import numpy as np

from . import poly
from .finite import FiniteField, get_finite_field
from .function import FunctionField, RatFunc


class Matrix:
    """Immutable dense matrix over a single field."""

    __slots__ = ("field", "rows", "cols", "a", "r")

    def __init__(self, field, data):
        self.field = field
        if isinstance(field, FiniteField):
            a = np.asarray(data, dtype=np.int64)
            if a.ndim != 2:
                raise ValueError("matrix data must be two-dimensional")
            a.setflags(write=False)
            self.a = a
            self.r = None
            self.rows, self.cols = a.shape
        else:
            rows = tuple(tuple(entry for entry in row) for row in data)
            widths = {len(row) for row in rows}
            if len(widths) > 1:
                raise ValueError("ragged matrix data")
            self.a = None
            self.r = rows
            self.rows = len(rows)
            self.cols = widths.pop() if widths else 0

    # -- constructors -----------------------------------------------------------

    @staticmethod
    def from_ints(field, rows) -> "Matrix":
        """Entries are integers read in the prime subfield."""
        if isinstance(field, FiniteField):
            return Matrix(field, np.asarray(rows, dtype=np.int64) % field.p)
        return Matrix(field, [[field.from_int(int(v)) for v in row] for row in rows])

    @staticmethod
    def zeros(field, rows: int, cols: int) -> "Matrix":
        if isinstance(field, FiniteField):
            return Matrix(field, np.zeros((rows, cols), dtype=np.int64))
        return Matrix(field, [[field.zero] * cols for _ in range(rows)])

    @staticmethod
    def identity(field, n: int) -> "Matrix":
        if isinstance(field, FiniteField):
            return Matrix(field, np.eye(n, dtype=np.int64))
        return Matrix(
            field,
            [[field.one if i == j else field.zero for j in range(n)] for i in range(n)],
        )

    # -- accessors ----------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        if self.a is not None:
            return int(self.a[i, j])
        return self.r[i][j]

    def row_lists(self):
        if self.a is not None:
            return [[int(v) for v in row] for row in self.a]
        return [list(row) for row in self.r]

    def is_zero(self) -> bool:
        if self.a is not None:
            return not self.a.any()
        return all(entry.is_zero() for row in self.r for entry in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        if not isinstance(other, Matrix) or self.field != other.field:
            return False
        if self.a is not None:
            return self.a.shape == other.a.shape and bool((self.a == other.a).all())
        return self.r == other.r

    def __hash__(self):
        if self.a is not None:
            return hash((self.field.cache_key(), self.a.tobytes()))
        return hash((self.field.cache_key(), self.r))

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.rows}x{self.cols})"

    # -- arithmetic ------------------------------------------------------------------

    def __add__(self, other):
        self._check_compat(other)
        if self.a is not None:
            return Matrix(self.field, self.field.m_add(self.a, other.a))
        return Matrix(
            self.field,
            [
                [x + y for x, y in zip(ra, rb)]
                for ra, rb in zip(self.r, other.r)
            ],
        )

    def __sub__(self, other):
        self._check_compat(other)
        if self.a is not None:
            return Matrix(self.field, self.field.m_sub(self.a, other.a))
        return Matrix(
            self.field,
            [
                [x - y for x, y in zip(ra, rb)]
                for ra, rb in zip(self.r, other.r)
            ],
        )

    def __neg__(self):
        if self.a is not None:
            return Matrix(self.field, self.field.m_neg(self.a))
        return Matrix(self.field, [[-x for x in row] for row in self.r])

    def scale(self, c):
        if self.a is not None:
            return Matrix(self.field, self.field.m_scale(c, self.a))
        return Matrix(self.field, [[c * x for x in row] for row in self.r])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("inner dimension mismatch")
        self._check_field(other)
        if self.a is not None:
            return Matrix(self.field, self.field.m_mul(self.a, other.a))
        f = self.field
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = f.zero
                for k in range(self.cols):
                    x = self.r[i][k]
                    if x.is_zero():
                        continue
                    y = other.r[k][j]
                    if y.is_zero():
                        continue
                    acc = acc + x * y
                row.append(acc)
            out.append(row)
        return Matrix(f, out)

    def pow(self, k: int) -> "Matrix":
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        result = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def transpose(self) -> "Matrix":
        if self.a is not None:
            return Matrix(self.field, self.a.T.copy())
        return Matrix(self.field, list(zip(*self.r)) if self.r else [])

    def _check_field(self, other):
        if self.field != other.field:
            raise ValueError("mixed-field matrix arithmetic")

    def _check_compat(self, other):
        self._check_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    # -- rank and kernels --------------------------------------------------------------

    def rank(self) -> int:
        if self.a is not None:
            return self.field.m_rank(self.a)
        return _function_field_rank(self)

    def nullspace(self) -> "Matrix":
        """Columns form a basis of the right kernel."""
        if self.a is not None:
            return Matrix(self.field, self.field.m_nullspace(self.a))
        return _fraction_nullspace(self)


def mat_rank(M: Matrix) -> int:
    return M.rank()


def mat_nullspace(M: Matrix) -> Matrix:
    return M.nullspace()


def lincomb(field, coeffs, int_mats) -> Matrix:
    """Sum of coeff_i * mat_i with integer prime-field matrices mat_i."""
    mats = [np.asarray(m, dtype=np.int64) for m in int_mats]
    if isinstance(field, FiniteField):
        acc = np.zeros_like(mats[0])
        for c, m in zip(coeffs, mats):
            if c:
                acc = field.m_add(acc, field.m_scale(c, m % field.p))
        return Matrix(field, acc)
    rows, cols = mats[0].shape
    out = [[field.zero] * cols for _ in range(rows)]
    for c, m in zip(coeffs, mats):
        if c.is_zero():
            continue
        for i in range(rows):
            for j in range(cols):
                v = int(m[i, j]) % field.p
                if v:
                    out[i][j] = out[i][j] + c * field.from_int(v)
    return Matrix(field, out)


def embedded(M: Matrix, target) -> Matrix:
    """Reinterpret M over a larger field of the same characteristic."""
    src = M.field
    if src == target:
        return M
    if src.p != target.p:
        raise ValueError("characteristic mismatch")
    if isinstance(target, FiniteField):
        if not isinstance(src, FiniteField):
            raise ValueError("cannot embed a function field in a finite field")
        table = src.embedding_into(target)
        return Matrix(target, table[M.a])
    if isinstance(src, FiniteField):
        if src.e != 1:
            raise ValueError("only prime-field matrices embed in a function field")
        return Matrix(
            target, [[target.from_int(int(v)) for v in row] for row in M.a]
        )
    raise ValueError("unsupported embedding")


# ---------------------------------------------------------------------------
# Jordan type of a nilpotent matrix
# ---------------------------------------------------------------------------

class JordanType(NamedTuple):
    parts: tuple[int, ...]
    free: bool


def jordan_type(N: Matrix, p: int) -> JordanType:
    """Block-size partition of a nilpotent matrix with N^p = 0.

    Block counts come from rank differences: #(blocks >= j) equals
    rank(N^(j-1)) - rank(N^j).  The matrix is "free" (all parts p) exactly
    when the restriction it represents is a free K[u]/(u^p)-module.
    """
    if not N.is_square():
        raise ValueError("jordan type needs a square matrix")
    n = N.rows
    if n == 0:
        return JordanType((), True)
    powers = [Matrix.identity(N.field, n)]
    for _ in range(p):
        powers.append(powers[-1] @ N)
    if not powers[p].is_zero():
        raise ValueError("matrix p-th power is nonzero (element outside the null cone)")
    ranks = [M.rank() for M in powers]
    ge = [ranks[j - 1] - ranks[j] for j in range(1, p + 1)] + [0]
    parts = []
    for j in range(1, p + 1):
        parts.extend([j] * (ge[j - 1] - ge[j]))
    parts.sort(reverse=True)
    if sum(parts) != n:
        raise AssertionError("jordan partition does not sum to the matrix size")
    return JordanType(tuple(parts), all(part == p for part in parts))


# ---------------------------------------------------------------------------
# pencil scan over extension fields
# ---------------------------------------------------------------------------

def pencil_singular_scan(
    A: Matrix, B: Matrix, e_max: int
) -> Optional[tuple[FiniteField, tuple[int, int]]]:
    """First projective point (c1:c2) with c1*A + c2*B singular over GF(p^e).

    Scans e = 1..e_max; within each field the order is (1:mu) for mu in code
    order, then (0:1).  Returns (field, (c1, c2)) or None.
    """
    if A.rows != B.rows or A.cols != B.cols or not A.is_square():
        raise ValueError("pencil scan needs square matrices of equal size")
    if not isinstance(A.field, FiniteField) or A.field != B.field:
        raise ValueError("pencil scan is defined over a common finite field")
    p = A.field.p
    e0 = A.field.e
    n = A.rows
    for e in range(1, e_max + 1):
        point_field = get_finite_field(p, e)
        big = get_finite_field(p, _lcm(e0, e))
        Ab = embedded(A, big).a
        Bb = embedded(B, big).a
        lift = point_field.embedding_into(big)
        for mu in range(point_field.q):
            cand = big.m_add(Ab, big.m_scale(int(lift[mu]), Bb))
            if big.m_rank(cand) < n:
                return point_field, (1, mu)
        if big.m_rank(Bb) < n:
            return point_field, (0, 1)
    return None


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


# ---------------------------------------------------------------------------
# function-field rank: fraction-free elimination
# ---------------------------------------------------------------------------

def _function_field_rank(M: Matrix) -> int:
    field: FunctionField = M.field
    p = field.p
    cleared = []
    for row in M.r:
        dens = [entry.den for entry in row if not entry.is_zero()]
        if not dens:
            cleared.append([{} for _ in row])
            continue
        common = dens[0]
        for d in dens[1:]:
            g = poly.pgcd(common, d, p, field.nvars)
            common = poly.pdiv_exact(poly.pmul(common, d, p), g, p)
        cleared.append(
            [
                poly.pmul(entry.num, poly.pdiv_exact(common, entry.den, p), p)
                if not entry.is_zero()
                else {}
                for entry in row
            ]
        )
    return bareiss_rank(cleared, p)


def bareiss_rank(rows: list[list[dict]], p: int) -> int:
    """Rank of a polynomial matrix by single-step Bareiss elimination.

    Entries stay polynomials throughout (every intermediate entry is, up to
    sign, a minor of the input), and each step's division by the previous
    pivot is exact.  One inverse power series per step handles all the
    divisions of that step.
    """
    M = [list(r) for r in rows]
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    prev: dict | None = None  # None encodes the constant 1 before any pivot
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        cand = [(len(M[i][c]), i) for i in range(r, nrows) if M[i][c]]
        if not cand:
            continue
        _, i = min(cand)
        if i != r:
            M[r], M[i] = M[i], M[r]
        piv = M[r][c]
        tail = range(c + 1, ncols)
        numerators = {}
        for i in range(r + 1, nrows):
            mic = M[i][c]
            if mic:
                numerators[i] = [
                    poly.psub(
                        poly.pmul(piv, M[i][j], p), poly.pmul(mic, M[r][j], p), p
                    )
                    for j in tail
                ]
            else:
                numerators[i] = [poly.pmul(piv, M[i][j], p) for j in tail]
            M[i][c] = {}
        if prev is not None:
            divide = _step_divider(prev, numerators, p)
            for i, row in numerators.items():
                numerators[i] = [divide(f) for f in row]
        for i, row in numerators.items():
            for j, f in zip(tail, row):
                M[i][j] = f
        prev = piv
        r += 1
    return r


def _step_divider(g: dict, numerators: dict, p: int):
    """Exact division by g for the batch of numerators of one Bareiss step."""
    if len(g) == 1:
        return lambda f: poly.pdiv_exact(f, g, p) if f else {}
    nvars = len(next(iter(g)))
    big = False
    shape = [1] * nvars
    for row in numerators.values():
        for f in row:
            if not f:
                continue
            if len(f) * len(g) > 4096:
                big = True
            for v, d in enumerate(poly.pdegrees(f, nvars)):
                shape[v] = max(shape[v], d + 1)
    if not big:
        return lambda f: poly.pdiv_exact(f, g, p) if f else {}
    divider = _KroneckerDivider(g, p, tuple(shape))

    def divide(f: dict) -> dict:
        if not f:
            return {}
        if len(f) * len(g) <= 4096:
            return poly.pdiv_exact(f, g, p)
        return divider.divide(f)

    return divide


class _KroneckerDivider:
    """Division by a fixed divisor via Kronecker substitution.

    All polynomials are flattened to univariate coefficient arrays using one
    shared exponent box as the stride vector; per-variable degrees add under
    multiplication over a domain, so the exact quotients never alias, and a
    single truncated inverse power series serves every dividend.
    """

    def __init__(self, g: dict, p: int, shape: tuple[int, ...]):
        self.p = p
        self.shape = shape
        self.strides = _row_major_strides(shape)
        self.maxlen = int(np.prod(shape))
        gflat = self._flatten(g)
        self.val = int(np.nonzero(gflat)[0][0])
        self.gunit = gflat[self.val : int(np.nonzero(gflat)[0][-1]) + 1]
        self.glen = len(self.gunit)
        precision = max(1, self.maxlen - self.val - self.glen + 1)
        self.inv_series = self._newton_inverse(self.gunit, precision)

    def _flatten(self, f: dict) -> np.ndarray:
        out = np.zeros(self.maxlen, dtype=np.int64)
        for e, c in f.items():
            idx = sum(x * s for x, s in zip(e, self.strides))
            out[idx] = c
        return out

    def _newton_inverse(self, g: np.ndarray, precision: int) -> np.ndarray:
        p = self.p
        inv = np.array([pow(int(g[0]), -1, p)], dtype=np.int64)
        k = 1
        while k < precision:
            k = min(2 * k, precision)
            t = _conv_mod(g[:k], inv, p)[:k]
            t = (-t) % p
            t[0] = (t[0] + 2) % p
            inv = _conv_mod(inv, t, p)[:k]
        return inv

    def divide(self, f: dict) -> dict:
        fflat = self._flatten(f)
        nz = np.nonzero(fflat)[0]
        if nz.size == 0:
            return {}
        flen = int(nz[-1]) + 1
        hlen = flen - self.val - self.glen + 1
        if hlen <= 0:
            raise ArithmeticError("inexact polynomial division")
        shifted = fflat[self.val : flen]
        h = _conv_mod(shifted, self.inv_series[:hlen], self.p)[:hlen]
        out = {}
        for idx in np.nonzero(h)[0]:
            out[_unflatten_index(int(idx), self.strides, self.shape)] = int(h[idx])
        return out


def _row_major_strides(shape: tuple[int, ...]) -> tuple[int, ...]:
    strides = [1] * len(shape)
    for i in range(len(shape) - 2, -1, -1):
        strides[i] = strides[i + 1] * shape[i + 1]
    return tuple(strides)


def _unflatten_index(idx: int, strides, shape) -> tuple[int, ...]:
    out = []
    for s in strides:
        q, idx = divmod(idx, s)
        out.append(q)
    return tuple(out)


def _conv_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact convolution of small nonnegative int arrays modulo p."""
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    if len(a) * len(b) <= 1 << 16:
        return np.convolve(a, b) % p
    from scipy.signal import fftconvolve

    out = fftconvolve(a.astype(np.float64), b.astype(np.float64))
    return np.rint(out).astype(np.int64) % p


# ---------------------------------------------------------------------------
# fraction-arithmetic elimination (the independent slow route)
# ---------------------------------------------------------------------------

def fraction_rank(M: Matrix) -> int:
    """Rank by naive Gaussian elimination with reduced fractions.

    Kept independent of the Bareiss route so the two can cross-check.
    """
    field = M.field
    rows = [list(r) for r in M.r]
    nrows, ncols = M.rows, M.cols
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv_i = next((i for i in range(r, nrows) if not rows[i][c].is_zero()), None)
        if piv_i is None:
            continue
        rows[r], rows[piv_i] = rows[piv_i], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(r + 1, nrows):
            f = rows[i][c]
            if f.is_zero():
                continue
            rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def _fraction_nullspace(M: Matrix) -> Matrix:
    field = M.field
    rows = [list(r) for r in M.r]
    nrows, ncols = M.rows, M.cols
    if ncols == 0:
        return Matrix(field, [])
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv_i = next((i for i in range(r, nrows) if not rows[i][c].is_zero()), None)
        if piv_i is None:
            continue
        rows[r], rows[piv_i] = rows[piv_i], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f.is_zero():
                continue
            rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis_cols = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for rr, pc in enumerate(pivots):
            v[pc] = -rows[rr][fc]
        basis_cols.append(v)
    if not basis_cols:
        return Matrix(field, [[] for _ in range(ncols)])
    return Matrix(field, [list(col) for col in zip(*basis_cols)])

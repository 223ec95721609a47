"""Finite fields GF(p^e) with table-driven exact arithmetic.

Elements are integer codes 0..p^e-1: the code of c0 + c1*s + ... + c_{e-1}*s^{e-1}
is c0 + c1*p + ... (base-p digits), where s is the class of the generator in
GF(p)[s]/(f).  Codes of the prime subfield are 0..p-1, so embedding GF(p) into
any GF(p^e) is the identity on codes.

Matrix kernels operate on int64 numpy arrays of codes.  The prime-field case
uses plain modular arithmetic; extensions go through addition/multiplication
lookup tables, which fancy indexing applies elementwise.
"""

from __future__ import annotations

import functools

import numpy as np

from . import poly


class FiniteField:
    """GF(p^e) presented as GF(p)[s]/(modulus)."""

    kind = "prime"  # overridden to "extension" when e > 1

    def __init__(self, p: int, e: int = 1, modulus: list[int] | None = None):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.e = e
        self.q = p**e
        if e == 1:
            modulus = [0, 1] if modulus is None else modulus
        elif modulus is None:
            modulus = poly.least_irreducible(p, e)
        else:
            modulus = poly.utrim([c % p for c in modulus])
            if len(modulus) - 1 != e:
                raise ValueError("modulus degree does not match extension degree")
            if not poly.uirreducible(modulus, p):
                raise ValueError("modulus polynomial is reducible over GF(p)")
        self.modulus = tuple(modulus)
        if e > 1:
            self.kind = "extension"
        self.zero = 0
        self.one = 1
        self._build_tables()

    # -- construction of the arithmetic tables --------------------------------

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        digits = np.zeros((q, e), dtype=np.int64)
        codes = np.arange(q)
        rem = codes.copy()
        for i in range(e):
            digits[:, i] = rem % p
            rem //= p
        self._digits = digits
        weights = p ** np.arange(e)

        add = (digits[:, None, :] + digits[None, :, :]) % p
        self.ADD = (add * weights).sum(axis=2)
        self.NEG = np.asarray((((-digits) % p) * weights).sum(axis=1))

        if e == 1:
            self.MUL = (codes[:, None] * codes[None, :]) % p
        else:
            f = list(self.modulus)
            # multiplication-by-s^j reduction table, then bilinear assembly
            red = []  # coeff vectors of s^k mod f for k < 2e-1
            for k in range(2 * e - 1):
                xk = [0] * k + [1]
                red.append(poly.umod(xk, f, p) + [0] * e)
            red = np.array([r[:e] for r in red], dtype=np.int64)  # (2e-1, e)
            mul = np.zeros((q, q), dtype=np.int64)
            for a in range(q):
                da = digits[a]
                # digit convolution against every b at once, reduced via red
                convb = np.zeros((q, 2 * e - 1), dtype=np.int64)
                for i in range(e):
                    if da[i]:
                        convb[:, i : i + e] += da[i] * digits
                coeffs = (convb % p) @ red % p
                mul[a] = (coeffs * weights).sum(axis=1)
            self.MUL = mul

        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = self._inv_slow(a)
        self.INV = inv

    def _inv_slow(self, a: int) -> int:
        # q is tiny; a^(q-2) via table-free square-and-multiply on codes
        result, base, k = 1, a, self.q - 2
        while k:
            if k & 1:
                result = int(self.MUL[result, base])
            base = int(self.MUL[base, base])
            k >>= 1
        return result

    # -- scalar operations -----------------------------------------------------

    def add(self, a, b):
        return int(self.ADD[a, b])

    def sub(self, a, b):
        return int(self.ADD[a, self.NEG[b]])

    def neg(self, a):
        return int(self.NEG[a])

    def mul(self, a, b):
        return int(self.MUL[a, b])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.INV[a])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if k < 0:
            a, k = self.inv(a), -k
        result, base = 1, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def from_int(self, n: int) -> int:
        """Image of an integer under GF(p) -> GF(p^e) (prime subfield)."""
        return n % self.p

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Base-p digit vector of a code (coefficients over the prime field)."""
        return tuple(int(x) for x in self._digits[a])

    def code(self, coeffs) -> int:
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    def elements(self):
        return range(self.q)

    def element_str(self, a: int, var: str = "s") -> str:
        if self.e == 1:
            return str(a)
        parts = []
        for i, c in enumerate(self.coeffs(a)):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(var if c == 1 else f"{c}*{var}")
            else:
                parts.append(f"{var}^{i}" if c == 1 else f"{c}*{var}^{i}")
        return "+".join(parts) if parts else "0"

    # -- embeddings ------------------------------------------------------------

    def embedding_into(self, other: "FiniteField") -> np.ndarray:
        """Code table of the canonical-least embedding GF(p^e) -> GF(p^E).

        Requires e | E; the image of s is the least root of the modulus in
        the target field, which makes reports reproducible.
        """
        if other.p != self.p:
            raise ValueError("characteristic mismatch")
        if other.e % self.e:
            raise ValueError(f"GF({self.q}) does not embed in GF({other.q})")
        if self.e == 1:
            return np.arange(self.p, dtype=np.int64)
        root = None
        for cand in range(other.q):
            acc = other.zero
            for c in reversed(self.modulus):
                acc = other.add(other.mul(acc, cand), other.from_int(c))
            if acc == 0:
                root = cand
                break
        if root is None:
            raise AssertionError("no root of modulus in target field")
        table = np.zeros(self.q, dtype=np.int64)
        for a in range(self.q):
            acc = other.zero
            for c in reversed(self.coeffs(a)):
                acc = other.add(other.mul(acc, root), other.from_int(c))
            table[a] = acc
        return table

    # -- matrix kernels on int64 code arrays ------------------------------------

    def m_from_ints(self, rows) -> np.ndarray:
        a = np.asarray(rows, dtype=np.int64) % self.p
        return a

    def m_add(self, A, B):
        if self.e == 1:
            return (A + B) % self.p
        return self.ADD[A, B]

    def m_sub(self, A, B):
        if self.e == 1:
            return (A - B) % self.p
        return self.ADD[A, self.NEG[B]]

    def m_neg(self, A):
        if self.e == 1:
            return (-A) % self.p
        return self.NEG[A]

    def m_scale(self, c, A):
        if self.e == 1:
            return (c * A) % self.p
        return self.MUL[c, A]

    def m_mul(self, A, B):
        if self.e == 1:
            return (A @ B) % self.p
        # elementwise table product then digitwise integer sums over k
        prod = self.MUL[A[:, :, None], B[None, :, :]]  # (m, k, n)
        dig = self._digits[prod]  # (m, k, n, e)
        summed = dig.sum(axis=1) % self.p  # (m, n, e)
        weights = self.p ** np.arange(self.e)
        return (summed * weights).sum(axis=2)

    def m_matvec(self, A, v):
        return self.m_mul(A, v.reshape(-1, 1)).ravel()

    def _echelon(self, A, reduced: bool):
        """Row echelon form; returns (R, pivot column list)."""
        R = np.array(A, dtype=np.int64)
        rows, cols = R.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r >= rows:
                break
            nz = np.nonzero(R[r:, c])[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                R[[r, i]] = R[[i, r]]
            pivinv = self.inv(int(R[r, c]))
            R[r] = self.m_scale(pivinv, R[r])
            if reduced:
                others = np.nonzero(R[:, c])[0]
                others = others[others != r]
            else:
                others = r + 1 + np.nonzero(R[r + 1 :, c])[0]
            if others.size:
                factors = R[others, c]
                if self.e == 1:
                    R[others] = (R[others] - factors[:, None] * R[r][None, :]) % self.p
                else:
                    upd = self.MUL[self.NEG[factors][:, None], R[r][None, :]]
                    R[others] = self.ADD[R[others], upd]
            pivots.append(c)
            r += 1
        return R, pivots

    def m_rank(self, A) -> int:
        if A.size == 0:
            return 0
        _, pivots = self._echelon(A, reduced=False)
        return len(pivots)

    def m_rref(self, A):
        return self._echelon(A, reduced=True)

    def m_nullspace(self, A) -> np.ndarray:
        """Columns form a basis of the right kernel."""
        rows, cols = A.shape
        if cols == 0:
            return np.zeros((0, 0), dtype=np.int64)
        if rows == 0:
            return np.eye(cols, dtype=np.int64)
        R, pivots = self.m_rref(A)
        free = [c for c in range(cols) if c not in pivots]
        basis = np.zeros((cols, len(free)), dtype=np.int64)
        for j, fc in enumerate(free):
            basis[fc, j] = 1
            for r, pc in enumerate(pivots):
                basis[pc, j] = self.neg(int(R[r, fc]))
        return basis

    def m_solve(self, A, b):
        """One solution x of A x = b, or None (b a 1-D code vector)."""
        x = self.m_solve_matrix(A, b.reshape(-1, 1))
        return None if x is None else x.ravel()

    def m_solve_matrix(self, A, B):
        """X with A X = B, or None when some column is unsolvable."""
        rows, cols = A.shape
        aug = np.concatenate([A, B], axis=1)
        R, pivots = self.m_rref(aug)
        if any(pc >= cols for pc in pivots):
            return None
        X = np.zeros((cols, B.shape[1]), dtype=np.int64)
        for r, pc in enumerate(pivots):
            X[pc] = R[r, cols:]
        return X

    def m_pow(self, A, k: int):
        n = A.shape[0]
        result = np.eye(n, dtype=np.int64)
        base = A
        while k:
            if k & 1:
                result = self.m_mul(result, base)
            base = self.m_mul(base, base) if k > 1 else base
            k >>= 1
        return result

    # -- descriptors -------------------------------------------------------------

    def cache_key(self):
        return ("finite", self.p, self.e, self.modulus)

    def descriptor(self) -> dict:
        d = {"kind": self.kind, "p": self.p, "e": self.e}
        if self.e > 1:
            d["modulus"] = list(self.modulus)
        return d

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self.cache_key() == other.cache_key()

    def __hash__(self):
        return hash(self.cache_key())


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@functools.lru_cache(maxsize=None)
def get_finite_field(p: int, e: int = 1) -> FiniteField:
    """Cached field with the canonical (least) modulus."""
    return FiniteField(p, e)

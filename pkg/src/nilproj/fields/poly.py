"""Polynomial arithmetic over GF(p).

Two representations live here:

* univariate polynomials as coefficient lists (index = degree), used for
  extension-field moduli and irreducibility testing;
* multivariate polynomials as ``{exponent tuple: coefficient}`` dicts with
  nonzero coefficients only, used by the rational function fields and by
  fraction-free elimination.

Large products are routed through dense numpy exponent boxes and FFT
convolution; coefficients stay below 2**52 by a wide margin, so rounding
back to integers is exact.
"""

from __future__ import annotations

import itertools

import numpy as np

# Products with at most this many coefficient pairs use the plain dict loop.
_DICT_MUL_LIMIT = 2048


# ---------------------------------------------------------------------------
# univariate polynomials as coefficient lists
# ---------------------------------------------------------------------------

def utrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def uadd(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return utrim(out)


def umul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return utrim(out)


def umod(a, f, p):
    """Remainder of a modulo f (f monic or at least with invertible lead)."""
    a = list(a)
    utrim(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df and a:
        q = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, c in enumerate(f):
            a[shift + i] = (a[shift + i] - q * c) % p
        utrim(a)
    return a


def upowmod(a, k, f, p):
    """a(x)^k mod f(x) by square and multiply."""
    result = [1]
    base = umod(a, f, p)
    while k:
        if k & 1:
            result = umod(umul(result, base, p), f, p)
        base = umod(umul(base, base, p), f, p)
        k >>= 1
    return result


def ugcd(a, b, p):
    a, b = utrim(list(a)), utrim(list(b))
    while b:
        a, b = b, umod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def uirreducible(f, p) -> bool:
    """Deterministic irreducibility test for f over GF(p).

    Uses x^(p^e) = x mod f together with gcd(x^(p^(e/q)) - x, f) = 1 for
    every prime divisor q of e = deg f.
    """
    f = utrim(list(f))
    e = len(f) - 1
    if e <= 0:
        return False
    if e == 1:
        return True
    x = [0, 1]
    xq = upowmod(x, p**e, f, p)
    if utrim(uadd(xq, [0, p - 1], p)) != []:
        return False
    for q in _prime_divisors(e):
        xr = upowmod(x, p ** (e // q), f, p)
        g = ugcd(uadd(xr, [0, p - 1], p), f, p)
        if len(g) != 1:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
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


def least_irreducible(p: int, e: int) -> list[int]:
    """The monic irreducible of degree e over GF(p) whose non-leading
    coefficients form the smallest base-p integer.

    This makes every extension field reproducible bit for bit.
    """
    if e == 1:
        return [0, 1]
    for code in range(p**e):
        coeffs = _digits(code, p, e) + [1]
        if uirreducible(coeffs, p):
            return coeffs
    raise AssertionError("no irreducible polynomial found")  # unreachable


def _digits(code: int, p: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        code, r = divmod(code, p)
        out.append(r)
    return out


# ---------------------------------------------------------------------------
# multivariate polynomials as exponent-dicts
# ---------------------------------------------------------------------------

def pzero() -> dict:
    return {}


def pconst(c: int, nvars: int, p: int) -> dict:
    c %= p
    return {(0,) * nvars: c} if c else {}


def pgen(i: int, nvars: int) -> dict:
    exp = [0] * nvars
    exp[i] = 1
    return {tuple(exp): 1}


def padd(a: dict, b: dict, p: int) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = (out.get(e, 0) + c) % p
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def pneg(a: dict, p: int) -> dict:
    return {e: (-c) % p for e, c in a.items()}


def psub(a: dict, b: dict, p: int) -> dict:
    return padd(a, pneg(b, p), p)


def pscale(a: dict, s: int, p: int) -> dict:
    s %= p
    if s == 0:
        return {}
    return {e: (c * s) % p for e, c in a.items()}


def pmul(a: dict, b: dict, p: int) -> dict:
    if not a or not b:
        return {}
    if len(a) * len(b) <= _DICT_MUL_LIMIT:
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = (out.get(e, 0) + ca * cb) % p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return out
    return box_to_poly(box_mul(poly_to_box(a), poly_to_box(b), p))


def ppow(a: dict, k: int, nvars: int, p: int) -> dict:
    out = pconst(1, nvars, p)
    base = a
    while k:
        if k & 1:
            out = pmul(out, base, p)
        base = pmul(base, base, p)
        k >>= 1
    return out


def pdegrees(a: dict, nvars: int) -> tuple[int, ...]:
    """Per-variable degree vector (all -1 treated as 0 for the zero poly)."""
    if not a:
        return (0,) * nvars
    return tuple(max(e[i] for e in a) for i in range(nvars))


def ptotal_degree(a: dict) -> int:
    if not a:
        return -1
    return max(sum(e) for e in a)


def plead(a: dict) -> tuple[tuple[int, ...], int]:
    """Leading term under lexicographic exponent order."""
    e = max(a)
    return e, a[e]


def pmonic(a: dict, p: int) -> dict:
    if not a:
        return a
    _, lc = plead(a)
    if lc == 1:
        return a
    return pscale(a, pow(lc, -1, p), p)


def pdiv_exact(f: dict, g: dict, p: int) -> dict:
    """Quotient f/g when g divides f exactly; raises otherwise."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    if not f:
        return {}
    if len(g) == 1:
        (eg, cg), = g.items()
        cinv = pow(cg, -1, p)
        out = {}
        for e, c in f.items():
            q = tuple(x - y for x, y in zip(e, eg))
            if any(x < 0 for x in q):
                raise ArithmeticError("inexact monomial division")
            out[q] = (c * cinv) % p
        return out
    rem = dict(f)
    quo: dict = {}
    eg, cg = plead(g)
    cginv = pow(cg, -1, p)
    while rem:
        er, cr = plead(rem)
        eq = tuple(x - y for x, y in zip(er, eg))
        if any(x < 0 for x in eq):
            raise ArithmeticError("inexact polynomial division")
        cq = (cr * cginv) % p
        quo[eq] = cq
        rem = psub(rem, pmul({eq: cq}, g, p), p)
    return quo


def pdivides(g: dict, f: dict, p: int) -> bool:
    try:
        pdiv_exact(f, g, p)
        return True
    except ArithmeticError:
        return False


# ---- gcd ------------------------------------------------------------------

def pgcd(a: dict, b: dict, p: int, nvars: int) -> dict:
    """Monic gcd over GF(p)[t1..tm].

    Strips the common monomial content, tries the cheap divisibility fast
    paths, and then runs a primitive PRS in the variable of least degree.
    """
    if not a:
        return pmonic(b, p)
    if not b:
        return pmonic(a, p)
    if nvars == 0:
        return {(): 1}

    mina = tuple(min(e[i] for e in a) for i in range(nvars))
    minb = tuple(min(e[i] for e in b) for i in range(nvars))
    common = tuple(min(x, y) for x, y in zip(mina, minb))
    if any(mina):
        a = {tuple(x - y for x, y in zip(e, mina)): c for e, c in a.items()}
    if any(minb):
        b = {tuple(x - y for x, y in zip(e, minb)): c for e, c in b.items()}
    mono = {common: 1}

    if len(a) == 1 or len(b) == 1:
        return mono  # contents were stripped, so nothing further divides both

    small, large = (a, b) if len(a) <= len(b) else (b, a)
    if len(small) * len(large) <= 100_000 and pdivides(small, large, p):
        return pmul(mono, pmonic(small, p), p)

    if nvars == 1:
        core = _pgcd_uni(a, b, p)
    else:
        core = None
        for pad in (0, 2, 5):
            core = _kronecker_gcd_attempt(a, b, p, nvars, pad)
            if core is not None:
                break
        if core is None:
            va = pdegrees(a, nvars)
            vb = pdegrees(b, nvars)
            active = [v for v in range(nvars) if va[v] or vb[v]]
            main = min(active, key=lambda v: (min(va[v], vb[v]), v))
            if main != nvars - 1:
                a = _swap_var(a, main, nvars - 1)
                b = _swap_var(b, main, nvars - 1)
            core = _pgcd_multi(a, b, p, nvars)
            if main != nvars - 1:
                core = _swap_var(core, main, nvars - 1)
    return pmonic(pmul(mono, core, p), p)


def _kronecker_gcd_attempt(a: dict, b: dict, p: int, nvars: int, pad: int):
    """Kronecker-substitution gcd with verification.

    The substitution t_i -> u^(stride_i) is a ring homomorphism, so the image
    of the true gcd divides gcd of the images; when the univariate gcd has no
    spurious extra factor, decoding and two exact divisions certify it.
    """
    da = pdegrees(a, nvars)
    db = pdegrees(b, nvars)
    shape = tuple(min(x, y) + 1 + pad for x, y in zip(da, db))
    strides = [1] * nvars
    for i in range(nvars - 2, -1, -1):
        strides[i] = strides[i + 1] * shape[i + 1]

    def flatten(f):
        out = np.zeros(sum((d) * s for d, s in zip(pdegrees(f, nvars), strides)) + 1,
                       dtype=np.int64)
        for e, c in f.items():
            out[sum(x * s for x, s in zip(e, strides))] = c
        return out

    g = _uni_gcd_np(flatten(a), flatten(b), p)
    cand = {}
    for idx in np.nonzero(g)[0]:
        exps = []
        rem = int(idx)
        for s in strides:
            q, rem = divmod(rem, s)
            exps.append(q)
        if any(x >= sh for x, sh in zip(exps, shape)):
            return None
        cand[tuple(exps)] = int(g[idx])
    cand = pmonic(cand, p)
    if pdivides(cand, a, p) and pdivides(cand, b, p):
        return cand
    return None


def _uni_gcd_np(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Monic gcd of dense univariate coefficient arrays over GF(p)."""

    def trim(x):
        nz = np.nonzero(x)[0]
        return x[: int(nz[-1]) + 1] if nz.size else x[:0]

    a, b = trim(a % p), trim(b % p)
    while b.size:
        # a mod b by synthetic division
        binv = pow(int(b[-1]), -1, p)
        r = a.copy()
        for shift in range(r.size - b.size, -1, -1):
            c = r[shift + b.size - 1]
            if c:
                q = (int(c) * binv) % p
                r[shift : shift + b.size] = (r[shift : shift + b.size] - q * b) % p
        a, b = b, trim(r)
    if a.size:
        a = (a * pow(int(a[-1]), -1, p)) % p
    return a


def _swap_var(a: dict, i: int, j: int) -> dict:
    out = {}
    for e, c in a.items():
        le = list(e)
        le[i], le[j] = le[j], le[i]
        out[tuple(le)] = c
    return out


def _pgcd_uni(a: dict, b: dict, p: int) -> dict:
    fa = _to_ulist(a)
    fb = _to_ulist(b)
    g = ugcd(fa, fb, p)
    return {(i,): c for i, c in enumerate(g) if c}


def _to_ulist(a: dict) -> list[int]:
    n = max(e[0] for e in a) + 1
    out = [0] * n
    for e, c in a.items():
        out[e[0]] = c
    return out


def _pgcd_multi(a: dict, b: dict, p: int, nvars: int) -> dict:
    conta, ppa = _content_primitive(a, p, nvars)
    contb, ppb = _content_primitive(b, p, nvars)
    cont = pgcd(conta, contb, p, nvars - 1)
    f, g = ppa, ppb
    while True:
        if not g:
            result = f
            break
        r = _prem_lastvar(f, g, p, nvars)
        if not r:
            result = g
            break
        _, r = _content_primitive(r, p, nvars)
        f, g = g, r
    _, result = _content_primitive(result, p, nvars)
    lifted = {e + (0,): c for e, c in cont.items()}
    return pmul(lifted, result, p)


def _split_lastvar(a: dict, nvars: int) -> dict[int, dict]:
    """View a as a univariate polynomial in the last variable."""
    out: dict[int, dict] = {}
    for e, c in a.items():
        out.setdefault(e[-1], {})[e[:-1]] = c
    return out


def _join_lastvar(coeffs: dict[int, dict]) -> dict:
    out = {}
    for d, poly in coeffs.items():
        for e, c in poly.items():
            out[e + (d,)] = c
    return out


def _content_primitive(a: dict, p: int, nvars: int):
    """Content (gcd of last-variable coefficients) and primitive part."""
    coeffs = _split_lastvar(a, nvars)
    cont: dict = {}
    for poly in coeffs.values():
        cont = pgcd(cont, poly, p, nvars - 1)
        if cont == {(0,) * (nvars - 1): 1}:
            break
    if not cont:
        return {}, {}
    prim = {
        d: pdiv_exact(poly, cont, p) for d, poly in coeffs.items()
    }
    return cont, _join_lastvar(prim)


def _prem_lastvar(f: dict, g: dict, p: int, nvars: int) -> dict:
    """Pseudo-remainder of f by g with respect to the last variable."""
    fc = _split_lastvar(f, nvars)
    gc = _split_lastvar(g, nvars)
    dg = max(gc)
    lg = gc[dg]
    rem = fc
    while rem and max(rem) >= dg:
        dr = max(rem)
        lr = rem[dr]
        # rem <- lg*rem - lr*g*t^(dr-dg)
        new: dict[int, dict] = {}
        for d, poly in rem.items():
            new[d] = pmul(poly, lg, p)
        for d, poly in gc.items():
            shifted = d + dr - dg
            term = pmul(poly, lr, p)
            cur = new.get(shifted, {})
            cur = psub(cur, term, p)
            if cur:
                new[shifted] = cur
            else:
                new.pop(shifted, None)
        rem = {d: poly for d, poly in new.items() if poly}
    return _join_lastvar(rem)


# ---- numpy exponent boxes ---------------------------------------------------

def poly_to_box(a: dict) -> np.ndarray:
    nvars = len(next(iter(a)))
    shape = tuple(max(e[i] for e in a) + 1 for i in range(nvars))
    box = np.zeros(shape, dtype=np.int64)
    for e, c in a.items():
        box[e] = c
    return box


def box_to_poly(box: np.ndarray) -> dict:
    nz = np.nonzero(box)
    return {
        tuple(int(i) for i in idx): int(box[idx])
        for idx in zip(*nz)
    }


def box_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact product of coefficient boxes modulo p via FFT convolution."""
    from scipy.signal import fftconvolve

    if a.size == 0 or b.size == 0:
        return np.zeros((0,) * max(a.ndim, b.ndim), dtype=np.int64)
    if a.size * b.size <= _DICT_MUL_LIMIT:
        out = np.zeros(
            tuple(sa + sb - 1 for sa, sb in zip(a.shape, b.shape)),
            dtype=np.int64,
        )
        for idx in zip(*np.nonzero(a)):
            sl = tuple(slice(i, i + s) for i, s in zip(idx, b.shape))
            out[sl] += a[idx] * b
        return out % p
    conv = fftconvolve(a.astype(np.float64), b.astype(np.float64))
    return np.rint(conv).astype(np.int64) % p


def peval(a: dict, point: tuple[int, ...], field) -> int:
    """Evaluate at a tuple of finite-field codes."""
    if not a:
        return field.zero
    nvars = len(point)
    degs = pdegrees(a, nvars)
    pows = []
    for v in range(nvars):
        row = [field.one]
        for _ in range(degs[v]):
            row.append(field.mul(row[-1], point[v]))
        pows.append(row)
    acc = field.zero
    for e, c in a.items():
        term = field.from_int(c)
        for v, d in enumerate(e):
            if d:
                term = field.mul(term, pows[v][d])
        acc = field.add(acc, term)
    return acc


def pstr(a: dict, names: tuple[str, ...]) -> str:
    """Human form, lexicographically sorted for reproducible output."""
    if not a:
        return "0"
    parts = []
    for e in sorted(a, reverse=True):
        c = a[e]
        factors = []
        if c != 1 or not any(e):
            factors.append(str(c))
        for name, d in zip(names, e):
            if d == 1:
                factors.append(name)
            elif d > 1:
                factors.append(f"{name}^{d}")
        parts.append("*".join(factors))
    return " + ".join(parts)


def pparse_monomials(spec, nvars: int, p: int) -> dict:
    """Build a polynomial from ``{exponent tuple: coeff}`` pairs, reducing mod p."""
    out = {}
    for e, c in spec.items():
        c %= p
        if c:
            out[tuple(e)] = c
    for e in out:
        if len(e) != nvars:
            raise ValueError("exponent arity mismatch")
    return out


def all_monomials_upto(nvars: int, deg: int):
    """Exponent tuples with entries <= deg (testing helper)."""
    return itertools.product(range(deg + 1), repeat=nvars)

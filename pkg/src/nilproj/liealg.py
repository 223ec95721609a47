"""Presentations of p-nilpotent restricted Lie algebras as matrix spans.

An algebra is given by a basis of strictly upper-triangular d x d matrices
over GF(p).  In a matrix algebra the restriction map is the plain p-th matrix
power, so structure constants and p-power coordinates are computed directly
from the ambient matrices, and the null cone is {x : x^p = 0}.

Validation failures are data (report entries), not exceptions, so corpora
with deliberately broken inputs can be examined.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .fields import FiniteField, FunctionField, Matrix, get_finite_field, lincomb
from .fields import poly as _poly


@dataclass(frozen=True)
class ValidationFinding:
    kind: str
    where: tuple
    message: str


class LieAlgebraPresentation:
    """A span of strictly upper-triangular matrices closed under bracket
    and p-th power."""

    def __init__(self, p: int, ambient: int, basis, preset: tuple | None = None,
                 null_components=None):
        self.p = p
        self.d = ambient
        self.field = get_finite_field(p, 1)
        mats = []
        for b in basis:
            m = np.asarray(b, dtype=np.int64) % p
            if m.shape != (ambient, ambient):
                raise ValueError("basis matrix has wrong ambient size")
            m.setflags(write=False)
            mats.append(m)
        self.basis = tuple(mats)
        self.n = len(mats)
        self.preset = preset
        self.null_components = null_components
        self._findings: list[ValidationFinding] = []
        self._span_ok = False
        self.structure = None  # (n, n, n): coords of [e_i, e_j]
        self.ppower = None  # (n, n): coords of e_i^p
        self._analyze()

    # -- derived data ------------------------------------------------------------

    def _analyze(self):
        f = self.field
        n, d = self.n, self.d
        findings = self._findings

        for i, m in enumerate(self.basis):
            bad = [(r, c) for r in range(d) for c in range(d) if c <= r and m[r, c]]
            if bad:
                findings.append(ValidationFinding(
                    "not-strictly-upper-triangular", (i,) + bad[0],
                    f"basis element {i} has a nonzero entry at {bad[0]}",
                ))

        if n == 0:
            self._span_ok = True
            self.structure = np.zeros((0, 0, 0), dtype=np.int64)
            self.ppower = np.zeros((0, 0), dtype=np.int64)
            return

        B = np.stack([m.reshape(-1) for m in self.basis])  # (n, d*d)
        aug = np.concatenate([B, np.eye(n, dtype=np.int64)], axis=1)
        R, pivots = f.m_rref(aug)
        left_pivots = [c for c in pivots if c < d * d]
        if len(left_pivots) < n:
            findings.append(ValidationFinding(
                "linearly-dependent-basis", (),
                "basis matrices are linearly dependent",
            ))
            return
        self._R = R[:, : d * d]
        self._S = R[:, d * d :]
        self._pivots = left_pivots
        self._span_ok = True

        structure = np.zeros((n, n, n), dtype=np.int64)
        closed = True
        for i in range(n):
            for j in range(i + 1, n):
                br = (self.basis[i] @ self.basis[j] - self.basis[j] @ self.basis[i]) % self.p
                coords = self._coords_prime(br.reshape(-1))
                if coords is None:
                    findings.append(ValidationFinding(
                        "bracket-outside-span", (i, j),
                        f"[e{i + 1}, e{j + 1}] is not in the span",
                    ))
                    closed = False
                    continue
                structure[i, j] = coords
                structure[j, i] = (-coords) % self.p

        ppower = np.zeros((n, n), dtype=np.int64)
        ppow_ok = True
        for i in range(n):
            m = np.linalg.matrix_power(self.basis[i], self.p) % self.p
            coords = self._coords_prime(m.reshape(-1))
            if coords is None:
                findings.append(ValidationFinding(
                    "p-power-outside-span", (i,),
                    f"e{i + 1}^p is not in the span",
                ))
                ppow_ok = False
                continue
            ppower[i] = coords

        if not (closed and ppow_ok):
            return
        self.structure = structure
        self.ppower = ppower

        for i in range(n):
            coords = ppower[i]
            steps = 0
            bound = max(1, math.ceil(math.log(max(self.d, 2), self.p))) + 1
            while coords.any() and steps <= bound:
                mat = sum(int(c) * self.basis[k] for k, c in enumerate(coords)) % self.p
                mat = np.linalg.matrix_power(mat, self.p) % self.p
                coords = self._coords_prime(mat.reshape(-1))
                steps += 1
            if coords is None or coords.any():
                findings.append(ValidationFinding(
                    "not-p-nilpotent", (i,),
                    f"iterated p-power of e{i + 1} does not reach zero",
                ))

        # restricted-representation compatibility: ad(e_i^[p]) = ad(e_i)^p
        ad = np.zeros((n, n, n), dtype=np.int64)
        for i in range(n):
            ad[i] = structure[i].T  # column j = coords of [e_i, e_j]
        for i in range(n):
            lhs = np.zeros((n, n), dtype=np.int64)
            for k, c in enumerate(ppower[i]):
                if c:
                    lhs = (lhs + int(c) * ad[k]) % self.p
            rhs = np.linalg.matrix_power(ad[i], self.p) % self.p
            if not (lhs == rhs).all():
                findings.append(ValidationFinding(
                    "restricted-map-incompatible", (i,),
                    f"ad(e{i + 1}^[p]) differs from ad(e{i + 1})^p",
                ))

    def _coords_prime(self, vec: np.ndarray):
        """Coordinates of a flattened GF(p) matrix in the span, or None."""
        f = self.field
        cp = vec[self._pivots]
        recon = f.m_mul(cp.reshape(1, -1), self._R).ravel()
        if not (recon == vec % self.p).all():
            return None
        return f.m_mul(cp.reshape(1, -1), self._S).ravel()

    # -- public api ----------------------------------------------------------------

    def is_valid(self) -> bool:
        return not self._findings

    def cache_key(self):
        return (self.p, self.d, tuple(m.tobytes() for m in self.basis))

    def coords_in_span(self, field, vec):
        """Coordinates of a flattened ambient matrix over any extension field."""
        if isinstance(field, FiniteField):
            v = np.asarray(vec, dtype=np.int64)
            cp = v[list(self._pivots)]
            recon = field.m_mul(cp.reshape(1, -1), self._R).ravel()
            if not (recon == v).all():
                return None
            return field.m_mul(cp.reshape(1, -1), self._S).ravel()
        cp = [vec[c] for c in self._pivots]
        recon = [field.zero] * len(vec)
        for c, row in zip(cp, self._R):
            if c.is_zero():
                continue
            for j, r in enumerate(row):
                if r:
                    recon[j] = recon[j] + c * field.from_int(int(r))
        if any(not (recon[j] - vec[j]).is_zero() for j in range(len(vec))):
            return None
        coords = []
        for j in range(self.n):
            acc = field.zero
            for c, s in zip(cp, self._S[:, j]):
                if s and not c.is_zero():
                    acc = acc + c * field.from_int(int(s))
            coords.append(acc)
        return coords

    def element_matrix(self, coeffs, field) -> Matrix:
        """Ambient matrix of sum(coeffs_i * e_i) over the given field."""
        return lincomb(field, coeffs, self.basis)

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "ambient": self.d,
            "basis": [m.tolist() for m in self.basis],
        }

    def __repr__(self):
        tag = f" preset={self.preset}" if self.preset else ""
        return f"LieAlgebraPresentation(p={self.p}, d={self.d}, n={self.n}{tag})"


def algebra_validate(pres: LieAlgebraPresentation) -> list[ValidationFinding]:
    """All invariant violations; an empty list means the presentation is valid."""
    return list(pres._findings)


def assert_valid(pres: LieAlgebraPresentation):
    if not pres.is_valid():
        first = pres._findings[0]
        raise ValueError(f"invalid presentation: {first.message}")


# ---------------------------------------------------------------------------
# p-power map and null cone
# ---------------------------------------------------------------------------

def p_power_coords(pres: LieAlgebraPresentation, coeffs, field):
    """Coordinates of (sum coeffs_i e_i)^p in the basis, over the coefficient field."""
    assert_valid(pres)
    if len(coeffs) != pres.n:
        raise ValueError("coefficient vector has wrong length")
    x = pres.element_matrix(coeffs, field)
    xp = x.pow(pres.p)
    if isinstance(field, FiniteField):
        flat = xp.a.reshape(-1)
    else:
        flat = [entry for row in xp.r for entry in row]
    coords = pres.coords_in_span(field, flat)
    if coords is None:
        raise ArithmeticError("p-th power left the span; presentation corrupted")
    return coords


def null_cone_test(pres: LieAlgebraPresentation, coeffs, field) -> bool:
    """True when the element's p-th power vanishes."""
    coords = p_power_coords(pres, coeffs, field)
    if isinstance(field, FiniteField):
        return not np.asarray(coords).any()
    return all(c.is_zero() for c in coords)


def null_cone_points(pres: LieAlgebraPresentation, field: FiniteField):
    """Projective representatives of null-cone points, deterministically ordered.

    One representative per projective class, first nonzero coordinate equal
    to 1; classes are emitted by position of the leading 1, then by code
    order of the remaining coordinates.
    """
    assert_valid(pres)
    if not isinstance(field, FiniteField):
        raise ValueError("null-cone enumeration needs a finite field")
    n = pres.n
    for lead in range(n):
        free = n - lead - 1
        for rest in itertools.product(range(field.q), repeat=free):
            coeffs = (0,) * lead + (1,) + rest
            if null_cone_test(pres, coeffs, field):
                yield coeffs


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

def _unit_matrix(d: int, i: int, j: int) -> np.ndarray:
    m = np.zeros((d, d), dtype=np.int64)
    m[i, j] = 1
    return m


def preset_algebra(name: str, p: int, param: int | None = None) -> LieAlgebraPresentation:
    """Named algebras: two-roots-sl3, heisenberg, full-nilradical(d), one-dim."""
    if name == "two-roots-sl3":
        basis = [_unit_matrix(3, 0, 1), _unit_matrix(3, 0, 2)]
        return LieAlgebraPresentation(p, 3, basis, preset=(name, None))
    if name == "heisenberg":
        basis = [_unit_matrix(3, 0, 1), _unit_matrix(3, 1, 2), _unit_matrix(3, 0, 2)]
        comps = None
        if p == 2:
            # null cone c1*c2 = 0 splits into two coordinate planes
            comps = (
                (_poly.pgen(0, 3), _poly.pzero(), _poly.pgen(2, 3)),
                (_poly.pzero(), _poly.pgen(1, 3), _poly.pgen(2, 3)),
            )
        return LieAlgebraPresentation(p, 3, basis, preset=(name, None),
                                      null_components=comps)
    if name == "full-nilradical":
        if param is None or param < 2:
            raise ValueError("full-nilradical needs an ambient size >= 2")
        d = param
        basis = [_unit_matrix(d, i, j) for i in range(d) for j in range(i + 1, d)]
        return LieAlgebraPresentation(p, d, basis, preset=(name, d))
    if name == "one-dim":
        return LieAlgebraPresentation(p, 2, [_unit_matrix(2, 0, 1)], preset=(name, None))
    raise ValueError(f"unknown preset {name!r}")


def algebra_from_json_dict(data: dict) -> LieAlgebraPresentation:
    try:
        p = int(data["p"])
        ambient = int(data["ambient"])
        basis = data["basis"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed algebra file: {exc}") from exc
    if not isinstance(basis, list) or not basis:
        raise ValueError("malformed algebra file: basis must be a nonempty list")
    mats = []
    for m in basis:
        arr = np.asarray(m, dtype=np.int64)
        if arr.shape != (ambient, ambient):
            raise ValueError("malformed algebra file: basis matrix shape mismatch")
        if ((arr < 0) | (arr >= p)).any():
            raise ValueError("malformed algebra file: entries must lie in [0, p)")
        mats.append(arr)
    return LieAlgebraPresentation(p, ambient, mats)


def algebra_from_file(path: str) -> LieAlgebraPresentation:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return algebra_from_json_dict(data)

"""Minimal projective resolutions over u(g) and small-scale cohomology.

Over the local algebra u(g) the projective cover of a module lifts a basis
of its top, so minimal resolutions are built from free modules u(g)^b with
b the top dimension of the current syzygy.  Cohomology of M is computed by
mapping a minimal resolution of the trivial module into M; by minimality the
complex mapped into the trivial module itself has zero differentials, which
pins dim H^i(g, k) = b_i.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import uenv
from .fields import FiniteField, Matrix, get_finite_field
from .liealg import LieAlgebraPresentation, assert_valid
from .modrep import (
    NOT_PROJECTIVE,
    PROJECTIVE,
    ModuleRep,
    assert_module_valid,
    base_change,
    radical_filtration,
)


@dataclass(frozen=True)
class ResolutionSegment:
    """An initial segment of a minimal resolution of N by free modules.

    betti[i] is the rank of the i-th free module; differentials[i-1] is the
    map u(g)^{b_i} -> u(g)^{b_{i-1}} written in the PBW coordinate bases;
    augmentation maps u(g)^{b_0} onto N.  syzygies[i-1] is the i-th kernel
    as a module in its own right.
    """

    pres: LieAlgebraPresentation
    field: FiniteField
    length: int
    betti: tuple[int, ...]
    augmentation: Matrix
    differentials: tuple[Matrix, ...]
    syzygies: tuple[ModuleRep, ...]


def _monomial_actions(pres, M: ModuleRep) -> list[np.ndarray]:
    """rho(mu) for every PBW monomial mu, in pbw_basis order."""
    field = M.field
    basis = uenv.pbw_basis(pres)
    index = {e: i for i, e in enumerate(basis)}
    acts = [a.a for a in M.actions]
    out: list[np.ndarray | None] = [None] * len(basis)
    out[0] = np.eye(M.dim, dtype=np.int64)
    for pos, exps in enumerate(basis):
        if out[pos] is not None:
            continue
        i = next(k for k, a in enumerate(exps) if a)
        parent = list(exps)
        parent[i] -= 1
        out[pos] = field.m_mul(acts[i], out[index[tuple(parent)]])
    return out


def _top_representatives(M: ModuleRep) -> list[int]:
    """Indices of standard basis vectors spanning a complement of rad M."""
    field = M.field
    m = M.dim
    if m == 0:
        return []
    Xs = [a.a for a in M.actions]
    if Xs:
        images = np.concatenate(Xs, axis=1)
        R, pivots = field.m_rref(images.T)
        rad_rows = R[: len(pivots)]
    else:
        rad_rows = np.zeros((0, m), dtype=np.int64)
    _, rad_pivots = field.m_rref(rad_rows) if rad_rows.size else (None, [])
    return [i for i in range(m) if i not in rad_pivots]


class _ResolutionBuilder:
    """Extends a minimal resolution stage by stage, reusing earlier work."""

    def __init__(self, pres: LieAlgebraPresentation, N: ModuleRep):
        self.pres = pres
        self.field = N.field
        reg = base_change(uenv.regular_module(pres), N.field)
        self.reg_actions = [a.a for a in reg.actions]
        self.pn = reg.dim
        self.betti: list[int] = []
        self.augmentation: Matrix | None = None
        self.differentials: list[Matrix] = []
        self.syzygies: list[ModuleRep] = []
        self._current = N  # module to cover next
        self._embed: np.ndarray | None = None  # current syzygy inside u(g)^{b}

    def extend_to(self, length: int):
        while len(self.betti) <= length:
            self._step()

    def _step(self):
        pres, field, pn = self.pres, self.field, self.pn
        V = self._current
        reps = _top_representatives(V)
        b = len(reps)
        mono = _monomial_actions(pres, V) if b else []
        cover = np.zeros((V.dim, b * pn), dtype=np.int64)
        for s, rep in enumerate(reps):
            for mu, act in enumerate(mono):
                cover[:, s * pn + mu] = act[:, rep]
        if b and field.m_rank(cover) != V.dim:
            raise AssertionError("projective cover failed to surject")

        if self.augmentation is None:
            self.augmentation = Matrix(field, cover)
        else:
            d = field.m_mul(self._embed, cover) if b else np.zeros(
                (self._embed.shape[0], 0), dtype=np.int64
            )
            self.differentials.append(Matrix(field, d))
        self.betti.append(b)

        kernel = field.m_nullspace(cover) if b else np.zeros((0, 0), dtype=np.int64)
        k = kernel.shape[1]
        free_big = self._free_actions(b)
        syz_actions = []
        for X in free_big:
            img = field.m_mul(X, kernel)
            coords = field.m_solve_matrix(kernel, img)
            if coords is None:
                raise AssertionError("syzygy is not closed under the action")
            syz_actions.append(Matrix(field, coords))
        syz = ModuleRep(pres, field, syz_actions) if pres.n else ModuleRep(pres, field, [])
        self.syzygies.append(syz)
        self._embed = kernel
        self._current = syz

    def _free_actions(self, b: int) -> list[np.ndarray]:
        pn = self.pn
        out = []
        for X in self.reg_actions:
            big = np.zeros((b * pn, b * pn), dtype=np.int64)
            for s in range(b):
                big[s * pn : (s + 1) * pn, s * pn : (s + 1) * pn] = X
            out.append(big)
        return out

    def segment(self, length: int) -> ResolutionSegment:
        self.extend_to(length)
        return ResolutionSegment(
            pres=self.pres,
            field=self.field,
            length=length,
            betti=tuple(self.betti[: length + 1]),
            augmentation=self.augmentation,
            differentials=tuple(self.differentials[:length]),
            syzygies=tuple(self.syzygies[:length]),
        )


_TRIVIAL_CACHE: dict = {}


def _trivial_builder(pres: LieAlgebraPresentation, field: FiniteField) -> _ResolutionBuilder:
    key = (pres.cache_key(), field.cache_key())
    builder = _TRIVIAL_CACHE.get(key)
    if builder is None:
        from .modrep import trivial_module

        triv = base_change(trivial_module(pres, 1), field)
        builder = _ResolutionBuilder(pres, triv)
        _TRIVIAL_CACHE[key] = builder
    return builder


def minimal_resolution(pres: LieAlgebraPresentation, N: ModuleRep, length: int) -> ResolutionSegment:
    """Betti numbers, differentials, and syzygies of a minimal resolution of N."""
    assert_valid(pres)
    assert_module_valid(pres, N)
    if length < 0:
        raise ValueError("resolution length must be >= 0")
    if not isinstance(N.field, FiniteField):
        raise ValueError("resolutions are computed over finite fields")
    if N.dim == 1 and all(a.is_zero() for a in N.actions):
        return _trivial_builder(pres, N.field).segment(length)
    return _ResolutionBuilder(pres, N).segment(length)


def cohomology_dims(pres: LieAlgebraPresentation, M: ModuleRep, max_degree: int) -> list[int]:
    """Exact dimensions of H^i(g, M) = Ext^i_{u(g)}(k, M) for i = 0..max_degree."""
    assert_valid(pres)
    assert_module_valid(pres, M)
    field = M.field
    builder = _trivial_builder(pres, field)
    seg = builder.segment(max_degree + 1)
    maps = [None] + [
        _hom_complex_map(pres, M, seg, i) for i in range(1, max_degree + 2)
    ]
    dims = []
    m = M.dim
    for i in range(max_degree + 1):
        rank_in = field.m_rank(maps[i]) if i >= 1 else 0
        rank_out = field.m_rank(maps[i + 1])
        dims.append(seg.betti[i] * m - rank_out - rank_in)
    return dims


def _hom_complex_map(pres, M: ModuleRep, seg: ResolutionSegment, i: int) -> np.ndarray:
    """Matrix of Hom(P_{i-1}, M) -> Hom(P_i, M), phi -> phi o d_i.

    Hom(u(g)^b, M) is identified with M^b through the images of the free
    generators; the map is assembled from the generator columns of d_i and
    the monomial action of u(g) on M.
    """
    field = M.field
    m = M.dim
    pn = field.p**pres.n
    b_prev = seg.betti[i - 1]
    b_cur = seg.betti[i]
    d = seg.differentials[i - 1].a
    mono = _monomial_actions(pres, M)
    out = np.zeros((b_cur * m, b_prev * m), dtype=np.int64)
    for l in range(b_cur):
        col = d[:, l * pn]  # image of the l-th free generator
        for j in range(b_prev):
            block = np.zeros((m, m), dtype=np.int64)
            for mu in range(pn):
                c = int(col[j * pn + mu])
                if c:
                    block = field.m_add(block, field.m_scale(c, mono[mu]))
            out[l * m : (l + 1) * m, j * m : (j + 1) * m] = block
    return out


def h1_projectivity_check(pres: LieAlgebraPresentation, M: ModuleRep) -> str:
    """PROJECTIVE exactly when H^1(g, M) vanishes."""
    dims = cohomology_dims(pres, M, 1)
    return PROJECTIVE if dims[1] == 0 else NOT_PROJECTIVE


# ---------------------------------------------------------------------------
# isomorphism testing (for the rank-one periodicity check)
# ---------------------------------------------------------------------------

def modules_isomorphic(A: ModuleRep, B: ModuleRep, max_candidates: int = 5000) -> bool:
    """Equivariant invertible map search by solving T X_i = Y_i T.

    The solution space of the linear system is scanned in code order for an
    invertible element; small solution spaces are covered exhaustively, large
    ones up to max_candidates combinations.
    """
    if A.dim != B.dim or A.field != B.field or A.pres.cache_key() != B.pres.cache_key():
        return False
    if radical_filtration(A).dims != radical_filtration(B).dims:
        return False
    m = A.dim
    if m == 0:
        return True
    field = A.field
    n = A.pres.n
    eye = np.eye(m, dtype=np.int64)
    # constraint rows for vec(T): (X_B^T (x) I - I (x) X_A) vec... built densely
    rows = []
    for Xa, Xb in zip(A.actions, B.actions):
        # T @ Xa - Xb @ T = 0; entry (r, c): sum_k T[r,k] Xa[k,c] - Xb[r,k] T[k,c]
        for r in range(m):
            for c in range(m):
                row = np.zeros(m * m, dtype=np.int64)
                for k in range(m):
                    row[r * m + k] = field.add(row[r * m + k], int(Xa.a[k, c]))
                    row[k * m + c] = field.sub(int(row[k * m + c]), int(Xb.a[r, k]))
                rows.append(row)
    if rows:
        system = np.stack(rows)
        basis = field.m_nullspace(system)
    else:
        basis = np.eye(m * m, dtype=np.int64)
    k = basis.shape[1]
    if k == 0:
        return False
    total = field.q**k
    tried = 0
    import itertools

    for combo in itertools.product(range(field.q), repeat=k):
        if tried >= max_candidates or tried >= total:
            break
        tried += 1
        if not any(combo):
            continue
        vec = np.zeros(m * m, dtype=np.int64)
        for ci, col in zip(combo, basis.T):
            if ci:
                vec = field.m_add(vec, field.m_scale(ci, col))
        T = vec.reshape(m, m)
        if field.m_rank(T) == m:
            return True
    return False

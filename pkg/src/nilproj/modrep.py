"""Finite-dimensional u(g)-modules as tuples of action matrices.

A module is one m x m matrix per Lie basis element, subject to the
commutator identities and the p-th power condition of a restricted
representation.  Because u(g) is local with the trivial module as its only
simple, rad M = sum_i X_i(M), the top of M is M/rad M, and M is projective
exactly when dim M = (dim top M) * p^n; that dimension count is the oracle
every other projectivity route is checked against.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from . import uenv
from .fields import FiniteField, FunctionField, Matrix, embedded, get_finite_field
from .liealg import (
    LieAlgebraPresentation,
    ValidationFinding,
    assert_valid,
    null_cone_test,
)

PROJECTIVE = "PROJECTIVE"
NOT_PROJECTIVE = "NOT_PROJECTIVE"


class ModuleRep:
    """A u(g)-module: dimension, coefficient field, one action matrix per
    basis element of g."""

    def __init__(self, pres: LieAlgebraPresentation, field, actions):
        self.pres = pres
        self.field = field
        self.actions = tuple(actions)
        if len(self.actions) != pres.n:
            raise ValueError("one action matrix per Lie basis element required")
        dims = {a.rows for a in self.actions} | {a.cols for a in self.actions}
        if len(dims) > 1:
            raise ValueError("action matrices must be square of equal size")
        self.dim = dims.pop() if dims else 0
        for a in self.actions:
            if a.field != field:
                raise ValueError("action matrix over the wrong field")

    @staticmethod
    def from_int_actions(pres, field, dim, int_mats) -> "ModuleRep":
        if pres.n == 0:
            return ModuleRep(pres, field, [])
        mats = [Matrix.from_ints(field, m) for m in int_mats]
        if not mats and dim:
            raise ValueError("missing actions")
        return ModuleRep(pres, field, mats)

    def action_arrays(self):
        """Raw int64 code arrays (finite fields only)."""
        return [a.a for a in self.actions]

    def cache_key(self):
        return (
            self.pres.cache_key(),
            self.field.cache_key(),
            tuple(a.a.tobytes() if a.a is not None else a.r for a in self.actions),
        )

    def __repr__(self):
        return f"ModuleRep(dim={self.dim}, field={self.field!r}, n={self.pres.n})"


def module_validate(pres: LieAlgebraPresentation, M: ModuleRep) -> list[ValidationFinding]:
    """Violated commutator or p-power conditions, with the offending indices."""
    findings: list[ValidationFinding] = []
    if not pres.is_valid():
        findings.append(ValidationFinding(
            "invalid-presentation", (), "underlying presentation is invalid"))
        return findings
    if M.field.p != pres.p:
        findings.append(ValidationFinding(
            "characteristic-mismatch", (), "module field has the wrong characteristic"))
        return findings
    if len(M.actions) != pres.n:
        findings.append(ValidationFinding(
            "action-count", (), "one action matrix per basis element required"))
        return findings
    n = pres.n
    for i in range(n):
        for j in range(i + 1, n):
            lhs = M.actions[i] @ M.actions[j] - M.actions[j] @ M.actions[i]
            rhs = _action_lincomb(M, pres.structure[i, j])
            if lhs != rhs:
                findings.append(ValidationFinding(
                    "commutator", (i, j),
                    f"[X{i + 1}, X{j + 1}] does not match the structure constants"))
    for i in range(n):
        lhs = M.actions[i].pow(pres.p)
        rhs = _action_lincomb(M, pres.ppower[i])
        if lhs != rhs:
            findings.append(ValidationFinding(
                "p-power", (i,),
                f"X{i + 1}^p does not match the restricted p-power"))
    return findings


def _action_lincomb(M: ModuleRep, int_coords) -> Matrix:
    out = Matrix.zeros(M.field, M.dim, M.dim)
    for c, X in zip(int_coords, M.actions):
        c = int(c)
        if c:
            scalar = c if isinstance(M.field, FiniteField) else M.field.from_int(c)
            out = out + X.scale(scalar)
    return out


def assert_module_valid(pres, M):
    findings = module_validate(pres, M)
    if findings:
        raise ValueError(f"invalid module: {findings[0].message}")


# ---------------------------------------------------------------------------
# radical structure and the dimension-count oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RadicalFiltration:
    dims: tuple[int, ...]  # [dim M, dim rad M, ..., 0]
    m_top: int


def radical_filtration(M: ModuleRep) -> RadicalFiltration:
    """Dimensions of the radical series rad^k M, ending at zero.

    rad M = sum_i X_i(M) because the augmentation ideal is the radical and
    the images already span a submodule.
    """
    field = M.field
    if not isinstance(field, FiniteField):
        raise ValueError("radical filtration requires a finite coefficient field")
    m = M.dim
    dims = [m]
    basis = np.eye(m, dtype=np.int64)
    Xs = M.action_arrays()
    while dims[-1] > 0:
        if basis.shape[1] == 0:
            dims.append(0)
            break
        images = np.concatenate([field.m_mul(X, basis) for X in Xs], axis=1) \
            if Xs else np.zeros((m, 0), dtype=np.int64)
        R, pivots = field.m_rref(images.T)
        basis = R[: len(pivots)].T
        dims.append(len(pivots))
    return RadicalFiltration(tuple(dims), m_top=m - dims[1] if len(dims) > 1 else m)


def oracle_projective(M: ModuleRep) -> str:
    """Ground-truth projectivity by dimension count over the local algebra."""
    filt = radical_filtration(M)
    pn = M.field.p ** M.pres.n
    return PROJECTIVE if M.dim == filt.m_top * pn else NOT_PROJECTIVE


# ---------------------------------------------------------------------------
# base change and cyclic restriction
# ---------------------------------------------------------------------------

def base_change(M: ModuleRep, field) -> ModuleRep:
    """Reinterpret the same action matrices over an extension field."""
    if field.p != M.field.p:
        raise ValueError("characteristic mismatch in base change")
    if field == M.field:
        return M
    return ModuleRep(M.pres, field, [embedded(a, field) for a in M.actions])


def restrict_to_element(M: ModuleRep, coeffs, field) -> Matrix:
    """The nilpotent operator rho(x) = sum_i coeffs_i X_i for x in the null cone."""
    if M.field != field:
        raise ValueError("base-change the module to the coefficient field first")
    if isinstance(field, FiniteField):
        if not any(int(c) for c in coeffs):
            raise ValueError("zero element spans no subalgebra")
    else:
        if all(c.is_zero() for c in coeffs):
            raise ValueError("zero element spans no subalgebra")
    if not null_cone_test(M.pres, coeffs, field):
        raise ValueError("element is outside the null cone")
    out = Matrix.zeros(field, M.dim, M.dim)
    for c, X in zip(coeffs, M.actions):
        if isinstance(field, FiniteField):
            if int(c):
                out = out + X.scale(int(c))
        elif not c.is_zero():
            out = out + X.scale(c)
    return out


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def free_module(pres: LieAlgebraPresentation, rank: int) -> ModuleRep:
    reg = uenv.regular_module(pres)
    if rank == 1:
        return reg
    return direct_sum(*([reg] * rank))


def trivial_module(pres: LieAlgebraPresentation, m: int = 1) -> ModuleRep:
    assert_valid(pres)
    field = pres.field
    return ModuleRep(pres, field, [Matrix.zeros(field, m, m) for _ in range(pres.n)])


def direct_sum(*modules: ModuleRep) -> ModuleRep:
    first = modules[0]
    field = first.field
    for M in modules:
        if M.pres is not first.pres and M.pres.cache_key() != first.pres.cache_key():
            raise ValueError("direct sum needs modules over one presentation")
        if M.field != field:
            raise ValueError("direct sum needs modules over one field")
    if not isinstance(field, FiniteField):
        raise ValueError("direct sum implemented over finite fields")
    actions = []
    for i in range(first.pres.n):
        blocks = [M.actions[i].a for M in modules]
        total = sum(b.shape[0] for b in blocks)
        out = np.zeros((total, total), dtype=np.int64)
        pos = 0
        for b in blocks:
            k = b.shape[0]
            out[pos : pos + k, pos : pos + k] = b
            pos += k
        actions.append(Matrix(field, out))
    return ModuleRep(first.pres, field, actions)


def cps_analogue(pres: LieAlgebraPresentation) -> ModuleRep:
    """Four-dimensional stand-in for the classical infinite-dimensional
    example over the two-root algebra at p = 2: free on both root directions,
    not free on x = e1 + w*e2 over GF(4)."""
    if pres.preset != ("two-roots-sl3", None) or pres.p != 2:
        raise ValueError("cps-analogue is defined over two-roots-sl3 at p = 2")
    Z = np.zeros((2, 2), dtype=np.int64)
    I = np.eye(2, dtype=np.int64)
    C = np.array([[0, 1], [1, 1]], dtype=np.int64)  # companion of t^2 + t + 1
    X1 = np.block([[Z, Z], [I, Z]])
    X2 = np.block([[Z, Z], [C, Z]])
    return ModuleRep.from_int_actions(pres, pres.field, 4, [X1, X2])


def induced_module(pres: LieAlgebraPresentation, h_basis, N: ModuleRep | None = None) -> ModuleRep:
    """u(g) tensored over u(h) with N, for h the span of the given coefficient
    vectors; N defaults to the trivial one-dimensional u(h)-module.

    The PBW basis in a complement of h, applied to a basis of N, indexes the
    result; h letters are ordered last so straightened words split cleanly.
    """
    assert_valid(pres)
    p, n = pres.p, pres.n
    field = pres.field
    h_coords = [np.asarray(v, dtype=np.int64) % p for v in h_basis]
    if not h_coords:
        raise ValueError("subalgebra basis must be nonempty")
    h_mats = [
        sum(int(c) * pres.basis[k] for k, c in enumerate(v)) % p for v in h_coords
    ]
    sub = LieAlgebraPresentation(p, pres.d, h_mats)
    if not sub.is_valid():
        raise ValueError("h-basis does not span a restricted subalgebra")
    if N is None:
        N = trivial_module(sub, 1)
    else:
        if N.pres.cache_key() != sub.cache_key():
            raise ValueError("inner module is not presented over the given subalgebra")
        assert_module_valid(sub, N)
    if not isinstance(N.field, FiniteField) or N.field.e != 1:
        raise ValueError("inner module must live over the prime field")

    stack = np.stack([v for v in h_coords])
    _, pivots = field.m_rref(stack)
    comp_idx = [i for i in range(n) if i not in pivots]
    nc = len(comp_idx)
    if nc + len(h_coords) != n:
        raise ValueError("h-basis does not extend to the full basis")
    new_mats = [pres.basis[i] for i in comp_idx] + h_mats
    big = LieAlgebraPresentation(p, pres.d, new_mats)
    if not big.is_valid():
        raise ValueError("reordered presentation failed to validate")

    nh = len(h_coords)
    dim_n = N.dim
    comp_exps = list(itertools.product(range(p), repeat=nc))
    comp_index = {e: i for i, e in enumerate(comp_exps)}
    dim = len(comp_exps) * dim_n

    n_act = [a.a for a in N.actions]

    def h_monomial_action(h_exps):
        out = np.eye(dim_n, dtype=np.int64)
        for k, a in enumerate(h_exps):
            for _ in range(a):
                out = field.m_mul(out, n_act[k])
        return out

    letter_actions = []
    for letter in range(n):
        X = np.zeros((dim, dim), dtype=np.int64)
        for ce, comp_e in enumerate(comp_exps):
            word = (letter,) + uenv.monomial_word(tuple(comp_e) + (0,) * nh)
            image = uenv.normal_form(big, word)
            for exps, coeff in image.items():
                comp_part = exps[:nc]
                h_part = exps[nc:]
                act = h_monomial_action(h_part)
                row_block = comp_index[comp_part] * dim_n
                col_block = ce * dim_n
                for v in range(dim_n):
                    col = act[:, v]
                    X[row_block : row_block + dim_n, col_block + v] = (
                        X[row_block : row_block + dim_n, col_block + v] + coeff * col
                    ) % p
        letter_actions.append(X)

    actions = []
    for i in range(n):
        coords = big.coords_in_span(field, pres.basis[i].reshape(-1))
        if coords is None:
            raise AssertionError("original basis element left the span")
        X = np.zeros((dim, dim), dtype=np.int64)
        for letter, c in enumerate(coords):
            if int(c):
                X = (X + int(c) * letter_actions[letter]) % p
        actions.append(X)
    return ModuleRep.from_int_actions(pres, field, dim, actions)


def random_quotient(pres: LieAlgebraPresentation, rank: int, generators: int, seed: int) -> ModuleRep:
    """Quotient of the free module u(g)^rank by the submodule generated by
    seeded random vectors; always a valid module."""
    if rank < 1 or generators < 0:
        raise ValueError("rank must be >= 1 and generators >= 0")
    free = free_module(pres, rank)
    rng = np.random.Generator(np.random.PCG64(seed))
    vecs = [rng.integers(0, pres.p, size=free.dim) for _ in range(generators)]
    return quotient_by_submodule(free, vecs)


def quotient_by_submodule(M: ModuleRep, generating_vectors) -> ModuleRep:
    """Quotient of M by the submodule generated by the given vectors."""
    field = M.field
    if not isinstance(field, FiniteField):
        raise ValueError("quotients implemented over finite fields")
    m = M.dim
    Xs = M.action_arrays()
    vecs = [np.asarray(v, dtype=np.int64) % field.p for v in generating_vectors]
    vecs = [v for v in vecs if v.any()]
    if not vecs:
        return M
    R, pivots = field.m_rref(np.stack(vecs))
    basis = R[: len(pivots)]
    while True:
        images = [field.m_mul(X, basis.T).T for X in Xs]
        stacked = np.concatenate([basis] + images, axis=0)
        R, new_pivots = field.m_rref(stacked)
        if len(new_pivots) == len(pivots):
            break
        pivots = new_pivots
        basis = R[: len(pivots)]
    sub_rows = R[: len(pivots)]  # RREF rows spanning the submodule
    piv_list = list(pivots)
    comp = [c for c in range(m) if c not in pivots]

    def reduce_vec(v):
        coeffs = v[piv_list]
        if coeffs.any():
            v = field.m_sub(v, field.m_mul(coeffs.reshape(1, -1), sub_rows).ravel())
        return v

    q = len(comp)
    actions = []
    for X in Xs:
        Xq = np.zeros((q, q), dtype=np.int64)
        for j, cj in enumerate(comp):
            img = reduce_vec(X[:, cj].copy())
            Xq[:, j] = img[comp]
        actions.append(Xq)
    return ModuleRep.from_int_actions(M.pres, field, q, actions)


def module_build(pres: LieAlgebraPresentation, kind: str, **params) -> ModuleRep:
    """Construct a module preset: free(r), trivial(m), cps-analogue,
    induced(h_basis, inner), random-quotient(rank, generators, seed),
    from-file(path)."""
    if kind == "free":
        return free_module(pres, int(params.get("rank", 1)))
    if kind == "trivial":
        return trivial_module(pres, int(params.get("dim", 1)))
    if kind == "cps-analogue":
        return cps_analogue(pres)
    if kind == "induced":
        return induced_module(pres, params["h_basis"], params.get("inner"))
    if kind == "random-quotient":
        return random_quotient(
            pres, int(params["rank"]), int(params["generators"]), int(params["seed"])
        )
    if kind == "from-file":
        return module_from_file(pres, params["path"])
    raise ValueError(f"unknown module kind {kind!r}")


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

def module_from_json_dict(pres: LieAlgebraPresentation, data: dict) -> ModuleRep:
    try:
        dim = int(data["dim"])
        fspec = data["field"]
        p = int(fspec["p"])
        degree = int(fspec.get("degree", 1))
        action = data["action"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed module file: {exc}") from exc
    if p != pres.p:
        raise ValueError("malformed module file: characteristic mismatch")
    field = get_finite_field(p, degree)
    if not isinstance(action, list) or len(action) != pres.n:
        raise ValueError("malformed module file: one action matrix per basis element")
    mats = []
    for mat in action:
        rows = []
        for row in mat:
            out_row = []
            for entry in row:
                if isinstance(entry, int):
                    out_row.append(entry % p)
                else:
                    coeffs = [int(x) for x in entry]
                    if len(coeffs) != degree:
                        raise ValueError(
                            "malformed module file: coordinate vector length mismatch")
                    out_row.append(field.code(coeffs))
            rows.append(out_row)
        arr = np.asarray(rows, dtype=np.int64)
        if arr.shape != (dim, dim):
            raise ValueError("malformed module file: action matrix shape mismatch")
        mats.append(Matrix(field, arr))
    return ModuleRep(pres, field, mats)


def module_from_file(pres: LieAlgebraPresentation, path: str) -> ModuleRep:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return module_from_json_dict(pres, data)


def module_to_json_dict(M: ModuleRep) -> dict:
    if not isinstance(M.field, FiniteField):
        raise ValueError("only finite-field modules serialize")
    return {
        "dim": M.dim,
        "field": {"p": M.field.p, "degree": M.field.e},
        "action": [
            [[list(M.field.coeffs(int(v))) for v in row] for row in a.a]
            for a in M.actions
        ],
    }

"""Field construction, matrix kernels, jordan types, and the pencil scan."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nilproj.fields import (
    FiniteField,
    FunctionField,
    Matrix,
    bareiss_rank,
    field_make,
    fraction_rank,
    get_finite_field,
    jordan_type,
    mat_nullspace,
    mat_rank,
    pencil_singular_scan,
)
from nilproj.fields import poly
from conftest import span_rank, brute_force_partition


# ---------------------------------------------------------------------------
# field_make
# ---------------------------------------------------------------------------

def test_field_make_prime():
    F = field_make(2)
    assert F.p == 2 and F.e == 1 and F.q == 2


def test_field_make_gf4_modulus_is_forced():
    F = field_make(2, "extension", degree=2)
    assert F.modulus == (1, 1, 1)  # s^2 + s + 1, the unique irreducible


def test_field_make_function_field():
    F = field_make(3, "function-field", variables=("t",))
    assert F.p == 3 and F.vars == ("t",)


def test_field_make_rejects_bad_input():
    with pytest.raises(ValueError):
        field_make(4)
    with pytest.raises(ValueError):
        field_make(2, "extension", degree=0)
    with pytest.raises(ValueError):
        field_make(2, "extension", degree=2, modulus=[1, 0, 1])  # (s+1)^2
    with pytest.raises(ValueError):
        field_make(2, "function-field", variables=())


def test_extension_moduli_are_irreducible_and_least():
    # brute-force check: no smaller monic polynomial of the same degree is irreducible
    for p, e in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]:
        F = get_finite_field(p, e)
        f = list(F.modulus)
        assert len(f) == e + 1 and f[-1] == 1
        code = sum(c * p**i for i, c in enumerate(f[:-1]))
        for smaller in range(code):
            cand = [(smaller // p**i) % p for i in range(e)] + [1]
            assert not poly.uirreducible(cand, p)
        assert poly.uirreducible(f, p)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
def test_gf9_field_axioms(a, b, c):
    F = get_finite_field(3, 2)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 7), st.integers(2, 4))
def test_frobenius_is_additive(a, e):
    F = get_finite_field(2, 3)
    b = (a * 3 + 1) % 8
    assert F.pow(F.add(a, b), 2) == F.add(F.pow(a, 2), F.pow(b, 2))


def test_embedding_preserves_arithmetic():
    small = get_finite_field(2, 2)
    big = get_finite_field(2, 4)
    emb = small.embedding_into(big)
    for a in small.elements():
        for b in small.elements():
            assert emb[small.add(a, b)] == big.add(emb[a], emb[b])
            assert emb[small.mul(a, b)] == big.mul(emb[a], emb[b])


# ---------------------------------------------------------------------------
# rank and nullspace
# ---------------------------------------------------------------------------

def test_rank_identity_gf2():
    assert mat_rank(Matrix.identity(get_finite_field(2, 1), 2)) == 2


def test_rank_function_field_proportional_rows():
    FF = field_make(3, "function-field", variables=("t",))
    t = FF.gen(0)
    M = Matrix(FF, [[FF.one, t], [t, t * t]])
    assert mat_rank(M) == 1


def test_rank_gf4_companion_pencil_point():
    # det(I + w C) = 1 + w + w^2 = 0, but the matrix is nonzero
    F4 = get_finite_field(2, 2)
    C = Matrix.from_ints(F4, [[0, 1], [1, 1]])
    M = Matrix.identity(F4, 2) + C.scale(2)
    assert span_rank(F4, M) == 1  # independent enumeration oracle
    assert mat_rank(M) == 1


def test_nullspace_examples():
    F2 = get_finite_field(2, 1)
    assert mat_nullspace(Matrix.zeros(F2, 3, 3)).cols == 3
    assert mat_nullspace(Matrix.identity(F2, 2)).cols == 0
    ns = mat_nullspace(Matrix.from_ints(F2, [[1, 1], [1, 1]]))
    assert ns.cols == 1
    assert ns.row_lists() == [[1], [1]]


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_rank_plus_nullity_on_random_matrices(p, e):
    field = get_finite_field(p, e)
    rng = np.random.default_rng(1234 + p * 10 + e)
    for _ in range(25):
        rows, cols = rng.integers(1, 7, size=2)
        M = Matrix(field, rng.integers(0, field.q, size=(rows, cols)))
        ns = mat_nullspace(M)
        assert mat_rank(M) + ns.cols == cols
        if ns.cols:
            prod = M @ ns
            assert prod.is_zero()


def test_rank_matches_span_enumeration_on_small_random():
    field = get_finite_field(2, 2)
    rng = np.random.default_rng(7)
    for _ in range(20):
        M = Matrix(field, rng.integers(0, 4, size=(3, 3)))
        assert mat_rank(M) == span_rank(field, M)


# ---------------------------------------------------------------------------
# jordan types
# ---------------------------------------------------------------------------

def test_jordan_zero_matrix():
    F2 = get_finite_field(2, 1)
    jt = jordan_type(Matrix.zeros(F2, 3, 3), 2)
    assert jt.parts == (1, 1, 1) and not jt.free


def test_jordan_single_block():
    F3 = get_finite_field(3, 1)
    N = Matrix.from_ints(F3, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    jt = jordan_type(N, 3)
    assert jt.parts == (3,) and jt.free


def test_jordan_rank_difference_formula_vs_brute_force():
    F2 = get_finite_field(2, 1)
    N = Matrix.from_ints(F2, [[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    assert jordan_type(N, 2).parts == (2, 1)
    assert brute_force_partition(F2, N, 2) == (2, 1)


def test_jordan_brute_force_agreement_random_nilpotents():
    # random strictly upper-triangular matrices are nilpotent; N^p = 0 needs p >= size
    F3 = get_finite_field(3, 1)
    rng = np.random.default_rng(99)
    for _ in range(20):
        n = int(rng.integers(2, 4))
        A = np.triu(rng.integers(0, 3, size=(n, n)), k=1)
        N = Matrix(F3, A)
        jt = jordan_type(N, 3)
        assert jt.parts == brute_force_partition(F3, N, 3)
        assert sum(jt.parts) == n


def test_jordan_rejects_non_nilpotent():
    F2 = get_finite_field(2, 1)
    with pytest.raises(ValueError):
        jordan_type(Matrix.identity(F2, 2), 2)


# ---------------------------------------------------------------------------
# pencil scan
# ---------------------------------------------------------------------------

def test_pencil_scan_needs_extension():
    F2 = get_finite_field(2, 1)
    A = Matrix.identity(F2, 2)
    B = Matrix.from_ints(F2, [[0, 1], [1, 1]])
    assert pencil_singular_scan(A, B, 1) is None  # mu^2 + mu + 1 has no GF(2) root
    field, point = pencil_singular_scan(A, B, 2)
    assert field.q == 4 and point == (1, 2)


def test_pencil_scan_char_two_sum():
    F2 = get_finite_field(2, 1)
    I = Matrix.identity(F2, 2)
    field, point = pencil_singular_scan(I, I, 2)
    assert field.q == 2 and point == (1, 1)


def test_pencil_scan_zero_second_matrix():
    F2 = get_finite_field(2, 1)
    field, point = pencil_singular_scan(Matrix.identity(F2, 2), Matrix.zeros(F2, 2, 2), 1)
    assert field.q == 2 and point == (0, 1)


def test_pencil_scan_verifies_singularity():
    F2 = get_finite_field(2, 1)
    rng = np.random.default_rng(5)
    for _ in range(10):
        n = int(rng.integers(1, 5))
        A = Matrix(F2, rng.integers(0, 2, size=(n, n)))
        B = Matrix(F2, rng.integers(0, 2, size=(n, n)))
        found = pencil_singular_scan(A, B, n)
        if found is None:
            continue
        field, (c1, c2) = found
        big = get_finite_field(2, field.e)
        from nilproj.fields import embedded

        Ab, Bb = embedded(A, big), embedded(B, big)
        M = Ab.scale(c1) + Bb.scale(c2)
        assert mat_rank(M) < n


# ---------------------------------------------------------------------------
# function-field rank: two routes and specialization dominance
# ---------------------------------------------------------------------------

def _random_polynomial_matrix(ff, rng, rows, cols, deg=1, density=0.8):
    nvars = ff.nvars
    out = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            d = {}
            for exps in poly.all_monomials_upto(nvars, deg):
                if sum(exps) <= deg and rng.random() < density:
                    c = int(rng.integers(0, ff.p))
                    if c:
                        d[exps] = c
            row.append(ff.from_poly(d))
        out.append(row)
    return Matrix(ff, out)


@pytest.mark.parametrize("p,nvars", [(2, 1), (2, 2), (3, 2), (3, 3)])
def test_bareiss_and_fraction_elimination_agree(p, nvars):
    ff = FunctionField(p, tuple(f"t{i + 1}" for i in range(nvars)))
    rng = np.random.default_rng(31 + p + nvars)
    for _ in range(12):
        rows, cols = rng.integers(1, 6, size=2)
        M = _random_polynomial_matrix(ff, rng, int(rows), int(cols))
        assert mat_rank(M) == fraction_rank(M)


def test_bareiss_matches_on_matrices_with_denominators():
    ff = FunctionField(3, ("t",))
    t = ff.gen(0)
    inv = ff.one / (t + ff.one)
    M = Matrix(ff, [[inv, t], [inv * t, t * t]])  # second row = t * first
    assert mat_rank(M) == 1
    assert fraction_rank(M) == 1


def test_function_field_rank_specialization_dominance():
    # rank over GF(p)(t..) equals the max specialized rank and dominates each
    for p, nvars, seed in [(2, 2, 11), (3, 2, 12), (3, 3, 13)]:
        ff = FunctionField(p, tuple(f"t{i + 1}" for i in range(nvars)))
        rng = np.random.default_rng(seed)
        target = get_finite_field(p, 3)
        for _ in range(4):
            M = _random_polynomial_matrix(ff, rng, 4, 4)
            generic = mat_rank(M)
            best = 0
            for _ in range(50):
                point = tuple(int(x) for x in rng.integers(0, target.q, size=nvars))
                spec = Matrix(
                    target,
                    [
                        [ff.specialize_element(entry, point, target) for entry in row]
                        for row in M.r
                    ],
                )
                r = mat_rank(spec)
                assert r <= generic
                best = max(best, r)
            assert best == generic


def test_bareiss_large_entries_hit_kronecker_path():
    # dense degree-2 entries in 3 variables force the FFT/Kronecker divider
    ff = FunctionField(3, ("t1", "t2", "t3"))
    rng = np.random.default_rng(17)
    M = _random_polynomial_matrix(ff, rng, 8, 8, deg=2, density=1.0)
    r_bareiss = mat_rank(M)
    r_fraction = fraction_rank(M)
    assert r_bareiss == r_fraction


def test_rational_function_canonical_form():
    ff = FunctionField(3, ("t",))
    t = ff.gen(0)
    a = (t * t - ff.one) / (t + ff.one)  # reduces to t - 1
    assert a.is_polynomial()
    assert a.num == {(1,): 1, (0,): 2}
    b = ff.one / (t + t)  # 1/(2t) = 2/t once the denominator is made monic
    assert b.den == {(1,): 1}
    assert b.num == {(0,): 2}

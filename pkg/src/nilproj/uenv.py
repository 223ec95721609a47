"""The restricted enveloping algebra u(g) through its PBW basis.

Elements are linear combinations of ordered monomials e1^a1 ... en^an with
exponents below p.  Words straighten by the leftmost-inversion-first rule
e_j e_i = e_i e_j - [e_i, e_j] (i < j) and by the defining relation
e_i^p = e_i^[p]; both rewrite steps strictly decrease (total degree,
inversion count) lexicographically, so straightening terminates.
"""

from __future__ import annotations

import itertools

import numpy as np

from .liealg import LieAlgebraPresentation, assert_valid

PBWElement = dict  # {exponent tuple: nonzero scalar in GF(p)}


def pbw_basis(pres: LieAlgebraPresentation) -> list[tuple[int, ...]]:
    """All p^n exponent vectors in lexicographic order."""
    assert_valid(pres)
    return list(itertools.product(range(pres.p), repeat=pres.n))


def monomial_word(exps) -> tuple[int, ...]:
    """The sorted word e1^a1 ... en^an as a letter sequence."""
    word = []
    for letter, count in enumerate(exps):
        word.extend([letter] * count)
    return tuple(word)


def normal_form(pres: LieAlgebraPresentation, word, coeff: int = 1) -> PBWElement:
    """PBW normal form of coeff * (product of basis letters in word)."""
    assert_valid(pres)
    p = pres.p
    n = pres.n
    agenda: dict[tuple[int, ...], int] = {}
    _accumulate(agenda, tuple(word), coeff % p, p)
    result: dict[tuple[int, ...], int] = {}
    while agenda:
        w, c = agenda.popitem()
        if not c:
            continue
        pos = next((i for i in range(len(w) - 1) if w[i] > w[i + 1]), None)
        if pos is not None:
            a, b = w[pos], w[pos + 1]
            # e_a e_b = e_b e_a + [e_a, e_b]
            _accumulate(agenda, w[:pos] + (b, a) + w[pos + 2 :], c, p)
            for k, s in enumerate(pres.structure[a, b]):
                if s:
                    _accumulate(agenda, w[:pos] + (k,) + w[pos + 2 :], c * int(s), p)
            continue
        run = _leftmost_p_run(w, p)
        if run is not None:
            letter = w[run]
            for k, s in enumerate(pres.ppower[letter]):
                if s:
                    _accumulate(agenda, w[:run] + (k,) + w[run + p :], c * int(s), p)
            continue
        exps = [0] * n
        for letter in w:
            exps[letter] += 1
        key = tuple(exps)
        v = (result.get(key, 0) + c) % p
        if v:
            result[key] = v
        else:
            result.pop(key, None)
    return result


def _accumulate(agenda, word, coeff, p):
    v = (agenda.get(word, 0) + coeff) % p
    if v:
        agenda[word] = v
    else:
        agenda.pop(word, None)


def _leftmost_p_run(w, p):
    run_start, run_len = 0, 0
    for i, letter in enumerate(w):
        if i and letter == w[i - 1]:
            run_len += 1
        else:
            run_start, run_len = i, 1
        if run_len == p:
            return run_start
    return None


def pbw_mul(pres: LieAlgebraPresentation, a: PBWElement, b: PBWElement) -> PBWElement:
    """Product in u(g) by concatenation and straightening."""
    p = pres.p
    out: dict[tuple[int, ...], int] = {}
    for ea, ca in a.items():
        wa = monomial_word(ea)
        for eb, cb in b.items():
            term = normal_form(pres, wa + monomial_word(eb), ca * cb)
            for e, c in term.items():
                v = (out.get(e, 0) + c) % p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
    return out


def regular_module(pres: LieAlgebraPresentation):
    """The left regular representation of u(g) on itself (rank-1 free module)."""
    from .modrep import ModuleRep

    assert_valid(pres)
    basis = pbw_basis(pres)
    index = {e: i for i, e in enumerate(basis)}
    dim = len(basis)
    actions = []
    for gen in range(pres.n):
        X = np.zeros((dim, dim), dtype=np.int64)
        for col, exps in enumerate(basis):
            image = normal_form(pres, (gen,) + monomial_word(exps))
            for e, c in image.items():
                X[index[e], col] = c
        actions.append(X)
    return ModuleRep.from_int_actions(pres, pres.field, dim, actions)

import random
from fractions import Fraction
from itertools import permutations

import pytest

from g2gt import algebra as alg
from g2gt import linalg as la
from g2gt.indexsets import INDICES, POS, perm_sign


@pytest.fixture(scope="module")
def built():
    return alg.default_algebra()


def test_unit_and_norm(built):
    model, _ = built
    assert model.norm(model.unit) == 1
    for i in INDICES:
        e = alg.unit_vector(i)
        assert model.mul(model.unit, e) == e
        assert model.mul(e, model.unit) == e


def test_norm_multiplicative_example(built):
    model, _ = built
    x = [a + b for a, b in zip(alg.unit_vector(-4), alg.unit_vector(2))]
    y = alg.unit_vector(3)
    xy = model.mul(x, y)
    assert xy == alg._brute_mul(x, y)
    assert model.norm(xy) == model.norm(x) * model.norm(y)


def test_model_checks_clean(built):
    model, _ = built
    assert alg.check_model(model) == []


def test_dimension_and_required_elements(built):
    model, g = built
    ker = alg.derivation_kernel(model)
    assert len(ker) == 14
    assert all(alg.in_o8(alg.unflat(v)) for v in ker)
    for M in (alg.H_ALPHA1, alg.H_ALPHA2, alg.F(-3, -2), alg.F(-4, 2)):
        assert g.contains(M)


def test_closed_under_bracket(built):
    _, g = built
    for A in g.basis:
        for B in g.basis:
            assert g.contains(alg.bracket(A, B))


def test_roots(built):
    _, g = built
    assert len(g.positive_roots()) == 6
    assert len(g.negative_roots()) == 6
    for r, M in g.roots:
        for H in g.cartan:
            B = alg.bracket(H, M)
            k = next(n for n, x in enumerate(alg.flat(M)) if x)
            c = alg.flat(B)[k] / alg.flat(M)[k]
            assert B == alg.mscale(M, c)


def _random_o8(rng):
    M = alg.zeros()
    for _ in range(4):
        i, j = rng.choice(INDICES), rng.choice(INDICES)
        M = alg.madd(M, alg.F(i, j), Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
    return M


def test_project_h(built):
    _, g = built
    assert g.project_h(alg.F(-3, -2)) == alg.F(-3, -2)
    rng = random.Random(3)
    for _ in range(20):
        M = _random_o8(rng)
        P = g.project_h(M)
        assert g.contains(P)
        assert g.project_h(P) == P
        diff = alg.madd(M, P, -1)
        assert all(alg.trace_form(diff, b) == 0 for b in g.basis)


def test_invariant_tensor_k3(built):
    model, g = built
    T = alg.invariant_tensor(model, 3)
    assert T
    # restricted to the complement of the unit direction it is nonzero
    assert any(-1 not in X and 1 not in X for X in T)
    for M in g.basis:
        assert alg.tensor_action(M, T) == {}
    # full antisymmetry of the expanded tensor
    full = {}
    for X, c in T.items():
        for p in permutations(X):
            full[p] = perm_sign(p, POS) * c
    for p, c in full.items():
        q = (p[1], p[0], p[2])
        assert full[q] == -c


def test_casimir_words():
    assert len(alg.casimir_word("C2_g2")) == 64
    assert len(alg.casimir_word("C2_sl3")) == 9
    assert len(alg.casimir_word("C6_g2")) == 8 ** 6
    with pytest.raises(ValueError):
        alg.casimir_word("C4")


def test_group_elements(built):
    model, g = built
    assert alg.sample_group_element([]) == la.identity(8)
    _, X = g.positive_roots()[0]
    E = alg.exp_nilpotent(X, 2)
    # index of nilpotency bounds the degree
    n = 1
    P = X
    while any(alg.flat(P)):
        P = la.matmul(P, X)
        n += 1
    direct = la.identity(8)
    term = la.identity(8)
    for k in range(1, n):
        term = alg.mscale(la.matmul(term, alg.mscale(X, 2)), Fraction(1, k))
        direct = alg.madd(direct, term)
    assert E == direct
    rng = random.Random(1)
    M = alg.sample_group_element(alg.random_steps(g.roots, rng))
    assert la.matvec(M, model.unit) == model.unit
    assert alg.preserves_product(model, M)


def test_exp_rejects_non_nilpotent():
    with pytest.raises(ValueError):
        alg.exp_nilpotent(alg.H_ALPHA1, 1)

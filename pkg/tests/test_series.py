import random

import pytest

from g2gt import lattice as L
from g2gt import poly as P
from g2gt import relations as R
from g2gt import series as S


@pytest.fixture(scope="module")
def g2():
    return L.build_lattice("g2")


@pytest.fixture(scope="module")
def gl8():
    return L.build_lattice("gl8")


E4 = L.vec([((-4,), 1)])


def test_gamma_series_leading_term(g2, gl8):
    for lat in (g2, gl8):
        f = S.gamma_series(E4, lat)
        assert f[((0, 1),)] == 1


def test_no_nonnegative_member(gl8):
    assert S.gamma_series(L.vec([((-4,), -1)]), gl8) == {}


def test_gamma_series_shift_invariance(gl8, g2):
    rng = random.Random(4)
    sec = L.irrep_sector(1, 0)
    base = S.gamma_series(E4, gl8)
    for _ in range(10):
        b = rng.choice(gl8.basis)
        assert S.gamma_series(L.vadd(E4, b.vec, rng.choice([1, -1])), gl8, L.gl8_sector(1, 0)) == base
    # on g2 the shift by a basis vector multiplies by its sign tag
    base = S.gamma_series(E4, g2, sec)
    for _ in range(10):
        b = rng.choice(g2.basis)
        f = S.gamma_series(L.vadd(E4, b.vec), g2, sec)
        assert f == P.scale(base, b.sign)


def test_j_series(g2):
    sec = L.irrep_sector(1, 0)
    assert S.j_series(E4, {}, g2, sec) == S.gamma_series(E4, g2, sec)
    assert S._pochhammer_weight({0: -1}, {0: 1}) == 0
    assert S._pochhammer_weight({0: -1}, {0: 0}) == 1
    support = {P.mono(x) for x, _ in S.gamma_terms(E4, g2, sec)}
    f = S.j_series(E4, {0: 1, 3: 2}, g2, sec)
    assert set(f) <= support


def test_agkz_gl8_annihilated(gl8):
    ops = [("pluecker", t, o) for t, o in R.pluecker_operators(True)]
    for d in L.enumerate_diagrams(1, 0, lat=gl8, sector=L.gl8_sector(1, 0)):
        f = S.agkz_series(d.gamma, gl8)
        assert f
        assert R.residuals(f, ops) == []


def test_agkz_g2_does_not_terminate(g2):
    with pytest.raises(S.NonTermination):
        S.agkz_series(E4, g2, L.irrep_sector(1, 0))


def test_shift_rule(gl8):
    rng = random.Random(9)
    sec = L.gl8_sector(1, 1)
    classes = sorted(L.classes_in_sector(gl8, sec).values(), key=lambda w: L.dense_key(w[0]))
    low = [k for k, X in enumerate(L.SETS) if len(X) in (1, 2)]
    for _ in range(10):
        gamma = rng.choice(rng.choice(classes))
        X = rng.choice(low)
        lhs = P.diff(S.agkz_series(gamma, gl8), X)
        assert lhs == S.agkz_series(L.vadd(gamma, {X: 1}, -1), gl8)


def test_representative_dependence(gl8):
    sec = L.gl8_sector(1, 1)
    gamma = L.vec([((1,), 1), ((-4, 2), 1)])
    v = next(b for b in gl8.basis if b.tag == (-4, -2, 4, ()))
    f = S.agkz_series(gamma, gl8, sec)
    shifted = [S.agkz_series(L.vadd(gamma, v.vec, s), gl8, sec) for s in (1, -1)]
    assert any(g != f for g in shifted)


def test_decomposition(g2, gl8):
    sec = L.irrep_sector(1, 0)
    for d in L.enumerate_diagrams(1, 0):
        rhs = {}
        for sign, x in S.decompose_gl8(d.gamma, sec):
            rhs = P.add(rhs, S.gamma_series(x, gl8, S.default_sector(x, gl8)), sign)
        assert S.gamma_series(d.gamma, g2, sec) == rhs


def test_build_dispatch():
    with pytest.raises(ValueError):
        S.build(E4, "nope")
    assert S.build(E4, "gamma_gl8") == S.gamma_series(E4, L.build_lattice("gl8"))

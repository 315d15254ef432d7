import random
from fractions import Fraction
from itertools import combinations

import pytest

from g2gt import algebra as alg
from g2gt import linalg as la
from g2gt import poly as P
from g2gt import relations as R
from g2gt import representation as Rp
from g2gt import verify as V
from g2gt.indexsets import POS, SETS, canonicalize, complement_negate, first_rows


def A(*X):
    return P.var(tuple(sorted(X)))


@pytest.fixture(scope="module")
def samples():
    return [R.minors_of(g) for g in R.g2_samples(5, 7)]


def test_three_term_example():
    rel = R.exchange_relation((-4,), (2, 3))
    expect = P.add(P.add(P.mul(A(-4), A(2, 3)), P.mul(A(2), A(-4, 3)), -1), P.mul(A(3), A(-4, 2)))
    assert rel == expect


def test_pluecker_only_for_p_le_q():
    assert R.pluecker_relations(3, 2) == []
    with pytest.raises(ValueError):
        R.pluecker_relations(0, 2)


def test_identity_minors():
    mins = R.minors_of(la.identity(8))
    for k, X in enumerate(SETS):
        assert mins[k] == (1 if X == first_rows(len(X)) else 0)


def test_relations_vanish_at_identity():
    mins = R.minors_of(la.identity(8))
    for r in R.all_relations():
        assert R.substitute(r.poly, mins, r.const) == 0


def test_jacobi_relations():
    rels = R.jacobi_relations()
    assert len(rels) == 127
    first = rels[0]
    assert first.poly == P.add(A(-4), P.var(complement_negate((-4,))), -1)


def test_cauchy_binet():
    rng = random.Random(3)
    M = [[Fraction(rng.randint(-3, 3)) for _ in range(8)] for _ in range(8)]
    N = [[Fraction(rng.randint(-3, 3)) for _ in range(8)] for _ in range(8)]
    MN = la.matmul(M, N)
    mins = R.minors_by_set(MN)
    for X in [(-4, -3), (-2, 3), (1, 4)]:
        tot = Fraction(0)
        for K in combinations(range(8), 2):
            a = la.det([[M[r][c] for c in K] for r in range(2)])
            b = la.det([[N[k][POS[x]] for x in X] for k in K])
            tot += a * b
        assert mins[X] == tot


def test_column_antisymmetry():
    g = R.g2_samples(1, 2)[0]
    mins = R.minors_by_set(g)
    for seq in [(-3, -4), (2, -1, 4), (4, 3, 1, -2)]:
        key, s = canonicalize(seq)
        direct = la.det([[g[r][POS[c]] for c in seq] for r in range(len(seq))])
        assert direct == s * mins[key]


def test_substitute():
    mins = R.minors_of(la.identity(8))
    # both summands of the highest vector are 1 at the identity
    assert R.substitute(Rp.highest_vector(1, 0), mins) == 2
    assert R.substitute(Rp.highest_vector(1, 1), mins) == 4
    g = R.g2_samples(1, 5)[0]
    gm = R.minors_of(g)
    f, h = P.mul(A(-4), A(2, 3)), A(-4, 1)
    assert R.substitute(P.add(f, h, 3), gm) == R.substitute(f, gm) + 3 * R.substitute(h, gm)


def test_relations_vanish_on_samples(samples):
    rels = R.jacobi_relations() + R.specific_relations() + R.pluecker_relations(2, 3)
    for r in rels:
        for m in samples:
            assert R.substitute(r.poly, m, r.const) == 0, r.label


def test_specific_relations_shape():
    rels = R.specific_relations()
    assert [r.label for r in rels] == ["unit", "omega 3", "omega 4", "omega 5", "omega 7"]
    assert all(r.const == 0 for r in rels)


def test_negative_control():
    ctrl, used = R.o8_control()
    assert used
    _, g = alg.default_algebra()
    assert not g.contains(alg.F(*used[0]))
    cm = R.minors_of(ctrl)
    assert any(R.substitute(r.poly, cm, r.const) for r in R.specific_relations())


def test_corrupted_omega_detected(samples):
    rels = R.specific_relations(omegas=V.corrupted_omegas())
    assert any(R.substitute(r.poly, m, r.const) for r in rels for m in samples)


def test_operator_correspondence():
    assert R.operator_correspondence() == []


def test_configuration_error():
    with pytest.raises(R.ConfigurationError):
        R.specific_relations(omegas={k: {} for k in range(3, 9)})

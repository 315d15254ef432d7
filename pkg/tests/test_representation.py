import random
from fractions import Fraction

import pytest

from g2gt import algebra as alg
from g2gt import lattice as L
from g2gt import linalg as la
from g2gt import poly as P
from g2gt import relations as R
from g2gt import representation as Rp
from g2gt.indexsets import INDICES, SETS, complement_negate

GROUPS = ((-4, 2, 3), (-3, -2, 4))


def A(*X):
    return P.var(tuple(sorted(X)))


@pytest.fixture(scope="module")
def g():
    return alg.default_algebra()[1]


@pytest.fixture(scope="module")
def v10():
    return Rp.gt_basis(Rp.build_irrep(1, 0))


@pytest.fixture(scope="module")
def v01():
    return Rp.build_irrep(0, 1)


def test_matrix_unit_action():
    assert Rp.act_matrix_unit(-4, -3, A(-3)) == A(-4)
    assert Rp.act_matrix_unit(-4, -3, A(-4, -3)) == {}
    assert Rp.act_matrix_unit(-4, -3, P.power(A(-3), 2)) == P.scale(P.mul(A(-4), A(-3)), 2)


def test_weights(g):
    assert Rp.weight_of(A(-4)) == (1, 0)
    assert Rp.act_g2(alg.H_ALPHA1, A(-4), g) == P.scale(A(-4), Fraction(1, 3))
    with pytest.raises(ValueError):
        Rp.act_g2(alg.matrix_unit(-4, -3), A(-3), g)


def test_bracket_compatibility(g):
    rng = random.Random(8)
    fs = [A(-4), P.mul(A(-3), A(1, 2)), P.add(A(-2, 4), P.power(A(3), 2))]
    for _ in range(10):
        X, Y = rng.choice(g.basis), rng.choice(g.basis)
        f = rng.choice(fs)
        lhs = P.add(Rp.act_g2(X, Rp.act_g2(Y, f, g), g), Rp.act_g2(Y, Rp.act_g2(X, f, g), g), -1)
        assert lhs == Rp.act_g2(alg.bracket(X, Y), f, g)


def test_highest_vector_examples():
    assert Rp.highest_vector(1, 0) == P.add(A(-4), P.var(complement_negate((-4,))))
    assert Rp.highest_vector(0, 0) == P.const(1)
    assert Rp.weight_of(Rp.highest_vector(0, 0)) == (0, 0)
    assert Rp.weight_of(Rp.highest_vector(0, 1)) == (0, 1)
    with pytest.raises(ValueError):
        Rp.highest_vector(-1, 0)
    for ab in ((1, 0), (0, 1)):
        assert Rp.check_highest_vector(*ab) == []


def test_weyl_and_freudenthal_agree():
    for a in range(4):
        for b in range(3):
            assert sum(Rp.weight_multiplicities(a, b).values()) == Rp.weyl_dimension(a, b)
    assert len(Rp.positive_roots_simple()) == 6
    assert [Rp.weyl_dimension(*ab) for ab in ((0, 0), (1, 0), (0, 1))] == [1, 7, 14]


def test_build_counts(v10, v01):
    assert len(v10.basis) == 7
    assert len(v01.basis) == 14
    assert la.det(v10.gram) != 0
    assert Rp.hv_in_span(v10) and Rp.hv_in_span(v01)


def test_build_rejects_negative():
    with pytest.raises(ValueError):
        Rp.build_irrep(-1, 0)


def test_generator_matrices(v10, g):
    mats = Rp.basis_matrices(v10)
    for M in mats:
        assert sum(M[i][i] for i in range(len(M))) == 0
    rng = random.Random(1)
    for _ in range(5):
        a, b = rng.randrange(14), rng.randrange(14)
        comm = Rp._mat_add(la.matmul(mats[a], mats[b]), la.matmul(mats[b], mats[a]), -1)
        assert comm == Rp.element_matrix(alg.bracket(g.basis[a], g.basis[b]), v10)


def test_weight_multiset(v10):
    got = {}
    for w in Rp.weights_of_build(v10):
        got[w] = got.get(w, 0) + 1
    assert got == Rp.weight_multiplicities(1, 0)


def test_solution_space_invariant(v10, g):
    ops = R.system_operators("agkz")
    for f in v10.basis:
        for Z in g.basis:
            assert R.residuals(Rp.act_g2(Z, f, g), ops) == []


def test_adjointness(v10):
    for i in INDICES:
        for j in INDICES:
            for f in v10.basis:
                for h in v10.basis:
                    lhs = P.pairing(Rp.act_matrix_unit(i, j, f), h)
                    assert lhs == P.pairing(f, Rp.act_matrix_unit(j, i, h))


def test_casimirs(v10, v01):
    c10 = Rp.scalar_of(Rp.casimir_matrix("C2_g2", v10))
    c01 = Rp.scalar_of(Rp.casimir_matrix("C2_g2", v01))
    assert c10 is not None and c01 is not None
    assert c10 != c01
    assert c10 / Rp.casimir_oracle(1, 0) == c01 / Rp.casimir_oracle(0, 1)


def test_gt_basis(v10):
    assert len(v10.gt) == 7
    for a in range(7):
        for b in range(a):
            assert P.pairing(v10.gt[a], v10.gt[b]) == 0
    assert all(r["C2_sl3"] is not None and r["C3_sl3"] is not None for r in v10.eigen_table)
    assert Rp.eigen_blocks(v10) == [3, 3, 1]
    assert Rp.sl3_branching(v10) == [3, 3, 1]


def _group_max(X):
    out = set(X)
    for grp in GROUPS:
        n = sum(1 for x in X if x in grp)
        out = (out - set(grp)) | set(grp[:n])
    return tuple(sorted(out))


def test_maximize_sets():
    for X in SETS:
        assert Rp.maximize_set(X) == _group_max(X)
    assert Rp.maximize_set((-4, -3)) == (-4, -3)


def test_maximize_linear():
    rng = random.Random(6)
    for _ in range(20):
        a = {rng.randrange(len(SETS)): rng.randint(-3, 3) for _ in range(4)}
        b = {rng.randrange(len(SETS)): rng.randint(-3, 3) for _ in range(4)}
        a, b = L.vadd({}, a), L.vadd({}, b)
        assert Rp.maximize(L.vadd(a, b)) == L.vadd(Rp.maximize(a), Rp.maximize(b))


def _before(i, j):
    order = (-4, 2, 3, -3, -2, 4, -1, 1)
    return any(i in grp and j in grp for grp in GROUPS) and order.index(i) < order.index(j)


def test_r_maximization_cases():
    rs = {tuple(sorted(L.r_of(b.tag).items())) for b in L.v_generators()}
    for b in L.v_generators():
        i, j, y, X = b.tag
        m = Rp.maximize(L.r_of(b.tag))
        if _before(j, y):
            assert m == {}
        elif not (_before(i, j) or _before(i, y)):
            assert tuple(sorted(m.items())) in rs
        else:
            assert m


def test_v_maximization_trichotomy():
    vs = L.v_generators()
    keys = {tuple(sorted(b.vec.items())) for b in vs}
    bad = []
    for b in vs:
        m = Rp.maximize(b.vec)
        if m and tuple(sorted(m.items())) not in keys:
            bad.append((b.tag, L.fmt_vec(m)))
    assert not bad, f"{len(bad)} v-generators maximize outside {{0, v-type}}, first {bad[0]}"

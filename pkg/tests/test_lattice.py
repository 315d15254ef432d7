import random

import pytest

from g2gt import lattice as L
from g2gt.indexsets import SETS, complement_negate


@pytest.fixture(scope="module")
def g2():
    return L.build_lattice("g2")


@pytest.fixture(scope="module")
def gl8():
    return L.build_lattice("gl8")


@pytest.fixture(scope="module")
def o8():
    return L.build_lattice("o8")


def test_first_v_and_r():
    v = next(b for b in L.v_generators() if b.tag == (-4, 2, 3, ()))
    assert v.vec == L.vec([((-4,), 1), ((2,), -1), ((-4, 3), -1), ((2, 3), 1)])
    r = L.r_of(v.tag)
    assert r == L.vec([((3,), 1), ((2,), -1), ((-4, 3), -1), ((-4, 2), 1)])


def test_v_and_r_grades():
    for b in L.v_generators():
        assert L.grade_degrees(b.vec) == [0] * 8
        i, j, y, X = b.tag
        r = L.r_of(b.tag)
        assert L.grade_degrees(r) == [0] * 8
        expect = L.vec([((y,) + X, 1), ((i,) + X, -1), ((i, j) + X, 1), ((j, y) + X, -1)])
        assert L.vadd(r, b.vec, -1) == expect


def test_first_u():
    us, selfpaired = L.u_generators()
    u = us[0]
    assert u.tag[0] == (-4,)
    assert u.vec == L.vec([((-4,), 1), (complement_negate((-4,)), -1)])
    assert u.sign == 1
    assert (len(us), len(selfpaired)) == (119, 16)
    assert len(us) * 2 + len(selfpaired) == len(SETS)


def test_ranks(gl8, o8, g2):
    assert gl8.k == (219, 0, 0)
    assert o8.k == (219, 24, 0)
    assert g2.k == (219, 24, 5)
    for lat in (gl8, o8, g2):
        ok, rank = lat.hnf_check()
        assert ok
        assert rank == sum(lat.k) == lat.rank
        assert len(lat.r_basis) == lat.k[0]


def test_conservation(gl8, g2):
    assert g2.conserved == [(2, 6)]
    assert set(g2.broken) == {(1, 7), (3, 5), (4,)}
    assert all(b.kind == "d" for b in g2.broken.values())
    # the table agrees with every generator's net block degrees
    for lat in (gl8, g2):
        for kind in ("v", "u", "d"):
            for b in lat.families.get(kind, ()):
                d = L.grade_degrees(b.vec)
                for blk in lat.conserved:
                    assert sum(d[g] for g in blk) == 0


def test_is_diagram_examples(gl8, o8, g2):
    e = L.vec([((-4,), 1)])
    assert L.is_diagram(e, g2) == e
    minus = L.vec([((-4,), -1)])
    assert L.is_diagram(minus, gl8) is None
    assert L.is_diagram(minus, o8) is None
    with pytest.raises(L.UnboundedSearch):
        L.is_diagram(minus, g2)
    v = g2.basis[0].vec
    shifted = L.vadd(L.vadd(e, v, -1), v)
    assert L.is_diagram(shifted, g2) == e


def test_is_diagram_shift_invariance(gl8):
    rng = random.Random(11)
    gamma = L.vec([((-4,), 1), ((-4, -3), 1)])
    base = L.is_diagram(gamma, gl8)
    assert base is not None
    for _ in range(50):
        b = rng.choice(gl8.basis).vec
        shifted = L.vadd(gamma, b, rng.choice([-2, -1, 1, 2]))
        w = L.is_diagram(shifted, gl8)
        assert w is not None and L.nonneg(w)
        assert gl8.same_class(w, gamma)


def test_diagram_counts(gl8, g2):
    assert len(L.enumerate_diagrams(0, 0)) == 1
    assert len(L.enumerate_diagrams(1, 0)) == 7
    assert len(L.enumerate_diagrams(1, 0, lat=gl8, sector=L.gl8_sector(1, 0))) == 8
    assert len(L.enumerate_diagrams(0, 1, lat=gl8, sector=L.gl8_sector(0, 1))) == 28


def test_diagram_representatives(g2):
    for d in L.enumerate_diagrams(1, 0):
        assert L.nonneg(d.gamma)
        assert L.in_sector(d.gamma, L.irrep_sector(1, 0))


def test_gt_compare(gl8):
    ds = [d.gamma for d in L.enumerate_diagrams(1, 0, lat=gl8, sector=L.gl8_sector(1, 0))]
    for d in ds:
        assert L.gt_compare(d, d, gl8) == "equal"
    rel = {}
    for a in range(len(ds)):
        for b in range(len(ds)):
            rel[a, b] = L.gt_compare(ds[a], ds[b], gl8)
            if rel[a, b] == "precedes":
                assert L.gt_compare(ds[b], ds[a], gl8) == "succeeds"
    for a in range(len(ds)):
        for b in range(len(ds)):
            for c in range(len(ds)):
                if rel[a, b] == "precedes" and rel[b, c] == "precedes":
                    assert rel[a, c] == "precedes"


def test_gt_compare_r_step(gl8):
    # gamma + r precedes-related to gamma whenever both stay nonnegative
    hits = 0
    for b in gl8.basis[:40]:
        r = L.r_of(b.tag)
        gamma = {k: max(0, -c) for k, c in r.items()}
        delta = L.vadd(gamma, r)
        assert L.nonneg(delta)
        assert L.gt_compare(gamma, delta, gl8) == "precedes"
        hits += 1
    assert hits == 40

"""Gelfand-Tsetlin lattices gl8 < o8 < g2 in Z^254, their bases and diagrams.

Exponent vectors are dicts {set id: int} with zero entries dropped.  Sign
tags live in the GT frame, where A_X is the minor with columns written in
the order -4 < 2 < 3 < -3 < -2 < 4 < -1 < 1; in that frame every v-generator
carries tag +1.
"""
from collections import namedtuple
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .indexsets import (INDICES, GT_ORDER, GT_POS, SETS, SET_INDEX, NSETS,
                        canonicalize, complement_negate, jacobi_sign,
                        frame_sign, fmt_set)
from . import linalg as la

Generator = namedtuple("Generator", "kind vec tag sign")
GTDiagram = namedtuple("GTDiagram", "gamma witness")


class UnboundedSearch(RuntimeError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


# ---------------------------------------------------------------- vectors

def vec(pairs):
    """Exponent vector from (set, coefficient) pairs; sets in any order."""
    d = {}
    for X, c in pairs:
        k = X if isinstance(X, int) else SET_INDEX[tuple(sorted(X))]
        d[k] = d.get(k, 0) + c
    return {k: c for k, c in d.items() if c}


def vadd(a, b, s=1):
    out = dict(a)
    for k, c in b.items():
        x = out.get(k, 0) + s * c
        if x:
            out[k] = x
        else:
            out.pop(k, None)
    return out


def vscale(a, s):
    return {k: s * c for k, c in a.items()} if s else {}


def nonneg(x):
    return all(c >= 0 for c in x.values())


def grade_degrees(x):
    out = [0] * 8
    for k, c in x.items():
        out[len(SETS[k])] += c
    return out


def dense_key(x):
    """Key for the lexicographic order on the full coordinate vector."""
    return tuple(x.get(k, 0) for k in range(NSETS))


def fmt_vec(x):
    return "{" + ", ".join(f"{fmt_set(SETS[k])}:{c}" for k, c in sorted(x.items())) + "}"


# ---------------------------------------------------------------- integer echelon

def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _lin(a, x, b, y):
    out = {}
    for k, c in a.items():
        out[k] = out.get(k, 0) + x * c
    for k, c in b.items():
        out[k] = out.get(k, 0) + y * c
    return {k: c for k, c in out.items() if c}


class IntLattice:
    """Incremental integer echelon form; rows are sparse dicts with positive pivots."""

    def __init__(self):
        self.piv = {}

    def add(self, v):
        """Insert v; returns True if the rank went up."""
        v = {k: c for k, c in v.items() if c}
        while v:
            c = min(v)
            if c not in self.piv:
                if v[c] < 0:
                    v = {k: -x for k, x in v.items()}
                self.piv[c] = v
                return True
            r = self.piv[c]
            a, b = r[c], v[c]
            if b % a == 0:
                v = _lin(v, 1, r, -(b // a))
            else:
                g, x, y = _xgcd(a, b)
                self.piv[c] = _lin(r, x, v, y)
                if self.piv[c][c] < 0:
                    self.piv[c] = {k: -t for k, t in self.piv[c].items()}
                v = _lin(r, -b // g, v, a // g)
        return False

    def reduce(self, v):
        """Canonical residue of v modulo the lattice."""
        v = {k: c for k, c in v.items() if c}
        for c in sorted(self.piv):
            if c in v:
                r = self.piv[c]
                q = v[c] // r[c]
                if q:
                    v = _lin(v, 1, r, -q)
        return v

    def contains(self, v):
        return not self.reduce(v)

    @property
    def rank(self):
        return len(self.piv)

    def hnf(self):
        """Reduced Hermite normal form as a tuple of sorted row tuples."""
        cols = sorted(self.piv)
        rows = {c: dict(self.piv[c]) for c in cols}
        for n, c in enumerate(cols):
            row = rows[c]
            for c2 in cols[n + 1:]:
                if c2 in row:
                    r2 = rows[c2]
                    q = row[c2] // r2[c2]
                    if q:
                        row = _lin(row, 1, r2, -q)
            rows[c] = row
        return tuple(tuple(sorted(rows[c].items())) for c in cols)


# ---------------------------------------------------------------- generators

def v_generators():
    """All v = e_{iX} - e_{jX} - e_{iyX} + e_{jyX} with i < j < y in the GT order."""
    out = []
    for a, b, c in combinations(range(8), 3):
        i, j, y = GT_ORDER[a], GT_ORDER[b], GT_ORDER[c]
        rest = [x for x in INDICES if x not in (i, j, y)]
        for size in range(len(rest) + 1):
            for X in combinations(rest, size):
                if size + 2 > 7:
                    continue
                v = vec([((i,) + X, 1), ((j,) + X, -1), ((i, y) + X, -1), ((j, y) + X, 1)])
                out.append(Generator("v", v, (i, j, y, X), 1))
    return out


def r_of(tag):
    i, j, y, X = tag
    return vec([((y,) + X, 1), ((j,) + X, -1), ((i, y) + X, -1), ((i, j) + X, 1)])


def u_sign(X):
    """GT-frame sign tag of the Jacobi pair (X, complement_negate(X))."""
    Y = complement_negate(X)
    return frame_sign(X) * frame_sign(Y) * jacobi_sign(X)


def u_generators():
    """One u = e_X - e_Y per pair {X, Y = complement_negate(X)}, X first in set order.

    Self-paired sets give the zero vector and are returned separately.
    """
    out, selfpaired = [], []
    for n, X in enumerate(SETS):
        Y = complement_negate(X)
        m = SET_INDEX[Y]
        if m == n:
            selfpaired.append((X, u_sign(X)))
            continue
        if m < n:
            continue
        out.append(Generator("u", vec([(X, 1), (Y, -1)]), (X, Y), u_sign(X)))
    return out, selfpaired


def omega_vector(T):
    """sum_X w_X e_{-X}, signs from writing -X in the order -x1, ..., -xk."""
    d = {}
    for X, c in T.items():
        key, s = canonicalize(tuple(-x for x in X))
        k = SET_INDEX[key]
        d[k] = d.get(k, 0) + s * c
    d = {k: c for k, c in d.items() if c}
    from math import gcd
    g = 0
    for c in d.values():
        g = gcd(g, c)
    first = d[min(d)]
    g = g if first > 0 else -g
    return {k: c // g for k, c in d.items()}


def unit_coords(model):
    return {i: c for i, c in zip(INDICES, model.unit) if c}


def d_generators(model, omegas):
    """e_1 from the octonion unit plus one omega-vector per nonzero invariant tensor."""
    unit = unit_coords(model)
    out = [Generator("d", vec([((i,), int(c)) for i, c in unit.items()]), ("unit",), 1)]
    for k in sorted(omegas):
        if omegas[k]:
            out.append(Generator("d", omega_vector(omegas[k]), ("omega", k), 1))
    return out


# ---------------------------------------------------------------- conservation

GRADE_PAIRS = ((1, 7), (2, 6), (3, 5), (4,))


def conservation_table(gens):
    """Merge grades into blocks until every generator has zero net degree per block.

    A generator whose net degree in a block is nonzero makes that block
    unconserved.  Returns (conserved blocks, {unconserved block: first witness}).
    """
    parent = {g: g for g in range(1, 8)}

    def find(g):
        while parent[g] != g:
            g = parent[g]
        return g
    degs = [grade_degrees(b.vec) for b in gens]
    # grades touched by one generator with opposite signs must share a block
    for d in degs:
        pos = [g for g in range(1, 8) if d[g] > 0]
        neg = [g for g in range(1, 8) if d[g] < 0]
        if pos and neg:
            for g in pos + neg:
                parent[find(g)] = find(pos[0])
    blocks = {}
    for g in range(1, 8):
        blocks.setdefault(find(g), []).append(g)
    blocks = [tuple(b) for b in sorted(blocks.values())]
    broken = {}
    for b, d in zip(gens, degs):
        for blk in blocks:
            if sum(d[g] for g in blk) and blk not in broken:
                broken[blk] = b
    conserved = [blk for blk in blocks if blk not in broken]
    return conserved, broken


# ---------------------------------------------------------------- lattice

class GTLattice:
    """A lattice generated by the chosen generator families, with a selected basis."""

    def __init__(self, flavor, families):
        self.flavor = flavor
        self.families = families
        self.ech = IntLattice()
        self.basis = []
        self.block_ranks = {}
        for kind in ("v", "u", "d"):
            n = 0
            for b in families.get(kind, ()):
                if self.ech.add(b.vec):
                    self.basis.append(b)
                    n += 1
            self.block_ranks[kind] = n
        self.k = tuple(self.block_ranks[k] for k in ("v", "u", "d"))
        self.r_basis = [r_of(b.tag) for b in self.basis if b.kind == "v"]
        gens = [b for kind in ("v", "u", "d") for b in families.get(kind, ())]
        self.conserved, self.broken = conservation_table(gens)
        self._phi = None

    @property
    def rank(self):
        return self.ech.rank

    def residue(self, x):
        return tuple(sorted(self.ech.reduce(x).items()))

    def contains(self, x):
        return self.ech.contains(x)

    def same_class(self, x, y):
        return self.contains(vadd(x, y, -1))

    def hnf_check(self):
        """HNF of the selected basis against HNF of all generators."""
        sel = IntLattice()
        for b in self.basis:
            sel.add(b.vec)
        return sel.hnf() == self.ech.hnf(), sel.rank

    def _left_inverse(self):
        if self._phi is None:
            E = la.SparseEchelon()
            for b in self.basis:
                E.add(b.vec)
            nb = len(self.basis)
            for k in range(NSETS):
                E.add({k: 1})
            phi = []
            for k in range(NSETS):
                c = E.coords({k: 1})
                phi.append({n: v for n, v in c.items() if n < nb and v})
            self._phi = phi
        return self._phi

    def phi(self, x):
        """Rational functional: equals basis coordinates on lattice vectors."""
        phi = self._left_inverse()
        out = {}
        for k, c in x.items():
            for n, v in phi[k].items():
                out[n] = out.get(n, 0) + c * v
        return {n: v for n, v in out.items() if v}

    def coords(self, x):
        """Integer coordinates of a lattice vector in the selected basis."""
        if not self.contains(x):
            raise ValueError("vector is not in the lattice")
        c = self.phi(x)
        assert all(Fraction(v).denominator == 1 for v in c.values())
        return {n: int(v) for n, v in c.items()}

    def sign_of(self, x):
        """Product of u sign tags over the u-coordinates of a lattice vector."""
        s = 1
        for n, t in self.coords(x).items():
            b = self.basis[n]
            if b.kind == "u" and b.sign < 0 and t % 2:
                s = -s
        return s

    def r_in_lattice(self):
        return [n for n, r in enumerate(self.r_basis) if self.contains(r)]


_LATTICES = {}


def build_lattice(flavor="g2", omegas=None, model=None):
    """flavor in {gl8, o8, g2}; the g2 flavor needs the octonion model and tensors."""
    key = flavor if omegas is None else None
    if key in _LATTICES:
        return _LATTICES[key]
    fam = {"v": v_generators()}
    if flavor in ("o8", "g2"):
        fam["u"] = u_generators()[0]
    if flavor == "g2":
        if omegas is None or model is None:
            from . import algebra
            m, _ = algebra.default_algebra()
            model = model or m
            if omegas is None:
                omegas = default_omegas()
        fam["d"] = d_generators(model, omegas)
    lat = GTLattice(flavor, fam)
    if key is not None:
        _LATTICES[key] = lat
    return lat


@lru_cache(maxsize=None)
def _omegas_cached():
    from . import algebra
    model, _ = algebra.default_algebra()
    return {k: algebra.invariant_tensor(model, k) for k in range(3, 9)}


def default_omegas():
    return dict(_omegas_cached())


# ---------------------------------------------------------------- sectors

def grade_sector(degrees):
    """Sector {grade group: degree}; e.g. {(1, 7): 1} for the span of grades 1 and 7."""
    return tuple(sorted((tuple(g), d) for g, d in degrees.items() if d))


def irrep_sector(alpha, beta):
    return grade_sector({(1, 7): alpha, (2, 6): beta})


def gl8_sector(alpha, beta):
    return grade_sector({(1,): alpha, (2,): beta})


def _multisets(ids, deg):
    for combo in combinations(range(len(ids) + deg - 1), deg):
        d = {}
        for n, c in enumerate(combo):
            k = ids[c - n]
            d[k] = d.get(k, 0) + 1
        yield d


@lru_cache(maxsize=None)
def _sector_points(sector):
    pts = [{}]
    for grades, deg in sector:
        ids = [k for k, X in enumerate(SETS) if len(X) in grades]
        new = []
        for p in pts:
            for q in _multisets(ids, deg):
                new.append({**p, **q})
        pts = new
    return tuple(tuple(sorted(p.items())) for p in pts)


def sector_points(sector):
    return [dict(p) for p in _sector_points(sector)]


def in_sector(x, sector):
    allowed = {g for grades, _ in sector for g in grades}
    d = grade_degrees(x)
    if any(d[g] for g in range(1, 8) if g not in allowed):
        return False
    return all(sum(d[g] for g in grades) == deg for grades, deg in sector)


def enumerate_support(gamma, lat, sector):
    """Nonnegative members of gamma + lattice inside the sector, lexicographic order."""
    res = lat.residue(gamma)
    pts = [p for p in sector_points(sector) if lat.residue(p) == res]
    return sorted(pts, key=dense_key, reverse=True)


def classes_in_sector(lat, sector):
    """{residue: sorted witnesses} over all sector points."""
    out = {}
    for p in sector_points(sector):
        out.setdefault(lat.residue(p), []).append(p)
    for w in out.values():
        w.sort(key=dense_key, reverse=True)
    return out


def enumerate_diagrams(alpha, beta, lat=None, sector=None):
    """Distinct classes with a nonnegative witness in the sector of V(alpha, beta).

    Representative = lexicographically first witness (largest leading coordinates).
    """
    lat = lat or build_lattice("g2")
    sector = sector or irrep_sector(alpha, beta)
    cl = classes_in_sector(lat, sector)
    diags = [GTDiagram(w[0], w[0]) for w in cl.values()]
    return sorted(diags, key=lambda d: dense_key(d.gamma), reverse=True)


def is_diagram(gamma, lat, sector=None):
    """A nonnegative member of gamma + lattice, or None.

    With a sector the search is confined to it.  Otherwise the conserved grade
    blocks bound the search; a lattice with a broken block cannot bound it.
    """
    if nonneg(gamma):
        return dict(gamma)
    if sector is not None:
        pts = enumerate_support(gamma, lat, sector)
        return pts[0] if pts else None
    if lat.broken:
        blk, b = sorted(lat.broken.items())[0]
        raise UnboundedSearch(
            f"grade block {blk} is not conserved (generator {b.kind} {b.tag})", b)
    d = grade_degrees(gamma)
    degs = {}
    for blk in lat.conserved:
        t = sum(d[g] for g in blk)
        if t < 0:
            return None
        degs[blk] = t
    pts = enumerate_support(gamma, lat, grade_sector(degs))
    return pts[0] if pts else None


# ---------------------------------------------------------------- gl8 tail invariants

TAIL_KL = tuple((k, l) for k in range(1, 8) for l in range(1, k + 1))


@lru_cache(maxsize=None)
def _tail_set(k):
    X = SETS[k]
    out = []
    for a, l in TAIL_KL:
        c = sum(1 for x in X if GT_POS[x] < a)
        out.append(max(0, c - l + 1))
    return tuple(out)


def tail_vector(x):
    """Grade degrees and tail counts; vanishes on gl8 v-generators."""
    out = list(grade_degrees(x)[1:])
    acc = [0] * len(TAIL_KL)
    for k, c in x.items():
        for n, t in enumerate(_tail_set(k)):
            if t:
                acc[n] += c * t
    return tuple(out + acc)


def lam(x):
    """-sum over pairs a < b in X of the GT position of b; zero on v, positive on r."""
    s = 0
    for k, c in x.items():
        g = sorted(GT_POS[i] for i in SETS[k])
        s -= c * sum(n * p for n, p in enumerate(g))
    return s


def gt_compare(gamma, delta, lat, max_steps=None):
    """Decide gamma + s.r = delta mod the lattice for some s >= 0.

    For the gl8 lattice the tail vector bounds the search exactly.  Other
    lattices use a step budget.  Returns 'equal', 'precedes', 'succeeds'
    or 'incomparable'.
    """
    if lat.same_class(gamma, delta):
        return "equal"
    if _reaches(gamma, delta, lat, max_steps):
        return "precedes"
    if _reaches(delta, gamma, lat, max_steps):
        return "succeeds"
    return "incomparable"


def _reaches(a, b, lat, max_steps):
    if lat.flavor == "gl8":
        target = tail_vector(b)
        start = tail_vector(a)
        diff = tuple(y - x for x, y in zip(start, target))
        if any(c < 0 for c in diff):
            return False
        groups = {}
        for n, r in enumerate(lat.r_basis):
            groups.setdefault(tail_vector(r), []).append(n)
        keys = sorted(groups)
        res_b = lat.residue(b)

        def rec(rem, start_idx, cur):
            if not any(rem):
                return lat.residue(cur) == res_b
            for gi in range(start_idx, len(keys)):
                t = keys[gi]
                if all(x <= y for x, y in zip(t, rem)):
                    nrem = tuple(y - x for x, y in zip(t, rem))
                    for n in groups[t]:
                        if rec(nrem, gi, vadd(cur, lat.r_basis[n])):
                            return True
            return False
        return rec(diff, 0, a)
    steps = max_steps or 2
    frontier = [a]
    res_b = lat.residue(b)
    for _ in range(steps):
        nxt = []
        for x in frontier:
            for r in lat.r_basis:
                y = vadd(x, r)
                if lat.residue(y) == res_b:
                    return True
                nxt.append(y)
        frontier = nxt
    return False

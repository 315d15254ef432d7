"""Split octonions, the derivation algebra g2 inside o8, root data and Casimir words.

Basis vectors e_i of the octonions are labelled by i in {-4..-1, 1..4}.
The norm form is N(x) = -1/2 x^T Omega x with Omega the antidiagonal matrix,
so that o8 is the algebra of matrices with M^T Omega + Omega M = 0.
"""
import random
from fractions import Fraction
from itertools import combinations, permutations, product
from math import gcd, lcm

from .indexsets import INDICES, POS, perm_sign
from . import linalg as la

ZERO = Fraction(0)


class ModelError(RuntimeError):
    pass


def _cross(a, b):
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


# Zorn vector-matrices (a, v, w, b); the product below composes the norm ab - v.w
def _zorn_mul(X, Y):
    a, v, w, b = X
    a2, v2, w2, b2 = Y
    cw = _cross(w, w2)
    cv = _cross(v, v2)
    return (a * a2 + _dot(v, w2),
            [a * v2[k] + b2 * v[k] + cw[k] for k in range(3)],
            [a2 * w[k] + b * w2[k] - cv[k] for k in range(3)],
            b * b2 + _dot(w, v2))


def _to_zorn(x):
    p = POS
    return (x[p[-1]], [x[p[-4]], x[p[3]], x[p[2]]], [x[p[4]], x[p[-3]], x[p[-2]]], -x[p[1]])


def _from_zorn(Z):
    a, v, w, b = Z
    x = [ZERO] * 8
    x[POS[-1]] = a
    x[POS[1]] = -b
    x[POS[-4]], x[POS[3]], x[POS[2]] = v
    x[POS[4]], x[POS[-3]], x[POS[-2]] = w
    return x


def unit_vector(i):
    x = [ZERO] * 8
    x[POS[i]] = Fraction(1)
    return x


OMEGA = [[Fraction(int(i == -j)) for j in INDICES] for i in INDICES]


class OctonionModel:
    """Structure constants m[(i, j)] = e_i e_j as an 8-vector of Fractions."""

    def __init__(self, mult, unit):
        self.mult = mult
        self.unit = unit
        self.omega = OMEGA

    def mul(self, x, y):
        z = [ZERO] * 8
        for a in INDICES:
            xa = x[POS[a]]
            if not xa:
                continue
            for b in INDICES:
                yb = y[POS[b]]
                if not yb:
                    continue
                c = xa * yb
                for k, m in enumerate(self.mult[a, b]):
                    if m:
                        z[k] += c * m
        return z

    def norm(self, x):
        return -sum(x[POS[i]] * x[POS[-i]] for i in (-4, -3, -2, -1))

    def real_part(self, x):
        """tau(x), so that x = tau(x) 1 + (trace-free part)."""
        return (x[POS[-1]] - x[POS[1]]) / 2


def build_split_octonions(seed=0, samples=100):
    mult = {}
    for i in INDICES:
        for j in INDICES:
            mult[i, j] = _from_zorn(_zorn_mul(_to_zorn(unit_vector(i)), _to_zorn(unit_vector(j))))
    unit = _from_zorn((Fraction(1), [ZERO] * 3, [ZERO] * 3, Fraction(1)))
    model = OctonionModel(mult, unit)
    problems = check_model(model, seed, samples)
    if problems:
        raise ModelError("; ".join(problems[:5]))
    return model


def _brute_mul(x, y):
    # independent route through the Zorn form, used to cross-check the table
    return _from_zorn(_zorn_mul(_to_zorn(x), _to_zorn(y)))


def check_model(model, seed=0, samples=100):
    bad = []
    E = [unit_vector(i) for i in INDICES]
    for x in E:
        for y in E:
            xy = model.mul(x, y)
            if model.norm(xy) != model.norm(x) * model.norm(y):
                bad.append("composition fails on basis pair")
            if model.mul(x, model.mul(x, y)) != model.mul(model.mul(x, x), y):
                bad.append("left alternativity fails")
            if model.mul(model.mul(y, x), x) != model.mul(y, model.mul(x, x)):
                bad.append("right alternativity fails")
        if model.mul(model.unit, x) != x or model.mul(x, model.unit) != x:
            bad.append("unit is not two-sided")
    rng = random.Random(seed)
    for _ in range(samples):
        x = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(8)]
        y = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(8)]
        if model.norm(model.mul(x, y)) != model.norm(x) * model.norm(y):
            bad.append("composition fails on random pair")
    return bad


# ---------------------------------------------------------------- matrices

def zeros():
    return [[ZERO] * 8 for _ in range(8)]


def matrix_unit(i, j):
    M = zeros()
    M[POS[i]][POS[j]] = Fraction(1)
    return M


def F(i, j):
    """F_{i,j} = E_{i,j} - E_{-j,-i}."""
    M = zeros()
    M[POS[i]][POS[j]] += 1
    M[POS[-j]][POS[-i]] -= 1
    return M


def madd(A, B, b=1, a=1):
    return [[a * x + b * y for x, y in zip(r, s)] for r, s in zip(A, B)]


def mscale(A, c):
    return [[c * x for x in r] for r in A]


def bracket(A, B):
    return madd(la.matmul(A, B), la.matmul(B, A), -1)


def flat(M):
    return [x for r in M for x in r]


def unflat(v):
    return [list(v[8 * r:8 * r + 8]) for r in range(8)]


def in_o8(M):
    Mt = la.transpose(M)
    return all(x == 0 for x in flat(madd(la.matmul(Mt, OMEGA), la.matmul(OMEGA, M))))


def trace_form(A, B):
    return sum(A[i][k] * B[k][i] for i in range(8) for k in range(8))


def is_nilpotent(M):
    P = M
    for _ in range(8):
        P = la.matmul(P, M)
    return all(x == 0 for x in flat(P))


def fmt_q(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------- g2

H_ALPHA1 = madd(madd(mscale(F(-2, -2), Fraction(2, 3)), F(-3, -3), Fraction(-1, 3)), F(-4, -4), Fraction(1, 3))
H_ALPHA2 = madd(F(-3, -3), F(-2, -2), -1)


def _primitive(vec):
    """Scale a rational vector to coprime integers with first nonzero entry positive."""
    den = lcm(*[Fraction(x).denominator for x in vec])
    ints = [int(Fraction(x) * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return [Fraction(0)] * len(vec)
    first = next(x for x in ints if x)
    if first < 0:
        g = -g
    return [Fraction(x, g) for x in ints]


class G2Algebra:
    """Basis: H_alpha1, H_alpha2, then root vectors (positive first)."""

    def __init__(self, model, raw):
        self.model = model
        self.raw = raw              # kernel basis as returned by the solver
        self.cartan = (H_ALPHA1, H_ALPHA2)
        self.roots = []             # (dynkin labels (a, b), matrix)
        self._find_roots()
        self.basis = [H_ALPHA1, H_ALPHA2] + [m for _, m in self.roots]
        self._span = la.SparseEchelon()
        for n, M in enumerate(self.basis):
            self._span.add({k: x for k, x in enumerate(flat(M)) if x})
        self.sl3 = self._sl3()

    # weight of e_i under (3 H_alpha1, H_alpha2): the coroot pairing
    @staticmethod
    def weight_of_index(i):
        return (3 * H_ALPHA1[POS[i]][POS[i]], H_ALPHA2[POS[i]][POS[i]])

    def _find_roots(self):
        # common eigenvectors of ad(H) on the derivation algebra
        B = [unflat(v) for v in self.raw]
        n = len(B)
        rows = [flat(M) for M in B]
        E = la.SparseEchelon()
        for r in rows:
            E.add({k: x for k, x in enumerate(r) if x})

        def coords(M):
            c = E.coords({k: x for k, x in enumerate(flat(M)) if x})
            return [c.get(k, ZERO) for k in range(n)]
        ad1 = la.transpose([coords(bracket(mscale(H_ALPHA1, 3), M)) for M in B])
        ad2 = la.transpose([coords(bracket(H_ALPHA2, M)) for M in B])
        found = {}
        for a in range(-3, 4):
            for b in range(-3, 4):
                if (a, b) == (0, 0):
                    continue
                A1 = [[ad1[r][c] - (a if r == c else 0) for c in range(n)] for r in range(n)]
                A2 = [[ad2[r][c] - (b if r == c else 0) for c in range(n)] for r in range(n)]
                ker = la.nullspace(A1 + A2, n)
                if not ker:
                    continue
                if len(ker) != 1:
                    raise ModelError(f"root space for {(a, b)} has dimension {len(ker)}")
                M = [[ZERO] * 8 for _ in range(8)]
                for c, Bm in zip(ker[0], B):
                    if c:
                        M = madd(M, Bm, c)
                found[(a, b)] = unflat(_primitive(flat(M)))
        if len(found) != 12:
            raise ModelError(f"found {len(found)} roots, expected 12")
        pos = [k for k in found if self.is_upper(found[k])]
        neg = [k for k in found if k not in pos]
        if len(pos) != 6:
            raise ModelError("positive system is not upper triangular")
        # order positive roots by height in simple roots
        key = lambda r: (sum(self.root_in_simple(r)), r)
        for r in sorted(pos, key=key):
            self.roots.append((r, found[r]))
        for r in sorted(neg, key=lambda r: (-sum(self.root_in_simple(r)), r)):
            self.roots.append((r, found[r]))

    @staticmethod
    def is_upper(M):
        return all(M[r][c] == 0 for r in range(8) for c in range(r + 1)) and any(flat(M))

    @staticmethod
    def root_in_simple(r):
        # alpha1 = (2,-1), alpha2 = (-3,2) in Dynkin labels; invert the Cartan matrix
        a, b = r
        return (2 * a + 3 * b, a + 2 * b)

    def positive_roots(self):
        return [(r, M) for r, M in self.roots if self.is_upper(M)]

    def negative_roots(self):
        return [(r, M) for r, M in self.roots if not self.is_upper(M)]

    def contains(self, M):
        return self._span.coords({k: x for k, x in enumerate(flat(M)) if x}) is not None

    def coords(self, M):
        c = self._span.coords({k: x for k, x in enumerate(flat(M)) if x})
        if c is None:
            return None
        return [c.get(k, ZERO) for k in range(len(self.basis))]

    def project_h(self, M):
        """Trace-form orthogonal projection of M onto g2."""
        G = [[trace_form(a, b) for b in self.basis] for a in self.basis]
        rhs = [trace_form(a, M) for a in self.basis]
        c = la.solve(G, rhs)
        out = zeros()
        for x, b in zip(c, self.basis):
            if x:
                out = madd(out, b, x)
        return out

    def D(self, i, j):
        return self.project_h(F(i, j))

    def _sl3(self):
        # E12 -> F_{-3,-2}, E23 -> F_{-4,2}; the rest by brackets and transposes
        e12, e23 = F(-3, -2), F(-4, 2)
        e21, e32 = F(-2, -3), F(2, -4)
        for M in (e12, e23, e21, e32):
            if not self.contains(M):
                raise ModelError("sl3 generator outside g2")
        e13 = bracket(e12, e23)
        e31 = bracket(e32, e21)
        h12 = bracket(e12, e21)
        h23 = bracket(e23, e32)
        e11 = madd(mscale(h12, Fraction(2, 3)), h23, Fraction(1, 3))
        e22 = madd(mscale(h12, Fraction(-1, 3)), h23, Fraction(1, 3))
        e33 = madd(mscale(h12, Fraction(-1, 3)), h23, Fraction(-2, 3))
        return {(1, 1): e11, (1, 2): e12, (1, 3): e13,
                (2, 1): e21, (2, 2): e22, (2, 3): e23,
                (3, 1): e31, (3, 2): e32, (3, 3): e33}


def derivation_kernel(model):
    """Rational basis of {D : D(xy) = D(x)y + xD(y)} as flattened 8x8 matrices."""
    M = model.mult
    rows = []
    for i in INDICES:
        for j in INDICES:
            for k in range(8):
                row = [ZERO] * 64
                for c, x in enumerate(M[i, j]):
                    if x:
                        row[k * 8 + c] += x
                for r in INDICES:
                    row[POS[r] * 8 + POS[i]] -= M[r, j][k]
                    row[POS[r] * 8 + POS[j]] -= M[i, r][k]
                if any(row):
                    rows.append(row)
    return la.nullspace(rows, 64)


def derivation_algebra(model):
    raw = derivation_kernel(model)
    if len(raw) != 14:
        raise ModelError(f"derivation algebra has dimension {len(raw)}")
    for v in raw:
        if not in_o8(unflat(v)):
            raise ModelError("derivation outside o8")
    g = G2Algebra(model, raw)
    for M in (H_ALPHA1, H_ALPHA2, F(-3, -2), F(-4, 2)):
        if not g.contains(M):
            raise ModelError("expected element missing from g2")
    return g


# ---------------------------------------------------------------- tensors

def skew_tensor(model, k):
    """Antisymmetrization of tau(((x1 x2) x3) ... xk) over ordered k-subsets.

    Returned as {sorted index tuple: Fraction}, without the 1/k! factor.
    """
    out = {}
    E = {i: unit_vector(i) for i in INDICES}
    cache = {}

    def nested(seq):
        if seq in cache:
            return cache[seq]
        if len(seq) == 1:
            val = E[seq[0]]
        else:
            val = model.mul(nested(seq[:-1]), E[seq[-1]])
        cache[seq] = val
        return val
    for X in combinations(INDICES, k):
        tot = ZERO
        for p in permutations(X):
            tot += perm_sign(p, POS) * model.real_part(nested(p))
        if tot:
            out[X] = tot
    return out


def invariant_tensor(model, k):
    """Primitive integer version of the skew tensor; {} when it vanishes."""
    T = skew_tensor(model, k)
    if not T:
        return {}
    keys = sorted(T)
    vals = _primitive([T[X] for X in keys])
    return {X: int(v) for X, v in zip(keys, vals)}


def tensor_action(M, T):
    """Derivation action of a matrix on an antisymmetric tensor {X: c}."""
    out = {}
    for X, c in T.items():
        for slot, x in enumerate(X):
            for i in INDICES:
                m = M[POS[i]][POS[x]]
                if not m:
                    continue
                seq = X[:slot] + (i,) + X[slot + 1:]
                s = perm_sign(seq, POS)
                if not s:
                    continue
                key = tuple(sorted(seq))
                out[key] = out.get(key, 0) + s * m * c
    return {X: c for X, c in out.items() if c}


# ---------------------------------------------------------------- Casimir words

def casimir_word(which):
    """Index tuples of the cyclic contraction; each tuple is a product of generators.

    g2 words are over D_{i,j} with indices {-4..-1, 1..4}; sl3 words over E_{i,j},
    i, j in 1..3, translated through the sl3 dictionary of the algebra.
    """
    if which == "C2_g2":
        return [((a, b), (b, a)) for a, b in product(INDICES, repeat=2)]
    if which == "C6_g2":
        return [tuple((c[n], c[(n + 1) % 6]) for n in range(6)) for c in product(INDICES, repeat=6)]
    if which == "C2_sl3":
        return [((a, b), (b, a)) for a, b in product((1, 2, 3), repeat=2)]
    if which == "C3_sl3":
        return [((a, b), (b, c), (c, a)) for a, b, c in product((1, 2, 3), repeat=3)]
    raise ValueError(f"unknown Casimir {which!r}")


# ---------------------------------------------------------------- group elements

def exp_nilpotent(X, t):
    """exp(tX) for nilpotent X as an exact finite sum."""
    if not is_nilpotent(X):
        raise ValueError("exp_nilpotent needs a nilpotent matrix")
    res = la.identity(8)
    term = la.identity(8)
    tX = mscale(X, Fraction(t))
    for k in range(1, 9):
        term = mscale(la.matmul(term, tX), Fraction(1, k))
        if not any(flat(term)):
            break
        res = madd(res, term)
    return res


def sample_group_element(steps):
    """Product of exp(t X) over (X, t) steps."""
    g = la.identity(8)
    for X, t in steps:
        g = la.matmul(g, exp_nilpotent(X, t))
    return g


def random_steps(roots, rng, n=6):
    steps = []
    for _ in range(n):
        _, X = rng.choice(roots)
        t = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        steps.append((X, t))
    return steps


def preserves_product(model, g, samples=3, seed=0):
    """g(xy) == g(x) g(y) on a few random octonions."""
    rng = random.Random(seed)
    for _ in range(samples):
        x = [Fraction(rng.randint(-3, 3)) for _ in range(8)]
        y = [Fraction(rng.randint(-3, 3)) for _ in range(8)]
        if la.matvec(g, model.mul(x, y)) != model.mul(la.matvec(g, x), la.matvec(g, y)):
            return False
    return True


_CACHE = {}


def default_algebra():
    """Model and g2 built once per process."""
    if "g" not in _CACHE:
        model = build_split_octonions()
        _CACHE["model"] = model
        _CACHE["g"] = derivation_algebra(model)
    return _CACHE["model"], _CACHE["g"]

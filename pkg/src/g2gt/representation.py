"""Irreducible g2-modules on polynomials in the A_X, their bases and Casimirs.

The module V(alpha, beta) is U(g2) applied to the highest vector
(A_{-4} + A_{-4..3})^alpha (A_{-4,-3} + A_{-4..2})^beta.  Its basis is
obtained by projecting gl8 A-GKZ series onto the module under the pairing
and keeping the independent ones in a linear extension of the GT order; the
literal g2 diagram count is reported next to it.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .indexsets import INDICES, POS, SETS, SET_INDEX, canonicalize, complement_negate
from . import algebra as alg
from . import lattice as L
from . import linalg as la
from . import poly as P
from . import series as S

log = logging.getLogger(__name__)


class BuildError(RuntimeError):
    pass


# ---------------------------------------------------------------- action

@lru_cache(maxsize=None)
def _unit_table(i, j):
    """E_ij on variables: {set id: (set id, sign)}."""
    out = {}
    for k, X in enumerate(SETS):
        if j not in X:
            continue
        if i == j:
            out[k] = (k, 1)
            continue
        key, s = canonicalize(tuple(i if x == j else x for x in X))
        if s:
            out[k] = (SET_INDEX[key], s)
    return out


def _act_table(table, f):
    out = {}
    for m, c in f.items():
        d = dict(m)
        for k, e in m:
            hit = table.get(k)
            if hit is None:
                continue
            k2, s = hit
            nd = dict(d)
            nd[k] -= 1
            if not nd[k]:
                del nd[k]
            nd[k2] = nd.get(k2, 0) + 1
            mm = tuple(sorted(nd.items()))
            out[mm] = out.get(mm, 0) + c * e * s
    return P.clean(out)


def act_matrix_unit(i, j, f):
    """E_ij f: each A_X with j in X goes to A_{X, j -> i}, by the product rule."""
    return _act_table(_unit_table(i, j), f)


def matrix_terms(Z):
    return [(i, j, Z[POS[i]][POS[j]]) for i in INDICES for j in INDICES if Z[POS[i]][POS[j]]]


def act_g2(Z, f, g=None):
    if g is None:
        _, g = alg.default_algebra()
    if not g.contains(Z):
        raise ValueError("element is not in g2")
    out = {}
    for i, j, c in matrix_terms(Z):
        out = P.add(out, act_matrix_unit(i, j, f), c)
    return out


def act_gl8(Z, f):
    out = {}
    for i, j, c in matrix_terms(Z):
        out = P.add(out, act_matrix_unit(i, j, f), c)
    return out


def weight_of_monomial(m):
    a = b = 0
    for k, e in m:
        for x in SETS[k]:
            wa, wb = alg.G2Algebra.weight_of_index(x)
            a += e * wa
            b += e * wb
    return (int(a), int(b))


def weight_of(f):
    """Dynkin weight of a weight vector, or None if f mixes weights."""
    ws = {weight_of_monomial(m) for m in f}
    return ws.pop() if len(ws) == 1 else None


# ---------------------------------------------------------------- highest vector

def highest_vector(alpha, beta):
    if alpha < 0 or beta < 0:
        raise ValueError("alpha and beta must be nonnegative")
    Y1 = complement_negate((-4,))
    Y2 = complement_negate((-4, -3))
    f1 = P.add(P.var((-4,)), P.var(Y1))
    f2 = P.add(P.var((-4, -3)), P.var(Y2))
    return P.mul(P.power(f1, alpha), P.power(f2, beta))


def check_highest_vector(alpha, beta, hv=None):
    """Failures among: raising annihilation, weight, A-GKZ operators."""
    from . import relations as R
    _, g = alg.default_algebra()
    hv = hv if hv is not None else highest_vector(alpha, beta)
    bad = []
    for r, M in g.positive_roots():
        if act_g2(M, hv, g):
            bad.append(f"raising {r}")
    if hv and weight_of(hv) != (alpha, beta):
        bad.append(f"weight {weight_of(hv)}")
    for kind, tag in R.residuals(hv, R.system_operators("agkz")):
        bad.append(f"{kind} {tag}")
    return bad


# ---------------------------------------------------------------- root-data oracles

CARTAN = ((2, -1), (-3, 2))     # rows: simple roots in Dynkin labels
SYM = ((2, -3), (-3, 6))        # invariant form on simple roots, alpha1 short


def _form(x, y):
    return sum(x[a] * SYM[a][b] * y[b] for a in range(2) for b in range(2))


def positive_roots_simple():
    """Positive roots in simple-root coordinates, by reflection closure."""
    simple = [(1, 0), (0, 1)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for r in frontier:
            for a, s in enumerate(simple):
                c = Fraction(2 * _form(r, s), _form(s, s))
                x = tuple(int(r[t] - c * s[t]) for t in range(2))
                if x not in roots and all(v >= 0 for v in x) and any(x):
                    roots.add(x)
                    new.append(x)
        frontier = new
    return sorted(roots, key=lambda r: (sum(r), r))


def _weight_to_simple(a, b):
    """Dynkin labels (a, b) to simple-root coordinates: solve via the Cartan rows."""
    # omega1 = 2 alpha1 + alpha2, omega2 = 3 alpha1 + 2 alpha2
    det = Fraction(CARTAN[0][0] * CARTAN[1][1] - CARTAN[0][1] * CARTAN[1][0])
    inv = ((CARTAN[1][1] / det, -CARTAN[0][1] / det), (-CARTAN[1][0] / det, CARTAN[0][0] / det))
    return (a * inv[0][0] + b * inv[1][0], a * inv[0][1] + b * inv[1][1])


def weyl_dimension(alpha, beta):
    """prod over positive roots of (lambda + rho, r) / (rho, r)."""
    lam = _weight_to_simple(alpha, beta)
    rho = _weight_to_simple(1, 1)
    num = den = Fraction(1)
    for r in positive_roots_simple():
        num *= _form([lam[t] + rho[t] for t in range(2)], r)
        den *= _form(rho, r)
    d = num / den
    assert d.denominator == 1
    return int(d)


def casimir_oracle(alpha, beta):
    """(lambda, lambda + 2 rho) in the invariant form."""
    lam = _weight_to_simple(alpha, beta)
    rho = _weight_to_simple(1, 1)
    return _form(lam, [lam[t] + 2 * rho[t] for t in range(2)])


def weight_multiplicities(alpha, beta):
    """Freudenthal's formula; returns {Dynkin weight: multiplicity}."""
    pos = positive_roots_simple()
    lam = _weight_to_simple(alpha, beta)
    rho = _weight_to_simple(1, 1)

    def to_dynkin(x):
        return (int(2 * x[0] - 3 * x[1]), int(-x[0] + 2 * x[1]))
    mult = {tuple(lam): 1}
    norm = lambda x: _form(x, x)
    lr = [lam[t] + rho[t] for t in range(2)]
    # weights lambda - n1 alpha1 - n2 alpha2 by increasing depth
    depth_max = int(2 * (lam[0] + lam[1])) + 1
    for depth in range(1, depth_max + 1):
        for n1 in range(depth + 1):
            n2 = depth - n1
            mu = (lam[0] - n1, lam[1] - n2)
            tot = Fraction(0)
            for r in pos:
                k = 1
                while True:
                    nu = (mu[0] + k * r[0], mu[1] + k * r[1])
                    if nu[0] > lam[0] or nu[1] > lam[1]:
                        break
                    m = mult.get(nu, 0)
                    tot += m * _form(nu, r)
                    k += 1
            d = norm(lr) - norm([mu[t] + rho[t] for t in range(2)])
            if d and tot:
                m = 2 * tot / d
                if m:
                    mult[mu] = int(m)
    return {to_dynkin(mu): m for mu, m in mult.items()}


# ---------------------------------------------------------------- module

def module_basis(alpha, beta):
    """Basis of U(g2) hv, found by closing under lowering root elements."""
    _, g = alg.default_algebra()
    hv = highest_vector(alpha, beta)
    span = P.Span()
    basis = []
    span.append(hv)
    basis.append(hv)
    queue = [hv]
    lows = [M for _, M in g.negative_roots()]
    while queue:
        f = queue.pop(0)
        for M in lows:
            h = act_g2(M, f, g)
            if h and not span.contains(h):
                span.append(h)
                basis.append(h)
                queue.append(h)
    return basis


def _orthogonal(vectors):
    w = P.gram_schmidt(vectors)
    return [(v, P.pairing(v, v)) for v in w]


def project(f, orth):
    out = {}
    for w, n in orth:
        c = P.pairing(f, w)
        if c:
            out = P.add(out, w, c / n)
    return out


def gt_order_key(gamma):
    """Linear extension of the gl8 GT order: tail size, then representative."""
    return (sum(L.tail_vector(gamma)), tuple(-c for c in L.dense_key(gamma)))


@dataclass
class IrrepBuild:
    alpha: int
    beta: int
    dim: int
    literal_diagrams: list
    diagrams: list = field(default_factory=list)
    basis: list = field(default_factory=list)
    module: list = field(default_factory=list)
    gram: list = field(default_factory=list)
    skipped: int = 0
    gt: list = None
    eigen_table: list = None
    _span: object = None
    _rho: dict = None

    def span(self):
        if self._span is None:
            self._span = P.Span(self.basis)
        return self._span


def build_irrep(alpha, beta):
    if alpha < 0 or beta < 0:
        raise ValueError("alpha and beta must be nonnegative")
    dim = weyl_dimension(alpha, beta)
    literal = L.enumerate_diagrams(alpha, beta)
    mod = module_basis(alpha, beta)
    if len(mod) != dim:
        raise BuildError(f"module dimension {len(mod)} differs from Weyl dimension {dim}")
    b = IrrepBuild(alpha, beta, dim, literal, module=mod)
    orth = _orthogonal(mod)
    gl8 = L.build_lattice("gl8")
    sector = L.gl8_sector(alpha, beta)
    cands = sorted((w[0] for w in L.classes_in_sector(gl8, sector).values()), key=gt_order_key)
    span = P.Span()
    for gamma in cands:
        if len(b.basis) == dim:
            break
        f = project(S.agkz_series(gamma, gl8, sector), orth)
        if f and not span.contains(f):
            span.append(f)
            b.basis.append(f)
            b.diagrams.append(gamma)
        else:
            b.skipped += 1
    if len(b.basis) != dim:
        raise BuildError(f"projected series span {len(b.basis)} of {dim} dimensions")
    b._span = span
    b.gram = P.gram(b.basis)
    return b


def hv_in_span(b):
    hv = highest_vector(b.alpha, b.beta)
    try:
        b.span().coords(hv)
        return True
    except P.NotInSpan:
        return False


# ---------------------------------------------------------------- matrices

def poly_matrix(b, op):
    """Matrix of a linear map on the build, columns = images of basis vectors."""
    cols = [b.span().coords(op(f)) for f in b.basis]
    n = len(b.basis)
    return [[cols[c][r] for c in range(n)] for r in range(n)]


def generator_matrix(Z, b):
    _, g = alg.default_algebra()
    return poly_matrix(b, lambda f: act_g2(Z, f, g))


def basis_matrices(b):
    """Matrices of the 14 basis elements of g2, cached on the build."""
    if b._rho is None:
        _, g = alg.default_algebra()
        b._rho = [generator_matrix(M, b) for M in g.basis]
    return b._rho


def element_matrix(Z, b):
    _, g = alg.default_algebra()
    c = g.coords(Z)
    if c is None:
        raise ValueError("element is not in g2")
    rho = basis_matrices(b)
    n = b.dim
    out = [[Fraction(0)] * n for _ in range(n)]
    for x, M in zip(c, rho):
        if x:
            for r in range(n):
                for s in range(n):
                    if M[r][s]:
                        out[r][s] += x * M[r][s]
    return out


def _mat_add(A, B, c=1):
    return [[a + c * x for a, x in zip(r, s)] for r, s in zip(A, B)]


def _zero(n):
    return [[Fraction(0)] * n for _ in range(n)]


def d_matrices(b):
    _, g = alg.default_algebra()
    return {(i, j): element_matrix(g.D(i, j), b) for i in INDICES for j in INDICES}


def sl3_matrices(b):
    _, g = alg.default_algebra()
    return {k: element_matrix(M, b) for k, M in g.sl3.items()}


def casimir_matrix(which, b, method="fast"):
    """C2_g2, C6_g2, C2_sl3 or C3_sl3 as a matrix on the build."""
    n = b.dim
    if which in ("C2_sl3", "C3_sl3"):
        mats = sl3_matrices(b)
    else:
        mats = d_matrices(b)
    if which == "C6_g2":
        return _c6_block_trace(mats, n) if method == "fast" else _c6_literal(mats, n)
    out = _zero(n)
    for word in alg.casimir_word(which):
        M = la.identity(n)
        for key in word:
            M = la.qmatmul(M, mats[key])
        out = _mat_add(out, M)
    return out


def _c6_block_trace(D, n):
    idx = list(INDICES)
    N = 8 * n
    big = [[Fraction(0)] * N for _ in range(N)]
    for a, i in enumerate(idx):
        for c, j in enumerate(idx):
            M = D[(i, j)]
            for r in range(n):
                for s in range(n):
                    big[a * n + r][c * n + s] = M[r][s]
    P2 = la.qmatmul(big, big)
    P6 = la.qmatmul(la.qmatmul(P2, P2), P2)
    out = _zero(n)
    for a in range(8):
        for r in range(n):
            for s in range(n):
                out[r][s] += P6[a * n + r][a * n + s]
    return out


def _c6_literal(D, n):
    """Term-by-term sum over all 8^6 index cycles, in scaled integer arithmetic."""
    from math import lcm
    den = lcm(*[x.denominator for M in D.values() for r in M for x in r])
    ints = {k: np.array([[int(x * den) for x in r] for r in M], dtype=np.int64) for k, M in D.items()}
    nz = {k for k, M in ints.items() if M.any()}
    bound = max(int(abs(M).max()) for M in ints.values())
    if bound ** 6 * n ** 5 * 8 ** 6 >= 2 ** 62:
        raise OverflowError("literal C6 sum would overflow int64")
    acc = np.zeros((n, n), dtype=np.int64)
    idx = list(INDICES)
    for c in product(idx, repeat=6):
        keys = [(c[t], c[(t + 1) % 6]) for t in range(6)]
        if any(k not in nz for k in keys):
            continue
        M = ints[keys[0]]
        for k in keys[1:]:
            M = M @ ints[k]
        acc += M
    d6 = Fraction(den) ** 6
    return [[Fraction(int(x)) / d6 for x in r] for r in acc]


def scalar_of(M):
    """The scalar if M is a scalar matrix, else None."""
    n = len(M)
    c = M[0][0] if n else Fraction(0)
    for r in range(n):
        for s in range(n):
            if M[r][s] != (c if r == s else 0):
                return None
    return c


# ---------------------------------------------------------------- maximization

def _wedge_apply(M, T):
    """Derivation action of a matrix on {sorted tuple: coeff} wedge tensors."""
    return alg.tensor_action(M, T)


def maximize_set(X):
    """sl3-maximal index set reached from e_X by raising; fatal if not decomposable."""
    _, g = alg.default_algebra()
    raising = [g.sl3[(1, 2)], g.sl3[(2, 3)], g.sl3[(1, 3)]]
    T = {tuple(X): Fraction(1)}
    for _ in range(64):
        for R in raising:
            T2 = _wedge_apply(R, T)
            if T2:
                T = T2
                break
        else:
            break
    if len(T) != 1:
        raise BuildError(f"maximal tensor from {X} is not decomposable: {T}")
    return next(iter(T))


def maximize(gamma):
    out = {}
    for k, c in gamma.items():
        Y = SET_INDEX[maximize_set(SETS[k])]
        out[Y] = out.get(Y, 0) + c
    return {k: c for k, c in out.items() if c}


# ---------------------------------------------------------------- GT basis

def gt_basis(b):
    """Orthogonalize in the build order; tabulate sl3 and g2 Casimir eigenvalues."""
    b.gt = P.gram_schmidt(b.basis)
    cas = {w: casimir_matrix(w, b) for w in ("C2_sl3", "C3_sl3", "C2_g2")}
    table = []
    for n, v in enumerate(b.gt):
        c = b.span().coords(v)
        row = {"index": n, "diagram": b.diagrams[n]}
        for w, M in cas.items():
            img = la.matvec(M, c)
            k = next((t for t in range(len(c)) if c[t]), None)
            lam = img[k] / c[k]
            row[w] = lam if all(x == lam * y for x, y in zip(img, c)) else None
        table.append(row)
    b.eigen_table = table
    return b


def eigen_blocks(b):
    """Sizes of groups of GT vectors sharing (C2_sl3, C3_sl3) eigenvalues."""
    groups = {}
    for row in b.eigen_table:
        groups.setdefault((row["C2_sl3"], row["C3_sl3"]), 0)
        groups[(row["C2_sl3"], row["C3_sl3"])] += 1
    return sorted(groups.values(), reverse=True)


def sl3_branching(b):
    """Dimensions of sl3 components: common kernel of the raising matrices."""
    E = sl3_matrices(b)
    n = b.dim
    stacked = E[(1, 2)] + E[(2, 3)]
    ker = la.nullspace(stacked, n) if n else []
    dims = []
    H12 = _mat_add(E[(1, 1)], E[(2, 2)], -1)
    H23 = _mat_add(E[(2, 2)], E[(3, 3)], -1)
    # kernel vectors can mix weights; diagonalize the Cartan part on the kernel
    basis = _weight_split(ker, H12, H23)
    for v, (p, q) in basis:
        dims.append((p + 1) * (q + 1) * (p + q + 2) // 2)
    return sorted(dims, reverse=True)


def _weight_split(ker, H1, H2):
    """Weight basis of an H-stable subspace given by a spanning list."""
    n = len(ker)
    if not n:
        return []
    E = la.SparseEchelon()
    for v in ker:
        E.add({k: x for k, x in enumerate(v) if x})

    def restrict(H):
        cols = []
        for v in ker:
            c = E.coords({k: x for k, x in enumerate(la.matvec(H, v)) if x})
            cols.append([c.get(k, Fraction(0)) for k in range(n)])
        return la.transpose(cols)
    R1, R2 = restrict(H1), restrict(H2)
    out = []
    for p in range(-20, 21):
        for q in range(-20, 21):
            A = [[R1[r][c] - (p if r == c else 0) for c in range(n)] for r in range(n)]
            B = [[R2[r][c] - (q if r == c else 0) for c in range(n)] for r in range(n)]
            for w in la.nullspace(A + B, n):
                out.append((w, (p, q)))
    if len(out) != n:
        raise BuildError("raising kernel is not spanned by weight vectors")
    return out


def weights_of_build(b):
    """Weights of the GT vectors, each a weight vector of the Cartan subalgebra."""
    out = []
    for v in (b.gt or b.basis):
        out.append(weight_of(v))
    return out

"""Sparse polynomials in the variables A_X with rational coefficients.

A monomial is a sorted tuple of (set id, exponent) pairs with positive
exponents; a polynomial is a dict monomial -> nonzero Fraction.  The same
carrier doubles as a constant-coefficient differential operator in the
symbols d/dA_X.
"""
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .indexsets import SETS, SET_INDEX, fmt_set
from . import linalg as la

ONE = ()


class NotInSpan(ValueError):
    def __init__(self, residual):
        super().__init__("polynomial is outside the span")
        self.residual = residual


class LinearDependence(ValueError):
    def __init__(self, prefix):
        super().__init__(f"vectors are dependent at position {prefix}")
        self.prefix = prefix


def mono(exps):
    """Monomial from {set id: exponent}."""
    return tuple(sorted((k, e) for k, e in exps.items() if e))


def var(X, coeff=1):
    """The polynomial coeff * A_X; X may be a set id or a sorted tuple."""
    k = X if isinstance(X, int) else SET_INDEX[tuple(X)]
    return {((k, 1),): Fraction(coeff)}


def const(c):
    c = Fraction(c)
    return {ONE: c} if c else {}


def clean(p):
    return {m: c for m, c in p.items() if c}


def add(p, q, b=1):
    out = dict(p)
    for m, c in q.items():
        x = out.get(m, 0) + b * c
        if x:
            out[m] = x
        else:
            out.pop(m, None)
    return out


def scale(p, c):
    c = Fraction(c)
    if not c:
        return {}
    return {m: c * x for m, x in p.items()}


def mono_mul(m1, m2):
    d = dict(m1)
    for k, e in m2:
        d[k] = d.get(k, 0) + e
    return tuple(sorted(d.items()))


def mul(p, q):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = mono_mul(m1, m2)
            out[m] = out.get(m, 0) + c1 * c2
    return clean(out)


def power(p, n):
    out = const(1)
    for _ in range(n):
        out = mul(out, p)
    return out


@lru_cache(maxsize=None)
def _fact(n):
    return factorial(n)


def mono_factorial(m):
    r = 1
    for _, e in m:
        r *= _fact(e)
    return r


def falling(n, k):
    r = 1
    for i in range(k):
        r *= n - i
    return r


def apply(op, f):
    """op(d/dA) applied to f."""
    out = {}
    for mo, co in op.items():
        need = dict(mo)
        for mf, cf in f.items():
            have = dict(mf)
            w = 1
            for k, e in need.items():
                h = have.get(k, 0)
                if h < e:
                    w = 0
                    break
                w *= falling(h, e)
                have[k] = h - e
            if w:
                m = tuple(sorted((k, e) for k, e in have.items() if e))
                out[m] = out.get(m, 0) + co * cf * w
    return clean(out)


def diff(f, X):
    k = X if isinstance(X, int) else SET_INDEX[tuple(X)]
    return apply({((k, 1),): Fraction(1)}, f)


def pairing(f, g):
    """f(d/dA) g(A) at A = 0, i.e. sum f_m g_m m!."""
    if len(f) > len(g):
        f, g = g, f
    s = Fraction(0)
    for m, c in f.items():
        d = g.get(m)
        if d:
            s += c * d * mono_factorial(m)
    return s


def gram(vectors):
    n = len(vectors)
    G = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            G[i][j] = G[j][i] = pairing(vectors[i], vectors[j])
    return G


def gram_schmidt(vectors):
    """Orthogonalize in the given order, without normalization."""
    out = []
    norms = []
    for n, v in enumerate(vectors):
        w = dict(v)
        for u, nu in zip(out, norms):
            c = pairing(v, u)
            if c:
                w = add(w, u, -c / nu)
        nw = pairing(w, w)
        if nw == 0:
            raise LinearDependence(n)
        out.append(w)
        norms.append(nw)
    return out


class Span:
    """Echelon form of a list of polynomials, for coordinates and membership."""

    def __init__(self, basis=()):
        self.ech = la.SparseEchelon()
        self.size = 0
        for b in basis:
            self.append(b)

    def append(self, p):
        ok = self.ech.add(p)
        self.size += 1
        return ok

    def contains(self, p):
        r, _ = self.ech.reduce(p)
        return not r

    def coords(self, p):
        r, combo = self.ech.reduce(p, {})
        if r:
            raise NotInSpan(r)
        return [-combo.get(k, Fraction(0)) for k in range(self.size)]

    def __len__(self):
        return len(self.ech)


def express_in_basis(f, basis):
    return Span(basis).coords(f)


def variables(p):
    return sorted({k for m in p for k, _ in m})


def degree_profile(m):
    """Degree of a monomial in each grade |X|."""
    out = [0] * 8
    for k, e in m:
        out[len(SETS[k])] += e
    return tuple(out)


def fmt_monomial(m):
    if not m:
        return "1"
    parts = []
    for k, e in m:
        s = "A" + fmt_set(SETS[k])
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


def fmt_q(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def serialize(p):
    """Canonical line form: one term per line, 'coeff exps' sorted by monomial."""
    lines = []
    for m in sorted(p):
        exps = " ".join(f"{fmt_set(SETS[k])}:{e}" for k, e in m)
        lines.append(f"{fmt_q(p[m])} {{{exps}}}")
    return lines

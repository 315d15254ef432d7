"""Small exact linear algebra over Fraction, dense and sparse-row flavours."""
from fractions import Fraction


def rref(rows, ncols):
    """Reduced row echelon form.  Returns (rows, pivot columns)."""
    rows = [[Fraction(x) for x in r] for r in rows]
    piv = []
    r = 0
    for c in range(ncols):
        p = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c] != 0:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        piv.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], piv


def rank(rows, ncols):
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols):
    R, piv = rref(rows, ncols)
    pivset = set(piv)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        out.append(v)
    return out


def solve(A, b):
    """Solve A x = b for square nonsingular A.  Raises on singular A."""
    n = len(A)
    M = [list(map(Fraction, A[i])) + [Fraction(b[i])] for i in range(n)]
    R, piv = rref(M, n + 1)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [R[i][n] for i in range(n)]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A]


def matvec(A, v):
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in A]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(r) for r in zip(*A)]


def det(A):
    A = [list(map(Fraction, r)) for r in A]
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return d


class SparseEchelon:
    """Incremental echelon basis over Q for sparse rows (dict key -> Fraction).

    Keys must be totally ordered.  Used for span membership and coordinates.
    Each stored row remembers its combination of the inserted vectors.
    """

    def __init__(self):
        self.rows = {}   # pivot key -> (row, combo)
        self.count = 0

    def reduce(self, v, combo=None):
        v = {k: Fraction(c) for k, c in v.items() if c}
        combo = dict(combo or {})
        while v:
            hit = None
            for k in sorted(v):
                if k in self.rows:
                    hit = k
                    break
            if hit is None:
                break
            row, rc = self.rows[hit]
            f = v[hit] / row[hit]
            for k, c in row.items():
                x = v.get(k, 0) - f * c
                if x:
                    v[k] = x
                else:
                    v.pop(k, None)
            for k, c in rc.items():
                x = combo.get(k, 0) - f * c
                if x:
                    combo[k] = x
                else:
                    combo.pop(k, None)
        return v, combo

    def add(self, v):
        """Insert v; returns True if it was independent of earlier rows."""
        idx = self.count
        self.count += 1
        r, combo = self.reduce(v, {idx: Fraction(1)})
        if not r:
            return False
        # pivot at a key not yet used; pick the smallest free key
        p = min(k for k in r if k not in self.rows)
        self.rows[p] = (r, combo)
        return True

    def coords(self, v):
        """Coefficients c with v = sum c_n inserted_n, or None if outside span."""
        r, combo = self.reduce(v, {})
        if r:
            return None
        return {k: -c for k, c in combo.items()}

    def __len__(self):
        return len(self.rows)


def qmatmul(A, B):
    """Exact product through one common denominator per factor and integer numpy."""
    import numpy as np
    from math import lcm
    if not A or not B:
        return matmul(A, B)
    da = lcm(*[Fraction(x).denominator for r in A for x in r])
    db = lcm(*[Fraction(x).denominator for r in B for x in r])
    IA = np.array([[int(Fraction(x) * da) for x in r] for r in A], dtype=object)
    IB = np.array([[int(Fraction(x) * db) for x in r] for r in B], dtype=object)
    C = IA.dot(IB)
    d = da * db
    return [[Fraction(int(c), d) for c in r] for r in C]

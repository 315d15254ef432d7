"""Index sets for the variables A_X.

The alphabet is {-4,-3,-2,-1,1,2,3,4}.  A variable is labelled by a proper
nonempty subset, stored sorted by integer value.  Ordered sequences carry
the sign of the sorting permutation (antisymmetry of minors).
"""
from itertools import combinations

INDICES = (-4, -3, -2, -1, 1, 2, 3, 4)
POS = {i: n for n, i in enumerate(INDICES)}

# the chain -4 < 2 < 3 < -3 < -2 < 4 < -1 < 1 used for the lattice generators
GT_ORDER = (-4, 2, 3, -3, -2, 4, -1, 1)
GT_POS = {i: n for n, i in enumerate(GT_ORDER)}


class InvalidIndex(ValueError):
    pass


def _check(i):
    if i not in POS:
        raise InvalidIndex(f"index {i!r} not in {INDICES}")


def perm_sign(seq, rank):
    """Parity of the permutation sorting seq by rank; 0 on repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    s = 1
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if rank[seq[a]] > rank[seq[b]]:
                s = -s
    return s


def canonicalize(seq):
    """Return (sorted tuple, sign).  Sign 0 means a repeated index."""
    seq = tuple(seq)
    for i in seq:
        _check(i)
    s = perm_sign(seq, POS)
    if s == 0:
        return tuple(sorted(set(seq))), 0
    return tuple(sorted(seq)), s


def all_sets():
    """The 254 proper nonempty subsets, by size then lexicographically."""
    out = []
    for k in range(1, 8):
        out.extend(combinations(INDICES, k))
    return out


SETS = all_sets()
SET_INDEX = {X: n for n, X in enumerate(SETS)}
NSETS = len(SETS)


def set_id(X):
    return SET_INDEX[tuple(sorted(X))]


def first_rows(k):
    """The set {-4, ..., } made of the first k indices."""
    return INDICES[:k]


def complement_negate(X):
    neg = {-x for x in X}
    return tuple(i for i in INDICES if i not in neg)


def jacobi_sign_formula(X):
    """(-1)^(i_1+...+i_k) * (-1)^((-8+k-1)k/2), evaluated literally."""
    k = len(X)
    e = sum(X) + ((-8 + k - 1) * k) // 2
    return -1 if e % 2 else 1


def jacobi_sign(X):
    """Sign s with a_X = s * a_{complement_negate(X)} on the group.

    The literal formula counts positions as if an index 0 sat between -1
    and 1; every positive index therefore needs one extra flip.  Checked
    against exact group samples in the test suite.
    """
    npos = sum(1 for x in X if x > 0)
    return jacobi_sign_formula(X) * (-1 if npos % 2 else 1)


def gt_precedes(i, j):
    _check(i)
    _check(j)
    return GT_POS[i] < GT_POS[j]


def gt_sorted(X):
    return tuple(sorted(X, key=GT_POS.__getitem__))


def frame_sign(X):
    """Sign relating A_X written in GT order to A_X written in integer order."""
    return perm_sign(gt_sorted(X), POS)


def fmt_set(X):
    return "[" + ",".join(str(x) for x in X) + "]"

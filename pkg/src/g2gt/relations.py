"""Relations among the flag minors a_X of G2 and the matching differential operators.

Relations are polynomials in the variables A_X (X in increasing order).
Operators for the Gamma-series system and the A-GKZ system are built in
the GT frame and converted.
"""
import random
from collections import namedtuple
from fractions import Fraction
from itertools import combinations
from math import lcm

from .indexsets import (INDICES, POS, SETS, SET_INDEX, canonicalize,
                        complement_negate, jacobi_sign, frame_sign, fmt_set)
from . import algebra as alg
from . import lattice as L
from . import linalg as la
from . import poly as P

Relation = namedtuple("Relation", "kind poly const label")


class ConfigurationError(RuntimeError):
    pass


def _term(seqs, coeff):
    """coeff * prod A_seq with antisymmetry resolved; None if a sequence repeats."""
    exps = {}
    for seq in seqs:
        key, s = canonicalize(tuple(seq))
        if not s:
            return None
        coeff *= s
        k = SET_INDEX[key]
        exps[k] = exps.get(k, 0) + 1
    return P.mono(exps), coeff


def _normalize(p):
    """Fix the overall sign so the first term is positive; for deduplication."""
    if not p:
        return p
    m0 = min(p)
    return P.scale(p, 1 if p[m0] > 0 else -1)


# ---------------------------------------------------------------- Pluecker

def exchange_relation(I, J):
    """a_I a_J - sum_s a_{j_s, I[1:]} a_{J with j_s -> i_1}."""
    p = {}
    terms = [_term([I, J], 1)]
    for s in range(len(J)):
        I2 = (J[s],) + tuple(I[1:])
        J2 = tuple(J[:s]) + (I[0],) + tuple(J[s + 1:])
        terms.append(_term([I2, J2], -1))
    for t in terms:
        if t:
            p = P.add(p, {t[0]: Fraction(t[1])})
    return p


def pluecker_relations(p, q):
    """Exchange relations with |I| = p <= |J| = q, deduplicated up to sign."""
    if not (1 <= p <= 7 and 1 <= q <= 7):
        raise ValueError("sizes must lie in 1..7")
    if p > q:
        return []
    seen = {}
    for I in combinations(INDICES, p):
        for lead in I:
            Ir = (lead,) + tuple(x for x in I if x != lead)
            for J in combinations(INDICES, q):
                rel = exchange_relation(Ir, J)
                if not rel:
                    continue
                key = tuple(sorted(_normalize(rel).items()))
                if key not in seen:
                    seen[key] = Relation("pluecker", rel, Fraction(0),
                                         f"pluecker {fmt_set(Ir)} {fmt_set(J)}")
    return list(seen.values())


def all_pluecker():
    out = []
    for p in range(1, 8):
        for q in range(p, 8):
            out.extend(pluecker_relations(p, q))
    return out


# ---------------------------------------------------------------- Jacobi

def jacobi_relations():
    """A_X - s A_Y per pair; a self-paired X with s = -1 gives A_X = 0."""
    out = []
    for n, X in enumerate(SETS):
        Y = complement_negate(X)
        m = SET_INDEX[Y]
        s = jacobi_sign(X)
        if m < n:
            continue
        if m == n:
            if s < 0:
                out.append(Relation("jacobi", P.var(n), Fraction(0), f"jacobi {fmt_set(X)}"))
            continue
        rel = P.add(P.var(n), P.var(m), -s)
        out.append(Relation("jacobi", rel, Fraction(0), f"jacobi {fmt_set(X)}"))
    return out


# ---------------------------------------------------------------- G2-specific

def omega_relation(T):
    """sum_X w_X A_{-X} with -X written as -x1, ..., -xk."""
    p = {}
    for X, c in T.items():
        t = _term([tuple(-x for x in X)], Fraction(c))
        if t:
            p = P.add(p, {t[0]: t[1]})
    return p


def unit_relation(model):
    p = {}
    for i, c in L.unit_coords(model).items():
        p = P.add(p, P.var((i,), c))
    return p


def specific_relations(model=None, omegas=None):
    """Unit relation plus one contraction per nonzero invariant tensor; all homogeneous."""
    if model is None:
        model, _ = alg.default_algebra()
    if omegas is None:
        omegas = L.default_omegas()
    nonzero = [k for k in range(3, 8) if omegas.get(k)]
    if not nonzero:
        raise ConfigurationError("every invariant tensor vanishes")
    out = [Relation("unit", unit_relation(model), Fraction(0), "unit")]
    for k in nonzero:
        out.append(Relation(f"specific_{k}", omega_relation(omegas[k]), Fraction(0), f"omega {k}"))
    return out


def all_relations(model=None, omegas=None):
    return all_pluecker() + jacobi_relations() + specific_relations(model, omegas)


# ---------------------------------------------------------------- evaluation

def minors_of(M):
    """{set id: det of the first |X| rows on the columns X}."""
    out = {}
    for k, X in enumerate(SETS):
        rows = [[Fraction(M[r][POS[c]]) for c in X] for r in range(len(X))]
        out[k] = la.det(rows)
    return out


def minors_by_set(M):
    return {SETS[k]: v for k, v in minors_of(M).items()}


def substitute(f, minors, const=0):
    if minors and isinstance(next(iter(minors)), tuple):
        minors = {SET_INDEX[X]: v for X, v in minors.items()}
    total = Fraction(const)
    for m, c in f.items():
        t = c
        for k, e in m:
            t *= minors[k] ** e
            if not t:
                break
        total += t
    return total


def scaled_minors(minors):
    """Integer minors D^|X| a_X; a homogeneous relation of fixed total set size
    stays zero or nonzero under this rescaling."""
    D = lcm(*[Fraction(v).denominator for v in minors.values()])
    return {k: int(v * D ** len(SETS[k])) for k, v in minors.items()}


def _eval_int(f, mins):
    total = 0
    for m, c in f.items():
        t = c
        for k, e in m:
            t *= mins[k] ** e
        total += t
    return total


def g2_samples(n, seed, steps=6):
    """n exact group elements, products of exponentials of root elements."""
    _, g = alg.default_algebra()
    roots = [(r, M) for r, M in g.positive_roots() + g.negative_roots()]
    rng = random.Random(seed)
    return [alg.sample_group_element(alg.random_steps(roots, rng, steps)) for _ in range(n)]


def o8_control():
    """Ordered product of exp(F_ij) over the o8 root elements outside g2.

    A single root element may lie in a Borel subgroup invisible to the flag
    minors; the product is generic enough to leave G2.
    """
    _, g = alg.default_algebra()
    el = la.identity(8)
    used = []
    for i in INDICES:
        for j in INDICES:
            if i == j or i == -j or (-j, -i) in used:
                continue
            M = alg.F(i, j)
            if not g.contains(M):
                el = la.matmul(el, alg.exp_nilpotent(M, 1))
                used.append((i, j))
    if not used:
        raise ConfigurationError("no o8 root element outside g2")
    return el, tuple(used)


def certify(samples=20, seed=7, model=None, omegas=None, relations=None):
    """Evaluate every relation on exact samples.

    Returns {kind: (number of relations, failures)} plus the negative control
    outcome as (control indices, number of specific relations violated).
    """
    rels = relations if relations is not None else all_relations(model, omegas)
    els = g2_samples(samples, seed)
    mins = [minors_of(g) for g in els]
    imins = [scaled_minors(m) for m in mins]
    table = {}
    for rel in rels:
        ent = table.setdefault(_kind_group(rel.kind), [0, []])
        ent[0] += 1
        for e, (fm, im) in enumerate(zip(mins, imins)):
            if rel.kind == "pluecker":
                bad = _eval_int(rel.poly, im) != 0
            else:
                bad = substitute(rel.poly, fm, rel.const) != 0
            if bad:
                ent[1].append((rel.label, e))
                break
    ctrl, idx = o8_control()
    cm = minors_of(ctrl)
    violated = sum(1 for r in rels if r.kind.startswith("specific") and substitute(r.poly, cm, r.const))
    return {k: (v[0], v[1]) for k, v in table.items()}, (idx, violated)


def _kind_group(kind):
    return "specific" if kind.startswith("specific") or kind == "unit" else kind


# ---------------------------------------------------------------- operators

def _gt_op(pairs):
    """Operator from [(sets in GT frame, coeff)] converted to increasing order."""
    op = {}
    for seqs, c in pairs:
        exps = {}
        s = c
        for Z in seqs:
            k = SET_INDEX[tuple(sorted(Z))]
            exps[k] = exps.get(k, 0) + 1
            s *= frame_sign(tuple(sorted(Z)))
        op = P.add(op, {P.mono(exps): Fraction(s)})
    return op


def pluecker_operators(three_term=True):
    """One operator per v-generator tag; two terms for the Gamma-series system."""
    out = []
    for b in L.v_generators():
        i, j, y, X = b.tag
        pairs = [(((i,) + X, (j, y) + X), 1), (((j,) + X, (i, y) + X), -1)]
        if three_term:
            pairs.append((((y,) + X, (i, j) + X), 1))
        out.append((b.tag, _gt_op(pairs)))
    return out


def jacobi_operators():
    return [(r.label, r.poly) for r in jacobi_relations()]


def specific_operators(model=None, omegas=None):
    return [(r.label, r.poly) for r in specific_relations(model, omegas)]


def system_operators(which, model=None, omegas=None):
    """which = 'gkz' for the Gamma-series system, 'agkz' for the A-GKZ system."""
    ops = [("pluecker", t, o) for t, o in pluecker_operators(which == "agkz")]
    ops += [("jacobi", t, o) for t, o in jacobi_operators()]
    ops += [("specific", t, o) for t, o in specific_operators(model, omegas)]
    return ops


def residuals(f, ops):
    """Labels of operators that do not annihilate f."""
    deg = {len(SETS[k]) for m in f for k, _ in m}
    out = []
    for kind, tag, op in ops:
        if not any(len(SETS[k]) in deg for m in op for k, _ in m):
            continue
        if P.apply(op, f):
            out.append((kind, tag))
    return out


def operator_correspondence(ops=None):
    """Every three-term operator must equal, up to sign, an exchange relation."""
    ops = ops if ops is not None else pluecker_operators(True)
    rels = {}
    for p in range(1, 7):
        for r in pluecker_relations(p, p + 1):
            rels[tuple(sorted(_normalize(r.poly).items()))] = r
    missing = [t for t, o in ops if tuple(sorted(_normalize(o).items())) not in rels]
    return missing

"""Gamma-series and A-GKZ series polynomials for the gl8 and g2 lattices.

Every series is summed in the GT frame and converted to the variables A_X
with X in increasing order at the end.  Literal g2 sums are infinite because
the lattice contains nonnegative vectors; they are truncated to a grade
sector, and the A-GKZ outer sum raises NonTermination.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .indexsets import SETS, frame_sign
from . import lattice as L
from . import poly as P

log = logging.getLogger(__name__)

FLAVORS = ("gamma_gl8", "gamma_g2", "j_g2", "agkz_gl8", "agkz_g2")


class NonTermination(RuntimeError):
    def __init__(self, msg, s=None):
        super().__init__(msg)
        self.s = s


def default_sector(gamma, lat):
    """Grade degrees of gamma over the conserved blocks of the gl8 or o8 lattice."""
    d = L.grade_degrees(gamma)
    blocks = [(g,) for g in range(1, 8)] if lat.flavor == "gl8" else list(L.GRADE_PAIRS)
    return L.grade_sector({b: sum(d[g] for g in b) for b in blocks})


def _sector_ok(sector):
    return all(deg >= 0 for _, deg in sector)


def to_canonical(terms):
    """GT-frame coefficients {monomial: c} to the increasing-order variables."""
    out = {}
    for m, c in terms.items():
        s = 1
        for k, e in m:
            if e % 2 and frame_sign(SETS[k]) < 0:
                s = -s
        out[m] = s * c
    return P.clean(out)


def from_canonical(p):
    return to_canonical(p)


def _mono(x):
    return tuple(sorted(x.items()))


def _support(gamma, lat, sector):
    if not _sector_ok(sector):
        return []
    return L.enumerate_support(gamma, lat, sector)


def gamma_terms(gamma, lat, sector=None):
    """[(x, t)] over nonnegative class members in the sector, t = coords of x - gamma."""
    sector = sector if sector is not None else default_sector(gamma, lat)
    out = []
    for x in _support(gamma, lat, sector):
        out.append((x, lat.coords(L.vadd(x, gamma, -1))))
    return out


def _u_sign(lat, t):
    s = 1
    for n, c in t.items():
        b = lat.basis[n]
        if b.kind == "u" and b.sign < 0 and c % 2:
            s = -s
    return s


def t3_count(gamma, lat, sector=None):
    """Number of surviving terms that use a d-generator shift."""
    return sum(1 for _, t in gamma_terms(gamma, lat, sector)
               if any(lat.basis[n].kind == "d" for n in t))


def gamma_series(gamma, lat, sector=None, frame="canonical"):
    terms = {}
    for x, t in gamma_terms(gamma, lat, sector):
        terms[_mono(x)] = Fraction(_u_sign(lat, t), P.mono_factorial(_mono(x)))
    terms = P.clean(terms)
    n3 = 0
    if lat.k[2]:
        n3 = sum(1 for _, t in gamma_terms(gamma, lat, sector)
                 if any(lat.basis[n].kind == "d" for n in t))
        log.info("gamma series: %d terms, %d with d-shifts", len(terms), n3)
    return to_canonical(terms) if frame == "canonical" else terms


def _pochhammer_weight(t, s):
    """prod (t_n + 1) ... (t_n + s_n) / s_n!"""
    w = Fraction(1)
    for n, k in s.items():
        tn = t.get(n, 0)
        num = 1
        for q in range(1, k + 1):
            num *= tn + q
        if not num:
            return Fraction(0)
        w *= Fraction(num, factorial(k))
    return w


def j_series(gamma, s, lat, sector=None, frame="canonical"):
    s = {n: k for n, k in s.items() if k}
    if any(k < 0 for k in s.values()):
        raise ValueError("s must be nonnegative")
    terms = {}
    for x, t in gamma_terms(gamma, lat, sector):
        w = _pochhammer_weight(t, s)
        if w:
            m = _mono(x)
            terms[m] = terms.get(m, 0) + w * _u_sign(lat, t) / P.mono_factorial(m)
    terms = P.clean(terms)
    return to_canonical(terms) if frame == "canonical" else terms


# ---------------------------------------------------------------- gl8 A-GKZ series

class _TailIndex:
    """Sector points grouped by tail vector, r-vectors grouped likewise."""

    def __init__(self, lat, sector):
        self.lat = lat
        self.bypat = {}
        for p in L.sector_points(sector):
            self.bypat.setdefault(L.tail_vector(p), []).append(p)
        groups = {}
        for n, r in enumerate(lat.r_basis):
            groups.setdefault(L.tail_vector(r), []).append(n)
        self.keys = sorted(groups)
        self.groups = [groups[k] for k in self.keys]
        self.pr = [lat.phi(r) for r in lat.r_basis]
        self._reach = {}

    def reachable(self, rem):
        if rem in self._reach:
            return self._reach[rem]
        ok = rem in self.bypat
        if not ok:
            for t in self.keys:
                if all(a <= b for a, b in zip(t, rem)):
                    if self.reachable(tuple(b - a for a, b in zip(t, rem))):
                        ok = True
                        break
        self._reach[rem] = ok
        return ok


@lru_cache(maxsize=None)
def _tail_index(flavor, sector):
    return _TailIndex(L.build_lattice(flavor), sector)


def _distributions(members, k):
    """All multisets of size k from members, as {member: count}."""
    if k == 0:
        yield {}
        return
    if len(members) == 1:
        yield {members[0]: k}
        return
    first, rest = members[0], members[1:]
    for c in range(k, -1, -1):
        for d in _distributions(rest, k - c):
            out = dict(d)
            if c:
                out[first] = c
            yield out


def _group_counts(idx, rem, start):
    """Yield (group multiplicities, remainder) with the remainder a sector pattern."""
    if rem in idx.bypat:
        yield {}, rem
    for g in range(start, len(idx.keys)):
        t = idx.keys[g]
        if all(a <= b for a, b in zip(t, rem)):
            nrem = tuple(b - a for a, b in zip(t, rem))
            if idx.reachable(nrem):
                for m, r in _group_counts(idx, nrem, g):
                    m = dict(m)
                    m[g] = m.get(g, 0) + 1
                    yield m, r


def _s_vectors(idx, m):
    parts = [{}]
    for g, k in sorted(m.items()):
        new = []
        for d in _distributions(idx.groups[g], k):
            for p in parts:
                q = dict(p)
                q.update(d)
                new.append(q)
        parts = new
    return parts


def agkz_terms(gamma, lat, sector=None):
    """GT-frame coefficients of F_gamma = sum_s (-1)^s / s! J^s_{gamma - s r}."""
    if lat.flavor != "gl8":
        bad = lat.r_in_lattice()
        if bad:
            n = bad[0]
            raise NonTermination(
                f"r_{n} = r{lat.basis[n].tag} lies in the {lat.flavor} lattice; "
                f"gamma - k r_{n} stays in one class for every k", s={n: 1})
        raise NonTermination(f"no termination certificate for the {lat.flavor} lattice")
    sector = sector if sector is not None else default_sector(gamma, lat)
    if not _sector_ok(sector) or not L.in_sector(gamma, sector):
        return {}
    idx = _tail_index(lat.flavor, sector)
    pg = lat.phi(gamma)
    terms = {}
    nterms = 0
    for m, rem in _group_counts(idx, L.tail_vector(gamma), 0):
        pts = idx.bypat[rem]
        for s in _s_vectors(idx, m):
            nterms += 1
            sign = -1 if sum(s.values()) % 2 else 1
            sfact = 1
            for k in s.values():
                sfact *= factorial(k)
            for x in pts:
                px = lat.phi(x)
                t = {}
                for n in s:
                    v = px.get(n, 0) - pg.get(n, 0)
                    for q, c in s.items():
                        v += c * idx.pr[q].get(n, 0)
                    t[n] = v
                w = _pochhammer_weight(t, s)
                if w:
                    mo = _mono(x)
                    terms[mo] = terms.get(mo, 0) + sign * w / sfact / P.mono_factorial(mo)
    log.debug("agkz: %d (gamma, s) pairs", nterms)
    return P.clean(terms)


def agkz_series(gamma, lat, sector=None, frame="canonical"):
    terms = agkz_terms(gamma, lat, sector)
    return to_canonical(terms) if frame == "canonical" else terms


def build(gamma, flavor, s=None, sector=None):
    """Dispatch on the flavor name used by the command line."""
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}")
    lat = L.build_lattice("gl8" if flavor.endswith("gl8") else "g2")
    if flavor.startswith("gamma"):
        return gamma_series(gamma, lat, sector)
    if flavor == "j_g2":
        return j_series(gamma, s or {}, lat, sector)
    return agkz_series(gamma, lat, sector)


def decompose_gl8(gamma, sector=None):
    """Signed gl8 Gamma-series whose sum is the g2 Gamma-series of gamma.

    Returns [(sign, representative)] over gl8 classes inside the g2 class.
    """
    g2 = L.build_lattice("g2")
    gl8 = L.build_lattice("gl8")
    sector = sector if sector is not None else default_sector(gamma, g2)
    seen = {}
    for x in _support(gamma, g2, sector):
        key = gl8.residue(x)
        if key not in seen:
            seen[key] = (_u_sign(g2, g2.coords(L.vadd(x, gamma, -1))), x)
    return list(seen.values())

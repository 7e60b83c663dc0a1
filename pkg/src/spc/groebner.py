"""Groebner bases via Buchberger's algorithm with Gebauer-Moeller pruning.

The working representation of a polynomial here is a list of triples
(key, exps, coeff) in strictly descending key order, where key is the ring
order's packed integer (additive under monomial multiplication).  Inner loops
shift a reducer onto a term with one integer addition per term plus one
exponent-tuple addition, and compare monomials as ints.

Conventions fixed for determinism:
  * reduction tries reducers in list order and always rewrites the leftmost
    (largest) reducible term first;
  * pair selection is by minimal lcm degree, then lcm order key, then pair
    indices (normal strategy);
  * over GF(p) basis elements are kept monic; over QQ intermediate elements
    are integer, content-free, with positive leading coefficient, and the
    final basis is made monic during interreduction.

The reduced Groebner basis of an ideal is unique for a given ring and order,
so results do not depend on these internal choices; they only make every run
bit-identical.
"""

from __future__ import annotations

import os
from heapq import heappop, heappush
from math import gcd

from .errors import InternalCheckFailed, RingMismatch, ZeroPolynomial
from .polyring import Polynomial, PolyRing

def _self_check_enabled() -> bool:
    """Post-hoc S-polynomial check on every computed basis (slow; test builds
    set SPC_SELF_CHECK=1)."""
    return bool(os.environ.get("SPC_SELF_CHECK"))


class _Reducer:
    __slots__ = ("terms", "lmk", "lme", "lc")

    def __init__(self, terms, lc):
        self.terms = terms
        self.lmk = terms[0][0]
        self.lme = terms[0][1]
        self.lc = lc


def _to_triples(f: Polynomial):
    key = f.ring.order.key
    return [(key(e), e, c) for e, c in f.terms]


def _from_triples(ring: PolyRing, triples) -> Polynomial:
    return Polynomial(ring, tuple((e, c) for _, e, c in triples))


def _normalize(terms, p):
    """Scale a working polynomial to reducer form; returns (terms, lc).

    GF(p): monic, lc 1.  QQ: integer coefficients, content 1, positive lead;
    lc is the leading coefficient left in place.
    """
    lc = terms[0][2]
    if p:
        if lc != 1:
            inv = pow(lc, -1, p)
            terms = [(k, e, c * inv % p) for k, e, c in terms]
        return terms, 1
    num = 0
    den = 1
    for _, _, c in terms:
        num = gcd(num, int(c.numerator))
        d = int(c.denominator)
        den = den * d // gcd(den, d)
    scale = den if num == 1 else type(lc)(den, num)
    if lc < 0:
        scale = -scale
    if scale != 1:
        terms = [(k, e, c * scale) for k, e, c in terms]
    return terms, terms[0][2]


def _find_reducer(e0, reducers, cache):
    """First reducer (list order) whose leading monomial divides e0.

    Cache values: i >= 0 is a hit at index i (stays correct because reducers
    are append-only); -(n+1) recorded a miss against the first n reducers.
    """
    v = cache.get(e0)
    if v is not None and v >= 0:
        return reducers[v]
    start = -v - 1 if v is not None else 0
    n = len(reducers)
    for i in range(start, n):
        lme = reducers[i].lme
        ok = True
        for a, b in zip(lme, e0):
            if a > b:
                ok = False
                break
        if ok:
            cache[e0] = i
            return reducers[i]
    cache[e0] = -n - 1
    return None


def _sub_scaled(f, i, g, dk, qe, c, p):
    """f[i:] - c * shift(g) where the heads cancel by construction."""
    out = []
    push = out.append
    add = int.__add__
    ii = i + 1
    jj = 1
    nf = len(f)
    ng = len(g)
    while ii < nf and jj < ng:
        tf = f[ii]
        tg = g[jj]
        kf = tf[0]
        kg = tg[0] + dk
        if kf > kg:
            push(tf)
            ii += 1
        elif kf < kg:
            nc = -c * tg[2] % p if p else -c * tg[2]
            push((kg, tuple(map(add, tg[1], qe)), nc))
            jj += 1
        else:
            nc = (tf[2] - c * tg[2]) % p if p else tf[2] - c * tg[2]
            if nc:
                push((kf, tf[1], nc))
            ii += 1
            jj += 1
    while ii < nf:
        push(f[ii])
        ii += 1
    while jj < ng:
        tg = g[jj]
        nc = -c * tg[2] % p if p else -c * tg[2]
        push((tg[0] + dk, tuple(map(add, tg[1], qe)), nc))
        jj += 1
    return out


def _combine_shifted(a, dka, ea, ca, b, dkb, eb, cb, p):
    """ca * shift_a(a[1:]) + cb * shift_b(b[1:]): S-pair tails, heads dropped."""
    out = []
    push = out.append
    add = int.__add__
    ii = jj = 1
    na, nb = len(a), len(b)
    while ii < na and jj < nb:
        ta = a[ii]
        tb = b[jj]
        ka = ta[0] + dka
        kb = tb[0] + dkb
        if ka > kb:
            nc = ca * ta[2] % p if p else ca * ta[2]
            push((ka, tuple(map(add, ta[1], ea)), nc))
            ii += 1
        elif ka < kb:
            nc = cb * tb[2] % p if p else cb * tb[2]
            push((kb, tuple(map(add, tb[1], eb)), nc))
            jj += 1
        else:
            nc = (ca * ta[2] + cb * tb[2]) % p if p else ca * ta[2] + cb * tb[2]
            if nc:
                push((ka, tuple(map(add, ta[1], ea)), nc))
            ii += 1
            jj += 1
    while ii < na:
        ta = a[ii]
        nc = ca * ta[2] % p if p else ca * ta[2]
        push((ta[0] + dka, tuple(map(add, ta[1], ea)), nc))
        ii += 1
    while jj < nb:
        tb = b[jj]
        nc = cb * tb[2] % p if p else cb * tb[2]
        push((tb[0] + dkb, tuple(map(add, tb[1], eb)), nc))
        jj += 1
    return out


def _normal_form(work, reducers, p, cache):
    """Full normal form of a working polynomial against a reducer list."""
    out = []
    i = 0
    while i < len(work):
        k0, e0, c0 = work[i]
        red = _find_reducer(e0, reducers, cache)
        if red is None:
            out.append(work[i])
            i += 1
            continue
        dk = k0 - red.lmk
        qe = tuple(map(int.__sub__, e0, red.lme))
        c = c0 if (p and red.lc == 1) else (c0 * pow(red.lc, -1, p) % p if p else c0 / red.lc)
        work = _sub_scaled(work, i, red.terms, dk, qe, c, p)
        i = 0
    return out


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """(lcm/lt(f)) * f - (lcm/lt(g)) * g for the leading terms' lcm."""
    if f.ring != g.ring:
        raise RingMismatch("S-polynomial operands in different rings")
    if not f or not g:
        raise ZeroPolynomial("S-polynomial of the zero polynomial")
    ring = f.ring
    field = ring.field
    lmf, lcf = f.terms[0]
    lmg, lcg = g.terms[0]
    lcm = ring.monomial_lcm(lmf, lmg)
    uf = ring.monomial_quotient(lcm, lmf)
    ug = ring.monomial_quotient(lcm, lmg)
    return f.mul_term(uf, field.inv(lcf)) - g.mul_term(ug, field.inv(lcg))


def reduce(f: Polynomial, reducers) -> Polynomial:
    """Full normal form of f against a list of nonzero polynomials.

    Deterministic: reducers are tried in list order, the leftmost reducible
    term is rewritten first.  No term of the result is divisible by any
    reducer's leading monomial.
    """
    reducers = list(reducers)
    if not reducers:
        raise ZeroPolynomial("reduction needs at least one reducer")
    ring = f.ring
    for g in reducers:
        if not isinstance(g, Polynomial) or g.ring != ring:
            raise RingMismatch("reducers must share the ring of f")
        if not g:
            raise ZeroPolynomial("zero polynomial among reducers")
    if not f:
        return f
    p = ring.field.modulus
    reds = []
    for g in reducers:
        terms, lc = _normalize(_to_triples(g), p)
        reds.append(_Reducer(terms, lc))
    nf = _normal_form(_to_triples(f), reds, p, {})
    return _from_triples(ring, nf)


class GroebnerBasis:
    """Reduced Groebner basis: monic elements, no element's term divisible by
    another's leading monomial, sorted by leading monomial descending."""

    __slots__ = ("ring", "elements", "_reducers")

    def __init__(self, ring: PolyRing, elements: tuple):
        self.ring = ring
        self.elements = elements
        self._reducers = None

    @property
    def order(self):
        return self.ring.order

    def _prepared(self):
        if self._reducers is None:
            p = self.ring.field.modulus
            reds = []
            for g in self.elements:
                terms = _to_triples(g)
                reds.append(_Reducer(terms, terms[0][2]))
            self._reducers = reds
        return self._reducers

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatch("polynomial not in the basis ring")
        if not f or not self.elements:
            return f
        p = self.ring.field.modulus
        nf = _normal_form(_to_triples(f), self._prepared(), p, {})
        return _from_triples(self.ring, nf)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def is_unit_ideal(self) -> bool:
        return len(self.elements) == 1 and sum(self.elements[0].terms[0][0]) == 0

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.ring == other.ring and self.elements == other.elements

    def __hash__(self):
        return hash((self.ring, self.elements))

    def __repr__(self):
        return f"GroebnerBasis({len(self.elements)} elements over {self.ring})"


def _update_pairs(pairs, heap, basis, t, lme_t, key):
    """Gebauer-Moeller UPDATE for a new basis element at index t.

    Old pairs hit by the chain criterion are dropped; new pairs (i, t) are
    kept only if no other candidate lcm divides theirs, and lcm classes
    containing a coprime pair are discarded entirely.
    """
    cand = {i: tuple(map(max, basis[i].lme, lme_t)) for i in range(t)}
    # chain criterion against existing pairs
    for ij in list(pairs):
        i, j = ij
        lcm_ij = pairs[ij][2]
        div = True
        for a, b in zip(lme_t, lcm_ij):
            if a > b:
                div = False
                break
        if div and cand[i] != lcm_ij and cand[j] != lcm_ij:
            del pairs[ij]
    # group new candidates by lcm; sweep classes smallest-key first so every
    # divisor is seen before its multiples, keep one representative per
    # minimal class, and drop a class outright when it contains a coprime pair
    groups: dict[tuple, list[int]] = {}
    for i, li in cand.items():
        groups.setdefault(li, []).append(i)
    minimal: list[tuple] = []
    for li in sorted(groups, key=key):
        if any(all(a <= b for a, b in zip(m, li)) for m in minimal):
            continue
        minimal.append(li)
        if any(li == tuple(map(int.__add__, basis[i].lme, lme_t)) for i in groups[li]):
            continue  # coprime leads somewhere in the class: S-pairs all reduce
        i = min(groups[li])
        deg = sum(li)
        klcm = key(li)
        pairs[(i, t)] = (deg, klcm, li)
        heappush(heap, (deg, klcm, t, i))


def buchberger(gens, ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by gens.

    Zero generators are discarded; an empty generator set yields the empty
    basis of the zero ideal.  The result is fully interreduced, monic, and
    sorted by leading monomial descending, hence unique for (ideal, order).
    """
    gens = list(gens)
    for g in gens:
        if ring is None:
            ring = g.ring
        elif g.ring != ring:
            raise RingMismatch("generators live in different rings")
    if ring is None:
        raise RingMismatch("cannot infer the ring of an empty generator list")
    gens = [g for g in gens if g]
    if not gens:
        return GroebnerBasis(ring, ())
    p = ring.field.modulus
    order = ring.order
    key = order.key

    basis: list[_Reducer | None] = []
    pairs: dict = {}
    heap: list = []
    cache: dict = {}

    def klcm_of(e):
        return key(e)

    for g in gens:
        terms, lc = _normalize(_to_triples(g), p)
        t = len(basis)
        basis.append(_Reducer(terms, lc))
        _update_pairs(pairs, heap, basis, t, terms[0][1], klcm_of)

    reducers_view = basis  # list order = insertion order

    while heap:
        deg, klcm, j, i = heappop(heap)
        meta = pairs.pop((i, j), None)
        if meta is None:
            continue  # pruned after being queued
        ra, rb = basis[i], basis[j]
        lme = meta[2]
        sub = int.__sub__
        ea = tuple(map(sub, lme, ra.lme))
        eb = tuple(map(sub, lme, rb.lme))
        dka = klcm - ra.lmk
        dkb = klcm - rb.lmk
        if p:
            ca, cb = 1, p - 1
        else:
            ca, cb = rb.lc, -ra.lc
        tail = _combine_shifted(ra.terms, dka, ea, ca, rb.terms, dkb, eb, cb, p)
        if not tail:
            continue
        nf = _normal_form(tail, reducers_view, p, cache)
        if not nf:
            continue
        terms, lc = _normalize(nf, p)
        t = len(basis)
        basis.append(_Reducer(terms, lc))
        _update_pairs(pairs, heap, basis, t, terms[0][1], klcm_of)

    elements = _finalize(ring, [r.terms for r in basis], p)
    gb = GroebnerBasis(ring, elements)
    if _self_check_enabled():
        verify_basis(gb, gens)
    return gb


def _finalize(ring: PolyRing, all_terms, p) -> tuple:
    """Minimalize by leading monomial, interreduce to a fixpoint, make monic,
    sort descending."""
    # minimalize: ascending by lm so kept leads are the smallest possible
    all_terms = sorted(all_terms, key=lambda t: t[0][0])
    kept = []
    kept_lms = []
    for terms in all_terms:
        lme = terms[0][1]
        if any(all(a <= b for a, b in zip(lm, lme)) for lm in kept_lms):
            continue
        kept.append(terms)
        kept_lms.append(lme)
    # interreduce until stable
    changed = True
    while changed:
        changed = False
        for i in range(len(kept)):
            others = [_Reducer(kept[j], kept[j][0][2]) for j in range(len(kept)) if j != i]
            if not others:
                continue
            nf = _normal_form(kept[i], others, p, {})
            if not nf:
                raise InternalCheckFailed("minimal basis element vanished in interreduction")
            nf, _ = _normalize(nf, p)
            if nf != kept[i]:
                kept[i] = nf
                changed = True
    # monic
    final = []
    for terms in kept:
        lc = terms[0][2]
        if p:
            if lc != 1:
                inv = pow(lc, -1, p)
                terms = [(k, e, c * inv % p) for k, e, c in terms]
        elif lc != 1:
            terms = [(k, e, c / lc) for k, e, c in terms]
        final.append(terms)
    final.sort(key=lambda t: t[0][0], reverse=True)
    return tuple(_from_triples(ring, t) for t in final)


def verify_basis(gb: GroebnerBasis, gens=None):
    """Post-hoc correctness check: every S-polynomial of basis elements
    reduces to zero, and every original generator lies in the basis.
    Raises InternalCheckFailed on violation."""
    els = gb.elements
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            s = s_polynomial(els[i], els[j])
            if s and not gb.contains(s):
                raise InternalCheckFailed(
                    f"S-polynomial of basis elements {i},{j} does not reduce to zero"
                )
    if gens:
        for g in gens:
            if g and not gb.contains(g):
                raise InternalCheckFailed("generator does not reduce to zero against its basis")

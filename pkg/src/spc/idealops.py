"""Ideal arithmetic: sums, products, powers, intersection, colon, saturation,
dimension, degree, and pushforward along verified substitution maps.

Intersections use the classic auxiliary-variable construction: I cap J is the
elimination ideal of t*I + (1-t)*J in an extended ring under a block order
whose leading block is {t}.  Colon reduces to intersection; saturation by a
general ideal iterates colon until the chain stabilizes.

Saturation by the irrelevant maximal ideal, the case everything downstream
cares about, decomposes as the intersection of the single-variable
saturations I : y_i^inf, and each of those is read off one Groebner basis:
in a grevlex order where y is the last variable, a homogeneous polynomial is
divisible by y exactly when its leading monomial is, so dividing every basis
element by its maximal power of y yields a basis of I : y^inf.  The general
iterated-colon route stays available and the two are cross-checked in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce as _fold
from itertools import combinations, combinations_with_replacement

from .errors import (
    ArityMismatch,
    DegreeMismatch,
    FieldMismatch,
    InternalCheckFailed,
    InvalidExponent,
    InvalidParameter,
    NotHomogeneous,
    NotRegularSequence,
    RingMismatch,
    UnitIdeal,
    UnverifiedMap,
)
from .groebner import GroebnerBasis, buchberger
from .polyring import Block, Grevlex, Polynomial, PolyRing


class Ideal:
    """Finitely generated ideal with a lazily computed, cached Groebner basis.

    The cache is written once after a deterministic computation, so sharing
    an Ideal between worker threads is safe: a duplicated computation yields
    the identical basis.
    """

    __slots__ = ("ring", "generators", "_gb")

    def __init__(self, ring: PolyRing, generators, gb: GroebnerBasis | None = None):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial) or g.ring != ring:
                raise RingMismatch(f"generator {g!r} does not live in {ring}")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb = gb

    def groebner_basis(self) -> GroebnerBasis:
        gb = self._gb
        if gb is None:
            gb = buchberger(self.generators, self.ring)
            self._gb = gb
        return gb

    def contains(self, f: Polynomial) -> bool:
        if f.ring != self.ring:
            raise RingMismatch("membership test across rings")
        return self.groebner_basis().contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        if other.ring != self.ring:
            raise RingMismatch("containment test across rings")
        gb = self.groebner_basis()
        return all(gb.contains(g) for g in other.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return bool(self.generators) and self.groebner_basis().is_unit_ideal()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators[:4])
        more = ", ..." if len(self.generators) > 4 else ""
        return f"Ideal({gens}{more})"


def ideal_member(f: Polynomial, I: Ideal) -> bool:
    return I.contains(f)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    """Exact equality via reduced Groebner bases (unique per ideal and order)."""
    if I.ring != J.ring:
        raise RingMismatch("comparing ideals in different rings")
    return I.groebner_basis().elements == J.groebner_basis().elements


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    if I.ring != J.ring:
        raise RingMismatch("sum of ideals in different rings")
    return Ideal(I.ring, I.generators + J.generators)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    if I.ring != J.ring:
        raise RingMismatch("product of ideals in different rings")
    return Ideal(I.ring, [f * g for f in I.generators for g in J.generators])


def ideal_power(I: Ideal, m: int) -> Ideal:
    """I^m generated by all m-fold products of generators."""
    if not isinstance(m, int) or m < 1:
        raise InvalidExponent(f"ideal power wants a positive integer, got {m!r}")
    if m == 1:
        return I
    gens = [_fold(lambda a, b: a * b, combo)
            for combo in combinations_with_replacement(I.generators, m)]
    return Ideal(I.ring, gens)


def irrelevant_ideal(ring: PolyRing) -> Ideal:
    return Ideal(ring, ring.gens())


# -- intersection / colon / saturation --


def _aux_name(ring: PolyRing) -> str:
    name = "t_"
    while name in ring.variables:
        name += "_"
    return name


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I cap J by elimination of an auxiliary variable."""
    if I.ring != J.ring:
        raise RingMismatch("intersect across rings")
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, ())
    ext = PolyRing(ring.field, (_aux_name(ring),) + ring.variables,
                   order=Block(ring.nvars + 1, 1))

    def lift(f: Polynomial, tdeg: int) -> Polynomial:
        # re-sorts: the induced block order need not match the source order
        return ext.from_terms([((tdeg,) + e, c) for e, c in f.terms])

    gens = [lift(f, 1) for f in I.generators]
    for g in J.generators:
        gens.append(lift(g, 0) - lift(g, 1))
    gb = buchberger(gens, ext)
    kept = [g for g in gb if g.terms[0][0][0] == 0]
    projected = tuple(ring.from_terms([(e[1:], c) for e, c in g.terms]) for g in kept)
    seeded = None
    if isinstance(ring.order, Grevlex):
        # the t-free tail of the reduced elimination basis is itself the
        # reduced basis of the elimination ideal under the induced order
        seeded = GroebnerBasis(ring, projected)
    return Ideal(ring, projected, gb=seeded)


def intersect_many(ideals) -> Ideal:
    ideals = list(ideals)
    if not ideals:
        raise InvalidParameter("intersection of an empty family")
    out = ideals[0]
    for J in ideals[1:]:
        out = intersect(out, J)
    return out


def _exact_divide(g: Polynomial, f: Polynomial) -> Polynomial:
    """g / f when f divides g exactly; used on generators of I cap (f)."""
    ring = g.ring
    field = ring.field
    lmf, lcf = f.terms[0]
    rem = g
    out = []
    while rem:
        lmr, lcr = rem.terms[0]
        if not ring.monomial_divides(lmf, lmr):
            raise InternalCheckFailed(f"expected {f} to divide {g}")
        qe = ring.monomial_quotient(lmr, lmf)
        qc = field.div(lcr, lcf)
        out.append((qe, qc))
        rem = rem - f.mul_term(qe, qc)
    return Polynomial(ring, tuple(out))


def colon(I: Ideal, J: Ideal) -> Ideal:
    """Ideal quotient I : J = {f : f*J <= I}."""
    if I.ring != J.ring:
        raise RingMismatch("colon across rings")
    if J.is_zero():
        raise InvalidParameter("colon by the zero ideal")
    parts = []
    for f in J.generators:
        K = intersect(I, Ideal(I.ring, [f]))
        parts.append(Ideal(I.ring, [_exact_divide(g, f) for g in K.generators]))
    return _fold(intersect, parts[1:], parts[0])


def _permuted_grevlex_basis(I: Ideal, last: int):
    """Generators of I re-expressed with variable `last` moved to the end,
    plus the grevlex basis there.  Returns (perm_ring, perm, basis)."""
    ring = I.ring
    perm = [i for i in range(ring.nvars) if i != last] + [last]
    names = tuple(ring.variables[i] for i in perm)
    pring = PolyRing(ring.field, names, order="grevlex")
    gens = [pring.from_terms([(tuple(e[i] for i in perm), c) for e, c in g.terms])
            for g in I.generators]
    return pring, perm, buchberger(gens, pring)


def saturate_variable(I: Ideal, index: int) -> Ideal:
    """I : y^inf for the variable at `index`, for homogeneous I.

    One grevlex basis with y last; every element is divided by its largest
    power of y.  Requires homogeneous generators (the divide-by-lead rule is
    a grevlex fact about homogeneous polynomials).
    """
    ring = I.ring
    if not 0 <= index < ring.nvars:
        raise InvalidParameter(f"no variable at index {index}")
    if not I.is_homogeneous():
        raise NotHomogeneous("variable saturation fast path needs homogeneous generators")
    if isinstance(ring.order, Grevlex) and index == ring.nvars - 1:
        perm, gb = list(range(ring.nvars)), I.groebner_basis()
    else:
        _, perm, gb = _permuted_grevlex_basis(I, index)
    inv = [0] * ring.nvars
    for pos, orig in enumerate(perm):
        inv[orig] = pos
    out = []
    for g in gb:
        a = min(e[-1] for e, _ in g.terms)
        terms = []
        for e, c in g.terms:
            e2 = e[:-1] + (e[-1] - a,)
            terms.append((tuple(e2[inv[i]] for i in range(ring.nvars)), c))
        out.append(ring.from_terms(terms))
    return Ideal(ring, out)


def _is_irrelevant(J: Ideal) -> bool:
    ring = J.ring
    want = {g.terms[0][0] for g in ring.gens()}
    got = set()
    for g in J.generators:
        if len(g.terms) != 1:
            return False
        e, _ = g.terms[0]
        if sum(e) != 1:
            return False
        got.add(e)
    return got == want


def saturate(I: Ideal, J: Ideal) -> Ideal:
    """I : J^inf.

    For J the irrelevant maximal ideal and homogeneous I this intersects the
    single-variable saturations (see module docstring); otherwise colon is
    iterated until two consecutive results agree.
    """
    if I.ring != J.ring:
        raise RingMismatch("saturate across rings")
    if I.is_zero():
        return I
    if _is_irrelevant(J) and I.is_homogeneous():
        pieces = [saturate_variable(I, i) for i in range(I.ring.nvars)]
        return intersect_many(pieces)
    K = I
    while True:
        K2 = colon(K, J)
        if ideal_equal(K2, K):
            return K
        K = K2


def saturate_irrelevant(I: Ideal) -> Ideal:
    return saturate(I, irrelevant_ideal(I.ring))


def is_saturated(I: Ideal) -> bool:
    return ideal_equal(I, saturate_irrelevant(I))


# -- dimension and degree --


def krull_dim(I: Ideal) -> int:
    """Krull dimension of R/I via independent variable sets modulo LT(I).

    A variable set T is independent when no leading monomial of the reduced
    basis has support inside T; the dimension is the largest |T|.
    """
    if not I.is_homogeneous():
        raise NotHomogeneous("krull_dim expects homogeneous generators")
    gb = I.groebner_basis()
    if gb.is_unit_ideal():
        raise UnitIdeal("krull_dim of the unit ideal")
    supports = [frozenset(i for i, e in enumerate(g.terms[0][0]) if e) for g in gb]
    n = I.ring.nvars
    for size in range(n, -1, -1):
        for T in combinations(range(n), size):
            Tset = set(T)
            if not any(s <= Tset for s in supports):
                return size
    raise InternalCheckFailed("independent set search fell through")


@dataclass(frozen=True)
class HilbertData:
    """Hilbert data of R/I: series sum_d dim (R/I)_d t^d = numerator(t) / (1-t)^dim
    with numerator(1) != 0; multiplicity is numerator(1)."""

    krull_dimension: int
    multiplicity: int
    numerator: tuple[int, ...]


def _minimalize_monomials(exps_list):
    exps_list = sorted(set(exps_list), key=lambda e: (sum(e), e))
    kept = []
    for e in exps_list:
        if not any(all(a <= b for a, b in zip(k, e)) for k in kept):
            kept.append(e)
    return kept


def _poly_mul_shift(coeffs, shift):
    return [0] * shift + coeffs


def _poly_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _hilbert_numerator(gens, memo) -> list[int]:
    """Numerator of the Hilbert series of R/(monomial ideal) over (1-t)^nvars.

    Recursion pivots on the most frequent variable v:
    N(M) = N(M + (v)) + t * N(M : v); bases are the empty ideal, a single
    generator, and pairwise-coprime generators.
    """
    if not gens:
        return [1]
    key = tuple(sorted(gens))
    got = memo.get(key)
    if got is not None:
        return got
    if len(gens) == 1:
        d = sum(gens[0])
        out = [1] + [0] * (d - 1) + [-1]
        memo[key] = out
        return out
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    coprime = True
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if supports[i] & supports[j]:
                coprime = False
                break
        if not coprime:
            break
    if coprime:
        out = [1]
        for g in gens:
            d = sum(g)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        memo[key] = out
        return out
    nv = len(gens[0])
    counts = [0] * nv
    for g in gens:
        for i, e in enumerate(g):
            if e:
                counts[i] += 1
    v = max(range(nv), key=lambda i: counts[i])
    pure_v = tuple(1 if i == v else 0 for i in range(nv))
    plus = [g for g in gens if not g[v]] + [pure_v]
    quot = _minimalize_monomials(
        [g[:v] + (g[v] - 1,) + g[v + 1:] if g[v] else g for g in gens]
    )
    left = _hilbert_numerator(tuple(plus), memo)
    right = _hilbert_numerator(tuple(quot), memo)
    out = _poly_add(left, _poly_mul_shift(right, 1))
    memo[key] = out
    return out


def degree(I: Ideal) -> HilbertData:
    """Dimension, multiplicity, and reduced Hilbert numerator of R/I.

    For the saturated ideal of a finite point set the affine cone has
    dimension 1 and the multiplicity is the number of points counted with
    multiplicity.
    """
    if not I.is_homogeneous():
        raise NotHomogeneous("hilbert_data expects homogeneous generators")
    gb = I.groebner_basis()
    if gb.is_unit_ideal():
        raise UnitIdeal("hilbert_data of the unit ideal")
    lms = _minimalize_monomials([g.terms[0][0] for g in gb])
    num = _hilbert_numerator(tuple(lms), {})
    k = 0
    while num and sum(num) == 0:
        # exact division by (1 - t): running prefix sums
        acc = 0
        quo = []
        for c in num[:-1]:
            acc += c
            quo.append(acc)
        while quo and quo[-1] == 0:
            quo.pop()
        num = quo
        k += 1
    dim = I.ring.nvars - k
    mult = sum(num)
    independent = krull_dim(I)
    if independent != dim:
        raise InternalCheckFailed(
            f"dimension disagreement: independent sets say {independent}, series says {dim}"
        )
    if mult <= 0:
        raise InternalCheckFailed(f"non-positive multiplicity {mult}")
    return HilbertData(dim, mult, tuple(num))


def multiplicity(I: Ideal) -> int:
    return degree(I).multiplicity


# -- substitution maps and pushforward --


@dataclass(frozen=True)
class SubstitutionMap:
    """y_i -> images[i], all homogeneous of one degree, verified to form a
    regular sequence unless constructed with verify=False."""

    source: PolyRing
    target: PolyRing
    images: tuple
    degree: int
    verified: bool

    def __repr__(self):
        imgs = "; ".join(str(f) for f in self.images)
        return f"SubstitutionMap({imgs})"


def is_regular_sequence(polys, ring: PolyRing) -> bool:
    """Maximal-length homogeneous regular sequences only: needs exactly nvars
    same-degree forms; they are regular iff their zero locus is the origin."""
    polys = list(polys)
    if len(polys) != ring.nvars:
        raise ArityMismatch(f"{len(polys)} forms in a {ring.nvars}-variable ring")
    degs = []
    for f in polys:
        if not isinstance(f, Polynomial) or f.ring != ring:
            raise RingMismatch("forms must live in the given ring")
        if not f:
            raise DegreeMismatch("the zero polynomial has no degree")
        degs.append(f.homogeneous_degree())
    if len(set(degs)) != 1:
        raise DegreeMismatch(f"forms of differing degrees {sorted(set(degs))}")
    J = Ideal(ring, polys)
    if J.is_unit():
        return False
    try:
        return krull_dim(J) == 0
    except UnitIdeal:  # pragma: no cover - guarded above
        return False


def substitution_map(source: PolyRing, images, target: PolyRing | None = None,
                     verify: bool = True) -> SubstitutionMap:
    images = tuple(images)
    if len(images) != source.nvars:
        raise ArityMismatch(f"{len(images)} images for {source.nvars} variables")
    if target is None:
        target = images[0].ring
    if target.nvars != source.nvars:
        raise ArityMismatch("source and target must have the same variable count")
    if target.field != source.field:
        raise FieldMismatch("source and target fields differ")
    degs = set()
    for f in images:
        if not isinstance(f, Polynomial) or f.ring != target:
            raise RingMismatch("images must live in the target ring")
        if not f:
            raise DegreeMismatch("the zero polynomial cannot be an image")
        degs.add(f.homogeneous_degree())
    if len(degs) != 1:
        raise DegreeMismatch(f"images of differing degrees {sorted(degs)}")
    d = degs.pop()
    if d < 1:
        raise DegreeMismatch("images must have degree at least 1")
    verified = False
    if verify:
        if not is_regular_sequence(list(images), target):
            raise NotRegularSequence("images do not form a regular sequence")
        verified = True
    return SubstitutionMap(source, target, images, d, verified)


def pushforward(I: Ideal, phi: SubstitutionMap) -> Ideal:
    """Image ideal phi*(I) generated by the substituted generators."""
    if not phi.verified:
        raise UnverifiedMap("pushforward along an unverified map")
    if I.ring != phi.source:
        raise RingMismatch("ideal does not live in the map's source ring")
    gens = [g.substitute(phi.images, phi.target) for g in I.generators]
    return Ideal(phi.target, gens)

"""Symbolic powers of point ideals and containment machinery.

For a saturated homogeneous ideal I whose projective zero locus is
0-dimensional (affine cone of Krull dimension 1), the m-th symbolic power is
the saturation of the ordinary power: I^(m) = Sat(I^m).  That identity is
the whole reason for the guards here: on any other input the saturation
would silently compute the wrong object, so non-conforming ideals are
rejected with a specific error instead.

Containment checks I^(m) <= I^r produce certificates.  A negative verdict
carries a witness polynomial, chosen deterministically as the first element
of the symbolic power's reduced Groebner basis (in its canonical descending
order) that does not reduce to zero modulo I^r.  Certificates can be
re-verified by an independent linear-algebra membership oracle that never
touches the Groebner machinery.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InvalidExponent,
    NotHomogeneous,
    NotSaturated,
    NotZeroDimensional,
    RingMismatch,
)
from .idealops import (
    Ideal,
    SubstitutionMap,
    ideal_equal,
    ideal_power,
    krull_dim,
    pushforward,
    saturate_irrelevant,
)
from .polyring import Polynomial


def _check_exponent(m, what="exponent"):
    if not isinstance(m, int) or m < 1:
        raise InvalidExponent(f"{what} must be a positive integer, got {m!r}")


def _guard_point_ideal(I: Ideal):
    """Enforce the regime where Sat(I^m) is the symbolic power."""
    if not I.is_homogeneous():
        raise NotHomogeneous("symbolic powers need homogeneous generators")
    if krull_dim(I) != 1:
        raise NotZeroDimensional(
            "the projective zero locus must be 0-dimensional (affine cone of dimension 1)"
        )
    if not ideal_equal(I, saturate_irrelevant(I)):
        raise NotSaturated("ideal is not saturated; saturate it first")


def _symbolic_power_raw(I: Ideal, m: int) -> Ideal:
    if m == 1:
        return I
    S = saturate_irrelevant(ideal_power(I, m))
    S.groebner_basis()
    return S


def symbolic_power(I: Ideal, m: int) -> Ideal:
    """I^(m) = Sat(I^m) for a saturated ideal of projective points."""
    _check_exponent(m)
    _guard_point_ideal(I)
    return _symbolic_power_raw(I, m)


# -- linear-algebra membership oracle --


def _monomials_of_degree(nvars: int, d: int):
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


def member_by_linalg(f: Polynomial, I: Ideal) -> bool:
    """Degree-by-degree membership test with no Groebner machinery.

    A homogeneous f of degree e lies in the homogeneous ideal I exactly when
    it lies in the span of {monomial * g : g generator, total degree e}, so
    membership is one exact linear solve over the coefficient field.
    """
    if f.ring != I.ring:
        raise RingMismatch("membership test across rings")
    if f.is_zero():
        return True
    if not f.is_homogeneous():
        raise NotHomogeneous("linear-algebra membership needs a homogeneous element")
    if not I.is_homogeneous():
        raise NotHomogeneous("linear-algebra membership needs homogeneous generators")
    ring = I.ring
    field = ring.field
    e = f.homogeneous_degree()
    col = {mono: i for i, mono in enumerate(_monomials_of_degree(ring.nvars, e))}
    ncols = len(col)
    pivots: dict[int, list] = {}

    def eliminate(row):
        c = 0
        while c < ncols:
            a = row[c]
            if not a:
                c += 1
                continue
            piv = pivots.get(c)
            if piv is None:
                return row, c
            row = [field.sub(x, field.mul(a, y)) for x, y in zip(row, piv)]
            c += 1
        return row, -1

    for g in I.generators:
        k = e - g.homogeneous_degree()
        if k < 0:
            continue
        for mono in _monomials_of_degree(ring.nvars, k):
            row = [0] * ncols
            for ge, gc in g.terms:
                row[col[ring.monomial_mul(mono, ge)]] = gc
            row, c = eliminate(row)
            if c >= 0:
                inv = field.inv(row[c])
                pivots[c] = [field.mul(inv, x) if x else x for x in row]

    target = [0] * ncols
    for fe, fc in f.terms:
        target[col[fe]] = fc
    _, c = eliminate(target)
    return c < 0


# -- containment certificates --


@dataclass(frozen=True, eq=False)
class ContainmentCertificate:
    """Outcome of one containment question I^(m) <= I^r.

    When the verdict is not_contained the witness lies in the symbolic power
    but not in the ordinary power.  The symbolic_ideal and power_ideal fields
    keep the computed ideals (with cached bases) for re-verification.
    """

    ideal: Ideal
    m: int
    r: int
    verdict: str  # "contained" | "not_contained"
    witness: Polynomial | None
    symbolic_ideal: Ideal
    power_ideal: Ideal
    stats: dict

    @property
    def contained(self) -> bool:
        return self.verdict == "contained"


def _containment_core(I: Ideal, S: Ideal, P: Ideal, m: int, r: int,
                      started: float) -> ContainmentCertificate:
    gb_power = P.groebner_basis()
    witness = None
    for g in S.groebner_basis():
        if not gb_power.contains(g):
            witness = g
            break
    verdict = "contained" if witness is None else "not_contained"
    gb_sym = S.groebner_basis()
    stats = {
        "symbolic_gb_size": len(gb_sym.elements),
        "power_gb_size": len(gb_power.elements),
        "symbolic_max_degree": max((g.total_degree() for g in gb_sym), default=0),
        "power_max_degree": max((g.total_degree() for g in gb_power), default=0),
        "elapsed_seconds": time.perf_counter() - started,
    }
    return ContainmentCertificate(I, m, r, verdict, witness, S, P, stats)


def check_containment(I: Ideal, m: int, r: int) -> ContainmentCertificate:
    """Decide I^(m) <= I^r with a deterministic witness on failure."""
    _check_exponent(m, "m")
    _check_exponent(r, "r")
    _guard_point_ideal(I)
    started = time.perf_counter()
    S = _symbolic_power_raw(I, m)
    P = ideal_power(I, r)
    return _containment_core(I, S, P, m, r, started)


def verify_certificate(cert: ContainmentCertificate) -> bool:
    """Re-check a certificate with the linear-algebra oracle only."""
    S, P = cert.symbolic_ideal, cert.power_ideal
    if cert.verdict == "not_contained":
        w = cert.witness
        return w is not None and member_by_linalg(w, S) and not member_by_linalg(w, P)
    return all(member_by_linalg(g, P) for g in S.groebner_basis())


# -- round trip along a substitution map --


@dataclass(frozen=True, eq=False)
class RoundTripReport:
    """Containment verdicts on both sides of a substitution map.

    agree must always be true; a disagreement falsifies the engine, not the
    input, and is surfaced by the caller as an invariant violation.
    saturation_changed records whether saturating the image ideal changed it
    (it never should for a saturated 0-dimensional source).
    """

    source: ContainmentCertificate
    image: ContainmentCertificate
    agree: bool
    saturation_changed: bool

    @property
    def source_verdict(self) -> str:
        return self.source.verdict

    @property
    def image_verdict(self) -> str:
        return self.image.verdict


def check_roundtrip(I: Ideal, phi: SubstitutionMap, m: int, r: int) -> RoundTripReport:
    """Check I^(m) <= I^r and its image-side counterpart independently."""
    source = check_containment(I, m, r)
    J = pushforward(I, phi)
    Jsat = saturate_irrelevant(J)
    saturation_changed = not ideal_equal(J, Jsat)
    image = check_containment(Jsat, m, r)
    return RoundTripReport(source, image, source.verdict == image.verdict,
                           saturation_changed)


def check_lemma_pushforward(I: Ideal, phi: SubstitutionMap, m: int) -> bool:
    """Whether the pushforward of the symbolic power equals the symbolic
    power of the (saturated) pushforward.  Expected true on valid inputs;
    false falsifies the engine."""
    _check_exponent(m, "m")
    left = pushforward(symbolic_power(I, m), phi)
    right = symbolic_power(saturate_irrelevant(pushforward(I, phi)), m)
    return ideal_equal(left, right)


# kept under the historical name used by callers
check_lemma3 = check_lemma_pushforward


# -- resurgence scanning --


@dataclass(frozen=True, eq=False)
class ResurgenceBound:
    """Grid scan of containments I^(s) <= I^t for 1 <= s <= smax, 1 <= t <= tmax.

    lower_bound = max s/t over failures (exact rational; 1 when none), a
    lower bound for sup{s/t : I^(s) not <= I^t}.  Pairs with s >= 2t may be
    skipped: containment there is a theorem in the plane, and such pairs are
    recorded rather than recomputed.
    """

    smax: int
    tmax: int
    certificates: tuple
    failures: tuple
    skipped_by_theory: tuple
    lower_bound: Fraction

    @property
    def failure_pairs(self):
        return tuple((c.m, c.r) for c in self.failures)


def resurgence_scan(I: Ideal, smax: int, tmax: int,
                    skip_by_theory: bool | None = None) -> ResurgenceBound:
    """Scan the (s, t) grid, reusing each symbolic and ordinary power.

    skip_by_theory defaults to on for 3-variable rings (points in the
    projective plane, where s >= 2t forces containment) and off otherwise.
    """
    _check_exponent(smax, "smax")
    _check_exponent(tmax, "tmax")
    _guard_point_ideal(I)
    if skip_by_theory is None:
        skip_by_theory = I.ring.nvars == 3
    symbolic_cache: dict[int, Ideal] = {}
    power_cache: dict[int, Ideal] = {}
    certificates = []
    failures = []
    skipped = []
    for t in range(1, tmax + 1):
        for s in range(1, smax + 1):
            if skip_by_theory and s >= 2 * t:
                skipped.append((s, t))
                continue
            started = time.perf_counter()
            S = symbolic_cache.get(s)
            if S is None:
                S = symbolic_cache[s] = _symbolic_power_raw(I, s)
            P = power_cache.get(t)
            if P is None:
                P = power_cache[t] = ideal_power(I, t)
            cert = _containment_core(I, S, P, s, t, started)
            certificates.append(cert)
            if not cert.contained:
                failures.append(cert)
    failures.sort(key=lambda c: (c.m, c.r))
    certificates.sort(key=lambda c: (c.m, c.r))
    bound = max((Fraction(c.m, c.r) for c in failures), default=Fraction(1))
    return ResurgenceBound(smax, tmax, tuple(certificates), tuple(failures),
                           tuple(sorted(skipped)), bound)

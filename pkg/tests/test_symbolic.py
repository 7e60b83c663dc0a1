"""Tests for symbolic powers, containment certificates, round trips along
substitution maps, and resurgence scans."""

import random
from fractions import Fraction

import pytest

from spc import (
    GF,
    QQ,
    Ideal,
    PolyRing,
    check_containment,
    check_lemma3,
    check_roundtrip,
    ideal_equal,
    ideal_member,
    ideal_power,
    member_by_linalg,
    parse_polynomial,
    pushforward,
    resurgence_scan,
    saturate_irrelevant,
    substitution_map,
    symbolic_power,
    verify_certificate,
)
from spc.errors import (
    InvalidExponent,
    NotHomogeneous,
    NotSaturated,
    NotZeroDimensional,
    RingMismatch,
)
from spc.symbolic import ContainmentCertificate


def ring_qq():
    return PolyRing(QQ(), ("x", "y", "z"))


def ideal_of(R, *texts):
    return Ideal(R, [parse_polynomial(t, R) for t in texts])


def cehh(R):
    return ideal_of(R, "x*y^2", "y*z^2", "z*x^2", "x*y*z")


def fermat3(R):
    return ideal_of(R, "x*(y^3-z^3)", "y*(x^3-z^3)", "z*(x^3-y^3)")


# ---------------------------------------------------------- symbolic power


def test_first_symbolic_power_is_identity():
    R = ring_qq()
    I = cehh(R)
    assert symbolic_power(I, 1) is I


def test_symbolic_square_of_six_points():
    R = ring_qq()
    I = cehh(R)
    S2 = symbolic_power(I, 2)
    w = parse_polynomial("x^2*y^2*z", R)
    assert S2.contains(w)
    assert not ideal_power(I, 2).contains(w)
    # the symbolic square is the saturation of the ordinary square
    assert ideal_equal(S2, saturate_irrelevant(ideal_power(I, 2)))


def test_symbolic_power_contains_ordinary_power():
    R = ring_qq()
    for I in (cehh(R), fermat3(R)):
        for m in (2, 3):
            assert symbolic_power(I, m).contains_ideal(ideal_power(I, m))


def test_symbolic_powers_antitone():
    R = ring_qq()
    I = cehh(R)
    S1, S2, S3 = I, symbolic_power(I, 2), symbolic_power(I, 3)
    assert S1.contains_ideal(S2)
    assert S2.contains_ideal(S3)


def test_symbolic_power_is_saturated():
    from spc import is_saturated

    R = ring_qq()
    for m in (2, 3):
        assert is_saturated(symbolic_power(cehh(R), m))


def test_symbolic_power_guards():
    R = ring_qq()
    I = cehh(R)
    with pytest.raises(InvalidExponent):
        symbolic_power(I, 0)
    with pytest.raises(NotZeroDimensional):
        symbolic_power(ideal_of(R, "x"), 2)
    with pytest.raises(NotSaturated):
        symbolic_power(ideal_power(I, 2), 2)
    with pytest.raises(NotHomogeneous):
        symbolic_power(Ideal(R, [R.gen(0) + R.one]), 2)


def test_symbolic_power_on_smooth_points():
    # three coordinate points: symbolic square = square of each point
    # ideal intersected, easy to verify against the product of planes
    R = ring_qq()
    from spc.idealops import intersect_many

    pts = [
        ideal_of(R, "y", "z"),
        ideal_of(R, "x", "z"),
        ideal_of(R, "x", "y"),
    ]
    I = intersect_many(pts)
    S2 = symbolic_power(I, 2)
    expected = intersect_many([ideal_power(p, 2) for p in pts])
    assert ideal_equal(S2, expected)


# ------------------------------------------------------- membership oracle


def test_member_by_linalg_agrees_with_groebner():
    R = ring_qq()
    I = cehh(R)
    w = parse_polynomial("x^2*y^2*z", R)
    I2 = ideal_power(I, 2)
    assert member_by_linalg(w, I2) == ideal_member(w, I2) == False
    f = parse_polynomial("x^2*y^4 - x^2*y*z^3", R)  # y^2*(xy^2) - ... degree 6
    assert member_by_linalg(f * R.gens()[0], ideal_power(I, 2)) == ideal_member(
        f * R.gens()[0], ideal_power(I, 2)
    )


def test_member_by_linalg_random_agreement():
    rng = random.Random(321321)
    R = ring_qq()
    I = cehh(R)
    gens = I.generators
    for _ in range(30):
        if rng.random() < 0.5:
            # engineered member: random combination of the generators
            d = rng.randrange(0, 3)
            f = R.zero
            for g in gens:
                exps = tuple(_split_degree(rng, d, R.nvars))
                f = f + g.mul_term(exps, R.field.from_int(rng.randrange(-4, 5)))
        else:
            deg = rng.randrange(3, 6)
            f = R.zero
            for _ in range(rng.randrange(1, 5)):
                exps = tuple(_split_degree(rng, deg, R.nvars))
                f = f + R.term(exps, R.field.from_int(rng.randrange(-4, 5)))
        assert member_by_linalg(f, I) == ideal_member(f, I)


def _split_degree(rng, d, n):
    cuts = sorted(rng.randrange(0, d + 1) for _ in range(n - 1))
    return tuple(b - a for a, b in zip((0, *cuts), (*cuts, d)))


def test_member_by_linalg_guards():
    R = ring_qq()
    S = PolyRing(QQ(), ("x", "y"))
    I = cehh(R)
    assert member_by_linalg(R.zero, I)
    with pytest.raises(RingMismatch):
        member_by_linalg(S.gen(0), I)
    with pytest.raises(NotHomogeneous):
        member_by_linalg(R.gen(0) + R.one, I)
    with pytest.raises(NotHomogeneous):
        member_by_linalg(R.gen(0), Ideal(R, [R.gen(0) + R.one]))


# --------------------------------------------------------------- containment


def test_six_points_symbolic_square_escapes():
    R = ring_qq()
    cert = check_containment(cehh(R), 2, 2)
    assert cert.verdict == "not_contained"
    assert not cert.contained
    assert str(cert.witness) == "x^2*y^2*z"
    assert cert.symbolic_ideal.contains(cert.witness)
    assert not cert.power_ideal.contains(cert.witness)


def test_six_points_third_symbolic_inside_square():
    R = ring_qq()
    cert = check_containment(cehh(R), 3, 2)
    assert cert.verdict == "contained"
    assert cert.contained
    assert cert.witness is None
    assert ideal_power(cehh(R), 2).contains_ideal(cert.symbolic_ideal)


def test_fermat_witness_escapes_square():
    R = ring_qq()
    I = fermat3(R)
    F = parse_polynomial("(x^3-y^3)*(x^3-z^3)*(y^3-z^3)", R)
    S3 = symbolic_power(I, 3)
    assert S3.contains(F)
    assert not ideal_power(I, 2).contains(F)
    cert = check_containment(I, 3, 2)
    assert cert.verdict == "not_contained"
    assert cert.witness == F


def test_trivial_containment_in_first_power():
    R = ring_qq()
    I = cehh(R)
    for m in (1, 2, 3):
        cert = check_containment(I, m, 1)
        assert cert.contained


def test_containment_stats_and_fields():
    R = ring_qq()
    cert = check_containment(cehh(R), 2, 2)
    assert (cert.m, cert.r) == (2, 2)
    for key in (
        "symbolic_gb_size",
        "power_gb_size",
        "symbolic_max_degree",
        "power_max_degree",
        "elapsed_seconds",
    ):
        assert key in cert.stats
    assert cert.stats["elapsed_seconds"] >= 0
    assert cert.stats["symbolic_gb_size"] == len(cert.symbolic_ideal.groebner_basis())


def test_verify_certificate_accepts_honest_results():
    R = ring_qq()
    I = cehh(R)
    for m, r in ((2, 2), (3, 2), (2, 1)):
        assert verify_certificate(check_containment(I, m, r))


def test_verify_certificate_rejects_tampering():
    R = ring_qq()
    I = cehh(R)
    cert = check_containment(I, 2, 2)
    bogus = ContainmentCertificate(
        ideal=cert.ideal,
        m=cert.m,
        r=cert.r,
        verdict="not_contained",
        witness=parse_polynomial("x^2*y^3*z", R),  # lies inside the square
        symbolic_ideal=cert.symbolic_ideal,
        power_ideal=cert.power_ideal,
        stats=cert.stats,
    )
    assert not verify_certificate(bogus)
    flipped = ContainmentCertificate(
        ideal=cert.ideal,
        m=cert.m,
        r=cert.r,
        verdict="contained",
        witness=None,
        symbolic_ideal=cert.symbolic_ideal,
        power_ideal=cert.power_ideal,
        stats=cert.stats,
    )
    assert not verify_certificate(flipped)


def test_els_uniform_bound_small_case():
    # fourth symbolic power inside the ordinary square, the codimension-2
    # uniform containment
    R = ring_qq()
    I = cehh(R)
    assert ideal_power(I, 2).contains_ideal(symbolic_power(I, 4))


# ---------------------------------------------------------------- roundtrip


def test_roundtrip_squares_map():
    R = ring_qq()
    x, y, z = R.gens()
    phi = substitution_map(R, [x**2, y**2, z**2])
    I = cehh(R)
    rep = check_roundtrip(I, phi, 2, 2)
    assert rep.agree
    assert rep.source_verdict == "not_contained"
    assert rep.image_verdict == "not_contained"
    rep32 = check_roundtrip(I, phi, 3, 2)
    assert rep32.agree
    assert rep32.source_verdict == "contained"
    assert rep32.image_verdict == "contained"


def test_roundtrip_image_witness_is_pushforward_compatible():
    # the image certificate's witness must genuinely separate the image
    # ideals, and the pushforward of the source witness is one such form
    R = ring_qq()
    x, y, z = R.gens()
    phi = substitution_map(R, [x**2, y**2, z**2])
    I = cehh(R)
    rep = check_roundtrip(I, phi, 2, 2)
    J = saturate_irrelevant(pushforward(I, phi))
    moved = rep.source.witness.substitute(phi.images)
    S2 = symbolic_power(J, 2)
    assert S2.contains(moved)
    assert not ideal_power(J, 2).contains(moved)


def test_roundtrip_records_saturation_change():
    R = ring_qq()
    x, y, z = R.gens()
    phi = substitution_map(R, [x**2, y**2, z**2])
    rep = check_roundtrip(cehh(R), phi, 2, 2)
    assert isinstance(rep.saturation_changed, bool)


def test_lemma_pushforward_commutes_with_symbolic_power():
    R = ring_qq()
    x, y, z = R.gens()
    I = cehh(R)
    for images in ([x**2, y**2, z**2], [x**2 + y**2, y**2 + z**2, x**2 + z**2]):
        phi = substitution_map(R, images)
        assert check_lemma3(I, phi, 2)


def test_lemma_holds_in_positive_characteristic():
    R3 = PolyRing(GF(3), ("x", "y", "z"))
    x, y, z = R3.gens()
    I = Ideal(R3, [
        parse_polynomial(t, R3)
        for t in ("x*y*(x^2-y^2)", "x*z*(x^2-z^2)", "y*z*(y^2-z^2)",
                  "x*(x^2-y^2)*(x^2-z^2)")
    ])
    phi = substitution_map(R3, [x**2, y**2, z**2])
    rep = check_roundtrip(I, phi, 3, 2)
    assert rep.agree
    assert rep.source_verdict == "not_contained"


# --------------------------------------------------------------------- scan


def test_scan_six_points():
    R = ring_qq()
    out = resurgence_scan(cehh(R), smax=3, tmax=2)
    assert out.failure_pairs == ((1, 2), (2, 2))
    assert set(out.skipped_by_theory) == {(2, 1), (3, 1)}
    assert out.lower_bound == Fraction(1)
    checked = {(c.m, c.r) for c in out.certificates}
    assert checked == {(1, 1), (1, 2), (2, 2), (3, 2)}


def test_scan_fermat_configuration():
    R = ring_qq()
    out = resurgence_scan(fermat3(R), smax=3, tmax=2)
    assert out.failure_pairs == ((1, 2), (2, 2), (3, 2))
    assert out.lower_bound == Fraction(3, 2)


def test_scan_without_theory_skip():
    R = ring_qq()
    full = resurgence_scan(cehh(R), smax=3, tmax=2, skip_by_theory=False)
    assert full.skipped_by_theory == ()
    checked = {(c.m, c.r) for c in full.certificates}
    assert checked == {(s, t) for s in (1, 2, 3) for t in (1, 2)}
    # the skipped pairs really were trivial containments
    for c in full.certificates:
        if (c.m, c.r) in {(2, 1), (3, 1)}:
            assert c.contained
    assert full.failure_pairs == ((1, 2), (2, 2))
    assert full.lower_bound == Fraction(1)


def test_scan_certificates_verify():
    R = ring_qq()
    out = resurgence_scan(cehh(R), smax=3, tmax=2)
    for cert in out.certificates:
        assert verify_certificate(cert)


def test_scan_guards():
    R = ring_qq()
    with pytest.raises(InvalidExponent):
        resurgence_scan(cehh(R), smax=0, tmax=2)
    with pytest.raises(InvalidExponent):
        resurgence_scan(cehh(R), smax=2, tmax=0)

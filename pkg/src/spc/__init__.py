"""Exact commutative algebra for ideals of finite point sets in projective
space: Groebner bases, saturation, symbolic powers, containment certificates,
and pushforward round-trip checks along regular-sequence substitutions."""

__version__ = "0.1.0"

from .coeff import GF, QQ, FieldSpec
from .polyring import Block, Grevlex, Lex, MonomialOrder, Polynomial, PolyRing
from .expr import parse_job, parse_polynomial, parse_ring
from .groebner import GroebnerBasis, buchberger, reduce, s_polynomial
from .idealops import (
    HilbertData,
    Ideal,
    SubstitutionMap,
    colon,
    degree,
    ideal_equal,
    ideal_member,
    ideal_power,
    ideal_product,
    ideal_sum,
    intersect,
    irrelevant_ideal,
    is_regular_sequence,
    is_saturated,
    krull_dim,
    multiplicity,
    pushforward,
    saturate,
    saturate_irrelevant,
    substitution_map,
)
from .symbolic import (
    ContainmentCertificate,
    ResurgenceBound,
    RoundTripReport,
    check_containment,
    check_lemma3,
    check_roundtrip,
    member_by_linalg,
    resurgence_scan,
    symbolic_power,
    verify_certificate,
)
from .catalog import (
    CatalogEntry,
    cehh_ideal,
    char3_ideal,
    fermat_ideal,
    fibered_entry,
    paper_map,
)

__all__ = [
    "__version__",
    "GF",
    "QQ",
    "FieldSpec",
    "PolyRing",
    "Polynomial",
    "MonomialOrder",
    "Grevlex",
    "Lex",
    "Block",
    "parse_polynomial",
    "parse_ring",
    "parse_job",
    "GroebnerBasis",
    "buchberger",
    "reduce",
    "s_polynomial",
    "Ideal",
    "HilbertData",
    "SubstitutionMap",
    "ideal_sum",
    "ideal_product",
    "ideal_power",
    "ideal_member",
    "ideal_equal",
    "irrelevant_ideal",
    "intersect",
    "colon",
    "saturate",
    "saturate_irrelevant",
    "is_saturated",
    "krull_dim",
    "degree",
    "multiplicity",
    "is_regular_sequence",
    "substitution_map",
    "pushforward",
    "symbolic_power",
    "member_by_linalg",
    "check_containment",
    "check_roundtrip",
    "check_lemma3",
    "resurgence_scan",
    "verify_certificate",
    "ContainmentCertificate",
    "RoundTripReport",
    "ResurgenceBound",
    "CatalogEntry",
    "cehh_ideal",
    "fermat_ideal",
    "char3_ideal",
    "paper_map",
    "fibered_entry",
]

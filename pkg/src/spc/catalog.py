"""Built-in point configurations and substitution maps.

Each entry packages the generators of a named plane configuration ideal, an
optional witness form whose membership pattern certifies a containment
failure, and the expected multiplicity (number of points counted with
multiplicity) of the saturated ideal.  Generators are built with ring
arithmetic, so any 3-variable ring works regardless of variable names.

Job files address these as `ideal I = @cehh`, `@fermat(4)`, `@char3` and
`map phi = @ex1` etc.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import (
    ArityMismatch,
    CharacteristicMismatch,
    InvalidParameter,
    UnknownName,
)
from .idealops import Ideal, SubstitutionMap, pushforward, substitution_map
from .polyring import Polynomial, PolyRing


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    """A named configuration: generators, optional witness, expected data."""

    name: str
    ring: PolyRing
    generators: tuple
    witness: Polynomial | None
    expected_multiplicity: int | None
    note: str

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.generators)


def _require_plane(ring: PolyRing, what: str):
    if ring.nvars != 3:
        raise ArityMismatch(f"{what} needs a 3-variable ring, got {ring.nvars}")


def cehh_ideal(ring: PolyRing) -> CatalogEntry:
    """Three coordinate vertices of the plane, each with one infinitely near
    point: 6 points total.  The witness monomial lies in the 3rd symbolic
    power and in the square, but not in the square times the maximal ideal.
    """
    _require_plane(ring, "cehh")
    x, y, z = ring.gens()
    gens = (x * y**2, y * z**2, z * x**2, x * y * z)
    witness = x**2 * y**2 * z**2
    return CatalogEntry(
        "cehh", ring, gens, witness, 6,
        "monomial ideal of the 3 coordinate vertices with an infinitely near "
        "point each (6 points); intersection of (x^2,y), (y^2,z), (z^2,x)",
    )


def fermat_ideal(ring: PolyRing, j: int) -> CatalogEntry:
    """The j-th Fermat configuration: the 3 coordinate vertices plus the j^2
    common zeros of the differences of j-th powers, j^2 + 3 points in all.
    The witness is the product of the three difference forms; it lies in the
    3rd symbolic power but not in the square (characteristic not 2 or 3).
    """
    _require_plane(ring, "fermat")
    if not isinstance(j, int) or j < 3:
        raise InvalidParameter(f"fermat parameter must be an integer >= 3, got {j!r}")
    p = ring.field.characteristic()
    if p in (2, 3):
        warnings.warn(
            f"fermat({j}) over characteristic {p}: the standard containment "
            "failure is only guaranteed away from characteristics 2 and 3",
            stacklevel=2,
        )
    x, y, z = ring.gens()
    gens = (x * (y**j - z**j), y * (x**j - z**j), z * (x**j - y**j))
    witness = (x**j - y**j) * (x**j - z**j) * (y**j - z**j)
    return CatalogEntry(
        f"fermat({j})", ring, gens, witness, j * j + 3,
        f"Fermat configuration of {j * j} + 3 points: coordinate vertices plus "
        f"the common zeros of pairwise differences of {j}-th powers",
    )


def char3_ideal(ring: PolyRing) -> CatalogEntry:
    """Twelve of the thirteen GF(3)-rational points of the plane (one
    coordinate vertex removed with its incident lines).  Verdicts over GF(3)
    are faithful for any extension field: Groebner bases and homogeneous
    membership are invariant under field extension.
    """
    _require_plane(ring, "char3")
    if ring.field.characteristic() != 3:
        raise CharacteristicMismatch(
            f"char3 needs characteristic 3, got {ring.field.characteristic()}"
        )
    x, y, z = ring.gens()
    gens = (
        x * y * (x**2 - y**2),
        x * z * (x**2 - z**2),
        y * z * (y**2 - z**2),
        x * (x**2 - y**2) * (x**2 - z**2),
    )
    witness = (x * (x - z) * (x + z) * (x**2 - y**2)
               * ((x - z)**2 - y**2) * ((x + z)**2 - y**2))
    return CatalogEntry(
        "char3", ring, gens, witness, 12,
        "12 rational points of the plane over the 3-element field (the 13 "
        "rational points minus one coordinate vertex); witness is a product "
        "of 9 lines meeting them in triples",
    )


_MAP_BUILDERS = {
    "ex1": lambda x, y, z: (x**2 + y**2, y**2 + z**2, x**2 + z**2),
    "ex2": lambda x, y, z: (x**2, y**2, z**2),
    "ex4": lambda x, y, z: (x**2, y**2, z**2),
    "ex4b": lambda x, y, z: (x**2 + y**2, y**2 + z**2, x**2 + z**2),
}


def map_images(name: str, ring: PolyRing) -> list:
    """Images of the named built-in substitution map, in variable order."""
    _require_plane(ring, f"map {name}")
    builder = _MAP_BUILDERS.get(name)
    if builder is None:
        raise UnknownName(f"unknown map {name!r}; known: {', '.join(sorted(_MAP_BUILDERS))}")
    return list(builder(*ring.gens()))


def paper_map(name: str, ring: PolyRing) -> SubstitutionMap:
    """A built-in map, verified to be a regular sequence at construction."""
    images = map_images(name, ring)
    return substitution_map(ring, images, ring)


def fibered_entry(base: CatalogEntry, phi: SubstitutionMap) -> CatalogEntry:
    """Entry for the fibers of a map over a base configuration.

    Generators are the substituted generators of the base; a degree-d map
    multiplies the expected multiplicity by d^2 (plane count of preimages
    with multiplicity).  The base witness pushes forward to a witness for
    the fibered configuration.
    """
    if base.ring != phi.source:
        raise ArityMismatch("fibered entry: base ideal and map source disagree")
    image = pushforward(base.ideal(), phi)
    witness = None
    if base.witness is not None:
        witness = base.witness.substitute(phi.images, phi.target)
    expected = None
    if base.expected_multiplicity is not None:
        expected = phi.degree**2 * base.expected_multiplicity
    return CatalogEntry(
        f"{base.name}^fibered(d={phi.degree})", phi.target, image.generators,
        witness, expected,
        f"fibers of a degree-{phi.degree**2} plane morphism over: {base.note}",
    )


def entry(name: str, arg: int | None, ring: PolyRing) -> CatalogEntry:
    """Job-file dispatch for `@name` / `@name(arg)` ideal references."""
    if name == "cehh":
        if arg is not None:
            raise InvalidParameter("cehh takes no parameter")
        return cehh_ideal(ring)
    if name == "fermat":
        if arg is None:
            raise InvalidParameter("fermat needs a parameter, e.g. @fermat(3)")
        return fermat_ideal(ring, arg)
    if name == "char3":
        if arg is not None:
            raise InvalidParameter("char3 takes no parameter")
        return char3_ideal(ring)
    raise UnknownName(f"unknown catalog ideal {name!r}; known: cehh, fermat(j), char3")


def list_entries() -> list[tuple[str, str, str]]:
    """(name, kind, summary) rows for the catalog listing."""
    return [
        ("cehh", "ideal",
         "6 points: coordinate vertices with an infinitely near point each"),
        ("fermat(j)", "ideal",
         "j^2 + 3 points, j >= 3; witness product of power differences"),
        ("char3", "ideal",
         "12 rational points over GF(3); requires characteristic 3"),
        ("ex1", "map", "x^2+y^2; y^2+z^2; x^2+z^2 (degree 2, reduced fibers)"),
        ("ex2", "map", "x^2; y^2; z^2 (degree 2, non-reduced vertex fibers)"),
        ("ex4", "map", "x^2; y^2; z^2 (same images as ex2)"),
        ("ex4b", "map", "x^2+y^2; y^2+z^2; x^2+z^2 (same images as ex1)"),
    ]

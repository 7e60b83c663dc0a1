"""Multivariate polynomial rings over a coefficient field.

Monomials are dense exponent tuples (one slot per variable, entries bounded
by 65535).  A polynomial is an immutable list of (exponents, coefficient)
terms, strictly descending in the ring's monomial order, with no zero
coefficients; the zero polynomial is the empty list.  All arithmetic is by
sorted-list merging, never by hashing, so term order is canonical by
construction.

Each order maps an exponent tuple to a single packed integer key that is
strictly monotone for the order and additive under monomial multiplication
(key(a*b) = key(a) + key(b) - key_one).  Merges compare ints instead of
tuples, and shifted keys come from one integer addition.
"""

from __future__ import annotations

from .coeff import FieldSpec
from .errors import (
    ArityMismatch,
    DuplicateName,
    FieldMismatch,
    InvalidExponent,
    InvalidParameter,
    NotHomogeneous,
    RingMismatch,
)

MAX_EXPONENT = 65535

_FIELD_BITS = 24
_FIELD_MASK = (1 << _FIELD_BITS) - 1


def _grevlex_fields(exps) -> list[int]:
    # degree first, then negated exponents from the last variable backwards;
    # the first variable's slot is redundant (determined by the rest) and dropped
    fields = [sum(exps)]
    for i in range(len(exps) - 1, 0, -1):
        fields.append(_FIELD_MASK - exps[i])
    return fields


def _pack(fields) -> int:
    k = 0
    for f in fields:
        k = (k << _FIELD_BITS) | f
    return k


class MonomialOrder:
    """Total multiplicative order on exponent tuples of fixed width."""

    kind: str
    nvars: int

    def key(self, exps) -> int:
        raise NotImplementedError

    @property
    def key_one(self) -> int:
        try:
            return self._key_one
        except AttributeError:
            self._key_one = self.key((0,) * self.nvars)
            return self._key_one

    def compare(self, a, b) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __repr__(self):
        return self.kind


class Grevlex(MonomialOrder):
    """Graded reverse lexicographic: higher degree wins, ties broken by the
    smallest exponent on the latest variable."""

    kind = "grevlex"

    def __init__(self, nvars: int):
        self.nvars = nvars

    def key(self, exps) -> int:
        return _pack(_grevlex_fields(exps))

    def __eq__(self, other):
        return isinstance(other, Grevlex) and other.nvars == self.nvars

    def __hash__(self):
        return hash(("grevlex", self.nvars))


class Lex(MonomialOrder):
    """Pure lexicographic in declared variable order."""

    kind = "lex"

    def __init__(self, nvars: int):
        self.nvars = nvars

    def key(self, exps) -> int:
        return _pack(exps)

    def __eq__(self, other):
        return isinstance(other, Lex) and other.nvars == self.nvars

    def __hash__(self):
        return hash(("lex", self.nvars))


class Block(MonomialOrder):
    """Elimination order: grevlex on the first `elim` variables, then grevlex
    on the rest.  Any monomial involving a leading-block variable beats every
    monomial free of them."""

    kind = "block"

    def __init__(self, nvars: int, elim: int):
        if not 0 < elim < nvars:
            raise InvalidParameter(f"block split must be inside 1..{nvars - 1}: {elim}")
        self.nvars = nvars
        self.elim = elim

    def key(self, exps) -> int:
        k = self.elim
        return _pack(_grevlex_fields(exps[:k]) + _grevlex_fields(exps[k:]))

    def __eq__(self, other):
        return isinstance(other, Block) and (other.nvars, other.elim) == (self.nvars, self.elim)

    def __hash__(self):
        return hash(("block", self.nvars, self.elim))

    def __repr__(self):
        return f"block({self.elim})"


def make_order(kind: str, nvars: int, elim: int | None = None) -> MonomialOrder:
    if kind == "grevlex":
        return Grevlex(nvars)
    if kind == "lex":
        return Lex(nvars)
    if kind == "block":
        if elim is None:
            raise InvalidParameter("block order needs an elimination block size")
        return Block(nvars, elim)
    raise InvalidParameter(f"unknown monomial order {kind!r}")


class PolyRing:
    """Polynomial ring: a field, named variables, and a monomial order."""

    __slots__ = ("field", "variables", "order", "nvars", "_zero", "_one", "__weakref__")

    def __init__(self, field: FieldSpec, variables, order: str | MonomialOrder = "grevlex",
                 elim: int | None = None):
        variables = tuple(variables)
        if not variables:
            raise InvalidParameter("a ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise DuplicateName(f"repeated variable names in {variables}")
        for v in variables:
            if not v.isidentifier():
                raise InvalidParameter(f"variable name must be an identifier: {v!r}")
        self.field = field
        self.variables = variables
        self.nvars = len(variables)
        if isinstance(order, MonomialOrder):
            if order.nvars != self.nvars:
                raise ArityMismatch("order width does not match variable count")
            self.order = order
        else:
            self.order = make_order(order, self.nvars, elim)
        self._zero = None
        self._one = None

    # -- monomial helpers (exps are plain tuples) --

    def monomial_mul(self, a, b):
        return tuple(map(int.__add__, a, b))

    def monomial_divides(self, a, b) -> bool:
        """True iff a | b componentwise."""
        for x, y in zip(a, b):
            if x > y:
                return False
        return True

    def monomial_quotient(self, b, a):
        """b / a; caller guarantees divisibility."""
        return tuple(map(int.__sub__, b, a))

    def monomial_lcm(self, a, b):
        return tuple(map(max, a, b))

    def monomial_degree(self, a) -> int:
        return sum(a)

    # -- polynomial constructors --

    @property
    def zero(self) -> "Polynomial":
        if self._zero is None:
            self._zero = Polynomial(self, ())
        return self._zero

    @property
    def one(self) -> "Polynomial":
        if self._one is None:
            self._one = self.const(self.field.one)
        return self._one

    def const(self, c) -> "Polynomial":
        if not self.field.is_element(c):
            raise FieldMismatch(f"{c!r} is not an element of {self.field}")
        if not c:
            return self.zero
        return Polynomial(self, (((0,) * self.nvars, c),))

    def from_int(self, n: int) -> "Polynomial":
        return self.const(self.field.from_int(n))

    def gen(self, i: int) -> "Polynomial":
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, ((exps, self.field.one),))

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def term(self, exps, c) -> "Polynomial":
        return self.from_terms([(tuple(exps), c)])

    def from_terms(self, pairs) -> "Polynomial":
        """Build a polynomial from arbitrary (exps, coeff) pairs: validates,
        sorts, combines equal monomials, drops zeros."""
        field = self.field
        key = self.order.key
        checked = []
        for exps, c in pairs:
            exps = tuple(exps)
            if len(exps) != self.nvars:
                raise ArityMismatch(f"exponent width {len(exps)} in {self.nvars}-variable ring")
            for e in exps:
                if not isinstance(e, int) or e < 0:
                    raise InvalidExponent(f"exponents must be non-negative integers: {exps}")
                if e > MAX_EXPONENT:
                    raise InvalidExponent(f"exponent {e} exceeds {MAX_EXPONENT}")
            if not field.is_element(c):
                raise FieldMismatch(f"{c!r} is not an element of {field}")
            checked.append((key(exps), exps, c))
        checked.sort(key=lambda t: t[0], reverse=True)
        terms = []
        for k, exps, c in checked:
            if terms and terms[-1][0] == exps:
                c = field.add(terms[-1][1], c)
                if c:
                    terms[-1] = (exps, c)
                else:
                    terms.pop()
            elif c:
                terms.append((exps, c))
        return Polynomial(self, tuple(terms))

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.field == self.field
            and other.variables == self.variables
            and other.order == self.order
        )

    def __hash__(self):
        return hash((self.field, self.variables, self.order))

    def __repr__(self):
        return f"{self.field}[{','.join(self.variables)}]"


def _check_same_ring(a: "Polynomial", b: "Polynomial"):
    if a.ring != b.ring:
        raise RingMismatch(f"operands live in {a.ring} and {b.ring}")


def _merge_add(order, ta, tb, p, negate_b=False):
    """Merge two canonical term tuples, adding coefficients.

    Coefficient arithmetic is inlined: residues mod p when p is set,
    exact rational arithmetic otherwise.
    """
    key = order.key
    a = [(key(e), e, c) for e, c in ta]
    b = [(key(e), e, c) for e, c in tb]
    out = _merge_triples(a, b, p, negate_b)
    return tuple((e, c) for _, e, c in out)


def _merge_triples(a, b, p, negate_b=False):
    out = []
    push = out.append
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        ka = a[i][0]
        kb = b[j][0]
        if ka > kb:
            push(a[i])
            i += 1
        elif ka < kb:
            t = b[j]
            if negate_b:
                c = -t[2] % p if p else -t[2]
                push((t[0], t[1], c))
            else:
                push(t)
            j += 1
        else:
            ca = a[i][2]
            cb = b[j][2]
            c = ca - cb if negate_b else ca + cb
            if p:
                c %= p
            if c:
                push((ka, a[i][1], c))
            i += 1
            j += 1
    while i < na:
        push(a[i])
        i += 1
    if negate_b:
        while j < nb:
            t = b[j]
            c = -t[2] % p if p else -t[2]
            push((t[0], t[1], c))
            j += 1
    else:
        while j < nb:
            push(b[j])
            j += 1
    return out


class Polynomial:
    """Immutable polynomial value; construct via ring methods or arithmetic."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: tuple):
        # trusted constructor: terms must already be canonical
        self.ring = ring
        self.terms = terms
        self._hash = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self) -> int:
        """Largest term degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e, _ in self.terms)

    def leading_term(self):
        if not self.terms:
            raise ZeroDivisionError("zero polynomial has no leading term")
        return self.terms[0]

    def leading_monomial(self):
        return self.leading_term()[0]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        d = sum(self.terms[0][0])
        return all(sum(e) == d for e, _ in self.terms)

    def homogeneous_degree(self) -> int | None:
        """Common degree of all terms; None for zero, NotHomogeneous otherwise."""
        if not self.terms:
            return None
        d = sum(self.terms[0][0])
        for e, _ in self.terms[1:]:
            if sum(e) != d:
                raise NotHomogeneous(f"mixed degrees {d} and {sum(e)} in {self}")
        return d

    # -- arithmetic --

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        _check_same_ring(self, other)
        ring = self.ring
        terms = _merge_add(ring.order, self.terms, other.terms, ring.field.modulus)
        return Polynomial(ring, terms)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        _check_same_ring(self, other)
        ring = self.ring
        terms = _merge_add(ring.order, self.terms, other.terms, ring.field.modulus, negate_b=True)
        return Polynomial(ring, terms)

    def __neg__(self):
        ring = self.ring
        p = ring.field.modulus
        if p:
            terms = tuple((e, -c % p) for e, c in self.terms)
        else:
            terms = tuple((e, -c) for e, c in self.terms)
        return Polynomial(ring, terms)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        _check_same_ring(self, other)
        ring = self.ring
        if not self.terms or not other.terms:
            return ring.zero
        f, g = self.terms, other.terms
        if len(f) > len(g):
            f, g = g, f
        order = ring.order
        key = order.key
        k1 = order.key_one
        p = ring.field.modulus
        gk = [(key(e), e, c) for e, c in g]
        parts = []
        for e, c in f:
            dk = key(e) - k1
            if p:
                part = [(kg + dk, tuple(map(int.__add__, eg, e)), c * cg % p)
                        for kg, eg, cg in gk]
            else:
                part = [(kg + dk, tuple(map(int.__add__, eg, e)), c * cg)
                        for kg, eg, cg in gk]
            parts.append(part)
        while len(parts) > 1:
            nxt = [
                _merge_triples(parts[i], parts[i + 1], p)
                if i + 1 < len(parts) else parts[i]
                for i in range(0, len(parts), 2)
            ]
            parts = nxt
        result = parts[0]
        for _, e, _ in result:
            for x in e:
                if x > MAX_EXPONENT:
                    raise InvalidExponent(f"exponent {x} exceeds {MAX_EXPONENT} in product")
        return Polynomial(ring, tuple((e, c) for _, e, c in result))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise InvalidExponent(f"negative polynomial power {n}")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        """Multiply by a field element."""
        ring = self.ring
        if not ring.field.is_element(c):
            raise FieldMismatch(f"{c!r} is not an element of {ring.field}")
        if not c:
            return ring.zero
        p = ring.field.modulus
        if p:
            terms = tuple((e, co * c % p) for e, co in self.terms)
        else:
            terms = tuple((e, co * c) for e, co in self.terms)
        return Polynomial(ring, terms)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.terms[0][1]
        if lc == self.ring.field.one:
            return self
        return self.scale(self.ring.field.inv(lc))

    def mul_term(self, exps, c) -> "Polynomial":
        """Multiply by c * x^exps; cheaper than building a one-term polynomial."""
        ring = self.ring
        if not c:
            return ring.zero
        exps = tuple(exps)
        p = ring.field.modulus
        add = int.__add__
        if p:
            terms = tuple((tuple(map(add, e, exps)), co * c % p) for e, co in self.terms)
        else:
            terms = tuple((tuple(map(add, e, exps)), co * c) for e, co in self.terms)
        return Polynomial(ring, terms)

    def substitute(self, images, target: PolyRing | None = None) -> "Polynomial":
        """Evaluate at images[i] in place of variable i.

        All images must share one ring over the same field; that ring is the
        target.  Power tables per variable keep repeated exponents cheap.
        """
        ring = self.ring
        images = list(images)
        if len(images) != ring.nvars:
            raise ArityMismatch(f"{len(images)} images for {ring.nvars} variables")
        if target is None:
            if not images:
                raise ArityMismatch("cannot infer target ring without images")
            target = images[0].ring
        for im in images:
            if not isinstance(im, Polynomial) or im.ring != target:
                raise RingMismatch("images must all live in the target ring")
        if target.field != ring.field:
            raise FieldMismatch(f"cannot map coefficients from {ring.field} to {target.field}")
        powers: list[dict[int, Polynomial]] = [{} for _ in images]

        def power(i, k):
            cache = powers[i]
            got = cache.get(k)
            if got is None:
                if k == 1:
                    got = images[i]
                else:
                    half = power(i, k // 2)
                    got = half * half
                    if k & 1:
                        got = got * images[i]
                cache[k] = got
            return got

        acc = target.zero
        for e, c in self.terms:
            t = target.const(c)
            for i, ei in enumerate(e):
                if ei:
                    t = t * power(i, ei)
            acc = acc + t
        return acc

    # -- comparison / formatting --

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    def __str__(self):
        return poly_to_string(self)

    def __repr__(self):
        return f"<{poly_to_string(self)}>"


def poly_to_string(f: Polynomial) -> str:
    """Canonical text form; parses back to an equal polynomial.

    Terms in descending order; over QQ negative coefficients print with a
    leading minus, over GF(p) coefficients print as residues in [0, p).
    """
    if not f.terms:
        return "0"
    field = f.ring.field
    names = f.ring.variables
    rational = field.modulus is None
    pieces = []
    for e, c in f.terms:
        if rational and c < 0:
            sign = "-"
            c = -c
        else:
            sign = "+"
        factors = []
        for name, ei in zip(names, e):
            if ei == 1:
                factors.append(name)
            elif ei > 1:
                factors.append(f"{name}^{ei}")
        cs = field.coeff_str(c)
        if not factors:
            body = cs
        elif cs == "1":
            body = "*".join(factors)
        else:
            body = "*".join([cs] + factors)
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text

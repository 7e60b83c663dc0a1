"""Coefficient fields: GF(p) for prime p < 2**31, and the rationals QQ.

Field elements are plain values (int residues in [0, p) for GF(p), gmpy2.mpq
for QQ); a FieldSpec carries the operations.  Hot loops elsewhere read
``field.modulus`` once and inline the arithmetic.
"""

from __future__ import annotations

import re

from gmpy2 import mpq

from .errors import DivisionByZero, FieldMismatch, InvalidParameter

_MAX_PRIME = 1 << 31

# type of a coefficient: int for GF(p), mpq for QQ
FieldElement = object

_MPQ_TYPE = type(mpq(0))


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; bases 2,3,5,7 decide all n < 3.2e9."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldSpec:
    """A coefficient field.  Use GF(p) or QQ() to construct one."""

    kind: str
    modulus: int | None  # p for GF(p), None for QQ

    def characteristic(self) -> int:
        return self.modulus or 0

    def from_int(self, n: int):
        raise NotImplementedError

    def is_element(self, x) -> bool:
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        if self.is_element(b) and b == self.zero:
            raise DivisionByZero(f"division by zero in {self}")
        return self.mul(a, self.inv(b))

    def coeff_str(self, c) -> str:
        return str(c)

    @staticmethod
    def from_text(text: str) -> "FieldSpec":
        """Parse the field spelling used in job files: QQ or GF(p)."""
        text = text.strip()
        if text == "QQ":
            return QQ()
        m = re.fullmatch(r"GF\(\s*(\d+)\s*\)", text)
        if m:
            return GF(int(m.group(1)))
        raise InvalidParameter(f"unrecognized field {text!r}; expected QQ or GF(p)")


class PrimeField(FieldSpec):
    kind = "prime"

    __slots__ = ("modulus", "zero", "one")

    def __init__(self, p: int):
        if not isinstance(p, int) or not 2 <= p < _MAX_PRIME:
            raise InvalidParameter(f"GF modulus must be an integer in [2, 2^31): {p!r}")
        if not _is_prime(p):
            raise InvalidParameter(f"GF modulus must be prime: {p}")
        self.modulus = p
        self.zero = 0
        self.one = 1 % p

    def from_int(self, n: int):
        return n % self.modulus

    def is_element(self, x) -> bool:
        return isinstance(x, int) and not isinstance(x, bool) and 0 <= x < self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def mul(self, a, b):
        return a * b % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def inv(self, a):
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self}")
        return pow(a, -1, self.modulus)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("GF", self.modulus))

    def __repr__(self):
        return f"GF({self.modulus})"


class RationalField(FieldSpec):
    kind = "rationals"

    __slots__ = ("modulus", "zero", "one")

    def __init__(self):
        self.modulus = None
        self.zero = mpq(0)
        self.one = mpq(1)

    def from_int(self, n: int):
        return mpq(n)

    def is_element(self, x) -> bool:
        return isinstance(x, _MPQ_TYPE)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero in QQ")
        return 1 / a

    def coeff_str(self, c) -> str:
        n, d = c.numerator, c.denominator
        return str(n) if d == 1 else f"{n}/{d}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


_QQ_SINGLETON = RationalField()


def QQ() -> RationalField:
    return _QQ_SINGLETON


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_op(field: FieldSpec, a, b, op: str):
    """Apply a named binary operation, validating both operands first.

    Operands from a different field (wrong type or out-of-range residue)
    raise FieldMismatch; op is one of add/sub/mul/div.
    """
    for x in (a, b):
        if not field.is_element(x):
            raise FieldMismatch(f"{x!r} is not an element of {field}")
    try:
        return getattr(field, op)(a, b)
    except AttributeError:
        raise InvalidParameter(f"unknown field operation {op!r}") from None

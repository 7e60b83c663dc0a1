"""Parsing: polynomial expressions, ring spellings, and job files.

Polynomial grammar (recursive descent, no implicit multiplication):

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := ['-'] (var | rational | '(' expr ')') ['^' integer]
    rational := integer ['/' integer]

'#' starts a comment running to end of line.  Integer literals are unbounded;
exponents must be non-negative integer literals.  Rational literals exist so
that canonical serialized output (which can carry monic coefficients such as
1/2) reads back exactly.

A job file is line-oriented:

    ring QQ[x,y,z]            # or GF(9001)[x,y,z]; exactly one, first
    ideal I = g1; g2; g3      # or a built-in: ideal I = @fermat(3)
    map phi = f0; f1; f2      # or: map phi = @ex1
    check I 3 2
    roundtrip I phi 3 2
    scan I 3 2
    invariants I
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .coeff import FieldSpec
from .errors import (
    ArityMismatch,
    DivisionByZero,
    DuplicateName,
    InvalidParameter,
    ParseError,
    UnknownName,
    UnknownVariable,
)
from .polyring import Polynomial, PolyRing

_TOKEN_RE = re.compile(r"\d+|[A-Za-z_][A-Za-z0-9_]*|[-+*^/()\[\],;=@]|\S")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", or the operator character itself
    text: str
    pos: tuple[int, int]  # 1-based (line, column)


def _tokenize(text: str, first_line: int = 1) -> list[Token]:
    tokens = []
    for lineno, line in enumerate(text.splitlines() or [""], start=first_line):
        hash_at = line.find("#")
        if hash_at >= 0:
            line = line[:hash_at]
        for m in _TOKEN_RE.finditer(line):
            t = m.group()
            pos = (lineno, m.start() + 1)
            if t.isdigit():
                tokens.append(Token("int", t, pos))
            elif t[0].isalpha() or t[0] == "_":
                tokens.append(Token("ident", t, pos))
            elif t in "-+*^/()[],;=@":
                tokens.append(Token(t, t, pos))
            else:
                raise ParseError(f"unexpected character {t!r}", pos)
    return tokens


# -- abstract syntax --


@dataclass(frozen=True)
class Var:
    name: str
    pos: tuple[int, int]


@dataclass(frozen=True)
class IntLit:
    value: int
    pos: tuple[int, int]


@dataclass(frozen=True)
class RatLit:
    num: int
    den: int
    pos: tuple[int, int]


@dataclass(frozen=True)
class Neg:
    child: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: tuple[int, int]


@dataclass(frozen=True)
class Paren:
    child: object


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> Token:
        t = self.peek()
        if t is None:
            last = self.tokens[-1].pos if self.tokens else (1, 1)
            raise ParseError("unexpected end of input", last)
        self.i += 1
        return t

    def expect(self, kind: str) -> Token:
        t = self.peek()
        if t is None or t.kind != kind:
            got = "end of input" if t is None else repr(t.text)
            pos = t.pos if t else (self.tokens[-1].pos if self.tokens else (1, 1))
            raise ParseError(f"expected {kind!r}, got {got}", pos)
        self.i += 1
        return t

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    # expr := term (('+'|'-') term)*
    def expr(self):
        node = self.term()
        while True:
            t = self.peek()
            if t and t.kind == "+":
                self.next()
                node = Add(node, self.term())
            elif t and t.kind == "-":
                self.next()
                node = Sub(node, self.term())
            else:
                return node

    # term := factor ('*' factor)*
    def term(self):
        node = self.factor()
        while True:
            t = self.peek()
            if t and t.kind == "*":
                self.next()
                node = Mul(node, self.factor())
            else:
                return node

    # factor := ['-'] (var | rational | '(' expr ')') ['^' integer]
    def factor(self):
        t = self.peek()
        if t and t.kind == "-":
            self.next()
            return Neg(self.factor())
        t = self.next()
        if t.kind == "ident":
            node = Var(t.text, t.pos)
        elif t.kind == "int":
            num = int(t.text)
            nxt = self.peek()
            if nxt and nxt.kind == "/":
                self.next()
                den_tok = self.expect("int")
                node = RatLit(num, int(den_tok.text), den_tok.pos)
            else:
                node = IntLit(num, t.pos)
        elif t.kind == "(":
            inner = self.expr()
            self.expect(")")
            node = Paren(inner)
        else:
            raise ParseError(f"expected a variable, number, or '(', got {t.text!r}", t.pos)
        nxt = self.peek()
        if nxt and nxt.kind == "^":
            self.next()
            e = self.peek()
            if e is None or e.kind != "int":
                got = "end of input" if e is None else repr(e.text)
                pos = e.pos if e else nxt.pos
                raise ParseError(f"exponent must be a non-negative integer, got {got}", pos)
            self.next()
            node = Pow(node, int(e.text), e.pos)
        return node


def _evaluate(node, ring: PolyRing) -> Polynomial:
    if isinstance(node, Var):
        try:
            i = ring.variables.index(node.name)
        except ValueError:
            raise UnknownVariable(node.name, node.pos) from None
        return ring.gen(i)
    if isinstance(node, IntLit):
        return ring.from_int(node.value)
    if isinstance(node, RatLit):
        f = ring.field
        try:
            c = f.div(f.from_int(node.num), f.from_int(node.den))
        except DivisionByZero:
            raise DivisionByZero(
                f"coefficient {node.num}/{node.den} has zero denominator in {f}"
                f" at {node.pos[0]}:{node.pos[1]}"
            ) from None
        return ring.const(c)
    if isinstance(node, Neg):
        return -_evaluate(node.child, ring)
    if isinstance(node, Add):
        return _evaluate(node.left, ring) + _evaluate(node.right, ring)
    if isinstance(node, Sub):
        return _evaluate(node.left, ring) - _evaluate(node.right, ring)
    if isinstance(node, Mul):
        return _evaluate(node.left, ring) * _evaluate(node.right, ring)
    if isinstance(node, Pow):
        return _evaluate(node.base, ring) ** node.exponent
    if isinstance(node, Paren):
        return _evaluate(node.child, ring)
    raise TypeError(f"unknown node {node!r}")


def parse_polynomial_ast(text: str):
    """Parse to the syntax tree without evaluating."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial expression", (1, 1))
    p = _Parser(tokens)
    node = p.expr()
    if not p.at_end():
        t = p.peek()
        raise ParseError(f"trailing input {t.text!r}", t.pos)
    return node


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    return _evaluate(parse_polynomial_ast(text), ring)


_RING_RE = re.compile(r"^\s*(QQ|GF\(\s*\d+\s*\))\s*\[([^\]]*)\]\s*$")


def parse_ring(text: str) -> PolyRing:
    """Parse a ring spelling such as QQ[x,y,z] or GF(9001)[x,y,z]."""
    m = _RING_RE.match(text)
    if not m:
        raise ParseError(f"malformed ring {text!r}; expected QQ[vars] or GF(p)[vars]", (1, 1))
    fld = FieldSpec.from_text(m.group(1))
    names = [v.strip() for v in m.group(2).split(",") if v.strip()]
    if not names:
        raise ParseError(f"ring {text!r} declares no variables", (1, 1))
    return PolyRing(fld, names)


# -- job files --


@dataclass
class IdealDecl:
    name: str
    generators: list[Polynomial]
    catalog: str | None = None  # catalog spelling when declared via @name
    entry: object = None        # CatalogEntry when declared via @name


@dataclass
class MapDecl:
    name: str
    images: list[Polynomial]
    catalog: str | None = None


@dataclass(frozen=True)
class CheckTask:
    ideal: str
    m: int
    r: int
    line: int


@dataclass(frozen=True)
class RoundtripTask:
    ideal: str
    map: str
    m: int
    r: int
    line: int


@dataclass(frozen=True)
class ScanTask:
    ideal: str
    smax: int
    tmax: int
    line: int


@dataclass(frozen=True)
class InvariantsTask:
    ideal: str
    line: int


@dataclass
class JobFile:
    ring: PolyRing
    declared_field: FieldSpec | None = None  # set when a field override is active
    ideals: dict[str, IdealDecl] = dc_field(default_factory=dict)
    maps: dict[str, MapDecl] = dc_field(default_factory=dict)
    tasks: list = dc_field(default_factory=list)


def _split_on(tokens: list[Token], kind: str) -> list[list[Token]]:
    groups: list[list[Token]] = [[]]
    for t in tokens:
        if t.kind == kind:
            groups.append([])
        else:
            groups[-1].append(t)
    return groups


def _parse_expr_tokens(tokens: list[Token], ring: PolyRing) -> Polynomial:
    if not tokens:
        raise ParseError("empty expression", (1, 1))
    p = _Parser(tokens)
    node = p.expr()
    if not p.at_end():
        t = p.peek()
        raise ParseError(f"trailing input {t.text!r}", t.pos)
    return _evaluate(node, ring)


def _parse_catalog_ref(tokens: list[Token]) -> tuple[str, int | None] | None:
    """Recognize '@name' or '@name(arg)'; None when tokens are not a reference."""
    if not tokens or tokens[0].kind != "@":
        return None
    if len(tokens) < 2 or tokens[1].kind != "ident":
        raise ParseError("expected a name after '@'", tokens[0].pos)
    name = tokens[1].text
    if len(tokens) == 2:
        return name, None
    if (
        len(tokens) == 5
        and tokens[2].kind == "("
        and tokens[3].kind == "int"
        and tokens[4].kind == ")"
    ):
        return name, int(tokens[3].text)
    raise ParseError(f"malformed catalog reference @{name}...", tokens[0].pos)


def parse_job(text: str, field_override: FieldSpec | None = None) -> JobFile:
    """Parse and name-check a job file; computation is left to the runner.

    With field_override, the declared ring's field is replaced before any
    expression is evaluated (all declarations re-read over the new field) and
    the declared field is kept on the result for reporting.
    """
    from . import catalog  # deferred: catalog builds polynomials via this module

    job: JobFile | None = None
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        tokens = _tokenize(raw, first_line=lineno)
        if not tokens:
            continue
        head = tokens[0]
        if head.kind != "ident":
            raise ParseError(f"statement must start with a keyword, got {head.text!r}", head.pos)
        kw = head.text
        rest = tokens[1:]
        if kw == "ring":
            if job is not None:
                raise DuplicateName(f"second ring declaration on line {lineno}")
            # reassemble the ring spelling from raw text after the keyword
            ring_text = raw.split("#")[0]
            ring_text = ring_text[ring_text.index("ring") + 4:]
            ring = parse_ring(ring_text)
            declared = None
            if field_override is not None and field_override != ring.field:
                declared = ring.field
                ring = PolyRing(field_override, ring.variables, ring.order)
            job = JobFile(ring=ring, declared_field=declared)
            continue
        if job is None:
            raise ParseError("ring must be declared before anything else", head.pos)
        ring = job.ring
        if kw in ("ideal", "map"):
            if len(rest) < 2 or rest[0].kind != "ident" or rest[1].kind != "=":
                raise ParseError(f"expected '{kw} NAME = ...'", head.pos)
            name = rest[0].text
            if name in job.ideals or name in job.maps:
                raise DuplicateName(f"name {name!r} already defined (line {lineno})")
            rhs = rest[2:]
            ref = _parse_catalog_ref(rhs)
            if kw == "ideal":
                if ref is not None:
                    entry = catalog.entry(ref[0], ref[1], ring)
                    decl = IdealDecl(name, list(entry.generators),
                                     catalog=_ref_spelling(ref), entry=entry)
                else:
                    gens = [_parse_expr_tokens(g, ring) for g in _split_on(rhs, ";") if g]
                    if not gens:
                        raise ParseError("ideal declaration needs generators", head.pos)
                    decl = IdealDecl(name, gens)
                job.ideals[name] = decl
            else:
                if ref is not None:
                    if ref[1] is not None:
                        raise ParseError("map references take no argument", head.pos)
                    images = catalog.map_images(ref[0], ring)
                    job.maps[name] = MapDecl(name, images, catalog=_ref_spelling(ref))
                else:
                    images = [_parse_expr_tokens(g, ring) for g in _split_on(rhs, ";") if g]
                    if len(images) != ring.nvars:
                        raise ArityMismatch(
                            f"map {name!r} has {len(images)} images for {ring.nvars} variables"
                        )
                    job.maps[name] = MapDecl(name, images)
            continue
        if kw in ("check", "scan"):
            args = _task_args(kw, rest, ("ident", "int", "int"), lineno)
            _require_ideal(job, args[0], lineno)
            a, b = int(args[1]), int(args[2])
            _require_positive(kw, (a, b), lineno)
            if kw == "check":
                job.tasks.append(CheckTask(args[0], a, b, lineno))
            else:
                job.tasks.append(ScanTask(args[0], a, b, lineno))
            continue
        if kw == "roundtrip":
            args = _task_args(kw, rest, ("ident", "ident", "int", "int"), lineno)
            _require_ideal(job, args[0], lineno)
            if args[1] not in job.maps:
                raise UnknownName(f"unknown map {args[1]!r} on line {lineno}")
            m, r = int(args[2]), int(args[3])
            _require_positive(kw, (m, r), lineno)
            job.tasks.append(RoundtripTask(args[0], args[1], m, r, lineno))
            continue
        if kw == "invariants":
            args = _task_args(kw, rest, ("ident",), lineno)
            _require_ideal(job, args[0], lineno)
            job.tasks.append(InvariantsTask(args[0], lineno))
            continue
        raise ParseError(f"unknown statement {kw!r}", head.pos)
    if job is None:
        raise ParseError("job file declares no ring", (1, 1))
    return job


def _ref_spelling(ref: tuple[str, int | None]) -> str:
    name, arg = ref
    return f"@{name}" if arg is None else f"@{name}({arg})"


def _task_args(kw: str, rest: list[Token], kinds: tuple, lineno: int) -> list[str]:
    if len(rest) != len(kinds) or any(t.kind != k for t, k in zip(rest, kinds)):
        shape = " ".join(kinds)
        raise ParseError(f"expected '{kw} {shape}' on line {lineno}",
                         rest[0].pos if rest else (lineno, 1))
    return [t.text for t in rest]


def _require_ideal(job: JobFile, name: str, lineno: int):
    if name not in job.ideals:
        raise UnknownName(f"unknown ideal {name!r} on line {lineno}")


def _require_positive(kw: str, values: tuple, lineno: int):
    for v in values:
        if v < 1:
            raise InvalidParameter(f"{kw} arguments must be >= 1 on line {lineno}")

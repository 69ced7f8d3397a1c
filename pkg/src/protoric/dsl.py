"""The `.twr` tower-description language.

A hand-written lexer and recursive-descent parser with byte-accurate spans,
producing a normalized TowerDocument; elaboration turns documents into
validated towers.  Level bodies may give explicit generators, cone rays
(elaborated through Hilbert bases), or a single binomial equation (elaborated
through the cokernel of its exponent-difference vector).

Grammar:

    document = "tower" IDENT "{" item* "}"
    item     = level | connect | family
    level    = "level" INT "{" ("ambient" INT ";")? spec ";" "}"
    spec     = "generators" vec+ | "rays" vec+ | "equation" monomial "=" monomial
    connect  = "connect" INT "->" INT "matrix" matrix ";"
    family   = "family" ("torus"|"affine_space"|"double_cover") "depth" INT ";"
    vec      = "(" INT ("," INT)* ")"
    matrix   = "[" row ("," row)* "]"      row = "[" INT ("," INT)* "]"
    monomial = IDENT ("^" INT)? ("*" IDENT ("^" INT)?)*

Comments run from "#" to end of line.  UTF-8, LF or CRLF.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import cones
from .errors import NonSurjectiveConnect, NotPointed, ProtoricError
from .lattice import Matrix, Vec, smith_normal_form, vec_gcd
from .semigroups import hom_build, semigroup_from_generators
from .towers import FAMILY_RULES, ProAffineTower, family_tower, tower_build


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    line: int
    column: int
    length: int
    message: str
    witness: Optional[object] = None

    def format(self) -> str:
        return f"{self.severity} at {self.line}:{self.column}: {self.message}"


class ParseFailure(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


@dataclass(frozen=True)
class LevelDecl:
    index: int
    kind: str  # "generators" | "rays" | "equation"
    ambient: Optional[int]
    vectors: tuple[Vec, ...] = ()
    equation: Optional[tuple[tuple[tuple[str, int], ...], tuple[tuple[str, int], ...]]] = None


@dataclass(frozen=True)
class ConnectDecl:
    source: int
    target: int
    matrix: Matrix


@dataclass(frozen=True)
class FamilyDecl:
    rule: str
    depth: int


@dataclass(frozen=True)
class TowerDocument:
    name: str
    levels: tuple[LevelDecl, ...]  # sorted by index
    connects: tuple[ConnectDecl, ...]  # sorted by source
    family: Optional[FamilyDecl]


@dataclass
class ParseResult:
    document: Optional[TowerDocument]
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.document is not None and not any(
            d.severity == "error" for d in self.diagnostics)


# ---------------------------------------------------------------------------
# lexer


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT INT PUNCT EOF
    value: str
    line: int
    column: int


PUNCT = {"{", "}", "(", ")", "[", "]", ",", ";", "^", "*", "=", "->"}


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\r":
            i += 1
            continue
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "-":
            if i + 1 < n and text[i + 1] == ">":
                tokens.append(Token("PUNCT", "->", line, col))
                i += 2
                col += 2
                continue
            if i + 1 < n and text[i + 1].isdigit():
                j = i + 1
                while j < n and text[j].isdigit():
                    j += 1
                tokens.append(Token("INT", text[i:j], line, col))
                col += j - i
                i = j
                continue
            raise ParseFailure(Diagnostic("error", line, col, 1, "stray '-'"))
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("INT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("IDENT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in PUNCT:
            tokens.append(Token("PUNCT", ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseFailure(Diagnostic("error", line, col, 1, f"unexpected character {ch!r}"))
    tokens.append(Token("EOF", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def fail(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.peek()
        length = max(1, len(tok.value))
        raise ParseFailure(Diagnostic("error", tok.line, tok.column, length, message))

    def expect_punct(self, value: str) -> Token:
        tok = self.peek()
        if tok.kind != "PUNCT" or tok.value != value:
            self.fail(f"expected {value!r}, found {tok.value or 'end of input'!r}")
        return self.advance()

    def expect_ident(self, what: str = "identifier") -> Token:
        tok = self.peek()
        if tok.kind != "IDENT":
            self.fail(f"expected {what}, found {tok.value or 'end of input'!r}")
        return self.advance()

    def expect_int(self) -> int:
        tok = self.peek()
        if tok.kind != "INT":
            self.fail(f"expected integer, found {tok.value or 'end of input'!r}")
        self.advance()
        return int(tok.value)

    def keyword(self, word: str) -> Token:
        tok = self.peek()
        if tok.kind != "IDENT" or tok.value != word:
            self.fail(f"expected keyword {word!r}, found {tok.value or 'end of input'!r}")
        return self.advance()

    # productions ----------------------------------------------------------

    def document(self) -> TowerDocument:
        self.keyword("tower")
        name = self.expect_ident("tower name").value
        self.expect_punct("{")
        levels: dict[int, LevelDecl] = {}
        connects: list[ConnectDecl] = []
        family: Optional[FamilyDecl] = None
        while not (self.peek().kind == "PUNCT" and self.peek().value == "}"):
            tok = self.peek()
            if tok.kind != "IDENT":
                self.fail("expected 'level', 'connect' or 'family'")
            if tok.value == "level":
                decl = self.level()
                if decl.index in levels:
                    self.fail(f"level {decl.index} declared twice", tok)
                levels[decl.index] = decl
            elif tok.value == "connect":
                connects.append(self.connect())
            elif tok.value == "family":
                if family is not None:
                    self.fail("family declared twice", tok)
                family = self.family()
            else:
                self.fail(f"expected 'level', 'connect' or 'family', found {tok.value!r}")
        self.expect_punct("}")
        if self.peek().kind != "EOF":
            self.fail("trailing input after document")
        return TowerDocument(
            name,
            tuple(levels[i] for i in sorted(levels)),
            tuple(sorted(connects, key=lambda c: (c.source, c.target))),
            family,
        )

    def level(self) -> LevelDecl:
        self.keyword("level")
        index = self.expect_int()
        self.expect_punct("{")
        ambient = None
        if self.peek().kind == "IDENT" and self.peek().value == "ambient":
            self.advance()
            ambient = self.expect_int()
            self.expect_punct(";")
        tok = self.peek()
        if tok.kind != "IDENT" or tok.value not in ("generators", "rays", "equation"):
            self.fail("expected 'generators', 'rays' or 'equation'")
        kind = self.advance().value
        if kind == "equation":
            lhs = self.monomial()
            self.expect_punct("=")
            rhs = self.monomial()
            decl = LevelDecl(index, kind, ambient, (), (lhs, rhs))
        else:
            vecs = [self.vec()]
            while self.peek().kind == "PUNCT" and self.peek().value == "(":
                vecs.append(self.vec())
            decl = LevelDecl(index, kind, ambient, tuple(vecs), None)
        self.expect_punct(";")
        self.expect_punct("}")
        return decl

    def connect(self) -> ConnectDecl:
        self.keyword("connect")
        source = self.expect_int()
        self.expect_punct("->")
        target = self.expect_int()
        self.keyword("matrix")
        matrix = self.matrix()
        self.expect_punct(";")
        return ConnectDecl(source, target, matrix)

    def family(self) -> FamilyDecl:
        tok = self.keyword("family")
        rule = self.expect_ident("family rule").value
        if rule not in FAMILY_RULES:
            self.fail(f"unknown family rule {rule!r}", tok)
        self.keyword("depth")
        depth = self.expect_int()
        self.expect_punct(";")
        return FamilyDecl(rule, depth)

    def vec(self) -> Vec:
        self.expect_punct("(")
        entries = [self.expect_int()]
        while self.peek().kind == "PUNCT" and self.peek().value == ",":
            self.advance()
            entries.append(self.expect_int())
        self.expect_punct(")")
        return tuple(entries)

    def matrix(self) -> Matrix:
        self.expect_punct("[")
        rows = [self.matrix_row()]
        while self.peek().kind == "PUNCT" and self.peek().value == ",":
            self.advance()
            rows.append(self.matrix_row())
        self.expect_punct("]")
        if any(len(r) != len(rows[0]) for r in rows):
            self.fail("ragged matrix rows")
        return tuple(rows)

    def matrix_row(self) -> Vec:
        self.expect_punct("[")
        entries = [self.expect_int()]
        while self.peek().kind == "PUNCT" and self.peek().value == ",":
            self.advance()
            entries.append(self.expect_int())
        self.expect_punct("]")
        return tuple(entries)

    def monomial(self) -> tuple[tuple[str, int], ...]:
        factors = [self.monomial_factor()]
        while self.peek().kind == "PUNCT" and self.peek().value == "*":
            self.advance()
            factors.append(self.monomial_factor())
        return tuple(factors)

    def monomial_factor(self) -> tuple[str, int]:
        name = self.expect_ident("variable").value
        exponent = 1
        if self.peek().kind == "PUNCT" and self.peek().value == "^":
            self.advance()
            exponent = self.expect_int()
        return name, exponent


def parse_tower(text: str) -> ParseResult:
    """Parse a `.twr` document; failures come back as span-carrying
    diagnostics rather than exceptions."""
    try:
        doc = _Parser(tokenize(text)).document()
        return ParseResult(doc, [])
    except ParseFailure as exc:
        return ParseResult(None, [exc.diagnostic])


# ---------------------------------------------------------------------------
# rendering documents back to canonical source


def _render_monomial(mono) -> str:
    parts = []
    for name, exp in mono:
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return "*".join(parts)


def render_document(doc: TowerDocument) -> str:
    lines = [f"tower {doc.name} {{"]
    for lv in doc.levels:
        lines.append(f"  level {lv.index} {{")
        if lv.ambient is not None:
            lines.append(f"    ambient {lv.ambient};")
        if lv.kind == "equation":
            lhs, rhs = lv.equation
            lines.append(f"    equation {_render_monomial(lhs)} = {_render_monomial(rhs)};")
        else:
            vecs = " ".join("(" + ",".join(str(x) for x in v) + ")" for v in lv.vectors)
            lines.append(f"    {lv.kind} {vecs};")
        lines.append("  }")
    for c in doc.connects:
        rows = ",".join("[" + ",".join(str(x) for x in row) + "]" for row in c.matrix)
        lines.append(f"  connect {c.source} -> {c.target} matrix [{rows}];")
    if doc.family is not None:
        lines.append(f"  family {doc.family.rule} depth {doc.family.depth};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# elaboration into towers


def _elaborate_equation(lhs, rhs):
    """Generator images of the lattice quotient presented by one binomial.

    Variables are read off in order of first appearance; the quotient of Z^n
    by the exponent-difference vector must be torsion free (the vector must
    be primitive), and the images of the unit vectors under a cokernel map
    become the level's generators.
    """
    variables: list[str] = []
    for mono in (lhs, rhs):
        for name, _ in mono:
            if name not in variables:
                variables.append(name)
    n = len(variables)
    diff = [0] * n
    for mono, sign in ((lhs, 1), (rhs, -1)):
        for name, exp in mono:
            diff[variables.index(name)] += sign * exp
    u = tuple(diff)
    if not any(u):
        raise ProtoricError("equation relates a monomial to itself")
    if vec_gcd(u) != 1:
        raise ProtoricError("not a lattice quotient — torsion detected")
    column = tuple((x,) for x in u)  # n x 1
    snf = smith_normal_form(column)
    # rows 2..n of U give a surjection Z^n -> Z^{n-1} with kernel Z u
    q = tuple(snf.u[r] for r in range(1, n))
    images = [tuple(row[j] for row in q) for j in range(n)]
    return images, variables


def elaborate_level(decl: LevelDecl):
    """The affine semigroup a level declaration denotes."""
    if decl.kind == "generators":
        ambient = decl.ambient if decl.ambient is not None else len(decl.vectors[0])
        return semigroup_from_generators(ambient, decl.vectors)
    if decl.kind == "rays":
        ambient = decl.ambient if decl.ambient is not None else len(decl.vectors[0])
        cone = cones.cone_from_rays(ambient, decl.vectors)
        if not cone.pointed:
            raise NotPointed(f"level {decl.index}: rays span a non-pointed cone")
        hb = cones.hilbert_basis(cone)
        return semigroup_from_generators(ambient, hb.elements)
    images, _ = _elaborate_equation(*decl.equation)
    ambient = len(images[0]) if images else 0
    return semigroup_from_generators(ambient, images)


def elaborate(doc: TowerDocument) -> ProAffineTower:
    """Build and validate the tower a document describes."""
    family = doc.family.rule if doc.family else None
    if not doc.levels:
        if doc.family is None:
            raise ProtoricError("document declares neither levels nor a family")
        return family_tower(doc.family.rule, doc.family.depth)
    indices = [lv.index for lv in doc.levels]
    if indices != list(range(1, len(indices) + 1)):
        raise ProtoricError(f"level indices must be contiguous from 1, got {indices}")
    semigroups = [elaborate_level(lv) for lv in doc.levels]
    wanted = {(i + 2, i + 1) for i in range(len(semigroups) - 1)}
    declared = {(c.source, c.target) for c in doc.connects}
    if declared != wanted:
        missing = sorted(wanted - declared)
        extra = sorted(declared - wanted)
        detail = []
        if missing:
            detail.append(f"missing connects {missing}")
        if extra:
            detail.append(f"unexpected connects {extra}")
        raise ProtoricError("; ".join(detail))
    homs = []
    for i in range(len(semigroups) - 1):
        decl = next(c for c in doc.connects if c.source == i + 2)
        homs.append(hom_build(semigroups[i + 1], semigroups[i], decl.matrix))
    return tower_build(semigroups, homs, family)


def diagnostics_from_error(exc: ProtoricError) -> Diagnostic:
    """Wrap an elaboration/validation failure as a document-level diagnostic."""
    witness = getattr(exc, "witness", None)
    return Diagnostic("error", 1, 1, 1, str(exc), witness)


__all__ = [
    "Diagnostic", "ParseResult", "TowerDocument", "LevelDecl", "ConnectDecl",
    "FamilyDecl", "parse_tower", "render_document", "elaborate",
    "elaborate_level", "diagnostics_from_error", "NonSurjectiveConnect",
]

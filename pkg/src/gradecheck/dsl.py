"""A small language for describing graded quotient rings.

::

    # the ring line is optional; default field GF(32003)
    ring GF(32003)[x,y]
    ideal x^3*y - x*y^3

Grammar (one statement per line, ``#`` starts a comment)::

    ring   := 'ring' FIELD '[' NAME (',' NAME)* ']'
    FIELD  := 'QQ' | 'GF' '(' INT ')'
    ideal  := 'ideal' [poly (',' poly)*]
    poly   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' poly ')'

Several ``ideal`` lines are joined.  Without a ring line the variables are
taken in order of first appearance.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field

from .errors import NotHomogeneousError, ParseError
from .fields import DEFAULT_PRIME, GF, QQ, Field, _is_prime
from .groebner import Ideal
from .polys import MAX_VARIABLES, PolyRing, Polynomial

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^(),\[\]]))")


@dataclass
class _Tok:
    kind: str  # 'int', 'name', 'op', 'end'
    text: str
    line: int
    col: int


def _tokenize(text: str, line: int, col0: int = 1) -> list[_Tok]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            j = pos
            while j < n and text[j].isspace():
                j += 1
            raise ParseError(f"unexpected character {text[j]!r}", line, col0 + j)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), line, col0 + start))
        pos = m.end()
    toks.append(_Tok("end", "", line, col0 + len(text.rstrip())))
    return toks


class _PolyParser:
    def __init__(self, toks: list[_Tok], ring: PolyRing):
        self.toks = toks
        self.i = 0
        self.ring = ring
        self.index = {v: k for k, v in enumerate(ring.names)}

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.cur
        return ParseError(msg, tok.line, tok.col)

    def accept(self, text):
        if self.cur.kind == "op" and self.cur.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            found = self.cur.text or "end of line"
            raise self.error(f"expected {text!r}, found {found!r}")

    def poly_list(self) -> list[Polynomial]:
        out = []
        if self.cur.kind == "end":
            return out
        out.append(self.poly())
        while self.accept(","):
            out.append(self.poly())
        if self.cur.kind != "end":
            raise self.error(f"unexpected {self.cur.text!r}")
        return out

    def poly(self) -> Polynomial:
        acc = self.term()
        while True:
            if self.accept("+"):
                acc = acc + self.term()
            elif self.accept("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> Polynomial:
        acc = self.unary()
        while self.accept("*"):
            acc = acc * self.unary()
        return acc

    def unary(self) -> Polynomial:
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.accept("^"):
            tok = self.cur
            if tok.kind != "int":
                raise self.error("exponent must be a non-negative integer")
            self.i += 1
            return base ** int(tok.text)
        return base

    def atom(self) -> Polynomial:
        tok = self.cur
        if tok.kind == "int":
            self.i += 1
            return self.ring(int(tok.text))
        if tok.kind == "name":
            if tok.text not in self.index:
                raise self.error(f"unknown variable {tok.text!r}")
            self.i += 1
            return self.ring.gens[self.index[tok.text]]
        if self.accept("("):
            p = self.poly()
            self.expect(")")
            return p
        raise self.error(f"unexpected {tok.text or 'end of line'!r}")


def parse_polys(text: str, ring: PolyRing, line: int = 1) -> list[Polynomial]:
    """Comma-separated polynomials over ``ring``."""
    return _PolyParser(_tokenize(text, line), ring).poly_list()


def _parse_field(toks: list[_Tok], i: int) -> tuple[Field, int]:
    tok = toks[i]
    if tok.kind == "name" and tok.text == "QQ":
        return QQ, i + 1
    if tok.kind == "name" and tok.text == "GF":
        if toks[i + 1].text != "(" or toks[i + 2].kind != "int" or toks[i + 3].text != ")":
            raise ParseError("expected GF(<prime>)", tok.line, tok.col)
        p = int(toks[i + 2].text)
        if not _is_prime(p):
            raise ParseError(f"{p} is not prime", tok.line, toks[i + 2].col)
        return GF(p), i + 4
    raise ParseError("field must be QQ or GF(p)", tok.line, tok.col)


def parse_field(text: str) -> Field:
    toks = _tokenize(text.strip(), 1)
    K, i = _parse_field(toks, 0)
    if toks[i].kind != "end":
        raise ParseError(f"unexpected {toks[i].text!r}", 1, toks[i].col)
    return K


def _parse_ring_line(body: str, line: int, col0: int, order) -> PolyRing:
    toks = _tokenize(body, line, col0)
    K, i = _parse_field(toks, 0)
    if toks[i].text != "[":
        raise ParseError("expected '[' after the field", line, toks[i].col)
    i += 1
    names = []
    while True:
        tok = toks[i]
        if tok.kind != "name":
            raise ParseError("expected a variable name", line, tok.col)
        if tok.text in names:
            raise ParseError(f"duplicate variable {tok.text!r}", line, tok.col)
        names.append(tok.text)
        i += 1
        if toks[i].text == ",":
            i += 1
            continue
        if toks[i].text == "]":
            i += 1
            break
        raise ParseError("expected ',' or ']'", line, toks[i].col)
    if toks[i].kind != "end":
        raise ParseError(f"unexpected {toks[i].text!r}", line, toks[i].col)
    if len(names) > MAX_VARIABLES:
        raise ParseError(f"at most {MAX_VARIABLES} variables are supported", line, col0)
    return PolyRing(names, K, order)


@dataclass
class Session:
    ring: PolyRing
    ideal: Ideal
    command: str | None = None
    seed: object = 0
    options: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)


def parse_input(text: str, order="grevlex", field: Field | None = None, budget=None) -> Session:
    """Parse a ring description into a validated session.

    Raises ParseError (with line and column) on malformed input and
    NotHomogeneousError if a generator is not homogeneous.
    """
    ring = None
    ideal_lines: list[tuple[int, int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        col = body.index(stripped[0]) + 1
        word = re.match(r"[A-Za-z]*", stripped).group(0)
        rest = stripped[len(word):]
        rest_col = col + len(word)
        if word == "ring":
            if ring is not None:
                raise ParseError("more than one ring line", lineno, col)
            if ideal_lines:
                raise ParseError("the ring line must come before any ideal line", lineno, col)
            ring = _parse_ring_line(rest, lineno, rest_col, order)
        elif word == "ideal":
            ideal_lines.append((lineno, rest_col, rest))
        else:
            raise ParseError(f"expected 'ring' or 'ideal', found {stripped.split()[0]!r}", lineno, col)
    if ring is None:
        names: list[str] = []
        for lineno, c, body in ideal_lines:
            for tok in _tokenize(body, lineno, c):
                if tok.kind == "name" and tok.text not in names:
                    names.append(tok.text)
        if not names:
            raise ParseError("no ring line and no variables to infer one from", 1, 1)
        if len(names) > MAX_VARIABLES:
            raise ParseError(f"at most {MAX_VARIABLES} variables are supported", 1, 1)
        ring = PolyRing(names, field or GF(DEFAULT_PRIME), order)
    gens: list[Polynomial] = []
    for lineno, c, body in ideal_lines:
        gens.extend(_PolyParser(_tokenize(body, lineno, c), ring).poly_list())
    for g in gens:
        if not g.is_homogeneous():
            raise NotHomogeneousError(f"generator {g} is not homogeneous")
    session = Session(ring, Ideal(ring, gens, budget))
    if ring.field.characteristic == 2:
        msg = "characteristic 2 is not supported by the sampling procedures; results may be unreliable"
        warnings.warn(msg, stacklevel=2)
        session.warnings.append(msg)
    return session

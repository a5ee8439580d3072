"""Text format for presentations and certificates.

A presentation file is a sequence of sections::

    [base]
    QQ                      # or ZZ, ZZ/7, QQ[t]/(t^2 + 1), ZZ[s]/(s^2 - 2)[t]/(t^2 - s)
    [vars]
    x y
    [relators]
    x*y - 1                 # one relator per line
    [certificate.g]
    1 : -x^2*y + x          # "i : expr", omitted entries are 0
    [certificate.u]
    1 1 : -x                # "i j : expr"
    [certificate.h]
    1 1 1 : -1              # "j k l : expr"

Expressions use integers, rationals ``a/b``, identifiers, ``+ - * ^``,
unary minus and parentheses.  ``^`` binds tightest, then unary minus, then
``*``, then ``+``/``-``.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .certificate import Presentation, SmoothnessCertificate
from .errors import ParseError, SmoothredError
from .poly import Polynomial
from .quotient import PolynomialQuotient
from .rings import QQ, ZZ, IntegersMod, Integers, Rationals, RingDescriptor

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<rat>\d+/\d+)|(?P<int>\d+)|(?P<id>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^()\[\],/:])"
)
_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Token:
    kind: str  # "rat", "int", "id", "op", "end"
    text: str
    line: int
    column: int


def tokenize(text: str, line: int = 1, column: int = 1) -> list[Token]:
    text = text.split("#", 1)[0]
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column + pos)
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), line, column + pos))
        pos = m.end()
    tokens.append(Token("end", "", line, column + len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser evaluating straight into a polynomial ring."""

    def __init__(self, tokens, ring, variables, symbols=None, order="grevlex"):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring
        self.variables = tuple(variables)
        self.order = order
        self.symbols = symbols or {}

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message, tok=None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.column)

    def accept(self, text) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.pos += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            found = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")

    def constant(self, value, tok) -> Polynomial:
        try:
            return Polynomial.constant(self.ring, self.variables, value, self.order)
        except (ValueError, ZeroDivisionError) as exc:
            self.error(str(exc), tok)

    # expr := term (('+' | '-') term)*
    def expr(self) -> Polynomial:
        result = self.term()
        while True:
            if self.accept("+"):
                result = result + self.term()
            elif self.accept("-"):
                result = result - self.term()
            else:
                return result

    # term := unary ('*' unary)*
    def term(self) -> Polynomial:
        result = self.unary()
        while self.accept("*"):
            result = result * self.unary()
        return result

    # unary := '-' unary | power
    def unary(self) -> Polynomial:
        if self.accept("-"):
            return -self.unary()
        return self.power()

    # power := atom ('^' INT)?
    def power(self) -> Polynomial:
        base = self.atom()
        if self.accept("^"):
            tok = self.tok
            if tok.kind != "int":
                self.error("exponent must be a nonnegative integer literal")
            self.pos += 1
            base = base ** int(tok.text)
            if self.tok.kind == "op" and self.tok.text == "^":
                self.error("chained exponents are ambiguous; use parentheses")
        return base

    def atom(self) -> Polynomial:
        tok = self.tok
        if tok.kind == "int":
            self.pos += 1
            return self.constant(int(tok.text), tok)
        if tok.kind == "rat":
            self.pos += 1
            num, den = tok.text.split("/")
            if int(den) == 0:
                self.error("zero denominator", tok)
            return self.constant(Fraction(int(num), int(den)), tok)
        if tok.kind == "id":
            self.pos += 1
            if tok.text in self.variables:
                return Polynomial.variable(self.ring, self.variables, tok.text, self.order)
            if tok.text in self.symbols:
                return self.constant(self.symbols[tok.text], tok)
            self.error(f"unknown identifier {tok.text!r}", tok)
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        self.error(f"unexpected {tok.text or 'end of input'!r}")

    def done(self):
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")


def ring_symbols(ring: RingDescriptor) -> dict:
    """Names usable inside expressions as constants of ``ring`` (quotient variables)."""
    symbols = {}
    r = ring
    chain = []
    while isinstance(r, PolynomialQuotient):
        chain.append(r)
        r = r.base
    # inner names first so that outer variables shadow nothing silently
    for q in reversed(chain):
        for name in q.variables:
            if name in symbols:
                raise ParseError(f"quotient variable {name!r} reused in nested quotient")
            symbols[name] = _embed_symbol(ring, q, name)
    return symbols


def _embed_symbol(ring: RingDescriptor, owner: PolynomialQuotient, name: str):
    # walk from the owning quotient up to `ring`, embedding as constants
    value = owner.symbol(name)
    r = ring
    chain = []
    while r is not owner:
        chain.append(r)
        r = r.base
    for q in reversed(chain):
        value = q.from_base(value)
    return value


def parse_expression(
    text: str,
    ring: RingDescriptor,
    variables,
    order: str = "grevlex",
    line: int = 1,
    column: int = 1,
) -> Polynomial:
    """Parse ``text`` as a polynomial over ``ring`` in ``variables``."""
    if isinstance(variables, str):
        variables = variables.replace(",", " ").split()
    p = _Parser(tokenize(text, line, column), ring, variables, ring_symbols(ring), order)
    result = p.expr()
    p.done()
    return result


def parse_ring(text: str, line: int = 1, column: int = 1) -> RingDescriptor:
    tokens = tokenize(text, line, column)
    pos = 0

    def tok():
        return tokens[pos]

    def take(kind=None, text=None):
        nonlocal pos
        t = tokens[pos]
        if (kind and t.kind != kind) or (text and t.text != text):
            want = text or kind
            raise ParseError(f"expected {want!r} in ring, found {t.text or 'end of input'!r}", t.line, t.column)
        pos += 1
        return t

    head = take("id")
    if head.text == "QQ":
        ring: RingDescriptor = QQ
    elif head.text == "ZZ":
        ring = ZZ
        if tok().kind == "op" and tok().text == "/":
            take("op", "/")
            mod = take("int")
            try:
                ring = IntegersMod(int(mod.text))
            except ValueError as exc:
                raise ParseError(str(exc), mod.line, mod.column) from None
        elif tok().kind == "rat":
            raise ParseError("write ZZ/n without spaces around the modulus", tok().line, tok().column)
    else:
        raise ParseError(f"unknown base ring {head.text!r}", head.line, head.column)

    while tok().kind == "op" and tok().text == "[":
        take("op", "[")
        names = [take("id").text]
        while tok().text == ",":
            take("op", ",")
            names.append(take("id").text)
        take("op", "]")
        take("op", "/")
        take("op", "(")
        # relators run to the matching ')' and are separated by top-level commas
        start = pos
        depth = 0
        chunks, current = [], []
        while True:
            t = tokens[pos]
            if t.kind == "end":
                raise ParseError("unterminated relator list", t.line, t.column)
            if t.text == "(":
                depth += 1
            elif t.text == ")":
                if depth == 0:
                    break
                depth -= 1
            if t.text == "," and depth == 0:
                chunks.append(current)
                current = []
            else:
                current.append(t)
            pos += 1
        chunks.append(current)
        take("op", ")")
        if start == pos - 1:
            raise ParseError("empty relator list", tokens[start].line, tokens[start].column)
        relators = []
        for chunk in chunks:
            if not chunk:
                raise ParseError("empty relator", tokens[start].line, tokens[start].column)
            end = Token("end", "", chunk[-1].line, chunk[-1].column + len(chunk[-1].text))
            p = _Parser(chunk + [end], ring, names, ring_symbols(ring))
            rel = p.expr()
            p.done()
            relators.append(rel)
        try:
            ring = PolynomialQuotient(ring, names, relators)
        except (ValueError, SmoothredError) as exc:
            raise ParseError(f"invalid quotient ring: {exc}", head.line, head.column) from None
    if tok().kind != "end":
        raise ParseError(f"unexpected {tok().text!r} in ring", tok().line, tok().column)
    return ring


def format_ring(ring: RingDescriptor) -> str:
    if isinstance(ring, Rationals):
        return "QQ"
    if isinstance(ring, Integers):
        return "ZZ"
    if isinstance(ring, IntegersMod):
        return f"ZZ/{ring.modulus}"
    if isinstance(ring, PolynomialQuotient):
        rels = ", ".join(str(f) for f in ring.relators)
        return f"{format_ring(ring.base)}[{', '.join(ring.variables)}]/({rels})"
    raise ValueError(f"{ring} has no textual form")


# -- presentation files ------------------------------------------------------

SECTIONS = ("base", "vars", "relators", "certificate.g", "certificate.u", "certificate.h")
_HEADER = re.compile(r"\[\s*([A-Za-z_.]+)\s*\]\s*\Z")


@dataclass
class _Line:
    number: int
    text: str


def _split_sections(text: str) -> dict[str, tuple[int, list[_Line]]]:
    sections: dict[str, tuple[int, list[_Line]]] = {}
    current: Optional[list[_Line]] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        header = _HEADER.match(stripped)
        if header and stripped.startswith("["):
            name = header.group(1)
            col = body.index("[") + 1
            if name not in SECTIONS:
                raise ParseError(f"unknown section [{name}]", number, col)
            if name in sections:
                raise ParseError(f"duplicate section [{name}]", number, col)
            current = []
            sections[name] = (number, current)
            continue
        if current is None:
            raise ParseError("content before the first section header", number, 1)
        current.append(_Line(number, body))
    return sections


def _indexed_entries(lines: list[_Line], arity: int, bounds: tuple[int, ...], section: str):
    seen = {}
    for ln in lines:
        if ":" not in ln.text:
            raise ParseError(f"[{section}] entries look like '{' '.join('i' * arity)} : <expr>'", ln.number, 1)
        head, expr = ln.text.split(":", 1)
        parts = head.split()
        col = len(ln.text) - len(ln.text.lstrip()) + 1
        if len(parts) != arity or not all(p.isdigit() for p in parts):
            raise ParseError(f"[{section}] needs {arity} positive integer indices before ':'", ln.number, col)
        idx = tuple(int(p) for p in parts)
        for k, (v, b) in enumerate(zip(idx, bounds)):
            if not 1 <= v <= b:
                raise ParseError(f"index {v} out of bounds 1..{b} in [{section}]", ln.number, col)
        if idx in seen:
            raise ParseError(f"duplicate entry {' '.join(parts)} in [{section}]", ln.number, col)
        seen[idx] = (expr, ln.number, len(head) + 2)
    return seen


def parse_presentation(text: str) -> tuple[Presentation, Optional[SmoothnessCertificate]]:
    """Parse a presentation file; the certificate is ``None`` when no
    ``[certificate.*]`` section is present."""
    sections = _split_sections(text)
    for required in ("base", "vars"):
        if required not in sections:
            raise ParseError(f"missing [{required}] section", 1, 1)

    base_start, base_lines = sections["base"]
    if len(base_lines) != 1:
        raise ParseError("[base] must contain exactly one line", base_start, 1)
    base = parse_ring(base_lines[0].text, base_lines[0].number)

    _, var_lines = sections["vars"]
    names: list[str] = []
    for ln in var_lines:
        for name in ln.text.replace(",", " ").split():
            if not _IDENT.match(name):
                raise ParseError(f"invalid variable name {name!r}", ln.number, ln.text.index(name) + 1)
            if name in names:
                raise ParseError(f"duplicate variable {name!r}", ln.number, ln.text.index(name) + 1)
            names.append(name)
    clash = set(names) & set(ring_symbols(base))
    if clash:
        raise ParseError(f"variable {sorted(clash)[0]!r} clashes with a base-ring symbol", var_lines[0].number, 1)

    relators = []
    for ln in sections.get("relators", (0, []))[1]:
        f = parse_expression(ln.text, base, names, line=ln.number)
        if f.is_zero():
            raise ParseError("relator is zero", ln.number, 1)
        relators.append(f)
    pres = Presentation(base, tuple(names), tuple(relators))

    if not any(s.startswith("certificate.") for s in sections):
        return pres, None

    n, m = pres.n, pres.m
    zero = pres.zero()
    g = [zero] * n
    u = [[zero] * m for _ in range(n)]
    h = [[[zero] * m for _ in range(m)] for _ in range(m)]

    def entries(section, arity, bounds):
        lines = sections.get(section, (0, []))[1]
        for idx, (expr, line, col) in _indexed_entries(lines, arity, bounds, section).items():
            yield idx, parse_expression(expr, base, names, line=line, column=col)

    for (i,), p in entries("certificate.g", 1, (n,)):
        g[i - 1] = p
    for (i, j), p in entries("certificate.u", 2, (n, m)):
        u[i - 1][j - 1] = p
    for (j, k, l), p in entries("certificate.h", 3, (m, m, m)):
        h[j - 1][k - 1][l - 1] = p
    return pres, SmoothnessCertificate(tuple(g), u, h)


def emit_certificate(cert: SmoothnessCertificate) -> str:
    """Certificate sections only, nonzero entries only."""
    out = ["[certificate.g]"]
    out += [f"{i + 1} : {p}" for i, p in enumerate(cert.g) if not p.is_zero()]
    out.append("[certificate.u]")
    out += [
        f"{i + 1} {j + 1} : {p}" for i, row in enumerate(cert.u) for j, p in enumerate(row) if not p.is_zero()
    ]
    out.append("[certificate.h]")
    out += [
        f"{j + 1} {k + 1} {l + 1} : {p}"
        for j, plane in enumerate(cert.h)
        for k, row in enumerate(plane)
        for l, p in enumerate(row)
        if not p.is_zero()
    ]
    return "\n".join(out) + "\n"


def emit_presentation(pres: Presentation, cert: Optional[SmoothnessCertificate] = None) -> str:
    out = ["[base]", format_ring(pres.base), "[vars]", " ".join(pres.variables), "[relators]"]
    out += [str(f) for f in pres.relators]
    text = "\n".join(out) + "\n"
    if cert is not None:
        text += emit_certificate(cert)
    return text


def load_presentation(path) -> tuple[Presentation, Optional[SmoothnessCertificate]]:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())

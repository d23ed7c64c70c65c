"""Tokenizer and recursive-descent parser shared by scalars, algebra elements
and polynomials.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | atom
    atom   := integer | name | '(' expr ')'

A ``term`` with three or more non-scalar factors and no brackets, such as
``x1*x2*x3``, is ambiguous in a non-associative algebra and is rejected unless
the caller opts into left association.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import AmbiguousProduct, ParseError, PolySyntaxError, UnknownVariable
from .field import FieldSpec

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*|ω²|ω)|(.))")
_TRANSLATE = str.maketrans({"−": "-", "·": "*", "×": "*"})


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    text = text.translate(_TRANSLATE)
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        start = m.start(1) if m.group(1) else m.start(2) if m.group(2) else m.start(3)
        if m.group(1):
            tokens.append(Token("num", m.group(1), start))
        elif m.group(2):
            name = {"ω": "w", "ω²": "w2"}.get(m.group(2), m.group(2))
            tokens.append(Token("name", name, start))
        else:
            ch = m.group(3)
            if ch not in "+-*/()":
                raise PolySyntaxError(f"unexpected character {ch!r}", start)
            tokens.append(Token("op", ch, start))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# AST nodes are plain tuples: (tag, payload, pos)


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text):
        tok = self.take()
        if tok.text != text:
            raise PolySyntaxError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.pos)
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise PolySyntaxError(f"unexpected {tok.text!r}", tok.pos)
        return node

    def expr(self):
        pos = self.peek().pos
        terms = []
        sign = "+"
        if self.peek().text in "+-" and self.peek().kind == "op":
            sign = self.take().text
        terms.append((sign, self.term()))
        while self.peek().kind == "op" and self.peek().text in "+-":
            sign = self.take().text
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == "+":
            return terms[0][1]
        return ("sum", terms, pos)

    def term(self):
        pos = self.peek().pos
        factors = [("*", self.unary())]
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.take().text
            factors.append((op, self.unary()))
        if len(factors) == 1:
            return factors[0][1]
        return ("chain", factors, pos)

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.take()
            return ("neg", self.unary(), tok.pos)
        return self.atom()

    def atom(self):
        tok = self.take()
        if tok.kind == "num":
            return ("num", int(tok.text), tok.pos)
        if tok.kind == "name":
            return ("name", tok.text, tok.pos)
        if tok.text == "(":
            inner = self.expr()
            self.expect(")")
            return ("group", inner, tok.pos)
        raise PolySyntaxError(f"unexpected {tok.text or 'end of input'!r}", tok.pos)


def parse_ast(text: str):
    return _Parser(text).parse()


class Scalar:
    """Tagged scalar produced during interpretation."""

    __slots__ = ("raw",)

    def __init__(self, raw):
        self.raw = raw


class Interpreter:
    """Walks an AST.  Subclasses resolve names and provide the non-scalar
    operations; scalars are handled here."""

    def __init__(self, field: FieldSpec, assoc: str | None = None):
        self.field = field
        self.assoc = assoc

    # hooks -------------------------------------------------------------
    def name(self, name: str, pos: int):
        if name == "w" or name == "w2":
            if not self.field.has_omega:
                raise ParseError(f"{name} is not available in {self.field}", pos)
            w = self.field.omega_raw
            return Scalar(w if name == "w" else self.field.mul(w, w))
        raise UnknownVariable(f"unknown name {name!r}", pos)

    def add(self, a, b, pos):
        raise PolySyntaxError("cannot mix scalars and non-scalars in a sum", pos)

    def mul(self, a, b):
        raise NotImplementedError

    def scale(self, a, raw):
        raise NotImplementedError

    def negate(self, a):
        return self.scale(a, self.field.neg(self.field.one))

    # walker ------------------------------------------------------------
    def run(self, node):
        tag, payload, pos = node
        F = self.field
        if tag == "num":
            return Scalar(F.from_int(payload))
        if tag == "name":
            return self.name(payload, pos)
        if tag == "group":
            return self.run(payload)
        if tag == "neg":
            v = self.run(payload)
            return Scalar(F.neg(v.raw)) if isinstance(v, Scalar) else self.negate(v)
        if tag == "sum":
            acc = None
            for sign, sub in payload:
                v = self.run(sub)
                if sign == "-":
                    v = Scalar(F.neg(v.raw)) if isinstance(v, Scalar) else self.negate(v)
                acc = v if acc is None else self._add(acc, v, sub[2])
            return acc
        if tag == "chain":
            return self._chain(payload, pos)
        raise AssertionError(tag)  # pragma: no cover

    def _add(self, a, b, pos):
        F = self.field
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return Scalar(F.add(a.raw, b.raw))
        if isinstance(a, Scalar) and F.is_zero(a.raw):
            return b
        if isinstance(b, Scalar) and F.is_zero(b.raw):
            return a
        if isinstance(a, Scalar) or isinstance(b, Scalar):
            return self.add(a, b, pos)
        return a + b

    def _chain(self, factors, pos):
        F = self.field
        coeff = F.one
        operands = []
        for op, sub in factors:
            v = self.run(sub)
            if op == "/":
                if not isinstance(v, Scalar):
                    raise PolySyntaxError("division by a non-scalar", sub[2])
                if F.is_zero(v.raw):
                    raise PolySyntaxError("division by zero", sub[2])
                coeff = F.div(coeff, v.raw)
            elif isinstance(v, Scalar):
                coeff = F.mul(coeff, v.raw)
            else:
                operands.append(v)
        if len(operands) > 2 and self.assoc != "left":
            raise AmbiguousProduct(
                f"unbracketed product of {len(operands)} factors; add brackets or use left association",
                pos,
            )
        if not operands:
            return Scalar(coeff)
        acc = operands[0]
        for v in operands[1:]:
            acc = self.mul(acc, v)
        if coeff != F.one:
            acc = self.scale(acc, coeff)
        return acc


def parse_scalar(text: str, field: FieldSpec):
    """Parse a scalar expression like ``-3``, ``2/3``, ``1+2*w`` into a raw value."""
    result = Interpreter(field).run(parse_ast(text))
    if not isinstance(result, Scalar):  # pragma: no cover - Interpreter has no non-scalars
        raise PolySyntaxError("expected a scalar", 0)
    return result.raw

"""Concrete syntax for formulas.

Grammar (loosest binding first)::

    formula := 'exists' VAR '.' formula | 'forall' VAR '.' formula | iff
    iff     := imp ('<->' imp)*          left associative
    imp     := disj ('->' imp)?          right associative
    disj    := conj ('|' conj)*
    conj    := unary ('&' unary)*
    unary   := '~' unary | quantified | atom | '(' formula ')'
    atom    := VAR ('=' | '<1' | '<2') VAR | 'R' '(' VAR ',' VAR ')'

A quantifier's scope extends as far right as possible, so
``exists x. A & B`` is ``exists x. (A & B)``.
"""

from __future__ import annotations

__all__ = ["FormulaSyntaxError", "parse", "render", "tokenize"]

import re
from dataclasses import dataclass

from .formula import (
    EQ, LT1, LT2, R, And, Atom, Exists, ForAll, Formula, Iff, Implies, Not, Or,
    Signature, check_signature,
)


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op><->|->|<1|<2|[=&|~().,])|(?P<ident>[A-Za-z_][A-Za-z0-9_']*))"
)
_KEYWORDS = {"exists", "forall"}


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos == n:
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        word = m.group(kind)
        if kind == "ident" and word in _KEYWORDS:
            kind = word
        tokens.append(Token(kind if kind != "op" else word, word, m.start(m.lastgroup)))
        pos = m.end()
    tokens.append(Token("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.tokens[self.i]

    def take(self, kind: str) -> Token:
        tok = self.cur
        if tok.kind != kind:
            what = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise FormulaSyntaxError(f"expected {kind!r}, found {what}", tok.offset)
        self.i += 1
        return tok

    def formula(self) -> Formula:
        tok = self.cur
        if tok.kind in _KEYWORDS:
            self.i += 1
            var = self.take("ident").text
            self.take(".")
            body = self.formula()
            return Exists(var, body) if tok.kind == "exists" else ForAll(var, body)
        return self.iff()

    def iff(self) -> Formula:
        out = self.imp()
        while self.cur.kind == "<->":
            self.i += 1
            out = Iff(out, self.imp())
        return out

    def imp(self) -> Formula:
        left = self.disj()
        if self.cur.kind == "->":
            self.i += 1
            return Implies(left, self.imp())
        return left

    def disj(self) -> Formula:
        out = self.conj()
        while self.cur.kind == "|":
            self.i += 1
            out = Or(out, self.conj())
        return out

    def conj(self) -> Formula:
        out = self.unary()
        while self.cur.kind == "&":
            self.i += 1
            out = And(out, self.unary())
        return out

    def unary(self) -> Formula:
        tok = self.cur
        if tok.kind == "~":
            self.i += 1
            return Not(self.unary())
        if tok.kind in _KEYWORDS:
            return self.formula()
        if tok.kind == "(":
            self.i += 1
            inner = self.formula()
            self.take(")")
            return inner
        if tok.kind == "ident":
            return self.atom()
        what = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise FormulaSyntaxError(f"unexpected {what}", tok.offset)

    def atom(self) -> Formula:
        first = self.take("ident")
        if first.text == R and self.cur.kind == "(":
            self.i += 1
            a = self.take("ident").text
            self.take(",")
            b = self.take("ident").text
            self.take(")")
            return Atom(R, a, b)
        tok = self.cur
        if tok.kind not in (EQ, LT1, LT2):
            what = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise FormulaSyntaxError(f"expected relation, found {what}", tok.offset)
        self.i += 1
        return Atom(tok.kind, first.text, self.take("ident").text)


def parse(text: str, signature: Signature | str | None = None) -> Formula:
    """Parse ``text``; with a signature, reject relations outside it."""
    p = _Parser(text)
    f = p.formula()
    if p.cur.kind != "eof":
        raise FormulaSyntaxError(f"trailing input {p.cur.text!r}", p.cur.offset)
    if signature is not None:
        check_signature(f, Signature(signature) if isinstance(signature, str) else signature)
    return f


# binding strength used by the renderer; quantifiers bind loosest
_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_SYM = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def render(f: Formula) -> str:
    """Text that parses back to exactly ``f``, with minimal parentheses."""
    out: list[str] = []

    def emit(g: Formula, need: int, tail: bool) -> None:
        # need: minimum precedence a child must have to go unparenthesised
        # tail: g sits at the right edge, so a bare quantifier cannot swallow anything
        if isinstance(g, Atom):
            out.append(f"R({g.left},{g.right})" if g.rel == R else f"{g.left} {g.rel} {g.right}")
        elif isinstance(g, Not):
            out.append("~")
            emit(g.body, 5, tail)
        elif isinstance(g, (Exists, ForAll)):
            wrap = not tail
            if wrap:
                out.append("(")
            out.append(f"{'exists' if isinstance(g, Exists) else 'forall'} {g.var}. ")
            emit(g.body, 0, True)
            if wrap:
                out.append(")")
        else:
            prec = _PREC[type(g)]
            wrap = prec < need
            if wrap:
                out.append("(")
            inner_tail = tail or wrap
            if isinstance(g, Implies):
                lneed, rneed = prec + 1, prec
            else:
                lneed, rneed = prec, prec + 1
            emit(g.left, lneed, False)
            out.append(f" {_SYM[type(g)]} ")
            emit(g.right, rneed, inner_tail)
            if wrap:
                out.append(")")

    emit(f, 0, True)
    return "".join(out)

"""Recursive-descent parser for the ASCII formula syntax.

Grammar, loosest binding first::

    impl   := or (("->" | "<->") impl)?          right-associative
    or     := and ("|" and)*
    and    := since ("&" since)*
    since  := unary ("S" since)?                 right-associative
    unary  := ("!" | "Y" | "H" | "P") unary | atom
    atom   := "true" | "false" | "bos" | IDENT | "[" sym "," sym "]" | "(" impl ")"
"""

from __future__ import annotations

import re

from .formula import (BOS, EOS, FALSE, TRUE, Alphabet, And, Bos, Formula, H, Iff, Implies, Not,
                      Or, P, S, Sym, Y, as_alphabet)


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownSymbolError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<op><->|->|[!&|()\[\],])|(?P<word>[A-Za-z0-9_']+))")
_KEYWORDS = {"true", "false", "bos", "eos", "Y", "H", "P", "S"}


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[start]!r}", start)
        value = m.group("op") or m.group("word")
        tokens.append((value, m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("<end>", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet | None):
        self.tokens = _tokenize(text)
        self.i = 0
        self.alphabet = alphabet

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def offset(self) -> int:
        return self.tokens[self.i][1]

    def take(self, expected: str | None = None) -> str:
        tok, off = self.tokens[self.i]
        if expected is not None and tok != expected:
            what = "end of input" if tok == "<end>" else repr(tok)
            raise FormulaSyntaxError(f"expected {expected!r} but found {what}", off)
        self.i += 1
        return tok

    def parse(self) -> Formula:
        phi = self.impl()
        if self.peek() != "<end>":
            raise FormulaSyntaxError(f"unexpected {self.peek()!r}", self.offset())
        return phi

    def impl(self) -> Formula:
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.impl())
        if self.peek() == "<->":
            self.take()
            return Iff(left, self.impl())
        return left

    def disj(self) -> Formula:
        phi = self.conj()
        while self.peek() == "|":
            self.take()
            phi = Or(phi, self.conj())
        return phi

    def conj(self) -> Formula:
        phi = self.since()
        while self.peek() == "&":
            self.take()
            phi = And(phi, self.since())
        return phi

    def since(self) -> Formula:
        left = self.unary()
        if self.peek() == "S":
            self.take()
            return S(left, self.since())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "!":
            self.take()
            return Not(self.unary())
        if tok == "Y":
            self.take()
            return Y(self.unary())
        if tok == "H":
            self.take()
            return H(self.unary())
        if tok == "P":
            self.take()
            return P(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok, off = self.tokens[self.i]
        if tok == "(":
            self.take()
            phi = self.impl()
            self.take(")")
            return phi
        if tok == "true":
            self.take()
            return TRUE
        if tok == "false":
            self.take()
            return FALSE
        if tok == "bos":
            self.take()
            return Bos()
        if tok == "[":
            self.take()
            first = self.pair_part()
            self.take(",")
            second = self.pair_part()
            self.take("]")
            return self.symbol((first, second), off)
        if tok == "<end>":
            raise FormulaSyntaxError("unexpected end of input", off)
        if tok in _KEYWORDS or not re.fullmatch(r"[A-Za-z0-9_']+", tok):
            raise FormulaSyntaxError(f"unexpected {tok!r}", off)
        self.take()
        return self.symbol(tok, off)

    def pair_part(self) -> str:
        tok, off = self.tokens[self.i]
        if tok in (BOS, EOS) or (tok not in _KEYWORDS and re.fullmatch(r"[A-Za-z0-9_']+", tok)):
            self.take()
            return tok
        raise FormulaSyntaxError(f"unexpected {tok!r} inside a pair symbol", off)

    def symbol(self, s, off: int) -> Formula:
        if self.alphabet is not None and s not in self.alphabet:
            raise UnknownSymbolError(f"unknown symbol {s!r} at offset {off}")
        return Sym(s)


def parse_formula(text: str, alphabet=None) -> Formula:
    """Parse ``text``; if ``alphabet`` is given every symbol must belong to it."""
    alpha = as_alphabet(alphabet) if alphabet is not None else None
    return _Parser(text, alpha).parse()

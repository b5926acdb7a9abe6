"""Satisfaction of past LTL formulas on finite strings.

Position 0 is the ``bos`` position; position i >= 1 carries ``w[i-1]``.  The
temporal clauses quantify over every position j <= i, including 0, where no
symbol predicate holds.

Three evaluators are provided:

* :func:`satisfies` follows the defining clauses literally (quantifiers and
  all).  It is slow and serves as the reference.
* :func:`truth_values` computes every position of one string with the usual
  left-to-right recurrences.
* :func:`evaluate_all` evaluates formulas on *every* string of a given length
  at once, packing one bit per string into Python integers.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .formula import (And, Bos, Formula, H, Not, S, Sym, Y, Alphabet, as_alphabet, subformulas)


def _symbol_at(w: Sequence, i: int):
    return None if i == 0 else w[i - 1]


def satisfies(w: Sequence, i: int, phi: Formula) -> bool:
    """``w, i |= phi`` by the defining clauses."""
    n = len(w)
    if not 0 <= i <= n:
        raise IndexError(f"position {i} out of range 0..{n}")
    return _sat(tuple(w), i, phi)


def _sat(w: tuple, i: int, phi: Formula) -> bool:
    if isinstance(phi, Not):
        return not _sat(w, i, phi.arg)
    if isinstance(phi, And):
        return _sat(w, i, phi.left) and _sat(w, i, phi.right)
    if isinstance(phi, Bos):
        return i == 0
    if isinstance(phi, Sym):
        return i > 0 and w[i - 1] == phi.symbol
    if isinstance(phi, Y):
        return i > 0 and _sat(w, i - 1, phi.arg)
    if isinstance(phi, H):
        return all(_sat(w, j, phi.arg) for j in range(i + 1))
    if isinstance(phi, S):
        return any(_sat(w, j, phi.right) and all(_sat(w, k, phi.left) for k in range(j + 1, i + 1))
                   for j in range(i + 1))
    raise TypeError(f"not a formula: {phi!r}")


def models(w: Sequence, phi: Formula) -> bool:
    """``w |= phi``, i.e. satisfaction at the last position."""
    return truth_values(phi, w)[len(w)]


def truth_values(phi: Formula, w: Sequence, memo: dict | None = None) -> list:
    """Satisfaction of ``phi`` at positions 0..len(w) of ``w``."""
    w = tuple(w)
    memo = {} if memo is None else memo
    n = len(w)
    for node in subformulas(phi):
        if node in memo:
            continue
        if isinstance(node, Not):
            a = memo[node.arg]
            vals = [not x for x in a]
        elif isinstance(node, And):
            a, b = memo[node.left], memo[node.right]
            vals = [x and y for x, y in zip(a, b)]
        elif isinstance(node, Bos):
            vals = [True] + [False] * n
        elif isinstance(node, Sym):
            vals = [False] + [s == node.symbol for s in w]
        elif isinstance(node, Y):
            vals = [False] + memo[node.arg][:-1]
        elif isinstance(node, H):
            a = memo[node.arg]
            vals, acc = [], True
            for x in a:
                acc = acc and x
                vals.append(acc)
        elif isinstance(node, S):
            a, b = memo[node.left], memo[node.right]
            vals, acc = [], False
            for x, y in zip(a, b):
                acc = y or (x and acc)
                vals.append(acc)
        else:
            raise TypeError(f"not a formula: {node!r}")
        memo[node] = vals
    return memo[phi]


def encode_with_tuple(formulas: Sequence[Formula], w: Sequence) -> list:
    """State sequence of the formula-tuple encoder: one bool tuple per position."""
    memo: dict = {}
    columns = [truth_values(phi, w, memo) for phi in formulas]
    return [tuple(col[i] for col in columns) for i in range(len(w) + 1)]


def strings_of_length(alphabet: Alphabet, length: int) -> list:
    """All strings of one length, in lexicographic order of the alphabet."""
    return list(itertools.product(alphabet.symbols, repeat=length))


def strings_upto(alphabet, n: int) -> Iterable[tuple]:
    """All strings of length <= n in length-lexicographic order."""
    alphabet = as_alphabet(alphabet)
    for length in range(n + 1):
        yield from itertools.product(alphabet.symbols, repeat=length)


class BatchEvaluator:
    """Evaluate formulas on all strings of one length simultaneously.

    Row r of the batch is ``strings_of_length(alphabet, length)[r]``.  For a
    formula, the result is a list over positions of integers whose bit r says
    whether row r satisfies the formula at that position.
    """

    def __init__(self, alphabet, length: int, rows: Sequence[tuple] | None = None):
        self.alphabet = as_alphabet(alphabet)
        self.length = length
        self.rows = list(rows) if rows is not None else strings_of_length(self.alphabet, length)
        self.count = len(self.rows)
        self.full = (1 << self.count) - 1
        self._symbol_masks: dict = {}
        self._memo: dict = {}

    def symbol_mask(self, symbol, position: int) -> int:
        key = (symbol, position)
        mask = self._symbol_masks.get(key)
        if mask is None:
            mask = 0
            if position > 0:
                for r, w in enumerate(self.rows):
                    if w[position - 1] == symbol:
                        mask |= 1 << r
            self._symbol_masks[key] = mask
        return mask

    def evaluate(self, phi: Formula) -> list:
        memo = self._memo
        if phi in memo:
            return memo[phi]
        full = self.full
        n = self.length
        for node in subformulas(phi):
            if node in memo:
                continue
            if isinstance(node, Not):
                vals = [full ^ x for x in memo[node.arg]]
            elif isinstance(node, And):
                vals = [x & y for x, y in zip(memo[node.left], memo[node.right])]
            elif isinstance(node, Bos):
                vals = [full] + [0] * n
            elif isinstance(node, Sym):
                vals = [self.symbol_mask(node.symbol, i) for i in range(n + 1)]
            elif isinstance(node, Y):
                vals = [0] + memo[node.arg][:-1]
            elif isinstance(node, H):
                vals, acc = [], full
                for x in memo[node.arg]:
                    acc &= x
                    vals.append(acc)
            elif isinstance(node, S):
                vals, acc = [], 0
                for x, y in zip(memo[node.left], memo[node.right]):
                    acc = y | (x & acc)
                    vals.append(acc)
            else:
                raise TypeError(f"not a formula: {node!r}")
            memo[node] = vals
        return memo[phi]

    def final(self, phi: Formula) -> int:
        """Bitmask of rows satisfying ``phi`` at their last position."""
        return self.evaluate(phi)[self.length]

    def accepted(self, phi: Formula) -> list:
        mask = self.final(phi)
        return [w for r, w in enumerate(self.rows) if mask >> r & 1]


def evaluate_all(phi: Formula, alphabet, length: int) -> list:
    return BatchEvaluator(alphabet, length).evaluate(phi)


def language_upto(phi: Formula, alphabet, n: int) -> set:
    """``{w : |w| <= n and w |= phi}``."""
    out = set()
    for length in range(n + 1):
        out.update(BatchEvaluator(alphabet, length).accepted(phi))
    return out

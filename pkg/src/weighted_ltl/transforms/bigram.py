"""Bigram images of strings and the Y-elimination rewrite ``noy``.

``noy(phi)`` is a Y-free formula over pair symbols ``(x, y)`` with ``x`` in
``alphabet + bos`` and ``y`` in ``alphabet + eos``.  Position j of a bigram
string lines up with position j of ``w + eos``; at the final position the
current symbol is ``eos``, which satisfies no symbol predicate.
"""

from __future__ import annotations

from typing import Sequence

from ..logic.formula import (BOS, EOS, Alphabet, And, Bos, Formula, H, Not, Or, Sym, Y,
                             as_alphabet, disjoin, fragment_of, y_depth)
from ..logic.semantics import truth_values


class NotAdmissible(ValueError):
    pass


def bigram_alphabet(alphabet) -> Alphabet:
    alphabet = as_alphabet(alphabet)
    left = (BOS,) + alphabet.symbols
    right = alphabet.symbols + (EOS,)
    return Alphabet(tuple((x, y) for x in left for y in right))


def bigram_map(w: Sequence) -> tuple:
    """``(bos, w1)(w1, w2)...(wn, eos)``; undefined for the empty string."""
    w = tuple(w)
    if not w:
        raise ValueError("the bigram image of the empty string is undefined")
    padded = (BOS,) + w + (EOS,)
    return tuple(zip(padded, padded[1:]))


def is_bigram_string(b: Sequence) -> bool:
    """Whether ``b`` is the bigram image of some nonempty string."""
    b = tuple(b)
    if len(b) < 2 or b[0][0] != BOS or b[-1][1] != EOS:
        return False
    for (x, y), (x2, _) in zip(b, b[1:]):
        if y != x2 or y in (BOS, EOS):
            return False
    return True


def unbigram(b: Sequence) -> tuple:
    if not is_bigram_string(b):
        raise ValueError("not a bigram string")
    return tuple(y for _, y in b[:-1])


def noy_transform(phi: Formula, alphabet) -> Formula:
    """Push ``Y`` down to the atoms and rewrite atoms as bigram predicates."""
    alphabet = as_alphabet(alphabet)
    if "S" in fragment_of(phi):
        raise NotAdmissible("noy is defined only for formulas without S")
    if y_depth(phi) > 1:
        raise NotAdmissible(f"noy needs Y-depth at most 1, got {y_depth(phi)}")
    left = (BOS,) + alphabet.symbols
    right = alphabet.symbols + (EOS,)
    memo: dict = {}
    memo_y: dict = {}

    def noy(f: Formula) -> Formula:
        if f in memo:
            return memo[f]
        if isinstance(f, Not):
            out = Not(noy(f.arg))
        elif isinstance(f, And):
            out = And(noy(f.left), noy(f.right))
        elif isinstance(f, H):
            out = H(noy(f.arg))
        elif isinstance(f, Sym):
            out = disjoin(Sym((x, f.symbol)) for x in left)
        elif isinstance(f, Bos):
            out = Bos()
        elif isinstance(f, Y):
            out = noy_y(f.arg)
        else:
            raise NotAdmissible(f"unexpected operator in {f}")
        memo[f] = out
        return out

    def noy_y(f: Formula) -> Formula:
        # true exactly where Y f is true; false at position 0
        if f in memo_y:
            return memo_y[f]
        if isinstance(f, Not):
            out = And(Not(Bos()), Not(noy_y(f.arg)))
        elif isinstance(f, And):
            out = And(noy_y(f.left), noy_y(f.right))
        elif isinstance(f, H):
            out = And(Not(Bos()), H(Or(Bos(), noy_y(f.arg))))
        elif isinstance(f, Sym):
            out = disjoin(Sym((f.symbol, y)) for y in right)
        elif isinstance(f, Bos):
            out = disjoin(Sym((BOS, y)) for y in right)
        else:
            raise NotAdmissible(f"unexpected operator under Y in {f}")
        memo_y[f] = out
        return out

    return noy(phi)


def noy_rules_literal(phi: Formula, alphabet) -> Formula:
    """The rewrite without position-0 guards on ``Y !psi`` and ``Y H psi``.

    Kept to exhibit where the unguarded rules disagree with the guarded ones."""
    alphabet = as_alphabet(alphabet)
    left = (BOS,) + alphabet.symbols
    right = alphabet.symbols + (EOS,)

    def noy(f):
        if isinstance(f, Not):
            return Not(noy(f.arg))
        if isinstance(f, And):
            return And(noy(f.left), noy(f.right))
        if isinstance(f, H):
            return H(noy(f.arg))
        if isinstance(f, Sym):
            return disjoin(Sym((x, f.symbol)) for x in left)
        if isinstance(f, Bos):
            return Bos()
        if isinstance(f, Y):
            return noy_y(f.arg)
        raise NotAdmissible(str(f))

    def noy_y(f):
        if isinstance(f, Not):
            return Not(noy_y(f.arg))
        if isinstance(f, And):
            return And(noy_y(f.left), noy_y(f.right))
        if isinstance(f, H):
            return H(noy_y(f.arg))
        if isinstance(f, Sym):
            return disjoin(Sym((f.symbol, y)) for y in right)
        if isinstance(f, Bos):
            return disjoin(Sym((BOS, y)) for y in right)
        raise NotAdmissible(str(f))

    return noy(phi)


def eos_reading(phi: Formula, w: Sequence) -> bool:
    """``phi`` at the last position of ``w + eos`` (where no symbol predicate holds)."""
    return truth_values(phi, tuple(w) + (EOS,))[-1]


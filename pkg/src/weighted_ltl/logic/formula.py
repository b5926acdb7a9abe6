"""Past LTL formulas.

Only seven node types exist: :class:`Not`, :class:`And`, :class:`Sym`,
:class:`Bos`, :class:`Y`, :class:`H` and :class:`S`.  Everything else
(``TRUE``, ``FALSE``, :func:`Or`, :func:`Implies`, :func:`Iff`, :func:`P`)
expands into these at construction time.

Nodes are hash-consed, so structurally equal formulas are the same object.
Equality and hashing are therefore identity-based, which keeps the large
formulas built by the prefix and conversion constructions cheap to compare
and to memoize on.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Sequence

BOS = "bos"
EOS = "eos"
RESERVED = frozenset({BOS, EOS, "true", "false", "Y", "H", "P", "S"})

TEMPORAL_OPERATORS = ("Y", "H", "S")


@dataclass(frozen=True)
class Alphabet:
    """A finite, non-empty, ordered set of symbols.  ``bos``/``eos`` are never members."""

    symbols: tuple

    def __post_init__(self):
        syms = tuple(self.symbols)
        if not syms:
            raise ValueError("alphabet must be non-empty")
        if len(set(syms)) != len(syms):
            raise ValueError(f"duplicate symbols in alphabet {syms}")
        for s in syms:
            if s in (BOS, EOS):
                raise ValueError(f"{s!r} is reserved and cannot be an alphabet symbol")
        object.__setattr__(self, "symbols", syms)

    def __iter__(self) -> Iterator:
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, s) -> bool:
        return s in self.symbols

    def index(self, s) -> int:
        return self.symbols.index(s)

    def word(self, w) -> tuple:
        """Normalize ``w`` to a tuple of symbols, checking membership."""
        if isinstance(w, str) and not all(isinstance(s, str) and len(s) == 1 for s in self.symbols):
            w = tuple(w.split())
        word = tuple(w)
        for s in word:
            if s not in self.symbols:
                raise ValueError(f"symbol {s!r} is not in the alphabet {list(self.symbols)}")
        return word

    def __str__(self) -> str:
        return " ".join(symbol_text(s) for s in self.symbols)


def as_alphabet(a) -> Alphabet:
    if isinstance(a, Alphabet):
        return a
    if isinstance(a, str):
        a = a.replace(",", " ").split() if (" " in a or "," in a) else list(a)
    return Alphabet(tuple(a))


def symbol_text(s) -> str:
    if isinstance(s, tuple):
        return "[" + ",".join(symbol_text(x) for x in s) + "]"
    return str(s)


def word_text(w: Sequence) -> str:
    if not w:
        return ""
    if all(isinstance(s, str) and len(s) == 1 for s in w):
        return "".join(w)
    return " ".join(symbol_text(s) for s in w)


class Formula:
    __slots__ = ("args", "__weakref__")
    _table: "weakref.WeakValueDictionary[tuple, Formula]" = weakref.WeakValueDictionary()
    arity = 0

    def __new__(cls, *args):
        key = (cls,) + args
        node = Formula._table.get(key)
        if node is None:
            node = object.__new__(cls)
            node.args = args
            Formula._table[key] = node
        return node

    def __reduce__(self):
        return (type(self), self.args)

    @property
    def children(self) -> tuple:
        return self.args if self.arity else ()

    def __repr__(self) -> str:
        from .printer import to_text

        return f"<{to_text(self)}>"

    def __str__(self) -> str:
        from .printer import to_text

        return to_text(self)

    # operator sugar for building formulas in code
    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)


class Not(Formula):
    __slots__ = ()
    arity = 1

    def __new__(cls, arg: Formula):
        return super().__new__(cls, arg)

    @property
    def arg(self) -> Formula:
        return self.args[0]


class And(Formula):
    __slots__ = ()
    arity = 2

    def __new__(cls, left: Formula, right: Formula):
        return super().__new__(cls, left, right)

    @property
    def left(self) -> Formula:
        return self.args[0]

    @property
    def right(self) -> Formula:
        return self.args[1]


class Sym(Formula):
    __slots__ = ()

    def __new__(cls, symbol: Hashable):
        if symbol in (BOS, EOS):
            raise ValueError(f"{symbol!r} is reserved; use Bos() for the start predicate")
        return super().__new__(cls, symbol)

    @property
    def symbol(self):
        return self.args[0]


class Bos(Formula):
    __slots__ = ()

    def __new__(cls):
        return super().__new__(cls)


class Y(Formula):
    __slots__ = ()
    arity = 1

    def __new__(cls, arg: Formula):
        return super().__new__(cls, arg)

    @property
    def arg(self) -> Formula:
        return self.args[0]


class H(Formula):
    __slots__ = ()
    arity = 1

    def __new__(cls, arg: Formula):
        return super().__new__(cls, arg)

    @property
    def arg(self) -> Formula:
        return self.args[0]


class S(Formula):
    """``left S right``: right held at some j <= i and left at every j' in (j, i]."""

    __slots__ = ()
    arity = 2

    def __new__(cls, left: Formula, right: Formula):
        return super().__new__(cls, left, right)

    @property
    def left(self) -> Formula:
        return self.args[0]

    @property
    def right(self) -> Formula:
        return self.args[1]


FALSE = And(Bos(), Not(Bos()))
TRUE = Not(FALSE)


def Or(a: Formula, b: Formula) -> Formula:
    return Not(And(Not(a), Not(b)))


def Implies(a: Formula, b: Formula) -> Formula:
    return Not(And(a, Not(b)))


def Iff(a: Formula, b: Formula) -> Formula:
    return And(Implies(a, b), Implies(b, a))


def P(a: Formula) -> Formula:
    """Previously: ``a`` held at some position j <= i."""
    return Not(H(Not(a)))


def conjoin(items: Iterable[Formula]) -> Formula:
    """Balanced conjunction; ``TRUE`` when empty."""
    items = list(items)
    if not items:
        return TRUE
    while len(items) > 1:
        items = [And(items[k], items[k + 1]) if k + 1 < len(items) else items[k]
                 for k in range(0, len(items), 2)]
    return items[0]


def disjoin(items: Iterable[Formula]) -> Formula:
    """Balanced disjunction; ``FALSE`` when empty."""
    items = list(items)
    if not items:
        return FALSE
    while len(items) > 1:
        items = [Or(items[k], items[k + 1]) if k + 1 < len(items) else items[k]
                 for k in range(0, len(items), 2)]
    return items[0]


def subformulas(phi: Formula) -> list:
    """All distinct subformulas, children before parents, ``phi`` last."""
    seen = set()
    order = []
    stack = [(phi, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if node in seen:
            continue
        seen.add(node)
        stack.append((node, True))
        for child in reversed(node.children):
            if child not in seen:
                stack.append((child, False))
    return order


def symbols_of(phi: Formula) -> set:
    return {n.symbol for n in subformulas(phi) if isinstance(n, Sym)}


def y_depth(phi: Formula) -> int:
    """Maximum number of ``Y`` operators on any root-to-leaf path."""
    depth = {}
    for node in subformulas(phi):
        below = max((depth[c] for c in node.children), default=0)
        depth[node] = below + 1 if isinstance(node, Y) else below
    return depth[phi]


def fragment_of(phi: Formula) -> frozenset:
    """The temporal operators (subset of ``{"Y","H","S"}``) occurring in ``phi``."""
    ops = set()
    for node in subformulas(phi):
        if isinstance(node, (Y, H, S)):
            ops.add(type(node).__name__)
    return frozenset(ops)


def size(phi: Formula) -> int:
    return len(subformulas(phi))


def check_symbols(phi: Formula, alphabet: Alphabet) -> None:
    for s in symbols_of(phi):
        if s not in alphabet:
            raise ValueError(f"symbol {symbol_text(s)!r} is not in the alphabet {list(alphabet)}")


def simplify(phi: Formula) -> Formula:
    """Constant folding and idempotence for ``TRUE``/``FALSE``, ``!!``, ``&`` and the
    temporal operators.  Never introduces a temporal operator."""
    memo: dict = {}
    for node in subformulas(phi):
        memo[node] = _simplify_node(node, memo)
    return memo[phi]


def _simplify_node(node: Formula, memo: dict) -> Formula:
    if node is FALSE or node is TRUE:
        return node
    if isinstance(node, Not):
        a = memo[node.arg]
        if isinstance(a, Not):
            return a.arg
        return Not(a)
    if isinstance(node, And):
        a, b = memo[node.left], memo[node.right]
        if a is FALSE or b is FALSE:
            return FALSE
        if a is TRUE:
            return b
        if b is TRUE or a is b:
            return a
        if (isinstance(a, Not) and a.arg is b) or (isinstance(b, Not) and b.arg is a):
            return FALSE
        return And(a, b)
    if isinstance(node, Y):
        a = memo[node.arg]
        return FALSE if a is FALSE else Y(a)
    if isinstance(node, H):
        a = memo[node.arg]
        if a is TRUE or a is FALSE:
            return a
        if isinstance(a, H):
            return a
        return H(a)
    if isinstance(node, S):
        a, b = memo[node.left], memo[node.right]
        if b is FALSE or b is TRUE:
            return b
        if a is FALSE:
            return b
        return S(a, b)
    return node

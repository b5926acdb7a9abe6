"""Brute-force referents: exhaustive enumeration over bounded string sets."""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .automata import WeightedNfa
from .logic.formula import (EOS, FALSE, TRUE, And, Bos, Formula, H, Not, Or, S, Sym, Y, as_alphabet,
                            subformulas, word_text)
from .logic.semantics import BatchEvaluator, strings_of_length, strings_upto, truth_values
from .models import Autoregressor, StateEncoder, UnsupportedEncoder, string_weight
from .semiring import Bool, ExtRat, Semiring, SemiringMismatch, SemiringValue

BOUND_ENV = "WEIGHTED_LTL_BOUND"


def default_bound(alphabet) -> int:
    """7 for two symbols, 5 for three or more, 10 for one; ``$WEIGHTED_LTL_BOUND`` overrides."""
    env = os.environ.get(BOUND_ENV)
    if env:
        return int(env)
    size = len(as_alphabet(alphabet))
    return {1: 10, 2: 7}.get(size, 5)


def as_value(x) -> SemiringValue:
    if isinstance(x, (Bool, ExtRat)):
        return x
    if isinstance(x, bool):
        return Bool(x)
    return ExtRat(Fraction(x))


def _as_function(f) -> Callable:
    if isinstance(f, Mapping):
        return lambda w: f.get(w, f.get(word_text(w), Bool(False) if _mapping_boolean(f) else ExtRat(0)))
    if isinstance(f, (set, frozenset)):
        return lambda w: Bool(w in f)
    return f


def _mapping_boolean(f: Mapping) -> bool:
    for v in f.values():
        return isinstance(v, (bool, Bool))
    return True


@dataclass
class ComparisonReport:
    bound: int
    equal: bool
    counterexample: tuple | None = None
    weights: tuple | None = None
    examined: int = 0

    def __bool__(self) -> bool:
        return self.equal

    def __str__(self) -> str:
        if self.equal:
            return f"equal on all {self.examined} strings of length <= {self.bound}"
        f, g = self.weights
        return (f"differ at {word_text(self.counterexample)!r}: {f} vs {g} "
                f"(bound {self.bound}, {self.examined} strings examined)")


def languages_equal_upto(f, g, alphabet, n: int) -> ComparisonReport:
    """Compare two weighted languages on every string of length <= n, in length-lex order.

    ``f`` and ``g`` may be callables, mappings from strings to weights, or sets."""
    alphabet = as_alphabet(alphabet)
    f, g = _as_function(f), _as_function(g)
    examined = 0
    for w in strings_upto(alphabet, n):
        examined += 1
        x, y = as_value(f(w)), as_value(g(w))
        if x.semiring is not y.semiring:
            raise SemiringMismatch(f"weights {x} and {y} come from different semirings")
        if x != y:
            return ComparisonReport(n, False, w, (x, y), examined)
    return ComparisonReport(n, True, examined=examined)


def nfa_weight_by_paths(N: WeightedNfa, w: Sequence) -> SemiringValue:
    """Sum over every explicit state sequence; exponential, for testing only."""
    w = N.alphabet.word(w)
    K = N.semiring
    total = K.zero
    for path in itertools.product(N.states, repeat=len(w)):
        states = (N.initial,) + path
        weight = K.one
        for (p, q), s in zip(zip(states, states[1:]), w):
            weight = weight * N.transitions.get((p, s, q), K.zero)
            if weight.is_zero():
                break
        total = total + weight * N.ending[states[-1]]
    return total


def total_mass_upto(model, n: int, enumerate_strings: bool = False) -> Fraction | ExtRat:
    """``sum_{|w| <= n}`` of the string weight, exact.

    By default the sum is accumulated length by length over forward state
    vectors; ``enumerate_strings=True`` sums string by string instead."""
    if model.semiring is not Semiring.REAL:
        raise SemiringMismatch("total mass is defined for real weights")
    alphabet = model.alphabet
    if enumerate_strings:
        weigh = model.weight if isinstance(model, WeightedNfa) else (lambda w: string_weight(model, w))
        return sum((weigh(w) for w in strings_upto(alphabet, n)), ExtRat(0))
    K = model.semiring
    if isinstance(model, WeightedNfa):
        vec = {model.initial: K.one}
        total = K.zero
        for length in range(n + 1):
            total = total + K.sum(x * model.ending[q] for q, x in vec.items())
            nxt: dict = {}
            for q, x in vec.items():
                for s in alphabet:
                    for r, y in model.arcs(q, s):
                        nxt[r] = nxt.get(r, K.zero) + x * y
            vec = nxt
        return total
    if isinstance(model, Autoregressor):
        try:
            comp = model.compiled()
        except UnsupportedEncoder:
            return total_mass_upto(model, n, enumerate_strings=True)
        vec = {comp.dfa.initial: K.one}
        total = K.zero
        for length in range(n + 1):
            total = total + K.sum(x * comp.rows[q][EOS] for q, x in vec.items())
            nxt = {}
            for q, x in vec.items():
                for s in alphabet:
                    r = comp.dfa.transitions[(q, s)]
                    nxt[r] = nxt.get(r, K.zero) + x * comp.rows[q][s]
            vec = nxt
        return total
    raise TypeError(f"cannot compute the mass of {type(model).__name__}")


@dataclass
class EquivalenceReport:
    equivalent: bool
    bijection: dict = field(default_factory=dict)
    obstruction: tuple | None = None   # (string, position, state1, state2)
    bound: int = 0

    def __bool__(self) -> bool:
        return self.equivalent

    def __str__(self) -> str:
        if self.equivalent:
            return f"equivalent up to length {self.bound} ({len(self.bijection)} states matched)"
        w, i, s1, s2 = self.obstruction
        return f"not equivalent: at {word_text(w)!r} position {i}, {s1} is paired with {s2} inconsistently"


def encoders_equivalent_upto(E1: StateEncoder, E2: StateEncoder, n: int) -> EquivalenceReport:
    """Search for a bijection f with f(E1(w)_i) = E2(w)_i on all strings of length <= n."""
    if tuple(E1.alphabet) != tuple(E2.alphabet):
        raise ValueError("encoders have different alphabets")
    forward: dict = {}
    backward: dict = {}
    for length in range(n + 1):
        for w in strings_of_length(E1.alphabet, length):
            t1, t2 = E1.trace(w), E2.trace(w)
            for i, (x, y) in enumerate(zip(t1, t2)):
                if forward.setdefault(x, y) != y or backward.setdefault(y, x) != x:
                    return EquivalenceReport(False, obstruction=(w, i, x, y), bound=n)
    return EquivalenceReport(True, forward, bound=n)


def prefix_language_oracle(f, alphabet, n: int) -> Callable:
    """``u -> exists v with |uv| <= n and f(uv)``."""
    alphabet = as_alphabet(alphabet)
    f = _as_function(f)
    good = set()
    for w in strings_upto(alphabet, n):
        if as_value(f(w)):
            for k in range(len(w) + 1):
                good.add(w[:k])
    return lambda u: tuple(u) in good


class ExtensionOracle:
    """Does some extension ``uv`` of ``u`` satisfy ``phi``?

    Strings are grouped by the truth values of all subformulas at their last
    position, computed by direct evaluation; two strings with the same values
    have the same extensions.  A breadth-first search over values answers each
    group once, with ``|v|`` at most ``max_extension``."""

    def __init__(self, phi: Formula, alphabet, max_extension: int):
        self.phi = phi
        self.alphabet = as_alphabet(alphabet)
        self.closure = subformulas(phi)
        self.max_extension = max_extension
        self._answers: dict = {}

    def signature(self, w: tuple) -> tuple:
        memo: dict = {}
        return tuple(truth_values(f, w, memo)[-1] for f in self.closure)

    def extendable(self, u: Sequence) -> bool:
        u = tuple(u)
        sig = self.signature(u)
        if sig not in self._answers:
            self._answers[sig] = self._search(u)
        return self._answers[sig]

    def _search(self, u: tuple) -> bool:
        top = len(self.closure) - 1
        frontier = [u]
        seen = {self.signature(u)}
        for depth in range(self.max_extension + 1):
            nxt = []
            for w in frontier:
                if self.signature(w)[top]:
                    return True
                if depth == self.max_extension:
                    continue
                for s in self.alphabet:
                    ws = w + (s,)
                    sig = self.signature(ws)
                    if sig not in seen:
                        seen.add(sig)
                        nxt.append(ws)
            frontier = nxt
            if not frontier:
                break
        return False


# -- random formulas ---------------------------------------------------------


def random_formula(rng: random.Random, alphabet, depth: int,
                   ops: Iterable[str] = ("Y", "H", "S")) -> Formula:
    """A random formula with connectives from ``!, &, |`` and temporal operators ``ops``."""
    alphabet = as_alphabet(alphabet)
    ops = tuple(ops)

    def leaf() -> Formula:
        r = rng.random()
        if r < 0.08:
            return Bos()
        if r < 0.11:
            return TRUE
        if r < 0.13:
            return FALSE
        return Sym(rng.choice(alphabet.symbols))

    def build(d: int) -> Formula:
        if d <= 0 or rng.random() < 0.2:
            return leaf()
        choices = ["!", "&", "|"] + list(ops) * 2
        op = rng.choice(choices)
        if op == "!":
            return Not(build(d - 1))
        if op == "&":
            return And(build(d - 1), build(d - 1))
        if op == "|":
            return Or(build(d - 1), build(d - 1))
        if op == "Y":
            return Y(build(d - 1))
        if op == "H":
            return H(build(d - 1))
        return S(build(d - 1), build(d - 1))

    return build(depth)


def random_formula_y1(rng: random.Random, alphabet, depth: int) -> Formula:
    """A random formula over ``!, &, |, H, Y`` with Y-depth at most 1."""
    alphabet = as_alphabet(alphabet)

    def leaf() -> Formula:
        r = rng.random()
        if r < 0.1:
            return Bos()
        return Sym(rng.choice(alphabet.symbols))

    def build(d: int, allow_y: bool) -> Formula:
        if d <= 0 or rng.random() < 0.2:
            return leaf()
        ops = ["!", "&", "|", "H", "H"] + (["Y", "Y"] if allow_y else [])
        op = rng.choice(ops)
        if op == "!":
            return Not(build(d - 1, allow_y))
        if op == "&":
            return And(build(d - 1, allow_y), build(d - 1, allow_y))
        if op == "|":
            return Or(build(d - 1, allow_y), build(d - 1, allow_y))
        if op == "H":
            return H(build(d - 1, allow_y))
        return Y(build(d - 1, False))

    return build(depth, True)


def batch_language(phi: Formula, alphabet, n: int) -> dict:
    """Length -> bitmask of accepted rows (rows as in ``strings_of_length``)."""
    return {k: BatchEvaluator(alphabet, k).final(phi) for k in range(n + 1)}


def count_strings_upto(alphabet, n: int) -> int:
    return sum(1 for _ in strings_upto(alphabet, n))


def shortest_member(accepts: Callable, alphabet, n: int):
    for w in strings_upto(alphabet, n):
        if accepts(w):
            return w
    return None


__all__ = [
    "BOUND_ENV", "default_bound", "as_value", "ComparisonReport", "languages_equal_upto",
    "nfa_weight_by_paths", "total_mass_upto", "EquivalenceReport", "encoders_equivalent_upto",
    "prefix_language_oracle", "ExtensionOracle", "random_formula", "random_formula_y1",
    "batch_language", "count_strings_upto", "shortest_member",
]

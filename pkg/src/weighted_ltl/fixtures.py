"""Named reference machines, models and formulas used by the tests and the CLI."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable

from .automata import Dfa, WeightedNfa
from .logic.formula import BOS, Bos, Formula, Sym, as_alphabet
from .logic.parser import parse_formula
from .models import Autoregressor, Classifier, DfaEncoder, TupleEncoder
from .semiring import Bool, ExtRat, Semiring
from .uhat import Head, Layer, UhatModel

AB = as_alphabet("ab")
A = as_alphabet("a")


def fig1a_dfa() -> Dfa:
    """``q1 -a-> q2 -b-> q1``, completed with a rejecting sink; accepts (ab)*."""
    return Dfa.complete(AB, ["q1", "q2"], {("q1", "a"): "q2", ("q2", "b"): "q1"}, "q1", ["q1"])


def fig1b_dfa() -> Dfa:
    """Two states swapped by ``a``: counts a's mod 2, so not counter-free."""
    return Dfa(A, ["q1", "q2"], {("q1", "a"): "q2", ("q2", "a"): "q1"}, "q1", ["q1"])


def fig1c_wnfa() -> WeightedNfa:
    """Real-weighted, nondeterministic on ``a`` from q0; see :func:`fig1c_closed_form`."""
    h, q = Fraction(1, 2), Fraction(1, 4)
    return WeightedNfa(
        A, ["q0", "q1", "q2"],
        {("q0", "a", "q1"): h, ("q0", "a", "q2"): h,
         ("q1", "a", "q1"): h, ("q2", "a", "q2"): Fraction(3, 4)},
        "q0", {"q0": 0, "q1": h, "q2": q}, Semiring.REAL)


def fig1c_closed_form(n: int) -> Fraction:
    """Weight of ``a^n`` in :func:`fig1c_wnfa`."""
    if n == 0:
        return Fraction(0)
    return Fraction(1, 2) ** (n + 1) + Fraction(1, 8) * Fraction(3, 4) ** (n - 1)


def ab_star_dfa() -> Dfa:
    return fig1a_dfa()


def aab_star_dfa() -> Dfa:
    return Dfa.complete(AB, ["p0", "p1", "p2"],
                        {("p0", "a"): "p1", ("p1", "a"): "p2", ("p2", "b"): "p0"}, "p0", ["p0"])


AB_STAR_FORMULA = "(bos | b) & H((a -> Y(bos | b)) & (b -> Y a))"


def ab_star_formula() -> Formula:
    return parse_formula(AB_STAR_FORMULA, AB)


def ab_star_autoregressor() -> Autoregressor:
    """Boolean autoregressor for (ab)* over the tuple (bos, a, b)."""
    enc = TupleEncoder((Bos(), Sym("a"), Sym("b")), AB)

    def row(h):
        at_bos, at_a, at_b = h
        return {"a": Bool(at_bos or at_b), "b": Bool(at_a), "eos": Bool(at_bos or at_b)}

    return Autoregressor(enc, row, Semiring.BOOLEAN)


def half_a_star_autoregressor() -> Autoregressor:
    """Over ``{a}``: continue or stop with probability 1/2 each; weight(a^n) = 2^-(n+1)."""
    enc = TupleEncoder((), A)
    half = ExtRat(Fraction(1, 2))
    return Autoregressor(enc, {(): {"a": half, "eos": half}}, Semiring.REAL)


def one_a_star_classifier() -> Classifier:
    """Real classifier giving weight 1 to every string in a* (over {a, b})."""
    enc = TupleEncoder((parse_formula("H(bos | a)", AB),), AB)
    return Classifier(enc, {(True,): ExtRat(1), (False,): ExtRat(0)}, Semiring.REAL)


def one_a_star_autoregressor() -> Autoregressor:
    """The only one-state candidate for weight 1 on every a^n: local sums are 2."""
    enc = TupleEncoder((), A)
    return Autoregressor(enc, {(): {"a": ExtRat(1), "eos": ExtRat(1)}}, Semiring.REAL)


def l_k(k: int) -> Dfa:
    """``a* b* a* ...`` with ``k`` alternating blocks, starting with a."""
    if k < 1:
        raise ValueError("k must be at least 1")
    blocks = [f"B{i}" for i in range(1, k + 1)]
    trans = {}
    for i, q in enumerate(blocks):
        own = "a" if i % 2 == 0 else "b"
        other = "b" if own == "a" else "a"
        trans[(q, own)] = q
        if i + 1 < k:
            trans[(q, other)] = blocks[i + 1]
    return Dfa.complete(AB, blocks, trans, blocks[0], blocks)


# -- hard-attention transformers ---------------------------------------------


def _one_hot(i: int, width: int) -> tuple:
    return tuple(Fraction(int(j == i)) for j in range(width))


def last_symbol_uhat(alphabet="ab") -> UhatModel:
    """No layers: the state at each position is the one-hot code of its symbol."""
    alphabet = as_alphabet(alphabet)
    syms = (BOS,) + alphabet.symbols
    return UhatModel(alphabet, {s: _one_hot(i, len(syms)) for i, s in enumerate(syms)})


def last_symbol_dfa(alphabet="ab") -> Dfa:
    alphabet = as_alphabet(alphabet)
    states = [BOS] + list(alphabet.symbols)
    return Dfa(alphabet, states, {(q, s): s for q in states for s in alphabet}, BOS)


def copy_previous_uhat(alphabet="ab") -> UhatModel:
    """One layer whose single head attends to the previous position (all scores tie,
    so the rightmost earlier position wins) and copies its symbol code into a second block."""
    alphabet = as_alphabet(alphabet)
    syms = (BOS,) + alphabet.symbols
    m = len(syms)
    width = 2 * m
    emb = {s: _one_hot(i, m) + (Fraction(0),) * m for i, s in enumerate(syms)}
    zero_row = (0,) * width
    wv = [zero_row] * m + [_one_hot(i, width) for i in range(m)]
    head = Head(wq=[zero_row], bq=[1], wk=[zero_row], bk=[1], wv=wv, bv=[0] * width)
    return UhatModel(alphabet, emb, [Layer(heads=[head])])


def _pair(prev, cur) -> str:
    return f"{prev}>{cur}"


def copy_previous_dfa(alphabet="ab") -> Dfa:
    """States ``bos`` and ``prev>cur``, mirroring :func:`copy_previous_uhat`."""
    alphabet = as_alphabet(alphabet)
    states = [BOS] + [_pair(BOS, s) for s in alphabet] + [_pair(p, s) for p in alphabet for s in alphabet]
    trans = {(BOS, s): _pair(BOS, s) for s in alphabet}
    for q in states[1:]:
        cur = q.split(">")[1]
        for s in alphabet:
            trans[(q, s)] = _pair(cur, s)
    return Dfa(alphabet, states, trans, BOS, [_pair("a", "b")] if {"a", "b"} <= set(alphabet) else [])


def ends_with_ab_classifier() -> Classifier:
    """Boolean classifier over the copy-previous DFA: the last two symbols are ``ab``."""
    M = copy_previous_dfa()
    return Classifier(DfaEncoder(M), lambda q: Bool(q in M.accepting), Semiring.BOOLEAN)


def ends_with_ab_uhat_output(h) -> Bool:
    """Same classifier read off a copy-previous UHAT state vector."""
    return Bool(h == _one_hot(2, 3) + _one_hot(1, 3))


FIXTURES: dict = {
    "fig1a": fig1a_dfa,
    "fig1b": fig1b_dfa,
    "fig1c": fig1c_wnfa,
    "ab_star_dfa": ab_star_dfa,
    "aab_star_dfa": aab_star_dfa,
    "ab_star_formula": ab_star_formula,
    "ab_star": ab_star_autoregressor,
    "half_a_star": half_a_star_autoregressor,
    "one_a_star": one_a_star_classifier,
    "one_a_star_candidate": one_a_star_autoregressor,
    "last_symbol_uhat": last_symbol_uhat,
    "last_symbol_dfa": last_symbol_dfa,
    "copy_previous_uhat": copy_previous_uhat,
    "copy_previous_dfa": copy_previous_dfa,
    "ends_with_ab": ends_with_ab_classifier,
}


def fixture(name: str):
    """Build a fixture by name; ``l_k(3)`` (or ``l3``) gives the three-block language."""
    m = re.fullmatch(r"l_?k?\(?(\d+)\)?", name)
    if m:
        return l_k(int(m.group(1)))
    try:
        build: Callable = FIXTURES[name]
    except KeyError:
        known = ", ".join(sorted(FIXTURES) + ["l_k(K)"])
        raise KeyError(f"unknown fixture {name!r}; known: {known}") from None
    return build()


def fixture_files() -> dict:
    """File name -> text for every fixture that has a file form."""
    from .io import dump_automaton, dump_model
    from .uhat import dump_uhat

    files = {
        "fig1a.aut": dump_automaton(fig1a_dfa()),
        "fig1b.aut": dump_automaton(fig1b_dfa()),
        "fig1c.aut": dump_automaton(fig1c_wnfa()),
        "aab_star.aut": dump_automaton(aab_star_dfa()),
        "last_symbol.aut": dump_automaton(last_symbol_dfa()),
        "copy_previous.aut": dump_automaton(copy_previous_dfa()),
        "ab_star.ltl": AB_STAR_FORMULA + "\n",
        "ab_star.model": dump_model(ab_star_autoregressor()),
        "half_a_star.model": dump_model(half_a_star_autoregressor()),
        "one_a_star.model": dump_model(one_a_star_classifier()),
        "one_a_star_candidate.model": dump_model(one_a_star_autoregressor()),
        "ends_with_ab.model": dump_model(ends_with_ab_classifier(), "copy_previous.aut"),
        "last_symbol.uhat": dump_uhat(last_symbol_uhat()),
        "copy_previous.uhat": dump_uhat(copy_previous_uhat()),
    }
    for k in range(1, 7):
        files[f"l_{k}.aut"] = dump_automaton(l_k(k))
    return files


__all__ = [
    "AB_STAR_FORMULA", "FIXTURES", "aab_star_dfa", "ab_star_autoregressor", "ab_star_dfa",
    "ab_star_formula", "copy_previous_dfa", "copy_previous_uhat", "ends_with_ab_classifier",
    "ends_with_ab_uhat_output", "fig1a_dfa", "fig1b_dfa", "fig1c_closed_form", "fig1c_wnfa", "fixture",
    "fixture_files", "half_a_star_autoregressor", "l_k", "last_symbol_dfa", "last_symbol_uhat",
    "one_a_star_autoregressor", "one_a_star_classifier",
]

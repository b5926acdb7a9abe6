"""Shared hypothesis strategies and samplers for the test suite."""

import random
from fractions import Fraction

from hypothesis import strategies as st

from weighted_ltl.logic import Alphabet, And, Bos, Formula, H, Not, S, Sym, Y
from weighted_ltl.oracle import random_formula

AB = Alphabet(("a", "b"))
ABC = Alphabet(("a", "b", "c"))

# criterion number -> one summary line, filled in by the acceptance suite
CRITERIA: dict = {}


def formulas(alphabet=AB, ops=("Y", "H", "S"), max_leaves=12) -> st.SearchStrategy:
    leaves = st.one_of(st.sampled_from([Sym(s) for s in alphabet]), st.just(Bos()))

    def extend(inner):
        parts = [st.builds(Not, inner), st.builds(And, inner, inner)]
        if "Y" in ops:
            parts.append(st.builds(Y, inner))
        if "H" in ops:
            parts.append(st.builds(H, inner))
        if "S" in ops:
            parts.append(st.builds(S, inner, inner))
        return st.one_of(*parts)

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def words(alphabet=AB, max_size=6) -> st.SearchStrategy:
    return st.lists(st.sampled_from(alphabet.symbols), max_size=max_size).map(tuple)


def sample_formulas(seed: int, count: int, alphabet=AB, depth=4, ops=("Y", "H", "S")) -> list[Formula]:
    r = random.Random(seed)
    return [random_formula(r, alphabet, depth, ops) for _ in range(count)]


def random_uhat(rng: random.Random, alphabet=AB, width=3, layers=2):
    """Small random hard-attention model with entries in {-1, 0, 1, 1/2}."""
    from weighted_ltl.uhat import Dense, Head, Layer, UhatModel

    def entry():
        return rng.choice([-1, 0, 0, 1, Fraction(1, 2)])

    def matrix(rows, cols):
        return [[entry() for _ in range(cols)] for _ in range(rows)]

    emb = {s: [entry() for _ in range(width)] for s in ("bos",) + alphabet.symbols}
    built = []
    for _ in range(rng.randint(0, layers)):
        dk = rng.randint(1, 2)
        heads = [Head(matrix(dk, width), [entry() for _ in range(dk)], matrix(dk, width),
                      [entry() for _ in range(dk)], matrix(width, width), [0] * width)
                 for _ in range(rng.randint(1, 2))]
        ffn = [Dense(matrix(width, width), [entry() for _ in range(width)])] if rng.random() < 0.5 else []
        built.append(Layer(heads, rng.random() < 0.7, ffn, rng.random() < 0.7))
    return UhatModel(alphabet, emb, built)

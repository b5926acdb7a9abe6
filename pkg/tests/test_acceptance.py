"""The ten acceptance criteria, each at exact (zero-tolerance) arithmetic.

Run under pytest, or directly with ``python tests/test_acceptance.py`` for a
plain PASS/FAIL listing.
"""

import functools
import itertools
import random
import re
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from strategies import CRITERIA, random_uhat  # noqa: E402
from weighted_ltl.automata import (is_counter_free_dfa, is_counter_free_nfa_support,  # noqa: E402
                                   is_determinizable_twins)
from weighted_ltl.closure import build_closure_dfa  # noqa: E402
from weighted_ltl.fixtures import (aab_star_dfa, ab_star_autoregressor, copy_previous_dfa,  # noqa: E402
                                   copy_previous_uhat, ends_with_ab_classifier, ends_with_ab_uhat_output,
                                   fig1a_dfa, fig1b_dfa, fig1c_closed_form, fig1c_wnfa,
                                   half_a_star_autoregressor, l_k, last_symbol_dfa, last_symbol_uhat,
                                   one_a_star_autoregressor, one_a_star_classifier)
from weighted_ltl.logic import (Alphabet, BatchEvaluator, fragment_of, models,  # noqa: E402
                                strings_of_length, strings_upto, y_depth)
from weighted_ltl.models import (Autoregressor, Classifier, DfaEncoder, TupleEncoder,  # noqa: E402
                                 classifier_mass, classifier_to_step_function, classifier_weight,
                                 step_function_to_classifier, string_weight, verify_normalization)
from weighted_ltl.oracle import (ExtensionOracle, encoders_equivalent_upto, languages_equal_upto,  # noqa: E402
                                 random_formula, random_formula_y1, total_mass_upto)
from weighted_ltl.semiring import Bool, ExtRat, Semiring  # noqa: E402
from weighted_ltl.transforms import (autoregressor_to_classifier, bigram_map, classifier_formula,  # noqa: E402
                                     classifier_to_autoregressor, eos_reading, next_sigma, noy_transform,
                                     prefix_transform, stutter_invariant)
from weighted_ltl.uhat import encode, extract_states  # noqa: E402

ALPHABETS = [Alphabet(("a",)), Alphabet(("a", "b")), Alphabet(("a", "b", "c"))]
AB = ALPHABETS[1]
SEED = 20261016


def criterion(number: int, title: str):
    """Record a one-line verdict for the criterion, then re-raise any failure."""
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            start = time.perf_counter()
            try:
                detail = fn()
            except BaseException as exc:
                msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
                CRITERIA[number] = f"[{number:2d}] FAIL  {title}: {msg}"
                raise
            secs = time.perf_counter() - start
            CRITERIA[number] = f"[{number:2d}] PASS  {title} ({detail}; {secs:.1f}s)"
        return run
    return wrap


def sample(rng, count, depth, ops=("Y", "H", "S")):
    """``count`` random formulas, cycling through alphabets of size 1, 2 and 3."""
    out = []
    for i in range(count):
        alphabet = ALPHABETS[i % 3]
        out.append((random_formula(rng, alphabet, depth, ops), alphabet))
    return out


@criterion(1, "next law")
def test_c1_next_law():
    checks = 0
    for phi, alphabet in sample(random.Random(SEED + 1), 500, 5):
        for sigma in alphabet:
            nxt = next_sigma(phi, sigma)
            assert fragment_of(nxt) <= fragment_of(phi), (phi, sigma)
            for length in range(7):
                rows = strings_of_length(alphabet, length)
                here = BatchEvaluator(alphabet, length, rows).final(nxt)
                extended = BatchEvaluator(alphabet, length + 1, [w + (sigma,) for w in rows]).final(phi)
                assert here == extended, (phi, sigma, length)
                checks += len(rows)
    return f"500 formulas, {checks} string/symbol checks"


@criterion(2, "prefix law")
def test_c2_prefix_law():
    checks = 0
    for phi, alphabet in sample(random.Random(SEED + 2), 500, 5):
        pre = prefix_transform(phi, alphabet)
        assert fragment_of(pre) <= fragment_of(phi), phi
        oracle = ExtensionOracle(phi, alphabet, len(build_closure_dfa(phi, alphabet).states))
        for length in range(7):
            batch = BatchEvaluator(alphabet, length)
            mask = batch.final(pre)
            for r, u in enumerate(batch.rows):
                assert bool(mask >> r & 1) == oracle.extendable(u), (phi, u)
                checks += 1
    return f"500 formulas, {checks} strings"


def random_boolean_classifier(rng):
    m = rng.choice([1, 1, 2])
    formulas = [random_formula(rng, AB, 3) for _ in range(m)]
    table = {h: Bool(rng.random() < 0.5) for h in itertools.product((True, False), repeat=m)}
    return Classifier(TupleEncoder(formulas, AB), table, Semiring.BOOLEAN)


def nonempty_classifiers(count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        C = random_boolean_classifier(rng)
        if not build_closure_dfa(classifier_formula(C), AB).is_empty():
            out.append(C)
    return out


@criterion(3, "classifier to autoregressor")
def test_c3_classifier_to_autoregressor():
    for C in nonempty_classifiers(200, SEED + 3):
        A = classifier_to_autoregressor(C)
        report = verify_normalization(A)
        assert report, report.reason
        compiled = A.compiled()
        rep = languages_equal_upto(lambda w: classifier_weight(C, w), compiled.weight, AB, 7)
        assert rep, str(rep)
    return "200 nonempty classifiers, normalized, equal on |w| <= 7"


def random_boolean_autoregressor(rng):
    m = rng.choice([1, 2])
    formulas = [random_formula(rng, AB, 3) for _ in range(m)]
    rows = {h: {s: Bool(rng.random() < 0.6) for s in ("a", "b", "eos")}
            for h in itertools.product((True, False), repeat=m)}
    return Autoregressor(TupleEncoder(formulas, AB), rows, Semiring.BOOLEAN)


@criterion(4, "autoregressor to classifier")
def test_c4_autoregressor_to_classifier():
    cases = []
    for C in nonempty_classifiers(100, SEED + 4):
        cases.append((classifier_to_autoregressor(C), lambda w, C=C: classifier_weight(C, w)))
    rng = random.Random(SEED + 40)
    for _ in range(100):
        A = random_boolean_autoregressor(rng)
        cases.append((A, lambda w, A=A: string_weight(A, w)))
    hand = ab_star_autoregressor()
    cases.append((hand, lambda w: string_weight(hand, w)))
    for A, language in cases:
        C = autoregressor_to_classifier(A)
        allowed = set().union(*(fragment_of(f) for f in A.encoder.formulas)) | {"Y", "H"}
        assert fragment_of(C.encoder.formulas[0]) <= allowed
        assert y_depth(C.encoder.formulas[0]) <= max(y_depth(f) for f in A.encoder.formulas) + 1
        rep = languages_equal_upto(lambda w: classifier_weight(C, w), language, AB, 7)
        assert rep, str(rep)
    return f"{len(cases)} autoregressors, equal on |w| <= 7, within fragment + Y,H"


@criterion(5, "weighted NFA closed form, mass and twins")
def test_c5_fig1c():
    N = fig1c_wnfa()
    for n in range(1, 21):
        assert N.weight("a" * n) == ExtRat(fig1c_closed_form(n)), n
    mass = total_mass_upto(N, 40)
    assert mass >= 1 - Fraction(3, 4) ** 39
    twins = is_determinizable_twins(N)
    assert not twins and set(twins.pair) == {"q1", "q2"}
    return f"20 weights exact, mass(40) >= 1 - (3/4)^39, pair {twins.pair}"


@criterion(6, "counter-free verdicts")
def test_c6_counter_free():
    a = is_counter_free_dfa(fig1a_dfa())
    assert a and a.k == 2
    b = is_counter_free_dfa(fig1b_dfa())
    assert not b and b.witness == ("a",)
    for k in range(1, 7):
        assert is_counter_free_dfa(l_k(k)), k
    assert is_counter_free_nfa_support(fig1c_wnfa())
    return "fig1a k=2, fig1b witness a, l_1..l_6, fig1c support"


@criterion(7, "separation witnesses")
def test_c7_separations():
    A = ab_star_autoregressor()
    for w in strings_upto(AB, 8):
        assert bool(string_weight(A, w)) == bool(re.fullmatch("(ab)*", "".join(w))), w
    res = stutter_invariant(fig1a_dfa())
    assert not res
    u, s, v = res.witness
    M = fig1a_dfa()
    assert M.accepts(u + (s,) + v) and not M.accepts(u + (s, s) + v)
    assert M.accepts("ab") and not M.accepts("aabb")
    assert not stutter_invariant(aab_star_dfa())
    assert verify_normalization(half_a_star_autoregressor())
    assert not verify_normalization(one_a_star_autoregressor())
    assert classifier_mass(one_a_star_classifier()) == ExtRat.inf()
    return f"(ab)* exact to 8, witness {res}, (1/2 a)* normalized, (1a)* mass inf"


@criterion(8, "noy identity")
def test_c8_noy():
    rng = random.Random(SEED + 8)
    checks = 0
    for i in range(200):
        alphabet = ALPHABETS[1 + i % 2]
        phi = random_formula_y1(rng, alphabet, 4)
        target = noy_transform(phi, alphabet)
        assert "Y" not in fragment_of(target)
        for w in strings_upto(alphabet, 6):
            if w:
                assert models(bigram_map(w), target) == eos_reading(phi, w), (phi, w)
                checks += 1
    return f"200 formulas, {checks} bigram images"


@criterion(9, "hard-attention transformers")
def test_c9_uhat():
    rng = random.Random(SEED + 9)
    for _ in range(100):
        Tm = random_uhat(rng)
        for w in strings_of_length(AB, 6):
            full = encode(Tm, w)
            for k in range(6):
                assert encode(Tm, w[:k]) == full[: k + 1]
    for Tm, M in [(last_symbol_uhat(), last_symbol_dfa()), (copy_previous_uhat(), copy_previous_dfa())]:
        table = extract_states(Tm, 4)
        assert table.saturated and not table.conflicts
        assert encoders_equivalent_upto(table.encoder, DfaEncoder(M), 6)
    E = extract_states(copy_previous_uhat(), 4).encoder
    C = Classifier(E, ends_with_ab_uhat_output, Semiring.BOOLEAN)
    D = ends_with_ab_classifier()
    assert encoders_equivalent_upto(C.encoder, D.encoder, 6)
    assert languages_equal_upto(lambda w: classifier_weight(C, w), lambda w: classifier_weight(D, w), AB, 6)
    return "100 random models causal on |w| <= 6, fixtures saturate and match their DFAs"


@criterion(10, "step functions")
def test_c10_step_functions():
    rng = random.Random(SEED + 10)
    values = [0, 1, 2, Fraction(1, 2), Fraction(5, 3), ExtRat.inf()]
    largest = 0
    for i in range(60):
        m = i % 4
        formulas = [random_formula(rng, AB, 3) for _ in range(m)]
        table = {h: ExtRat(v) if not isinstance(v, ExtRat) else v
                 for h, v in zip(itertools.product((True, False), repeat=m),
                                 (rng.choice(values) for _ in range(2 ** m)))}
        C = Classifier(TupleEncoder(formulas, AB), table, Semiring.REAL)
        S = classifier_to_step_function(C)
        back = step_function_to_classifier(S)
        for w in strings_upto(AB, 6):
            assert C(w) == S(w) == back(w), w
        image = {C(w) for w in strings_upto(AB, 10)}
        assert len(image) <= 2 ** m
        largest = max(largest, len(image))
    return f"60 classifiers round trip on |w| <= 6, largest image {largest}"


ALL = [test_c1_next_law, test_c2_prefix_law, test_c3_classifier_to_autoregressor,
       test_c4_autoregressor_to_classifier, test_c5_fig1c, test_c6_counter_free, test_c7_separations,
       test_c8_noy, test_c9_uhat, test_c10_step_functions]


if __name__ == "__main__":
    failed = 0
    for check in ALL:
        try:
            check()
        except BaseException:
            failed += 1
    for n in sorted(CRITERIA):
        print(CRITERIA[n])
    sys.exit(1 if failed else 0)

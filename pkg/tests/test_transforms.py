import random

import pytest
from hypothesis import given

from strategies import AB, formulas, words
from weighted_ltl.automata import Dfa
from weighted_ltl.closure import build_closure_dfa
from weighted_ltl.fixtures import aab_star_dfa, ab_star_autoregressor, ab_star_dfa, l_k
from weighted_ltl.logic import (BOS, EOS, FALSE, TRUE, And, Bos, H, Not, Or, S, Sym, Y, fragment_of,
                                language_upto, models, parse_formula, strings_upto, truth_values)
from weighted_ltl.models import Autoregressor, Classifier, TupleEncoder, classifier_weight, string_weight
from weighted_ltl.oracle import ExtensionOracle, languages_equal_upto, random_formula, random_formula_y1
from weighted_ltl.semiring import Bool, Semiring
from weighted_ltl.transforms import (EmptyLanguage, NotAdmissible, autoregressor_to_classifier, bigram_alphabet,
                                     bigram_map, classifier_formula, classifier_to_autoregressor, eos_reading,
                                     formula_classifier, formula_stutter_invariant, is_bigram_string, next_sigma,
                                     noy_rules_literal, noy_transform, prefix_transform, stutter_invariant,
                                     unbigram)

a, b = Sym("a"), Sym("b")


# -- next --------------------------------------------------------------------


def test_next_examples():
    assert next_sigma(a, "a") == TRUE
    assert next_sigma(b, "a") == FALSE
    phi = parse_formula("H b & a")
    assert next_sigma(Y(phi), "a") == phi
    since = S(a, b)
    got = next_sigma(since, "a")
    assert got == since
    for w in strings_upto(AB, 6):
        assert models(w, got) == models(w + ("a",), since)


def test_next_unsimplified_agrees():
    phi = parse_formula("(a S (b | bos)) & !Y H a")
    for s in AB:
        raw, simple = next_sigma(phi, s, simplified=False), next_sigma(phi, s)
        for w in strings_upto(AB, 5):
            assert models(w, raw) == models(w, simple) == models(w + (s,), phi)


@given(formulas(max_leaves=10), words(max_size=5))
def test_next_law(phi, w):
    for s in AB:
        assert models(w, next_sigma(phi, s)) == models(w + (s,), phi)


def test_next_stays_in_fragment():
    rng = random.Random(3)
    for _ in range(50):
        phi = random_formula(rng, AB, 4, ops=("Y", "H"))
        assert fragment_of(next_sigma(phi, "a")) <= fragment_of(phi)


# -- prefix ------------------------------------------------------------------


def test_prefix_examples():
    assert language_upto(prefix_transform(FALSE, AB), AB, 4) == set()
    assert language_upto(prefix_transform(TRUE, AB), AB, 3) == set(strings_upto(AB, 3))
    phi = parse_formula("a & Y a")
    assert language_upto(prefix_transform(phi, AB), AB, 6) == set(strings_upto(AB, 6))
    # bos is never true again, so only the empty string can extend to it
    assert language_upto(prefix_transform(Bos(), AB), AB, 4) == {()}


@pytest.mark.parametrize("text", ["H (bos | a)", "(bos | b) & H((a -> Y(bos | b)) & (b -> Y a))",
                                  "a S (bos | b)", "Y Y a & !b", "H(bos | !Y(bos) | a)"])
def test_prefix_against_extension_oracle(text):
    phi = parse_formula(text, AB)
    pre = prefix_transform(phi, AB)
    oracle = ExtensionOracle(phi, AB, len(build_closure_dfa(phi, AB).states))
    for u in strings_upto(AB, 6):
        assert models(u, pre) == oracle.extendable(u), u


# -- classifier <-> autoregressor -------------------------------------------


def test_cls2ar_matches_hand_built_ab_star():
    phi = parse_formula("(bos | b) & H((a -> Y(bos | b)) & (b -> Y a))", AB)
    A = classifier_to_autoregressor(formula_classifier(phi, AB))
    hand = ab_star_autoregressor()
    assert languages_equal_upto(lambda w: string_weight(A, w), lambda w: string_weight(hand, w), AB, 8)
    assert all(string_weight(A, w) == Bool(ab_star_dfa().accepts(w)) for w in strings_upto(AB, 8))


def test_cls2ar_true_allows_everything():
    A = classifier_to_autoregressor(formula_classifier(TRUE, AB))
    for u in strings_upto(AB, 4):
        assert all(A.row(A.encoder.trace(u)[-1]).values())


def test_cls2ar_dead_continuations():
    phi = parse_formula("H (bos | a)", AB)
    A = classifier_to_autoregressor(formula_classifier(phi, AB))
    for w in strings_upto(AB, 6):
        assert string_weight(A, w) == Bool("b" not in w)
    # after b nothing is live, and the all-false row allows everything
    h = A.encoder.trace(("b",))[-1]
    assert not any(h)
    assert all(A.row(h).values())


def test_cls2ar_rejects_empty_language():
    with pytest.raises(EmptyLanguage):
        classifier_to_autoregressor(formula_classifier(parse_formula("H a"), AB))
    with pytest.raises(ValueError):
        classifier_to_autoregressor(Classifier(TupleEncoder((a,), AB), {(True,): 1, (False,): 0}))


def test_classifier_formula_multi_entry():
    C = Classifier(TupleEncoder((a, Y(b)), AB), {(True, True): Bool(True)}, Semiring.BOOLEAN, Bool(False))
    phi = classifier_formula(C)
    for w in strings_upto(AB, 5):
        assert models(w, phi) == bool(classifier_weight(C, w))


def test_ar2cls_ab_star():
    C = autoregressor_to_classifier(ab_star_autoregressor())
    assert fragment_of(C.encoder.formulas[0]) <= {"Y", "H"}
    for w in strings_upto(AB, 8):
        assert classifier_weight(C, w) == Bool(ab_star_dfa().accepts(w))


def test_ar2cls_epsilon_only():
    A = Autoregressor(TupleEncoder((Bos(),), AB),
                      lambda h: {"a": Bool(False), "b": Bool(False), EOS: Bool(h[0])}, Semiring.BOOLEAN)
    C = autoregressor_to_classifier(A)
    assert {w for w in strings_upto(AB, 5) if classifier_weight(C, w)} == {()}


@pytest.mark.parametrize("seed", range(8))
def test_round_trip_random(seed):
    rng = random.Random(seed)
    phi = random_formula(rng, AB, 3, ops=("Y", "H"))
    if build_closure_dfa(phi, AB).is_empty():
        phi = Or(phi, Bos())
    back = autoregressor_to_classifier(classifier_to_autoregressor(formula_classifier(phi, AB)))
    for w in strings_upto(AB, 6):
        assert classifier_weight(back, w) == Bool(models(w, phi))


# -- bigrams and noy ----------------------------------------------------------


def test_bigram_examples():
    assert bigram_map("ab") == ((BOS, "a"), ("a", "b"), ("b", EOS))
    assert bigram_map("a") == ((BOS, "a"), ("a", EOS))
    assert bigram_map("aab") == ((BOS, "a"), ("a", "a"), ("a", "b"), ("b", EOS))
    with pytest.raises(ValueError):
        bigram_map("")
    assert len(bigram_alphabet(AB)) == 9


@given(words(max_size=6))
def test_bigram_inverse(w):
    if w:
        assert is_bigram_string(bigram_map(w))
        assert unbigram(bigram_map(w)) == w


def test_is_bigram_string_rejects():
    assert not is_bigram_string(((BOS, "a"), ("b", EOS)))
    assert not is_bigram_string(((BOS, EOS),))
    assert not is_bigram_string(((BOS, "a"),))


def test_noy_examples():
    assert noy_transform(Y(a), AB) == Or(Or(Sym(("a", "a")), Sym(("a", "b"))), Sym(("a", EOS)))
    assert noy_transform(Bos(), AB) == Bos()
    phi = H(And(Y(a), b))
    assert noy_transform(phi, AB) == H(And(noy_transform(Y(a), AB), noy_transform(b, AB)))


def test_noy_rejects():
    with pytest.raises(NotAdmissible):
        noy_transform(Y(Y(a)), AB)
    with pytest.raises(NotAdmissible):
        noy_transform(S(a, b), AB)


def check_noy_identity(phi, n=6):
    target = noy_transform(phi, AB)
    assert "Y" not in fragment_of(target)
    for w in strings_upto(AB, n):
        if not w:
            continue
        big = bigram_map(w)
        assert truth_values(target, big) == truth_values(phi, w + (EOS,)), w
        assert models(big, target) == eos_reading(phi, w)


def test_noy_identity_examples():
    for text in ["Y a", "H(Y a & b)", "H(bos | Y !a)", "Y H a", "!Y bos & H(a | Y b)"]:
        check_noy_identity(parse_formula(text, AB))


@pytest.mark.parametrize("seed", range(20))
def test_noy_identity_random(seed):
    check_noy_identity(random_formula_y1(random.Random(seed), AB, 4), n=5)


def test_unguarded_rules_disagree():
    # Y !a is false at the first position, but the unguarded rewrite makes it true there
    phi = Y(Not(a))
    w = ("a",)
    guarded = noy_transform(phi, AB)
    literal = noy_rules_literal(phi, AB)
    assert truth_values(guarded, bigram_map(w)) == truth_values(phi, w + (EOS,))
    assert truth_values(literal, bigram_map(w)) != truth_values(phi, w + (EOS,))


# -- stutter -----------------------------------------------------------------


def test_stutter_examples():
    a_star = Dfa.complete(AB, ["p"], {("p", "a"): "p"}, "p", ["p"])
    assert stutter_invariant(a_star)
    res = stutter_invariant(ab_star_dfa())
    assert not res and res.witness == ((), "a", ("b",))
    res = stutter_invariant(aab_star_dfa())
    assert not res
    u, s, v = res.witness
    assert aab_star_dfa().accepts(u + (s,) + v) != aab_star_dfa().accepts(u + (s, s) + v)
    assert "sigma=a" in str(res)


def test_stutter_formulas():
    assert formula_stutter_invariant(parse_formula("P a"), AB)
    assert not formula_stutter_invariant(parse_formula("Y a"), AB)
    assert stutter_invariant(l_k(3))


def test_stutter_witness_is_genuine():
    rng = random.Random(11)
    for _ in range(30):
        phi = random_formula(rng, AB, 3)
        res = formula_stutter_invariant(phi, AB)
        if not res:
            u, s, v = res.witness
            assert models(u + (s,) + v, phi) != models(u + (s, s) + v, phi)
        else:
            for w in strings_upto(AB, 4):
                for i, s in enumerate(w):
                    assert models(w, phi) == models(w[:i] + (s,) + w[i:], phi)

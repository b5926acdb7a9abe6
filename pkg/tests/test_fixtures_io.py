from importlib import resources
from fractions import Fraction

import pytest

from strategies import AB
from weighted_ltl.automata import Dfa, WeightedNfa, is_counter_free_dfa
from weighted_ltl.fixtures import (FIXTURES, ab_star_autoregressor, ends_with_ab_classifier, ends_with_ab_uhat_output,
                                   copy_previous_uhat, fig1a_dfa, fig1c_wnfa, fixture, fixture_files, l_k)
from weighted_ltl.io import (FormatError, dump_automaton, dump_model, load_automaton, load_model,
                             parse_tuple_label, read_automaton, read_model, tuple_label)
from weighted_ltl.logic import strings_upto
from weighted_ltl.models import classifier_weight, string_weight
from weighted_ltl.semiring import Bool
from weighted_ltl.uhat import encode


def test_catalog_builds():
    for name in FIXTURES:
        assert fixture(name) is not None
    assert fixture("l_k(3)").states == fixture("l3").states
    with pytest.raises(KeyError, match="known"):
        fixture("nope")


@pytest.mark.parametrize("k", range(1, 7))
def test_l_k(k):
    M = l_k(k)
    assert len(M.states) == k + 1
    assert is_counter_free_dfa(M).counter_free
    for w in strings_upto(AB, 6):
        changes = sum(1 for x, y in zip(w, w[1:]) if x != y)
        expected = len(w) == 0 or (changes + (w[0] == "b")) < k
        assert M.accepts(w) == expected, w


def test_ends_with_ab_agrees_with_uhat():
    C = ends_with_ab_classifier()
    Tm = copy_previous_uhat()
    for w in strings_upto(AB, 6):
        assert classifier_weight(C, w) == Bool(w[-2:] == ("a", "b"))
        assert ends_with_ab_uhat_output(encode(Tm, w)[-1]) == classifier_weight(C, w)


def test_packaged_data_is_current():
    data = resources.files("weighted_ltl") / "data"
    for name, text in fixture_files().items():
        assert (data / name).read_text() == text, name


def test_automaton_round_trip():
    for M in (fig1a_dfa(), fig1c_wnfa(), l_k(4)):
        text = dump_automaton(M)
        back = load_automaton(text)
        assert dump_automaton(back) == text
        for w in strings_upto(M.alphabet, 5):
            assert back.weight(w) == M.weight(w) if isinstance(M, WeightedNfa) else back.accepts(w) == M.accepts(w)


def test_dfa_completion_and_comments():
    M = load_automaton("kind dfa  # a comment\nalphabet a b\nstates p\ninitial p\np a p\naccepting p\n")
    assert isinstance(M, Dfa) and M.accepts("aa") and not M.accepts("ab")


@pytest.mark.parametrize("text, fragment", [
    ("alphabet a\n", "kind"),
    ("kind tree\n", "kind must be"),
    ("kind dfa\nstates p\ninitial p\n", "alphabet"),
    ("kind dfa\nalphabet a\nstates p\n", "initial"),
    ("kind dfa\nalphabet a\nstates p\ninitial p\np c p\n", "not in the alphabet"),
    ("kind dfa\nalphabet a\nstates p q\ninitial p\np a p\np a q\n", "second transition"),
    ("kind wnfa\nalphabet a\nsemiring real\nstates p\ninitial p\np a p\n", "WEIGHT"),
    ("kind wnfa\nalphabet a\nsemiring real\nstates p\ninitial p\np a p x\n", "line 6"),
    ("kind dfa\nalphabet a\nstates p\ninitial p\nwhatever\n", "cannot read"),
])
def test_automaton_format_errors(text, fragment):
    with pytest.raises(FormatError, match=fragment):
        load_automaton(text)


def test_tuple_labels():
    assert tuple_label((True, False)) == "10"
    assert tuple_label(()) == "-"
    assert parse_tuple_label("-", 0) == ()
    assert parse_tuple_label("01", 2) == (False, True)
    with pytest.raises(FormatError):
        parse_tuple_label("0", 2)
    with pytest.raises(FormatError):
        parse_tuple_label("0x", 2)


def test_model_round_trip(tmp_path):
    files = fixture_files()
    for name, text in files.items():
        (tmp_path / name).write_text(text)
    for name in ("ab_star.model", "half_a_star.model", "one_a_star.model", "ends_with_ab.model"):
        model = read_model(str(tmp_path / name))
        path = "copy_previous.aut" if name == "ends_with_ab.model" else None
        assert dump_model(model, path) == files[name]
    A = read_model(str(tmp_path / "ab_star.model"))
    hand = ab_star_autoregressor()
    for w in strings_upto(AB, 6):
        assert string_weight(A, w) == string_weight(hand, w)


def test_uhat_encoder_model(tmp_path):
    (tmp_path / "m.uhat").write_text(fixture_files()["last_symbol.uhat"])
    (tmp_path / "c.model").write_text("model classifier\nsemiring real\nalphabet a b\nencoder uhat m.uhat\n"
                                      "state 0,1,0 1/2\ndefault 0\n")
    C = read_model(str(tmp_path / "c.model"))
    assert classifier_weight(C, "ba").value == Fraction(1, 2)
    assert classifier_weight(C, "ab").value == 0


@pytest.mark.parametrize("text, fragment", [
    ("semiring bool\n", "model"),
    ("model tree\n", "classifier"),
    ("model classifier\nsemiring bool\nencoder tuple\n", "alphabet"),
    ("model classifier\nsemiring bool\nalphabet a\n", "encoder"),
    ("model classifier\nsemiring bool\nalphabet a\nencoder tuple\nformula a\nstate 1 true false\n", "WEIGHT"),
    ("model autoregressor\nsemiring bool\nalphabet a\nencoder tuple\nstate - c:true\n", "not a symbol"),
    ("model autoregressor\nsemiring bool\nalphabet a\nencoder tuple\nstate - a=true\n", "SYMBOL:WEIGHT"),
    ("model classifier\nsemiring bool\nalphabet a\nencoder magic\n", "unknown encoder"),
    ("model classifier\nsemiring bool\nalphabet a\nencoder tuple\nformula (a S\n", "line 5"),
])
def test_model_format_errors(text, fragment):
    with pytest.raises(FormatError, match=fragment):
        load_model(text)


def test_read_automaton_missing(tmp_path):
    with pytest.raises(OSError):
        read_automaton(str(tmp_path / "missing.aut"))

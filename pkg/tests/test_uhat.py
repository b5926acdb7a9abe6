import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from strategies import random_uhat, words
from weighted_ltl.fixtures import copy_previous_dfa, copy_previous_uhat, last_symbol_dfa, last_symbol_uhat
from weighted_ltl.models import UnsupportedEncoder
from weighted_ltl.oracle import encoders_equivalent_upto
from weighted_ltl.uhat import (Dense, DimensionError, Head, Layer, UhatFormatError, UhatModel, attend,
                               attention_positions, dump_uhat, encode, extract_states, load_uhat, trace_text)


def vecs(*rows):
    return [tuple(Fraction(x) for x in r) for r in rows]


def test_attend_position_zero_gets_zero():
    out = attend(vecs([1]), vecs([1]), vecs([5, 6]))
    assert out == [(0, 0)]


def test_attend_rightmost_argmax():
    # scores at i=3 over j=0,1,2 are 1, 2, 2
    q = vecs([0], [0], [0], [1])
    k = vecs([1], [2], [2], [9])
    v = vecs([10], [11], [12], [13])
    out = attend(q, k, v)
    assert out[3] == (12,)
    assert attention_positions(q, k)[3] == 2


def test_attend_ties_pick_previous():
    q = k = vecs(*[[0]] * 5)
    v = vecs(*[[i] for i in range(5)])
    assert attention_positions(q, k) == [None, 0, 1, 2, 3]
    assert [x[0] for x in attend(q, k, v)[1:]] == [0, 1, 2, 3]


def test_attend_checks_shapes():
    with pytest.raises(DimensionError):
        attend(vecs([1]), vecs([1], [2]), vecs([1]))


def test_zero_layer_model():
    Tm = last_symbol_uhat()
    assert encode(Tm, "ab") == [Tm.embeddings["bos"], Tm.embeddings["a"], Tm.embeddings["b"]]
    ex = extract_states(Tm, 3)
    assert len(ex.states) == 3 and ex.saturated and not ex.conflicts


def test_copy_previous():
    Tm = copy_previous_uhat()
    h = encode(Tm, "ab")
    # position 2 sees the code of a copied into the second block
    assert h[2] == (0, 0, 1, 0, 1, 0)
    ex = extract_states(Tm, 4)
    assert len(ex.states) <= 9 and ex.saturated
    assert len(ex.states) == len(copy_previous_dfa().states)


def test_saturation_needs_length():
    assert not extract_states(last_symbol_uhat(), 0).saturated
    assert not extract_states(copy_previous_uhat(), 1).saturated


def test_extracted_encoders_match_fixture_dfas():
    from weighted_ltl.models import DfaEncoder
    for Tm, M in [(last_symbol_uhat(), last_symbol_dfa()), (copy_previous_uhat(), copy_previous_dfa())]:
        E = extract_states(Tm, 4).encoder
        assert encoders_equivalent_upto(E, DfaEncoder(M), 6)
        mach = E.machine()
        for w in [(), ("a",), ("b", "a", "a")]:
            assert mach.label(mach.dfa.delta_star(mach.dfa.initial, w)) == E.trace(w)[-1]


def test_unsaturated_encoder_has_no_machine():
    with pytest.raises(UnsupportedEncoder):
        extract_states(copy_previous_uhat(), 1).encoder.machine()


@pytest.mark.parametrize("seed", range(25))
def test_random_models_are_causal(seed):
    Tm = random_uhat(random.Random(seed))
    rng = random.Random(seed + 1000)
    for _ in range(10):
        u = tuple(rng.choice("ab") for _ in range(rng.randint(0, 4)))
        v = tuple(rng.choice("ab") for _ in range(rng.randint(0, 3)))
        assert encode(Tm, u + v)[: len(u) + 1] == encode(Tm, u)


@given(st.integers(0, 10**6), words(max_size=4))
def test_dump_load_round_trip(seed, w):
    Tm = random_uhat(random.Random(seed))
    back = load_uhat(dump_uhat(Tm))
    assert back == Tm
    assert encode(back, w) == encode(Tm, w)


def test_fixture_round_trip_text():
    for Tm in (last_symbol_uhat(), copy_previous_uhat()):
        text = dump_uhat(Tm)
        assert dump_uhat(load_uhat(text)) == text


def test_dense_and_flags():
    Tm = UhatModel("a", {"bos": [1, -1], "a": [-2, 3]},
                   [Layer((), True, (Dense([[1, 0], [0, 1]], [0, 0]),), False)])
    assert encode(Tm, "a") == [(1, 0), (0, 3)]
    Tm2 = UhatModel("a", {"bos": [1, -1], "a": [-2, 3]},
                    [Layer((), True, (Dense([[1, 0], [0, 1]], [0, 0], relu=False),), True)])
    assert encode(Tm2, "a") == [(2, -2), (-4, 6)]
    assert "0 (2 -2)" in trace_text(Tm2, "a")


@pytest.mark.parametrize("text, fragment", [
    ("", "header"),
    ("uhat\nembed bos : 1\nembed a : 1\n", "alphabet"),
    ("uhat\nalphabet a\nembed bos : 1\n", "no embedding"),
    ("uhat\nalphabet a\nembed bos : 1\nembed a : x\n", "bad rational"),
    ("uhat\nalphabet a\nembed bos : 1\nembed a : 1\nhead\n", "outside a layer"),
    ("uhat\nalphabet a\nembed bos : 1\nembed a : 1\nlayer\nhead\n  wq : 1\n", "incomplete"),
    ("uhat\nalphabet a\nembed bos : 1\nembed a : 1\nlayer oops\n", "key=value"),
    ("uhat\nalphabet a\nembed bos : 1\nembed a : 1 2\n", "widths"),
])
def test_format_errors(text, fragment):
    with pytest.raises(UhatFormatError, match=fragment):
        load_uhat(text)


def test_head_shape_errors():
    with pytest.raises(DimensionError):
        Head([[1]], [0], [[1], [1]], [0, 0], [[1]], [0])
    Tm = UhatModel("a", {"bos": [1], "a": [1]}, [Layer([Head([[1]], [0], [[1]], [0], [[1, 1]], [0, 0])])])
    with pytest.raises(DimensionError):
        encode(Tm, "a")

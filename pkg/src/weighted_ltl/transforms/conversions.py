"""Boolean classifiers <-> Boolean autoregressors over formula tuples."""

from __future__ import annotations

import itertools

from ..closure import DEFAULT_BUDGET, build_closure_dfa
from ..logic.formula import (EOS, And, Bos, Formula, H, Not, Or, Sym, Y, conjoin, disjoin, simplify)
from ..models import Autoregressor, Classifier, TupleEncoder, UnsupportedEncoder
from ..semiring import Bool, Semiring
from .formulas import next_sigma, prefix_transform


class EmptyLanguage(ValueError):
    pass


def _cells(formulas) -> list:
    """``(h, phi_h)`` for every truth tuple ``h``; ``phi_h`` holds exactly in state ``h``."""
    return [(h, conjoin(phi if bit else Not(phi) for phi, bit in zip(formulas, h)))
            for h in itertools.product((True, False), repeat=len(formulas))]


def _tuple_encoder(model, what: str) -> TupleEncoder:
    if model.semiring is not Semiring.BOOLEAN:
        raise ValueError(f"{what} needs a Boolean model")
    if not isinstance(model.encoder, TupleEncoder):
        raise UnsupportedEncoder(f"{what} needs a formula-tuple encoder")
    return model.encoder


def classifier_formula(C: Classifier) -> Formula:
    """The single formula ``c(phi_1, ..., phi_m)`` defining a Boolean classifier's language."""
    enc = _tuple_encoder(C, "classifier_formula")
    accepted = []
    for h, phi_h in _cells(enc.formulas):
        try:
            if C.weight_of_state(h):
                accepted.append(phi_h)
        except KeyError:
            continue
    return simplify(disjoin(accepted))


def formula_classifier(phi: Formula, alphabet) -> Classifier:
    """The classifier ``((phi,), c(h) = h)``."""
    return Classifier(TupleEncoder((phi,), alphabet), {(True,): Bool(True), (False,): Bool(False)})


def classifier_to_autoregressor(C: Classifier, budget: int = DEFAULT_BUDGET) -> Autoregressor:
    """Autoregressor tracking ``next_s(prefix(phi))`` for each symbol ``s`` and ``phi`` for eos.

    At a state where no entry is true every outcome gets weight true."""
    enc = _tuple_encoder(C, "classifier_to_autoregressor")
    phi = classifier_formula(C)
    if build_closure_dfa(phi, enc.alphabet, budget).is_empty():
        raise EmptyLanguage("the classifier's language is empty; an autoregressor can only "
                            "define a nonempty language")
    pre = prefix_transform(phi, enc.alphabet, budget)
    formulas = [next_sigma(pre, s) for s in enc.alphabet] + [phi]
    outcomes = enc.alphabet.symbols + (EOS,)

    def output(h: tuple) -> dict:
        if any(h):
            return {s: Bool(bit) for s, bit in zip(outcomes, h)}
        return {s: Bool(True) for s in outcomes}

    return Autoregressor(TupleEncoder(formulas, enc.alphabet, budget), output, Semiring.BOOLEAN)


def autoregressor_to_classifier(A: Autoregressor) -> Classifier:
    """Classifier for ``H(bos | OR_s (Y phi_s & s)) & phi_eos``.

    ``phi_s`` holds exactly at the encoder states whose output allows ``s``."""
    enc = _tuple_encoder(A, "autoregressor_to_classifier")
    cells = _cells(enc.formulas)
    allowed: dict = {}
    for h, phi_h in cells:
        try:
            row = A.row(h)
        except KeyError:
            continue
        for s, weight in row.items():
            if weight:
                allowed.setdefault(s, []).append(phi_h)
    phi_sym = {s: simplify(disjoin(allowed.get(s, []))) for s in A.outcomes}
    steps = disjoin(And(Y(phi_sym[s]), Sym(s)) for s in enc.alphabet)
    phi = And(H(Or(Bos(), steps)), phi_sym[EOS])
    return formula_classifier(simplify(phi), enc.alphabet)

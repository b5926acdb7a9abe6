"""Constructive transformations on formulas, models and automata."""

from ..closure import ClosureDfa, StateBudgetExceeded, build_closure_dfa, build_tuple_closure_dfa
from .bigram import (NotAdmissible, bigram_alphabet, bigram_map, eos_reading, is_bigram_string,
                     noy_rules_literal, noy_transform, unbigram)
from .conversions import (EmptyLanguage, autoregressor_to_classifier, classifier_formula,
                          classifier_to_autoregressor, formula_classifier)
from .formulas import characteristic_formula, next_sigma, prefix_transform
from .stutter import StutterResult, formula_stutter_invariant, stutter_invariant

__all__ = [
    "ClosureDfa", "StateBudgetExceeded", "build_closure_dfa", "build_tuple_closure_dfa",
    "NotAdmissible", "bigram_alphabet", "bigram_map", "eos_reading", "is_bigram_string",
    "noy_rules_literal", "noy_transform", "unbigram", "EmptyLanguage",
    "autoregressor_to_classifier", "classifier_formula", "classifier_to_autoregressor",
    "formula_classifier", "characteristic_formula", "next_sigma", "prefix_transform",
    "StutterResult", "formula_stutter_invariant", "stutter_invariant",
]

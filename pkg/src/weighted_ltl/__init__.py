"""Past LTL, weighted automata, formula-tuple language models and unique-hard-attention
transformers, all with exact arithmetic."""

from .automata import (AlphabetMismatch, CounterFreeResult, Dfa, TwinsResult, UnsupportedSemiring,
                       WeightedNfa, coaccessible, dfa_run, is_counter_free_dfa,
                       is_counter_free_nfa_support, is_determinizable_twins, minimize_dfa, nfa_weight,
                       product_dfa, sibling_pairs)
from .closure import ClosureDfa, StateBudgetExceeded, build_closure_dfa, build_tuple_closure_dfa
from .fixtures import fixture
from .io import (FormatError, dump_automaton, dump_model, load_automaton, load_model, read_automaton,
                 read_model)
from .logic import (BOS, EOS, FALSE, TRUE, Alphabet, And, Bos, Formula, FormulaSyntaxError, H, Not, Or, S,
                    Sym, UnknownSymbolError, Y, as_alphabet, encode_with_tuple, fragment_of, language_upto,
                    models, parse_formula, satisfies, to_text, truth_values, y_depth)
from .models import (Autoregressor, Classifier, DfaEncoder, NormalizationReport, NotCounterFree,
                     StateEncoder, StepFunction, TupleEncoder, UnsupportedEncoder, classifier_mass,
                     classifier_to_step_function, classifier_weight, step_function_to_classifier,
                     string_weight, suffix_weight, symbol_weight, verify_normalization)
from .oracle import (encoders_equivalent_upto, languages_equal_upto, prefix_language_oracle,
                     total_mass_upto)
from .semiring import Bool, ExtRat, Semiring, SemiringMismatch
from .transforms import (EmptyLanguage, NotAdmissible, autoregressor_to_classifier, bigram_map,
                         classifier_formula, classifier_to_autoregressor, formula_classifier, next_sigma,
                         noy_transform, prefix_transform, stutter_invariant)
from .uhat import Dense, Head, Layer, UhatModel, encode, extract_states

__version__ = "0.1.0"

__all__ = [
    "AlphabetMismatch", "CounterFreeResult", "Dfa", "TwinsResult", "UnsupportedSemiring",
    "WeightedNfa", "coaccessible", "dfa_run", "is_counter_free_dfa", "is_counter_free_nfa_support",
    "is_determinizable_twins", "minimize_dfa", "nfa_weight", "product_dfa", "sibling_pairs",
    "ClosureDfa", "StateBudgetExceeded", "build_closure_dfa", "build_tuple_closure_dfa", "fixture",
    "FormatError", "dump_automaton", "dump_model", "load_automaton", "load_model", "read_automaton",
    "read_model", "BOS", "EOS", "FALSE", "TRUE", "Alphabet", "And", "Bos", "Formula",
    "FormulaSyntaxError", "H", "Not", "Or", "S", "Sym", "UnknownSymbolError", "Y", "as_alphabet",
    "encode_with_tuple", "fragment_of", "language_upto", "models", "parse_formula", "satisfies",
    "to_text", "truth_values", "y_depth", "Autoregressor", "Classifier", "DfaEncoder",
    "NormalizationReport", "NotCounterFree", "StateEncoder", "StepFunction", "TupleEncoder",
    "UnsupportedEncoder", "classifier_mass", "classifier_to_step_function", "classifier_weight",
    "step_function_to_classifier", "string_weight", "suffix_weight", "symbol_weight",
    "verify_normalization", "encoders_equivalent_upto", "languages_equal_upto",
    "prefix_language_oracle", "total_mass_upto", "Bool", "ExtRat", "Semiring", "SemiringMismatch",
    "EmptyLanguage", "NotAdmissible", "autoregressor_to_classifier", "bigram_map",
    "classifier_formula", "classifier_to_autoregressor", "formula_classifier", "next_sigma",
    "noy_transform", "prefix_transform", "stutter_invariant", "Dense", "Head", "Layer", "UhatModel",
    "encode", "extract_states",
]

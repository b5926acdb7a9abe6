"""Past LTL: syntax, parsing, semantics and fragments."""

from .formula import (BOS, EOS, FALSE, TRUE, Alphabet, And, Bos, Formula, H, Iff, Implies, Not,
                      Or, P, S, Sym, Y, as_alphabet, check_symbols, conjoin, disjoin, fragment_of,
                      simplify, size, subformulas, symbol_text, symbols_of, word_text, y_depth)
from .parser import FormulaSyntaxError, UnknownSymbolError, parse_formula
from .printer import to_text
from .semantics import (BatchEvaluator, encode_with_tuple, evaluate_all, language_upto, models,
                        satisfies, strings_of_length, strings_upto, truth_values)

__all__ = [
    "BOS", "EOS", "FALSE", "TRUE", "Alphabet", "And", "Bos", "Formula", "H", "Iff", "Implies",
    "Not", "Or", "P", "S", "Sym", "Y", "as_alphabet", "check_symbols", "conjoin", "disjoin",
    "fragment_of", "simplify", "size", "subformulas", "symbol_text", "symbols_of", "word_text",
    "y_depth", "FormulaSyntaxError", "UnknownSymbolError", "parse_formula", "to_text",
    "BatchEvaluator", "encode_with_tuple", "evaluate_all", "language_upto", "models",
    "satisfies", "strings_of_length", "strings_upto", "truth_values",
]

"""Command-line interface: ``weighted-ltl VERB [options]``.

Exit status is 0 for success or a true verdict, 1 for a false verdict (the
counterexample is printed) and 2 for usage, file or format errors.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from importlib import resources

from . import io
from .automata import (Dfa, UnsupportedSemiring, WeightedNfa, is_counter_free_dfa,
                       is_counter_free_nfa_support, is_determinizable_twins, minimize_dfa)
from .closure import DEFAULT_BUDGET, StateBudgetExceeded, build_closure_dfa
from .fixtures import FIXTURES, fixture, fixture_files
from .logic.formula import Formula, as_alphabet, fragment_of, size, symbol_text, symbols_of, word_text, y_depth
from .logic.parser import parse_formula
from .logic.printer import to_text
from .logic.semantics import strings_upto, truth_values
from .models import (Autoregressor, Classifier, DfaEncoder, NotCounterFree, StateEncoder,
                     UnsupportedEncoder, classifier_mass, string_weight, verify_normalization)
from .oracle import default_bound, encoders_equivalent_upto, languages_equal_upto, total_mass_upto
from .semiring import ExtRat, Semiring, SemiringMismatch
from .transforms import (EmptyLanguage, NotAdmissible, autoregressor_to_classifier, classifier_formula,
                         classifier_to_autoregressor, formula_classifier, next_sigma, noy_transform,
                         prefix_transform, stutter_invariant)
from .uhat import UhatFormatError, extract_states, load_uhat

class UsageError(Exception):
    pass


class Outcome:
    """What a verb produced: exit status, text lines and a structured report."""

    def __init__(self, status: int = 0, lines=(), report: dict | None = None, dot: str | None = None):
        self.status = status
        self.lines = list(lines)
        self.report = report if report is not None else {}
        self.dot = dot


# -- inputs ------------------------------------------------------------------


def _locate(path: str) -> str:
    """``path`` itself, or a packaged fixture file of that name."""
    if os.path.exists(path):
        return path
    packaged = resources.files("weighted_ltl") / "data" / os.path.basename(path)
    if packaged.is_file():
        return str(packaged)
    raise FileNotFoundError(f"cannot read {path}: no such file (and no packaged fixture of that name)")


def _alphabet(args, phi: Formula | None = None):
    if args.alphabet:
        return as_alphabet(args.alphabet)
    if phi is not None:
        syms = sorted(symbols_of(phi), key=str)
        if syms:
            return as_alphabet(syms)
    raise UsageError("cannot infer the alphabet; pass --alphabet")


def _formula(args, required: bool = True) -> Formula | None:
    text = args.formula
    if args.formula_file:
        if text:
            raise UsageError("give --formula or --formula-file, not both")
        with open(_locate(args.formula_file), encoding="utf-8") as fh:
            text = " ".join(line.split("#", 1)[0] for line in fh).strip()
    if text is None:
        if required:
            raise UsageError("this verb needs --formula or --formula-file")
        return None
    return parse_formula(text, args.alphabet and as_alphabet(args.alphabet))


def _automaton(args):
    if not args.automaton:
        raise UsageError("this verb needs --automaton")
    return io.read_automaton(_locate(args.automaton))


def _model(args):
    if not args.model:
        raise UsageError("this verb needs --model")
    return io.read_model(_locate(args.model))


def _word(alphabet, text: str | None) -> tuple:
    if text is None:
        raise UsageError("this verb needs --word")
    return alphabet.word(text)


def _load_any(spec: str, args):
    """An equivalence operand: ``formula:TEXT`` or an automaton, model, formula or uhat file."""
    if spec.startswith("formula:"):
        return parse_formula(spec[len("formula:"):], args.alphabet and as_alphabet(args.alphabet))
    path = _locate(spec)
    if path.endswith(".aut"):
        return io.read_automaton(path)
    if path.endswith(".model"):
        return io.read_model(path)
    if path.endswith(".uhat"):
        with open(path, encoding="utf-8") as fh:
            return load_uhat(fh.read())
    with open(path, encoding="utf-8") as fh:
        return parse_formula(fh.read(), args.alphabet and as_alphabet(args.alphabet))


def _bound(args, alphabet) -> int:
    return args.bound if args.bound is not None else default_bound(alphabet)


def _relabel(M: Dfa, prefix: str = "q") -> Dfa:
    order = M.reachable()
    names = {q: f"{prefix}{i}" for i, q in enumerate(order)}
    trans = {(names[q], s): names[r] for (q, s), r in M.transitions.items() if q in names}
    return Dfa(M.alphabet, list(names.values()), trans, names[M.initial],
               [names[q] for q in order if q in M.accepting])


def _weigh(thing, w):
    if isinstance(thing, Autoregressor):
        return string_weight(thing, w)
    if isinstance(thing, Classifier):
        return thing(w)
    if isinstance(thing, WeightedNfa):
        return thing.weight(w)
    if isinstance(thing, Dfa):
        from .semiring import Bool
        return Bool(thing.accepts(w))
    raise TypeError(f"cannot weigh strings with {type(thing).__name__}")


# -- verbs -------------------------------------------------------------------


def cmd_parse(args) -> Outcome:
    phi = _formula(args)
    text = to_text(phi)
    report = {"formula": text, "size": size(phi), "y_depth": y_depth(phi),
              "fragment": sorted(fragment_of(phi))}
    return Outcome(0, [text], report)


def cmd_eval(args) -> Outcome:
    phi = _formula(args)
    if args.word is None:
        raise UsageError("this verb needs --word")
    if args.alphabet:
        alphabet = as_alphabet(args.alphabet)
    else:
        letters = args.word.split() if " " in args.word else list(args.word)
        alphabet = as_alphabet(sorted(set(letters) | {str(s) for s in symbols_of(phi)}) or ["a"])
    w = _word(alphabet, args.word)
    values = truth_values(phi, w)
    verdict = values[-1]
    lines = ["true" if verdict else "false"]
    if args.trace:
        lines.append("trace " + "".join("1" if v else "0" for v in values))
    return Outcome(0 if verdict else 1, lines,
                   {"formula": to_text(phi), "word": word_text(w), "value": verdict, "trace": values})


def cmd_next(args) -> Outcome:
    if args.sigma is None:
        raise UsageError("next needs --sigma")
    phi = _formula(args)
    if args.alphabet and args.sigma not in as_alphabet(args.alphabet):
        raise UsageError(f"symbol {args.sigma!r} is not in the alphabet")
    out = next_sigma(phi, args.sigma)
    return Outcome(0, [to_text(out)], {"formula": to_text(phi), "sigma": args.sigma, "next": to_text(out)})


def cmd_prefix(args) -> Outcome:
    phi = _formula(args)
    alphabet = _alphabet(args, phi)
    out = prefix_transform(phi, alphabet, args.budget)
    return Outcome(0, [to_text(out)], {"formula": to_text(phi), "prefix": to_text(out)})


def cmd_to_dfa(args) -> Outcome:
    phi = _formula(args)
    alphabet = _alphabet(args, phi)
    closure = build_closure_dfa(phi, alphabet, args.budget)
    M = closure.dfa
    if args.minimize:
        M = minimize_dfa(M)[0]
    M = _relabel(M)
    report = {"states": len(M.states), "initial": M.initial, "accepting": sorted(M.accepting),
              "transitions": [[q, s, r] for (q, s), r in M.transitions.items()]}
    return Outcome(0, io.dump_automaton(M).splitlines(), report, dot=M.to_dot())


def _model_output(model, args) -> Outcome:
    text = io.dump_model(model)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return Outcome(0, text.splitlines(), {"model": text})


def cmd_cls2ar(args) -> Outcome:
    if args.model:
        C = _model(args)
        if not isinstance(C, Classifier):
            raise UsageError("cls2ar needs a classifier model")
    else:
        phi = _formula(args)
        C = formula_classifier(phi, _alphabet(args, phi))
    return _model_output(classifier_to_autoregressor(C, args.budget), args)


def cmd_ar2cls(args) -> Outcome:
    A = _model(args)
    if not isinstance(A, Autoregressor):
        raise UsageError("ar2cls needs an autoregressor model")
    C = autoregressor_to_classifier(A)
    if args.show_formula:
        text = to_text(classifier_formula(C))
        return Outcome(0, [text], {"formula": text})
    return _model_output(C, args)


def cmd_noy(args) -> Outcome:
    phi = _formula(args)
    alphabet = _alphabet(args, phi)
    out = noy_transform(phi, alphabet)
    return Outcome(0, [to_text(out)], {"formula": to_text(phi), "noy": to_text(out)})


def cmd_weight(args) -> Outcome:
    if bool(args.model) == bool(args.automaton):
        raise UsageError("weight needs exactly one of --model and --automaton")
    thing = _model(args) if args.model else _automaton(args)
    w = _word(thing.alphabet, args.word)
    value = _weigh(thing, w)
    return Outcome(0, [str(value)], {"word": word_text(w), "weight": str(value)})


def cmd_mass(args) -> Outcome:
    if bool(args.model) == bool(args.automaton):
        raise UsageError("mass needs exactly one of --model and --automaton")
    thing = _model(args) if args.model else _automaton(args)
    if thing.semiring is not Semiring.REAL:
        raise UsageError("mass needs a real-weighted model")
    if isinstance(thing, Classifier):
        if args.bound is None:
            value = classifier_mass(thing)
            return Outcome(0, [str(value)], {"mass": str(value), "bound": None})
        n = args.bound
        value = sum((thing(w) for w in strings_upto(thing.alphabet, n)), ExtRat(0))
    else:
        n = _bound(args, thing.alphabet)
        value = total_mass_upto(thing, n)
    return Outcome(0, [str(value)], {"mass": str(value), "bound": n})


def cmd_check_norm(args) -> Outcome:
    A = _model(args)
    if not isinstance(A, Autoregressor):
        raise UsageError("check-norm needs an autoregressor model")
    rep = verify_normalization(A)
    report = {"normalized": rep.normalized, "reason": rep.reason, "states_checked": rep.states_checked,
              "state": None if rep.state is None else str(rep.state)}
    return Outcome(0 if rep else 1, [str(rep)], report)


def cmd_check_cf(args) -> Outcome:
    M = _automaton(args)
    res = is_counter_free_dfa(M) if isinstance(M, Dfa) else is_counter_free_nfa_support(M)
    report = {"counter_free": res.counter_free, "k": res.k, "monoid_size": res.monoid_size,
              "witness": None if res.witness is None else word_text(res.witness),
              "state": None if res.state is None else str(res.state)}
    if res:
        return Outcome(0, [f"counter-free (k={res.k}, monoid size {res.monoid_size})"], report)
    return Outcome(1, ["not counter-free", f"witness {word_text(res.witness)}", f"state {res.state}"], report)


def cmd_check_twins(args) -> Outcome:
    M = _automaton(args)
    if not isinstance(M, WeightedNfa):
        raise UsageError("check-twins needs a wnfa automaton")
    res = is_determinizable_twins(M)
    report = {"determinizable": res.determinizable,
              "pair": None if res.pair is None else [str(q) for q in res.pair],
              "label": None if res.label is None else word_text(res.label),
              "weights": None if res.weights is None else [str(x) for x in res.weights]}
    if res:
        return Outcome(0, ["twins property holds"], report)
    p, q = res.pair
    x, y = res.weights
    return Outcome(1, ["twins property fails", f"pair {p} {q}", f"label {word_text(res.label)}",
                       f"cycle weights {x} {y}"], report)


def cmd_check_stutter(args) -> Outcome:
    if args.automaton:
        M = _automaton(args)
        if not isinstance(M, Dfa):
            raise UsageError("check-stutter needs a dfa automaton")
    else:
        phi = _formula(args)
        M = build_closure_dfa(phi, _alphabet(args, phi), args.budget).dfa
    res = stutter_invariant(M)
    if res:
        return Outcome(0, ["stutter-invariant"], {"invariant": True})
    u, s, v = res.witness
    report = {"invariant": False, "u": word_text(u), "sigma": symbol_text(s), "v": word_text(v)}
    return Outcome(1, ["not stutter-invariant", f"u '{word_text(u)}'", f"sigma {symbol_text(s)}",
                       f"v '{word_text(v)}'"], report)


def _encoder_of(thing, args) -> StateEncoder:
    from .models import TupleEncoder
    from .uhat import UhatModel
    if isinstance(thing, (Classifier, Autoregressor)):
        return thing.encoder
    if isinstance(thing, Dfa):
        return DfaEncoder(thing)
    if isinstance(thing, Formula):
        return TupleEncoder((thing,), _alphabet(args, thing))
    if isinstance(thing, UhatModel):
        return extract_states(thing, 1).encoder
    raise UsageError(f"{type(thing).__name__} has no state encoder")


def cmd_equiv(args) -> Outcome:
    if len(args.operands) != 2:
        raise UsageError("equiv needs two operands")
    left, right = (_load_any(x, args) for x in args.operands)
    alphabet = None
    for x in (left, right):
        if not isinstance(x, Formula):
            alphabet = x.alphabet
    if alphabet is None:
        alphabet = _alphabet(args, left if symbols_of(left) else right)
    if args.alphabet:
        alphabet = as_alphabet(args.alphabet)
    n = _bound(args, alphabet)
    if args.encoders:
        rep = encoders_equivalent_upto(_encoder_of(left, args), _encoder_of(right, args), n)
        report = {"equivalent": rep.equivalent, "bound": n,
                  "bijection": {str(k): str(v) for k, v in rep.bijection.items()}}
        return Outcome(0 if rep else 1, [str(rep)], report)

    def as_fn(x):
        if isinstance(x, Formula):
            from .semiring import Bool
            return lambda w: Bool(truth_values(x, w)[-1])
        return lambda w: _weigh(x, w)

    rep = languages_equal_upto(as_fn(left), as_fn(right), alphabet, n)
    report = {"equal": rep.equal, "bound": n, "examined": rep.examined,
              "counterexample": None if rep.equal else word_text(rep.counterexample),
              "weights": None if rep.equal else [str(x) for x in rep.weights]}
    return Outcome(0 if rep else 1, [str(rep)], report)


def cmd_fixtures(args) -> Outcome:
    files = fixture_files()
    if args.write:
        os.makedirs(args.write, exist_ok=True)
        for name, text in files.items():
            with open(os.path.join(args.write, name), "w", encoding="utf-8") as fh:
                fh.write(text)
        return Outcome(0, [f"wrote {len(files)} files to {args.write}"], {"files": sorted(files)})
    if not args.name:
        names = sorted(FIXTURES) + ["l_k(K)"]
        return Outcome(0, names + [f"file {n}" for n in sorted(files)], {"fixtures": names, "files": sorted(files)})
    if args.name in files:
        return Outcome(0, files[args.name].splitlines(), {"file": args.name, "text": files[args.name]})
    try:
        obj = fixture(args.name)
    except KeyError as err:
        raise UsageError(err.args[0]) from None
    dot = obj.to_dot() if isinstance(obj, (Dfa, WeightedNfa)) else None
    if isinstance(obj, Formula):
        text = to_text(obj)
    elif isinstance(obj, (Dfa, WeightedNfa)):
        text = io.dump_automaton(obj)
    elif isinstance(obj, (Classifier, Autoregressor)) and not isinstance(obj.encoder, DfaEncoder):
        text = io.dump_model(obj)
    else:
        from .uhat import UhatModel, dump_uhat
        text = dump_uhat(obj) if isinstance(obj, UhatModel) else repr(obj)
    return Outcome(0, text.splitlines(), {"fixture": args.name, "text": text}, dot=dot)


HANDLERS = {
    "parse": cmd_parse, "eval": cmd_eval, "next": cmd_next, "prefix": cmd_prefix, "to-dfa": cmd_to_dfa,
    "cls2ar": cmd_cls2ar, "ar2cls": cmd_ar2cls, "noy": cmd_noy, "weight": cmd_weight, "mass": cmd_mass,
    "check-norm": cmd_check_norm, "check-cf": cmd_check_cf, "check-twins": cmd_check_twins,
    "check-stutter": cmd_check_stutter, "equiv": cmd_equiv, "fixtures": cmd_fixtures,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alphabet", help="symbols, e.g. 'ab' or 'x y z'")
    common.add_argument("--format", choices=("text", "dot", "json"), default="text")
    common.add_argument("--bound", type=int, help="oracle bound (default from the alphabet, or $WEIGHTED_LTL_BOUND)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="closure automaton state budget")

    parser = argparse.ArgumentParser(prog="weighted-ltl", description="Past LTL, weighted automata and "
                                     "formula-tuple models with exact arithmetic.")
    sub = parser.add_subparsers(dest="verb", metavar="VERB")
    sub.required = True

    def verb(name, help_text, *, formula=False, model=False, automaton=False, word=False):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if formula:
            p.add_argument("--formula", help="formula text")
            p.add_argument("--formula-file", help="file holding a formula")
        if model:
            p.add_argument("--model", help="model file")
        if automaton:
            p.add_argument("--automaton", help="automaton file")
        if word:
            p.add_argument("--word", help="input string")
        return p

    verb("parse", "parse and re-print a formula", formula=True)
    p = verb("eval", "evaluate a formula on a string (exit 1 when false)", formula=True, word=True)
    p.add_argument("--trace", action="store_true", help="also print the value at every position")
    p = verb("next", "the formula next_sigma(phi)", formula=True)
    p.add_argument("--sigma", help="the symbol")
    verb("prefix", "a formula for the prefixes of the language", formula=True)
    p = verb("to-dfa", "closure automaton of a formula", formula=True)
    p.add_argument("--minimize", action="store_true")
    p = verb("cls2ar", "Boolean classifier to autoregressor", formula=True, model=True)
    p.add_argument("--output", help="also write the model file here")
    p = verb("ar2cls", "Boolean autoregressor to classifier", model=True)
    p.add_argument("--output", help="also write the model file here")
    p.add_argument("--show-formula", action="store_true", help="print the classifier's single formula")
    verb("noy", "remove Y over the bigram alphabet", formula=True)
    verb("weight", "weight of one string", model=True, automaton=True, word=True)
    verb("mass", "total weight of strings up to --bound", model=True, automaton=True)
    verb("check-norm", "check that an autoregressor is normalized", model=True)
    verb("check-cf", "check counter-freeness (dfa, or the support of a wnfa)", automaton=True)
    verb("check-twins", "twins check for weighted determinizability", automaton=True)
    verb("check-stutter", "check stutter invariance", formula=True, automaton=True)
    p = verb("equiv", "compare two languages or encoders on strings up to --bound")
    p.add_argument("operands", nargs="*", help="files (.aut .model .ltl .uhat) or formula:TEXT")
    p.add_argument("--encoders", action="store_true", help="compare state encoders instead of languages")
    p = verb("fixtures", "list, print or write the fixtures")
    p.add_argument("name", nargs="?", help="fixture or file name to print")
    p.add_argument("--write", metavar="DIR", help="write every fixture file to DIR")
    return parser


def _emit(outcome: Outcome, fmt: str, out) -> None:
    if fmt == "json":
        report = dict(outcome.report)
        report["status"] = outcome.status
        out.write(json.dumps(report, sort_keys=True, default=str) + "\n")
    elif fmt == "dot":
        out.write(outcome.dot if outcome.dot.endswith("\n") else outcome.dot + "\n")
    else:
        for line in outcome.lines:
            out.write(line + "\n")


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        outcome = HANDLERS[args.verb](args)
        if args.format == "dot" and outcome.dot is None:
            raise UsageError(f"{args.verb} has no dot output")
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except FileNotFoundError as exc:
        err.write(f"file error: {exc}\n")
        return 2
    except (io.FormatError, UhatFormatError) as exc:
        err.write(f"format error: {exc}\n")
        return 2
    except StateBudgetExceeded as exc:
        err.write(f"resource error: {exc}\n")
        return 2
    except (EmptyLanguage, NotAdmissible, UnsupportedEncoder, UnsupportedSemiring, NotCounterFree,
            SemiringMismatch) as exc:
        err.write(f"cannot apply {args.verb}: {exc}\n")
        return 2
    except ValueError as exc:
        # formula syntax, unknown symbols, bad words
        err.write(f"input error: {exc}\n")
        return 2
    _emit(outcome, args.format, out)
    return outcome.status


if __name__ == "__main__":
    sys.exit(main())

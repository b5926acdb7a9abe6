"""Plain-text file formats for automata and models.

Automaton files::

    kind dfa | wnfa
    alphabet a b
    semiring real | bool          (wnfa only; default real)
    states q0 q1                  (optional; states are otherwise collected)
    initial q0
    q0 a q1 [weight]              (weight only for wnfa)
    ending q1 1/2                 (wnfa only)
    accepting q1 q2               (dfa only)

Model files::

    model classifier | autoregressor
    semiring real | bool
    alphabet a b
    encoder tuple                 followed by one ``formula TEXT`` line per entry
    encoder automaton PATH        a dfa file, relative to the model file
    encoder uhat PATH [BOUND]     a uhat file; states are extracted up to BOUND
    state LABEL w                 classifier output
    state LABEL a:w b:w eos:w     autoregressor output
    default ...                   output for states without a ``state`` line

Tuple-encoder labels are bit strings (``-`` for the empty tuple); UHAT labels
are comma-separated rationals.  ``#`` starts a comment.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .automata import Dfa, WeightedNfa
from .logic.formula import EOS, as_alphabet
from .logic.parser import parse_formula
from .logic.printer import to_text
from .models import Autoregressor, Classifier, DfaEncoder, TupleEncoder
from .semiring import Semiring, parse_weight


class FormatError(ValueError):
    pass


def _lines(text: str) -> list:
    out = []
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((i, line.split()))
    return out


def _weight(token: str, semiring: Semiring, lineno: int):
    try:
        return semiring.coerce(parse_weight(token))
    except (ValueError, TypeError) as err:
        raise FormatError(f"line {lineno}: {err}") from None


def load_automaton(text: str):
    """Parse an automaton file into a :class:`Dfa` or :class:`WeightedNfa`."""
    kind = alphabet = initial = None
    semiring = Semiring.REAL
    states: list = []
    edges: list = []
    ending: dict = {}
    accepting: list = []
    for lineno, tok in _lines(text):
        key = tok[0]
        if key == "kind":
            if len(tok) != 2 or tok[1] not in ("dfa", "wnfa"):
                raise FormatError(f"line {lineno}: kind must be 'dfa' or 'wnfa'")
            kind = tok[1]
        elif key == "alphabet":
            alphabet = tok[1:]
        elif key == "semiring":
            try:
                semiring = Semiring.of(tok[1])
            except (ValueError, IndexError) as err:
                raise FormatError(f"line {lineno}: {err}") from None
        elif key == "states":
            states.extend(tok[1:])
        elif key == "initial":
            if len(tok) != 2:
                raise FormatError(f"line {lineno}: initial takes one state")
            initial = tok[1]
        elif key == "accepting":
            accepting.extend(tok[1:])
        elif key == "ending":
            if len(tok) != 3:
                raise FormatError(f"line {lineno}: expected 'ending STATE WEIGHT'")
            ending[tok[1]] = (tok[2], lineno)
        elif len(tok) in (3, 4):
            edges.append((lineno, tok))
        else:
            raise FormatError(f"line {lineno}: cannot read {' '.join(tok)!r}")
    if kind is None:
        raise FormatError("missing 'kind' line")
    if alphabet is None:
        raise FormatError("missing 'alphabet' line")
    if initial is None:
        raise FormatError("missing 'initial' line")
    try:
        alpha = as_alphabet(alphabet)
    except ValueError as err:
        raise FormatError(str(err)) from None
    for lineno, tok in edges:
        if tok[1] not in alpha:
            raise FormatError(f"line {lineno}: symbol {tok[1]!r} is not in the alphabet")
    collected = list(dict.fromkeys(states + [initial] + [t[0] for _, t in edges]
                                   + [t[2] for _, t in edges] + accepting + list(ending)))
    try:
        if kind == "dfa":
            trans = {}
            for lineno, tok in edges:
                if len(tok) != 3:
                    raise FormatError(f"line {lineno}: dfa transitions are 'SRC SYMBOL DST'")
                if (tok[0], tok[1]) in trans and trans[(tok[0], tok[1])] != tok[2]:
                    raise FormatError(f"line {lineno}: second transition from {tok[0]} on {tok[1]}")
                trans[(tok[0], tok[1])] = tok[2]
            return Dfa.complete(alpha, collected, trans, initial, accepting)
        trans = {}
        for lineno, tok in edges:
            if len(tok) != 4:
                raise FormatError(f"line {lineno}: wnfa transitions are 'SRC SYMBOL DST WEIGHT'")
            w = _weight(tok[3], semiring, lineno)
            key = (tok[0], tok[1], tok[2])
            trans[key] = trans[key] + w if key in trans else w
        ends = {q: _weight(t, semiring, ln) for q, (t, ln) in ending.items()}
        return WeightedNfa(alpha, collected, trans, initial, ends, semiring)
    except FormatError:
        raise
    except ValueError as err:
        raise FormatError(str(err)) from None


def dump_automaton(M) -> str:
    if isinstance(M, Dfa):
        lines = ["kind dfa", f"alphabet {' '.join(map(str, M.alphabet))}",
                 f"states {' '.join(map(str, M.states))}", f"initial {M.initial}"]
        lines += [f"{q} {s} {r}" for (q, s), r in M.transitions.items()]
        if M.accepting:
            lines.append("accepting " + " ".join(str(q) for q in M.states if q in M.accepting))
        return "\n".join(lines) + "\n"
    if isinstance(M, WeightedNfa):
        lines = ["kind wnfa", f"alphabet {' '.join(map(str, M.alphabet))}",
                 f"semiring {M.semiring.value}", f"states {' '.join(map(str, M.states))}",
                 f"initial {M.initial}"]
        lines += [f"{p} {s} {q} {w}" for (p, s, q), w in M.transitions.items()]
        lines += [f"ending {q} {w}" for q, w in M.ending.items() if not w.is_zero()]
        return "\n".join(lines) + "\n"
    raise TypeError(f"cannot write {type(M).__name__}")


def read_automaton(path: str):
    return load_automaton(_read(path))


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as err:
        raise FileNotFoundError(f"cannot read {path}: {err.strerror}") from None


# -- models ------------------------------------------------------------------


def tuple_label(h) -> str:
    return "".join("1" if x else "0" for x in h) or "-"


def parse_tuple_label(text: str, width: int) -> tuple:
    if text == "-":
        bits = ()
    elif set(text) <= {"0", "1"}:
        bits = tuple(c == "1" for c in text)
    else:
        raise FormatError(f"tuple state {text!r} must be a bit string")
    if len(bits) != width:
        raise FormatError(f"tuple state {text!r} has {len(bits)} bits, expected {width}")
    return bits


def vector_label(v) -> str:
    return ",".join(str(x) for x in v)


def _row(tokens: list, semiring: Semiring, outcomes: tuple, lineno: int) -> dict:
    row = {}
    for t in tokens:
        sym, sep, w = t.rpartition(":")
        if not sep:
            raise FormatError(f"line {lineno}: expected SYMBOL:WEIGHT, got {t!r}")
        if sym not in outcomes:
            raise FormatError(f"line {lineno}: {sym!r} is not a symbol or eos")
        row[sym] = _weight(w, semiring, lineno)
    return row


def load_model(text: str, base_dir: str = "."):
    """Parse a model file into a :class:`Classifier` or :class:`Autoregressor`."""
    kind = alphabet = encoder_spec = None
    semiring = Semiring.REAL
    formulas: list = []
    entries: list = []
    default = None
    for lineno, tok in _lines(text):
        key = tok[0]
        if key == "model":
            if len(tok) != 2 or tok[1] not in ("classifier", "autoregressor"):
                raise FormatError(f"line {lineno}: model must be 'classifier' or 'autoregressor'")
            kind = tok[1]
        elif key == "semiring":
            try:
                semiring = Semiring.of(tok[1])
            except (ValueError, IndexError) as err:
                raise FormatError(f"line {lineno}: {err}") from None
        elif key == "alphabet":
            alphabet = tok[1:]
        elif key == "encoder":
            encoder_spec = (lineno, tok[1:])
        elif key == "formula":
            formulas.append((lineno, " ".join(tok[1:])))
        elif key == "state":
            if len(tok) < 2:
                raise FormatError(f"line {lineno}: state line needs a label")
            entries.append((lineno, tok[1], tok[2:]))
        elif key == "default":
            default = (lineno, tok[1:])
        else:
            raise FormatError(f"line {lineno}: cannot read {' '.join(tok)!r}")
    if kind is None:
        raise FormatError("missing 'model' line")
    if alphabet is None:
        raise FormatError("missing 'alphabet' line")
    if encoder_spec is None:
        raise FormatError("missing 'encoder' line")
    try:
        alpha = as_alphabet(alphabet)
    except ValueError as err:
        raise FormatError(str(err)) from None
    lineno, spec = encoder_spec
    if not spec:
        raise FormatError(f"line {lineno}: encoder needs a type")
    if spec[0] == "tuple":
        parsed = []
        for ln, src in formulas:
            try:
                parsed.append(parse_formula(src, alpha))
            except ValueError as err:
                raise FormatError(f"line {ln}: {err}") from None
        encoder = TupleEncoder(parsed, alpha)
        label = lambda t: parse_tuple_label(t, len(parsed))  # noqa: E731
    elif spec[0] == "automaton":
        if len(spec) != 2:
            raise FormatError(f"line {lineno}: expected 'encoder automaton PATH'")
        M = read_automaton(os.path.join(base_dir, spec[1]))
        if not isinstance(M, Dfa):
            raise FormatError(f"line {lineno}: encoder automaton must be a dfa")
        if tuple(M.alphabet) != tuple(alpha):
            raise FormatError(f"line {lineno}: encoder alphabet differs from the model alphabet")
        encoder = DfaEncoder(M)
        label = lambda t: t  # noqa: E731
    elif spec[0] == "uhat":
        from .uhat import extract_states, load_uhat
        if len(spec) not in (2, 3):
            raise FormatError(f"line {lineno}: expected 'encoder uhat PATH [BOUND]'")
        Tm = load_uhat(_read(os.path.join(base_dir, spec[1])))
        bound = int(spec[2]) if len(spec) == 3 else 4
        encoder = extract_states(Tm, bound).encoder

        def label(t):
            try:
                return tuple(Fraction(x) for x in t.split(","))
            except (ValueError, ZeroDivisionError):
                raise FormatError(f"UHAT state {t!r} must be comma-separated rationals") from None
    else:
        raise FormatError(f"line {lineno}: unknown encoder type {spec[0]!r}")
    outcomes = alpha.symbols + (EOS,)
    table = {}
    for ln, lab, rest in entries:
        try:
            key = label(lab)
        except FormatError as err:
            raise FormatError(f"line {ln}: {err}") from None
        if kind == "classifier":
            if len(rest) != 1:
                raise FormatError(f"line {ln}: classifier state lines are 'state LABEL WEIGHT'")
            table[key] = _weight(rest[0], semiring, ln)
        else:
            table[key] = _row(rest, semiring, outcomes, ln)
    dflt = None
    if default is not None:
        ln, rest = default
        if kind == "classifier":
            if len(rest) != 1:
                raise FormatError(f"line {ln}: classifier default is a single weight")
            dflt = _weight(rest[0], semiring, ln)
        else:
            dflt = _row(rest, semiring, outcomes, ln)
    if kind == "classifier":
        return Classifier(encoder, table, semiring, dflt)
    return Autoregressor(encoder, table, semiring, dflt)


def read_model(path: str):
    return load_model(_read(path), os.path.dirname(os.path.abspath(path)))


def _state_label(encoder, state) -> str:
    if isinstance(encoder, TupleEncoder):
        return tuple_label(state)
    if isinstance(encoder, DfaEncoder):
        return str(state)
    return vector_label(state)


def dump_model(model, encoder_path: str | None = None) -> str:
    """Serialize a model; every state reachable in the encoder's finite form gets a line.

    Tuple encoders are written inline; other encoders are referenced by
    ``encoder_path``."""
    enc = model.encoder
    kind = "classifier" if isinstance(model, Classifier) else "autoregressor"
    lines = [f"model {kind}", f"semiring {model.semiring.value}",
             f"alphabet {' '.join(map(str, model.alphabet))}"]
    if isinstance(enc, TupleEncoder):
        lines.append("encoder tuple")
        lines += [f"formula {to_text(f)}" for f in enc.formulas]
    else:
        if encoder_path is None:
            raise ValueError("encoder_path is needed for non-tuple encoders")
        tag = "automaton" if isinstance(enc, DfaEncoder) else "uhat"
        extra = f" {enc.table.bound}" if tag == "uhat" else ""
        lines.append(f"encoder {tag} {encoder_path}{extra}")
    m = enc.machine()
    seen = []
    for q in m.dfa.reachable():
        s = m.label(q)
        if s in seen:
            continue
        seen.append(s)
        if kind == "classifier":
            lines.append(f"state {_state_label(enc, s)} {model.weight_of_state(s)}")
        else:
            row = model.row(s)
            lines.append(f"state {_state_label(enc, s)} " + " ".join(f"{k}:{v}" for k, v in row.items()))
    return "\n".join(lines) + "\n"

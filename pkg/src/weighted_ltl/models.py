"""State encoders, classifiers, autoregressors and step functions.

A state encoder sends ``w`` to states ``s_0 .. s_n`` where ``s_i`` depends
only on ``w[:i]``.  A classifier reads a weight off the last state; an
autoregressor reads a next-symbol distribution off every state.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Mapping, Sequence

from .automata import Dfa, is_counter_free_dfa, minimize_dfa, product_dfa
from .closure import DEFAULT_BUDGET, ClosureDfa, build_closure_dfa
from .linalg import SingularSystem, solve
from .logic.formula import EOS, Formula, Not, as_alphabet, check_symbols, conjoin, symbol_text
from .logic.semantics import BatchEvaluator, encode_with_tuple
from .semiring import Bool, ExtRat, Semiring, SemiringValue


class UnsupportedEncoder(ValueError):
    pass


class NotCounterFree(ValueError):
    pass


@dataclass(frozen=True)
class EncoderMachine:
    """Finite-state form of an encoder: ``label(q)`` is the encoder state at DFA state ``q``."""

    dfa: Dfa
    label: Callable[[Hashable], Hashable]


class StateEncoder:
    alphabet = None

    def trace(self, w: Sequence) -> list:
        raise NotImplementedError

    def final_state(self, w: Sequence):
        return self.trace(w)[-1]

    def machine(self) -> EncoderMachine:
        raise UnsupportedEncoder(f"{type(self).__name__} has no finite-state form")


class DfaEncoder(StateEncoder):
    def __init__(self, dfa: Dfa):
        self.dfa = dfa
        self.alphabet = dfa.alphabet

    def trace(self, w: Sequence) -> list:
        return self.dfa.run(w)

    def machine(self) -> EncoderMachine:
        return EncoderMachine(self.dfa, lambda q: q)

    def __repr__(self) -> str:
        return f"DfaEncoder({self.dfa!r})"


class TupleEncoder(StateEncoder):
    """Formula-tuple encoder: the state at i is the tuple of truth values at i."""

    def __init__(self, formulas: Sequence[Formula], alphabet, budget: int = DEFAULT_BUDGET):
        self.formulas = tuple(formulas)
        self.alphabet = as_alphabet(alphabet)
        for phi in self.formulas:
            check_symbols(phi, self.alphabet)
        self.budget = budget
        self._closure: ClosureDfa | None = None

    def trace(self, w: Sequence) -> list:
        return encode_with_tuple(self.formulas, self.alphabet.word(w))

    def closure(self) -> ClosureDfa:
        if self._closure is None:
            self._closure = ClosureDfa(self.formulas, self.alphabet, self.budget)
        return self._closure

    def machine(self) -> EncoderMachine:
        c = self.closure()
        return EncoderMachine(c.dfa, c.label)

    def final_states(self, length: int, batch: BatchEvaluator | None = None) -> list:
        """Final state of every string of one length, in enumeration order."""
        batch = batch or BatchEvaluator(self.alphabet, length)
        masks = [batch.final(phi) for phi in self.formulas]
        return [tuple(bool(m >> r & 1) for m in masks) for r in range(batch.count)]

    def __repr__(self) -> str:
        return f"TupleEncoder({', '.join(str(f) for f in self.formulas)})"


def _lookup(output, state, default, what: str):
    if callable(output) and not isinstance(output, Mapping):
        return output(state)
    try:
        return output[state]
    except KeyError:
        if default is not None:
            return default
        raise KeyError(f"{what} undefined for state {state!r}") from None


def _infer_semiring(values) -> Semiring:
    for v in values:
        if isinstance(v, (Bool, ExtRat)):
            return v.semiring
        if isinstance(v, bool):
            return Semiring.BOOLEAN
        if isinstance(v, Mapping):
            return _infer_semiring(v.values())
        return Semiring.REAL
    return Semiring.REAL


class Classifier:
    """``(encoder, c)``: the weight of ``w`` is ``c`` applied to the last state."""

    def __init__(self, encoder: StateEncoder, output, semiring: Semiring | None = None,
                 default=None):
        self.encoder = encoder
        self.alphabet = encoder.alphabet
        if semiring is None:
            if callable(output) and not isinstance(output, Mapping):
                raise ValueError("semiring must be given when the output is a function")
            semiring = _infer_semiring(output.values())
        self.semiring = semiring
        self.output = output
        self.default = None if default is None else semiring.coerce(default)

    def weight_of_state(self, state) -> SemiringValue:
        return self.semiring.coerce(_lookup(self.output, state, self.default, "classifier output"))

    def __call__(self, w: Sequence) -> SemiringValue:
        return classifier_weight(self, w)


def classifier_weight(C: Classifier, w: Sequence) -> SemiringValue:
    return C.weight_of_state(C.encoder.final_state(w))


class Autoregressor:
    """``(encoder, a)``: ``a(state)`` is a weight for each symbol and ``eos``."""

    def __init__(self, encoder: StateEncoder, output, semiring: Semiring | None = None,
                 default=None):
        self.encoder = encoder
        self.alphabet = encoder.alphabet
        if semiring is None:
            if callable(output) and not isinstance(output, Mapping):
                raise ValueError("semiring must be given when the output is a function")
            semiring = _infer_semiring(output.values())
        self.semiring = semiring
        self.output = output
        self.default = default
        self._rows: dict = {}
        self._compiled = None

    @property
    def outcomes(self) -> tuple:
        return self.alphabet.symbols + (EOS,)

    def row(self, state) -> dict:
        """The next-symbol weights at ``state``, total over symbols and ``eos``."""
        try:
            cached = self._rows.get(state)
        except TypeError:
            cached = None
        if cached is not None:
            return cached
        raw = _lookup(self.output, state, self.default, "autoregressor output")
        zero = self.semiring.zero
        row = {s: self.semiring.coerce(raw.get(s, zero)) for s in self.outcomes}
        extra = set(raw) - set(self.outcomes)
        if extra:
            raise ValueError(f"output row for {state!r} has unknown symbols {sorted(map(str, extra))}")
        try:
            self._rows[state] = row
        except TypeError:
            pass
        return row

    def compiled(self) -> "CompiledAutoregressor":
        if self._compiled is None:
            m = self.encoder.machine()
            self._compiled = CompiledAutoregressor(m.dfa, {q: self.row(m.label(q)) for q in m.dfa.reachable()},
                                                   self.semiring)
        return self._compiled

    def __call__(self, w: Sequence) -> SemiringValue:
        return string_weight(self, w)


@dataclass
class CompiledAutoregressor:
    """An autoregressor as a weighted DFA: state -> next-symbol row."""

    dfa: Dfa
    rows: dict
    semiring: Semiring

    def weight(self, w: Sequence) -> SemiringValue:
        q = self.dfa.initial
        acc = self.semiring.one
        for s in self.dfa.alphabet.word(w):
            acc = acc * self.rows[q][s]
            if acc.is_zero():
                return acc
            q = self.dfa.transitions[(q, s)]
        return acc * self.rows[q][EOS]


def symbol_weight(A: Autoregressor, u: Sequence, sigma) -> SemiringValue:
    if sigma != EOS and sigma not in A.alphabet:
        raise ValueError(f"{sigma!r} is neither a symbol nor eos")
    return A.row(A.encoder.final_state(u))[sigma]


def suffix_weight(A: Autoregressor, u: Sequence, v: Sequence) -> SemiringValue:
    u = A.alphabet.word(u)
    v = A.alphabet.word(v)
    states = A.encoder.trace(u + v)
    acc = A.semiring.one
    for i, s in enumerate(v):
        acc = acc * A.row(states[len(u) + i])[s]
    return acc * A.row(states[-1])[EOS]


def string_weight(A: Autoregressor, w: Sequence) -> SemiringValue:
    return suffix_weight(A, (), w)


# -- normalization -----------------------------------------------------------


@dataclass
class NormalizationReport:
    normalized: bool
    semiring: Semiring
    reason: str = ""
    state: Hashable | None = None          # offending encoder state
    masses: dict = field(default_factory=dict)  # encoder state -> termination mass
    states_checked: int = 0

    def __bool__(self) -> bool:
        return self.normalized

    def __str__(self) -> str:
        if self.normalized:
            return f"normalized ({self.states_checked} states)"
        return f"not normalized: {self.reason}"


def verify_normalization(A: Autoregressor) -> NormalizationReport:
    """Exact check that every suffix distribution sums to one.

    Every state reachable in the encoder's finite-state form is checked,
    whatever the weight of the strings reaching it."""
    machine = A.encoder.machine()
    dfa = machine.dfa
    reach = dfa.reachable()
    K = A.semiring
    rows = {q: A.row(machine.label(q)) for q in reach}
    for q in reach:
        total = K.sum(rows[q].values())
        if total != K.one:
            return NormalizationReport(False, K, f"next-symbol weights at state {_show(machine.label(q))} "
                                       f"sum to {total}", machine.label(q), states_checked=len(reach))
    succ = {q: [(s, dfa.transitions[(q, s)]) for s in dfa.alphabet if not rows[q][s].is_zero()]
            for q in reach}
    pred: dict = {}
    for q in reach:
        for _, r in succ[q]:
            pred.setdefault(r, set()).add(q)
    live = {q for q in reach if not rows[q][EOS].is_zero()}
    queue = deque(live)
    while queue:
        r = queue.popleft()
        for q in pred.get(r, ()):
            if q not in live:
                live.add(q)
                queue.append(q)
    if K is Semiring.BOOLEAN:
        for q in reach:
            if q not in live:
                return NormalizationReport(False, K, f"state {_show(machine.label(q))} cannot reach eos",
                                           machine.label(q), states_checked=len(reach))
        return NormalizationReport(True, K, masses={machine.label(q): K.one for q in reach},
                                   states_checked=len(reach))
    # t(q) = a(q)(eos) + sum_s a(q)(s) t(delta(q, s)); t = 0 off the live set
    order = [q for q in reach if q in live]
    index = {q: i for i, q in enumerate(order)}
    n = len(order)
    matrix = [[Fraction(0)] * n for _ in range(n)]
    rhs = [Fraction(0)] * n
    for q in order:
        i = index[q]
        matrix[i][i] += 1
        rhs[i] = rows[q][EOS].value
        for s, r in succ[q]:
            if r in index:
                matrix[i][index[r]] -= rows[q][s].value
    try:
        t = solve(matrix, rhs)
    except SingularSystem as err:
        return NormalizationReport(False, K, f"termination system is singular ({err})",
                                   states_checked=len(reach))
    masses = {machine.label(q): (t[index[q]] if q in index else Fraction(0)) for q in reach}
    for q in reach:
        mass = masses[machine.label(q)]
        if mass != 1:
            return NormalizationReport(False, K, f"suffix mass at state {_show(machine.label(q))} is {mass}",
                                       machine.label(q), masses, len(reach))
    return NormalizationReport(True, K, masses=masses, states_checked=len(reach))


def _show(state) -> str:
    if isinstance(state, tuple) and all(isinstance(x, bool) for x in state):
        return "".join("1" if x else "0" for x in state) or "-"
    return str(state)


def classifier_mass(C: Classifier) -> SemiringValue:
    """Exact total weight ``sum_w C(w)`` (possibly ``inf``) through the encoder's finite form."""
    machine = C.encoder.machine()
    dfa = machine.dfa
    K = C.semiring
    reach = dfa.reachable()
    succ = {q: [dfa.transitions[(q, s)] for s in dfa.alphabet] for q in reach}
    on_cycle = set()
    for q in reach:
        seen, stack = set(), list(succ[q])
        while stack:
            r = stack.pop()
            if r == q:
                on_cycle.add(q)
                break
            if r not in seen:
                seen.add(r)
                stack.extend(succ[r])
    infinite = set(on_cycle)
    queue = deque(on_cycle)
    while queue:
        r = queue.popleft()
        for x in succ[r]:
            if x not in infinite:
                infinite.add(x)
                queue.append(x)
    counts: dict = {}

    def count(q) -> int:
        if q in counts:
            return counts[q]
        total = 1 if q == dfa.initial else 0
        for p in reach:
            for s in dfa.alphabet:
                if dfa.transitions[(p, s)] == q:
                    total += count(p)
        counts[q] = total
        return total

    terms = []
    for q in reach:
        c = C.weight_of_state(machine.label(q))
        if q in infinite:
            n = ExtRat.inf() if K is Semiring.REAL else Bool(True)
        else:
            n = K.coerce(count(q)) if K is Semiring.REAL else Bool(count(q) > 0)
        terms.append(c * n)
    return K.sum(terms)


# -- step functions ----------------------------------------------------------


@dataclass
class StepFunction:
    """``S(w) = (+)_i k_i (x) 1[w in L_i]`` with each ``L_i`` a formula or an accepting DFA."""

    terms: list
    alphabet: object
    semiring: Semiring = Semiring.REAL

    def __post_init__(self):
        self.alphabet = as_alphabet(self.alphabet)
        self.terms = [(self.semiring.coerce(k), lang) for k, lang in self.terms]

    def __call__(self, w: Sequence) -> SemiringValue:
        w = self.alphabet.word(w)
        out = self.semiring.zero
        for k, lang in self.terms:
            if _member(lang, w):
                out = out + k
        return out


def _member(lang, w: tuple) -> bool:
    if isinstance(lang, Formula):
        from .logic.semantics import models
        return models(w, lang)
    if isinstance(lang, Dfa):
        return lang.accepts(w)
    raise TypeError(f"unsupported language term {lang!r}")


def classifier_to_step_function(C: Classifier) -> StepFunction:
    """One term per truth tuple ``h``: weight ``c(h)``, language ``conj(phi_i <-> h_i)``."""
    enc = C.encoder
    if not isinstance(enc, TupleEncoder):
        raise UnsupportedEncoder("classifier_to_step_function needs a formula-tuple encoder")
    terms = []
    for h in itertools.product((True, False), repeat=len(enc.formulas)):
        lang = conjoin(phi if bit else Not(phi) for phi, bit in zip(enc.formulas, h))
        try:
            k = C.weight_of_state(h)
        except KeyError:
            k = C.semiring.zero
        terms.append((k, lang))
    return StepFunction(terms, enc.alphabet, C.semiring)


def _language_dfa(lang, alphabet, budget: int) -> Dfa:
    if isinstance(lang, Formula):
        return build_closure_dfa(lang, alphabet, budget).dfa
    if isinstance(lang, Dfa):
        return lang
    raise TypeError(f"unsupported language term {lang!r}")


def step_function_to_classifier(S: StepFunction, budget: int = DEFAULT_BUDGET) -> Classifier:
    """Classifier with ``c(h) = (+)_i k_i (x) h_i``; rejects non-counter-free terms."""
    for i, (_, lang) in enumerate(S.terms):
        minimal, _ = minimize_dfa(_language_dfa(lang, S.alphabet, budget))
        verdict = is_counter_free_dfa(minimal)
        if not verdict:
            raise NotCounterFree(f"term {i} is not a counter-free language "
                                 f"(string {''.join(map(symbol_text, verdict.witness))!r} counts)")
    K = S.semiring
    weights = [k for k, _ in S.terms]

    def output(h):
        return K.sum(k * K.indicator(bool(x)) for k, x in zip(weights, h))

    if all(isinstance(lang, Formula) for _, lang in S.terms):
        return Classifier(TupleEncoder([lang for _, lang in S.terms], S.alphabet), output, K)
    machines = [_language_dfa(lang, S.alphabet, budget) for _, lang in S.terms]
    prod = product_dfa(machines)

    def product_output(state):
        return output([q in M.accepting for M, q in zip(machines, state)])

    return Classifier(DfaEncoder(prod), product_output, K)

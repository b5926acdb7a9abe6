"""Deterministic and weighted nondeterministic finite automata.

Includes transition monoids (for counter-freeness), Moore minimization,
co-accessibility, products, and the sibling/twins test for weighted
determinizability.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .logic.formula import as_alphabet, symbol_text, word_text
from .semiring import Bool, ExtRat, Semiring, SemiringValue


class AlphabetMismatch(ValueError):
    pass


class UnsupportedSemiring(ValueError):
    pass


def _accept_fn(accepting) -> Callable[[Hashable], bool]:
    if accepting is None:
        return lambda q: False
    if callable(accepting):
        return accepting
    accepting = frozenset(accepting)
    return accepting.__contains__


class Dfa:
    """A complete DFA ``(alphabet, states, transitions, initial)``.

    ``accepting`` is optional; the classifier view and the analyses that need
    a language take it from here unless given explicitly.
    """

    def __init__(self, alphabet, states: Iterable, transitions: Mapping, initial,
                 accepting: Iterable = ()):
        self.alphabet = as_alphabet(alphabet)
        self.states = tuple(dict.fromkeys(states))
        self.transitions = dict(transitions)
        self.initial = initial
        self.accepting = frozenset(accepting)
        state_set = set(self.states)
        if initial not in state_set:
            raise ValueError(f"initial state {initial!r} is not a state")
        for q in self.states:
            for s in self.alphabet:
                if (q, s) not in self.transitions:
                    raise ValueError(f"transition missing for ({q!r}, {symbol_text(s)!r}); "
                                     "use Dfa.complete to add a sink")
                if self.transitions[(q, s)] not in state_set:
                    raise ValueError(f"transition ({q!r}, {s!r}) leads to unknown state")
        if not self.accepting <= state_set:
            raise ValueError("accepting states must be states")

    @classmethod
    def complete(cls, alphabet, states: Iterable, transitions: Mapping, initial,
                 accepting: Iterable = (), sink: Hashable = "sink") -> "Dfa":
        """Build a DFA from a possibly partial transition map, routing missing
        transitions to a fresh sink state."""
        alphabet = as_alphabet(alphabet)
        states = list(dict.fromkeys(list(states) + [initial] + list(transitions.values())
                                    + [q for q, _ in transitions]))
        trans = dict(transitions)
        missing = [(q, s) for q in states for s in alphabet if (q, s) not in trans]
        if missing:
            while sink in states:
                sink = f"{sink}'"
            states.append(sink)
            for q, s in missing:
                trans[(q, s)] = sink
            for s in alphabet:
                trans[(sink, s)] = sink
        return cls(alphabet, states, trans, initial, accepting)

    def step(self, q, symbol):
        try:
            return self.transitions[(q, symbol)]
        except KeyError:
            raise ValueError(f"symbol {symbol!r} is not in the alphabet {list(self.alphabet)}") from None

    def delta_star(self, q, w: Sequence):
        for s in w:
            q = self.step(q, s)
        return q

    def run(self, w: Sequence) -> list:
        """States at positions 0..|w|; position 0 is the initial state."""
        w = self.alphabet.word(w)
        out = [self.initial]
        q = self.initial
        for s in w:
            q = self.step(q, s)
            out.append(q)
        return out

    def accepts(self, w: Sequence, accepting=None) -> bool:
        acc = _accept_fn(self.accepting if accepting is None else accepting)
        return acc(self.delta_star(self.initial, self.alphabet.word(w)))

    def reachable(self) -> list:
        seen = {self.initial: None}
        queue = deque([self.initial])
        while queue:
            q = queue.popleft()
            for s in self.alphabet:
                r = self.transitions[(q, s)]
                if r not in seen:
                    seen[r] = None
                    queue.append(r)
        return list(seen)

    def access_strings(self) -> dict:
        """A shortest (length-lex least) string reaching each reachable state."""
        access = {self.initial: ()}
        queue = deque([self.initial])
        while queue:
            q = queue.popleft()
            for s in self.alphabet:
                r = self.transitions[(q, s)]
                if r not in access:
                    access[r] = access[q] + (s,)
                    queue.append(r)
        return access

    def with_accepting(self, accepting) -> "Dfa":
        acc = _accept_fn(accepting)
        return Dfa(self.alphabet, self.states, self.transitions, self.initial,
                   [q for q in self.states if acc(q)])

    def to_dot(self, name: str = "M") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point];']
        for q in self.states:
            shape = "doublecircle" if q in self.accepting else "circle"
            lines.append(f'  "{q}" [shape={shape}];')
        lines.append(f'  __start -> "{self.initial}";')
        edges: dict = {}
        for (q, s), r in self.transitions.items():
            edges.setdefault((q, r), []).append(symbol_text(s))
        for (q, r), labels in edges.items():
            lines.append(f'  "{q}" -> "{r}" [label="{",".join(labels)}"];')
        lines.append("}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"Dfa(states={list(self.states)!r}, initial={self.initial!r})"


def dfa_run(M: Dfa, w: Sequence) -> list:
    return M.run(w)


class WeightedNfa:
    """A weighted NFA ``(alphabet, states, transitions, initial, ending)``.

    ``transitions`` maps ``(p, symbol, q)`` to a weight; absent triples weigh
    zero.  ``ending`` maps states to their ending weight (zero if absent).
    """

    def __init__(self, alphabet, states: Iterable, transitions: Mapping, initial,
                 ending: Mapping, semiring: Semiring | None = None):
        self.alphabet = as_alphabet(alphabet)
        self.states = tuple(dict.fromkeys(states))
        weights = list(transitions.values()) + list(ending.values())
        if semiring is None:
            semiring = weights[0].semiring if weights and isinstance(weights[0], (Bool, ExtRat)) \
                else Semiring.REAL
        self.semiring = semiring
        self.transitions = {k: semiring.coerce(v) for k, v in transitions.items()
                            if not semiring.coerce(v).is_zero()}
        self.initial = initial
        self.ending = {q: semiring.coerce(ending.get(q, semiring.zero)) for q in self.states}
        state_set = set(self.states)
        if initial not in state_set:
            raise ValueError(f"initial state {initial!r} is not a state")
        for (p, s, q) in self.transitions:
            if p not in state_set or q not in state_set:
                raise ValueError(f"transition ({p!r}, {s!r}, {q!r}) uses an unknown state")
            if s not in self.alphabet:
                raise ValueError(f"transition symbol {s!r} is not in the alphabet")
        self._out: dict = {}
        for (p, s, q), w in self.transitions.items():
            self._out.setdefault((p, s), []).append((q, w))

    def arcs(self, p, symbol) -> list:
        return self._out.get((p, symbol), [])

    def forward(self, w: Sequence, start=None) -> dict:
        """Map state -> delta*(start, w, state), omitting zeros."""
        zero = self.semiring.zero
        vec = {self.initial if start is None else start: self.semiring.one}
        for s in w:
            nxt: dict = {}
            for p, x in vec.items():
                for q, y in self.arcs(p, s):
                    nxt[q] = nxt.get(q, zero) + x * y
            vec = {q: v for q, v in nxt.items() if not v.is_zero()}
        return vec

    def delta_star(self, p, w: Sequence, q) -> SemiringValue:
        return self.forward(w, start=p).get(q, self.semiring.zero)

    def weight(self, w: Sequence) -> SemiringValue:
        w = self.alphabet.word(w)
        vec = self.forward(w)
        return self.semiring.sum(x * self.ending[q] for q, x in vec.items())

    def is_deterministic(self) -> bool:
        return all(len(v) <= 1 for v in self._out.values())

    def support(self) -> dict:
        """Boolean support: (p, symbol) -> frozenset of successors."""
        return {k: frozenset(q for q, _ in v) for k, v in self._out.items()}

    def to_dot(self, name: str = "N") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point];']
        for q in self.states:
            lines.append(f'  "{q}" [label="{q}/{self.ending[q]}"];')
        lines.append(f'  __start -> "{self.initial}";')
        for (p, s, q), w in self.transitions.items():
            lines.append(f'  "{p}" -> "{q}" [label="{symbol_text(s)}/{w}"];')
        lines.append("}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"WeightedNfa(states={list(self.states)!r}, initial={self.initial!r})"


def nfa_weight(N: WeightedNfa, w: Sequence) -> SemiringValue:
    return N.weight(w)


# -- transition monoids ------------------------------------------------------


@dataclass
class CounterFreeResult:
    counter_free: bool
    k: int | None = None          # smallest k with m^k = m^(k+1) for every element
    witness: tuple | None = None  # word acting as a nontrivial permutation
    state: Hashable | None = None
    monoid_size: int = 0

    def __bool__(self) -> bool:
        return self.counter_free


def _generate_monoid(generators: dict, compose: Callable) -> dict:
    """Semigroup generated by ``generators`` (symbol -> element), each element
    paired with a length-lex least word producing it."""
    words: dict = {}
    queue: deque = deque()
    for s, g in generators.items():
        if g not in words:
            words[g] = (s,)
            queue.append(g)
    while queue:
        m = queue.popleft()
        for s, g in generators.items():
            mg = compose(m, g)
            if mg not in words:
                words[mg] = words[m] + (s,)
                queue.append(mg)
    return words


def _power_profile(m, compose: Callable) -> tuple:
    """(index, period) of ``m``: the least k, p >= 1 with m^k = m^(k+p)."""
    seen = {}
    power = m
    k = 1
    while power not in seen:
        seen[power] = k
        power = compose(power, m)
        k += 1
    first = seen[power]
    return first, k - first


def _compose_functions(f: tuple, g: tuple) -> tuple:
    return tuple(g[x] for x in f)


def transition_monoid(M: Dfa) -> dict:
    """Elements of the DFA's transition semigroup (as state-index tuples) with words."""
    index = {q: i for i, q in enumerate(M.states)}
    gens = {s: tuple(index[M.transitions[(q, s)]] for q in M.states) for s in M.alphabet}
    return _generate_monoid(gens, _compose_functions)


def is_counter_free_dfa(M: Dfa) -> CounterFreeResult:
    words = transition_monoid(M)
    k = 1
    for m, word in words.items():
        idx, period = _power_profile(m, _compose_functions)
        if period > 1:
            power = m
            for _ in range(idx - 1):
                power = _compose_functions(power, m)
            for i, q in enumerate(M.states):
                if power[i] != m[power[i]]:
                    return CounterFreeResult(False, witness=word, state=q, monoid_size=len(words))
        k = max(k, idx)
    return CounterFreeResult(True, k=k, monoid_size=len(words))


def _compose_relations(a: tuple, b: tuple) -> tuple:
    out = []
    for row in a:
        acc = 0
        j = 0
        while row:
            if row & 1:
                acc |= b[j]
            row >>= 1
            j += 1
        out.append(acc)
    return tuple(out)


def support_monoid(N: WeightedNfa) -> dict:
    index = {q: i for i, q in enumerate(N.states)}
    gens = {}
    for s in N.alphabet:
        rows = []
        for p in N.states:
            mask = 0
            for q, _ in N.arcs(p, s):
                mask |= 1 << index[q]
            rows.append(mask)
        gens[s] = tuple(rows)
    return _generate_monoid(gens, _compose_relations)


def is_counter_free_nfa_support(N: WeightedNfa) -> CounterFreeResult:
    """Aperiodicity of the monoid of Boolean support matrices."""
    words = support_monoid(N)
    k = 1
    for m, word in words.items():
        idx, period = _power_profile(m, _compose_relations)
        if period > 1:
            return CounterFreeResult(False, witness=word, monoid_size=len(words))
        k = max(k, idx)
    return CounterFreeResult(True, k=k, monoid_size=len(words))


# -- twins -------------------------------------------------------------------


@dataclass
class TwinsResult:
    determinizable: bool
    pair: tuple | None = None
    label: tuple | None = None
    weights: tuple | None = None

    def __bool__(self) -> bool:
        return self.determinizable


def sibling_pairs(N: WeightedNfa) -> list:
    """Ordered list of pairs (p, q), p != q, both reachable by one common string."""
    start = (N.initial, N.initial)
    seen = {start: None}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        for s in N.alphabet:
            for p2, _ in N.arcs(p, s):
                for q2, _ in N.arcs(q, s):
                    if (p2, q2) not in seen:
                        seen[(p2, q2)] = None
                        queue.append((p2, q2))
    order = {q: i for i, q in enumerate(N.states)}
    pairs = {tuple(sorted(pq, key=order.__getitem__)) for pq in seen if pq[0] != pq[1]}
    return sorted(pairs, key=lambda pq: (order[pq[0]], order[pq[1]]))


def is_determinizable_twins(N: WeightedNfa, max_nodes: int = 200_000) -> TwinsResult:
    """Check that every pair of sibling states are twins: equally labelled
    cycles through them carry equal weight.  Cycle labels are searched up to
    length |Q|^2."""
    if N.semiring is Semiring.BOOLEAN:
        raise UnsupportedSemiring("twins check needs real weights; Boolean NFAs determinize "
                                  "by subset construction")
    bound = len(N.states) ** 2
    succ: dict = {}
    for (p, s, q) in N.transitions:
        succ.setdefault((p, s), set()).add(q)
    for p, q in sibling_pairs(N):
        # pairs (x, y) from which (p, q) is reachable in the pair graph
        pred: dict = {}
        for (x, s), xs in succ.items():
            for (y, t), ys in succ.items():
                if s != t:
                    continue
                for x2 in xs:
                    for y2 in ys:
                        pred.setdefault((x2, y2), set()).add((x, y))
        back = {(p, q)}
        queue = deque([(p, q)])
        while queue:
            node = queue.popleft()
            for prev in pred.get(node, ()):
                if prev not in back:
                    back.add(prev)
                    queue.append(prev)
        explored = 0
        stack = [((), {p: N.semiring.one}, {q: N.semiring.one})]
        while stack:
            word, vp, vq = stack.pop()
            if word and p in vp and q in vq:
                wp, wq = vp[p], vq[q]
                if wp != wq:
                    return TwinsResult(False, (p, q), word, (wp, wq))
            if len(word) >= bound:
                continue
            for s in reversed(N.alphabet.symbols):
                np_ = _advance(N, vp, s)
                nq = _advance(N, vq, s)
                if any((x, y) in back for x in np_ for y in nq):
                    explored += 1
                    if explored > max_nodes:
                        raise RuntimeError(f"twins search exceeded {max_nodes} nodes")
                    stack.append((word + (s,), np_, nq))
    return TwinsResult(True)


def _advance(N: WeightedNfa, vec: dict, s) -> dict:
    zero = N.semiring.zero
    out: dict = {}
    for x, a in vec.items():
        for y, b in N.arcs(x, s):
            out[y] = out.get(y, zero) + a * b
    return out


# -- minimization, co-accessibility, products --------------------------------


def minimize_dfa(M: Dfa, accepting=None) -> tuple:
    """Moore partition refinement on the reachable part.

    Returns ``(minimal_dfa, state_map)`` where ``state_map`` sends each
    reachable state of ``M`` to its class, named after the class's first
    reachable member."""
    acc = _accept_fn(M.accepting if accepting is None else accepting)
    reach = M.reachable()
    block = {q: int(bool(acc(q))) for q in reach}
    while True:
        sig = {q: (block[q],) + tuple(block[M.transitions[(q, s)]] for s in M.alphabet)
               for q in reach}
        ids: dict = {}
        new_block = {q: ids.setdefault(sig[q], len(ids)) for q in reach}
        if len(ids) == len(set(block.values())):
            break
        block = new_block
    rep: dict = {}
    for q in reach:
        rep.setdefault(block[q], q)
    state_map = {q: rep[block[q]] for q in reach}
    states = list(rep.values())
    trans = {(r, s): state_map[M.transitions[(r, s)]] for r in states for s in M.alphabet}
    minimal = Dfa(M.alphabet, states, trans, state_map[M.initial],
                  [r for r in states if acc(r)])
    return minimal, state_map


def coaccessible(M: Dfa, target: Iterable) -> set:
    """States with a (possibly empty) path into ``target``."""
    pred: dict = {}
    for (q, _), r in M.transitions.items():
        pred.setdefault(r, set()).add(q)
    found = set(target)
    queue = deque(found)
    while queue:
        r = queue.popleft()
        for q in pred.get(r, ()):
            if q not in found:
                found.add(q)
                queue.append(q)
    return found


def product_dfa(machines: Sequence[Dfa], accepting=None) -> Dfa:
    """Reachable part of the Cartesian product; states are tuples."""
    if not machines:
        raise ValueError("product of no machines")
    alphabet = machines[0].alphabet
    for M in machines[1:]:
        if M.alphabet != alphabet:
            raise AlphabetMismatch("product_dfa needs machines over one alphabet")
    start = tuple(M.initial for M in machines)
    seen = {start: None}
    queue = deque([start])
    trans = {}
    while queue:
        state = queue.popleft()
        for s in alphabet:
            nxt = tuple(M.transitions[(q, s)] for M, q in zip(machines, state))
            trans[(state, s)] = nxt
            if nxt not in seen:
                seen[nxt] = None
                queue.append(nxt)
    acc = _accept_fn(accepting)
    return Dfa(alphabet, list(seen), trans, start, [q for q in seen if acc(q)])


def word_str(w: Sequence) -> str:
    return word_text(w)

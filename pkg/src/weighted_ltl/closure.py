"""Subformula-closure automata.

A state is the set of closure formulas satisfied by the string read so far,
stored as an integer bitmask over the closure (bit k = ``closure[k]``).  Only
states reachable from the initial set are built.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from .automata import Dfa, minimize_dfa
from .logic.formula import (FALSE, TRUE, Alphabet, And, Bos, Formula, H, Not, S, Sym, Y, as_alphabet,
                            check_symbols)
from .logic.printer import to_text
from .logic.semantics import truth_values

DEFAULT_BUDGET = 50_000


class StateBudgetExceeded(RuntimeError):
    def __init__(self, budget: int):
        super().__init__(f"closure automaton exceeded the state budget of {budget} states")
        self.budget = budget


def _closure_of(phi: Formula, seen: dict) -> None:
    # post-order walk that keeps the constants true/false atomic
    stack = [(phi, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            seen.setdefault(node, None)
            continue
        if node in seen:
            continue
        stack.append((node, True))
        if node is not TRUE and node is not FALSE:
            for child in reversed(node.children):
                if child not in seen:
                    stack.append((child, False))


def _merged_closure(formulas: Sequence[Formula]) -> list:
    seen: dict = {}
    for phi in formulas:
        _closure_of(phi, seen)
    return list(seen)


def _compile(closure: list) -> list:
    index = {f: k for k, f in enumerate(closure)}
    program = []
    for f in closure:
        if f is TRUE or f is FALSE:
            program.append(("const", f is TRUE))
        elif isinstance(f, Sym):
            program.append(("sym", f.symbol))
        elif isinstance(f, Bos):
            program.append(("bos",))
        elif isinstance(f, Not):
            program.append(("not", index[f.arg]))
        elif isinstance(f, And):
            program.append(("and", index[f.left], index[f.right]))
        elif isinstance(f, Y):
            program.append(("Y", index[f.arg]))
        elif isinstance(f, H):
            program.append(("H", index[f.arg]))
        elif isinstance(f, S):
            program.append(("S", index[f.left], index[f.right]))
        else:
            raise TypeError(f"not a formula: {f!r}")
    return program


def _successor(program: list, psi: int, symbol) -> int:
    """Apply the transfer relation: which closure formulas hold after reading ``symbol``."""
    new = 0
    for k, op in enumerate(program):
        tag = op[0]
        if tag == "sym":
            bit = op[1] == symbol
        elif tag == "const":
            bit = op[1]
        elif tag == "bos":
            bit = False
        elif tag == "not":
            bit = not (new >> op[1] & 1)
        elif tag == "and":
            bit = bool(new >> op[1] & 1) and bool(new >> op[2] & 1)
        elif tag == "Y":
            bit = bool(psi >> op[1] & 1)
        elif tag == "H":
            bit = bool(psi >> k & 1) and bool(new >> op[1] & 1)
        else:
            bit = (bool(psi >> k & 1) and bool(new >> op[1] & 1)) or bool(new >> op[2] & 1)
        if bit:
            new |= 1 << k
    return new


class ClosureDfa:
    """DFA over sets of closure formulas for one formula or a tuple of formulas.

    ``dfa`` has integer-bitmask states; for a single formula its accepting
    states are those containing the formula.  ``label(state)`` gives the truth
    tuple of the tracked formulas.
    """

    def __init__(self, formulas: Sequence[Formula], alphabet, budget: int = DEFAULT_BUDGET):
        self.alphabet: Alphabet = as_alphabet(alphabet)
        self.formulas = tuple(formulas)
        for phi in self.formulas:
            check_symbols(phi, self.alphabet)
        self.closure = _merged_closure(self.formulas)
        self.index = {f: k for k, f in enumerate(self.closure)}
        self.tracked = tuple(self.index[f] for f in self.formulas)
        program = _compile(self.closure)
        memo: dict = {}
        for f in self.closure:
            truth_values(f, (), memo)
        initial = sum(1 << k for k, f in enumerate(self.closure) if memo[f][0])
        seen = {initial: None}
        queue = deque([initial])
        trans = {}
        while queue:
            psi = queue.popleft()
            for s in self.alphabet:
                nxt = _successor(program, psi, s)
                trans[(psi, s)] = nxt
                if nxt not in seen:
                    if len(seen) >= budget:
                        raise StateBudgetExceeded(budget)
                    seen[nxt] = None
                    queue.append(nxt)
        accepting = []
        if len(self.formulas) == 1:
            bit = self.tracked[0]
            accepting = [q for q in seen if q >> bit & 1]
        self.dfa = Dfa(self.alphabet, list(seen), trans, initial, accepting)

    @property
    def states(self) -> tuple:
        return self.dfa.states

    @property
    def initial(self) -> int:
        return self.dfa.initial

    @property
    def accepting(self) -> frozenset:
        return self.dfa.accepting

    def label(self, state: int) -> tuple:
        return tuple(bool(state >> k & 1) for k in self.tracked)

    def members(self, state: int) -> list:
        return [f for k, f in enumerate(self.closure) if state >> k & 1]

    def describe(self, state: int) -> str:
        return "{" + ", ".join(to_text(f) for f in self.members(state)) + "}"

    def is_empty(self) -> bool:
        return not self.dfa.accepting

    def minimized(self) -> Dfa:
        return minimize_dfa(self.dfa)[0]

    def __len__(self) -> int:
        return len(self.dfa.states)


def build_closure_dfa(phi: Formula, alphabet, budget: int = DEFAULT_BUDGET) -> ClosureDfa:
    return ClosureDfa((phi,), alphabet, budget)


def build_tuple_closure_dfa(formulas: Sequence[Formula], alphabet,
                            budget: int = DEFAULT_BUDGET) -> ClosureDfa:
    return ClosureDfa(tuple(formulas), alphabet, budget)

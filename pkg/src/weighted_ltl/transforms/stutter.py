"""Stutter invariance of regular languages given by DFAs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..automata import Dfa, minimize_dfa
from ..closure import DEFAULT_BUDGET, build_closure_dfa
from ..logic.formula import Formula, word_text


@dataclass
class StutterResult:
    invariant: bool
    witness: tuple | None = None  # (u, sigma, v): exactly one of u.sigma.v, u.sigma.sigma.v is in L

    def __bool__(self) -> bool:
        return self.invariant

    def __str__(self) -> str:
        if self.invariant:
            return "stutter-invariant"
        u, s, v = self.witness
        return f"not stutter-invariant: u={word_text(u)!r} sigma={s} v={word_text(v)!r}"


def _distinguishing_suffix(M: Dfa, p, q) -> tuple:
    """Length-lex least ``v`` on which ``p`` and ``q`` disagree."""
    start = (p, q)
    seen = {start: ()}
    queue = deque([start])
    while queue:
        x, y = queue.popleft()
        if (x in M.accepting) != (y in M.accepting):
            return seen[(x, y)]
        for s in M.alphabet:
            nxt = (M.transitions[(x, s)], M.transitions[(y, s)])
            if nxt not in seen:
                seen[nxt] = seen[(x, y)] + (s,)
                queue.append(nxt)
    raise AssertionError("states of a minimal DFA must be distinguishable")


def stutter_invariant(M: Dfa, accepting=None) -> StutterResult:
    """In the minimal DFA, check ``delta(q, ss) == delta(q, s)`` for reachable ``q``."""
    minimal, _ = minimize_dfa(M, accepting)
    access = minimal.access_strings()
    for q, u in access.items():
        for s in minimal.alphabet:
            once = minimal.transitions[(q, s)]
            twice = minimal.transitions[(once, s)]
            if once != twice:
                return StutterResult(False, (u, s, _distinguishing_suffix(minimal, once, twice)))
    return StutterResult(True)


def formula_stutter_invariant(phi: Formula, alphabet, budget: int = DEFAULT_BUDGET) -> StutterResult:
    return stutter_invariant(build_closure_dfa(phi, alphabet, budget).dfa)

"""Right derivatives and prefix closures of formulas."""

from __future__ import annotations

from ..automata import coaccessible
from ..closure import DEFAULT_BUDGET, ClosureDfa, build_closure_dfa
from ..logic.formula import (FALSE, TRUE, And, Bos, Formula, H, Not, Or, S, Sym, Y, as_alphabet,
                             conjoin, disjoin, simplify, subformulas)


def next_sigma(phi: Formula, sigma, simplified: bool = True) -> Formula:
    """A formula true at ``w`` exactly when ``phi`` is true at ``w sigma``."""
    memo: dict = {}
    for node in subformulas(phi):
        if isinstance(node, Sym):
            out = TRUE if node.symbol == sigma else FALSE
        elif isinstance(node, Bos):
            out = FALSE
        elif isinstance(node, Not):
            out = Not(memo[node.arg])
        elif isinstance(node, And):
            out = And(memo[node.left], memo[node.right])
        elif isinstance(node, Y):
            out = node.arg
        elif isinstance(node, H):
            out = And(node, memo[node.arg])
        elif isinstance(node, S):
            out = Or(And(memo[node.left], node), memo[node.right])
        else:
            raise TypeError(f"not a formula: {node!r}")
        memo[node] = out
    return simplify(memo[phi]) if simplified else memo[phi]


def characteristic_formula(closure: ClosureDfa, state: int) -> Formula:
    """Conjunction pinning down exactly which closure formulas hold."""
    return conjoin(f if state >> k & 1 else Not(f) for k, f in enumerate(closure.closure))


def prefix_transform(phi: Formula, alphabet, budget: int = DEFAULT_BUDGET,
                     simplified: bool = True) -> Formula:
    """A formula true at ``u`` exactly when some ``uv`` satisfies ``phi``.

    Built as the disjunction of characteristic formulas of the reachable
    closure states that can still reach an accepting state."""
    M = build_closure_dfa(phi, as_alphabet(alphabet), budget)
    live = coaccessible(M.dfa, M.accepting)
    if not live:
        return FALSE
    if len(live) == len(M.states):
        return TRUE
    out = disjoin(characteristic_formula(M, q) for q in M.states if q in live)
    return simplify(out) if simplified else out

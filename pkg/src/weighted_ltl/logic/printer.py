"""Render formulas in the ASCII concrete syntax accepted by :mod:`.parser`.

Desugared shapes are recognized and printed back as sugar (``|``, ``->``,
``<->``, ``P``, ``true``, ``false``), so ``parse(to_text(phi)) is phi``.
"""

from __future__ import annotations

from .formula import FALSE, TRUE, And, Bos, Formula, H, Not, S, Sym, Y, symbol_text

# precedence levels; higher binds tighter
_IMPL, _OR, _AND, _SINCE, _UNARY, _ATOM = 1, 2, 3, 4, 5, 6


def _view(node: Formula):
    """Classify ``node`` as (kind, operands), recognizing sugar."""
    if node is TRUE:
        return "true", ()
    if node is FALSE:
        return "false", ()
    if isinstance(node, Not):
        a = node.arg
        if isinstance(a, And):
            l, r = a.left, a.right
            if isinstance(l, Not) and isinstance(r, Not):
                return "|", (l.arg, r.arg)
            if isinstance(r, Not):
                return "->", (l, r.arg)
        if isinstance(a, H) and isinstance(a.arg, Not):
            return "P", (a.arg.arg,)
        return "!", (a,)
    if isinstance(node, And):
        l, r = node.left, node.right
        lk, lops = _view(l)
        rk, rops = _view(r)
        if lk == "->" and rk == "->" and lops == (rops[1], rops[0]):
            return "<->", lops
        return "&", (l, r)
    if isinstance(node, Y):
        return "Y", (node.arg,)
    if isinstance(node, H):
        return "H", (node.arg,)
    if isinstance(node, S):
        return "S", (node.left, node.right)
    if isinstance(node, Bos):
        return "bos", ()
    if isinstance(node, Sym):
        return "sym", ()
    raise TypeError(f"not a formula: {node!r}")


_BINARY = {"<->": (_IMPL, "right"), "->": (_IMPL, "right"), "|": (_OR, "left"),
           "&": (_AND, "left"), "S": (_SINCE, "right")}


def _render(node: Formula, memo: dict) -> tuple:
    hit = memo.get(node)
    if hit is not None:
        return hit
    kind, ops = _view(node)
    if kind in ("true", "false", "bos"):
        out = (kind, _ATOM)
    elif kind == "sym":
        out = (symbol_text(node.symbol), _ATOM)
    elif kind in ("!", "Y", "H", "P"):
        text, prec = _render(ops[0], memo)
        if prec < _UNARY:
            text = f"({text})"
        out = (f"{kind} {text}" if kind != "!" else f"!{text}", _UNARY)
    else:
        level, assoc = _BINARY[kind]
        lt, lp = _render(ops[0], memo)
        rt, rp = _render(ops[1], memo)
        if lp < level or (assoc == "right" and lp == level):
            lt = f"({lt})"
        if rp < level or (assoc == "left" and rp == level):
            rt = f"({rt})"
        out = (f"{lt} {kind} {rt}", level)
    memo[node] = out
    return out


def to_text(phi: Formula) -> str:
    import sys

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20000))
    try:
        return _render(phi, {})[0]
    finally:
        sys.setrecursionlimit(limit)

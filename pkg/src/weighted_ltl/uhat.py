"""Exact evaluation of strictly masked, rightmost unique-hard-attention transformers.

Every coefficient is a ``Fraction``.  A layer is a set of attention heads
(summed, optionally with a residual connection) followed by a feed-forward
stack of affine maps, each optionally rectified (again with an optional
residual).  There are no position embeddings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .automata import Dfa
from .logic.formula import BOS, as_alphabet
from .logic.semantics import strings_of_length
from .models import EncoderMachine, StateEncoder, UnsupportedEncoder

Vector = tuple
Matrix = tuple  # tuple of rows


class DimensionError(ValueError):
    pass


def _vec(v) -> Vector:
    return tuple(Fraction(x) for x in v)


def _mat(m) -> Matrix:
    return tuple(_vec(row) for row in m)


def _affine(w: Matrix, b: Vector, x: Vector) -> Vector:
    if any(len(row) != len(x) for row in w):
        raise DimensionError(f"matrix with {len(w[0]) if w else 0} columns applied to a vector of width {len(x)}")
    if len(b) != len(w):
        raise DimensionError(f"bias of width {len(b)} for a matrix with {len(w)} rows")
    return tuple(sum((a * y for a, y in zip(row, x)), Fraction(0)) + c for row, c in zip(w, b))


def _dot(x: Vector, y: Vector) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


@dataclass(frozen=True)
class Head:
    wq: Matrix
    bq: Vector
    wk: Matrix
    bk: Vector
    wv: Matrix
    bv: Vector

    def __post_init__(self):
        for name in ("wq", "wk", "wv"):
            object.__setattr__(self, name, _mat(getattr(self, name)))
        for name in ("bq", "bk", "bv"):
            object.__setattr__(self, name, _vec(getattr(self, name)))
        if len(self.wq) != len(self.wk):
            raise DimensionError("query and key widths differ")


@dataclass(frozen=True)
class Dense:
    w: Matrix
    b: Vector
    relu: bool = True

    def __post_init__(self):
        object.__setattr__(self, "w", _mat(self.w))
        object.__setattr__(self, "b", _vec(self.b))

    def __call__(self, x: Vector) -> Vector:
        y = _affine(self.w, self.b, x)
        return tuple(max(v, Fraction(0)) for v in y) if self.relu else y


@dataclass(frozen=True)
class Layer:
    heads: tuple = ()
    attention_residual: bool = True
    ffn: tuple = ()
    ffn_residual: bool = True

    def __post_init__(self):
        object.__setattr__(self, "heads", tuple(self.heads))
        object.__setattr__(self, "ffn", tuple(self.ffn))


def attend(queries: Sequence[Vector], keys: Sequence[Vector], values: Sequence[Vector]) -> list:
    """Rightmost hard attention with strict masking.

    Position ``i`` attends to the rightmost ``j < i`` maximizing ``q_i . k_j``;
    position 0 receives the zero vector."""
    n = len(queries)
    if len(keys) != n or len(values) != n:
        raise DimensionError("queries, keys and values must have equal lengths")
    if n and any(len(k) != len(queries[0]) for k in list(keys) + list(queries)):
        raise DimensionError("query and key widths differ")
    width = len(values[0]) if n else 0
    out = [tuple(Fraction(0) for _ in range(width))] if n else []
    for i in range(1, n):
        best, arg = None, None
        for j in range(i):
            score = _dot(queries[i], keys[j])
            if best is None or score >= best:
                best, arg = score, j
        out.append(tuple(values[arg]))
    return out


def attention_positions(queries: Sequence[Vector], keys: Sequence[Vector]) -> list:
    """``j_i`` for ``i >= 1`` (``None`` at 0)."""
    out = [None]
    for i in range(1, len(queries)):
        scores = [_dot(queries[i], keys[j]) for j in range(i)]
        top = max(scores)
        out.append(max(j for j, s in enumerate(scores) if s == top))
    return out


@dataclass(frozen=True)
class UhatModel:
    alphabet: object
    embeddings: Mapping
    layers: tuple = ()
    width: int = field(init=False)

    def __post_init__(self):
        alphabet = as_alphabet(self.alphabet)
        object.__setattr__(self, "alphabet", alphabet)
        emb = {s: _vec(v) for s, v in self.embeddings.items()}
        missing = [s for s in (BOS,) + alphabet.symbols if s not in emb]
        if missing:
            raise ValueError(f"no embedding for {missing}")
        widths = {len(v) for v in emb.values()}
        if len(widths) != 1:
            raise DimensionError(f"embeddings have differing widths {sorted(widths)}")
        object.__setattr__(self, "embeddings", emb)
        object.__setattr__(self, "layers", tuple(self.layers))
        object.__setattr__(self, "width", widths.pop())

    def encode(self, w: Sequence) -> list:
        return encode(self, w)


def encode(Tm: UhatModel, w: Sequence) -> list:
    """States ``h_0 .. h_n`` of the last layer on ``bos w``."""
    w = Tm.alphabet.word(w)
    h = [Tm.embeddings[BOS]] + [Tm.embeddings[s] for s in w]
    for layer in Tm.layers:
        if layer.heads:
            total = [tuple(Fraction(0) for _ in x) for x in h]
            for head in layer.heads:
                q = [_affine(head.wq, head.bq, x) for x in h]
                k = [_affine(head.wk, head.bk, x) for x in h]
                v = [_affine(head.wv, head.bv, x) for x in h]
                c = attend(q, k, v)
                if c and len(c[0]) != len(total[0]):
                    raise DimensionError("value width must equal the model width")
                total = [tuple(a + b for a, b in zip(t, ci)) for t, ci in zip(total, c)]
            h = [tuple(a + b for a, b in zip(x, t)) if layer.attention_residual else t
                 for x, t in zip(h, total)]
        if layer.ffn:
            out = []
            for x in h:
                y = x
                for block in layer.ffn:
                    y = block(y)
                if layer.ffn_residual:
                    if len(y) != len(x):
                        raise DimensionError("residual feed-forward output must keep the width")
                    y = tuple(a + b for a, b in zip(x, y))
                out.append(y)
            h = out
    return h


@dataclass
class ExtractedStates:
    """States seen on all strings of length <= ``bound``."""

    model: UhatModel
    bound: int
    states: list
    transitions: dict       # (state, symbol) -> state, as observed
    conflicts: list         # (state, symbol, [successors]) where the state does not determine the next
    saturated: bool

    @property
    def encoder(self) -> "ExtractedEncoder":
        return ExtractedEncoder(self)

    def index(self, state) -> int:
        return self.states.index(state)


def extract_states(Tm: UhatModel, n: int) -> ExtractedStates:
    """Enumerate distinct last-layer vectors over all strings of length <= n.

    Saturated means strings of length exactly n contributed no new state
    (always false for n = 0)."""
    order: dict = {}
    first_seen: dict = {}
    trans: dict = {}
    conflicts: dict = {}
    for length in range(n + 1):
        for w in strings_of_length(Tm.alphabet, length):
            trace = encode(Tm, w)
            for i, h in enumerate(trace):
                if h not in order:
                    order[h] = None
                    first_seen[h] = i
            if length:
                prev, cur = trace[-2], trace[-1]
                key = (prev, w[-1])
                if key in trans and trans[key] != cur:
                    conflicts.setdefault(key, {trans[key]}).add(cur)
                trans.setdefault(key, cur)
    states = list(order)
    saturated = n > 0 and all(i < n for i in first_seen.values())
    clist = [(s, sym, sorted(v)) for (s, sym), v in conflicts.items()]
    return ExtractedStates(Tm, n, states, trans, clist, saturated)


class ExtractedEncoder(StateEncoder):
    """Encoder view of a UHAT: traces come from the model itself.  The finite
    form exists once extraction saturated with every state's successors
    determined."""

    def __init__(self, table: ExtractedStates):
        self.table = table
        self.model = table.model
        self.alphabet = table.model.alphabet

    def trace(self, w: Sequence) -> list:
        return encode(self.model, w)

    def machine(self) -> EncoderMachine:
        t = self.table
        if t.conflicts:
            s, sym, succ = t.conflicts[0]
            raise UnsupportedEncoder(f"state {format_vector(s)} does not determine its successor on {sym}")
        if not t.saturated:
            raise UnsupportedEncoder(f"state extraction up to length {t.bound} did not saturate")
        names = {h: i for i, h in enumerate(t.states)}
        trans = {}
        for h in t.states:
            for s in self.alphabet:
                if (h, s) not in t.transitions:
                    raise UnsupportedEncoder(f"no observed successor of {format_vector(h)} on {s}")
                trans[(names[h], s)] = names[t.transitions[(h, s)]]
        dfa = Dfa(self.alphabet, list(names.values()), trans, names[encode(self.model, ())[0]])
        states = t.states
        return EncoderMachine(dfa, lambda q: states[q])


def format_vector(v: Vector) -> str:
    return "(" + " ".join(str(x) for x in v) + ")"


# -- text format -------------------------------------------------------------


def _fmt_row(v) -> str:
    return " ".join(str(x) for x in v)


def _fmt_matrix(m) -> str:
    return " ; ".join(_fmt_row(r) for r in m)


def dump_uhat(Tm: UhatModel) -> str:
    lines = ["uhat", f"alphabet {' '.join(Tm.alphabet.symbols)}", f"width {Tm.width}"]
    for s in (BOS,) + Tm.alphabet.symbols:
        lines.append(f"embed {s} : {_fmt_row(Tm.embeddings[s])}")
    for layer in Tm.layers:
        lines.append(f"layer attention_residual={'yes' if layer.attention_residual else 'no'} "
                     f"ffn_residual={'yes' if layer.ffn_residual else 'no'}")
        for head in layer.heads:
            lines.append("head")
            for name in ("wq", "bq", "wk", "bk", "wv", "bv"):
                val = getattr(head, name)
                text = _fmt_matrix(val) if name.startswith("w") else _fmt_row(val)
                lines.append(f"  {name} : {text}")
        for block in layer.ffn:
            lines.append(f"dense relu={'yes' if block.relu else 'no'}")
            lines.append(f"  w : {_fmt_matrix(block.w)}")
            lines.append(f"  b : {_fmt_row(block.b)}")
    return "\n".join(lines) + "\n"


class UhatFormatError(ValueError):
    pass


def _parse_row(text: str, lineno: int) -> Vector:
    try:
        return tuple(Fraction(x) for x in text.split())
    except (ValueError, ZeroDivisionError):
        raise UhatFormatError(f"line {lineno}: bad rational in {text!r}") from None


def _parse_matrix(text: str, lineno: int) -> Matrix:
    return tuple(_parse_row(r, lineno) for r in text.split(";")) if text.strip() else ()


def _flags(parts: list, lineno: int) -> dict:
    out = {}
    for p in parts:
        if "=" not in p:
            raise UhatFormatError(f"line {lineno}: expected key=value, got {p!r}")
        k, v = p.split("=", 1)
        if v not in ("yes", "no"):
            raise UhatFormatError(f"line {lineno}: flag {k} must be yes or no")
        out[k] = v == "yes"
    return out


def load_uhat(text: str) -> UhatModel:
    alphabet = None
    emb: dict = {}
    layers: list = []
    current = None      # dict for the layer being read
    target = None       # dict for the head or dense block being read
    lines = [(i + 1, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines or lines[0][1] != "uhat":
        raise UhatFormatError("line 1: expected header 'uhat'")

    def close_block():
        nonlocal target
        if target is None:
            return
        kind = target.pop("__kind__")
        try:
            if kind == "head":
                current["heads"].append(Head(**target))
            else:
                current["ffn"].append(Dense(target["w"], target["b"], target["relu"]))
        except TypeError as err:
            raise UhatFormatError(f"incomplete {kind} block: {err}") from None
        target = None

    for lineno, ln in lines[1:]:
        head, _, rest = ln.partition(" ")
        if head == "alphabet":
            alphabet = rest.split()
        elif head == "width":
            continue
        elif head == "embed":
            sym, sep, vec = rest.partition(":")
            if not sep:
                raise UhatFormatError(f"line {lineno}: expected 'embed SYMBOL : values'")
            emb[sym.strip()] = _parse_row(vec, lineno)
        elif head == "layer":
            close_block()
            flags = _flags(rest.split(), lineno)
            current = {"heads": [], "ffn": [], "attention_residual": flags.get("attention_residual", True),
                       "ffn_residual": flags.get("ffn_residual", True)}
            layers.append(current)
        elif head in ("head", "dense"):
            if current is None:
                raise UhatFormatError(f"line {lineno}: {head} outside a layer")
            close_block()
            target = {"__kind__": head}
            if head == "dense":
                target["relu"] = _flags(rest.split(), lineno).get("relu", True)
        elif ":" in ln and target is not None:
            key, _, val = ln.partition(":")
            key = key.strip()
            if key in ("wq", "wk", "wv", "w"):
                target[key] = _parse_matrix(val, lineno)
            elif key in ("bq", "bk", "bv", "b"):
                target[key] = _parse_row(val, lineno)
            else:
                raise UhatFormatError(f"line {lineno}: unknown field {key!r}")
        else:
            raise UhatFormatError(f"line {lineno}: unexpected {ln!r}")
    close_block()
    if alphabet is None:
        raise UhatFormatError("missing 'alphabet' line")
    built = [Layer(tuple(L["heads"]), L["attention_residual"], tuple(L["ffn"]), L["ffn_residual"])
             for L in layers]
    try:
        return UhatModel(alphabet, emb, tuple(built))
    except ValueError as err:
        raise UhatFormatError(str(err)) from None


def trace_text(Tm: UhatModel, w: Sequence) -> str:
    return "\n".join(f"{i} {format_vector(h)}" for i, h in enumerate(encode(Tm, w)))

"""Words in elementary 2D bordisms.

Grammar::

    word   := layer (";" layer)*
    layer  := piece ("|" piece)*
    piece  := "cup" | "cap" | "pants" | "copants" | "id" | "swap"

Layers are listed bottom to top, so the first layer is applied first. Pieces
in a layer sit side by side, left to right, and consume consecutive circles.
"""
from __future__ import annotations

import random
import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exact import ONE, Tensor, identity, kron, matmul
from .frobenius import FrobeniusAlgebra, generator_tensor

ARITY = {
    "cup": (0, 1),
    "cap": (1, 0),
    "pants": (2, 1),
    "copants": (1, 2),
    "id": (1, 1),
    "swap": (2, 2),
}

# Euler characteristic of each piece as a surface with boundary
EULER = {"cup": 1, "cap": 1, "pants": -1, "copants": -1, "id": 0, "swap": 0}


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ArityMismatch(ValueError):
    def __init__(self, boundary: int, expected: int, actual: int):
        super().__init__(
            f"arity mismatch at layer boundary {boundary}: "
            f"next layer expects {expected} circles, previous supplies {actual}"
        )
        self.boundary = boundary
        self.expected = expected
        self.actual = actual


class TopologyError(RuntimeError):
    """Raised when the Euler count is inconsistent; always a bug, never bad input."""


@dataclass(frozen=True)
class Layer:
    pieces: tuple[str, ...]

    def __post_init__(self):
        if not self.pieces:
            raise ValueError("a layer needs at least one piece")
        for p in self.pieces:
            if p not in ARITY:
                raise ValueError(f"unknown generator {p!r}")

    @property
    def n_in(self) -> int:
        return sum(ARITY[p][0] for p in self.pieces)

    @property
    def n_out(self) -> int:
        return sum(ARITY[p][1] for p in self.pieces)

    def __str__(self):
        return " | ".join(self.pieces)


@dataclass(frozen=True)
class BordismWord:
    layers: tuple[Layer, ...]
    in_circles: int
    out_circles: int

    def __post_init__(self):
        if self.layers:
            if self.layers[0].n_in != self.in_circles:
                raise ArityMismatch(0, self.layers[0].n_in, self.in_circles)
            for t in range(1, len(self.layers)):
                prev, nxt = self.layers[t - 1], self.layers[t]
                if prev.n_out != nxt.n_in:
                    raise ArityMismatch(t, nxt.n_in, prev.n_out)
            if self.layers[-1].n_out != self.out_circles:
                raise ArityMismatch(len(self.layers), self.out_circles, self.layers[-1].n_out)
        elif self.in_circles != self.out_circles:
            raise ArityMismatch(0, self.out_circles, self.in_circles)

    @classmethod
    def from_layers(cls, layers: Iterable[Sequence[str] | Layer]) -> "BordismWord":
        ls = tuple(l if isinstance(l, Layer) else Layer(tuple(l)) for l in layers)
        if not ls:
            return cls((), 0, 0)
        return cls(ls, ls[0].n_in, ls[-1].n_out)

    @property
    def closed(self) -> bool:
        return self.in_circles == 0 and self.out_circles == 0

    def __str__(self):
        return "; ".join(str(l) for l in self.layers)


_TOKEN = re.compile(r"\s*(?:([A-Za-z_]+)|([;|])|(\S))")


def parse_word(text: str) -> BordismWord:
    layers: list[list[str]] = [[]]
    expect_piece = True
    pos = 0
    last_sep = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        name, sep, junk = m.groups()
        start = m.start(m.lastindex)
        pos = m.end()
        if junk is not None:
            raise WordSyntaxError(f"unexpected character {junk!r}", start)
        if name is not None:
            if not expect_piece:
                raise WordSyntaxError(f"missing separator before {name!r}", start)
            if name not in ARITY:
                raise WordSyntaxError(f"unknown generator {name!r}", start)
            layers[-1].append(name)
            expect_piece = False
        else:
            if expect_piece:
                raise WordSyntaxError(f"empty piece before {sep!r}", start)
            if sep == ";":
                layers.append([])
            expect_piece = True
            last_sep = start
    if expect_piece:
        if len(layers) == 1 and not layers[0]:
            raise WordSyntaxError("empty word", 0)
        raise WordSyntaxError("trailing separator", last_sep)
    return BordismWord.from_layers(layers)


def identity_word(k: int) -> BordismWord:
    if k == 0:
        return BordismWord((), 0, 0)
    return BordismWord.from_layers([["id"] * k])


def compose(w1: BordismWord, w2: BordismWord) -> BordismWord:
    """``w1`` followed by ``w2``."""
    if w1.out_circles != w2.in_circles:
        raise ArityMismatch(len(w1.layers), w2.in_circles, w1.out_circles)
    return BordismWord(w1.layers + w2.layers, w1.in_circles, w2.out_circles)


def disjoint_union(w1: BordismWord, w2: BordismWord) -> BordismWord:
    """Side-by-side juxtaposition, padding the shorter word with identities."""
    n = max(len(w1.layers), len(w2.layers))

    def padded(w):
        out = list(w.layers)
        while len(out) < n:
            k = w.out_circles
            out.append(Layer(("id",) * k) if k else None)
        return out

    layers = []
    for a, b in zip(padded(w1), padded(w2)):
        pieces = (a.pieces if a else ()) + (b.pieces if b else ())
        if pieces:
            layers.append(Layer(pieces))
    return BordismWord(tuple(layers), w1.in_circles + w2.in_circles,
                       w1.out_circles + w2.out_circles)


# -- topology -----------------------------------------------------------------

@dataclass(frozen=True)
class Component:
    genus: int
    boundary_in: int
    boundary_out: int


@dataclass(frozen=True)
class SurfaceTopology:
    components: tuple[Component, ...]

    @property
    def genera(self) -> tuple[int, ...]:
        return tuple(c.genus for c in self.components)


class _UnionFind:
    def __init__(self):
        self.parent: list[int] = []

    def make(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if rx < ry:
                self.parent[ry] = rx
            else:
                self.parent[rx] = ry


def topology(w: BordismWord) -> SurfaceTopology:
    """Connected components of the surface with their genus and boundary counts.

    Circle strands are threaded through the layers with union-find; each
    component's Euler characteristic is the sum over its pieces, and the genus
    comes from chi = 2 - 2g - b.
    """
    uf = _UnionFind()
    strands = [uf.make() for _ in range(w.in_circles)]
    inputs = list(strands)
    chi_of_piece: list[tuple[int, int]] = []  # (strand touching the piece, chi)
    for layer in w.layers:
        nxt: list[int] = []
        pos = 0
        for piece in layer.pieces:
            k_in, k_out = ARITY[piece]
            ins = strands[pos:pos + k_in]
            pos += k_in
            outs = [uf.make() for _ in range(k_out)]
            if piece == "swap":
                uf.union(ins[0], outs[1])
                uf.union(ins[1], outs[0])
            else:
                ends = ins + outs
                for e in ends[1:]:
                    uf.union(ends[0], e)
            anchor = (ins + outs)[0]
            if EULER[piece]:
                chi_of_piece.append((anchor, EULER[piece]))
            nxt.extend(outs)
        strands = nxt
    outputs = strands

    chi = defaultdict(int)
    b_in = defaultdict(int)
    b_out = defaultdict(int)
    roots = set()
    for x in range(len(uf.parent)):
        roots.add(uf.find(x))
    for anchor, c in chi_of_piece:
        chi[uf.find(anchor)] += c
    for s in inputs:
        b_in[uf.find(s)] += 1
    for s in outputs:
        b_out[uf.find(s)] += 1

    comps = []
    for r in sorted(roots):
        b = b_in[r] + b_out[r]
        twice_g = 2 - chi[r] - b
        if twice_g < 0 or twice_g % 2:
            raise TopologyError(f"component {r}: chi={chi[r]}, b={b} gives no genus")
        comps.append(Component(twice_g // 2, b_in[r], b_out[r]))
    return SurfaceTopology(tuple(comps))


# -- evaluation ---------------------------------------------------------------

def layer_matrix(layer: Layer, a: FrobeniusAlgebra) -> Tensor:
    """Kronecker product of the generator matrices of a layer."""
    out = Tensor((1, 1), (ONE,))
    for piece in layer.pieces:
        out = kron(out, generator_tensor(a, piece))
    return out


def evaluate_dense(w: BordismWord, a: FrobeniusAlgebra) -> Tensor:
    """Reference evaluation: multiply the full layer matrices together."""
    m = identity(a.dim ** w.in_circles)
    for layer in w.layers:
        m = matmul(layer_matrix(layer, a), m)
    return m


def _sparse_generators(a: FrobeniusAlgebra) -> dict[str, dict[tuple, list]]:
    """Per generator: input multi-index -> [(output multi-index, coefficient)]."""
    n = a.dim
    out = {}
    for piece, (k_in, k_out) in ARITY.items():
        mat = generator_tensor(a, piece)
        table: dict[tuple, list] = defaultdict(list)
        for (row, col), v in mat.nonzero.items():
            out_idx = tuple(_digits(row, n, k_out))
            in_idx = tuple(_digits(col, n, k_in))
            table[in_idx].append((out_idx, v))
        out[piece] = dict(table)
    return out


def _digits(x: int, base: int, width: int) -> list[int]:
    ds = []
    for _ in range(width):
        x, r = divmod(x, base)
        ds.append(r)
    return ds[::-1]


class Evaluator:
    """Evaluates words against one algebra, caching the generator tables."""

    def __init__(self, a: FrobeniusAlgebra):
        self.algebra = a
        self._gens = _sparse_generators(a)

    def _apply_layer(self, state: dict, layer: Layer) -> dict:
        # state: (strand indices, input index) -> coefficient
        for_piece_pos = 0
        cur = state
        for piece in layer.pieces:
            k_in, k_out = ARITY[piece]
            table = self._gens[piece]
            p = for_piece_pos
            nxt: dict = defaultdict(Fraction)
            for (idx, col), v in cur.items():
                hits = table.get(idx[p:p + k_in])
                if not hits:
                    continue
                head, tail = idx[:p], idx[p + k_in:]
                for out_idx, c in hits:
                    nxt[(head + out_idx + tail, col)] += v * c
            cur = {k: v for k, v in nxt.items() if v}
            for_piece_pos += k_out
        return cur

    def __call__(self, w: BordismWord) -> Tensor:
        n = self.algebra.dim
        n_in = w.in_circles
        state = {}
        for col in range(n ** n_in):
            state[(tuple(_digits(col, n, n_in)), col)] = ONE
        for layer in w.layers:
            state = self._apply_layer(state, layer)
        items = {}
        for (idx, col), v in state.items():
            row = 0
            for d in idx:
                row = row * n + d
            items[(row, col)] = v
        return Tensor.from_sparse((n ** w.out_circles, n ** n_in), items)

    def closed_value(self, w: BordismWord) -> Fraction:
        if not w.closed:
            raise ValueError("word is not closed")
        return self(w).value()


def evaluate(w: BordismWord, a: FrobeniusAlgebra) -> Tensor:
    """Matrix ``(n^out, n^in)`` of the theory on ``w``; closed words give 1 x 1.

    Equal to the product of the Kronecker layer matrices, but applied piece by
    piece to a sparse state so the full Kronecker products are never built.
    """
    return Evaluator(a)(w)


# -- random words -------------------------------------------------------------

def random_layer(rng: random.Random, n_in: int, max_strands: int) -> Layer:
    """Uniform-ish random layer consuming exactly ``n_in`` circles."""
    while True:
        pieces: list[str] = []
        remaining = n_in
        n_out = 0
        while True:
            choices = [p for p, (k, _) in ARITY.items() if k <= remaining]
            if remaining == 0:
                if pieces and rng.random() < 0.6:
                    break
                choices = ["cup"]
            piece = rng.choice(choices)
            pieces.append(piece)
            remaining -= ARITY[piece][0]
            n_out += ARITY[piece][1]
            if n_out > max_strands:
                break
        if n_out <= max_strands and remaining == 0:
            return Layer(tuple(pieces))


def random_word(rng: random.Random, n_in: int, n_layers: int, max_strands: int = 5) -> BordismWord:
    layers = []
    k = n_in
    for _ in range(n_layers):
        layer = random_layer(rng, k, max_strands)
        layers.append(layer)
        k = layer.n_out
    return BordismWord(tuple(layers), n_in, k)


def random_closed_word(rng: random.Random, max_layers: int = 12, max_strands: int = 5) -> BordismWord:
    """Random closed word: random layers, then a final layer of caps."""
    n_layers = rng.randint(2, max_layers)
    layers: list[Layer] = []
    k = 0
    for t in range(n_layers - 1):
        while True:
            layer = random_layer(rng, k, max_strands)
            if t < n_layers - 2 or layer.n_out > 0:
                break
        layers.append(layer)
        k = layer.n_out
    layers.append(Layer(("cap",) * k))
    return BordismWord(tuple(layers), 0, 0)


def genus_word(g: int) -> str:
    """The standard closed genus-``g`` word: a cup, ``g`` handles, a cap."""
    return "; ".join(["cup"] + ["copants; pants"] * g + ["cap"])


def insert_layers(w: BordismWord, at: int, extra: Sequence[Layer]) -> BordismWord:
    layers = w.layers[:at] + tuple(extra) + w.layers[at:]
    return BordismWord(layers, w.in_circles, w.out_circles)


def strands_before(w: BordismWord, at: int) -> int:
    if at == 0:
        return w.in_circles
    return w.layers[at - 1].n_out


def load_word(text: Optional[str] = None, path: Optional[str] = None) -> BordismWord:
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    if text is None:
        raise ValueError("no word given")
    # allow comments and line breaks in word files
    lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
    return parse_word(" ".join(lines))

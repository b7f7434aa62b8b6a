"""Oriented 1D theories from duality data.

A positive point is sent to ``V`` and a negative point to ``W``. The pairing
``ev: V (x) W -> k`` is stored as a ``(d, d')`` matrix and the copairing
``coev: k -> W (x) V`` as a ``(d', d)`` matrix.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence

from .exact import (
    ONE,
    ShapeError,
    Tensor,
    identity,
    invert,
    matmul,
    trace_axes,
)
from .reports import Report

SIGNS = ("+", "-")
SIDES = ("in", "out")


class IncompatibleTangle(ValueError):
    pass


@dataclass(frozen=True)
class DualityDatum:
    dim_v: int
    dim_w: int
    ev: Tensor
    coev: Tensor

    def check_shapes(self):
        if self.ev.shape != (self.dim_v, self.dim_w):
            raise ShapeError(f"ev has shape {self.ev.shape}, expected {(self.dim_v, self.dim_w)}")
        if self.coev.shape != (self.dim_w, self.dim_v):
            raise ShapeError(
                f"coev has shape {self.coev.shape}, expected {(self.dim_w, self.dim_v)}")

    def dim_of(self, sign: str) -> int:
        return self.dim_v if sign == "+" else self.dim_w

    def to_json(self) -> dict[str, Any]:
        return {"dim_v": self.dim_v, "dim_w": self.dim_w,
                "ev": self.ev.to_json(), "coev": self.coev.to_json()}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "DualityDatum":
        d = cls(int(data["dim_v"]), int(data["dim_w"]),
                Tensor.from_nested(data["ev"]), Tensor.from_nested(data["coev"]))
        d.check_shapes()
        return d


def canonical_datum(d: int) -> DualityDatum:
    """V = Q^d with W its dual basis."""
    return DualityDatum(d, d, identity(d), identity(d))


def datum_from_pairing(b: Tensor) -> DualityDatum:
    """ev = ``b``, coev = its inverse (so both zig-zags hold)."""
    return DualityDatum(b.shape[0], b.shape[1], b, invert(b))


def change_of_basis(datum: DualityDatum, p: Tensor, q: Optional[Tensor] = None) -> DualityDatum:
    """New bases ``e'_i = sum_a p[a][i] e_a`` of V and ``f'_b = sum_c q[c][b] f_c`` of W."""
    if q is None:
        q = identity(datum.dim_w)
    ev = matmul(matmul(p.T, datum.ev), q)
    coev = matmul(matmul(invert(q), datum.coev), invert(p).T)
    return DualityDatum(datum.dim_v, datum.dim_w, ev, coev)


def zigzag_composites(datum: DualityDatum) -> tuple[Tensor, Tensor]:
    """Matrices of (ev (x) id_V)(id_V (x) coev) on V and (id_W (x) ev)(coev (x) id_W) on W."""
    datum.check_shapes()
    # e_i -> sum_{a,j} coev[a][j] e_i f_a e_j -> sum ev[i][a] coev[a][j] e_j
    first = matmul(datum.ev, datum.coev).T
    # f_b -> sum coev[a][i] f_a e_i f_b -> sum coev[a][i] ev[i][b] f_a
    second = matmul(datum.coev, datum.ev)
    return first, second


def zigzag_check(datum: DualityDatum) -> Report:
    first, second = zigzag_composites(datum)
    if first != identity(datum.dim_v):
        return Report.fail("zigzag_V", (), f"composite on V is {first.to_json()}")
    if second != identity(datum.dim_w):
        return Report.fail("zigzag_W", (), f"composite on W is {second.to_json()}")
    return Report.ok()


def dim_invariant(datum: DualityDatum) -> Fraction:
    """ev composed with coev: the scalar value of the circle."""
    datum.check_shapes()
    return trace_axes(matmul(datum.ev, datum.coev), 0, 1).value()


# -- tangles ------------------------------------------------------------------

Point = tuple[str, int]  # ("in" | "out", position)


@dataclass(frozen=True)
class OrientedTangle:
    in_points: tuple[str, ...]
    out_points: tuple[str, ...]
    arcs: tuple[tuple[Point, Point], ...]
    circles: int = 0

    def sign(self, pt: Point) -> str:
        side, i = pt
        return (self.in_points if side == "in" else self.out_points)[i]

    def to_json(self) -> dict[str, Any]:
        return {
            "in": list(self.in_points),
            "out": list(self.out_points),
            "arcs": [[list(p), list(q)] for p, q in self.arcs],
            "circles": self.circles,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "OrientedTangle":
        arcs = tuple((tuple(p), tuple(q)) for p, q in data.get("arcs", []))
        arcs = tuple(((str(p[0]), int(p[1])), (str(q[0]), int(q[1]))) for p, q in arcs)
        return cls(tuple(data.get("in", [])), tuple(data.get("out", [])), arcs,
                   int(data.get("circles", 0)))


def _arc_kind(t: OrientedTangle, p: Point, q: Point) -> Optional[str]:
    sp, sq = t.sign(p), t.sign(q)
    if p[0] != q[0]:
        return "through" if sp == sq else None
    if sp == sq:
        return None
    return "cap" if p[0] == "in" else "cup"


def validate_tangle(t: OrientedTangle) -> Report:
    for s in t.in_points + t.out_points:
        if s not in SIGNS:
            return Report.fail("sign", (s,), f"boundary sign {s!r} is not '+' or '-'")
    if t.circles < 0:
        return Report.fail("circles", (t.circles,), "negative circle count")
    seen: set[Point] = set()
    for p, q in t.arcs:
        for pt in (p, q):
            side, i = pt
            pts = t.in_points if side == "in" else t.out_points if side == "out" else None
            if pts is None or not 0 <= i < len(pts):
                return Report.fail("endpoint", pt, f"no boundary point {pt}")
            if pt in seen:
                return Report.fail("matching", pt, f"point {pt} used twice")
            seen.add(pt)
        if _arc_kind(t, p, q) is None:
            return Report.fail("orientation", (p, q),
                               f"arc {p}-{q} joins {t.sign(p)} to {t.sign(q)}")
    all_pts = {("in", i) for i in range(len(t.in_points))} | \
              {("out", i) for i in range(len(t.out_points))}
    missing = sorted(all_pts - seen)
    if missing:
        return Report.fail("matching", missing[0], f"point {missing[0]} is not matched")
    return Report.ok()


def evaluate_tangle(t: OrientedTangle, datum: DualityDatum) -> Tensor:
    """Matrix ``(prod out dims, prod in dims)``, boundary points row-major in order.

    Through-arcs are identities, arcs between two incoming points are ``ev``,
    arcs between two outgoing points are ``coev``; each closed circle
    contributes the factor ``dim_invariant(datum)``.
    """
    report = validate_tangle(t)
    if not report:
        raise IncompatibleTangle(report.detail)
    datum.check_shapes()
    in_dims = [datum.dim_of(s) for s in t.in_points]
    out_dims = [datum.dim_of(s) for s in t.out_points]
    circle = dim_invariant(datum) ** t.circles

    # normalise every arc so the first endpoint is the "+" one where that matters
    factors = []
    for p, q in t.arcs:
        kind = _arc_kind(t, p, q)
        if kind == "through":
            if p[0] == "out":
                p, q = q, p
            factors.append(("through", p[1], q[1]))
        elif kind == "cap":
            if t.sign(p) == "-":
                p, q = q, p
            factors.append(("cap", p[1], q[1]))       # ev[+][-]
        else:
            if t.sign(p) == "-":
                p, q = q, p
            factors.append(("cup", p[1], q[1]))       # coev[-][+]

    # each arc fixes its endpoints independently, so the nonzero entries are
    # the products of one nonzero choice per arc; through-arcs have weight 1
    in_strides = _row_major_strides(in_dims)
    out_strides = _row_major_strides(out_dims)
    partial = [(0, 0, circle)] if circle else []
    shifts = [(0, 0)]
    for kind, a, b in factors:
        if kind == "through":
            shifts = [(c + i * in_strides[a], r + i * out_strides[b])
                      for c, r in shifts for i in range(in_dims[a])]
            continue
        if kind == "cap":
            opts = [(i * in_strides[a] + j * in_strides[b], 0, v)
                    for (i, j), v in datum.ev.nonzero.items()]
        else:
            opts = [(0, j * out_strides[b] + i * out_strides[a], v)
                    for (j, i), v in datum.coev.nonzero.items()]
        partial = [(c + c2, r + r2, v * w) for c, r, v in partial for c2, r2, w in opts]
    items = {}
    for col, row, v in partial:
        for c, r in shifts:
            items[(row + r, col + c)] = v
    n_in, n_out = _prod(in_dims), _prod(out_dims)
    return Tensor.from_sparse((n_out, n_in), items)


def _prod(dims: Sequence[int]) -> int:
    out = 1
    for d in dims:
        out *= d
    return out


def _row_major_strides(dims: Sequence[int]) -> list[int]:
    out = [1] * len(dims)
    for k in range(len(dims) - 2, -1, -1):
        out[k] = out[k + 1] * dims[k + 1]
    return out


def tangle_identity(signs: Sequence[str]) -> OrientedTangle:
    signs = tuple(signs)
    return OrientedTangle(signs, signs, tuple((("in", i), ("out", i)) for i in range(len(signs))))


def disjoint_union(t1: OrientedTangle, t2: OrientedTangle) -> OrientedTangle:
    a_in, a_out = len(t1.in_points), len(t1.out_points)

    def shift(pt):
        side, i = pt
        return (side, i + (a_in if side == "in" else a_out))

    arcs = t1.arcs + tuple((shift(p), shift(q)) for p, q in t2.arcs)
    return OrientedTangle(t1.in_points + t2.in_points, t1.out_points + t2.out_points,
                          arcs, t1.circles + t2.circles)


def compose_tangles(t1: OrientedTangle, t2: OrientedTangle) -> OrientedTangle:
    """``t1`` followed by ``t2``, gluing ``t1``'s outputs to ``t2``'s inputs."""
    if t1.out_points != t2.in_points:
        raise IncompatibleTangle(
            f"cannot glue outputs {t1.out_points} to inputs {t2.in_points}")
    # graph on ("a", pt) and ("b", pt); middle points identified
    partner: dict = {}
    for p, q in t1.arcs:
        partner[("a",) + p] = ("a",) + q
        partner[("a",) + q] = ("a",) + p
    for p, q in t2.arcs:
        partner[("b",) + p] = ("b",) + q
        partner[("b",) + q] = ("b",) + p

    def across(node):
        # a middle point seen from one side, viewed from the other
        tag, side, i = node
        if tag == "a" and side == "out":
            return ("b", "in", i)
        if tag == "b" and side == "in":
            return ("a", "out", i)
        return None

    def is_end(node):
        return across(node) is None

    visited = set()
    arcs = []
    ends = [("a", "in", i) for i in range(len(t1.in_points))] + \
           [("b", "out", i) for i in range(len(t2.out_points))]
    for start in ends:
        if start in visited:
            continue
        node = start
        visited.add(node)
        while True:
            node = partner[node]
            visited.add(node)
            if is_end(node):
                break
            node = across(node)
            visited.add(node)
        arcs.append(((start[1], start[2]), (node[1], node[2])))
    circles = t1.circles + t2.circles
    for i in range(len(t1.out_points)):
        node = ("a", "out", i)
        if node in visited:
            continue
        circles += 1
        while node not in visited:
            visited.add(node)
            other = partner[node]
            visited.add(other)
            node = across(other)
    return OrientedTangle(t1.in_points, t2.out_points, tuple(arcs), circles)


def zigzag_tangles(sign: str) -> tuple[OrientedTangle, OrientedTangle]:
    """A snake on one strand, split as (create a pair beside it, annihilate)."""
    other = "-" if sign == "+" else "+"
    make = OrientedTangle((sign,), (sign, other, sign),
                          ((("in", 0), ("out", 0)), (("out", 1), ("out", 2))))
    kill = OrientedTangle((sign, other, sign), (sign,),
                          ((("in", 0), ("in", 1)), (("in", 2), ("out", 0))))
    return make, kill


def insert_zigzag(t: OrientedTangle, side: str, index: int) -> OrientedTangle:
    """Splice a snake into the strand ending at boundary point ``(side, index)``."""
    points = t.out_points if side == "out" else t.in_points
    sign = points[index]
    make, kill = zigzag_tangles(sign)
    left = tangle_identity(points[:index])
    right = tangle_identity(points[index + 1:])
    up = disjoint_union(disjoint_union(left, make), right)
    down = disjoint_union(disjoint_union(left, kill), right)
    if side == "out":
        return compose_tangles(compose_tangles(t, up), down)
    return compose_tangles(up, compose_tangles(down, t))


def random_tangle(rng: random.Random, max_points: int = 4, max_circles: int = 2) -> OrientedTangle:
    """Random compatible tangle built from through-arcs, caps and cups."""
    ins: list[str] = []
    outs: list[str] = []
    arcs = []
    n_arcs = rng.randint(0, max_points)
    for _ in range(n_arcs):
        kind = rng.choice(["through", "cap", "cup"])
        s = rng.choice(SIGNS)
        other = "-" if s == "+" else "+"
        if kind == "through":
            ins.append(s)
            outs.append(s)
            arcs.append((("in", len(ins) - 1), ("out", len(outs) - 1)))
        elif kind == "cap":
            ins.extend([s, other])
            arcs.append((("in", len(ins) - 2), ("in", len(ins) - 1)))
        else:
            outs.extend([s, other])
            arcs.append((("out", len(outs) - 2), ("out", len(outs) - 1)))
    # shuffle point order on each side
    pin = list(range(len(ins)))
    pout = list(range(len(outs)))
    rng.shuffle(pin)
    rng.shuffle(pout)
    new_in = [None] * len(ins)
    new_out = [None] * len(outs)
    for old, new in enumerate(pin):
        new_in[new] = ins[old]
    for old, new in enumerate(pout):
        new_out[new] = outs[old]

    def move(pt):
        side, i = pt
        return (side, pin[i] if side == "in" else pout[i])

    arcs = tuple((move(p), move(q)) for p, q in arcs)
    return OrientedTangle(tuple(new_in), tuple(new_out), arcs, rng.randint(0, max_circles))


def random_passing_datum(rng: random.Random, d: int) -> DualityDatum:
    from .frobenius import random_invertible

    return change_of_basis(canonical_datum(d), random_invertible(rng, d),
                           random_invertible(rng, d))


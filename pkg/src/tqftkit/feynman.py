"""Closed Feynman diagrams evaluated from 1-dimensional singularity data.

Particles carry finite-dimensional spaces with perfect pairings between each
particle and its antiparticle; interactions carry vectors in the tensor
product of their legs. A closed diagram evaluates to the scalar obtained by
pairing off every edge.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

from .exact import (
    ONE,
    Tensor,
    contract,
    invert,
    rank,
    trace_axes,
)
from .reports import Report

HalfEdge = tuple[int, int]  # (vertex, leg)


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Interaction:
    legs: tuple[int, ...]
    vector: Tensor
    name: str = ""


@dataclass(frozen=True)
class SingularityDatum1D:
    particles: tuple[str, ...]
    bar: tuple[int, ...]
    dims: tuple[int, ...]
    pairings: dict = field(hash=False)  # representative particle -> (dims p, dims bar p) Tensor
    interactions: tuple[Interaction, ...] = ()

    def representative(self, p: int) -> int:
        return min(p, self.bar[p])

    def pairing(self, p: int) -> Tensor:
        """Matrix of the pairing ``V_p (x) V_{bar p} -> k``."""
        r = self.representative(p)
        b = self.pairings[r]
        return b if p == r else b.T

    def index(self, name: str) -> int:
        return self.particles.index(name)

    def to_json(self) -> dict[str, Any]:
        return {
            "particles": list(self.particles),
            "bar": [self.particles[b] for b in self.bar],
            "dims": list(self.dims),
            "pairings": {self.particles[p]: b.to_json() for p, b in sorted(self.pairings.items())},
            "interactions": [
                {
                    "name": x.name,
                    "legs": [self.particles[l] for l in x.legs],
                    "vector": {"shape": list(x.vector.shape),
                               "entries": [str(v) for v in x.vector.entries]},
                }
                for x in self.interactions
            ],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "SingularityDatum1D":
        particles = tuple(str(p) for p in data["particles"])

        def pid(x):
            return int(x) if isinstance(x, int) else particles.index(x)

        bar = tuple(pid(b) for b in data["bar"])
        pairings = {pid(k): Tensor.from_nested(v) for k, v in data.get("pairings", {}).items()}
        interactions = []
        for k, x in enumerate(data.get("interactions", [])):
            vec = x["vector"]
            if isinstance(vec, dict):
                vec = Tensor.from_flat(vec["shape"], vec["entries"])
            else:
                vec = Tensor.from_nested(vec)
            interactions.append(Interaction(tuple(pid(l) for l in x["legs"]), vec,
                                            x.get("name", f"x{k}")))
        return cls(particles, bar, tuple(int(d) for d in data["dims"]), pairings,
                   tuple(interactions))


@dataclass(frozen=True)
class FeynmanDiagram:
    vertices: tuple[int, ...]                     # interaction index per vertex
    edges: tuple[tuple[HalfEdge, HalfEdge], ...]  # first end carries p, second bar p
    loops: tuple[int, ...] = ()                   # particle label of each free circle

    def to_json(self, datum: Optional[SingularityDatum1D] = None) -> dict[str, Any]:
        loops = list(self.loops) if datum is None else [datum.particles[p] for p in self.loops]
        return {
            "vertices": list(self.vertices),
            "edges": [[list(a), list(b)] for a, b in self.edges],
            "loops": loops,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any], datum: Optional[SingularityDatum1D] = None) -> "FeynmanDiagram":
        def xid(x):
            if isinstance(x, int) or datum is None:
                return int(x)
            return [i.name for i in datum.interactions].index(x)

        def pid(x):
            if isinstance(x, int) or datum is None:
                return int(x)
            return datum.index(x)

        edges = tuple(((int(a[0]), int(a[1])), (int(b[0]), int(b[1])))
                      for a, b in data.get("edges", []))
        return cls(tuple(xid(v) for v in data.get("vertices", [])), edges,
                   tuple(pid(p) for p in data.get("loops", [])))


def _leg_label(d: SingularityDatum1D, g: FeynmanDiagram, h: HalfEdge) -> int:
    v, leg = h
    return d.interactions[g.vertices[v]].legs[leg]


# -- validation -----------------------------------------------------------------

def validate_datum(d: SingularityDatum1D) -> Report:
    n = len(d.particles)
    if len(d.bar) != n or len(d.dims) != n:
        return Report.fail("shape", (), "particles, bar and dims must have equal length")
    for p in range(n):
        if not 0 <= d.bar[p] < n:
            return Report.fail("involution", (p,), f"bar({p}) out of range")
        if d.bar[d.bar[p]] != p:
            return Report.fail("involution", (p,), f"bar(bar({d.particles[p]})) != {d.particles[p]}")
        if d.dims[p] <= 0 or d.dims[p] != d.dims[d.bar[p]]:
            return Report.fail("dims", (p,), f"dims of {d.particles[p]} and its antiparticle differ")
    for p in range(n):
        r = d.representative(p)
        if r != p:
            continue
        b = d.pairings.get(r)
        if b is None:
            return Report.fail("pairing", (p,), f"no pairing for {d.particles[p]}")
        if b.shape != (d.dims[p], d.dims[d.bar[p]]):
            return Report.fail("shape", (p,), f"pairing for {d.particles[p]} has shape {b.shape}")
        if rank(b) != d.dims[p]:
            return Report.fail("rank", (p,), f"pairing for {d.particles[p]} is not perfect")
        if d.bar[p] == p and b != b.T:
            return Report.fail("symmetry", (p,),
                               f"{d.particles[p]} is its own antiparticle but its pairing is not symmetric")
    for k, x in enumerate(d.interactions):
        if any(not 0 <= l < n for l in x.legs):
            return Report.fail("interaction", (k,), "leg label out of range")
        want = tuple(d.dims[l] for l in x.legs)
        if x.vector.shape != want:
            return Report.fail("interaction", (k,),
                               f"vector of {x.name or k} has shape {x.vector.shape}, expected {want}")
    return Report.ok()


def validate_diagram(d: SingularityDatum1D, g: FeynmanDiagram) -> Report:
    seen: set[HalfEdge] = set()
    for v, x in enumerate(g.vertices):
        if not 0 <= x < len(d.interactions):
            return Report.fail("vertex", (v,), f"vertex {v} names unknown interaction {x}")
    for e, (a, b) in enumerate(g.edges):
        for h in (a, b):
            v, leg = h
            if not 0 <= v < len(g.vertices) or not 0 <= leg < len(d.interactions[g.vertices[v]].legs):
                return Report.fail("half-edge", (e,), f"edge {e} uses nonexistent half-edge {h}")
            if h in seen:
                return Report.fail("matching", (e,), f"half-edge {h} used twice")
            seen.add(h)
        pa, pb = _leg_label(d, g, a), _leg_label(d, g, b)
        if d.bar[pa] != pb:
            return Report.fail("label", (e,),
                               f"edge {e} joins {d.particles[pa]} to {d.particles[pb]}")
    for v, x in enumerate(g.vertices):
        for leg in range(len(d.interactions[x].legs)):
            if (v, leg) not in seen:
                return Report.fail("matching", (v, leg), f"half-edge {(v, leg)} is unmatched")
    for p in g.loops:
        if not 0 <= p < len(d.particles):
            return Report.fail("loop", (p,), "loop label out of range")
    return Report.ok()


# -- planning and contraction ---------------------------------------------------

def components(g: FeynmanDiagram) -> list[list[int]]:
    """Edge indices grouped by connected component, ordered by lowest vertex."""
    parent = list(range(len(g.vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, _), (b, _) in g.edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for e, ((a, _), _) in enumerate(g.edges):
        groups.setdefault(find(a), []).append(e)
    return [groups[r] for r in sorted(groups)]


def contraction_plan(d: SingularityDatum1D, g: FeynmanDiagram) -> list[int]:
    """Greedy edge order: smallest intermediate tensor first, ties to the lowest edge index.

    Components are planned separately and concatenated in order of their
    lowest vertex.
    """
    plan: list[int] = []
    for comp in components(g):
        # node -> set of open half-edges; sizes are products of leg dims
        owner = {}
        open_legs: dict[int, set] = {}
        for v, x in enumerate(g.vertices):
            open_legs[v] = {(v, l) for l in range(len(d.interactions[x].legs))}
            for l in range(len(d.interactions[x].legs)):
                owner[(v, l)] = v
        dim = {h: d.dims[_leg_label(d, g, h)] for h in owner}

        def size(legs):
            out = 1
            for h in legs:
                out *= dim[h]
            return out

        remaining = sorted(comp)
        next_node = len(g.vertices)
        while remaining:
            best = None
            for e in remaining:
                a, b = g.edges[e]
                na, nb = owner[a], owner[b]
                if na == nb:
                    legs = open_legs[na] - {a, b}
                else:
                    legs = (open_legs[na] | open_legs[nb]) - {a, b}
                cost = size(legs)
                if best is None or cost < best[0]:
                    best = (cost, e, legs, na, nb)
            _, e, legs, na, nb = best
            plan.append(e)
            remaining.remove(e)
            merged = next_node
            next_node += 1
            open_legs.pop(na, None)
            open_legs.pop(nb, None)
            open_legs[merged] = legs
            for h in legs:
                owner[h] = merged
    return plan


def _loop_value(d: SingularityDatum1D, p: int) -> Fraction:
    b = d.pairing(p)
    # pairing composed with its inverse copairing, traced: the circle labelled p
    return contract(b, invert(b), [(0, 1), (1, 0)]).value()


def evaluate_diagram(d: SingularityDatum1D, g: FeynmanDiagram,
                     plan: Optional[Sequence[int]] = None, check: bool = True) -> Fraction:
    """Pair off every edge of the diagram; ``plan`` defaults to :func:`contraction_plan`."""
    if check:
        for report in (validate_datum(d), validate_diagram(d, g)):
            if not report:
                raise DiagramError(f"{report.axiom}: {report.detail}")
    if plan is None:
        plan = contraction_plan(d, g)
    if sorted(plan) != list(range(len(g.edges))):
        raise DiagramError("plan must list every edge exactly once")

    nodes: dict[int, tuple[Tensor, list]] = {}
    owner: dict[HalfEdge, int] = {}
    for v, x in enumerate(g.vertices):
        legs = [(v, l) for l in range(len(d.interactions[x].legs))]
        nodes[v] = (d.interactions[x].vector, legs)
        for h in legs:
            owner[h] = v

    # absorb each pairing into the first endpoint; the edge then becomes a plain index match
    for a, b in g.edges:
        n = owner[a]
        t, labels = nodes[n]
        pos = labels.index(a)
        t = contract(t, d.pairing(_leg_label(d, g, a)), [(pos, 0)])
        labels = labels[:pos] + labels[pos + 1:] + [a]
        nodes[n] = (t, labels)

    next_node = len(g.vertices)
    for e in plan:
        a, b = g.edges[e]
        na, nb = owner[a], owner[b]
        ta, la = nodes.pop(na)
        if na == nb:
            i, j = la.index(a), la.index(b)
            t = trace_axes(ta, i, j)
            labels = [h for h in la if h not in (a, b)]
        else:
            tb, lb = nodes.pop(nb)
            i, j = la.index(a), lb.index(b)
            t = contract(ta, tb, [(i, j)])
            labels = [h for h in la if h != a] + [h for h in lb if h != b]
        nodes[next_node] = (t, labels)
        for h in labels:
            owner[h] = next_node
        next_node += 1

    value = ONE
    for t, labels in nodes.values():
        if labels:
            raise DiagramError("open legs left after contraction")
        value *= t.value()
    for p in g.loops:
        value *= _loop_value(d, p)
    return value


def naive_plan(g: FeynmanDiagram) -> list[int]:
    return list(range(len(g.edges)))


# -- constructions ----------------------------------------------------------------

def disjoint_union(g1: FeynmanDiagram, g2: FeynmanDiagram) -> FeynmanDiagram:
    k = len(g1.vertices)
    edges = g1.edges + tuple(((a + k, la), (b + k, lb)) for (a, la), (b, lb) in g2.edges)
    return FeynmanDiagram(g1.vertices + g2.vertices, edges, g1.loops + g2.loops)


def relabel(g: FeynmanDiagram, vertex_perm: Sequence[int], edge_perm: Sequence[int],
            flip: Sequence[bool] = ()) -> FeynmanDiagram:
    """Vertex ``v`` becomes ``vertex_perm[v]``; new edge ``k`` is old edge ``edge_perm[k]``."""
    verts = [0] * len(g.vertices)
    for old, new in enumerate(vertex_perm):
        verts[new] = g.vertices[old]
    edges = []
    for k, old in enumerate(edge_perm):
        (a, la), (b, lb) = g.edges[old]
        e = ((vertex_perm[a], la), (vertex_perm[b], lb))
        if flip and flip[k]:
            e = (e[1], e[0])
        edges.append(e)
    return FeynmanDiagram(tuple(verts), tuple(edges), g.loops)


def _random_full_rank(rng: random.Random, n: int, symmetric: bool) -> Tensor:
    while True:
        vals = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        if symmetric:
            vals = [[vals[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]
        m = Tensor.from_nested(vals)
        if rank(m) == n:
            return m


def random_particles(rng: random.Random, max_dim: int = 3):
    """Particle names, bar map, dims and pairings: a mix of self-dual and paired particles."""
    names: list[str] = []
    bar: list[int] = []
    dims: list[int] = []
    pairings: dict[int, Tensor] = {}
    for k in range(rng.randint(1, 3)):
        dim = rng.randint(1, max_dim)
        if rng.random() < 0.5:
            p = len(names)
            names.append(f"s{k}")
            bar.append(p)
            dims.append(dim)
            pairings[p] = _random_full_rank(rng, dim, True)
        else:
            p = len(names)
            names.extend([f"q{k}", f"q{k}bar"])
            bar.extend([p + 1, p])
            dims.extend([dim, dim])
            pairings[p] = _random_full_rank(rng, dim, False)
    return tuple(names), tuple(bar), tuple(dims), pairings


def random_instance(rng: random.Random, n_diagrams: int = 1, max_vertices: int = 6,
                    max_dim: int = 3, max_legs: int = 4, max_edges: int = 7):
    """A validated datum and ``n_diagrams`` closed diagrams over it."""
    names, bar, dims, pairings = random_particles(rng, max_dim)
    interactions: list[Interaction] = []
    diagrams = []
    for _ in range(n_diagrams):
        k = rng.randint(0, max_vertices)
        legs: list[list[int]] = [[] for _ in range(k)]
        edges = []
        if k:
            for _ in range(rng.randint(0, max_edges)):
                p = rng.randrange(len(names))
                u, v = rng.randrange(k), rng.randrange(k)
                need = 2 if u == v else 1
                if len(legs[u]) + need > max_legs or (u != v and len(legs[v]) >= max_legs):
                    continue
                legs[u].append(p)
                a = (u, len(legs[u]) - 1)
                legs[v].append(bar[p])
                b = (v, len(legs[v]) - 1)
                edges.append((a, b))
        # shuffle leg order at each vertex so legs of one edge are not always adjacent
        perms = []
        for v in range(k):
            perm = list(range(len(legs[v])))
            rng.shuffle(perm)
            perms.append(perm)
            new = [0] * len(legs[v])
            for old, nw in enumerate(perm):
                new[nw] = legs[v][old]
            legs[v] = new
        edges = [((a, perms[a][la]), (b, perms[b][lb])) for (a, la), (b, lb) in edges]
        verts = []
        for v in range(k):
            shape = tuple(dims[p] for p in legs[v])
            size = 1
            for s in shape:
                size *= s
            vec = Tensor.from_flat(shape, [rng.randint(-2, 2) for _ in range(size)])
            interactions.append(Interaction(tuple(legs[v]), vec, f"x{len(interactions)}"))
            verts.append(len(interactions) - 1)
        loops = tuple(rng.randrange(len(names)) for _ in range(rng.randint(0, 1)))
        diagrams.append(FeynmanDiagram(tuple(verts), tuple(edges), loops))
    datum = SingularityDatum1D(names, bar, dims, pairings, tuple(interactions))
    return datum, diagrams

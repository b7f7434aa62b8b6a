"""Finite categories given by composition tables.

Composition is written in diagrammatic order: ``comp[(f, g)]`` is "f then g",
defined when ``tgt(f) == src(g)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from ..reports import Report


@dataclass(frozen=True)
class FinCategory:
    n_objects: int
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    identity: tuple[int, ...]
    comp: dict  # (f, g) -> h
    name: str = field(default="", compare=False)

    @property
    def n_morphisms(self) -> int:
        return len(self.src)

    def hom(self, x: int, y: int) -> list[int]:
        return [f for f in range(self.n_morphisms) if self.src[f] == x and self.tgt[f] == y]

    def compose(self, *fs: int) -> int:
        """``f1`` then ``f2`` then ...; identity on nothing is not defined."""
        out = fs[0]
        for f in fs[1:]:
            out = self.comp[(out, f)]
        return out

    def composable_pairs(self):
        for f in range(self.n_morphisms):
            for g in range(self.n_morphisms):
                if self.tgt[f] == self.src[g]:
                    yield f, g

    def to_json(self) -> dict[str, Any]:
        return {
            "objects": self.n_objects,
            "morphisms": [{"src": s, "tgt": t} for s, t in zip(self.src, self.tgt)],
            "identities": list(self.identity),
            "composition": [[f, g, h] for (f, g), h in sorted(self.comp.items())],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "FinCategory":
        morphisms = data["morphisms"]
        comp = {}
        for entry in data["composition"]:
            f, g, h = (int(x) for x in entry)
            comp[(f, g)] = h
        return cls(
            int(data["objects"]),
            tuple(int(m["src"]) for m in morphisms),
            tuple(int(m["tgt"]) for m in morphisms),
            tuple(int(i) for i in data["identities"]),
            comp,
            data.get("name", ""),
        )


def validate_category(c: FinCategory) -> Report:
    n_mor = c.n_morphisms
    if len(c.tgt) != n_mor or len(c.identity) != c.n_objects:
        return Report.fail("shape", (), "src/tgt/identity lengths disagree")
    for f in range(n_mor):
        if not (0 <= c.src[f] < c.n_objects and 0 <= c.tgt[f] < c.n_objects):
            return Report.fail("shape", (f,), f"morphism {f} has an endpoint out of range")
    for x, i in enumerate(c.identity):
        if not (0 <= i < n_mor) or c.src[i] != x or c.tgt[i] != x:
            return Report.fail("identity", (x,), f"identity of object {x} is not an endomorphism")
    for f, g in c.composable_pairs():
        h = c.comp.get((f, g))
        if h is None:
            return Report.fail("totality", (f, g), f"composite of {f} then {g} is missing")
        if not (0 <= h < n_mor) or c.src[h] != c.src[f] or c.tgt[h] != c.tgt[g]:
            return Report.fail("typing", (f, g), f"composite {h} has the wrong endpoints")
    for key in c.comp:
        f, g = key
        if not (0 <= f < n_mor and 0 <= g < n_mor) or c.tgt[f] != c.src[g]:
            return Report.fail("typing", key, f"composite defined on non-composable pair {key}")
    for f in range(n_mor):
        if c.comp[(c.identity[c.src[f]], f)] != f or c.comp[(f, c.identity[c.tgt[f]])] != f:
            return Report.fail("unit", (f,), f"identities do not act trivially on {f}")
    for f, g in c.composable_pairs():
        fg = c.comp[(f, g)]
        for h in range(n_mor):
            if c.src[h] != c.tgt[g]:
                continue
            if c.comp[(fg, h)] != c.comp[(f, c.comp[(g, h)])]:
                return Report.fail("associativity", (f, g, h),
                                   f"({f} {g}) {h} differs from {f} ({g} {h})")
    return Report.ok()


# -- constructions ------------------------------------------------------------

def from_monoid(table: Sequence[Sequence[int]], unit: int = 0, name: str = "") -> FinCategory:
    """One-object category; ``comp(f, g) = table[g][f]`` so that "f then g" is ``g*f``.

    For commutative tables the convention does not matter.
    """
    n = len(table)
    comp = {(f, g): table[g][f] for f in range(n) for g in range(n)}
    return FinCategory(1, (0,) * n, (0,) * n, (unit,), comp, name)


def from_preorder(n: int, leq, name: str = "") -> FinCategory:
    """Thin category on ``0..n-1`` with a morphism ``x -> y`` iff ``leq(x, y)``."""
    pairs = [(x, y) for x in range(n) for y in range(n) if leq(x, y)]
    index = {p: i for i, p in enumerate(pairs)}
    src = tuple(p[0] for p in pairs)
    tgt = tuple(p[1] for p in pairs)
    ident = tuple(index[(x, x)] for x in range(n))
    comp = {}
    for (x, y), f in index.items():
        for (y2, z), g in index.items():
            if y == y2:
                comp[(f, g)] = index[(x, z)]
    return FinCategory(n, src, tgt, ident, comp, name)


def linear_order(n: int) -> FinCategory:
    """The poset [n] = {0 < 1 < ... < n}."""
    return from_preorder(n + 1, lambda x, y: x <= y, f"[{n}]")


def terminal() -> FinCategory:
    return from_preorder(1, lambda x, y: True, "terminal")


def arrow() -> FinCategory:
    c = linear_order(1)
    return FinCategory(c.n_objects, c.src, c.tgt, c.identity, c.comp, "arrow")


def discrete(n: int) -> FinCategory:
    return from_preorder(n, lambda x, y: x == y, f"discrete({n})")


def codiscrete(n: int) -> FinCategory:
    """Every pair of objects uniquely isomorphic."""
    return from_preorder(n, lambda x, y: True, f"codiscrete({n})")


def cyclic_group(n: int) -> FinCategory:
    return from_monoid([[(i + j) % n for j in range(n)] for i in range(n)], 0, f"Z/{n}")


def idempotent_monoid() -> FinCategory:
    """{e, a} with a*a = a."""
    return from_monoid([[0, 1], [1, 1]], 0, "{e,a}")


def parallel_pair() -> FinCategory:
    """Two objects with two parallel arrows 0 => 1."""
    # morphisms: id0, id1, f, g
    comp = {(0, 0): 0, (1, 1): 1, (0, 2): 2, (0, 3): 3, (2, 1): 2, (3, 1): 3}
    return FinCategory(2, (0, 1, 0, 0), (0, 1, 1, 1), (0, 1), comp, "parallel")


def split_idempotent() -> FinCategory:
    """Objects 0, 1 with r: 0 -> 1 and s: 1 -> 0 where s then r is id_1.

    Morphisms: 0 = id_0, 1 = id_1, 2 = r, 3 = s, 4 = r then s (an idempotent on 0).
    """
    comp = {
        (0, 0): 0, (0, 2): 2, (0, 4): 4,
        (1, 1): 1, (1, 3): 3,
        (2, 1): 2, (2, 3): 4,
        (3, 0): 3, (3, 2): 1, (3, 4): 3,
        (4, 0): 4, (4, 2): 2, (4, 4): 4,
    }
    return FinCategory(2, (0, 1, 0, 1, 0), (0, 1, 1, 0, 0), (0, 1), comp, "split-idempotent")


def span() -> FinCategory:
    """0 <- 1 -> 2."""
    rel = {(1, 0), (1, 2)}
    return from_preorder(3, lambda x, y: x == y or (x, y) in rel, "span")


def category_corpus() -> list[FinCategory]:
    return [
        terminal(),
        discrete(2),
        arrow(),
        linear_order(2),
        linear_order(3),
        idempotent_monoid(),
        cyclic_group(2),
        cyclic_group(3),
        parallel_pair(),
        codiscrete(2),
        span(),
        split_idempotent(),
    ]


# -- isomorphism ---------------------------------------------------------------

def find_isomorphism(c: FinCategory, d: FinCategory) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Backtracking search for an isomorphism; returns (object map, morphism map)."""
    if c.n_objects != d.n_objects or c.n_morphisms != d.n_morphisms:
        return None
    n = c.n_objects
    for obj_map in itertools.permutations(range(n)):
        # hom-set sizes must agree
        if any(len(c.hom(x, y)) != len(d.hom(obj_map[x], obj_map[y]))
               for x in range(n) for y in range(n)):
            continue
        mor_map: dict[int, int] = {}
        for x in range(n):
            mor_map[c.identity[x]] = d.identity[obj_map[x]]
        if len(set(mor_map.values())) != len(mor_map):
            continue
        order = [f for f in range(c.n_morphisms) if f not in mor_map]
        result = _extend(c, d, obj_map, mor_map, order, 0)
        if result is not None:
            return tuple(obj_map), tuple(result[f] for f in range(c.n_morphisms))
    return None


def _consistent(c: FinCategory, d: FinCategory, mor_map: dict[int, int]) -> bool:
    for (f, g), h in c.comp.items():
        if f in mor_map and g in mor_map:
            if h in mor_map and d.comp[(mor_map[f], mor_map[g])] != mor_map[h]:
                return False
    return True


def _extend(c, d, obj_map, mor_map, order, k):
    if k == len(order):
        if _consistent(c, d, mor_map):
            return dict(mor_map)
        return None
    f = order[k]
    used = set(mor_map.values())
    for cand in d.hom(obj_map[c.src[f]], obj_map[c.tgt[f]]):
        if cand in used:
            continue
        mor_map[f] = cand
        if _consistent(c, d, mor_map):
            out = _extend(c, d, obj_map, mor_map, order, k + 1)
            if out is not None:
                return out
        del mor_map[f]
    return None


def is_isomorphic(c: FinCategory, d: FinCategory) -> bool:
    return find_isomorphism(c, d) is not None

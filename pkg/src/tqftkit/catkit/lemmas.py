"""Finite checks of two small algebraic lemmas.

* In a monoid, an element with a left inverse and a right inverse has them equal.
* Two unital operations satisfying the interchange law coincide and are commutative.

Operations are tables ``op[x][y]`` on ``range(n)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from ..reports import Report

Table = Sequence[Sequence[int]]


class NotAMonoid(ValueError):
    pass


class NotUnital(ValueError):
    pass


class NotInterchanging(ValueError):
    def __init__(self, witness):
        super().__init__(f"interchange law fails at {witness}")
        self.witness = witness


def find_unit(op: Table) -> Optional[int]:
    n = len(op)
    for e in range(n):
        if all(op[e][x] == x and op[x][e] == x for x in range(n)):
            return e
    return None


def is_associative(op: Table) -> bool:
    n = len(op)
    return all(op[op[a][b]][c] == op[a][op[b][c]]
               for a in range(n) for b in range(n) for c in range(n))


@dataclass(frozen=True)
class InverseReport:
    unit: int
    witnesses: tuple[tuple[int, int, int], ...]  # (f, g, g') with g f = e = f g'
    violations: tuple[tuple[int, int, int], ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def monoid_onesided_inverse_check(op: Table) -> InverseReport:
    """List every ``(f, g, g')`` with ``g f = e = f g'`` and flag those with ``g != g'``."""
    n = len(op)
    if any(len(row) != n for row in op) or any(not 0 <= v < n for row in op for v in row):
        raise NotAMonoid("table is not a binary operation on range(n)")
    e = find_unit(op)
    if e is None:
        raise NotAMonoid("no two-sided unit")
    if not is_associative(op):
        raise NotAMonoid("not associative")
    witnesses = []
    violations = []
    for f in range(n):
        lefts = [g for g in range(n) if op[g][f] == e]
        rights = [g for g in range(n) if op[f][g] == e]
        for g in lefts:
            for g2 in rights:
                witnesses.append((f, g, g2))
                if g != g2:
                    violations.append((f, g, g2))
    return InverseReport(e, tuple(witnesses), tuple(violations))


def all_tables(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    for flat in itertools.product(range(n), repeat=n * n):
        yield tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))


def all_monoids(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every associative unital table on ``range(n)`` (not up to isomorphism)."""
    for t in all_tables(n):
        if find_unit(t) is not None and is_associative(t):
            yield t


def all_unital_tables(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every table with a two-sided unit; the free entries are enumerated per unit."""
    seen = set()
    for e in range(n):
        others = [x for x in range(n) if x != e]
        cells = [(a, b) for a in others for b in others]
        for values in itertools.product(range(n), repeat=len(cells)):
            t = [[0] * n for _ in range(n)]
            for x in range(n):
                t[e][x] = x
                t[x][e] = x
            for (a, b), v in zip(cells, values):
                t[a][b] = v
            tt = tuple(tuple(r) for r in t)
            if tt not in seen:
                seen.add(tt)
                yield tt


def interchange_witness(m1: Table, m2: Table) -> Optional[tuple[int, int, int, int]]:
    n = len(m1)
    for a, b, c, d in itertools.product(range(n), repeat=4):
        if m2[m1[a][b]][m1[c][d]] != m1[m2[a][c]][m2[b][d]]:
            return (a, b, c, d)
    return None


def eckmann_hilton_check(n: int, m1: Table, m2: Table) -> Report:
    """Given unital ``m1``, ``m2`` obeying interchange, confirm ``e1 = e2``, ``m1 = m2`` and commutativity.

    Raises :class:`NotUnital` or :class:`NotInterchanging` when the hypotheses fail.
    """
    for name, op in (("m1", m1), ("m2", m2)):
        if len(op) != n or any(len(r) != n for r in op):
            raise ValueError(f"{name} is not an operation on a set of size {n}")
    e1, e2 = find_unit(m1), find_unit(m2)
    if e1 is None:
        raise NotUnital("m1 has no unit")
    if e2 is None:
        raise NotUnital("m2 has no unit")
    w = interchange_witness(m1, m2)
    if w is not None:
        raise NotInterchanging(w)
    if e1 != e2:
        return Report.fail("units", (e1, e2), "units differ")
    for a in range(n):
        for b in range(n):
            if m1[a][b] != m2[a][b]:
                return Report.fail("equal", (a, b), "operations differ")
            if m1[a][b] != m1[b][a]:
                return Report.fail("commutative", (a, b), "operation is not commutative")
    return Report.ok()


def left_projection(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(a for _ in range(n)) for a in range(n))


def cyclic_table(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple((a + b) % n for b in range(n)) for a in range(n))

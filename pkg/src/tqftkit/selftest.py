"""Built-in cross-checks run by ``tqftkit selftest``.

Every check is seeded, so two runs with the same seed print the same log.
"""
from __future__ import annotations

import random
from typing import Callable, Iterator

from . import bordism2d, duality1d, feynman, frobenius, hochschild
from .catkit import simplicial
from .catkit.category import category_corpus, is_isomorphic
from .reports import Report

Check = tuple[str, Callable[[int], Report]]


def _surfaces(seed: int) -> Report:
    rng = random.Random(seed)
    for a in frobenius.standard_algebras() + [frobenius.random_frobenius(rng)]:
        if frobenius.surface_invariant(a, 0) != a.tr(a.unit):
            return Report.fail("sphere", (a.name,), f"Z(S^2) != tr(1) for {a.name}")
        if frobenius.surface_invariant(a, 1) != a.dim:
            return Report.fail("torus", (a.name,), f"Z(T^2) != dim for {a.name}")
    return Report.ok()


def _bordisms(seed: int, n_words: int = 60) -> Report:
    rng = random.Random(seed)
    algebras = frobenius.standard_algebras()
    evaluators = [bordism2d.Evaluator(a) for a in algebras]
    for k in range(n_words):
        w = bordism2d.random_closed_word(rng)
        comps = bordism2d.topology(w).components
        for a, ev in zip(algebras, evaluators):
            expected = 1
            for c in comps:
                expected *= frobenius.surface_invariant(a, c.genus)
            if ev.closed_value(w) != expected:
                return Report.fail("topology/algebra agreement", (k, a.name), str(w))
    return Report.ok()


def _zigzag(seed: int) -> Report:
    rng = random.Random(seed)
    for d in range(1, 5):
        datum = duality1d.canonical_datum(d)
        r = duality1d.zigzag_check(datum)
        if not r:
            return r
        if duality1d.dim_invariant(duality1d.random_passing_datum(rng, d)) != d:
            return Report.fail("dimension", (d,), "dim != d for a passing datum")
    for k in range(40):
        t = duality1d.random_tangle(rng)
        datum = duality1d.random_passing_datum(rng, rng.randint(1, 3))
        value = duality1d.evaluate_tangle(t, datum)
        for side, points in (("in", t.in_points), ("out", t.out_points)):
            for j in range(len(points)):
                if duality1d.evaluate_tangle(duality1d.insert_zigzag(t, side, j), datum) != value:
                    return Report.fail("zig-zag insertion", (k, side, j))
    return Report.ok()


def _plans(seed: int, n_diagrams: int = 40) -> Report:
    rng = random.Random(seed)
    datum, diagrams = feynman.random_instance(rng, n_diagrams)
    for k, g in enumerate(diagrams):
        greedy = feynman.evaluate_diagram(datum, g)
        naive = feynman.evaluate_diagram(datum, g, plan=feynman.naive_plan(g))
        if greedy != naive:
            return Report.fail("plan-independence", (k,), f"{greedy} != {naive}")
    return Report.ok()


def _chains(seed: int) -> Report:
    for a in hochschild.standard_assoc_algebras():
        r = hochschild.chain_identities(a, 3)
        if not r:
            return Report.fail(r.axiom, (a.name,) + r.witness, r.detail)
    return Report.ok()


def _segal(seed: int) -> Report:
    for c in category_corpus():
        s = simplicial.nerve(c, 3)
        r = simplicial.segal_bijection_check(s)
        if not r:
            return Report.fail("segal", (c.name,) + r.witness, r.detail)
        if not is_isomorphic(simplicial.category_from_segal(s), c):
            return Report.fail("segal round trip", (c.name,))
    if simplicial.segal_bijection_check(simplicial.no_filler_example()):
        return Report.fail("segal", ("no filler",), "a non-nerve passed")
    return Report.ok()


CHECKS: tuple[Check, ...] = (
    ("sphere/torus", _surfaces),
    ("topology/algebra agreement", _bordisms),
    ("zig-zag", _zigzag),
    ("plan-independence", _plans),
    ("chain identities", _chains),
    ("segal", _segal),
)


def run(seed: int = 0) -> Iterator[tuple[str, Report]]:
    """Yield ``(property, report)`` per check. A failing chain check is named by its axiom."""
    for name, fn in CHECKS:
        r = fn(seed)
        yield (r.axiom if not r and name == "chain identities" else name), r

"""Functors, adjunction data and the triangle identities between finite categories."""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator

from ..reports import Report
from .category import FinCategory


@dataclass(frozen=True)
class Functor:
    source: FinCategory
    target: FinCategory
    on_objects: tuple[int, ...]
    on_morphisms: tuple[int, ...]

    def __call__(self, f: int) -> int:
        return self.on_morphisms[f]

    def obj(self, x: int) -> int:
        return self.on_objects[x]


def identity_functor(c: FinCategory) -> Functor:
    return Functor(c, c, tuple(range(c.n_objects)), tuple(range(c.n_morphisms)))


def check_functor(F: Functor) -> Report:
    c, d = F.source, F.target
    for f in range(c.n_morphisms):
        g = F(f)
        if d.src[g] != F.obj(c.src[f]) or d.tgt[g] != F.obj(c.tgt[f]):
            return Report.fail("functor typing", (f,), f"F({f}) has the wrong endpoints")
    for x in range(c.n_objects):
        if F(c.identity[x]) != d.identity[F.obj(x)]:
            return Report.fail("functor identity", (x,), f"F does not preserve id_{x}")
    for (f, g), h in c.comp.items():
        if d.comp[(F(f), F(g))] != F(h):
            return Report.fail("functor composition", (f, g), "F does not preserve composition")
    return Report.ok()


@dataclass(frozen=True)
class AdjunctionDatum:
    """``F: C -> D`` left adjoint to ``G: D -> C`` with unit ``u`` and counit ``v``.

    ``unit[c]`` is a morphism ``c -> G F c`` of C and ``counit[d]`` a morphism
    ``F G d -> d`` of D.
    """

    C: FinCategory
    D: FinCategory
    F: Functor
    G: Functor
    unit: tuple[int, ...]
    counit: tuple[int, ...]


def check_adjunction_datum(adj: AdjunctionDatum) -> Report:
    """Functoriality of F and G, typing and naturality of u and v."""
    C, D, F, G = adj.C, adj.D, adj.F, adj.G
    for name, fun in (("F", F), ("G", G)):
        r = check_functor(fun)
        if not r:
            return Report.fail(f"{name}: {r.axiom}", r.witness, r.detail)
    for c in range(C.n_objects):
        u = adj.unit[c]
        if C.src[u] != c or C.tgt[u] != G.obj(F.obj(c)):
            return Report.fail("unit typing", (c,), f"u_{c} is not a morphism c -> GFc")
    for d in range(D.n_objects):
        v = adj.counit[d]
        if D.tgt[v] != d or D.src[v] != F.obj(G.obj(d)):
            return Report.fail("counit typing", (d,), f"v_{d} is not a morphism FGd -> d")
    for f in range(C.n_morphisms):
        a, b = C.src[f], C.tgt[f]
        if C.comp[(f, adj.unit[b])] != C.comp[(adj.unit[a], G(F(f)))]:
            return Report.fail("unit naturality", (f,), f"naturality square for u fails at {f}")
    for h in range(D.n_morphisms):
        a, b = D.src[h], D.tgt[h]
        if D.comp[(F(G(h)), adj.counit[b])] != D.comp[(adj.counit[a], h)]:
            return Report.fail("counit naturality", (h,), f"naturality square for v fails at {h}")
    return Report.ok()


def triangle_identity_check(adj: AdjunctionDatum) -> Report:
    """``v_{Fc} . F(u_c) = id_{Fc}`` for every c and ``G(v_d) . u_{Gd} = id_{Gd}`` for every d."""
    C, D, F, G = adj.C, adj.D, adj.F, adj.G
    for c in range(C.n_objects):
        Fc = F.obj(c)
        if D.comp[(F(adj.unit[c]), adj.counit[Fc])] != D.identity[Fc]:
            return Report.fail("triangle F", (c,), f"v_Fc after F(u_c) is not id at c={c}")
    for d in range(D.n_objects):
        Gd = G.obj(d)
        if C.comp[(adj.unit[Gd], G(adj.counit[d]))] != C.identity[Gd]:
            return Report.fail("triangle G", (d,), f"G(v_d) after u_Gd is not id at d={d}")
    return Report.ok()


def hom_bijection_check(adj: AdjunctionDatum) -> Report:
    """The induced maps Hom(Fc, d) -> Hom(c, Gd) -> Hom(Fc, d) and back are identities."""
    C, D, F, G = adj.C, adj.D, adj.F, adj.G
    for c in range(C.n_objects):
        for d in range(D.n_objects):
            left = D.hom(F.obj(c), d)
            right = C.hom(c, G.obj(d))

            def phi(k):
                return C.comp[(adj.unit[c], G(k))]

            def psi(l):
                return D.comp[(F(l), adj.counit[d])]

            for k in left:
                if psi(phi(k)) != k:
                    return Report.fail("psi phi", (c, d, k))
            for l in right:
                if phi(psi(l)) != l:
                    return Report.fail("phi psi", (c, d, l))
    return Report.ok()


def single_component_mutations(adj: AdjunctionDatum) -> Iterator[tuple[str, int, AdjunctionDatum]]:
    """Every datum obtained by swapping one unit or counit component for another parallel morphism."""
    C, D = adj.C, adj.D
    for c, u in enumerate(adj.unit):
        for alt in C.hom(C.src[u], C.tgt[u]):
            if alt != u:
                unit = adj.unit[:c] + (alt,) + adj.unit[c + 1:]
                yield "unit", c, replace(adj, unit=unit)
    for d, v in enumerate(adj.counit):
        for alt in D.hom(D.src[v], D.tgt[v]):
            if alt != v:
                counit = adj.counit[:d] + (alt,) + adj.counit[d + 1:]
                yield "counit", d, replace(adj, counit=counit)


# -- fixtures -------------------------------------------------------------------

def identity_adjunction(c: FinCategory) -> AdjunctionDatum:
    F = identity_functor(c)
    return AdjunctionDatum(c, c, F, F, c.identity, c.identity)


def constant_functor(c: FinCategory, d: FinCategory, obj: int) -> Functor:
    return Functor(c, d, (obj,) * c.n_objects, (d.identity[obj],) * c.n_morphisms)


def to_terminal_adjunction(c: FinCategory, terminal_object: int) -> AdjunctionDatum:
    """``c -> *`` left adjoint to the inclusion of a terminal object of ``c``."""
    from .category import terminal

    star = terminal()
    F = constant_functor(c, star, 0)
    G = constant_functor(star, c, terminal_object)
    unit = tuple(c.hom(x, terminal_object)[0] for x in range(c.n_objects))
    return AdjunctionDatum(c, star, F, G, unit, (star.identity[0],))


def from_terminal_adjunction(c: FinCategory, initial_object: int) -> AdjunctionDatum:
    """The inclusion of an initial object of ``c`` left adjoint to ``c -> *``."""
    from .category import terminal

    star = terminal()
    F = constant_functor(star, c, initial_object)
    G = constant_functor(c, star, 0)
    counit = tuple(c.hom(initial_object, x)[0] for x in range(c.n_objects))
    return AdjunctionDatum(star, c, F, G, (star.identity[0],), counit)


def galois_connection() -> AdjunctionDatum:
    """[2] -> [1] collapsing 1 and 2, right adjoint 0 -> 0, 1 -> 2."""
    from .category import linear_order

    C, D = linear_order(2), linear_order(1)

    def mor(cat, x, y):
        return cat.hom(x, y)[0]

    f_obj = (0, 1, 1)
    g_obj = (0, 2)
    F = Functor(C, D, f_obj, tuple(mor(D, f_obj[C.src[f]], f_obj[C.tgt[f]])
                                   for f in range(C.n_morphisms)))
    G = Functor(D, C, g_obj, tuple(mor(C, g_obj[D.src[h]], g_obj[D.tgt[h]])
                                   for h in range(D.n_morphisms)))
    unit = tuple(mor(C, c, g_obj[f_obj[c]]) for c in range(C.n_objects))
    counit = tuple(mor(D, f_obj[g_obj[d]], d) for d in range(D.n_objects))
    return AdjunctionDatum(C, D, F, G, unit, counit)


def fixture_adjunctions() -> list[tuple[str, AdjunctionDatum]]:
    from .category import (
        codiscrete,
        cyclic_group,
        idempotent_monoid,
        linear_order,
        split_idempotent,
    )

    out = [(f"identity on {c.name}", identity_adjunction(c))
           for c in (linear_order(2), cyclic_group(3), idempotent_monoid(), split_idempotent())]
    out.append(("[2] -> * with top element", to_terminal_adjunction(linear_order(2), 2)))
    out.append(("* -> [2] at bottom element", from_terminal_adjunction(linear_order(2), 0)))
    out.append(("codiscrete(2) -> *", to_terminal_adjunction(codiscrete(2), 1)))
    out.append(("galois connection [2] -> [1]", galois_connection()))
    return out

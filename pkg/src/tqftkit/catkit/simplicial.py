"""Truncated simplicial sets, nerves and the discrete Segal condition.

Level ``n`` is the index set ``range(sizes[n])``; ``faces[n][i]`` is the map
``d_i: X_n -> X_{n-1}`` (``n >= 1``) and ``degeneracies[n][i]`` is
``s_i: X_n -> X_{n+1}`` (``n < max_level``), both stored as index tuples.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from ..reports import Report
from .category import FinCategory, validate_category


class SegalFailure(ValueError):
    pass


@dataclass(frozen=True)
class TruncatedSimplicialSet:
    max_level: int
    sizes: tuple[int, ...]
    faces: tuple  # faces[n][i], n = 0 .. max_level (faces[0] is empty)
    degeneracies: tuple  # degeneracies[n][i], n = 0 .. max_level - 1
    labels: Optional[tuple] = field(default=None, compare=False)

    def face(self, n: int, i: int, x: int) -> int:
        return self.faces[n][i][x]

    def degeneracy(self, n: int, i: int, x: int) -> int:
        return self.degeneracies[n][i][x]

    def vertex(self, n: int, x: int, which: str) -> int:
        """First or last vertex of an ``n``-simplex."""
        while n > 0:
            x = self.faces[n][n if which == "first" else 0][x]
            n -= 1
        return x

    def front(self, n: int, m: int, x: int) -> int:
        """The face on vertices ``0..m`` of an ``n``-simplex."""
        while n > m:
            x = self.faces[n][n][x]
            n -= 1
        return x

    def back(self, n: int, k: int, x: int) -> int:
        """The face on the last ``k + 1`` vertices of an ``n``-simplex."""
        while n > k:
            x = self.faces[n][0][x]
            n -= 1
        return x

    def to_json(self) -> dict[str, Any]:
        out = {
            "max_level": self.max_level,
            "sizes": list(self.sizes),
            "faces": [[list(m) for m in self.faces[n]] for n in range(1, self.max_level + 1)],
            "degeneracies": [[list(m) for m in self.degeneracies[n]]
                             for n in range(self.max_level)],
        }
        if self.labels is not None:
            out["labels"] = [[_jsonable(l) for l in level] for level in self.labels]
        return out

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "TruncatedSimplicialSet":
        n = int(data["max_level"])
        faces = ((),) + tuple(tuple(tuple(int(v) for v in m) for m in level)
                              for level in data["faces"])
        degens = tuple(tuple(tuple(int(v) for v in m) for m in level)
                       for level in data["degeneracies"])
        labels = data.get("labels")
        if labels is not None:
            labels = tuple(tuple(_hashable(l) for l in level) for level in labels)
        s = cls(n, tuple(int(v) for v in data["sizes"]), faces, degens, labels)
        problem = _shape_problem(s)
        if problem:
            raise ValueError(problem)
        return s


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    return x


def _hashable(x):
    if isinstance(x, list):
        return tuple(_hashable(v) for v in x)
    return x


def _shape_problem(s: TruncatedSimplicialSet) -> Optional[str]:
    N = s.max_level
    if len(s.sizes) != N + 1:
        return f"need {N + 1} level sizes, got {len(s.sizes)}"
    if len(s.faces) != N + 1 or len(s.degeneracies) != N:
        return "face/degeneracy tables have the wrong number of levels"
    for n in range(1, N + 1):
        if len(s.faces[n]) != n + 1:
            return f"level {n} needs {n + 1} face maps"
        for i, m in enumerate(s.faces[n]):
            if len(m) != s.sizes[n] or any(not 0 <= v < s.sizes[n - 1] for v in m):
                return f"d_{i} on level {n} is not a map X_{n} -> X_{n - 1}"
    for n in range(N):
        if len(s.degeneracies[n]) != n + 1:
            return f"level {n} needs {n + 1} degeneracy maps"
        for i, m in enumerate(s.degeneracies[n]):
            if len(m) != s.sizes[n] or any(not 0 <= v < s.sizes[n + 1] for v in m):
                return f"s_{i} on level {n} is not a map X_{n} -> X_{n + 1}"
    return None


def check_simplicial_identities(s: TruncatedSimplicialSet) -> Report:
    """All five families of simplicial identities, exhaustively, within the truncation."""
    problem = _shape_problem(s)
    if problem:
        return Report.fail("shape", (), problem)
    N = s.max_level
    d, sg = s.faces, s.degeneracies
    for n in range(2, N + 1):
        for j in range(n + 1):
            for i in range(j):
                for x in range(s.sizes[n]):
                    if d[n - 1][i][d[n][j][x]] != d[n - 1][j - 1][d[n][i][x]]:
                        return Report.fail("d_i d_j = d_{j-1} d_i", (n, i, j, x))
    for n in range(N):
        for j in range(n + 1):
            for x in range(s.sizes[n]):
                y = sg[n][j][x]
                if d[n + 1][j][y] != x or d[n + 1][j + 1][y] != x:
                    return Report.fail("d_j s_j = id = d_{j+1} s_j", (n, j, x))
                for i in range(n + 2):
                    if i < j:
                        if d[n + 1][i][y] != sg[n - 1][j - 1][d[n][i][x]]:
                            return Report.fail("d_i s_j = s_{j-1} d_i", (n, i, j, x))
                    elif i > j + 1:
                        if d[n + 1][i][y] != sg[n - 1][j][d[n][i - 1][x]]:
                            return Report.fail("d_i s_j = s_j d_{i-1}", (n, i, j, x))
    for n in range(N - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                for x in range(s.sizes[n]):
                    if sg[n + 1][i][sg[n][j][x]] != sg[n + 1][j + 1][sg[n][i][x]]:
                        return Report.fail("s_i s_j = s_{j+1} s_i", (n, i, j, x))
    return Report.ok()


# -- nerve ------------------------------------------------------------------

def composable_chains(c: FinCategory, n: int) -> list[tuple[int, ...]]:
    """Level ``n`` of the nerve: objects for ``n = 0``, else chains ``(f_1, ..., f_n)``."""
    if n == 0:
        return [(x,) for x in range(c.n_objects)]
    chains = [(f,) for f in range(c.n_morphisms)]
    for _ in range(n - 1):
        chains = [ch + (g,) for ch in chains for g in range(c.n_morphisms)
                  if c.tgt[ch[-1]] == c.src[g]]
    return chains


def _face_chain(c: FinCategory, n: int, i: int, ch: tuple) -> tuple:
    if n == 1:
        return (c.tgt[ch[0]],) if i == 0 else (c.src[ch[0]],)
    if i == 0:
        return ch[1:]
    if i == n:
        return ch[:-1]
    return ch[:i - 1] + (c.comp[(ch[i - 1], ch[i])],) + ch[i + 1:]


def _degen_chain(c: FinCategory, n: int, i: int, ch: tuple) -> tuple:
    if n == 0:
        return (c.identity[ch[0]],)
    vertex = c.src[ch[0]] if i == 0 else c.tgt[ch[i - 1]]
    return ch[:i] + (c.identity[vertex],) + ch[i:]


def nerve(c: FinCategory, max_level: int) -> TruncatedSimplicialSet:
    """Composable chains up to length ``max_level``; faces compose or drop, degeneracies insert identities."""
    levels = [composable_chains(c, n) for n in range(max_level + 1)]
    index = [{ch: k for k, ch in enumerate(level)} for level in levels]
    faces = [()]
    for n in range(1, max_level + 1):
        faces.append(tuple(
            tuple(index[n - 1][_face_chain(c, n, i, ch)] for ch in levels[n])
            for i in range(n + 1)))
    degens = []
    for n in range(max_level):
        degens.append(tuple(
            tuple(index[n + 1][_degen_chain(c, n, i, ch)] for ch in levels[n])
            for i in range(n + 1)))
    return TruncatedSimplicialSet(max_level, tuple(len(l) for l in levels), tuple(faces),
                                  tuple(degens), tuple(tuple(l) for l in levels))


# -- Segal condition -----------------------------------------------------------

def segal_map(s: TruncatedSimplicialSet, m: int, n: int) -> dict[int, tuple[int, int]]:
    """``X_{m+n} -> X_m x_{X_0} X_n``: front ``m``-face and back ``n``-face."""
    total = m + n
    return {x: (s.front(total, m, x), s.back(total, n, x)) for x in range(s.sizes[total])}


def fiber_product(s: TruncatedSimplicialSet, m: int, n: int) -> set[tuple[int, int]]:
    by_first: dict[int, list[int]] = {}
    for z in range(s.sizes[n]):
        by_first.setdefault(s.vertex(n, z, "first"), []).append(z)
    out = set()
    for y in range(s.sizes[m]):
        for z in by_first.get(s.vertex(m, y, "last"), []):
            out.add((y, z))
    return out


def segal_bijection_check(s: TruncatedSimplicialSet, up_to: Optional[int] = None) -> Report:
    """Bijectivity of ``X_{m+n} -> X_m x_{X_0} X_n`` for all ``m + n <= up_to``.

    Pairs are tried by increasing ``m + n`` and then increasing ``m``; the
    first failure is reported with witness ``(m, n)``.
    """
    top = s.max_level if up_to is None else min(up_to, s.max_level)
    for total in range(top + 1):
        for m in range(total + 1):
            n = total - m
            image = segal_map(s, m, n)
            values = list(image.values())
            if len(set(values)) != len(values):
                return Report.fail("injective", (m, n),
                                   f"two {total}-simplices share the same ({m},{n}) decomposition")
            target = fiber_product(s, m, n)
            if set(values) != target:
                missing = sorted(target - set(values))
                return Report.fail("surjective", (m, n),
                                   f"pair {missing[0]} has no filler in X_{total}")
    return Report.ok()


def category_from_segal(s: TruncatedSimplicialSet) -> FinCategory:
    """Objects X_0, morphisms X_1, and g after f given by the long face of the unique 2-simplex over (f, g)."""
    if s.max_level < 3:
        raise SegalFailure("need simplices up to level 3 to recover associativity")
    report = check_simplicial_identities(s)
    if not report:
        raise SegalFailure(f"simplicial identities fail: {report.axiom} at {report.witness}")
    report = segal_bijection_check(s, 3)
    if not report:
        raise SegalFailure(f"Segal condition fails at {report.witness}")
    inverse = {pair: x for x, pair in segal_map(s, 1, 1).items()}
    src = tuple(s.faces[1][1])
    tgt = tuple(s.faces[1][0])
    identity = tuple(s.degeneracies[0][0])
    comp = {}
    for (f, g), x in inverse.items():
        comp[(f, g)] = s.faces[2][1][x]
    c = FinCategory(s.sizes[0], src, tgt, identity, comp)
    report = validate_category(c)
    if not report:
        raise SegalFailure(f"recovered composition is not a category: {report.axiom}")
    return c


# -- mutations -------------------------------------------------------------------

def delete_simplices(s: TruncatedSimplicialSet, level: int, doomed: set[int]) -> TruncatedSimplicialSet:
    """Remove nondegenerate simplices and, recursively, everything above with a face among them."""
    for n in range(level):
        for m in s.degeneracies[n]:
            if level == n + 1 and doomed & set(m):
                raise ValueError("cannot delete a degenerate simplex")
    removed: dict[int, set[int]] = {level: set(doomed)}
    for n in range(level + 1, s.max_level + 1):
        removed[n] = {x for x in range(s.sizes[n])
                      if any(s.faces[n][i][x] in removed[n - 1] for i in range(n + 1))}
    keep = []
    for n in range(s.max_level + 1):
        gone = removed.get(n, set())
        keep.append([x for x in range(s.sizes[n]) if x not in gone])
    new_index = [{old: new for new, old in enumerate(k)} for k in keep]
    faces = [()]
    for n in range(1, s.max_level + 1):
        faces.append(tuple(tuple(new_index[n - 1][m[x]] for x in keep[n]) for m in s.faces[n]))
    degens = []
    for n in range(s.max_level):
        degens.append(tuple(tuple(new_index[n + 1][m[x]] for x in keep[n])
                            for m in s.degeneracies[n]))
    labels = None
    if s.labels is not None:
        labels = tuple(tuple(s.labels[n][x] for x in keep[n]) for n in range(s.max_level + 1))
    return TruncatedSimplicialSet(s.max_level, tuple(len(k) for k in keep), tuple(faces),
                                  tuple(degens), labels)


def duplicate_simplex(s: TruncatedSimplicialSet, x: int) -> TruncatedSimplicialSet:
    """Add a second copy of a top-level simplex with the same faces."""
    top = s.max_level
    if top == 0:
        raise ValueError("need at least one face level")
    faces = list(s.faces)
    faces[top] = tuple(m + (m[x],) for m in s.faces[top])
    sizes = s.sizes[:top] + (s.sizes[top] + 1,)
    return TruncatedSimplicialSet(top, sizes, tuple(faces), s.degeneracies)


def truncate(s: TruncatedSimplicialSet, level: int) -> TruncatedSimplicialSet:
    labels = None if s.labels is None else s.labels[:level + 1]
    return TruncatedSimplicialSet(level, s.sizes[:level + 1], s.faces[:level + 1],
                                  s.degeneracies[:level], labels)


def no_filler_example() -> TruncatedSimplicialSet:
    """The boundary of a 2-simplex, completed only with degenerate simplices.

    X_0 = {0, 1, 2}, nondegenerate edges f: 0 -> 1, g: 1 -> 2, h: 0 -> 2, and
    no 2-simplex fills (f, g).
    """
    from .category import from_preorder

    # the nerve of [2] minus its one nondegenerate 2-simplex, truncated at level 2
    full = nerve(from_preorder(3, lambda x, y: x <= y), 2)
    nondeg = _nondegenerate(full, 2)
    return delete_simplices(full, 2, nondeg)


def _nondegenerate(s: TruncatedSimplicialSet, n: int) -> set[int]:
    if n == 0:
        return set(range(s.sizes[0]))
    image = set()
    for m in s.degeneracies[n - 1]:
        image.update(m)
    return set(range(s.sizes[n])) - image


def nondegenerate(s: TruncatedSimplicialSet, n: int) -> list[int]:
    return sorted(_nondegenerate(s, n))


def mutated_nerves() -> list[tuple[str, TruncatedSimplicialSet]]:
    """Simplicial sets close to a nerve that break the Segal condition at (1, 1).

    Each deletes one nondegenerate 2-simplex from a nerve (with everything
    above it), or duplicates a top-level 2-simplex of a 2-truncated nerve.
    """
    from .category import (
        arrow,
        codiscrete,
        cyclic_group,
        idempotent_monoid,
        linear_order,
        split_idempotent,
    )

    out = []
    for c in (linear_order(2), linear_order(3), cyclic_group(2), idempotent_monoid(),
              codiscrete(2), split_idempotent()):
        full = nerve(c, 3)
        x = nondegenerate(full, 2)[0]
        out.append((f"{c.name} minus 2-simplex {x}", delete_simplices(full, 2, {x})))
    for c in (arrow(), linear_order(2), cyclic_group(3)):
        s = nerve(c, 2)
        out.append((f"{c.name} with a doubled 2-simplex", duplicate_simplex(s, s.sizes[2] - 1)))
    out.append(("boundary of a 2-simplex", no_filler_example()))
    return out

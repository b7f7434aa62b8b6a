"""Independent reference computations used to cross-check the library.

These deliberately avoid the library's own linear algebra: matrices go
through sympy and contractions are spelled out as index sums.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import sympy


def rat(x) -> sympy.Rational:
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


def frac(x) -> Fraction:
    num, den = sympy.fraction(sympy.nsimplify(x))
    return Fraction(int(num), int(den))


def structure(a):
    """(n, c[i][j][k], unit[i], trace[i]) as plain nested lists of sympy rationals."""
    n = a.dim
    c = [[[rat(a.mult[i, j, k]) for k in range(n)] for j in range(n)] for i in range(n)]
    return n, c, [rat(a.unit[i]) for i in range(n)], [rat(a.trace[i]) for i in range(n)]


def coproduct_by_duality(a):
    """Solve g(delta x, y (x) z) = g(x, y z) for delta; returns d[k][a][b]."""
    n, c, _, tr = structure(a)
    g = sympy.Matrix(n, n, lambda i, j: sum(c[i][j][m] * tr[m] for m in range(n)))
    gi = g.inv()
    d = [[[0] * n for _ in range(n)] for _ in range(n)]
    for k, p, q in itertools.product(range(n), repeat=3):
        total = 0
        for y, z in itertools.product(range(n), repeat=2):
            rhs = sum(c[y][z][m] * g[k, m] for m in range(n))
            total += gi[p, y] * gi[q, z] * rhs
        d[k][p][q] = total
    return d


def genus_series(a, g_max: int) -> list[Fraction]:
    """Z(genus g) by threading 1 through g copies of (copants; pants) and capping off."""
    n, c, unit, tr = structure(a)
    d = coproduct_by_duality(a)
    out = []
    v = list(unit)
    for g in range(g_max + 1):
        out.append(frac(sum(v[i] * tr[i] for i in range(n))))
        # copants: v -> sum_k v_k delta(e_k) ; pants: multiply the two factors
        w = [0] * n
        for k, p, q, m in itertools.product(range(n), repeat=4):
            w[m] += v[k] * d[k][p][q] * c[p][q][m]
        v = w
    return out


def commutator_rank(mult, n: int) -> int:
    """dim of the span of all e_i e_j - e_j e_i, from the raw structure constants."""
    rows = []
    for i, j in itertools.combinations(range(n), 2):
        rows.append([rat(mult[i, j, k]) - rat(mult[j, i, k]) for k in range(n)])
    if not rows:
        return 0
    return sympy.Matrix(rows).rank()


def nerve_sizes(c, top: int) -> list[int]:
    """|X_k| by filtering all k-tuples of morphisms for composability."""
    sizes = [c.n_objects]
    for k in range(1, top + 1):
        count = 0
        for chain in itertools.product(range(c.n_morphisms), repeat=k):
            if all(c.tgt[chain[i]] == c.src[chain[i + 1]] for i in range(k - 1)):
                count += 1
        sizes.append(count)
    return sizes


def feynman_brute_force(datum, diagram):
    """Sum over index assignments of every edge end; pairings used as printed per edge."""
    edges = diagram.edges
    ranges = []
    for (v, leg), (w, leg2) in edges:
        p = datum.interactions[diagram.vertices[v]].legs[leg]
        q = datum.interactions[diagram.vertices[w]].legs[leg2]
        ranges.append(range(datum.dims[p]))
        ranges.append(range(datum.dims[q]))
    total = Fraction(0)
    for idx in itertools.product(*ranges):
        at = {}
        term = Fraction(1)
        for k, (a, b) in enumerate(edges):
            i, j = idx[2 * k], idx[2 * k + 1]
            at[a], at[b] = i, j
            p = datum.interactions[diagram.vertices[a[0]]].legs[a[1]]
            rep = min(p, datum.bar[p])
            pairing = datum.pairings[rep]
            term *= pairing[i, j] if p == rep else pairing[j, i]
            if not term:
                break
        if not term:
            continue
        for v, x in enumerate(diagram.vertices):
            vec = datum.interactions[x].vector
            term *= vec[tuple(at[(v, l)] for l in range(vec.ndim))] if vec.ndim else vec.value()
            if not term:
                break
        total += term
    for p in diagram.loops:
        total *= datum.dims[p]
    return total


def hochschild_boundary(mult, n: int, k: int) -> sympy.Matrix:
    """Dense b: C_k -> C_{k-1}, one column per basis tensor, built from the face formula."""
    basis_k = list(itertools.product(range(n), repeat=k + 1))
    basis_lo = {idx: r for r, idx in enumerate(itertools.product(range(n), repeat=k))}
    m = sympy.zeros(len(basis_lo), len(basis_k))
    for col, idx in enumerate(basis_k):
        for i in range(k + 1):
            # face i multiplies positions i and i+1, the last face wraps a_k onto a_0
            for c in range(n):
                coeff = rat(mult[idx[i], idx[(i + 1) % (k + 1)], c])
                if not coeff:
                    continue
                if i < k:
                    row = idx[:i] + (c,) + idx[i + 2:]
                else:
                    row = (c,) + idx[1:k]
                m[basis_lo[row], col] += (-1) ** i * coeff
    return m


def hochschild_dims(mult, n: int, level: int) -> list[int]:
    ranks = [hochschild_boundary(mult, n, k).rank() for k in range(1, level + 1)]
    out = []
    for k in range(level + 1):
        out.append(n ** (k + 1) - (ranks[k - 1] if k else 0) - (ranks[k] if k < level else 0))
    return out


def tangle_brute_force(t, datum):
    """Every matrix entry of a tangle, one arc constraint at a time."""
    dims = {"+": datum.dim_v, "-": datum.dim_w}
    in_dims = [dims[s] for s in t.in_points]
    out_dims = [dims[s] for s in t.out_points]
    # circle value from the definition ev o coev, i.e. sum_ij ev[i][j] coev[j][i]
    loop = sum(datum.ev[i, j] * datum.coev[j, i] for i in range(datum.dim_v) for j in range(datum.dim_w))
    rows = []
    for outs in itertools.product(*(range(d) for d in out_dims)):
        row = []
        for ins in itertools.product(*(range(d) for d in in_dims)):
            v = Fraction(loop) ** t.circles
            for p, q in t.arcs:
                end = {"in": ins, "out": outs}
                if p[0] != q[0]:
                    v *= int(end[p[0]][p[1]] == end[q[0]][q[1]])
                    continue
                if t.sign(p) == "-":
                    p, q = q, p
                if p[0] == "in":
                    v *= datum.ev[ins[p[1]], ins[q[1]]]
                else:
                    v *= datum.coev[outs[q[1]], outs[p[1]]]
            row.append(v)
        rows.append(row)
    return rows

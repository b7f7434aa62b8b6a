"""Hochschild chains of finite-dimensional algebras and the Connes operator.

``C_k = A^{(x)(k+1)}`` with basis the multi-indices ``(a_0, ..., a_k)`` in
row-major order. Boundaries and ``B`` are exact matrices.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

from .exact import Tensor, contract, matmul, rank, vector
from .frobenius import FrobeniusAlgebra, check_associative_unital, from_table
from .reports import Report

DEFAULT_LEVEL = 4


class NotAComplex(ValueError):
    pass


@dataclass(frozen=True)
class AssocAlgebra:
    dim: int
    mult: Tensor
    unit: Tensor
    name: str = field(default="", compare=False)

    def to_json(self) -> dict[str, Any]:
        return {"dim": self.dim, "mult": self.mult.to_json(), "unit": self.unit.to_json()}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "AssocAlgebra":
        return cls(int(data["dim"]), Tensor.from_nested(data["mult"]),
                   Tensor.from_nested(data["unit"]), data.get("name", ""))

    @classmethod
    def from_frobenius(cls, a: FrobeniusAlgebra) -> "AssocAlgebra":
        return cls(a.dim, a.mult, a.unit, a.name)


def validate_algebra(a: AssocAlgebra) -> Report:
    n = a.dim
    if a.mult.shape != (n, n, n) or a.unit.shape != (n,):
        return Report.fail("shape", (), "mult must be (n,n,n) and unit (n,)")
    return check_associative_unital(n, a.mult, a.unit)


@dataclass(frozen=True)
class ChainComplex:
    """``boundaries[k - 1]`` is ``d_k: C_k -> C_{k-1}`` as a ``(dims[k-1], dims[k])`` matrix."""

    dims: tuple[int, ...]
    boundaries: tuple[Tensor, ...]

    def __post_init__(self):
        if len(self.boundaries) != max(len(self.dims) - 1, 0):
            raise ValueError("need one boundary between each pair of adjacent degrees")
        for k, d in enumerate(self.boundaries, start=1):
            if d.shape != (self.dims[k - 1], self.dims[k]):
                raise ValueError(f"d_{k} has shape {d.shape}, expected {(self.dims[k - 1], self.dims[k])}")


@dataclass(frozen=True)
class Homology:
    dims: tuple[int, ...]
    truncated_at: int  # the top degree, reported as ker only

    def to_json(self) -> dict[str, Any]:
        return {"hh": list(self.dims), "truncated_at": self.truncated_at}


# -- chain-level maps -------------------------------------------------------------

def _sparse_products(a: AssocAlgebra) -> dict[tuple[int, int], list[tuple[int, Fraction]]]:
    table: dict[tuple[int, int], list] = defaultdict(list)
    for (i, j, k), v in a.mult.nonzero.items():
        table[(i, j)].append((k, v))
    return table


def _flat(idx: Sequence[int], n: int) -> int:
    out = 0
    for i in idx:
        out = out * n + i
    return out


def _basis(n: int, k: int):
    """Multi-indices of ``A^{(x)(k+1)}`` in row-major order."""
    return itertools.product(range(n), repeat=k + 1)


def face_sign(i: int) -> int:
    return -1 if i % 2 else 1


def boundary_matrix(a: AssocAlgebra, k: int) -> Tensor:
    """``b: C_k -> C_{k-1}`` (``k >= 1``).

    b(a_0..a_k) = sum_{i<k} (-1)^i (.., a_i a_{i+1}, ..) + (-1)^k (a_k a_0, a_1, .., a_{k-1})
    """
    n = a.dim
    prod = _sparse_products(a)
    items: dict[tuple[int, int], Fraction] = defaultdict(Fraction)
    for col_idx in _basis(n, k):
        col = _flat(col_idx, n)
        for i in range(k):
            s = face_sign(i)
            for c, v in prod.get((col_idx[i], col_idx[i + 1]), ()):
                row = col_idx[:i] + (c,) + col_idx[i + 2:]
                items[(_flat(row, n), col)] += s * v
        s = face_sign(k)
        for c, v in prod.get((col_idx[k], col_idx[0]), ()):
            row = (c,) + col_idx[1:k]
            items[(_flat(row, n), col)] += s * v
    return Tensor.from_sparse((n ** k, n ** (k + 1)), items)


def cyclic_operator(n: int, k: int) -> dict[int, tuple[int, int]]:
    """``t(a_0..a_k) = (-1)^k (a_k, a_0, .., a_{k-1})`` as column -> (row, sign)."""
    sign = -1 if k % 2 else 1
    out = {}
    for idx in _basis(n, k):
        out[_flat(idx, n)] = (_flat((idx[k],) + idx[:k], n), sign)
    return out


def connes_operator(a: AssocAlgebra, k: int) -> Tensor:
    """``B = (1 - t) s N: C_k -> C_{k+1}``.

    ``N = sum_i t^i`` is the cyclic norm on C_k, ``s`` inserts the unit in
    front, and ``t`` on C_{k+1} is the signed cyclic shift.
    """
    n = a.dim
    t_k = cyclic_operator(n, k)
    t_up = cyclic_operator(n, k + 1)
    unit = [(i, v) for (i,), v in a.unit.nonzero.items()]
    items: dict[tuple[int, int], Fraction] = defaultdict(Fraction)
    for col in range(n ** (k + 1)):
        # cyclic norm
        norm: dict[int, int] = defaultdict(int)
        cur, sign = col, 1
        for _ in range(k + 1):
            norm[cur] += sign
            nxt, s = t_k[cur]
            cur, sign = nxt, sign * s
        for c, coeff in norm.items():
            if not coeff:
                continue
            tail = c
            for u, uv in unit:
                # s: prepend the unit; row index in C_{k+1}
                row = u * n ** (k + 1) + tail
                w = coeff * uv
                items[(row, col)] += w
                shifted, s2 = t_up[row]
                items[(shifted, col)] -= s2 * w
    return Tensor.from_sparse((n ** (k + 2), n ** (k + 1)), items)


def hochschild_complex(a: AssocAlgebra, level: int = DEFAULT_LEVEL) -> ChainComplex:
    n = a.dim
    dims = tuple(n ** (k + 1) for k in range(level + 1))
    return ChainComplex(dims, tuple(boundary_matrix(a, k) for k in range(1, level + 1)))


def check_complex(c: ChainComplex) -> Report:
    for k in range(2, len(c.dims)):
        prod = matmul(c.boundaries[k - 2], c.boundaries[k - 1])
        if not prod.is_zero():
            return Report.fail("d∘d=0", (k,), f"d_{k - 1} d_{k} != 0")
    return Report.ok()


def homology_dims(c: ChainComplex) -> Homology:
    """``dim ker d_k - rank d_{k+1}``; the top degree has no incoming boundary and reports ``ker`` only."""
    report = check_complex(c)
    if not report:
        raise NotAComplex(report.detail)
    ranks = [rank(d) for d in c.boundaries]
    out = []
    top = len(c.dims) - 1
    for k, dim in enumerate(c.dims):
        out_rank = ranks[k - 1] if k >= 1 else 0
        in_rank = ranks[k] if k < top else 0
        out.append(dim - out_rank - in_rank)
    return Homology(tuple(out), top)


def hochschild_dims(a: AssocAlgebra, level: int = DEFAULT_LEVEL) -> Homology:
    return homology_dims(hochschild_complex(a, level))


def chain_identities(a: AssocAlgebra, level: int = DEFAULT_LEVEL) -> Report:
    """``b b = 0`` up to ``level``, and ``B B = 0``, ``b B + B b = 0`` in degrees below ``level``."""
    cx = hochschild_complex(a, level)
    report = check_complex(cx)
    if not report:
        return report
    Bs = [connes_operator(a, k) for k in range(level)]
    for k in range(level - 1):
        if not matmul(Bs[k + 1], Bs[k]).is_zero():
            return Report.fail("B∘B=0", (k,), f"B_{k + 1} B_{k} != 0")
    for k in range(level):
        # on C_k: b_{k+1} B_k + B_{k-1} b_k
        total = matmul(cx.boundaries[k], Bs[k])
        if k >= 1:
            total = total + matmul(Bs[k - 1], cx.boundaries[k - 1])
        if not total.is_zero():
            return Report.fail("bB+Bb=0", (k,), f"bB + Bb != 0 on C_{k}")
    return Report.ok()


def calabi_yau_check(a: AssocAlgebra, trace: Tensor, strict: bool = False) -> Report:
    """Symmetric, nondegenerate trace pairing.

    With ``strict`` the trace must also vanish on the image of the Hochschild
    boundary ``b: C_1 -> C_0``, checked through the chain-level matrix. Since
    ``b(a_0, a_1) = a_0 a_1 - a_1 a_0`` this restates symmetry, reached by a
    second route.
    """
    n = a.dim
    if trace.shape != (n,):
        return Report.fail("shape", (), f"trace has shape {trace.shape}")
    g = contract(a.mult, trace, [(2, 0)])
    for i in range(n):
        for j in range(i + 1, n):
            if g[i, j] != g[j, i]:
                return Report.fail("symmetry", (i, j), f"tr(e{i} e{j}) != tr(e{j} e{i})")
    r = rank(g)
    if r != n:
        return Report.fail("nondegeneracy", (r,), f"trace pairing has rank {r} < {n}")
    if strict:
        row = matmul(trace.reshape((1, n)), boundary_matrix(a, 1))
        if not row.is_zero():
            return Report.fail("hochschild invariance", (), "trace does not vanish on b(C_1)")
    return Report.ok()


# -- fixtures -------------------------------------------------------------------

def matrix_algebra(m: int = 2) -> AssocAlgebra:
    """M_m(Q) in the basis of matrix units E_{ij}, index i*m + j."""
    n = m * m
    products = {}
    for i in range(m):
        for j in range(m):
            for k in range(m):
                products[(i * m + j, j * m + k)] = {i * m + k: 1}
    unit = [1 if i == j else 0 for i in range(m) for j in range(m)]
    fa = from_table(n, products, unit, [0] * n)
    return AssocAlgebra(n, fa.mult, fa.unit, f"M_{m}(Q)")


def matrix_trace(m: int = 2) -> Tensor:
    return vector([1 if i == j else 0 for i in range(m) for j in range(m)])


def upper_triangular() -> AssocAlgebra:
    """Upper-triangular 2x2 matrices, basis E11, E12, E22."""
    products = {
        (0, 0): {0: 1}, (0, 1): {1: 1},
        (1, 2): {1: 1}, (2, 2): {2: 1},
    }
    fa = from_table(3, products, [1, 0, 1], [1, 0, 1])
    return AssocAlgebra(3, fa.mult, fa.unit, "T_2(Q)")


def standard_assoc_algebras() -> list[AssocAlgebra]:
    from .frobenius import cyclic_group_algebra, dual_numbers, ground_field, truncated_polynomial

    return [
        AssocAlgebra.from_frobenius(ground_field()),
        AssocAlgebra.from_frobenius(dual_numbers()),
        AssocAlgebra.from_frobenius(cyclic_group_algebra(2)),
        matrix_algebra(2),
        upper_triangular(),
        AssocAlgebra.from_frobenius(truncated_polynomial(3)),
    ]

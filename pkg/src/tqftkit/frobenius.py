"""Commutative Frobenius algebras and the 2D theories they define.

An algebra is given in a basis ``e_0 .. e_{n-1}`` by structure constants
``mult[i][j][k]`` (coefficient of ``e_k`` in ``e_i e_j``), the coordinates of
the unit, and the values of the trace on basis elements.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .exact import (
    ONE,
    ZERO,
    Tensor,
    as_scalar,
    contract,
    identity,
    invert,
    matmul,
    rank,
    vector,
)
from .reports import Report

GENERATORS = ("cup", "cap", "pants", "copants", "id", "swap")


@dataclass(frozen=True)
class FrobeniusAlgebra:
    dim: int
    mult: Tensor
    unit: Tensor
    trace: Tensor
    name: str = field(default="", compare=False)

    def product(self, x: Tensor, y: Tensor) -> Tensor:
        """Multiply two elements given in coordinates."""
        return contract(contract(x, self.mult, [(0, 0)]), y, [(0, 0)])

    def basis(self, i: int) -> Tensor:
        return Tensor.from_sparse((self.dim,), {(i,): ONE})

    def tr(self, x: Tensor) -> Fraction:
        return contract(x, self.trace, [(0, 0)]).value()

    def to_json(self) -> dict[str, Any]:
        return {
            "dim": self.dim,
            "mult": self.mult.to_json(),
            "unit": self.unit.to_json(),
            "trace": self.trace.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "FrobeniusAlgebra":
        n = int(data["dim"])
        return cls(
            dim=n,
            mult=Tensor.from_nested(data["mult"]),
            unit=Tensor.from_nested(data["unit"]),
            trace=Tensor.from_nested(data["trace"]),
            name=data.get("name", ""),
        )


@dataclass(frozen=True)
class PairingData:
    g: Tensor
    g_inv: Tensor


def _shape_problem(a: FrobeniusAlgebra) -> Optional[str]:
    n = a.dim
    if n <= 0:
        return "dim must be positive"
    if a.mult.shape != (n, n, n):
        return f"mult has shape {a.mult.shape}, expected {(n, n, n)}"
    if a.unit.shape != (n,):
        return f"unit has shape {a.unit.shape}, expected {(n,)}"
    if a.trace.shape != (n,):
        return f"trace has shape {a.trace.shape}, expected {(n,)}"
    return None


def check_associative_unital(dim: int, mult: Tensor, unit: Tensor) -> Report:
    """Associativity and two-sided unit law for structure constants."""
    n = dim
    c = mult
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for m in range(n):
                    lhs = sum((c[i, j, l] * c[l, k, m] for l in range(n)), ZERO)
                    rhs = sum((c[j, k, l] * c[i, l, m] for l in range(n)), ZERO)
                    if lhs != rhs:
                        return Report.fail("associativity", (i, j, k, m),
                                           f"(e{i} e{j}) e{k} and e{i} (e{j} e{k}) differ at e{m}")
    for j in range(n):
        for k in range(n):
            want = ONE if j == k else ZERO
            left = sum((unit[i] * c[i, j, k] for i in range(n)), ZERO)
            right = sum((unit[i] * c[j, i, k] for i in range(n)), ZERO)
            if left != want or right != want:
                return Report.fail("unit", (j, k), f"1 * e{j} has coefficient {left} at e{k}")
    return Report.ok()


def validate_frobenius(a: FrobeniusAlgebra) -> Report:
    """Check associativity, commutativity, the unit law and nondegeneracy, in that order."""
    problem = _shape_problem(a)
    if problem:
        return Report.fail("shape", (), problem)
    n = a.dim
    c = a.mult
    base = check_associative_unital(n, c, a.unit)
    if not base.passed and base.axiom == "associativity":
        return base
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                if c[i, j, k] != c[j, i, k]:
                    return Report.fail("commutativity", (i, j, k),
                                       f"e{i} e{j} != e{j} e{i} at e{k}")
    if not base.passed:
        return base
    g = pairing_matrix(a)
    r = rank(g)
    if r != n:
        return Report.fail("nondegeneracy", (r,), f"pairing matrix has rank {r} < {n}")
    return Report.ok()


def pairing_matrix(a: FrobeniusAlgebra) -> Tensor:
    """``g[i][j] = tr(e_i e_j)``."""
    return contract(a.mult, a.trace, [(2, 0)])


def pairing(a: FrobeniusAlgebra) -> PairingData:
    g = pairing_matrix(a)
    return PairingData(g=g, g_inv=invert(g))


def comultiplication(a: FrobeniusAlgebra) -> Tensor:
    """``delta[k][i][j]``: coefficient of ``e_i (x) e_j`` in the coproduct of ``e_k``.

    Built from the copairing: delta(x) = sum_{j,l} g^{jl} (x e_j) (x) e_l.
    """
    g_inv = pairing(a).g_inv
    # mult[k][j'][i] * g_inv[j'][j]  ->  axes (k, i, j)
    return contract(a.mult, g_inv, [(1, 0)])


def handle_element(a: FrobeniusAlgebra) -> Tensor:
    """``h = m(delta(1)) = sum_{ij} g^{ij} e_i e_j``."""
    g_inv = pairing(a).g_inv
    return contract(g_inv, a.mult, [(0, 0), (1, 1)])


def power(a: FrobeniusAlgebra, x: Tensor, k: int) -> Tensor:
    if k < 0:
        raise ValueError("negative power")
    out = a.unit
    for _ in range(k):
        out = a.product(out, x)
    return out


def surface_invariant(a: FrobeniusAlgebra, genus: int) -> Fraction:
    """Value of the theory on the closed genus-``genus`` surface: tr(h^g)."""
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    h = handle_element(a)
    return a.tr(power(a, h, genus))


def multiplication_matrix(a: FrobeniusAlgebra) -> Tensor:
    """``m`` as an ``(n, n*n)`` matrix, input index ``i*n + j`` for ``e_i (x) e_j``."""
    n = a.dim
    return a.mult.transpose((2, 0, 1)).reshape((n, n * n))


def swap_matrix(n: int) -> Tensor:
    return Tensor.from_sparse((n * n, n * n),
                              {(j * n + i, i * n + j): ONE for i in range(n) for j in range(n)})


def generator_tensor(a: FrobeniusAlgebra, gen: str) -> Tensor:
    """Matrix ``(n^out, n^in)`` of the theory on an elementary bordism."""
    n = a.dim
    if gen == "cup":
        return a.unit.reshape((n, 1))
    if gen == "cap":
        return a.trace.reshape((1, n))
    if gen == "pants":
        return multiplication_matrix(a)
    if gen == "copants":
        return comultiplication(a).transpose((1, 2, 0)).reshape((n * n, n))
    if gen == "id":
        return identity(n)
    if gen == "swap":
        return swap_matrix(n)
    raise ValueError(f"unknown generator {gen!r}; expected one of {', '.join(GENERATORS)}")


# -- constructions ------------------------------------------------------------

def from_table(dim: int, products: dict, unit, trace, name: str = "") -> FrobeniusAlgebra:
    """Build from sparse products ``{(i, j): {k: coeff}}``."""
    items = {}
    for (i, j), terms in products.items():
        for k, v in terms.items():
            items[(i, j, k)] = as_scalar(v)
    return FrobeniusAlgebra(dim, Tensor.from_sparse((dim, dim, dim), items),
                            vector(unit), vector(trace), name)


def ground_field(tr1=1) -> FrobeniusAlgebra:
    return from_table(1, {(0, 0): {0: 1}}, [1], [tr1], "Q")


def truncated_polynomial(m: int, trace=None, name: str = "") -> FrobeniusAlgebra:
    """Q[x]/x^m in the basis 1, x, ..., x^{m-1}; default trace picks out x^{m-1}."""
    if trace is None:
        trace = [0] * (m - 1) + [1]
    products = {(i, j): {i + j: 1} for i in range(m) for j in range(m) if i + j < m}
    return from_table(m, products, [1] + [0] * (m - 1), trace, name or f"Q[x]/x^{m}")


def dual_numbers(trace=(0, 1)) -> FrobeniusAlgebra:
    return truncated_polynomial(2, list(trace), "Q[x]/x^2")


def cyclic_group_algebra(m: int, trace=None) -> FrobeniusAlgebra:
    """Q[Z/m], basis the group elements; default trace reads off the identity coefficient."""
    if trace is None:
        trace = [1] + [0] * (m - 1)
    products = {(i, j): {(i + j) % m: 1} for i in range(m) for j in range(m)}
    return from_table(m, products, [1] + [0] * (m - 1), trace, f"Q[Z/{m}]")


def product_algebra(weights) -> FrobeniusAlgebra:
    """Q x ... x Q with idempotent basis and trace values ``weights`` (all nonzero)."""
    n = len(weights)
    products = {(i, i): {i: 1} for i in range(n)}
    return from_table(n, products, [1] * n, list(weights), f"Q^{n}")


def direct_sum(a: FrobeniusAlgebra, b: FrobeniusAlgebra) -> FrobeniusAlgebra:
    n, m = a.dim, b.dim
    items = dict(a.mult.nonzero)
    for (i, j, k), v in b.mult.nonzero.items():
        items[(n + i, n + j, n + k)] = v
    return FrobeniusAlgebra(
        n + m,
        Tensor.from_sparse((n + m,) * 3, items),
        Tensor((n + m,), a.unit.entries + b.unit.entries),
        Tensor((n + m,), a.trace.entries + b.trace.entries),
        f"{a.name}+{b.name}",
    )


def change_basis(a: FrobeniusAlgebra, p: Tensor) -> FrobeniusAlgebra:
    """Re-express ``a`` in the basis ``f_i = sum_k p[i][k] e_k``."""
    q = invert(p)
    # c'[i][j][k] = p[i][a] p[j][b] c[a][b][c] q[c][k]
    t = contract(p, a.mult, [(1, 0)])            # (i, b, c)
    t = contract(t, p, [(1, 1)])                 # (i, c, j)
    t = contract(t, q, [(1, 0)])                 # (i, j, k)
    unit = contract(a.unit, q, [(0, 0)])
    trace = matmul(p, a.trace)
    return FrobeniusAlgebra(a.dim, t, unit, trace, f"{a.name}'")


def random_invertible(rng: random.Random, n: int, lo: int = -2, hi: int = 2) -> Tensor:
    while True:
        m = Tensor.from_flat((n, n), [rng.randint(lo, hi) for _ in range(n * n)])
        if rank(m) == n:
            return m


def random_frobenius(rng: random.Random, max_dim: int = 3) -> FrobeniusAlgebra:
    """A validated commutative Frobenius algebra with a random trace and a random basis."""
    while True:
        kind = rng.choice(["poly", "product", "group", "sum"])
        if kind == "poly":
            m = rng.randint(1, max_dim)
            base = truncated_polynomial(m, [rng.randint(-3, 3) for _ in range(m)])
        elif kind == "product":
            m = rng.randint(1, max_dim)
            base = product_algebra([rng.randint(-3, 3) for _ in range(m)])
        elif kind == "group":
            m = rng.randint(1, max_dim)
            base = cyclic_group_algebra(m, [rng.randint(-3, 3) for _ in range(m)])
        else:
            if max_dim < 2:
                continue
            left = truncated_polynomial(rng.randint(1, max_dim - 1))
            right = product_algebra([rng.choice([-2, -1, 1, 2])])
            base = direct_sum(left, right)
            base = FrobeniusAlgebra(base.dim, base.mult, base.unit,
                                    vector([rng.randint(-3, 3) for _ in range(base.dim)]))
        if base.dim > max_dim or not validate_frobenius(base).passed:
            continue
        out = change_basis(base, random_invertible(rng, base.dim))
        return FrobeniusAlgebra(out.dim, out.mult, out.unit, out.trace, f"random({base.name})")


def standard_algebras() -> list[FrobeniusAlgebra]:
    """The fixed corpus used across the test and selftest suites."""
    return [
        ground_field(),
        dual_numbers(),
        cyclic_group_algebra(2),
        truncated_polynomial(3),
        cyclic_group_algebra(3),
        product_algebra([1, 2, -3]),
    ]


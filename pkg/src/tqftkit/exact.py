"""Exact rational scalars and dense tensors.

Every evaluator in the package bottoms out here. Scalars are
:class:`fractions.Fraction`; tensors are immutable, dense, row-major.
Products and eliminations walk only the nonzero entries, which keeps the
Hochschild matrices (up to 256 x 1024) tractable without giving up exactness.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

Scalar = Fraction
ScalarLike = Union[int, str, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


class ShapeError(ValueError):
    pass


class SingularMatrix(ArithmeticError):
    pass


def as_scalar(x: ScalarLike) -> Fraction:
    """Coerce an int, a ``"p/q"`` string or a Fraction to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def format_scalar(x: Fraction) -> str:
    # Fraction.__str__ already gives "p" or "p/q" in lowest terms
    return str(x)


def _prod(xs: Iterable[int]) -> int:
    return math.prod(xs)


def _strides(shape: Sequence[int]) -> tuple[int, ...]:
    out = []
    acc = 1
    for size in reversed(shape):
        out.append(acc)
        acc *= size
    return tuple(reversed(out))


@dataclass(frozen=True, eq=True)
class Tensor:
    shape: tuple[int, ...]
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if any((not isinstance(s, int)) or s <= 0 for s in self.shape):
            raise ShapeError(f"axis sizes must be positive integers, got {self.shape}")
        if len(self.entries) != _prod(self.shape):
            raise ShapeError(
                f"shape {self.shape} needs {_prod(self.shape)} entries, got {len(self.entries)}"
            )

    # -- construction -----------------------------------------------------

    @classmethod
    def from_nested(cls, data) -> "Tensor":
        """Build from nested lists; a bare scalar gives a rank-0 tensor."""
        shape: list[int] = []
        probe = data
        while isinstance(probe, (list, tuple)):
            if not probe:
                raise ShapeError("empty axis in nested data")
            shape.append(len(probe))
            probe = probe[0]
        flat: list[Fraction] = []

        def walk(node, depth):
            if depth == len(shape):
                if isinstance(node, (list, tuple)):
                    raise ShapeError("ragged nested data")
                flat.append(as_scalar(node))
                return
            if not isinstance(node, (list, tuple)) or len(node) != shape[depth]:
                raise ShapeError("ragged nested data")
            for child in node:
                walk(child, depth + 1)

        walk(data, 0)
        return cls(tuple(shape), tuple(flat))

    @classmethod
    def from_flat(cls, shape: Sequence[int], entries: Iterable[ScalarLike]) -> "Tensor":
        return cls(tuple(shape), tuple(as_scalar(e) for e in entries))

    @classmethod
    def zeros(cls, shape: Sequence[int]) -> "Tensor":
        return cls(tuple(shape), (ZERO,) * _prod(shape))

    @classmethod
    def from_sparse(cls, shape: Sequence[int], items: dict) -> "Tensor":
        """Dense tensor from ``{index_tuple: value}``; missing entries are zero."""
        shape = tuple(shape)
        strides = _strides(shape)
        flat = [ZERO] * _prod(shape)
        for idx, value in items.items():
            if value:
                if not isinstance(value, Fraction):
                    value = Fraction(value)
                flat[sum(i * s for i, s in zip(idx, strides))] = value
        return cls(shape, tuple(flat))

    @classmethod
    def scalar(cls, value: ScalarLike) -> "Tensor":
        return cls((), (as_scalar(value),))

    # -- access -----------------------------------------------------------

    @property
    def ndim(self) -> int:
        return len(self.shape)

    @cached_property
    def strides(self) -> tuple[int, ...]:
        return _strides(self.shape)

    def __getitem__(self, idx) -> Fraction:
        if not isinstance(idx, tuple):
            idx = (idx,)
        if len(idx) != self.ndim:
            raise IndexError(f"need {self.ndim} indices, got {len(idx)}")
        for i, size in zip(idx, self.shape):
            if not 0 <= i < size:
                raise IndexError(f"index {idx} out of range for shape {self.shape}")
        return self.entries[sum(i * s for i, s in zip(idx, self.strides))]

    def value(self) -> Fraction:
        """The single entry of a rank-0 or all-ones-shape tensor."""
        if len(self.entries) != 1:
            raise ShapeError(f"tensor of shape {self.shape} is not a scalar")
        return self.entries[0]

    def indices(self):
        return itertools.product(*(range(s) for s in self.shape))

    @cached_property
    def nonzero(self) -> dict[tuple[int, ...], Fraction]:
        out = {}
        for idx, v in zip(self.indices(), self.entries):
            if v:
                out[idx] = v
        return out

    @cached_property
    def _rows(self) -> list[dict[int, Fraction]]:
        if self.ndim != 2:
            raise ShapeError("row view needs a matrix")
        m, n = self.shape
        rows: list[dict[int, Fraction]] = []
        ents = self.entries
        for i in range(m):
            base = i * n
            rows.append({j: ents[base + j] for j in range(n) if ents[base + j]})
        return rows

    def to_nested(self):
        if self.ndim == 0:
            return self.entries[0]

        def build(offset, axis):
            if axis == self.ndim - 1:
                return list(self.entries[offset:offset + self.shape[axis]])
            step = self.strides[axis]
            return [build(offset + k * step, axis + 1) for k in range(self.shape[axis])]

        return build(0, 0)

    def to_json(self):
        """Nested lists of ``"p/q"`` strings."""
        def conv(node):
            if isinstance(node, list):
                return [conv(c) for c in node]
            return format_scalar(node)

        return conv(self.to_nested())

    # -- elementwise ------------------------------------------------------

    def _check_same(self, other: "Tensor"):
        if not isinstance(other, Tensor) or other.shape != self.shape:
            raise ShapeError("elementwise operation needs equal shapes")

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check_same(other)
        return Tensor(self.shape, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Tensor") -> "Tensor":
        self._check_same(other)
        return Tensor(self.shape, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Tensor":
        return Tensor(self.shape, tuple(-a for a in self.entries))

    def scale(self, c: ScalarLike) -> "Tensor":
        c = as_scalar(c)
        return Tensor(self.shape, tuple(c * a for a in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __matmul__(self, other: "Tensor") -> "Tensor":
        return matmul(self, other)

    # -- reshaping --------------------------------------------------------

    def reshape(self, shape: Sequence[int]) -> "Tensor":
        return Tensor(tuple(shape), self.entries)

    def transpose(self, axes: Sequence[int] | None = None) -> "Tensor":
        if axes is None:
            axes = tuple(reversed(range(self.ndim)))
        axes = tuple(axes)
        if sorted(axes) != list(range(self.ndim)):
            raise ShapeError(f"{axes} is not a permutation of the axes")
        new_shape = tuple(self.shape[a] for a in axes)
        src = self.strides
        flat = [self.entries[sum(idx[k] * src[axes[k]] for k in range(self.ndim))]
                for idx in itertools.product(*(range(s) for s in new_shape))]
        return Tensor(new_shape, tuple(flat))

    @property
    def T(self) -> "Tensor":
        return self.transpose()

    def __repr__(self):
        return f"Tensor(shape={self.shape}, {self.to_json()!r})"


def identity(n: int) -> Tensor:
    return Tensor.from_sparse((n, n), {(i, i): ONE for i in range(n)})


def vector(values: Iterable[ScalarLike]) -> Tensor:
    vals = tuple(as_scalar(v) for v in values)
    return Tensor((len(vals),), vals)


def matrix(rows) -> Tensor:
    t = Tensor.from_nested(rows)
    if t.ndim != 2:
        raise ShapeError("matrix() needs a two-level nested list")
    return t


def _require_matrix(m: Tensor, what: str = "matrix"):
    if m.ndim != 2:
        raise ShapeError(f"{what} must have rank 2, got shape {m.shape}")


def matmul(a: Tensor, b: Tensor) -> Tensor:
    """Matrix product ``a @ b``; ``b`` may be a vector."""
    _require_matrix(a)
    if b.ndim == 1:
        return matmul(a, b.reshape((b.shape[0], 1))).reshape((a.shape[0],))
    _require_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    m, n = a.shape[0], b.shape[1]
    brows = b._rows
    flat = [ZERO] * (m * n)
    for i, row in enumerate(a._rows):
        acc: dict[int, Fraction] = defaultdict(Fraction)
        for k, av in row.items():
            for j, bv in brows[k].items():
                acc[j] += av * bv
        base = i * n
        for j, v in acc.items():
            flat[base + j] = v
    return Tensor((m, n), tuple(flat))


def contract(a: Tensor, b: Tensor, pairs: Sequence[tuple[int, int]]) -> Tensor:
    """Sum over paired axes ``(axis of a, axis of b)``.

    Free axes of ``a`` come first in the result, then free axes of ``b``,
    each group in its original order.
    """
    pairs = [tuple(p) for p in pairs]
    a_axes = [p[0] for p in pairs]
    b_axes = [p[1] for p in pairs]
    if len(set(a_axes)) != len(a_axes) or len(set(b_axes)) != len(b_axes):
        raise ShapeError("an axis is paired twice")
    for i, j in pairs:
        if not (0 <= i < a.ndim and 0 <= j < b.ndim):
            raise ShapeError(f"axis pair {(i, j)} out of range")
        if a.shape[i] != b.shape[j]:
            raise ShapeError(f"paired axes {(i, j)} have sizes {a.shape[i]} and {b.shape[j]}")
    a_free = [k for k in range(a.ndim) if k not in a_axes]
    b_free = [k for k in range(b.ndim) if k not in b_axes]

    groups: dict[tuple, list] = defaultdict(list)
    for idx, v in b.nonzero.items():
        groups[tuple(idx[j] for j in b_axes)].append((tuple(idx[j] for j in b_free), v))

    acc: dict[tuple, Fraction] = defaultdict(Fraction)
    for idx, av in a.nonzero.items():
        hits = groups.get(tuple(idx[i] for i in a_axes))
        if not hits:
            continue
        head = tuple(idx[i] for i in a_free)
        for tail, bv in hits:
            acc[head + tail] += av * bv
    shape = tuple(a.shape[k] for k in a_free) + tuple(b.shape[k] for k in b_free)
    return Tensor.from_sparse(shape, acc)


def trace_axes(t: Tensor, i: int, j: int) -> Tensor:
    """Contract two axes of the same tensor with each other."""
    if i == j or not (0 <= i < t.ndim and 0 <= j < t.ndim):
        raise ShapeError(f"bad axis pair {(i, j)} for shape {t.shape}")
    if t.shape[i] != t.shape[j]:
        raise ShapeError("traced axes differ in size")
    keep = [k for k in range(t.ndim) if k not in (i, j)]
    acc: dict[tuple, Fraction] = defaultdict(Fraction)
    for idx, v in t.nonzero.items():
        if idx[i] == idx[j]:
            acc[tuple(idx[k] for k in keep)] += v
    return Tensor.from_sparse(tuple(t.shape[k] for k in keep), acc)


def outer(a: Tensor, b: Tensor) -> Tensor:
    return contract(a, b, [])


def kron(a: Tensor, b: Tensor) -> Tensor:
    """Kronecker product of matrices, ``a``-index major."""
    _require_matrix(a, "kron argument")
    _require_matrix(b, "kron argument")
    m1, n1 = a.shape
    m2, n2 = b.shape
    items = {}
    for (i1, j1), av in a.nonzero.items():
        for (i2, j2), bv in b.nonzero.items():
            items[(i1 * m2 + i2, j1 * n2 + j2)] = av * bv
    return Tensor.from_sparse((m1 * m2, n1 * n2), items)


def _integer_rows(m: Tensor) -> list[dict[int, int]]:
    rows = []
    for row in m._rows:
        if not row:
            rows.append({})
            continue
        den = math.lcm(*(v.denominator for v in row.values()))
        rows.append({j: int(v * den) for j, v in row.items()})
    return rows


def rank(m: Tensor) -> int:
    """Rank over Q by fraction-free elimination.

    Rows are scaled to integers; for each column left to right the pivot is
    the lowest-indexed remaining row with a nonzero entry there. Eliminated
    rows are divided by their content so entries stay small.
    """
    _require_matrix(m, "rank argument")
    rows = [r for r in _integer_rows(m) if r]
    r = 0
    # column -> rows (by position in `active`) with a nonzero there is rebuilt lazily
    active = rows
    while active:
        col = min(min(row) for row in active)
        pivot_pos = next(k for k, row in enumerate(active) if col in row)
        pivot = active[pivot_pos]
        p = pivot[col]
        nxt = []
        for k, row in enumerate(active):
            if k == pivot_pos:
                continue
            c = row.get(col)
            if c is None:
                nxt.append(row)
                continue
            new = {}
            keys = set(row) | set(pivot)
            for j in keys:
                v = p * row.get(j, 0) - c * pivot.get(j, 0)
                if v:
                    new[j] = v
            if new:
                g = math.gcd(*new.values())
                if g > 1:
                    new = {j: v // g for j, v in new.items()}
                nxt.append(new)
        active = nxt
        r += 1
    return r


def invert(m: Tensor) -> Tensor:
    """Exact inverse by Gauss-Jordan elimination, first-nonzero pivoting."""
    _require_matrix(m, "invert argument")
    n, k = m.shape
    if n != k:
        raise ShapeError(f"cannot invert non-square {m.shape}")
    a = [list(m.entries[i * n:(i + 1) * n]) for i in range(n)]
    inv = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix(f"matrix of shape {m.shape} has rank {rank(m)} < {n}")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return Tensor((n, n), tuple(x for row in inv for x in row))


def direct_sum_matrix(a: Tensor, b: Tensor) -> Tensor:
    _require_matrix(a)
    _require_matrix(b)
    items = dict(a.nonzero)
    m, n = a.shape
    for (i, j), v in b.nonzero.items():
        items[(m + i, n + j)] = v
    return Tensor.from_sparse((m + b.shape[0], n + b.shape[1]), items)

"""Sampled multivariate functions, boxes and mixed differences.

All variation functionals in this package work on a :class:`GridFunction`:
a tensor of values together with one strictly increasing coordinate array
per axis.  Intervals are index pairs ``(a, b)`` with ``a < b`` and the
function is always evaluated at the endpoints.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Mapping, Sequence

import numpy as np

TWO_PI = 2.0 * np.pi


class GridError(ValueError):
    """Invalid grid, box or index set."""


@dataclass(frozen=True)
class GridFunction:
    """A real function sampled on a tensor-product grid.

    Parameters
    ----------
    axes : sequence of 1-D arrays
        Strictly increasing coordinates, one array per axis, each with at
        least two points.
    values : ndarray
        Values with shape ``tuple(len(a) for a in axes)``.
    """

    axes: tuple
    values: np.ndarray

    def __post_init__(self):
        axes = tuple(np.asarray(a, dtype=float).copy() for a in self.axes)
        values = np.array(self.values, dtype=float)
        if not axes:
            raise GridError("a grid function needs at least one axis")
        for k, a in enumerate(axes):
            if a.ndim != 1 or a.size < 2:
                raise GridError(f"axis {k} must be 1-D with >= 2 points")
            if not np.all(np.diff(a) > 0):
                raise GridError(f"axis {k} coordinates are not strictly increasing")
        shape = tuple(a.size for a in axes)
        if values.shape != shape:
            raise GridError(f"values shape {values.shape} != axes shape {shape}")
        for a in axes:
            a.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "values", values)

    @property
    def dim(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> tuple:
        return self.values.shape

    @classmethod
    def from_values(cls, values, lo: float = 0.0, hi: float = 1.0) -> "GridFunction":
        """Wrap a tensor on equispaced axes spanning ``[lo, hi]``."""
        values = np.asarray(values, dtype=float)
        axes = tuple(np.linspace(lo, hi, n) for n in values.shape)
        return cls(axes, values)

    def scaled(self, c: float) -> "GridFunction":
        return GridFunction(self.axes, c * self.values)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "axes": [a.tolist() for a in self.axes],
            "values": self.values.tolist(),
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "GridFunction":
        f = cls(tuple(doc["axes"]), np.asarray(doc["values"], dtype=float))
        if "dim" in doc and int(doc["dim"]) != f.dim:
            raise GridError(f"declared dim {doc['dim']} != {f.dim}")
        return f

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh)

    @classmethod
    def load(cls, path) -> "GridFunction":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


@dataclass(frozen=True)
class FunctionSource:
    """An analytic function on ``R^d`` evaluated with numpy broadcasting.

    ``evaluator(*coords)`` receives ``dim`` broadcastable arrays and returns
    an array of the broadcast shape.
    """

    evaluator: Callable[..., np.ndarray]
    dim: int
    periodic: bool = True
    name: str = "source"

    def __call__(self, *coords) -> np.ndarray:
        if len(coords) != self.dim:
            raise GridError(f"{self.name} expects {self.dim} coordinates, got {len(coords)}")
        arrays = np.broadcast_arrays(*[np.asarray(c, dtype=float) for c in coords])
        if self.periodic:
            arrays = [np.mod(c, TWO_PI) for c in arrays]
        return np.asarray(self.evaluator(*arrays), dtype=float) * np.ones(arrays[0].shape)

    def at(self, point: Sequence[float]) -> float:
        return float(self(*[np.float64(p) for p in point]))

    def scaled(self, c: float) -> "FunctionSource":
        ev = self.evaluator
        return FunctionSource(lambda *x: c * ev(*x), self.dim, self.periodic,
                              f"{c!r}*{self.name}")


def sample(src: FunctionSource, axes: Sequence[np.ndarray]) -> GridFunction:
    """Evaluate ``src`` on the tensor grid spanned by ``axes``."""
    axes = tuple(np.asarray(a, dtype=float) for a in axes)
    if len(axes) != src.dim:
        raise GridError(f"{len(axes)} axes given for a {src.dim}-dimensional source")
    mesh = np.meshgrid(*axes, indexing="ij")
    return GridFunction(axes, src(*mesh))


@dataclass(frozen=True)
class IndexSet:
    """A subset ``alpha`` of the axes ``{0, ..., d-1}`` (zero-based)."""

    alpha: tuple
    dim: int

    def __post_init__(self):
        alpha = tuple(sorted(set(int(j) for j in self.alpha)))
        if any(j < 0 or j >= self.dim for j in alpha):
            raise GridError(f"index set {alpha} not inside range({self.dim})")
        object.__setattr__(self, "alpha", alpha)

    @property
    def complement(self) -> tuple:
        return tuple(j for j in range(self.dim) if j not in self.alpha)

    def __len__(self) -> int:
        return len(self.alpha)

    @classmethod
    def all_nonempty(cls, dim: int) -> list:
        out = []
        for mask in range(1, 2 ** dim):
            out.append(cls(tuple(j for j in range(dim) if mask >> j & 1), dim))
        return out


@dataclass(frozen=True)
class Box:
    """Index intervals on some axes, fixed indices on the others.

    ``intervals`` maps axis -> ``(a, b)`` with ``a < b``; ``fixed`` maps every
    remaining axis to a grid index.
    """

    intervals: Mapping[int, tuple]
    fixed: Mapping[int, int] = field(default_factory=dict)

    def validate(self, f: GridFunction) -> None:
        if not self.intervals:
            raise GridError("box has no interval axes")
        covered = set(self.intervals) | set(self.fixed)
        if covered != set(range(f.dim)) or set(self.intervals) & set(self.fixed):
            raise GridError("box must assign every axis exactly once")
        for k, (a, b) in self.intervals.items():
            n = f.shape[k]
            if not (0 <= a < b < n):
                raise GridError(f"interval {(a, b)} invalid on axis {k} of size {n}")
        for k, i in self.fixed.items():
            if not (0 <= i < f.shape[k]):
                raise GridError(f"fixed index {i} invalid on axis {k}")


def _point(box: Box, dim: int, chosen: Mapping[int, int]) -> tuple:
    return tuple(chosen[k] if k in chosen else box.fixed[k] for k in range(dim))


def mixed_difference(f: GridFunction, box: Box) -> float:
    """Recursive mixed difference of ``f`` over ``box``.

    The last interval axis is peeled first:
    ``f(J1 x ... x Jp) = f(J1 x ... x J(p-1), b_p) - f(J1 x ... x J(p-1), a_p)``.
    """
    box.validate(f)
    axes = sorted(box.intervals)

    def rec(p: int, chosen: dict) -> float:
        if p == 0:
            return float(f.values[_point(box, f.dim, chosen)])
        k = axes[p - 1]
        a, b = box.intervals[k]
        return rec(p - 1, {**chosen, k: b}) - rec(p - 1, {**chosen, k: a})

    return rec(len(axes), {})


def corner_sum(f: GridFunction, box: Box) -> float:
    """Alternating corner sum ``sum (-1)^{#lower} f(corner)``.

    Signed corner values are reduced pairwise along the interval axes in
    ascending axis order, which reproduces :func:`mixed_difference` bit for bit.
    """
    box.validate(f)
    axes = sorted(box.intervals)
    p = len(axes)
    signed = np.empty((2,) * p)
    for bits in product((0, 1), repeat=p):
        chosen = {k: box.intervals[k][bit] for k, bit in zip(axes, bits)}
        n_lower = p - sum(bits)
        signed[bits] = (-1.0) ** n_lower * f.values[_point(box, f.dim, chosen)]
    for _ in range(p):
        # axis 0 of the remaining tensor is always the lowest unreduced grid axis
        signed = signed[1] + signed[0]
    return float(signed)


def restrict(f: GridFunction, alpha: IndexSet, fixed: Mapping[int, int]) -> GridFunction:
    """Slice ``f`` to the axes in ``alpha`` with the other axes held at ``fixed``."""
    if alpha.dim != f.dim:
        raise GridError("index set dimension does not match the grid")
    if not alpha.alpha:
        raise GridError("cannot restrict to an empty index set")
    if set(fixed) != set(alpha.complement):
        raise GridError(f"fixed indices must cover exactly axes {alpha.complement}")
    idx = []
    for k in range(f.dim):
        if k in fixed:
            i = int(fixed[k])
            if not 0 <= i < f.shape[k]:
                raise GridError(f"fixed index {i} invalid on axis {k}")
            idx.append(i)
        else:
            idx.append(slice(None))
    return GridFunction(tuple(f.axes[k] for k in alpha.alpha), f.values[tuple(idx)])

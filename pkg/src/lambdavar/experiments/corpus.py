"""Seeded random grid functions for the studies."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..grid import GridFunction

KINDS = ("cellwise-uniform", "separable", "jump-plus-smooth")


@dataclass(frozen=True)
class RandomFunctionSpec:
    kind: str
    seed: int
    shape: tuple
    amplitude: float = 1.0

    def build(self) -> GridFunction:
        return random_grid(self.kind, self.seed, self.shape, self.amplitude)


def random_grid(kind: str, seed: int, shape, amplitude: float = 1.0) -> GridFunction:
    """Same ``(kind, seed, shape, amplitude)`` always gives the same grid."""
    rng = np.random.default_rng([int(seed), KINDS.index(kind)])
    shape = tuple(int(n) for n in shape)
    axes = [np.linspace(0.0, 1.0, n) for n in shape]
    if kind == "cellwise-uniform":
        vals = rng.uniform(-1.0, 1.0, shape)
    elif kind == "separable":
        vals = np.zeros(shape)
        for _ in range(2):
            term = np.ones(())
            for n in shape:
                term = np.multiply.outer(term, rng.uniform(-1.0, 1.0, n))
            vals = vals + term
    elif kind == "jump-plus-smooth":
        mesh = np.meshgrid(*axes, indexing="ij")
        cut = rng.uniform(0.2, 0.8)
        freq = rng.uniform(0.5, 3.0, len(shape))
        vals = np.where(mesh[0] >= cut, 1.0, -1.0) * rng.uniform(0.2, 1.0)
        vals = vals + np.sin(sum(k * x for k, x in zip(freq, mesh)) * np.pi)
    else:
        raise ValueError(f"unknown kind {kind!r}; choose from {KINDS}")
    return GridFunction(tuple(axes), amplitude * vals)


def corpus(seeds, shape, kinds=KINDS, amplitude: float = 1.0) -> list:
    """Specs cycling through ``kinds``, one per seed, in seed order."""
    return [RandomFunctionSpec(kinds[i % len(kinds)], int(s), tuple(shape), amplitude)
            for i, s in enumerate(seeds)]

"""Named analytic test functions on the torus."""

from __future__ import annotations

import numpy as np

from .grid import TWO_PI, FunctionSource

_ZERO = 1e-9


def constant(d: int, c: float = 1.0) -> FunctionSource:
    return FunctionSource(lambda *x: np.full(np.shape(x[0]), float(c)), d, True, f"constant({c:g})")


def square_wave() -> FunctionSource:
    """``+1`` on ``(0, pi)``, ``-1`` on ``(pi, 2 pi)`` and the midpoint 0 at the jumps."""

    def ev(x):
        s = np.sin(x)
        return np.where(np.abs(s) < _ZERO, 0.0, np.sign(s))

    return FunctionSource(ev, 1, True, "square")


def interval_indicator(x, length: float = np.pi):
    """``1`` on ``(0, length)``, ``0`` on ``(length, 2 pi)``, ``1/2`` at both jumps."""
    x = np.mod(x, TWO_PI)
    at_jump = (np.minimum(x, TWO_PI - x) < _ZERO) | (np.abs(x - length) < _ZERO)
    return np.where(at_jump, 0.5, ((x > 0) & (x < length)).astype(float))


def quadrant_jump(d: int = 2, extent=np.pi, smooth: float = 0.0) -> FunctionSource:
    """Indicator of the box ``prod_s (0, extent_s)`` plus ``smooth * prod_s cos(x_s)``.

    Locally at the origin this is the indicator of the positive quadrant, so
    the origin is regular with ``f* = 2^-d + smooth``.
    """
    extent = np.broadcast_to(np.asarray(extent, dtype=float), (d,))

    def ev(*x):
        out = np.ones(np.shape(x[0]))
        for xs, L in zip(x, extent):
            out = out * interval_indicator(xs, L)
        if smooth:
            out = out + smooth * np.prod([np.cos(xs) for xs in x], axis=0)
        return out

    ext = ",".join(f"{L:g}" for L in extent)
    return FunctionSource(ev, d, True, f"quadrant_jump(d={d},extent=({ext}),smooth={smooth:g})")


def smooth_bump(d: int = 2) -> FunctionSource:
    """``exp(sum_s cos x_s) sin(sum_s x_s) + 1``: entire, periodic."""

    def ev(*x):
        c = np.sum([np.cos(xs) for xs in x], axis=0)
        t = np.sum(x, axis=0)
        return np.exp(c) * np.sin(t) + 1.0

    return FunctionSource(ev, d, True, f"smooth_bump(d={d})")


def sin_product(d: int = 2) -> FunctionSource:
    return FunctionSource(lambda *x: np.prod([np.sin(xs) for xs in x], axis=0), d, True,
                          f"sin_product(d={d})")


def jump_plus_smooth(d: int = 2, jump_at: float = np.pi, amp: float = 1.0) -> FunctionSource:
    """``amp * sign(sin(x_1 - jump_at + pi)) * (2 + cos x_2 ...)``, jump along ``x_1 = jump_at``."""

    def ev(*x):
        s = np.sin(x[0] - jump_at + np.pi)
        sgn = np.where(np.abs(s) < _ZERO, 0.0, np.sign(s))
        rest = np.ones(np.shape(x[0]))
        for xs in x[1:]:
            rest = rest * (2.0 + np.cos(xs))
        return amp * sgn * rest

    return FunctionSource(ev, d, True, f"jump_plus_smooth(d={d})")


def by_name(name: str, d: int = 2) -> FunctionSource:
    table = {
        "constant": lambda: constant(d),
        "square": square_wave,
        "quadrant_jump": lambda: quadrant_jump(d),
        "smooth": lambda: smooth_bump(d),
        "sin_product": lambda: sin_product(d),
        "jump_plus_smooth": lambda: jump_plus_smooth(d),
    }
    if name not in table:
        raise KeyError(f"unknown source {name!r}; choose from {sorted(table)}")
    return table[name]()

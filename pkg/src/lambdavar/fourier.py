"""Fourier coefficients, Dirichlet kernels and rectangular partial sums on the torus.

Coefficients are indexed by the lattice ``prod_s [-N_s, N_s]`` and stored
with ``n = -N_s`` at array index 0.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.fft

from .grid import TWO_PI, FunctionSource


class FourierError(ValueError):
    pass


@dataclass(frozen=True)
class CoeffTensor:
    """Complex coefficients ``fhat(n)`` on ``prod_s [-N_s, N_s]``."""

    N: tuple
    coeffs: np.ndarray
    oversampling: tuple = ()
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        N = tuple(int(n) for n in self.N)
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != tuple(2 * n + 1 for n in N):
            raise FourierError(f"coefficient shape {c.shape} does not match N={N}")
        c.flags.writeable = False
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "coeffs", c)

    @property
    def d(self) -> int:
        return len(self.N)

    def __getitem__(self, n) -> complex:
        return complex(self.coeffs[tuple(k + Nk for k, Nk in zip(n, self.N))])

    def truncate(self, N: Sequence[int]) -> "CoeffTensor":
        N = _bounds(N, self.d)
        if any(n > m for n, m in zip(N, self.N)):
            raise FourierError(f"bounds {N} exceed stored bounds {self.N}")
        sl = tuple(slice(M - n, M + n + 1) for n, M in zip(N, self.N))
        return CoeffTensor(N, self.coeffs[sl], self.oversampling, self.meta)

    def hermitian_defect(self) -> float:
        """``max |c(-n) - conj c(n)| / max |c|``; zero for real sources."""
        flipped = self.coeffs[(slice(None, None, -1),) * self.d]
        scale = max(float(np.max(np.abs(self.coeffs))), 1e-300)
        return float(np.max(np.abs(flipped - np.conj(self.coeffs)))) / scale

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "N": list(self.N),
            "re": self.coeffs.real.ravel().tolist(),
            "im": self.coeffs.imag.ravel().tolist(),
            "layout": "row-major lattice, n from -N to N",
            "oversampling": list(self.oversampling),
        }

    @classmethod
    def from_json(cls, doc) -> "CoeffTensor":
        N = tuple(doc["N"])
        shape = tuple(2 * n + 1 for n in N)
        c = (np.asarray(doc["re"]) + 1j * np.asarray(doc["im"])).reshape(shape)
        return cls(N, c, tuple(doc.get("oversampling", ())))

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh)


def _bounds(N, d: int) -> tuple:
    if np.isscalar(N):
        return (int(N),) * d
    N = tuple(int(n) for n in N)
    if len(N) != d:
        raise FourierError(f"need {d} bounds, got {len(N)}")
    if any(n < 0 for n in N):
        raise FourierError("bounds must be nonnegative")
    return N


def fourier_coefficients(src: FunctionSource, N, M=None) -> CoeffTensor:
    """Coefficients of a ``2 pi``-periodic source by the trapezoid rule.

    ``M_s`` samples per axis (default ``8 (2 N_s + 1)``) must satisfy
    ``M_s >= 2 (2 N_s + 1)``.
    """
    d = src.dim
    N = _bounds(N, d)
    M = tuple(8 * (2 * n + 1) for n in N) if M is None else _bounds(M, d)
    for n, m in zip(N, M):
        if m < 2 * (2 * n + 1):
            raise FourierError(f"M={m} undersamples N={n}; need M >= {2 * (2 * n + 1)}")
    grids = np.meshgrid(*[TWO_PI * np.arange(m) / m for m in M], indexing="ij")
    vals = src(*grids)
    F = scipy.fft.fftn(vals) / float(np.prod(M))
    idx = np.ix_(*[np.arange(-n, n + 1) % m for n, m in zip(N, M)])
    over = tuple(m / (2 * n + 1) for n, m in zip(N, M))
    return CoeffTensor(N, F[idx], over, {"method": "trapezoid", "M": list(M)})


def dirichlet_kernel(N: int, u):
    """``sin((N + 1/2) u) / (2 sin(u / 2))`` with value ``N + 1/2`` at ``u = 0 mod 2 pi``."""
    u = np.asarray(u, dtype=float)
    r = np.mod(u, TWO_PI)
    den = 2.0 * np.sin(r / 2.0)
    near = (np.abs(r) < 1e-12) | (np.abs(r - TWO_PI) < 1e-12)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(near, N + 0.5, np.sin((N + 0.5) * r) / np.where(near, 1.0, den))
    return out if out.ndim else float(out)


def rectangular_partial_sum(c: CoeffTensor, N, x: Sequence[float]) -> float:
    """``S_{N_1..N_d} f(x)``: the lattice sum of ``fhat(n) e^{i <n, x>}``, real part."""
    N = _bounds(N, c.d)
    if len(x) != c.d:
        raise FourierError("point dimension does not match coefficients")
    sub = c.truncate(N).coeffs
    # contract axes in order 1..d with their phase vectors
    for n, xs in zip(N, x):
        phase = np.exp(1j * np.arange(-n, n + 1) * float(xs))
        sub = np.tensordot(sub, phase, axes=([0], [0]))
    return float(np.real(sub))


def cubical_partial_sum(c: CoeffTensor, N: int, x: Sequence[float]) -> float:
    return rectangular_partial_sum(c, (int(N),) * c.d, x)


def partial_sum_table(c: CoeffTensor, bounds: Sequence[int], x: Sequence[float]) -> np.ndarray:
    """``S_{N_1..N_d} f(x)`` for every ``N_s`` in ``bounds`` (same list on each axis).

    Entry ``[i_1, ..., i_d]`` uses ``N_s = bounds[i_s]``.
    """
    bounds = [int(b) for b in bounds]
    out = np.empty((len(bounds),) * c.d)
    for ii in itertools.product(range(len(bounds)), repeat=c.d):
        out[ii] = rectangular_partial_sum(c, [bounds[i] for i in ii], x)
    return out


# --------------------------------------------------------------------------
# one-sided limits and the regular-point value


@dataclass(frozen=True)
class Schedule:
    """Radii ``eps_j = eps0 * ratio^j``, ``j = 0..J``."""

    eps0: float = 0.5
    ratio: float = 0.5
    J: int = 24
    tol: float = 1e-6

    def __post_init__(self):
        if not 0 < self.ratio < 1 or self.eps0 <= 0 or self.J < 2:
            raise FourierError("schedule needs eps0 > 0, 0 < ratio < 1, J >= 2")

    def radii(self) -> np.ndarray:
        return self.eps0 * self.ratio ** np.arange(self.J + 1)


def directional_limit(src: FunctionSource, x: Sequence[float], delta: Sequence[int],
                      schedule: Schedule = Schedule()):
    """Limit of ``src`` at ``x`` from inside the open box with signs ``delta``.

    Probes along the box diagonal ``x + eps delta / 2``.  Returns
    ``(value, converged)`` where ``converged`` means the last three probes
    agree to ``schedule.tol``.
    """
    x = np.asarray(x, dtype=float)
    delta = np.asarray(delta, dtype=float)
    if x.size != src.dim or delta.size != src.dim:
        raise FourierError("point and sign vector must match the source dimension")
    if not np.all(np.abs(delta) == 1):
        raise FourierError("sign vector entries must be +1 or -1")
    probes = np.array([src.at(x + e * 0.5 * delta) for e in schedule.radii()])
    last = probes[-3:]
    converged = bool(np.max(last) - np.min(last) <= schedule.tol)
    return float(probes[-1]), converged


@dataclass(frozen=True)
class RegularPointReport:
    point: tuple
    limits: dict
    f_star: float
    regular: bool


def f_star(src: FunctionSource, x: Sequence[float],
           schedule: Schedule = Schedule()) -> RegularPointReport:
    """Average of the ``2^d`` one-sided box limits at ``x``."""
    limits = {}
    for delta in itertools.product((1, -1), repeat=src.dim):
        limits[delta] = directional_limit(src, x, delta, schedule)
    mean = float(np.mean([v for v, _ in limits.values()]))
    return RegularPointReport(tuple(float(t) for t in x), limits, mean,
                              all(ok for _, ok in limits.values()))

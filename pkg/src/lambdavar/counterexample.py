"""The oscillating cell functions ``g_N`` and their normalized versions ``f_N``.

``g_N`` equals ``prod_s sin((N + 1/2) x_s)`` on the cells
``A_i = prod_s [pi i_s / (N + 1/2), pi (i_s + 1) / (N + 1/2))`` with
``1 <= i_s <= N - 1`` and vanishes elsewhere.  It is continuous (the sine
vanishes on every cell boundary) and separable: the union of the cells is a
cube, so ``g_N(x) = prod_s h_N(x_s)``.

Its sharp variation grows more slowly than ``ln^d N`` while the cubical
partial sums at the origin grow like ``ln^d N``; after normalizing, the
variation norms stay bounded and the partial sums do not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fourier import CoeffTensor, cubical_partial_sum
from .grid import FunctionSource, GridFunction, sample
from .sequences import XI_SCHEDULES, lambda_xi
from .variation import sharp_variation

GAUSS_NODES = 33
ROUTE_TOL = 1e-4


class ConsistencyError(RuntimeError):
    """The two partial-sum routes disagree."""


@dataclass(frozen=True)
class CellGrid:
    N: int
    d: int

    def __post_init__(self):
        if self.N < 2 or self.d < 1:
            raise ValueError("need N >= 2 and d >= 1")

    @property
    def K(self) -> float:
        return self.N + 0.5

    def boundaries(self) -> np.ndarray:
        """Left endpoints of cells ``1..N-1`` followed by the right end of the last cell."""
        return np.pi * np.arange(1, self.N + 1) / self.K

    @property
    def support(self) -> tuple:
        return math.pi / self.K, math.pi * self.N / self.K

    def canonical_axis(self) -> np.ndarray:
        """All cell boundaries ``pi j / K`` (``j = 0..N``) and centers between them."""
        return np.pi * np.arange(2 * self.N + 1) / (2.0 * self.K)


def _h(N: int, x):
    K = N + 0.5
    lo, hi = math.pi / K, math.pi * N / K
    x = np.asarray(x, dtype=float)
    return np.where((x >= lo) & (x < hi), np.sin(K * x), 0.0)


def g_N_source(d: int, N: int) -> FunctionSource:
    if N < 2:
        raise ValueError("N must be >= 2")

    def ev(*x):
        out = np.ones(np.shape(x[0]))
        for xs in x:
            out = out * _h(N, xs)
        return out

    return FunctionSource(ev, d, True, f"g_N(d={d},N={N})")


def _coeffs_1d(N: int, Nc: int) -> np.ndarray:
    """``(1/2pi) int_lo^hi sin(K x) e^{-i n x} dx`` for ``n = -Nc..Nc``."""
    K = N + 0.5
    lo, hi = math.pi / K, math.pi * N / K
    n = np.arange(-Nc, Nc + 1)

    def expint(om):
        return (np.exp(1j * om * hi) - np.exp(1j * om * lo)) / (1j * om)

    # sin(Kx) e^{-inx} = (e^{i(K-n)x} - e^{-i(K+n)x}) / 2i ; K +- n is never 0
    return (expint(K - n) - expint(-(K + n))) / (2j) / (2 * math.pi)


def exact_coeffs_gN(d: int, N: int, Nc: int | None = None) -> CoeffTensor:
    """Closed-form Fourier coefficients of ``g_N`` on ``[-Nc, Nc]^d`` (default ``Nc = N``)."""
    if N < 2:
        raise ValueError("N must be >= 2")
    Nc = N if Nc is None else int(Nc)
    c1 = _coeffs_1d(N, Nc)
    c = c1
    for _ in range(d - 1):
        c = np.multiply.outer(c, c1)
    return CoeffTensor((Nc,) * d, c, (), {"method": "closed-form"})


def sample_gN(d: int, N: int) -> GridFunction:
    ax = CellGrid(N, d).canonical_axis()
    return sample(g_N_source(d, N), [ax] * d)


def reference_sum(d: int, N: int, xi="loglog") -> float:
    """``sum_{i=1}^{N-1} ln^{d-1}(i+1) / (i xi_i)``."""
    xi_fn = XI_SCHEDULES[xi] if isinstance(xi, str) else xi
    i = np.arange(1, N, dtype=float)
    return float(np.sum(np.log(i + 1) ** (d - 1) / (i * xi_fn(i))))


@dataclass
class SharpNorm:
    N: int
    d: int
    lower: float
    upper: float
    exact: bool
    sup_norm: float
    reference: float

    @property
    def ratio(self) -> float:
        """Lower bound of the sharp variation over the reference sum."""
        return self.lower / self.reference

    @property
    def norm_lower(self) -> float:
        return self.sup_norm + self.lower

    @property
    def norm_upper(self) -> float:
        return self.sup_norm + self.upper


def sharp_norm_gN(d: int, N: int, xi="loglog") -> SharpNorm:
    """Sharp variation of ``g_N`` on the canonical grid with ``lambda = lambda_xi(d, xi)``."""
    f = sample_gN(d, N)
    _, total = sharp_variation(f, lambda_xi(d, xi))
    return SharpNorm(N, d, total.lower, total.upper, total.exact,
                     float(np.max(np.abs(f.values))), reference_sum(d, N, xi))


def eta(norm: SharpNorm) -> float:
    """Normalizer ``eta_N = (||g_N||_C + lower bound of the sharp variation) / ln^d N``."""
    val = norm.norm_lower / math.log(norm.N) ** norm.d
    if not val > 0:
        raise ConsistencyError("eta_N must be positive")
    return val


def f_N_source(d: int, N: int, norm: SharpNorm | None = None, xi="loglog") -> FunctionSource:
    """``g_N / (eta_N ln^d N)``, so that its variation norm lower bound is 1."""
    norm = sharp_norm_gN(d, N, xi) if norm is None else norm
    scale = 1.0 / (eta(norm) * math.log(N) ** d)
    src = g_N_source(d, N).scaled(scale)
    return FunctionSource(src.evaluator, d, True, f"f_N(d={d},N={N})")


def kernel_quadrature_gN0(d: int, N: int, nodes: int = GAUSS_NODES) -> float:
    """``S_{N..N} g_N(0)`` from the kernel-product integral over the cells.

    ``pi^d S g_N(0) = sum_cells int_cell prod_s sin^2(K x_s) / (2 sin(x_s / 2))``;
    each cell integral uses ``nodes`` Gauss-Legendre points per axis.
    """
    K = N + 0.5
    t, wt = np.polynomial.legendre.leggauss(nodes)
    edges = np.pi * np.arange(1, N + 1) / K
    lo, hi = edges[:-1], edges[1:]
    half = (hi - lo) / 2.0
    x = (lo + hi)[:, None] / 2.0 + half[:, None] * t[None, :]
    q = (half[:, None] * wt[None, :] * np.sin(K * x) ** 2 / (2.0 * np.sin(x / 2.0))).sum(axis=1)
    per_cell = q
    for _ in range(d - 1):
        per_cell = np.multiply.outer(per_cell, q)
    return float(np.sum(per_cell)) / math.pi ** d


@dataclass
class DivergenceValue:
    N: int
    d: int
    eta: float
    S_gN0_coeff: float
    S_gN0_quad: float
    S_fN0: float
    discrepancy: float
    norm: SharpNorm


def divergence_value(d: int, N: int, xi="loglog", norm: SharpNorm | None = None) -> DivergenceValue:
    """Cubical partial sum of ``g_N`` and ``f_N`` at the origin, computed two ways."""
    via_coeffs = cubical_partial_sum(exact_coeffs_gN(d, N), N, [0.0] * d)
    via_kernel = kernel_quadrature_gN0(d, N)
    disc = abs(via_coeffs - via_kernel) / max(abs(via_kernel), 1e-300)
    if disc > ROUTE_TOL:
        raise ConsistencyError(f"partial-sum routes disagree: {via_coeffs} vs {via_kernel}")
    norm = sharp_norm_gN(d, N, xi) if norm is None else norm
    e = eta(norm)
    return DivergenceValue(N, d, e, via_coeffs, via_kernel,
                           via_kernel / (e * math.log(N) ** d), disc, norm)

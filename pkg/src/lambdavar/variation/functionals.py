"""Generalized variation functionals of grid functions.

Every functional returns a :class:`VariationBracket`.  Suprema over points
and intervals range over grid points only.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import permutations, product
from typing import Sequence

import numpy as np

from ..grid import FunctionSource, GridError, GridFunction, IndexSet, sample
from ..sequences import LambdaSeq, tail_shift
from .kernel import (
    EXACT_CAP_1D,
    AxisWeights,
    VariationBracket,
    VariationError,
    disjoint_sum_table,
    interval_families,
    inverse_sorted_lambdas,
    lambda_variation_axis,
    max_brackets,
    rearranged_order,
    sum_brackets,
)

EXACT_CAP_INDEX = 5
EXACT_CAP_STAR = 4


def _axis_first(f: GridFunction, s: int) -> np.ndarray:
    """Values with axis ``s`` first and all other axes flattened: shape ``(n_s, R)``."""
    if not 0 <= s < f.dim:
        raise GridError(f"axis {s} out of range for dimension {f.dim}")
    v = np.moveaxis(f.values, s, 0)
    return v.reshape(v.shape[0], -1)


def interval_weight_sharp(f: GridFunction, s: int, interval) -> float:
    """``max`` over the other coordinates of ``|f(b, x) - f(a, x)|`` along axis ``s``."""
    a, b = interval
    V = _axis_first(f, s)
    if not 0 <= a < b < V.shape[0]:
        raise GridError(f"interval {interval} invalid on axis {s}")
    return float(np.max(np.abs(V[b] - V[a])))


def sharp_weights(f: GridFunction, s: int) -> AxisWeights:
    """Per-term-max weights for every candidate interval on axis ``s``."""
    V = _axis_first(f, s)
    n = V.shape[0]
    w = np.zeros((n, n))
    arg = np.zeros((n, n), dtype=np.intp)
    for a in range(n - 1):
        D = np.abs(V[a + 1:] - V[a])
        arg[a, a + 1:] = np.argmax(D, axis=1)
        w[a, a + 1:] = D[np.arange(n - a - 1), arg[a, a + 1:]]
    return AxisWeights(s, w, "per-term-max", arg)


def slice_weights(f: GridFunction, s: int, r: int) -> AxisWeights:
    """Fixed-slice weights on axis ``s`` for flat slice index ``r``."""
    return AxisWeights.from_values(_axis_first(f, s)[:, r], axis=s)


def sharp_variation_axis(f: GridFunction, lam: LambdaSeq, s: int,
                         exact_cap: int = EXACT_CAP_1D) -> VariationBracket:
    br = lambda_variation_axis(sharp_weights(f, s), lam, exact_cap)
    br.functional = f"sharp[{s}]"
    return br


def sharp_variation(f: GridFunction, lam: LambdaSeq, exact_cap: int = EXACT_CAP_1D):
    """Per-axis brackets of the sharp variation and their sum.

    Returns ``(axes, total)``.
    """
    axes = [sharp_variation_axis(f, lam, s, exact_cap) for s in range(f.dim)]
    return axes, sum_brackets(axes, "sharp", lam.name)


def partial_variation_axis(f: GridFunction, lam: LambdaSeq, s: int,
                           exact_cap: int = EXACT_CAP_1D) -> VariationBracket:
    """``sup`` over fixed slices of the 1-D variation along axis ``s``."""
    V = _axis_first(f, s)
    brs = [lambda_variation_axis(AxisWeights.from_values(V[:, r], s), lam, exact_cap)
           for r in range(V.shape[1])]
    return max_brackets(brs, f"partial[{s}]", lam.name)


def partial_variation(f: GridFunction, lam: LambdaSeq, exact_cap: int = EXACT_CAP_1D):
    """Per-axis brackets of the partial variation and their sum."""
    axes = [partial_variation_axis(f, lam, s, exact_cap) for s in range(f.dim)]
    return axes, sum_brackets(axes, "partial", lam.name)


def v_sharp(f: GridFunction, s: int, n: int) -> float:
    """Largest unweighted sum over ``n`` disjoint intervals with per-term slices."""
    w = sharp_weights(f, s)
    if not 1 <= n <= w.n - 1:
        raise VariationError(f"n={n} outside 1..{w.n - 1}")
    return float(disjoint_sum_table(w)[0, n])


def v_sharp_profile(f: GridFunction, s: int) -> np.ndarray:
    """``v_sharp(f, s, n)`` for ``n = 1 .. n_s - 1``."""
    return disjoint_sum_table(sharp_weights(f, s))[0, 1:].copy()


# --------------------------------------------------------------------------
# variation with respect to an index set


def _as_lams(lams, alpha: IndexSet) -> list:
    if isinstance(lams, LambdaSeq):
        return [lams] * len(alpha)
    lams = list(lams)
    if len(lams) == alpha.dim:
        return [lams[j] for j in alpha.alpha]
    if len(lams) != len(alpha):
        raise VariationError("need one sequence per axis of the index set")
    return lams


def _mixed_tensor(G: np.ndarray, fams) -> np.ndarray:
    """|mixed differences| of ``G`` over products of per-axis interval arrays.

    ``fams[j] = (a_j, b_j)`` with shapes ``(K_j, m_j)``; result has shape
    ``(K_1, ..., K_p, m_1, ..., m_p)``.
    """
    p = len(fams)
    total = 0.0
    for bits in product((0, 1), repeat=p):
        idx = []
        for j, (a, b) in enumerate(fams):
            e = b if bits[j] else a
            shape = [1] * (2 * p)
            shape[j], shape[p + j] = e.shape
            idx.append(e.reshape(shape))
        sign = -1.0 if (p - sum(bits)) % 2 else 1.0
        total = total + sign * G[tuple(idx)]
    return np.abs(total)


def _perm_coeffs(lam: LambdaSeq, m: int) -> np.ndarray:
    """Rows ``1 / lambda_{sigma(i)}`` for every permutation ``sigma`` of ``1..m``."""
    inv = 1.0 / lam.values(m)
    return np.array([inv[list(p)] for p in permutations(range(m))])


def _exact_index_slice(G: np.ndarray, lams: list):
    """Exact sup over per-axis families and orderings for one fixed slice."""
    p = G.ndim
    fam_groups = [interval_families(n) for n in G.shape]
    best, best_wit = 0.0, None
    for sizes in product(*[sorted(g) for g in fam_groups]):
        fams = [fam_groups[j][m] for j, m in enumerate(sizes)]
        A = _mixed_tensor(G, fams)
        # contract all but the last axis against every ordering
        coeffs = [_perm_coeffs(lams[j], sizes[j]) for j in range(p - 1)]
        X = A
        for j in range(p - 1):
            # the next ordering axis m_j always sits at position p; P_j goes last
            X = np.tensordot(X, coeffs[j], axes=([p], [1]))
        X = np.moveaxis(X, p, -1)
        # last axis: the rearrangement inequality replaces the permutation search
        last = np.sort(X, axis=-1)[..., ::-1] @ inverse_sorted_lambdas(lams[-1], sizes[-1])
        flat = int(np.argmax(last))
        val = float(last.flat[flat])
        if val > best:
            best = val
            pos = np.unravel_index(flat, last.shape)
            best_wit = (sizes, pos)
    if best_wit is None:
        return 0.0, None
    sizes, pos = best_wit
    families, orders = [], []
    for j in range(p):
        a, b = fam_groups[j][sizes[j]]
        k = pos[j]
        families.append(list(zip(a[k].tolist(), b[k].tolist())))
    for j in range(p - 1):
        perm = list(permutations(range(sizes[j])))[pos[p + j]]
        orders.append([i + 1 for i in perm])
    orders.append(_last_axis_order(G, families, orders, lams))
    return best, {"families": families, "orders": orders}


def _reduce_others(G: np.ndarray, families, orders, lams, j: int) -> np.ndarray:
    """Collapse every axis but ``j`` against fixed families and orderings.

    Returns an array ``H`` with ``H.shape[0] = G.shape[j]`` such that the
    weight of interval ``(a, b)`` on axis ``j`` is ``sum |H[b] - H[a]|``.
    """
    X = np.moveaxis(G, j, 0)
    others = [k for k in range(G.ndim) if k != j]
    coef = np.ones(())
    for pos, k in enumerate(others):
        ivs = np.asarray(families[k], dtype=np.intp).reshape(-1, 2)
        Y = np.moveaxis(X, pos + 1, -1)
        X = np.moveaxis(Y[..., ivs[:, 1]] - Y[..., ivs[:, 0]], -1, pos + 1)
        c = 1.0 / lams[k](np.asarray(orders[k])) if len(ivs) else np.zeros(0)
        coef = np.multiply.outer(coef, c)
    return X, coef


def _axis_weights_given(G, families, orders, lams, j) -> AxisWeights:
    X, coef = _reduce_others(G, families, orders, lams, j)
    n = X.shape[0]
    w = np.zeros((n, n))
    for a in range(n - 1):
        D = np.abs(X[a + 1:] - X[a])
        w[a, a + 1:] = (D * coef).reshape(n - a - 1, -1).sum(axis=1)
    return AxisWeights(j, w, "index-set")


def _last_axis_order(G, families, orders, lams) -> list:
    j = G.ndim - 1
    w = _axis_weights_given(G, families, orders + [None], lams, j)
    weights = [w.w[a, b] for a, b in families[j]]
    return rearranged_order(weights, lams[j]).tolist()


def _index_value(G, families, orders, lams) -> float:
    if any(len(f) == 0 for f in families):
        return 0.0
    p = G.ndim
    fams = [(np.array([[a for a, _ in fam]]), np.array([[b for _, b in fam]])) for fam in families]
    A = _mixed_tensor(G, fams).reshape([len(f) for f in families])
    for j in range(p):
        c = 1.0 / lams[j](np.asarray(orders[j]))
        A = np.tensordot(A, c, axes=([0], [0]))
    return float(A)


def _heuristic_index_slice(G: np.ndarray, lams: list, max_sweeps: int = 50):
    """Coordinate ascent: re-optimize one axis family and ordering at a time."""
    p = G.ndim
    starts = [
        [[(i, i + 1) for i in range(n - 1)] for n in G.shape],
        [[(0, n - 1)] for n in G.shape],
    ]
    best, best_wit = 0.0, None
    for families in starts:
        orders = [list(range(1, len(fam) + 1)) for fam in families]
        val = _index_value(G, families, orders, lams)
        for _ in range(max_sweeps):
            improved = False
            for j in range(p):
                w = _axis_weights_given(G, families, orders, lams, j)
                br = lambda_variation_axis(w, lams[j])
                if br.lower > val * (1 + 1e-13) and br.witness["intervals"]:
                    families[j] = [tuple(iv) for iv in br.witness["intervals"]]
                    orders[j] = list(br.witness["order"])
                    val = _index_value(G, families, orders, lams)
                    improved = True
            if not improved:
                break
        if val > best:
            best = val
            best_wit = {"families": [list(map(list, f)) for f in families],
                        "orders": [list(o) for o in orders]}
    return best, best_wit


def hardy_index_variation(f: GridFunction, alpha: IndexSet, lams,
                          exact_cap: int = EXACT_CAP_INDEX,
                          method: str = "auto") -> VariationBracket:
    """Variation of ``f`` in the variables ``alpha``, sup over the other variables.

    ``lams`` is one :class:`LambdaSeq` for every axis, or a list (one per axis
    of ``f`` or one per element of ``alpha``).  ``method`` is ``"auto"``,
    ``"exact"`` or ``"heuristic"``.
    """
    if len(alpha) == 0:
        raise VariationError("index set must be nonempty")
    if alpha.dim != f.dim:
        raise VariationError("index set dimension does not match the grid")
    lams = _as_lams(lams, alpha)
    label = "x".join(l.name for l in lams)
    fname = f"index{list(alpha.alpha)}"
    if len(alpha) == 1:
        cap = EXACT_CAP_1D if method == "auto" else (10 ** 9 if method == "exact" else 0)
        br = partial_variation_axis(f, lams[0], alpha.alpha[0], cap)
        br.functional, br.lam = fname, label
        return br
    if method == "auto":
        method = "exact" if all(f.shape[j] <= exact_cap for j in alpha.alpha) else "heuristic"
    comp = alpha.complement
    V = np.transpose(f.values, alpha.alpha + comp)
    best, best_wit, best_slice = 0.0, None, None
    for fixed in product(*[range(f.shape[k]) for k in comp]):
        G = V[(Ellipsis,) + tuple(fixed)] if comp else V
        if method == "exact":
            val, wit = _exact_index_slice(G, lams)
        else:
            val, wit = _heuristic_index_slice(G, lams)
        if val > best:
            best, best_wit, best_slice = val, wit, dict(zip(comp, fixed))
    exact = method == "exact"
    witness = {"alpha": list(alpha.alpha), "fixed": best_slice or {}, **(best_wit or {})}
    return VariationBracket(best, best if exact else math.inf, exact, witness, fname, label)


def total_variation(f: GridFunction, lam, exact_cap: int = EXACT_CAP_INDEX):
    """Sum of :func:`hardy_index_variation` over all nonempty index sets.

    Returns ``(parts, total)`` where ``parts`` maps ``alpha`` tuples to brackets.
    """
    parts = {}
    for alpha in IndexSet.all_nonempty(f.dim):
        parts[alpha.alpha] = hardy_index_variation(f, alpha, lam, exact_cap)
    name = lam.name if isinstance(lam, LambdaSeq) else ",".join(l.name for l in lam)
    return parts, sum_brackets(list(parts.values()), "total", name)


def continuity_profile(f: GridFunction, lams, alpha: IndexSet, k: int, n_max: int,
                       exact_cap: int = EXACT_CAP_INDEX) -> list:
    """Index-set variation with the ``k``-th sequence of ``alpha`` tail-shifted by ``n = 1..n_max``."""
    base = _as_lams(lams, alpha)
    if not 0 <= k < len(alpha):
        raise VariationError(f"position {k} not in index set of size {len(alpha)}")
    out = []
    for n in range(1, n_max + 1):
        shifted = list(base)
        shifted[k] = tail_shift(base[k], n)
        out.append(hardy_index_variation(f, alpha, shifted, exact_cap))
    return out


# --------------------------------------------------------------------------
# two-dimensional rectangle variation


def _rectangles(n1: int, n2: int):
    a1, b1 = np.triu_indices(n1, 1)
    a2, b2 = np.triu_indices(n2, 1)
    R = np.array([(p, q, r, s) for p, q in zip(a1, b1) for r, s in zip(a2, b2)], dtype=np.intp)
    return R


def _rect_weights(V: np.ndarray, R: np.ndarray) -> np.ndarray:
    a1, b1, a2, b2 = R.T
    return np.abs(V[b1, b2] - V[b1, a2] - V[a1, b2] + V[a1, a2])


def rectangle_packings(n1: int, n2: int) -> dict:
    """All nonempty families of interior-disjoint grid rectangles, by size.

    Returns ``{m: array (F_m, m)}`` of rectangle indices into ``_rectangles(n1, n2)``.
    """
    return _packings_cached(n1, n2)


@lru_cache(maxsize=None)
def _packings_cached(n1: int, n2: int) -> dict:
    R = _rectangles(n1, n2)
    index = {tuple(r): i for i, r in enumerate(R.tolist())}
    c1, c2 = n1 - 1, n2 - 1
    occupied = np.zeros((c1, c2), dtype=bool)
    groups: dict = {}

    def rec(cell, acc):
        if cell == c1 * c2:
            if acc:
                groups.setdefault(len(acc), []).append(tuple(acc))
            return
        i, j = divmod(cell, c2)
        if occupied[i, j]:
            rec(cell + 1, acc)
            return
        rec(cell + 1, acc)
        # rectangles whose first cell (row-major) is (i, j)
        for i2 in range(i, c1):
            for j2 in range(j, c2):
                if occupied[i:i2 + 1, j:j2 + 1].any():
                    break
                occupied[i:i2 + 1, j:j2 + 1] = True
                acc.append(index[(i, i2 + 1, j, j2 + 1)])
                rec(cell + 1, acc)
                acc.pop()
                occupied[i:i2 + 1, j:j2 + 1] = False

    rec(0, [])
    return {m: np.array(v, dtype=np.intp) for m, v in sorted(groups.items())}


def star_variation_2d(f: GridFunction, lam: LambdaSeq,
                      exact_cap: int = EXACT_CAP_STAR) -> VariationBracket:
    """``sup`` over disjoint rectangle families of ``sum |f(A_k)| / lambda_k``."""
    if f.dim != 2:
        raise VariationError("rectangle variation needs a two-dimensional grid")
    n1, n2 = f.shape
    R = _rectangles(n1, n2)
    wts = _rect_weights(f.values, R)
    if n1 <= exact_cap and n2 <= exact_cap:
        best, best_fam = 0.0, []
        for m, fams in rectangle_packings(n1, n2).items():
            vals = np.sort(wts[fams], axis=1)[:, ::-1] @ inverse_sorted_lambdas(lam, m)
            j = int(np.argmax(vals))
            if vals[j] > best:
                best, best_fam = float(vals[j]), fams[j].tolist()
        exact, upper = True, best
    else:
        best, best_fam = _greedy_rectangles(R, wts, n1, n2, lam)
        exact, upper = False, math.inf
    rects = [R[i].tolist() for i in best_fam]
    witness = {"rectangles": rects,
               "order": rearranged_order(wts[best_fam], lam).tolist() if rects else []}
    return VariationBracket(best, upper, exact, witness, "star", lam.name)


def _greedy_rectangles(R, wts, n1, n2, lam):
    occ = np.zeros((n1 - 1, n2 - 1), dtype=int)
    chosen: list = []
    current = 0.0
    a1, b1, a2, b2 = R.T
    while True:
        P = np.zeros((n1, n2), dtype=int)
        P[1:, 1:] = occ.cumsum(0).cumsum(1)
        used = P[b1, b2] - P[a1, b2] - P[b1, a2] + P[a1, a2]
        free = np.nonzero((used == 0) & (wts > 0))[0]
        if free.size == 0:
            break
        m = len(chosen) + 1
        W = np.empty((free.size, m))
        W[:, :-1] = wts[chosen]
        W[:, -1] = wts[free]
        vals = np.sort(W, axis=1)[:, ::-1] @ inverse_sorted_lambdas(lam, m)
        j = int(np.argmax(vals))
        if vals[j] <= current * (1 + 1e-13):
            break
        current = float(vals[j])
        r = int(free[j])
        chosen.append(r)
        occ[a1[r]:b1[r], a2[r]:b2[r]] = 1
    return current, chosen


# --------------------------------------------------------------------------
# local variation near a point


def _open_box_axes(x, eps: float, delta, m: int):
    t = np.arange(1, m + 1) / (m + 1.0)
    axes = []
    for xk, dk in zip(x, delta):
        if dk not in (-1, 1):
            raise VariationError("sign vector entries must be +1 or -1")
        axes.append(np.sort(xk + eps * dk * t))
    return axes


def local_sharp_variation(src: FunctionSource, lam: LambdaSeq, x: Sequence[float],
                          eps: float, delta: Sequence[int], m: int = 9,
                          exact_cap: int = EXACT_CAP_1D) -> VariationBracket:
    """Sharp variation of ``src`` sampled on ``m`` interior points per axis of the
    open corner box ``prod_k (x_k, x_k + eps delta_k)``."""
    if eps <= 0:
        raise VariationError("eps must be positive")
    if len(x) != src.dim or len(delta) != src.dim:
        raise VariationError("point and sign vector must match the source dimension")
    f = sample(src, _open_box_axes(x, eps, delta, m))
    _, total = sharp_variation(f, lam, exact_cap)
    total.witness = {**total.witness, "eps": eps, "delta": list(delta)}
    return total


def local_box_sharp_variation(src: FunctionSource, lam: LambdaSeq, x: Sequence[float],
                              eps: float, m: int = 9,
                              exact_cap: int = EXACT_CAP_1D) -> VariationBracket:
    """Sharp variation on the closed cube ``prod_k [x_k - eps, x_k + eps]``."""
    if eps <= 0:
        raise VariationError("eps must be positive")
    axes = [np.linspace(xk - eps, xk + eps, m) for xk in x]
    _, total = sharp_variation(sample(src, axes), lam, exact_cap)
    return total

"""One-axis kernel shared by the partial and the sharp (per-term) variations.

Both functionals reduce to the same problem once every candidate interval
``(a, b)`` on an axis carries a nonnegative weight ``w(a, b)``:

    sup over families {I_i} of disjoint intervals and orderings of
        sum_i w(I_i) / lambda_i

The partial variation uses first differences along a single fixed slice;
the sharp variation uses, for every interval, the largest first difference
over all slices (each term may pick its own slice).  Only the
:class:`AxisWeights` differ.

For a fixed family the best ordering is given by the rearrangement
inequality: weights sorted descending against ``lambda_1..lambda_m`` sorted
ascending.  The supremum over families is bracketed by

* a lower bound from the optimal ``k``-interval families of a dynamic
  program (cardinality-constrained weighted interval scheduling), re-scored
  with the rearranged weights, or exhaustive enumeration on small axes;
* an upper bound by Abel summation against the DP optimum ``T_k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from ..sequences import LambdaSeq

EXACT_CAP_1D = 12
REL_TOL = 1e-12


class VariationError(ValueError):
    pass


@dataclass(frozen=True)
class IntervalFamily:
    """Interior-disjoint index intervals on one axis, sorted by left endpoint."""

    axis: int
    intervals: tuple

    def __post_init__(self):
        ivs = tuple(sorted((int(a), int(b)) for a, b in self.intervals))
        for a, b in ivs:
            if a >= b:
                raise VariationError(f"degenerate interval {(a, b)}")
        for (_, b0), (a1, _) in zip(ivs, ivs[1:]):
            if b0 > a1:
                raise VariationError("intervals overlap")
        object.__setattr__(self, "intervals", ivs)

    def __len__(self):
        return len(self.intervals)


@dataclass(frozen=True)
class AxisWeights:
    """``w[a, b]`` for every candidate interval ``a < b`` on one axis.

    ``slices`` optionally records, per interval, the flat index of the slice
    of the other coordinates that realizes the weight (sharp weights).
    """

    axis: int
    w: np.ndarray
    provenance: str = "fixed-slice"
    slices: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] < 2:
            raise VariationError("weights must be an (n, n) matrix with n >= 2")
        w = np.triu(w, 1)
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise VariationError("weights must be finite and nonnegative")
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return self.w.shape[0]

    @classmethod
    def from_values(cls, v, axis: int = 0) -> "AxisWeights":
        """Fixed-slice weights ``|v[b] - v[a]|`` of a 1-D array."""
        v = np.asarray(v, dtype=float)
        return cls(axis, np.abs(v[None, :] - v[:, None]), "fixed-slice")


@dataclass
class VariationBracket:
    """Certificate ``lower <= functional <= upper`` for a supremum.

    ``upper`` is ``inf`` when no certified upper bound is available.
    """

    lower: float
    upper: float
    exact: bool
    witness: dict = field(default_factory=dict)
    functional: str = ""
    lam: str = ""

    def __post_init__(self):
        self.lower = float(self.lower)
        self.upper = float(self.upper)
        if self.lower > self.upper * (1 + REL_TOL) + 1e-300:
            raise VariationError(f"inconsistent bracket [{self.lower}, {self.upper}]")
        if self.exact:
            self.upper = self.lower

    @property
    def value(self) -> float:
        if not self.exact:
            raise VariationError("bracket is not exact")
        return self.lower

    def scaled(self, c: float) -> "VariationBracket":
        c = abs(c)
        return VariationBracket(c * self.lower, c * self.upper, self.exact,
                                self.witness, self.functional, self.lam)

    def to_json(self) -> dict:
        return {
            "functional": self.functional,
            "lambda": self.lam,
            "lower": self.lower,
            "upper": self.upper if math.isfinite(self.upper) else "inf",
            "exact": self.exact,
            "witness": _jsonable(self.witness),
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, IntervalFamily):
        return {"axis": obj.axis, "intervals": _jsonable(obj.intervals)}
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def sum_brackets(brackets, functional: str = "", lam: str = "") -> VariationBracket:
    lower = math.fsum(b.lower for b in brackets)
    upper = math.fsum(b.upper for b in brackets)
    return VariationBracket(lower, upper, all(b.exact for b in brackets),
                            {"parts": [b.witness for b in brackets]}, functional, lam)


def max_brackets(brackets, functional: str = "", lam: str = "") -> VariationBracket:
    """Bracket for ``max_r F_r`` given brackets for each ``F_r``."""
    best = max(range(len(brackets)), key=lambda r: (brackets[r].lower, -r))
    upper = max(b.upper for b in brackets)
    exact = all(b.exact for b in brackets)
    return VariationBracket(brackets[best].lower, upper, exact,
                            {"slice": best, **brackets[best].witness}, functional, lam)


# --------------------------------------------------------------------------
# rearrangement scoring


def inverse_sorted_lambdas(lam: LambdaSeq, m: int) -> np.ndarray:
    """``1 / mu_k`` where ``mu`` is ``lambda_1..lambda_m`` sorted ascending."""
    return 1.0 / np.sort(lam.values(m))


def rearranged_order(weights, lam: LambdaSeq) -> np.ndarray:
    """Lambda index (1-based) assigned to each weight by the sorted pairing."""
    weights = np.asarray(weights, dtype=float)
    m = weights.size
    lam_rank = np.argsort(lam.values(m), kind="stable") + 1
    order = np.empty(m, dtype=int)
    order[np.argsort(-weights, kind="stable")] = lam_rank
    return order


def score_family(weights, lam: LambdaSeq) -> float:
    """Best value of ``sum w_i / lambda_{pi(i)}`` over orderings ``pi``."""
    weights = np.sort(np.asarray(weights, dtype=float))[::-1]
    if weights.size == 0:
        return 0.0
    return float(weights @ inverse_sorted_lambdas(lam, weights.size))


def score_ordered(weights, order, lam: LambdaSeq) -> float:
    """``sum w_i / lambda_{order_i}`` for an explicit ordering."""
    weights = np.asarray(weights, dtype=float)
    if weights.size == 0:
        return 0.0
    return float(np.sum(weights / lam(np.asarray(order))))


# --------------------------------------------------------------------------
# cardinality-constrained weighted interval scheduling


def disjoint_sum_table(w: AxisWeights) -> np.ndarray:
    """Suffix DP ``S[i, c]``: best total weight of exactly ``c`` interior-disjoint
    intervals inside ``[i, n-1]`` (``-inf`` when ``c`` intervals do not fit)."""
    n = w.n
    S = np.full((n + 1, n), -np.inf)
    S[:, 0] = 0.0
    upper = np.triu(np.ones((n, n), dtype=bool), 1)
    W = np.where(upper, w.w, -np.inf)
    for c in range(1, n):
        prev = S[:n, c - 1]
        cand = np.max(W + prev[None, :], axis=1)
        S[:n, c] = np.maximum.accumulate(cand[::-1])[::-1]
    return S


def _reconstruct(w: AxisWeights, S: np.ndarray, k: int) -> IntervalFamily:
    """Lexicographically smallest optimal ``k``-family (leftmost intervals first)."""
    n = w.n
    out = []
    i, c = 0, k
    while c > 0:
        target = S[i, c]
        bs = np.arange(i + 1, n)
        vals = w.w[i, i + 1:] + S[i + 1:n, c - 1]
        hit = np.nonzero(vals == target)[0]
        if hit.size:
            b = int(bs[hit[0]])
            out.append((i, b))
            i, c = b, c - 1
        else:
            i += 1
    return IntervalFamily(w.axis, tuple(out))


def best_disjoint_sum(w: AxisWeights, k: int, table: Optional[np.ndarray] = None):
    """Exact maximum ``T_k`` of the total weight of ``k`` disjoint intervals.

    Returns ``(T_k, family)``.
    """
    if not 1 <= k <= w.n - 1:
        raise VariationError(f"k={k} outside 1..{w.n - 1}")
    S = disjoint_sum_table(w) if table is None else table
    return float(S[0, k]), _reconstruct(w, S, k)


def abel_upper_bound(T: np.ndarray, lam: LambdaSeq) -> float:
    """``max_m [sum_{k<m} (c_k - c_{k+1}) T_k + c_m T_m]`` with ``c = 1/sorted(lambda_1..m)``.

    ``T[k-1]`` is the best total of ``k`` disjoint intervals.
    """
    best = 0.0
    T = np.asarray(T, dtype=float)
    for m in range(1, T.size + 1):
        c = inverse_sorted_lambdas(lam, m)
        val = float(np.dot(c[:-1] - c[1:], T[: m - 1]) + c[-1] * T[m - 1])
        best = max(best, val)
    return best


# --------------------------------------------------------------------------
# exhaustive enumeration


@lru_cache(maxsize=None)
def interval_families(n: int) -> dict:
    """All nonempty interior-disjoint families on ``n`` grid points, by size.

    Returns ``{m: (a, b)}`` with ``a``, ``b`` int arrays of shape ``(F_m, m)``.
    """
    groups: dict = {}

    def rec(start, acc):
        if acc:
            groups.setdefault(len(acc), []).append(tuple(acc))
        for a in range(start, n - 1):
            for b in range(a + 1, n):
                acc.append((a, b))
                rec(b, acc)
                acc.pop()

    rec(0, [])
    out = {}
    for m, fams in sorted(groups.items()):
        arr = np.array(fams, dtype=np.intp).reshape(len(fams), m, 2)
        a, b = arr[..., 0].copy(), arr[..., 1].copy()
        a.flags.writeable = b.flags.writeable = False
        out[m] = (a, b)
    return out


def exhaustive_axis(w: AxisWeights, lam: LambdaSeq):
    """Exact supremum by enumerating every family; returns ``(value, family)``."""
    best, best_fam = 0.0, IntervalFamily(w.axis, ())
    for m, (a, b) in interval_families(w.n).items():
        vals = np.sort(w.w[a, b], axis=1)[:, ::-1] @ inverse_sorted_lambdas(lam, m)
        j = int(np.argmax(vals))
        if vals[j] > best:
            best = float(vals[j])
            best_fam = IntervalFamily(w.axis, tuple(zip(a[j].tolist(), b[j].tolist())))
    return best, best_fam


def _family_witness(w: AxisWeights, fam: IntervalFamily, lam: LambdaSeq) -> dict:
    weights = np.array([w.w[a, b] for a, b in fam.intervals])
    wit = {"axis": w.axis, "intervals": [list(iv) for iv in fam.intervals],
           "order": rearranged_order(weights, lam).tolist()}
    if w.slices is not None:
        wit["slices"] = [int(w.slices[a, b]) for a, b in fam.intervals]
    return wit


def lambda_variation_axis(w: AxisWeights, lam: LambdaSeq,
                          exact_cap: int = EXACT_CAP_1D) -> VariationBracket:
    """Bracket ``sup_{families, orderings} sum_i w(I_i) / lambda_i`` on one axis."""
    if not np.any(w.w > 0):
        return VariationBracket(0.0, 0.0, True, {"axis": w.axis, "intervals": [],
                                                 "order": []}, lam=lam.name)
    S = disjoint_sum_table(w)
    T = S[0, 1:]
    lower, fam = 0.0, IntervalFamily(w.axis, ())
    for k in range(1, w.n):
        cand = _reconstruct(w, S, k)
        val = score_family([w.w[a, b] for a, b in cand.intervals], lam)
        if val > lower:
            lower, fam = val, cand
    upper = abel_upper_bound(T, lam)
    exact = False
    if w.n <= exact_cap:
        lower, fam = exhaustive_axis(w, lam)
        exact = True
    elif lower >= upper * (1 - REL_TOL):
        exact = True
    upper = max(upper, lower)
    return VariationBracket(lower, upper, exact, _family_witness(w, fam, lam), lam=lam.name)

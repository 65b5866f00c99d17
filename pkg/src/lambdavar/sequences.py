"""Weight sequences ``Lambda = {lambda_n}`` used by the variation functionals.

Sequences are indexed from 1.  They are not assumed monotone; consumers that
need an ordering sort the values explicitly.  Logarithms are natural.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np


class SequenceError(ValueError):
    pass


# Named growth schedules xi_n for the counterexample sequences.
XI_SCHEDULES: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "log": lambda n: np.log(n + 1.0),
    "loglog": lambda n: np.log(np.log(n + 3.0)),
    "sqrtlog": lambda n: np.sqrt(np.log(n + 1.0)),
    "one": lambda n: np.ones_like(n, dtype=float),
}


@dataclass(frozen=True)
class LambdaSeq:
    """A positive sequence ``n -> lambda_n`` with an optional tail shift.

    ``seq(n)`` evaluates ``lambda_{n + offset}``; ``offset`` is what
    :func:`tail_shift` adjusts.
    """

    kind: str
    base: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)
    label: str = ""
    offset: int = 0
    diverges: bool = True

    def __call__(self, n):
        n = np.asarray(n)
        if np.any(n < 1):
            raise SequenceError("sequence indices start at 1")
        vals = np.asarray(self.base(n.astype(float) + self.offset), dtype=float)
        return vals if vals.ndim else float(vals)

    def values(self, m: int) -> np.ndarray:
        """``lambda_1, ..., lambda_m`` as an array."""
        if m <= 0:
            return np.zeros(0)
        return np.asarray(self(np.arange(1, m + 1)), dtype=float)

    @property
    def name(self) -> str:
        s = self.label or self.kind
        return s if self.offset == 0 else f"{s}>>{self.offset}"


def lambda_harmonic() -> LambdaSeq:
    return LambdaSeq("harmonic", lambda n: n * 1.0, "harmonic")


def lambda_constant(c: float = 1.0) -> LambdaSeq:
    """Constant weights; gives classical Hardy-type variation when ``c = 1``."""
    if c <= 0:
        raise SequenceError("constant weight must be positive")
    return LambdaSeq("constant", lambda n: np.full(np.shape(n), float(c)),
                     f"constant:c={c:g}", diverges=False)


def lambda_paper(d: int) -> LambdaSeq:
    """``lambda_n = n / ln(n+1)^(d-1)``."""
    if int(d) != d or d < 2:
        raise SequenceError("d must be an integer >= 2")
    d = int(d)
    return LambdaSeq("paper", lambda n: n / np.log(n + 1.0) ** (d - 1), f"paper:d={d}")


def lambda_xi(d: int, xi="loglog") -> LambdaSeq:
    """``lambda_n = n xi_n / ln(n+1)^(d-1)`` for a diverging schedule ``xi``.

    ``xi`` is a key of :data:`XI_SCHEDULES` or a vectorized callable.
    """
    if int(d) != d or d < 2:
        raise SequenceError("d must be an integer >= 2")
    d = int(d)
    if isinstance(xi, str):
        if xi not in XI_SCHEDULES:
            raise SequenceError(f"unknown xi schedule {xi!r}")
        xi_name, xi_fn = xi, XI_SCHEDULES[xi]
    else:
        xi_name, xi_fn = getattr(xi, "__name__", "custom"), xi

    def base(n):
        x = np.asarray(xi_fn(n), dtype=float)
        if np.any(x <= 0):
            raise SequenceError("xi schedule must be positive")
        return n * x / np.log(n + 1.0) ** (d - 1)

    base(np.arange(1.0, 65.0))
    return LambdaSeq("xi", base, f"xi:d={d},xi={xi_name}")


def lambda_table(table) -> LambdaSeq:
    """Tabulated weights; past the table the last ratio is continued geometrically."""
    t = np.asarray(table, dtype=float)
    if t.ndim != 1 or t.size == 0 or np.any(t <= 0):
        raise SequenceError("table must be a non-empty list of positive numbers")
    ratio = t[-1] / t[-2] if t.size > 1 else 1.0
    L = t.size

    def base(n):
        n = np.asarray(n, dtype=float)
        idx = np.clip(n.astype(int) - 1, 0, L - 1)
        return np.where(n <= L, t[idx], t[-1] * ratio ** (n - L))

    return LambdaSeq("table", base, f"table[{L}]", diverges=ratio > 1)


def tail_shift(seq: LambdaSeq, n: int) -> LambdaSeq:
    """``{lambda_s}_{s >= n}`` re-indexed from 1, so ``shift(seq, 1)`` is ``seq``."""
    if int(n) != n or n < 1:
        raise SequenceError("shift must be an integer >= 1")
    return LambdaSeq(seq.kind, seq.base, seq.label, seq.offset + int(n) - 1, seq.diverges)


def parse_lambda(spec: str) -> LambdaSeq:
    """Parse ``harmonic | paper:d=2 | xi:d=2,xi=loglog | constant:c=1 | table:path.json``."""
    kind, _, rest = spec.partition(":")
    if kind == "table":
        with open(rest) as fh:
            doc = json.load(fh)
        return lambda_table(doc["lambda"] if isinstance(doc, dict) else doc)
    opts = {}
    for item in filter(None, rest.split(",")):
        key, _, val = item.partition("=")
        opts[key.strip()] = val.strip()
    if kind == "harmonic":
        return lambda_harmonic()
    if kind == "paper":
        return lambda_paper(int(opts.get("d", 2)))
    if kind == "xi":
        return lambda_xi(int(opts.get("d", 2)), opts.get("xi", "loglog"))
    if kind == "constant":
        return lambda_constant(float(opts.get("c", 1.0)))
    raise SequenceError(f"unknown lambda spec {spec!r}")


def grows(seq: LambdaSeq, m0: int = 8, m_max: int = 4096) -> bool:
    """Spot check of divergence: ``lambda_{2m} > lambda_m`` for ``m0 <= m <= m_max``."""
    m = np.arange(m0, m_max + 1)
    return bool(np.all(seq(2 * m) > seq(m)))

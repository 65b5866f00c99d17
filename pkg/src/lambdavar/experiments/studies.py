"""Desk-scale studies of embedding, convergence, divergence and inclusion properties.

Each ``run_*`` function takes a :class:`StudyConfig` and returns a
:class:`StudyReport` whose ``checks`` hold the asserted properties.  Rows
are produced in configuration order, so reruns give byte-identical CSV.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .. import sources
from ..counterexample import divergence_value, reference_sum
from ..fourier import f_star, fourier_coefficients, partial_sum_table
from ..grid import GridFunction
from ..sequences import lambda_harmonic, lambda_paper, parse_lambda
from ..variation import (
    abel_upper_bound,
    local_box_sharp_variation,
    local_sharp_variation,
    partial_variation,
    sharp_variation,
    star_variation_2d,
    total_variation,
    v_sharp_profile,
)
from .corpus import corpus
from .report import StudyReport

STUDIES = ("embedding", "convergence", "divergence", "vn", "local", "inclusion")
RANDOM_STUDIES = ("embedding", "vn", "inclusion")
MAX_SKIPPED_FRACTION = 0.05
REL = 1e-12


@dataclass
class StudyConfig:
    study: str
    d: int = 2
    shape: tuple = (4, 4)
    lam: str = "harmonic"
    seed: int | None = None
    count: int = 500
    N_sweep: tuple = (8, 16, 32, 64)
    xi: str = "loglog"
    oversampling: int = 8
    max_power: int = 8
    m: int = 9
    eps_powers: tuple = (0, 1, 2, 3, 4, 5, 6, 7, 8)
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.study not in STUDIES:
            raise ValueError(f"unknown study {self.study!r}; choose from {STUDIES}")
        self.shape = tuple(int(n) for n in self.shape)
        self.N_sweep = tuple(int(n) for n in self.N_sweep)
        self.eps_powers = tuple(int(j) for j in self.eps_powers)

    def tol(self, key: str) -> float:
        return float(self.tolerances.get(key, DEFAULT_TOLERANCES[key]))

    @classmethod
    def from_json(cls, doc: dict, **overrides) -> "StudyConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown config keys {sorted(unknown)}")
        merged = {**doc, **{k: v for k, v in overrides.items() if v is not None}}
        return cls(**merged)

    @classmethod
    def load(cls, path, **overrides) -> "StudyConfig":
        with open(path) as fh:
            return cls.from_json(json.load(fh), **overrides)

    def to_json(self) -> dict:
        return asdict(self)

    def seeds(self) -> list:
        if self.seed is None:
            raise ValueError(f"study {self.study!r} needs an explicit seed")
        return [int(self.seed) + i for i in range(self.count)]


DEFAULT_TOLERANCES = {
    "smooth_deviation": 1e-3,
    "quadrant_deviation": 5e-2,
    "monotone_slack": 0.05,
    "noise_floor": 1e-12,
    "local_decay": 1e-2,
    "divergence_spread": 3.0,
    "route": 1e-4,
}


def default_config(study: str, **kw) -> StudyConfig:
    base = {
        "embedding": dict(shape=(4, 4), lam="paper:d=2", count=500),
        "convergence": dict(),
        "divergence": dict(N_sweep=(8, 16, 32, 64)),
        "vn": dict(shape=(8, 8), lam="paper:d=2", count=200),
        "local": dict(lam="paper:d=2", m=9),
        "inclusion": dict(shape=(4, 4), lam="harmonic", count=500),
    }[study]
    return StudyConfig(study, **{**base, **kw})


def nonincreasing(vals, slack: float, floor: float) -> bool:
    """``v[k+1] <= (1 + slack) v[k] + floor`` for consecutive entries."""
    vals = list(vals)
    return all(b <= (1 + slack) * a + floor for a, b in zip(vals, vals[1:]))


# --------------------------------------------------------------------------


def run_embedding_study(cfg: StudyConfig) -> StudyReport:
    """Ratio of total harmonic variation to sharp variation with ``lambda = n / ln(n+1)``."""
    if cfg.d != 2 or len(cfg.shape) != 2:
        raise ValueError("embedding study runs on 2-D grids")
    sharp_lam = parse_lambda(cfg.lam)
    rows, skipped_const, skipped_inexact = [], 0, 0
    for spec in corpus(cfg.seeds(), cfg.shape):
        f = spec.build()
        _, hv = total_variation(f, lambda_harmonic())
        _, sv = sharp_variation(f, sharp_lam)
        exact = hv.exact and sv.exact
        if not exact:
            skipped_inexact += 1
            continue
        if sv.lower == 0.0:
            skipped_const += 1
            continue
        rows.append({"seed": spec.seed, "kind": spec.kind, "HV": hv.lower,
                     "sharp": sv.lower, "ratio": hv.lower / sv.lower, "exact": exact})
    ratios = [r["ratio"] for r in rows]
    max_ratio = max(ratios) if ratios else math.nan
    rep = StudyReport("embedding", {"main": rows})
    rep.summary = {"instances": cfg.count, "used": len(rows), "skipped_constant": skipped_const,
                   "skipped_inexact": skipped_inexact, "max_ratio": max_ratio,
                   "mean_ratio": float(np.mean(ratios)) if ratios else math.nan,
                   "lambda_sharp": sharp_lam.name}
    rep.checks = {
        "max ratio finite": math.isfinite(max_ratio),
        "no instance above max": all(r <= max_ratio for r in ratios),
        "exact brackets (<=5% skipped)": skipped_inexact <= MAX_SKIPPED_FRACTION * cfg.count,
    }
    return rep


# --------------------------------------------------------------------------


# asymmetric box, so partial sums at the corner are not exact by symmetry
QUADRANT_EXTENT = (2.0, 2.5, 3.0)


def convergence_cases(d: int = 2) -> list:
    """``(name, source, point, known f*)`` for the Pringsheim convergence study."""
    return [
        ("quadrant_corner", sources.quadrant_jump(d, QUADRANT_EXTENT[:d]), (0.0,) * d, 2.0 ** -d),
        ("symmetric_corner", sources.quadrant_jump(d), (0.0,) * d, 2.0 ** -d),
        ("quadrant_edge", sources.quadrant_jump(d), (np.pi / 2,) + (0.0,) * (d - 1), 0.5),
        ("smooth", sources.smooth_bump(d), (1.0,) + (2.0,) * (d - 1), None),
        ("jump_plus_smooth", sources.jump_plus_smooth(d), (np.pi,) + (1.0,) * (d - 1), 0.0),
    ]


def run_convergence_study(cfg: StudyConfig) -> StudyReport:
    """Max deviation ``|S_{N1,N2} f(x) - f*(x)|`` over ``min(N1, N2) >= N0``, ``N_s = 2^j``."""
    if cfg.d != 2:
        raise ValueError("convergence study runs in d = 2")
    bounds = [2 ** j for j in range(cfg.max_power + 1)]
    Nmax = bounds[-1]
    lam = parse_lambda(cfg.lam) if cfg.lam != "harmonic" else lambda_paper(2)
    slack, floor = cfg.tol("monotone_slack"), cfg.tol("noise_floor")
    rows, local_rows, checks, summary = [], [], {}, {}
    for name, src, x, known in convergence_cases(cfg.d):
        rep = f_star(src, x)
        if not rep.regular:
            raise ValueError(f"{name}: point {x} is not regular")
        fs = rep.f_star
        if known is None:
            known = src.at(x)
        coeffs = fourier_coefficients(src, Nmax, cfg.oversampling * (2 * Nmax + 1))
        table = partial_sum_table(coeffs, bounds, x)
        dev = np.abs(table - fs)
        devs = []
        for i0, N0 in enumerate(bounds):
            worst = float(np.max(dev[i0:, i0:]))
            devs.append(worst)
            rows.append({"case": name, "N0": N0, "f_star": fs, "max_deviation": worst})
        summary[name] = {"point": list(x), "f_star": fs, "f_star_known": known,
                         "deviation_at_Nmax": devs[-1]}
        tol = cfg.tol("smooth_deviation") if name == "smooth" else cfg.tol("quadrant_deviation")
        checks[f"{name}: f* matches known value"] = abs(fs - known) <= 1e-9
        checks[f"{name}: deviation <= {tol:g} at N0={Nmax}"] = devs[-1] <= tol
        checks[f"{name}: deviation nonincreasing in N0"] = nonincreasing(devs, slack, floor)
        for delta in sorted(rep.limits):
            for j in cfg.eps_powers:
                br = local_sharp_variation(src, lam, x, 2.0 ** -j, delta, cfg.m)
                local_rows.append({"case": name, "delta": "".join("+" if s > 0 else "-" for s in delta),
                                   "eps": 2.0 ** -j, "lower": br.lower, "upper": br.upper,
                                   "exact": br.exact})
    return StudyReport("convergence", {"main": rows, "local": local_rows}, summary, checks)


# --------------------------------------------------------------------------


def run_divergence_study(cfg: StudyConfig) -> StudyReport:
    """Sweep ``N``: normalizer, variation norm and cubical partial sums of ``g_N``, ``f_N``."""
    rows = []
    for N in cfg.N_sweep:
        dv = divergence_value(cfg.d, N, cfg.xi)
        rows.append({
            "N": N,
            "eta_N": dv.eta,
            "sharp_norm_lower": dv.norm.norm_lower,
            "sharp_norm_upper": dv.norm.norm_upper,
            "S_NN_gN0": dv.S_gN0_coeff,
            "S_NN_fN0": dv.S_fN0,
            "route_discrepancy": dv.discrepancy,
            "exact": dv.norm.exact,
        })
    logs = [math.log(r["N"]) ** cfg.d for r in rows]
    cs = [r["S_NN_gN0"] / L for r, L in zip(rows, logs)]
    c_fit = min(cs)
    spread = max(cs) / c_fit if c_fit > 0 else math.inf
    fN = [r["S_NN_fN0"] for r in rows]
    fnorm = [r["sharp_norm_lower"] / (r["eta_N"] * math.log(r["N"]) ** cfg.d) for r in rows]
    ratios = []
    for N, r in zip(cfg.N_sweep, rows):
        ratios.append((r["sharp_norm_lower"] - 1.0) / reference_sum(cfg.d, N, cfg.xi))
    rep = StudyReport("divergence", {"main": rows})
    rep.summary = {"c_fit": c_fit, "c_per_N": cs, "c_spread": spread,
                   "fN_norm_lower": fnorm, "variation_to_reference_ratio": ratios, "xi": cfg.xi}
    rep.checks = {
        "S g_N(0)/ln^d N >= c > 0": c_fit > 0,
        f"c spread <= {cfg.tol('divergence_spread'):g}": spread <= cfg.tol("divergence_spread"),
        "S f_N(0) strictly increasing": all(b > a for a, b in zip(fN, fN[1:])),
        f"route agreement <= {cfg.tol('route'):g}": all(r["route_discrepancy"] <= cfg.tol("route")
                                                        for r in rows),
        "||f_N|| lower bounds within factor 4": max(fnorm) <= 4 * min(fnorm),
    }
    return rep


# --------------------------------------------------------------------------


def vn_special_instances(shape) -> list:
    """Monotone separable, oscillating and zero grids for the ``v(n)`` study."""
    n1, n2 = shape
    x, y = np.linspace(0, 1, n1), np.linspace(0, 1, n2)
    osc1 = (np.arange(n1) % 2).astype(float)
    return [
        ("monotone_separable", GridFunction((x, y), np.add.outer(x, y))),
        ("oscillating", GridFunction((x, y), np.multiply.outer(osc1, 1.0 + y))),
        ("zero", GridFunction((x, y), np.zeros(shape))),
    ]


def run_vn_study(cfg: StudyConfig) -> StudyReport:
    """Sharp variation with ``lambda = n / ln(n+1)`` against ``sum v(n) ln(n+1) / n^2``."""
    if cfg.d != 2 or len(cfg.shape) != 2:
        raise ValueError("v(n) study runs in d = 2")
    lam = lambda_paper(2)
    instances = vn_special_instances(cfg.shape)
    instances += [(f"{s.kind}:{s.seed}", s.build()) for s in corpus(cfg.seeds(), cfg.shape)]
    rows, inexact = [], 0
    for name, f in instances:
        axes, _ = sharp_variation(f, lam)
        for s, br in enumerate(axes):
            v = v_sharp_profile(f, s)
            n = np.arange(1, v.size + 1)
            hyp = float(np.sum(v * np.log(n + 1.0) / n ** 2))
            chain = abel_upper_bound(v, lam)
            inexact += not br.exact
            rows.append({"instance": name, "axis": s, "sharp": br.lower, "chain": chain,
                         "hypothesis_sum": hyp, "exact": br.exact})
    ratios = [r["sharp"] / r["hypothesis_sum"] for r in rows if r["hypothesis_sum"] > 0]
    c = max(ratios) if ratios else 0.0
    for r in rows:
        r["c_times_sum"] = c * r["hypothesis_sum"]
    violations = sum(r["sharp"] > r["c_times_sum"] * (1 + REL) for r in rows)
    chain_viol = sum(r["sharp"] > r["chain"] * (1 + REL) + 1e-15 for r in rows)
    zero = [r for r in rows if r["instance"] == "zero"]
    rep = StudyReport("vn", {"main": rows})
    rep.summary = {"c_fit": c, "rows": len(rows), "violations": violations,
                   "chain_violations": chain_viol, "inexact": inexact}
    rep.checks = {
        "fitted c finite": math.isfinite(c),
        "zero violations with fitted c": violations == 0,
        "Abel chain bound holds": chain_viol == 0,
        "zero function gives 0 on both sides": all(r["sharp"] == 0 and r["hypothesis_sum"] == 0
                                                   for r in zero),
        "exact brackets (<=5% inexact)": inexact <= MAX_SKIPPED_FRACTION * len(rows),
    }
    return rep


# --------------------------------------------------------------------------


def local_probe_points(d: int = 2) -> list:
    """A finite stand-in for a compact set of continuity."""
    return [tuple(p) for p in [(1.0,) * d, (2.0,) + (0.5,) * (d - 1), (4.0,) * d,
                               (np.pi,) + (np.pi / 3,) * (d - 1)]]


def run_local_study(cfg: StudyConfig) -> StudyReport:
    """Decay of the sharp variation on shrinking boxes, uniformly over probe points."""
    lam = parse_lambda(cfg.lam)
    slack = cfg.tol("monotone_slack")
    rows, checks, summary = [], {}, {}
    cases = [("smooth", sources.smooth_bump(cfg.d)), ("constant", sources.constant(cfg.d))]
    for name, src in cases:
        series = []
        for j in cfg.eps_powers:
            eps = 2.0 ** -j
            vals = [local_box_sharp_variation(src, lam, x, eps, cfg.m).lower
                    for x in local_probe_points(cfg.d)]
            series.append(max(vals))
            rows.append({"case": name, "eps": eps, "max_lower": max(vals)})
        summary[name] = series
        if name == "constant":
            checks["constant: all zero"] = all(v == 0.0 for v in series)
        else:
            checks[f"{name}: eps=2^-{cfg.eps_powers[-1]} value <= 1/100 of eps=1 value"] = \
                series[-1] <= cfg.tol("local_decay") * series[0]
            checks[f"{name}: decrease monotone (slack {slack:g})"] = nonincreasing(series, slack, 0.0)
    # corner boxes at a jump point: every open quadrant has its own limit
    src = sources.jump_plus_smooth(cfg.d)
    x = (np.pi,) + (1.0,) * (cfg.d - 1)
    corner_rows = []
    for delta in [(1,) * cfg.d, (-1,) + (1,) * (cfg.d - 1)]:
        series = []
        for j in cfg.eps_powers:
            br = local_sharp_variation(src, lam, x, 2.0 ** -j, delta, cfg.m)
            series.append(br.lower)
            corner_rows.append({"delta": "".join("+" if s > 0 else "-" for s in delta),
                                "eps": 2.0 ** -j, "lower": br.lower, "exact": br.exact})
        checks[f"jump corner {delta}: decays"] = series[-1] <= cfg.tol("local_decay") * series[0]
    return StudyReport("local", {"main": rows, "corner": corner_rows}, summary, checks)


# --------------------------------------------------------------------------


def run_inclusion_study(cfg: StudyConfig) -> StudyReport:
    """Partial variation against sharp variation per axis, and the rectangle-variation ratio."""
    if cfg.d != 2 or len(cfg.shape) != 2:
        raise ValueError("inclusion study runs on 2-D grids")
    lam = parse_lambda(cfg.lam)
    rows, violations, inexact = [], 0, 0
    for spec in corpus(cfg.seeds(), cfg.shape):
        f = spec.build()
        p_axes, _ = partial_variation(f, lam)
        s_axes, s_tot = sharp_variation(f, lam)
        star = star_variation_2d(f, lam)
        exact = all(b.exact for b in p_axes + s_axes) and star.exact
        inexact += not exact
        row = {"seed": spec.seed, "kind": spec.kind}
        for s in range(2):
            row[f"partial_{s}"] = p_axes[s].lower
            row[f"sharp_{s}"] = s_axes[s].lower
            if p_axes[s].lower > s_axes[s].lower * (1 + REL):
                violations += 1
        row["star"] = star.lower
        denom = p_axes[0].lower + p_axes[1].lower + star.lower
        row["sharp_over_dw"] = s_tot.lower / denom if denom > 0 else math.nan
        row["exact"] = exact
        rows.append(row)
    ratios = [r["sharp_over_dw"] for r in rows if not math.isnan(r["sharp_over_dw"])]
    rep = StudyReport("inclusion", {"main": rows})
    rep.summary = {"violations": violations, "inexact": inexact,
                   "max_sharp_over_dw": max(ratios) if ratios else math.nan,
                   "min_sharp_over_dw": min(ratios) if ratios else math.nan}
    rep.checks = {
        "partial <= sharp per axis (zero violations)": violations == 0,
        "second-inclusion ratio finite": all(math.isfinite(r) for r in ratios),
        "exact brackets (<=5% inexact)": inexact <= MAX_SKIPPED_FRACTION * cfg.count,
    }
    return rep


RUNNERS = {
    "embedding": run_embedding_study,
    "convergence": run_convergence_study,
    "divergence": run_divergence_study,
    "vn": run_vn_study,
    "local": run_local_study,
    "inclusion": run_inclusion_study,
}


def run_study(cfg: StudyConfig) -> StudyReport:
    if cfg.study in RANDOM_STUDIES and cfg.seed is None:
        raise ValueError(f"study {cfg.study!r} needs --seed")
    return RUNNERS[cfg.study](cfg)

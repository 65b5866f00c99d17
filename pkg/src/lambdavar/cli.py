"""Command line: ``lambdavar varcalc | fourier | study``."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import sources
from .fourier import f_star, fourier_coefficients, rectangular_partial_sum
from .grid import GridFunction, IndexSet, sample
from .sequences import parse_lambda
from .variation import (
    EXACT_CAP_1D,
    hardy_index_variation,
    partial_variation,
    sharp_variation,
    star_variation_2d,
    total_variation,
)
from .experiments import STUDIES, StudyConfig, default_config, run_study

FUNCTIONALS = ("sharp", "partial", "total", "index", "star")


def _load_grid(args) -> GridFunction:
    if args.grid:
        return GridFunction.load(args.grid)
    src = sources.by_name(args.source, args.dim)
    ax = np.linspace(0.0, 2 * np.pi, args.points, endpoint=False)
    return sample(src, [ax] * src.dim)


def cmd_varcalc(args) -> int:
    f = _load_grid(args)
    lam = parse_lambda(args.lam)
    cap = args.exact_cap
    if args.functional == "sharp":
        parts, total = sharp_variation(f, lam, cap or EXACT_CAP_1D)
    elif args.functional == "partial":
        parts, total = partial_variation(f, lam, cap or EXACT_CAP_1D)
    elif args.functional == "total":
        parts, total = total_variation(f, lam, cap or 5)
        parts = list(parts.values())
    elif args.functional == "index":
        alpha = IndexSet(tuple(int(j) for j in args.alpha.split(",")), f.dim)
        total, parts = hardy_index_variation(f, alpha, lam, cap or 5), []
    else:
        total, parts = star_variation_2d(f, lam, cap or 4), []
    total.functional = total.functional or args.functional
    doc = {**total.to_json(), "parts": [p.to_json() for p in parts]}
    text = json.dumps(doc, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0


def cmd_fourier(args) -> int:
    src = sources.by_name(args.source, args.dim)
    c = fourier_coefficients(src, args.N, args.M)
    x = [float(v) for v in args.x.split(",")] if args.x else [0.0] * src.dim
    N = [int(v) for v in args.bounds.split(",")] if args.bounds else [args.N] * src.dim
    rep = f_star(src, x)
    doc = {"source": src.name, "x": x, "N": N,
           "partial_sum": rectangular_partial_sum(c, N, x),
           "f_star": rep.f_star, "regular": rep.regular}
    if args.coeffs_out:
        c.dump(args.coeffs_out)
    print(json.dumps(doc, indent=2))
    return 0


def cmd_study(args) -> int:
    overrides = {"seed": args.seed, "count": args.count}
    if args.config:
        cfg = StudyConfig.load(args.config, study=args.name, **overrides)
    else:
        cfg = default_config(args.name, **{k: v for k, v in overrides.items() if v is not None})
    rep = run_study(cfg)
    if args.out:
        for p in rep.write(args.out, svg=args.svg):
            print(f"wrote {p}", file=sys.stderr)
    for line in rep.check_lines():
        print(line)
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lambdavar", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("varcalc", help="variation functional of a grid function")
    g = v.add_mutually_exclusive_group(required=True)
    g.add_argument("--grid", help="grid function JSON {dim, axes, values}")
    g.add_argument("--source", help="built-in source sampled on an equispaced torus grid")
    v.add_argument("--dim", type=int, default=2)
    v.add_argument("--points", type=int, default=8)
    v.add_argument("--functional", choices=FUNCTIONALS, default="sharp")
    v.add_argument("--lambda", dest="lam", default="harmonic",
                   help="harmonic | paper:d=2 | xi:d=2,xi=loglog | constant:c=1 | table:path.json")
    v.add_argument("--alpha", default="0,1", help="index set for --functional index")
    v.add_argument("--exact-cap", type=int, default=None)
    v.add_argument("--out")
    v.set_defaults(func=cmd_varcalc)

    fo = sub.add_parser("fourier", help="rectangular partial sum of a built-in source")
    fo.add_argument("--source", required=True)
    fo.add_argument("--dim", type=int, default=2)
    fo.add_argument("--N", type=int, default=16, help="coefficient bound per axis")
    fo.add_argument("--M", type=int, default=None, help="samples per axis")
    fo.add_argument("--bounds", help="partial-sum bounds N1,N2,... (default N on every axis)")
    fo.add_argument("--x", help="evaluation point x1,x2,...")
    fo.add_argument("--coeffs-out")
    fo.set_defaults(func=cmd_fourier)

    st = sub.add_parser("study", help="run a study; exit 0 iff its checks hold")
    st.add_argument("name", choices=STUDIES)
    st.add_argument("--config", help="JSON study config; flags override its fields")
    st.add_argument("--seed", type=int)
    st.add_argument("--count", type=int)
    st.add_argument("--out", help="output directory for CSV / JSON / SVG")
    st.add_argument("--svg", action="store_true")
    st.set_defaults(func=cmd_study)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

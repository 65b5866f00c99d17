"""Study results and their CSV / JSON / SVG emission."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class StudyReport:
    """Rows of one or more tables, a summary and named pass/fail checks."""

    study: str
    tables: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    @property
    def rows(self) -> list:
        return self.tables.get("main", [])

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def check_lines(self) -> list:
        return [f"[{'PASS' if v else 'FAIL'}] {self.study}: {k}" for k, v in self.checks.items()]

    def csv_text(self, table: str = "main") -> str:
        return to_csv(self.tables[table])

    def write(self, out_dir, svg: bool = False) -> list:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        written = []
        for name, rows in self.tables.items():
            suffix = "" if name == "main" else f"_{name}"
            p = out / f"{self.study}{suffix}.csv"
            p.write_text(to_csv(rows))
            written.append(p)
        p = out / f"{self.study}_summary.json"
        p.write_text(json.dumps({"study": self.study, "summary": _clean(self.summary),
                                 "checks": self.checks, "ok": self.ok},
                                indent=2, sort_keys=True) + "\n")
        written.append(p)
        if svg and self.rows:
            p = out / f"{self.study}.svg"
            write_svg(self.rows, p, title=self.study)
            written.append(p)
        return written


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "inf" if math.isinf(v) else repr(v)
    return str(v)


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def to_csv(rows: list) -> str:
    if not rows:
        return ""
    cols = list(rows[0])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([_fmt(r.get(c, "")) for c in cols])
    return buf.getvalue()


def write_svg(rows: list, path, title: str = "", x: str | None = None) -> None:
    """Static line chart of every numeric column against the first column."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    cols = list(rows[0])
    x = x or cols[0]
    xs = [r[x] for r in rows]
    with matplotlib.rc_context({"svg.hashsalt": "lambdavar", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(6, 4))
        for c in cols:
            if c == x:
                continue
            ys = [r[c] for r in rows]
            if all(isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)
                   for v in ys):
                ax.plot(xs, ys, marker="o", label=c)
        ax.set_xlabel(x)
        ax.set_title(title)
        ax.legend(fontsize="small")
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)

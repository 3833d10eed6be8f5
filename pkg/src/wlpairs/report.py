"""Benchmark tables and dataset statistics: CSV plus a plain-text mirror."""

from __future__ import annotations

import csv
import io
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .graph import all_pairs_distances
from .pairs import GraphPair


@dataclass
class BenchmarkReport:
    method: str
    rows: dict = field(default_factory=dict)  # category -> Counter(pairs, distinguished, skipped)

    def add(self, category: str, distinguished: bool, skipped: bool) -> None:
        c = self.rows.setdefault(category or "uncategorized", Counter())
        c["pairs"] += 1
        c["distinguished"] += int(distinguished and not skipped)
        c["skipped"] += int(skipped)

    def table(self) -> list[tuple[str, int, int, int, str]]:
        out = []
        total = Counter()
        for cat in sorted(self.rows):
            c = self.rows[cat]
            total.update(c)
            out.append((cat, c["pairs"], c["distinguished"], c["skipped"], _pct(c)))
        out.append(("total", total["pairs"], total["distinguished"], total["skipped"], _pct(total)))
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["method", "category", "pairs", "distinguished", "skipped", "accuracy"])
        for row in self.table():
            w.writerow([self.method, *row])
        return buf.getvalue()

    def to_text(self) -> str:
        return format_table(["category", "pairs", "distinguished", "skipped", "accuracy"], self.table(), self.method)


def _pct(c: Counter) -> str:
    return f"{100.0 * c['distinguished'] / c['pairs']:.1f}%" if c["pairs"] else "n/a"


def format_table(header: list[str], rows: list[tuple], title: str | None = None) -> str:
    cells = [list(map(str, header))] + [[str(x) for x in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = [title] if title else []
    for i, r in enumerate(cells):
        lines.append("  ".join(x.rjust(w) if j else x.ljust(w) for j, (x, w) in enumerate(zip(r, widths))))
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- statistics

STATISTICS = ("nodes", "edges", "diameter")


def graph_statistics(pairs: list[GraphPair]) -> dict[str, dict[str, Counter]]:
    """statistic -> category -> Counter(value). Disconnected graphs have diameter 'inf'."""
    out: dict[str, dict[str, Counter]] = {s: defaultdict(Counter) for s in STATISTICS}
    for p in pairs:
        cat = p.category or "uncategorized"
        for g in (p.g, p.h):
            dm = all_pairs_distances(g)
            out["nodes"][cat][g.n] += 1
            out["edges"][cat][g.m] += 1
            out["diameter"][cat][dm.diameter if dm.connected else "inf"] += 1
    return out


def _value_key(v):
    return (1, 0) if v == "inf" else (0, v)


def statistics_rows(stats: dict[str, dict[str, Counter]]) -> list[tuple[str, str, str, int]]:
    rows = []
    for s in STATISTICS:
        for cat in sorted(stats[s]):
            for v in sorted(stats[s][cat], key=_value_key):
                rows.append((s, cat, str(v), stats[s][cat][v]))
    return rows


def statistics_csv(stats) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["statistic", "category", "value", "count"])
    w.writerows(statistics_rows(stats))
    return buf.getvalue()


def statistics_text(stats) -> str:
    parts = []
    for s in STATISTICS:
        rows = []
        for cat in sorted(stats[s]):
            c = stats[s][cat]
            vals = sorted(c, key=_value_key)
            finite = [v for v in vals if v != "inf"]
            rng = f"{finite[0]}-{finite[-1]}" if finite else "-"
            hist = " ".join(f"{v}:{c[v]}" for v in vals)
            rows.append((cat, sum(c.values()), rng, hist))
        parts.append(format_table(["category", "graphs", "range", "histogram"], rows, f"[{s}]"))
    return "\n".join(parts)


def render_figures(stats, directory) -> list[str]:
    """One bar chart per statistic, one panel per category; returns the written paths."""
    from pathlib import Path

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for s in STATISTICS:
        cats = sorted(stats[s])
        if not cats:
            continue
        fig, axes = plt.subplots(len(cats), 1, figsize=(6, 1.8 * len(cats) + 0.6), squeeze=False)
        for ax, cat in zip(axes[:, 0], cats):
            c = stats[s][cat]
            vals = sorted(c, key=_value_key)
            ax.bar([str(v) for v in vals], [c[v] for v in vals], color="#4a7ab0")
            ax.set_ylabel("graphs")
            ax.set_title(cat, fontsize=9, loc="left")
            ax.tick_params(axis="x", labelsize=7)
        axes[-1, 0].set_xlabel(s)
        fig.tight_layout()
        path = out_dir / f"{s}.png"
        fig.savefig(path, dpi=100, metadata={"Software": None})
        plt.close(fig)
        written.append(str(path))
    return written

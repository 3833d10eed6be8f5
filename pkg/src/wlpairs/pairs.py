"""Graph pairs, pair files and JSON sidecars.

A pair file holds 2N graph6 lines; lines 2i-1 and 2i form pair i. The sidecar
is a JSON list with one metadata record per pair, in the same order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .graph import Graph
from .graph6 import Graph6Error, read_graph6_file, write_graph6

DIFFICULTY_TAGS = ("1WL", "3WL", "4WL", "beyond4WL")


@dataclass(frozen=True)
class Audit:
    wl1_indistinguishable: bool
    non_isomorphic: bool
    method: str = "exact"  # how non-isomorphism was established

    @property
    def passed(self) -> bool:
        return self.wl1_indistinguishable and self.non_isomorphic

    def to_json(self) -> dict:
        return {
            "wl1_indistinguishable": self.wl1_indistinguishable,
            "non_isomorphic": self.non_isomorphic,
            "non_isomorphic_method": self.method,
        }


@dataclass(frozen=True)
class GraphPair:
    pair_id: str
    g: Graph
    h: Graph
    category: str = ""
    subcategory: str = ""
    wl_difficulty: str = "1WL"
    audit: Audit | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.wl_difficulty not in DIFFICULTY_TAGS:
            raise ValueError(f"unknown difficulty tag {self.wl_difficulty!r}")

    def metadata(self) -> dict:
        out = {
            "pair_id": self.pair_id,
            "category": self.category,
            "subcategory": self.subcategory,
            "wl_difficulty": self.wl_difficulty,
        }
        if self.audit is not None:
            out["audit"] = self.audit.to_json()
        return out


def sidecar_path(pair_path: str | Path) -> Path:
    p = Path(pair_path)
    return p.with_name(p.name + ".json")


def write_pairs(path: str | Path, pairs: list[GraphPair], sidecar: bool = True) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for pr in pairs:
            fh.write(write_graph6(pr.g) + "\n")
            fh.write(write_graph6(pr.h) + "\n")
    if sidecar:
        text = json.dumps([pr.metadata() for pr in pairs], indent=1, sort_keys=True)
        sidecar_path(path).write_text(text + "\n", encoding="utf-8")


def read_pairs(path: str | Path) -> list[GraphPair]:
    """Read a pair file, picking up metadata from the sidecar when one exists."""
    graphs = read_graph6_file(path)
    if len(graphs) % 2:
        raise Graph6Error(f"{path}: odd number of graphs ({len(graphs)}) in a pair file", 0)
    meta: list[dict] = []
    side = sidecar_path(path)
    if side.exists():
        meta = json.loads(side.read_text(encoding="utf-8"))
        if len(meta) != len(graphs) // 2:
            raise ValueError(f"{side}: {len(meta)} records for {len(graphs) // 2} pairs")
    out = []
    for i in range(len(graphs) // 2):
        m = meta[i] if meta else {}
        audit = None
        if "audit" in m:
            a = m["audit"]
            audit = Audit(a["wl1_indistinguishable"], a["non_isomorphic"], a.get("non_isomorphic_method", "exact"))
        out.append(
            GraphPair(
                pair_id=m.get("pair_id", f"pair{i + 1:04d}"),
                g=graphs[2 * i],
                h=graphs[2 * i + 1],
                category=m.get("category", ""),
                subcategory=m.get("subcategory", ""),
                wl_difficulty=m.get("wl_difficulty", "1WL"),
                audit=audit,
            )
        )
    return out

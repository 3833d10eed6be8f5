"""Embedding tables and verdict files.

Embedding CSV: ``pair_id,role,group,copy,e0,...,e{d-1}`` with role in
{G, H, G_pi}; group 0 carries the RPC roles (copies 0..q-1) and groups
1..p carry the RAPC null groups for roles G and H (copies 0..2q-1).
"""

from __future__ import annotations

import csv
import functools
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..parallel import pmap
from .stats import RapcConfig, RpcConfig, RpcVerdict, rapc_decide, rpc_decide

ROLES = ("G", "H", "G_pi")
VERDICT_HEADER = ("pair_id", "t2_test", "t2_reliability", "threshold", "outcome")
ERROR_OUTCOME = "error"


class SchemaError(ValueError):
    """The file as a whole is unusable (bad header, ragged dimension)."""


@dataclass
class PairEmbeddings:
    pair_id: str
    rows: dict = field(default_factory=dict)  # (role, group) -> {copy: vector}
    error: str | None = None

    def block(self, role: str, group: int, copies: int) -> np.ndarray:
        got = self.rows.get((role, group), {})
        if sorted(got) != list(range(copies)):
            raise ValueError(
                f"role {role} group {group}: expected copies 0..{copies - 1}, got {len(got)} copies"
            )
        out = np.array([got[c] for c in range(copies)], dtype=float)
        if not np.isfinite(out).all():
            raise ValueError(f"role {role} group {group}: NaN or infinite embedding values")
        return out

    def groups(self) -> list[int]:
        return sorted({g for _, g in self.rows if g > 0})


@dataclass
class EmbeddingTable:
    d: int
    pairs: dict[str, PairEmbeddings]


def _fail(pe: PairEmbeddings, msg: str) -> None:
    if pe.error is None:
        pe.error = msg


def read_embeddings(path: str | Path) -> EmbeddingTable:
    """Parse an embedding CSV. Row-level problems mark only their own pair."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise SchemaError(f"{path}: empty embedding file")
        head = [h.strip() for h in header]
        if head[:4] != ["pair_id", "role", "group", "copy"] or len(head) < 5:
            raise SchemaError(f"{path}: header must start with pair_id,role,group,copy,e0")
        d = len(head) - 4
        if head[4:] != [f"e{i}" for i in range(d)]:
            raise SchemaError(f"{path}: embedding columns must be named e0..e{d - 1}")
        pairs: dict[str, PairEmbeddings] = {}
        for lineno, row in enumerate(reader, start=2):
            if not row or not "".join(row).strip():
                continue
            pid = row[0].strip()
            pe = pairs.setdefault(pid, PairEmbeddings(pid))
            if len(row) != d + 4:
                _fail(pe, f"line {lineno}: expected {d + 4} fields, got {len(row)}")
                continue
            role = row[1].strip()
            if role not in ROLES:
                _fail(pe, f"line {lineno}: unknown role {role!r}")
                continue
            try:
                group, copy = int(row[2]), int(row[3])
                vec = [float(x) for x in row[4:]]
            except ValueError as e:
                _fail(pe, f"line {lineno}: {e}")
                continue
            slot = pe.rows.setdefault((role, group), {})
            if copy in slot:
                _fail(pe, f"line {lineno}: duplicate row for role {role} group {group} copy {copy}")
                continue
            slot[copy] = vec
    return EmbeddingTable(d, pairs)


def _evaluate(pe: PairEmbeddings, mode: str, cfg) -> RpcVerdict | str:
    if pe.error is not None:
        return pe.error
    try:
        f_g = pe.block("G", 0, cfg.q)
        f_h = pe.block("H", 0, cfg.q)
        f_gpi = pe.block("G_pi", 0, cfg.q)
        if mode == "rpc":
            return rpc_decide(f_g, f_h, f_gpi, cfg)
        want = list(range(1, cfg.p + 1))
        if pe.groups() != want:
            return f"expected groups 1..{cfg.p}, got {pe.groups()}"
        g_groups = [pe.block("G", j, 2 * cfg.q) for j in want]
        h_groups = [pe.block("H", j, 2 * cfg.q) for j in want]
        return rapc_decide(f_g, f_h, f_gpi, g_groups, h_groups, cfg)
    except ValueError as e:
        return str(e)


def evaluate_table(
    table: EmbeddingTable, mode: str, cfg: RpcConfig | RapcConfig, workers: int = 1
) -> list[tuple[str, RpcVerdict | str]]:
    """Verdict (or error message) per pair, sorted by pair id."""
    if mode not in ("rpc", "rapc"):
        raise ValueError(f"mode must be rpc or rapc, got {mode!r}")
    if cfg.d != table.d:
        raise SchemaError(f"config dimension d={cfg.d} does not match the file's d={table.d}")
    ids = sorted(table.pairs)
    out = pmap(functools.partial(_evaluate, mode=mode, cfg=cfg), [table.pairs[i] for i in ids], workers)
    return list(zip(ids, out))


def _fmt(x: float) -> str:
    return "inf" if math.isinf(x) else repr(float(x))


def write_verdicts(path: str | Path, results: list[tuple[str, RpcVerdict | str]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(VERDICT_HEADER)
        for pid, v in results:
            if isinstance(v, RpcVerdict):
                w.writerow([pid, _fmt(v.t2_test), _fmt(v.t2_reliability), _fmt(v.threshold), v.outcome])
            else:
                w.writerow([pid, "", "", "", ERROR_OUTCOME])


def read_verdicts(path: str | Path) -> dict[str, str]:
    """pair_id -> outcome."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != VERDICT_HEADER:
            raise SchemaError(f"{path}: not a verdict file (header {reader.fieldnames})")
        out = {}
        for row in reader:
            if row["pair_id"] in out:
                raise SchemaError(f"{path}: duplicate pair {row['pair_id']}")
            out[row["pair_id"]] = row["outcome"]
    return out

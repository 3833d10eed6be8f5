"""Command-line interface: generate, verify, distinguish, rpc, reduce-seeds, stats."""

from __future__ import annotations

import argparse
import csv
import functools
import io
import logging
import sys
import zlib
from pathlib import Path

import numpy as np

from .enumeration import EnumerationLimitError
from .extensions import ExtensionConfig, ExtensionResourceError, extension_distinguishes
from .generators.assemble import CATEGORIES, InsufficientSourceError, Sources, assemble_category
from .generators.cfi import CfiSpec, gen_cfi
from .generators.csl import DEFAULT_SKIPS, CslParams, gen_csl
from .generators.regular import certify, verify_4vc, verify_drg, verify_srg
from .graph import GraphError, Permutation
from .graph6 import Graph6Error, parse_graph6, read_graph6_file, write_graph6
from .pairs import GraphPair, read_pairs, write_pairs
from .parallel import pmap, worker_count
from .report import BenchmarkReport, format_table, graph_statistics, render_figures, statistics_csv, statistics_text
from .rpc.stats import RapcConfig, RpcConfig, rpc_threshold
from .rpc.table import ERROR_OUTCOME, SchemaError, evaluate_table, read_embeddings, read_verdicts, write_verdicts
from .wl import WlConfig, WlResourceError, distinguishes

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_INTERNAL = 4

log = logging.getLogger("wlpairs")


class InputError(ValueError):
    pass


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


# ------------------------------------------------------------------ generate


def _parse_counts(items: list[str] | None) -> dict[str, int]:
    out = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep or not val.isdigit():
            raise InputError(f"--count expects SUB=N, got {item!r}")
        out[key] = int(val)
    return out


def _permutation_rows(pairs: list[GraphPair], q: int, p: int, seed: int) -> str:
    """Seeded, independent reindexings for every (pair, role, group, copy)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["pair_id", "role", "group", "copy", "graph", "permutation"])
    for pr in sorted(pairs, key=lambda x: x.pair_id):
        rng = np.random.default_rng([seed, zlib.crc32(pr.pair_id.encode())])
        blocks = [("G", 0, q, "g", pr.g), ("H", 0, q, "h", pr.h), ("G_pi", 0, q, "g", pr.g)]
        for j in range(1, p + 1):
            blocks += [("G", j, 2 * q, "g", pr.g), ("H", j, 2 * q, "h", pr.h)]
        for role, group, copies, which, graph in blocks:
            for c in range(copies):
                perm = Permutation.random(graph.n, rng)
                w.writerow([pr.pair_id, role, group, c, which, " ".join(map(str, perm.mapping))])
    return buf.getvalue()


def cmd_generate(args) -> int:
    if args.kind == "csl":
        rs = args.r or list(DEFAULT_SKIPS)
        lines = [write_graph6(gen_csl(CslParams(args.m, r))) for r in rs]
        _emit("\n".join(lines) + "\n", args.output)
        return EXIT_OK
    if args.kind == "cfi":
        backbone = parse_graph6(args.backbone)
        g = gen_cfi(CfiSpec(backbone, args.twist, args.twist_edge))
        _emit(write_graph6(g) + "\n", args.output)
        return EXIT_OK

    cats = list(CATEGORIES) if args.category == "all" else [args.category]
    src = Sources(
        max_n=args.max_n,
        graph6_streams=tuple(Path(p) for p in args.stream or ()),
        catalogs=tuple(Path(p) for p in args.catalog or ()),
        use_builtin_catalog=not args.no_builtin_catalog,
        cfi_backbone_nodes=tuple(args.cfi_backbone_nodes),
        cfi_iso_node_limit=args.iso_node_limit,
        workers=worker_count(args.workers),
    )
    counts = _parse_counts(args.count)
    pairs: list[GraphPair] = []
    shortfalls: list[InsufficientSourceError] = []
    for cat in cats:
        own = {k: v for k, v in counts.items() if k in _subcategories(cat)}
        pairs += assemble_category(
            cat, src, seed=args.seed, counts=own, allow_shortfall=args.allow_shortfall, shortfalls=shortfalls
        )
    if not args.output:
        raise InputError("generate category needs --output")
    write_pairs(args.output, pairs)
    failed = [p.pair_id for p in pairs if not p.audit.passed]
    rows = []
    for cat in cats:
        mine = [p for p in pairs if p.pair_id.startswith(cat + "-")]
        rows.append((cat, len(mine), sum(p.audit.wl1_indistinguishable for p in mine),
                     sum(p.audit.non_isomorphic for p in mine)))
    sys.stdout.write(format_table(["category", "pairs", "wl1_indistinguishable", "non_isomorphic"], rows, "audit"))
    for s in shortfalls:
        sys.stdout.write(f"shortfall: {s}\n")
    if args.emit_permutations:
        Path(args.emit_permutations).write_text(_permutation_rows(pairs, args.q, args.p, args.seed), encoding="utf-8")
    if failed:
        log.error("audit failed for %s", ", ".join(failed))
        return EXIT_INTERNAL
    return EXIT_OK


def _subcategories(cat: str) -> set[str]:
    from .generators.assemble import FULL_COUNTS

    return set(FULL_COUNTS[cat])


# -------------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    if args.pairs:
        from .generators.assemble import audit_pairs

        pairs = audit_pairs(read_pairs(args.file), args.iso_node_limit, worker_count(args.workers))
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["pair_id", "category", "wl1_indistinguishable", "non_isomorphic", "method"])
        for p in sorted(pairs, key=lambda x: x.pair_id):
            w.writerow([p.pair_id, p.category, int(p.audit.wl1_indistinguishable), int(p.audit.non_isomorphic), p.audit.method])
        _emit(buf.getvalue(), args.output)
        return EXIT_OK if all(p.audit.passed for p in pairs) else 1
    graphs = read_graph6_file(args.file)
    rows = pmap(_verify_row, graphs, worker_count(args.workers))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "graph6", "n", "m", "level", "regular_degree", "srg", "four_vertex_condition", "drg"])
    for i, row in enumerate(rows, start=1):
        w.writerow([i, *row])
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


def _verify_row(g):
    c = certify(g)
    srg = verify_srg(g)
    drg = verify_drg(g)
    deg = int(g.degrees()[0]) if c is not None else ""
    return [write_graph6(g), g.n, g.m, c.level if c else "irregular", deg,
            str(srg) if srg else "", int(verify_4vc(g)), str(drg) if drg else ""]


# ---------------------------------------------------------------- distinguish


def parse_method(text: str, max_iterations: int | None = None, budget: int | None = None):
    t = text.strip().lower()
    kw = {}
    if budget is not None:
        kw["budget"] = budget
    if t == "1wl":
        return WlConfig.wl1(max_iterations=max_iterations)
    for prefix, ctor in (("kwl:", WlConfig.wlk), ("kfwl:", WlConfig.fwlk)):
        if t.startswith(prefix):
            k = t[len(prefix):]
            if not k.isdigit():
                raise InputError(f"bad method {text!r}")
            return ctor(int(k), max_iterations=max_iterations, **kw)
    try:
        return ExtensionConfig.parse(t)
    except ValueError as e:
        raise InputError(str(e)) from None


def _distinguish_one(pair: GraphPair, method) -> tuple[bool, bool, str]:
    """(distinguished, skipped, note)."""
    try:
        if isinstance(method, WlConfig):
            return distinguishes(method, pair.g, pair.h), False, ""
        return extension_distinguishes(method, pair.g, pair.h), False, ""
    except (WlResourceError, ExtensionResourceError) as e:
        return False, True, str(e)


def _max_feasible_n(cfg: WlConfig) -> int:
    n = 1
    while cfg.round_cost(n + 1) <= cfg.budget:
        n += 1
    return n


def cmd_distinguish(args) -> int:
    method = parse_method(args.method, args.max_iterations, args.budget)
    if isinstance(method, WlConfig) and method.method != "wl1":
        log.warning(
            "%s: budget %.0e allows unions of at most %d nodes (pairs of %d-node graphs); larger pairs are skipped",
            method.label, method.budget, _max_feasible_n(method), _max_feasible_n(method) // 2,
        )
    pairs = sorted(read_pairs(args.pairs), key=lambda p: p.pair_id)
    results = pmap(functools.partial(_distinguish_one, method=method), pairs, worker_count(args.workers), chunksize=1)
    label = args.method.strip().lower()
    report = BenchmarkReport(label)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["pair_id", "category", "subcategory", "method", "distinguished", "skipped"])
    for p, (dist, skipped, _) in zip(pairs, results):
        report.add(p.category, dist, skipped)
        w.writerow([p.pair_id, p.category, p.subcategory, label, int(dist), int(skipped)])
    if args.output:
        Path(args.output).write_text(buf.getvalue(), encoding="utf-8")
    if args.report:
        Path(args.report).write_text(report.to_csv(), encoding="utf-8")
    sys.stdout.write(report.to_text())
    return EXIT_OK


# ----------------------------------------------------------------------- rpc


def cmd_rpc(args) -> int:
    table = read_embeddings(args.embeddings)
    d = table.d if args.d is None else args.d
    if args.mode == "rpc":
        cfg = RpcConfig(q=args.q, d=d, alpha=args.alpha, manual_threshold=args.threshold, seed=args.seed)
        sys.stdout.write(f"threshold {rpc_threshold(cfg):.2f} (q={cfg.q}, d={cfg.d}, alpha={cfg.alpha})\n")
    else:
        cfg = RapcConfig(p=args.p, q=args.q, d=d, seed=args.seed)
        sys.stdout.write(f"threshold adaptive per pair (p={cfg.p}, q={cfg.q}, d={cfg.d})\n")
    results = evaluate_table(table, args.mode, cfg, worker_count(args.workers))
    write_verdicts(args.output, results)
    counts = {k: 0 for k in ("distinguished", "not_distinguished", "unreliable", ERROR_OUTCOME)}
    for pid, v in results:
        if isinstance(v, str):
            counts[ERROR_OUTCOME] += 1
            log.error("pair %s: %s", pid, v)
        else:
            counts[v.outcome] += 1
    sys.stdout.write(format_table(["outcome", "pairs"], list(counts.items()), "summary"))
    return EXIT_OK


# -------------------------------------------------------------- reduce-seeds


def reduce_verdicts(runs: list[dict[str, str]]) -> dict[str, str]:
    """Best-of-seeds: distinguished under any seed, unless unreliable under some seed."""
    ids = set(runs[0])
    for r in runs[1:]:
        if set(r) != ids:
            raise InputError("verdict files cover different pair sets")
    out = {}
    for pid in sorted(ids):
        outs = [r[pid] for r in runs]
        if "unreliable" in outs:
            out[pid] = "unreliable"
        elif "distinguished" in outs:
            out[pid] = "distinguished"
        elif ERROR_OUTCOME in outs:
            out[pid] = ERROR_OUTCOME
        else:
            out[pid] = "not_distinguished"
    return out


def cmd_reduce_seeds(args) -> int:
    runs = [read_verdicts(p) for p in args.verdicts]
    reduced = reduce_verdicts(runs)
    categories = {}
    if args.pairs:
        categories = {p.pair_id: p.category for p in read_pairs(args.pairs)}
    report = BenchmarkReport(f"best of {len(runs)} seeds")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["pair_id", "seeds", "distinguished_seeds", "unreliable_seeds", "outcome"])
    for pid, outcome in reduced.items():
        outs = [r[pid] for r in runs]
        w.writerow([pid, len(runs), outs.count("distinguished"), outs.count("unreliable"), outcome])
        report.add(categories.get(pid, "all"), outcome == "distinguished", False)
    unreliable = [pid for pid, o in reduced.items() if o == "unreliable"]
    if args.output:
        Path(args.output).write_text(buf.getvalue(), encoding="utf-8")
    if args.report:
        Path(args.report).write_text(report.to_csv(), encoding="utf-8")
    sys.stdout.write(report.to_text())
    sys.stdout.write(
        f"reliability check passed for every pair under every seed: {'yes' if not unreliable else 'no'}"
        f" ({len(unreliable)} flagged)\n"
    )
    return EXIT_OK


# --------------------------------------------------------------------- stats


def cmd_stats(args) -> int:
    stats = graph_statistics(read_pairs(args.pairs))
    if args.output:
        Path(args.output).write_text(statistics_csv(stats), encoding="utf-8")
    sys.stdout.write(statistics_text(stats))
    if args.figures:
        for path in render_figures(stats, args.figures):
            sys.stdout.write(f"figure {path}\n")
    return EXIT_OK


# ---------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wlpairs", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="build graphs or audited pair datasets")
    gsub = gen.add_subparsers(dest="kind", required=True)
    csl = gsub.add_parser("csl", help="circulant skip-link graphs")
    csl.add_argument("--m", type=int, default=41)
    csl.add_argument("--r", type=int, nargs="+", help="skip lengths (default: the ten standard ones)")
    csl.add_argument("-o", "--output")
    cfi = gsub.add_parser("cfi", help="one CFI graph over a graph6 backbone")
    cfi.add_argument("--backbone", required=True, help="backbone in graph6")
    cfi.add_argument("--twist", action="store_true")
    cfi.add_argument("--twist-edge", type=int, default=0, help="index into the sorted backbone edges")
    cfi.add_argument("-o", "--output")
    cat = gsub.add_parser("category", help="assemble one category (or all) into a pair file")
    cat.add_argument("category", choices=list(CATEGORIES) + ["all"])
    cat.add_argument("--seed", type=int, default=0)
    cat.add_argument("--max-n", type=int, default=8, help="node count for the internal enumeration")
    cat.add_argument("--stream", action="append", help="graph6 file replacing the internal enumeration")
    cat.add_argument("--catalog", action="append", help="graph6 catalog of SRG/DRG candidates")
    cat.add_argument("--no-builtin-catalog", action="store_true")
    cat.add_argument("--cfi-backbone-nodes", type=int, nargs="+", default=[3, 4, 5])
    cat.add_argument("--iso-node-limit", type=int, default=130,
                     help="largest CFI graph audited by exact isomorphism search")
    cat.add_argument("--count", action="append", metavar="SUB=N", help="override a subcategory size")
    cat.add_argument("--allow-shortfall", action="store_true", help="emit what the sources allow")
    cat.add_argument("--emit-permutations", metavar="CSV", help="write seeded copy reindexings for model runners")
    cat.add_argument("--q", type=int, default=32, help="copies per role (with --emit-permutations)")
    cat.add_argument("--p", type=int, default=0, help="RAPC groups per graph (with --emit-permutations)")
    cat.add_argument("--workers", type=int)
    cat.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_generate)

    ver = sub.add_parser("verify", help="regularity certificates, or pair audits with --pairs")
    ver.add_argument("file")
    ver.add_argument("--pairs", action="store_true", help="treat the file as a pair file and re-audit it")
    ver.add_argument("--iso-node-limit", type=int, default=130)
    ver.add_argument("--workers", type=int)
    ver.add_argument("-o", "--output")
    ver.set_defaults(func=cmd_verify)

    dis = sub.add_parser("distinguish", help="run a distinguisher over a pair file")
    dis.add_argument("pairs")
    dis.add_argument("--method", required=True, help="1wl, kwl:K, kfwl:K, s3, s4, n1, n2, m1")
    dis.add_argument("--max-iterations", type=int)
    dis.add_argument("--budget", type=int, help="tuple-update budget per refinement round")
    dis.add_argument("--workers", type=int)
    dis.add_argument("-o", "--output", help="per-pair verdict CSV")
    dis.add_argument("--report", help="aggregated report CSV")
    dis.set_defaults(func=cmd_distinguish)

    rpc = sub.add_parser("rpc", help="paired-comparison verdicts from an embedding CSV")
    rpc.add_argument("embeddings")
    rpc.add_argument("--mode", choices=["rpc", "rapc"], default="rpc")
    rpc.add_argument("--q", type=int, default=32)
    rpc.add_argument("--d", type=int, help="embedding dimension (default: from the file)")
    rpc.add_argument("--alpha", type=float, default=0.95)
    rpc.add_argument("--threshold", type=float, help="manual threshold override")
    rpc.add_argument("--p", type=int, default=1, help="RAPC groups per graph")
    rpc.add_argument("--seed", type=int, default=0)
    rpc.add_argument("--workers", type=int)
    rpc.add_argument("-o", "--output", required=True)
    rpc.set_defaults(func=cmd_rpc)

    red = sub.add_parser("reduce-seeds", help="best-of-seeds reduction of verdict files")
    red.add_argument("verdicts", nargs="+")
    red.add_argument("--pairs", help="pair file whose sidecar supplies categories")
    red.add_argument("-o", "--output")
    red.add_argument("--report")
    red.set_defaults(func=cmd_reduce_seeds)

    st = sub.add_parser("stats", help="node/edge/diameter histograms per category")
    st.add_argument("pairs")
    st.add_argument("-o", "--output", help="statistics CSV")
    st.add_argument("--figures", metavar="DIR", help="also render PNG histograms into DIR")
    st.set_defaults(func=cmd_stats)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (WlResourceError, ExtensionResourceError) as e:
        log.error("resource limit: %s", e)
        return EXIT_RESOURCE
    except (InputError, InsufficientSourceError, EnumerationLimitError, Graph6Error, GraphError, SchemaError,
            FileNotFoundError, IsADirectoryError, PermissionError, ValueError) as e:
        log.error("%s", e)
        return EXIT_INPUT
    except Exception as e:  # noqa: BLE001 - last-resort classification
        log.exception("internal error: %s", e)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

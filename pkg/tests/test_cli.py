import csv
import hashlib
import os
import subprocess
import sys

import numpy as np
import pytest

from wlpairs.cli import EXIT_INPUT, EXIT_OK, EXIT_RESOURCE, main, reduce_verdicts
from wlpairs.generators.cfi import cfi_pair
from wlpairs.generators.csl import DEFAULT_SKIPS
from wlpairs.graph import complete_graph, cycle_graph, disjoint_union
from wlpairs.graph6 import read_graph6_file, write_graph6
from wlpairs.pairs import GraphPair, read_pairs, sidecar_path, write_pairs
from wlpairs.report import graph_statistics


def _run(args, env_workers=None, cwd=None):
    env = dict(os.environ)
    if env_workers is not None:
        env["WLPAIRS_WORKERS"] = str(env_workers)
    return subprocess.run(
        [sys.executable, "-m", "wlpairs.cli", *args], capture_output=True, text=True, env=env, cwd=cwd
    )


def _digest(*paths):
    h = hashlib.sha256()
    for p in paths:
        h.update(open(p, "rb").read())
    return h.hexdigest()


CATEGORY_ARGS = [
    "generate", "category", "basic", "--max-n", "7", "--count", "basic=10", "--seed", "3",
]


def test_generate_is_byte_deterministic(tmp_path):
    digests = set()
    for i, workers in enumerate((1, 1, 1, 2)):
        out = tmp_path / f"run{i}.g6"
        perms = tmp_path / f"perm{i}.csv"
        r = _run(CATEGORY_ARGS + ["-o", str(out), "--emit-permutations", str(perms), "--q", "4"], env_workers=workers)
        assert r.returncode == 0, r.stderr
        digests.add(_digest(out, sidecar_path(out), perms))
    assert len(digests) == 1


def test_generate_output_is_audited(tmp_path):
    out = tmp_path / "b.g6"
    assert main(CATEGORY_ARGS + ["-o", str(out)]) == EXIT_OK
    pairs = read_pairs(out)
    assert len(pairs) == 10 and all(p.audit.passed for p in pairs)
    assert main(["verify", str(out), "--pairs", "-o", str(tmp_path / "audit.csv")]) == EXIT_OK
    rows = list(csv.DictReader(open(tmp_path / "audit.csv")))
    assert all(r["wl1_indistinguishable"] == "1" and r["non_isomorphic"] == "1" for r in rows)


def test_permutations_file(tmp_path):
    out = tmp_path / "b.g6"
    perms = tmp_path / "p.csv"
    main(CATEGORY_ARGS[:5] + ["--count", "basic=2", "-o", str(out), "--emit-permutations", str(perms), "--q", "3", "--p", "1"])
    rows = list(csv.DictReader(open(perms)))
    # per pair: 3 roles x 3 copies + 2 roles x 6 copies
    assert len(rows) == 2 * (9 + 12)
    for r in rows:
        assert sorted(map(int, r["permutation"].split())) == list(range(1, 8))


def test_shortfall_exit_code(tmp_path, capsys):
    args = ["generate", "category", "basic", "--max-n", "6", "--count", "basic=5", "-o", str(tmp_path / "x.g6")]
    assert main(args) == EXIT_INPUT
    assert main(args + ["--allow-shortfall"]) == EXIT_OK
    assert "shortfall" in capsys.readouterr().out


def test_generate_csl_and_cfi(tmp_path):
    out = tmp_path / "csl.g6"
    assert main(["generate", "csl", "-o", str(out)]) == EXIT_OK
    gs = read_graph6_file(out)
    assert len(gs) == len(DEFAULT_SKIPS) and all(g.n == 41 and g.m == 82 for g in gs)
    for twist in ([], ["--twist"]):
        out = tmp_path / f"cfi{len(twist)}.g6"
        assert main(["generate", "cfi", "--backbone", write_graph6(complete_graph(3)), *twist, "-o", str(out)]) == EXIT_OK
    g, h = cfi_pair(complete_graph(3))
    assert read_graph6_file(tmp_path / "cfi0.g6") == [g]
    assert read_graph6_file(tmp_path / "cfi1.g6") == [h]


def test_bad_inputs_exit_2(tmp_path):
    assert main(["generate", "cfi", "--backbone", "D?"]) == EXIT_INPUT
    assert main(["generate", "csl", "--m", "10", "--r", "4"]) == EXIT_INPUT
    assert main(["verify", str(tmp_path / "missing.g6")]) == EXIT_INPUT
    p = tmp_path / "pairs.g6"
    write_pairs(p, [GraphPair("a", cycle_graph(6), disjoint_union(cycle_graph(3), cycle_graph(3)))])
    assert main(["distinguish", str(p), "--method", "bogus"]) == EXIT_INPUT


def test_distinguish_and_skip(tmp_path, capsys):
    p = tmp_path / "pairs.g6"
    c6, two = cycle_graph(6), disjoint_union(cycle_graph(3), cycle_graph(3))
    write_pairs(p, [GraphPair("a", c6, two, "basic", "basic")])
    out = tmp_path / "v.csv"
    assert main(["distinguish", str(p), "--method", "1wl", "-o", str(out)]) == EXIT_OK
    assert list(csv.DictReader(open(out)))[0]["distinguished"] == "0"
    assert main(["distinguish", str(p), "--method", "kwl:3", "-o", str(out)]) == EXIT_OK
    assert list(csv.DictReader(open(out)))[0]["distinguished"] == "1"
    assert main(["distinguish", str(p), "--method", "kwl:3", "--budget", "10", "-o", str(out)]) == EXIT_OK
    row = list(csv.DictReader(open(out)))[0]
    assert row["skipped"] == "1" and row["distinguished"] == "0"


def test_reduce_rules():
    runs = [
        {"a": "not_distinguished", "b": "distinguished", "c": "distinguished", "d": "error"},
        {"a": "distinguished", "b": "unreliable", "c": "not_distinguished", "d": "not_distinguished"},
    ]
    assert reduce_verdicts(runs) == {
        "a": "distinguished",
        "b": "unreliable",
        "c": "distinguished",
        "d": "error",
    }


def _verdicts(path, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["pair_id", "t2_test", "t2_reliability", "threshold", "outcome"])
        for pid, outcome in rows:
            w.writerow([pid, "1.0", "0.5", "72.0", outcome])


def test_reduce_seeds_command(tmp_path, capsys):
    _verdicts(tmp_path / "s1.csv", [("a", "distinguished"), ("b", "not_distinguished")])
    _verdicts(tmp_path / "s2.csv", [("a", "not_distinguished"), ("b", "unreliable")])
    out = tmp_path / "r.csv"
    assert main(["reduce-seeds", str(tmp_path / "s1.csv"), str(tmp_path / "s2.csv"), "-o", str(out)]) == EXIT_OK
    rows = {r["pair_id"]: r["outcome"] for r in csv.DictReader(open(out))}
    assert rows == {"a": "distinguished", "b": "unreliable"}
    assert "no (1 flagged)" in capsys.readouterr().out
    _verdicts(tmp_path / "s3.csv", [("a", "distinguished")])
    assert main(["reduce-seeds", str(tmp_path / "s1.csv"), str(tmp_path / "s3.csv")]) == EXIT_INPUT


def test_rpc_command(tmp_path, capsys):
    rng = np.random.default_rng(0)
    q, d = 6, 2
    path = tmp_path / "emb.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["pair_id", "role", "group", "copy", "e0", "e1"])
        for role, shift in (("G", 0), ("H", 30), ("G_pi", 0)):
            for c in range(q):
                w.writerow(["p1", role, 0, c, *rng.normal(size=d) + shift])
    out = tmp_path / "v.csv"
    assert main(["rpc", str(path), "--q", str(q), "-o", str(out)]) == EXIT_OK
    assert list(csv.DictReader(open(out)))[0]["outcome"] == "distinguished"
    assert "threshold" in capsys.readouterr().out
    assert main(["rpc", str(path), "--q", "3", "-o", str(out)]) == EXIT_INPUT


def test_stats_histogram(tmp_path, capsys):
    g, h = cycle_graph(10), disjoint_union(cycle_graph(5), cycle_graph(5))
    pairs = [GraphPair("a", g, h, "extension", "virtual_cycle")]
    st = graph_statistics(pairs)
    assert dict(st["nodes"]["extension"]) == {10: 2}
    assert dict(st["diameter"]["extension"]) == {5: 1, "inf": 1}
    p = tmp_path / "p.g6"
    write_pairs(p, pairs)
    figs = tmp_path / "figs"
    assert main(["stats", str(p), "-o", str(tmp_path / "s.csv"), "--figures", str(figs)]) == EXIT_OK
    assert sorted(os.listdir(figs)) == ["diameter.png", "edges.png", "nodes.png"]
    first = _digest(figs / "nodes.png")
    main(["stats", str(p), "--figures", str(figs)])
    assert _digest(figs / "nodes.png") == first


def test_resource_errors_exit_3(tmp_path, monkeypatch):
    from wlpairs import cli
    from wlpairs.wl import WlResourceError

    def boom(args):
        raise WlResourceError("too big")

    monkeypatch.setattr(cli, "cmd_stats", boom)
    assert main(["stats", str(tmp_path / "x.g6")]) == EXIT_RESOURCE


def test_internal_errors_exit_4(tmp_path, monkeypatch):
    from wlpairs import cli

    def boom(args):
        raise RuntimeError("bug")

    monkeypatch.setattr(cli, "cmd_stats", boom)
    assert main(["stats", str(tmp_path / "x.g6")]) == 4


def test_missing_command_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2

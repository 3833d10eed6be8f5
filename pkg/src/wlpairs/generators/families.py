"""Algebraic constructions of strongly regular and distance-regular graphs.

These give a built-in catalog for desk-scale runs; larger catalogs are read
from graph6 files.
"""

from __future__ import annotations

import itertools
from typing import Callable, Sequence

import numpy as np

from ..graph import Graph


def rook_graph(n: int = 4) -> Graph:
    """Cartesian product K_n x K_n (the n x n rook's graph)."""
    a = np.zeros((n * n, n * n), dtype=np.int8)
    for i, j, k, l in itertools.product(range(n), repeat=4):
        if (i, j) != (k, l) and (i == k or j == l):
            a[i * n + j, k * n + l] = 1
    return Graph.from_adjacency(a)


def shrikhande_graph() -> Graph:
    """Cayley graph of Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}."""
    a = np.zeros((16, 16), dtype=np.int8)
    for i, j in itertools.product(range(4), repeat=2):
        for di, dj in ((1, 0), (0, 1), (1, 1), (3, 0), (0, 3), (3, 3)):
            a[i * 4 + j, ((i + di) % 4) * 4 + (j + dj) % 4] = 1
    return Graph.from_adjacency(a)


def triangular_graph(n: int) -> Graph:
    """Line graph of K_n."""
    pairs = list(itertools.combinations(range(n), 2))
    a = np.array([[int(p != q and bool(set(p) & set(q))) for q in pairs] for p in pairs], dtype=np.int8)
    return Graph.from_adjacency(a)


def seidel_switch(g: Graph, subset: Sequence[int]) -> Graph:
    """Toggle every edge between ``subset`` (1-based) and its complement."""
    a = g.adjacency().copy()
    s = np.zeros(g.n, dtype=bool)
    s[np.asarray(subset, dtype=np.int64) - 1] = True
    cross = np.logical_xor.outer(s, s)
    a[cross] = 1 - a[cross]
    return Graph.from_adjacency(a)


def chang_graphs() -> list[Graph]:
    """The three Chang graphs, srg(28,12,6,4), by Seidel switching T(8).

    The switching sets are the edges of K_8 (nodes of T(8)) forming a perfect
    matching, an 8-cycle, and a triangle plus a 5-cycle.
    """
    pairs = list(itertools.combinations(range(8), 2))
    index = {p: i + 1 for i, p in enumerate(pairs)}

    def ids(edges):
        return [index[(min(u, v), max(u, v))] for u, v in edges]

    t8 = triangular_graph(8)
    matching = [(0, 1), (2, 3), (4, 5), (6, 7)]
    c8 = [(i, (i + 1) % 8) for i in range(8)]
    c3c5 = [(0, 1), (1, 2), (2, 0)] + [(3 + i, 3 + (i + 1) % 5) for i in range(5)]
    return [seidel_switch(t8, ids(s)) for s in (matching, c8, c3c5)]


def latin_square_graph(square: Sequence[Sequence[int]]) -> Graph:
    """Cells adjacent when they share a row, a column or a symbol."""
    sq = np.asarray(square)
    n = sq.shape[0]
    cells = [(i, j, int(sq[i, j])) for i in range(n) for j in range(n)]
    a = np.zeros((n * n, n * n), dtype=np.int8)
    for x, (i, j, s) in enumerate(cells):
        for y, (k, l, t) in enumerate(cells):
            if x != y and (i == k or j == l or s == t):
                a[x, y] = 1
    return Graph.from_adjacency(a)


def is_latin_square(square: Sequence[Sequence[int]]) -> bool:
    sq = np.asarray(square)
    n = sq.shape[0]
    want = list(range(n))
    return all(sorted(sq[i]) == want and sorted(sq[:, i]) == want for i in range(n))


def group_table(order: int, op: Callable[[int, int], int]) -> list[list[int]]:
    return [[op(a, b) for b in range(order)] for a in range(order)]


def cyclic_table(n: int) -> list[list[int]]:
    return group_table(n, lambda a, b: (a + b) % n)


def product_table(n1: int, n2: int) -> list[list[int]]:
    """Cayley table of Z_n1 x Z_n2 with elements encoded as ``a1 * n2 + a2``."""
    def op(a, b):
        return ((a // n2 + b // n2) % n1) * n2 + (a % n2 + b % n2) % n2

    return group_table(n1 * n2, op)


def dihedral_table(m: int) -> list[list[int]]:
    """Cayley table of the dihedral group of order 2m; element ``s*m + r`` is s^s r^r."""
    def op(a, b):
        s1, r1 = divmod(a, m)
        s2, r2 = divmod(b, m)
        r = (r2 + (r1 if s2 == 0 else -r1)) % m
        return ((s1 + s2) % 2) * m + r

    return group_table(2 * m, op)


# order-5 Latin square outside the cyclic main class
NONGROUP_SQUARE_5 = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


def paley_graph(q: int) -> Graph:
    """Paley graph for a prime q = 1 mod 4."""
    squares = {(x * x) % q for x in range(1, q)}
    a = np.array([[int(i != j and (i - j) % q in squares) for j in range(q)] for i in range(q)], dtype=np.int8)
    return Graph.from_adjacency(a)


# -------------------------------------------------------------------- designs


def _group_ops(kind: str):
    """(order, add, neg) for small abelian groups named like 'Z15', 'Z4xZ4', 'Z2^4'."""
    if "^" in kind:
        base, power = kind[1:].split("^")
        moduli = [int(base)] * int(power)
    else:
        moduli = [int(x[1:]) for x in kind.split("x")]
    elems = list(itertools.product(*[range(m) for m in moduli]))
    index = {e: i for i, e in enumerate(elems)}

    def add(a, b):
        return index[tuple((x + y) % m for x, y, m in zip(elems[a], elems[b], moduli))]

    def neg(a):
        return index[tuple((-x) % m for x, m in zip(elems[a], moduli))]

    return len(elems), add, neg


def difference_sets(kind: str, k: int, lam: int, limit: int | None = None) -> list[tuple[int, ...]]:
    """(v, k, lam) difference sets containing the identity, by exhaustive search."""
    v, add, neg = _group_ops(kind)
    found = []
    for rest in itertools.combinations(range(1, v), k - 1):
        d = (0,) + rest
        counts = [0] * v
        for x in d:
            for y in d:
                if x != y:
                    counts[add(x, neg(y))] += 1
        if all(c == lam for c in counts[1:]):
            found.append(d)
            if limit is not None and len(found) >= limit:
                break
    return found


def incidence_graph(kind: str, dset: Sequence[int]) -> Graph:
    """Bipartite point-block incidence graph of the development of a difference set."""
    v, add, _ = _group_ops(kind)
    a = np.zeros((2 * v, 2 * v), dtype=np.int8)
    for g in range(v):
        for x in dset:
            p = add(x, g)
            a[p, v + g] = a[v + g, p] = 1
    return Graph.from_adjacency(a)


def complement_set(kind: str, dset: Sequence[int]) -> tuple[int, ...]:
    """Complement of a difference set, itself a difference set of the complementary design."""
    v, _, _ = _group_ops(kind)
    return tuple(x for x in range(v) if x not in set(dset))


# ------------------------------------------------------------------- catalog

# groups searched for (16,6,2) and (15,7,3) difference sets; the first few
# sets of each group are enough to reach every design they generate here
_DESIGN_GROUPS = (("Z4xZ4", 6, 2), ("Z2^4", 6, 2), ("Z8xZ2", 6, 2), ("Z2xZ2xZ4", 6, 2), ("Z15", 7, 3))
_SETS_PER_GROUP = 4


def _strongly_regular_sources() -> list[tuple[str, Graph]]:
    out = [("rook4x4", rook_graph(4)), ("shrikhande", shrikhande_graph()), ("T8", triangular_graph(8))]
    out += [(f"chang{i + 1}", g) for i, g in enumerate(chang_graphs())]
    squares = [
        ("latin_Z4", cyclic_table(4)),
        ("latin_Z2xZ2", product_table(2, 2)),
        ("latin_Z5", cyclic_table(5)),
        ("latin_nongroup5", NONGROUP_SQUARE_5),
        ("latin_Z6", cyclic_table(6)),
        ("latin_S3", dihedral_table(3)),
    ]
    out += [(name, latin_square_graph(sq)) for name, sq in squares]
    out += [("paley13", paley_graph(13)), ("paley17", paley_graph(17)), ("paley29", paley_graph(29))]
    out += [(name + "_complement", g.complement()) for name, g in list(out)]
    return out


def _design_sources() -> list[tuple[str, Graph]]:
    out = []
    for kind, k, lam in _DESIGN_GROUPS:
        for i, d in enumerate(difference_sets(kind, k, lam, limit=_SETS_PER_GROUP)):
            out.append((f"design_{kind}_{i + 1}", incidence_graph(kind, d)))
            out.append((f"design_{kind}_{i + 1}_complement", incidence_graph(kind, complement_set(kind, d))))
    return out


def builtin_catalog() -> list[tuple[str, Graph]]:
    """Named strongly regular and distance-regular graphs, one per isomorphism class."""
    from ..isomorphism import is_isomorphic

    reps: list[tuple[str, Graph]] = []
    for name, g in _strongly_regular_sources() + _design_sources():
        if not any(is_isomorphic(g, r) for _, r in reps):
            reps.append((name, g))
    return reps

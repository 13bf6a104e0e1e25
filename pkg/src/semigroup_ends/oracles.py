"""Slow, independent reference computations used to cross-check the fast ones.

None of these share code with the routines they check: the disjoint-path
oracle enumerates paths and packs them exhaustively, the rewriting oracle
explores every reduction order, and the right-group oracle solves
``a x = b`` directly.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .words import RewriteSystem

__all__ = [
    "brute_force_disjoint_paths",
    "random_digraph",
    "all_normal_forms",
    "right_group_by_equations",
    "right_group_table",
    "random_walk",
    "random_dag",
]


def brute_force_disjoint_paths(n: int, edges, sources, targets) -> int:
    """Largest family of vertex-disjoint directed paths from ``sources`` to ``targets``.

    Only paths whose first vertex is the only one in ``sources`` and whose
    last vertex is the only one in ``targets`` are enumerated; any packing
    can be shortened to such paths.  The packing is found by exhaustive
    search over vertex subsets, so keep ``n`` small.
    """
    S, T = set(sources), set(targets)
    succ = [[] for _ in range(n)]
    for u, v in edges:
        if u != v and v not in succ[u]:
            succ[u].append(v)
    paths = []

    def extend(path, mask):
        u = path[-1]
        if u in T:
            paths.append(mask)
            return
        for v in succ[u]:
            if mask >> v & 1 or v in S:
                continue
            extend(path + [v], mask | 1 << v)

    for s in S:
        extend([s], 1 << s)
    by_low: dict[int, list[int]] = {}
    for m in set(paths):
        low = (m & -m).bit_length() - 1
        by_low.setdefault(low, []).append(m)

    @lru_cache(maxsize=None)
    def best(avail: int) -> int:
        if avail == 0:
            return 0
        low = (avail & -avail).bit_length() - 1
        rest = avail & ~(1 << low)
        out = best(rest)
        for m in by_low.get(low, ()):
            if m & avail == m:
                out = max(out, 1 + best(avail & ~m))
        return out

    return best((1 << n) - 1)


def random_digraph(rng: random.Random, max_n: int = 8):
    n = rng.randint(1, max_n)
    p = rng.uniform(0.1, 0.6)
    edges = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    sources = rng.sample(range(n), rng.randint(1, n))
    targets = rng.sample(range(n), rng.randint(1, n))
    return n, edges, sources, targets


def all_normal_forms(system: RewriteSystem, word, limit: int = 100_000) -> set:
    """Irreducible words reachable from ``word`` under every rewriting order."""
    seen = {tuple(word)}
    stack = [tuple(word)]
    irreducible = set()
    while stack:
        w = stack.pop()
        nxt = system.one_step_reducts(w)
        if not nxt:
            irreducible.add(w)
        for v in nxt:
            if v not in seen:
                seen.add(v)
                stack.append(v)
                if len(seen) > limit:
                    raise RuntimeError("reduction graph too large")
    return irreducible


def right_group_by_equations(table) -> bool:
    """True iff ``a x = b`` has exactly one solution ``x`` for every ``a, b``."""
    n = len(table)
    return all(sum(1 for x in range(n) if table[a][x] == b) == 1 for a in range(n) for b in range(n))


def right_group_table(group_table, e: int):
    """Multiplication table of ``G x E`` with ``E`` a right zero semigroup of size ``e``.

    Element ``(g, f)`` is numbered ``g * e + f``.
    """
    g = len(group_table)
    size = g * e
    out = [[0] * size for _ in range(size)]
    for x in range(size):
        for y in range(size):
            gx, _ = divmod(x, e)
            gy, fy = divmod(y, e)
            out[x][y] = group_table[gx][gy] * e + fy
    return out


def random_walk(rng: random.Random, n_vertices: int = 6, length: int = 12):
    """A random walk on a random digraph, returned as (vertices, edge set)."""
    edges = {(u, v) for u in range(n_vertices) for v in range(n_vertices) if rng.random() < 0.4}
    for u in range(n_vertices):
        edges.add((u, (u + 1) % n_vertices))
    walk = [rng.randrange(n_vertices)]
    for _ in range(length - 1):
        outs = [v for (u, v) in edges if u == walk[-1]]
        walk.append(rng.choice(outs))
    return walk, edges


def random_dag(rng: random.Random, n: int = 12, p: float = 0.35):
    """A random DAG on ``0..n-1`` (edges go up) in which 0 reaches every vertex."""
    succ = [[] for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                succ[u].append(v)
    for v in range(1, n):
        if not any(v in succ[u] for u in range(v)):
            succ[rng.randrange(v)].append(v)
    return succ

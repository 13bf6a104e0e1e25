"""Finite truncations of right Cayley graphs and the graph kernels run on them.

A :class:`CayleyBall` of radius ``r`` holds every product of at most ``r``
generators (plus the identity of a monoid).  Out-edges that leave the ball
are not dropped silently: the successor table stores ``-1`` for them and the
vertex is marked as frontier, so later analyses can tell "no edge" from
"edge leaves the ball".

Left Cayley graphs are right Cayley graphs of the dual, so
``build_ball(dual_spec(S), r)`` is the left-graph truncation.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components, maximum_flow

from .models import Semigroup, spec_from_dict

__all__ = [
    "CayleyBall",
    "LabeledWalk",
    "PathPacking",
    "Digraph",
    "BallCapExceeded",
    "build_ball",
    "strongly_connected_components",
    "vertex_disjoint_path_count",
    "disjoint_paths",
    "separates",
    "export_graph",
    "ball_from_json",
    "default_ball_cap",
]

DEFAULT_BALL_CAP = 2_000_000
BALL_CAP_ENV = "SEMIGROUP_ENDS_BALL_CAP"


class BallCapExceeded(RuntimeError):
    pass


def default_ball_cap() -> int:
    value = os.environ.get(BALL_CAP_ENV)
    return int(value) if value else DEFAULT_BALL_CAP


class Digraph:
    """Plain digraph on ``0..n-1`` in CSR form, forward and reverse."""

    def __init__(self, n: int, src, dst):
        self.n = int(n)
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        self.src, self.dst = src, dst
        self.fwd = _csr(self.n, src, dst)
        self.rev = _csr(self.n, dst, src)

    @classmethod
    def from_successors(cls, successors) -> "Digraph":
        """From a sequence of successor lists, or a mapping ``v -> successors`` on ``0..n-1``."""
        if isinstance(successors, dict):
            n = 1 + max([v for v in successors] + [w for ws in successors.values() for w in ws], default=-1)
            items = successors.items()
        else:
            n = len(successors)
            items = enumerate(successors)
        src, dst = [], []
        for v, ws in items:
            for w in ws:
                src.append(v)
                dst.append(w)
        return cls(n, src, dst)

    def successors(self, v: int) -> np.ndarray:
        indptr, indices = self.fwd
        return indices[indptr[v]:indptr[v + 1]]

    def predecessors(self, v: int) -> np.ndarray:
        indptr, indices = self.rev
        return indices[indptr[v]:indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(np.any(self.successors(u) == v))


def _csr(n, src, dst):
    order = np.lexsort((dst, src))
    s, d = src[order], dst[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, s + 1, 1)
    np.cumsum(indptr, out=indptr)
    return indptr, d


def _gather(csr, frontier: np.ndarray) -> np.ndarray:
    indptr, indices = csr
    starts = indptr[frontier]
    lens = indptr[frontier + 1] - starts
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    offs = np.repeat(starts - np.cumsum(lens) + lens, lens) + np.arange(total)
    return indices[offs]


def _reach(csr, n: int, seeds, allowed: np.ndarray | None = None) -> np.ndarray:
    """Boolean mask of vertices reachable from ``seeds`` through ``allowed`` vertices."""
    seen = np.zeros(n, dtype=bool)
    frontier = np.unique(np.asarray(list(seeds), dtype=np.int64))
    if allowed is not None:
        frontier = frontier[allowed[frontier]]
    seen[frontier] = True
    while frontier.size:
        nxt = _gather(csr, frontier)
        nxt = nxt[~seen[nxt]]
        if allowed is not None:
            nxt = nxt[allowed[nxt]]
        nxt = np.unique(nxt)
        seen[nxt] = True
        frontier = nxt
    return seen


@dataclass(eq=False)
class CayleyBall:
    spec: Semigroup
    radius: int
    vertices: list
    depth: np.ndarray
    words: list
    succ: np.ndarray
    index: dict = field(repr=False)
    _graph: Digraph | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> list[tuple[int, int, int]]:
        src, gen = np.nonzero(self.succ >= 0)
        return [(int(s), int(self.succ[s, g]), int(g)) for s, g in zip(src, gen)]

    @property
    def interior(self) -> frozenset[int]:
        return frozenset(np.flatnonzero((self.succ >= 0).all(axis=1)).tolist())

    @property
    def frontier(self) -> frozenset[int]:
        return frozenset(np.flatnonzero((self.succ < 0).any(axis=1)).tolist())

    @property
    def graph(self) -> Digraph:
        if self._graph is None:
            src, gen = np.nonzero(self.succ >= 0)
            self._graph = Digraph(self.size, src, self.succ[src, gen])
        return self._graph

    def vertex(self, element) -> int:
        try:
            return self.index[element]
        except KeyError:
            raise KeyError(f"{self.spec.format(element)} is not in the ball of radius {self.radius}") from None

    def __contains__(self, element) -> bool:
        return element in self.index

    def label(self, i: int) -> str:
        return self.spec.format(self.vertices[i])

    def restrict(self, radius: int) -> "CayleyBall":
        """The ball of a smaller radius, read off from this one."""
        if radius > self.radius:
            raise ValueError("can only restrict to a smaller radius")
        keep = np.flatnonzero(self.depth <= radius)
        remap = np.full(self.size + 1, -1, dtype=np.int64)
        remap[keep] = np.arange(keep.size)
        succ = remap[self.succ[keep]]  # -1 maps to remap[-1] == -1
        vertices = [self.vertices[i] for i in keep]
        return CayleyBall(self.spec, radius, vertices, self.depth[keep].copy(),
                          [self.words[i] for i in keep], succ,
                          {v: i for i, v in enumerate(vertices)})

    def __eq__(self, other):
        if not isinstance(other, CayleyBall):
            return NotImplemented
        return (self.spec == other.spec and self.radius == other.radius
                and self.vertices == other.vertices and np.array_equal(self.succ, other.succ))


@dataclass(frozen=True)
class LabeledWalk:
    """A walk (``direction='forward'``) or anti-walk (``'reverse'``) with generator labels.

    Forward walks are evaluated from ``start``; reverse walks carry their
    vertices explicitly, since predecessors are not unique in general.
    """

    start: object
    labels: tuple[int, ...]
    direction: str = "forward"
    vertices: tuple | None = None

    def vertex_sequence(self, spec: Semigroup) -> list:
        if self.direction not in ("forward", "reverse"):
            raise ValueError(f"unknown walk direction {self.direction!r}")
        if self.direction == "forward":
            out = [self.start]
            for a in self.labels:
                out.append(spec.multiply(out[-1], spec.generators[a]))
            if self.vertices is not None and tuple(out) != tuple(self.vertices):
                raise ValueError("stored vertices disagree with the labels")
            return out
        if self.vertices is None or len(self.vertices) != len(self.labels) + 1:
            raise ValueError("a reverse walk needs len(labels) + 1 explicit vertices")
        vs = list(self.vertices)
        if vs[0] != self.start:
            raise ValueError("reverse walk does not start at its start vertex")
        for i, a in enumerate(self.labels):
            if spec.multiply(vs[i + 1], spec.generators[a]) != vs[i]:
                raise ValueError(f"reverse walk breaks at step {i}")
        return vs


def build_ball(spec: Semigroup, radius: int, cap: int | None = None) -> CayleyBall:
    """All products of at most ``radius`` generators, with right-multiplication edges."""
    if radius < 1:
        raise ValueError("radius must be at least 1")
    cap = default_ball_cap() if cap is None else cap
    gens = spec.generators
    ng = len(gens)
    elems: list = []
    words: list = []
    depth: list = []
    index: dict = {}
    prod_rows: list = []

    def add(x, w, d):
        index[x] = len(elems)
        elems.append(x)
        words.append(w)
        depth.append(d)
        if len(elems) > cap:
            raise BallCapExceeded(f"ball exceeds {cap} vertices at radius {d}")

    if spec.monoid:
        add(spec.identity(), (), 0)
    level = []
    for a, g in enumerate(gens):
        if g not in index:
            add(g, (a,), 1)
            level.append(index[g])
    # levels are processed in shortlex order of their words, so stored words are shortlex-least
    done = 0
    d = 1
    mul = spec.multiply
    while True:
        # products for every vertex discovered so far at depth < d already recorded
        while done < len(elems) and depth[done] < d:
            done += 1
        if d >= radius:
            break
        nxt = []
        for i in level:
            x, w = elems[i], words[i]
            for a, g in enumerate(gens):
                y = mul(x, g)
                if y not in index:
                    add(y, w + (a,), d + 1)
                    nxt.append(index[y])
        level = nxt
        d += 1
    n = len(elems)
    succ = np.full((n, ng), -1, dtype=np.int64)
    for i, x in enumerate(elems):
        row = succ[i]
        for a, g in enumerate(gens):
            j = index.get(mul(x, g))
            if j is not None:
                row[a] = j
    del prod_rows
    # canonical vertex order
    keys = [spec.key(x) for x in elems]
    order = sorted(range(n), key=keys.__getitem__)
    rank = np.empty(n + 1, dtype=np.int64)
    rank[order] = np.arange(n)
    rank[n] = -1
    succ_sorted = rank[succ[order]]
    vertices = [elems[i] for i in order]
    return CayleyBall(
        spec, radius, vertices, np.asarray(depth, dtype=np.int64)[order],
        [words[i] for i in order], succ_sorted, {v: i for i, v in enumerate(vertices)},
    )


def as_digraph(graph) -> Digraph:
    if isinstance(graph, CayleyBall):
        return graph.graph
    if isinstance(graph, Digraph):
        return graph
    return Digraph.from_successors(graph)


def strongly_connected_components(ball) -> list[list[int]]:
    """SCCs as sorted index lists, ordered by their smallest vertex."""
    g = as_digraph(ball)
    if g.n == 0:
        return []
    indptr, indices = g.fwd
    mat = sparse.csr_matrix((np.ones(indices.size, dtype=np.int8), indices, indptr), shape=(g.n, g.n))
    _, labels = connected_components(mat, directed=True, connection="strong")
    comps: dict[int, list[int]] = {}
    for v, c in enumerate(labels.tolist()):
        comps.setdefault(c, []).append(v)
    return sorted(comps.values(), key=lambda c: c[0])


@dataclass(frozen=True)
class PathPacking:
    """Maximum vertex-disjoint path family with a separator of the same size."""

    count: int
    paths: tuple[tuple[int, ...], ...]
    separator: frozenset[int]


def disjoint_paths(graph, sources: Iterable[int], targets: Iterable[int],
                   allowed: np.ndarray | None = None) -> PathPacking:
    """Maximum number of vertex-disjoint directed paths from ``sources`` to ``targets``.

    A vertex in both sets is a path of length 0.  Only vertices with
    ``allowed[v]`` true are used (all, if ``allowed`` is None).  The separator
    is a minimum vertex cut, chosen to avoid sources and targets when some
    minimum cut does; otherwise it is the cut nearest the sources.
    """
    g = as_digraph(graph)
    n = g.n
    S = {int(v) for v in sources}
    T = {int(v) for v in targets}
    if allowed is not None:
        S = {v for v in S if allowed[v]}
        T = {v for v in T if allowed[v]}
    shared = S & T
    ok = np.ones(n, dtype=bool) if allowed is None else allowed.copy()
    if shared:
        ok[list(shared)] = False
    S -= shared
    T -= shared
    zero_paths = tuple((v,) for v in sorted(shared))
    if not S or not T:
        return PathPacking(len(shared), zero_paths, frozenset(shared))
    fwd = _reach(g.fwd, n, S, ok)
    bwd = _reach(g.rev, n, T, ok)
    rel = np.flatnonzero(fwd & bwd)
    if rel.size == 0:
        return PathPacking(len(shared), zero_paths, frozenset(shared))
    m = rel.size
    local = np.full(n, -1, dtype=np.int64)
    local[rel] = np.arange(m)
    # node ids: 0 = super source, 1 = super sink, v_in = 2 + 2l, v_out = 3 + 2l
    e_mask = (local[g.src] >= 0) & (local[g.dst] >= 0) & (g.src != g.dst)
    eu = 3 + 2 * local[g.src[e_mask]]
    ev = 2 + 2 * local[g.dst[e_mask]]
    srcs = np.unique(local[np.array(sorted(S))])
    srcs = srcs[srcs >= 0]
    tgts = np.unique(local[np.array(sorted(T))])
    tgts = tgts[tgts >= 0]
    N = 2 + 2 * m
    lin = 2 + 2 * np.arange(m)
    rows = np.concatenate([lin, eu, np.zeros(srcs.size, np.int64), 3 + 2 * tgts])
    cols = np.concatenate([lin + 1, ev, 2 + 2 * srcs, np.ones(tgts.size, np.int64)])

    def run(vertex_caps, big):
        caps = np.concatenate([vertex_caps, np.full(rows.size - m, big, np.int64)])
        cap = sparse.csr_matrix((caps.astype(np.int32), (rows, cols)), shape=(N, N))
        cap.sum_duplicates()
        res = maximum_flow(cap, 0, 1, method="dinic")
        return int(res.flow_value), cap, res.flow.tocsr()

    count, cap, flow = run(np.ones(m, np.int64), m + 1)
    cut = _min_cut(cap, flow, N, m)
    terminal = np.zeros(m, dtype=bool)
    terminal[srcs] = True
    terminal[tgts] = True
    if terminal[cut].any():
        # among minimum separators, prefer one avoiding sources and targets
        w = count + 1
        wcaps = np.where(terminal, w + 1, w)
        big = (w + 1) * count + 1
        if big < 2**31:
            value, wcap, wflow = run(wcaps, big)
            assert value // w == count
            cut = _min_cut(wcap, wflow, N, m)
    cut = [int(rel[l]) for l in cut]
    # decompose the unit flow into paths
    pos = flow.copy()
    pos.data[pos.data < 0] = 0
    pos.eliminate_zeros()
    nxt: dict[int, list[int]] = {}
    coo = pos.tocoo()
    for u, v in zip(coo.row.tolist(), coo.col.tolist()):
        nxt.setdefault(u, []).append(v)
    paths = []
    for start in sorted(nxt.get(0, [])):
        node, path = start, []
        while node != 1:
            if node % 2 == 0:
                path.append(int(rel[(node - 2) // 2]))
            node = nxt[node].pop()
        paths.append(tuple(path))
    if len(paths) != count or len(cut) != count:
        raise AssertionError("flow decomposition disagrees with the flow value")
    return PathPacking(count + len(shared), tuple(sorted(paths)) + zero_paths,
                       frozenset(cut) | frozenset(shared))


def _min_cut(cap, flow, N: int, m: int) -> np.ndarray:
    """Local indices of split vertices cut by the source-side minimum cut."""
    resid = (cap - flow).tocsr()
    resid.data[resid.data < 0] = 0
    resid.eliminate_zeros()
    seen = _reach((resid.indptr.astype(np.int64), resid.indices.astype(np.int64)), N, [0])
    lin = 2 + 2 * np.arange(m)
    return np.flatnonzero(seen[lin] & ~seen[lin + 1])


def vertex_disjoint_path_count(ball, sources: Iterable[int], targets: Iterable[int]) -> PathPacking:
    """Menger packing between two vertex sets of a ball (or any digraph)."""
    g = as_digraph(ball)
    for v in list(sources) + list(targets):
        if not 0 <= int(v) < g.n:
            raise IndexError(f"vertex {v} not in graph")
    return disjoint_paths(g, sources, targets)


def separates(graph, separator: Iterable[int], sources: Iterable[int], targets: Iterable[int],
              allowed: np.ndarray | None = None) -> bool:
    """True iff every path from ``sources`` to ``targets`` meets ``separator``."""
    g = as_digraph(graph)
    ok = np.ones(g.n, dtype=bool) if allowed is None else allowed.copy()
    sep = list(separator)
    if sep:
        ok[sep] = False
    seen = _reach(g.fwd, g.n, list(sources), ok)
    return not any(seen[t] for t in targets)


def export_graph(ball: CayleyBall, format: str = "json") -> str:
    """DOT or JSON rendering; byte-identical for equal balls."""
    spec = ball.spec
    if format == "json":
        doc = {
            "vertices": [spec.format(v) for v in ball.vertices],
            "edges": [[s, t, spec.names[a]] for s, t, a in ball.edges],
            "interior": sorted(ball.interior),
            "radius": ball.radius,
            "spec": spec.to_dict(),
        }
        return json.dumps(doc, ensure_ascii=False) + "\n"
    if format == "dot":
        frontier = ball.frontier
        lines = ["digraph cayley {", "  node [shape=ellipse];"]
        for i, v in enumerate(ball.vertices):
            style = ' style=dashed' if i in frontier else ""
            lines.append(f'  v{i} [label="{_dot_escape(spec.format(v))}"{style}];')
        for s, t, a in ball.edges:
            lines.append(f'  v{s} -> v{t} [label="{_dot_escape(spec.names[a])}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown export format {format!r}")


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def ball_from_json(text: str) -> CayleyBall:
    """Re-ingest an exported JSON graph, checking it against a fresh build."""
    doc = json.loads(text)
    spec = spec_from_dict(doc["spec"])
    ball = build_ball(spec, int(doc["radius"]))
    vertices = [spec.parse(s) for s in doc["vertices"]]
    if vertices != ball.vertices:
        raise ValueError("vertex list does not match the spec at this radius")
    edges = [(s, t, spec.names.index(a)) for s, t, a in doc["edges"]]
    if sorted(edges) != sorted(ball.edges) or sorted(doc["interior"]) != sorted(ball.interior):
        raise ValueError("edge or interior data does not match the spec at this radius")
    return ball

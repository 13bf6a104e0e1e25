"""Rays, anti-rays and finite-horizon evidence for the end order.

Rays are eventually periodic: a start vertex given by a ``base`` word, then
the labels of ``prefix`` followed by ``period`` repeated forever.  An anti-ray
reads the same labels against the edges, so ``v[k] = v[k+1] * label``.

Comparing two rays means counting vertex-disjoint paths between their tails
inside growing Cayley balls.  A direction whose count keeps growing is taken
as evidence of infinitely many disjoint paths; a direction whose count stays
put behind one fixed separator is taken as evidence of finitely many.  Either
way the verdict is evidence at a horizon, never a proof.
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .cayley import (CayleyBall, Digraph, LabeledWalk, as_digraph, build_ball,
                     disjoint_paths, separates)
from .models import ElementError, Semigroup

__all__ = [
    "PeriodicRay",
    "RayCheck",
    "Verdict",
    "DirectionEvidence",
    "EndVerdict",
    "PosetSummary",
    "WalkToRay",
    "ConcatCheck",
    "DominanceResult",
    "TranslatedRay",
    "IntersectionWitness",
    "FreeEvidence",
    "DEFAULT_HORIZONS",
    "DEFAULT_K",
    "ray_vertices",
    "parse_ray",
    "format_ray",
    "walk_to_ray",
    "bounded_concat_check",
    "dominance_ray",
    "enumerate_periodic_rays",
    "translate_ray",
    "end_compare",
    "end_poset",
    "free_pair_witness",
]

DEFAULT_HORIZONS = (8, 12, 16, 24)
DEFAULT_K = 4
RAY = "ray"
ANTI_RAY = "anti-ray"


@dataclass(frozen=True)
class PeriodicRay:
    base: tuple[int, ...]
    prefix: tuple[int, ...] = ()
    period: tuple[int, ...] = (0,)
    kind: str = RAY

    def __post_init__(self):
        for name in ("base", "prefix", "period"):
            object.__setattr__(self, name, tuple(int(i) for i in getattr(self, name)))
        if not self.period:
            raise ValueError("period must be non-empty")
        if self.kind not in (RAY, ANTI_RAY):
            raise ValueError(f"kind must be {RAY!r} or {ANTI_RAY!r}, not {self.kind!r}")

    def label(self, k: int) -> int:
        """Label of step ``k`` (from vertex ``k`` to vertex ``k+1``)."""
        if k < len(self.prefix):
            return self.prefix[k]
        return self.period[(k - len(self.prefix)) % len(self.period)]

    def labels(self, count: int) -> list[int]:
        return [self.label(k) for k in range(count)]

    @property
    def offset(self) -> int:
        return len(self.base) + len(self.prefix)


def parse_ray(spec: Semigroup, text: str) -> PeriodicRay:
    """Read ``base=<word>;prefix=<word>;period=<word>;kind=ray|antiray``."""
    fields = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        key, sep, value = part.partition("=")
        if not sep:
            raise ValueError(f"ray literal field {part!r} lacks '='")
        key = key.strip()
        if key not in ("base", "prefix", "period", "kind"):
            raise ValueError(f"unknown ray literal field {key!r}")
        fields[key] = value.strip()
    if "period" not in fields:
        raise ValueError("ray literal needs a period")
    kind = fields.get("kind", "ray").replace("-", "")
    if kind not in ("ray", "antiray"):
        raise ValueError(f"ray kind must be ray or antiray, not {fields['kind']!r}")
    words = {k: spec.alphabet.parse(fields.get(k, "")) for k in ("base", "prefix", "period")}
    return PeriodicRay(words["base"], words["prefix"], words["period"], RAY if kind == "ray" else ANTI_RAY)


def format_ray(spec: Semigroup, ray: PeriodicRay) -> str:
    fmt = spec.alphabet.format
    kind = "ray" if ray.kind == RAY else "antiray"
    return f"base={fmt(ray.base) or 'ε'};prefix={fmt(ray.prefix)};period={fmt(ray.period)};kind={kind}"


@dataclass(frozen=True)
class RayCheck:
    """First vertices of a ray, or where it stops being one."""

    vertices: tuple
    valid: bool
    repeat: tuple[int, int] | None = None
    reason: str = ""


def _preimages(ball: CayleyBall):
    # per label: candidates u with u * g[a] = v, sorted by (v, depth, index)
    cache = getattr(ball, "_preimage_cache", None)
    if cache is None:
        cache = []
        n = ball.size
        for a in range(ball.succ.shape[1]):
            src = np.flatnonzero(ball.succ[:, a] >= 0)
            dst = ball.succ[src, a]
            order = np.lexsort((src, ball.depth[src], dst))
            src, dst = src[order], dst[order]
            starts = np.searchsorted(dst, np.arange(n + 1))
            cache.append((src, starts))
        ball._preimage_cache = cache
    return cache


def _predecessor(ball: CayleyBall, v: int, a: int, used) -> int:
    src, starts = _preimages(ball)[a]
    for u in src[starts[v]:starts[v + 1]].tolist():
        if u not in used:
            return u
    return -1


def ray_vertices(spec: Semigroup, ray: PeriodicRay, horizon: int, ball: CayleyBall | None = None) -> RayCheck:
    """The first ``horizon`` vertices, checked pairwise distinct.

    Anti-rays need predecessors, which are looked up in ``ball`` (built with
    enough radius for ``horizon`` backward steps when not given).  Among
    several predecessors the shallowest unused one wins, ties going to the
    canonical vertex order.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    start = spec.evaluate(ray.base)
    if ray.kind == RAY:
        seen = {start: 0}
        out = [start]
        x = start
        for k in range(horizon - 1):
            x = spec.multiply(x, spec.generators[ray.label(k)])
            if x in seen:
                return RayCheck(tuple(out + [x]), False, (seen[x], k + 1), "vertex repeats")
            seen[x] = k + 1
            out.append(x)
        return RayCheck(tuple(out), True)
    if ball is None:
        ball = build_ball(spec, max(1, ray.offset + horizon + 2))
    if start not in ball:
        return RayCheck((start,), False, None, "start vertex outside the ball")
    v = ball.vertex(start)
    used = {v: 0}
    idx = [v]
    for k in range(horizon - 1):
        u = _predecessor(ball, v, ray.label(k), used)
        if u < 0:
            src, starts = _preimages(ball)[ray.label(k)]
            cands = src[starts[v]:starts[v + 1]].tolist()
            verts = tuple(ball.vertices[i] for i in idx)
            if cands:
                return RayCheck(verts + (ball.vertices[cands[0]],), False, (used[cands[0]], k + 1),
                                "every predecessor repeats a vertex")
            return RayCheck(verts, False, None, f"no predecessor of vertex {k} inside the ball")
        used[u] = k + 1
        idx.append(u)
        v = u
    return RayCheck(tuple(ball.vertices[i] for i in idx), True)


# ---------------------------------------------------------------------------
# constructive lemmas


@dataclass(frozen=True)
class WalkToRay:
    vertices: tuple
    indices: tuple[int, ...]
    dropped: object


def walk_to_ray(walk, spec: Semigroup | None = None) -> WalkToRay:
    """Extract a path from a finite walk by jumping past last occurrences.

    Follows ``a(0) = 1`` and ``a(i) = max{j : w[j] = w[a(i-1)]} + 1``,
    stopping when the index runs off the walk.  The first vertex is dropped
    by that recursion and reported as ``dropped``.  ``walk`` is a vertex
    sequence or a :class:`LabeledWalk` (which needs ``spec``).
    """
    if isinstance(walk, LabeledWalk):
        if spec is None:
            raise ValueError("a labeled walk needs its spec to be evaluated")
        walk = walk.vertex_sequence(spec)
    walk = list(walk)
    if len(walk) < 2:
        raise ValueError("walk_to_ray needs a walk with at least 2 vertices")
    last = {}
    for j, v in enumerate(walk):
        last[v] = j
    idx = [1]
    while True:
        nxt = last[walk[idx[-1]]] + 1
        if nxt >= len(walk):
            break
        idx.append(nxt)
    return WalkToRay(tuple(walk[i] for i in idx), tuple(idx), walk[0])


@dataclass(frozen=True)
class ConcatCheck:
    ok: bool
    max_multiplicity: int
    vertex: object
    bound: int


def bounded_concat_check(walks, K: int, successors=None, spec: Semigroup | None = None) -> ConcatCheck:
    """Check the occurrence bound on a concatenation of short walks.

    With walk lengths at most ``K`` and distinct final vertices, a vertex
    ``v`` can lie on at most as many walks as there are vertices within
    distance ``K`` of ``v``, so it occurs at most ``(K+1) * |reach_K(v)|``
    times.  ``successors`` maps a vertex to its out-neighbours; by default
    the digraph formed by the walks' own edges is used.
    """
    seqs = []
    for w in walks:
        if isinstance(w, LabeledWalk):
            if spec is None:
                raise ValueError("labeled walks need their spec to be evaluated")
            w = w.vertex_sequence(spec)
        seqs.append(list(w))
    for i, w in enumerate(seqs):
        if not w:
            raise ValueError(f"walk {i} is empty")
        if len(w) - 1 > K:
            raise ValueError(f"walk {i} has length {len(w) - 1} > K = {K}")
    finals = [w[-1] for w in seqs]
    if len(set(finals)) != len(finals):
        dup = next(v for v, c in Counter(finals).items() if c > 1)
        raise ValueError(f"final vertex {dup!r} is shared by several walks")
    if successors is None:
        out: dict = {}
        for w in seqs:
            for u, v in zip(w, w[1:]):
                out.setdefault(u, set()).add(v)
        successors = lambda v: out.get(v, ())  # noqa: E731
    counts = Counter(v for w in seqs for v in w)
    if not counts:
        return ConcatCheck(True, 0, None, 0)
    worst, mult = max(counts.items(), key=lambda kv: kv[1])
    # check every vertex, report the first violation, else the worst one
    for v, c in counts.items():
        bound = (K + 1) * _reach_within(successors, v, K)
        if c > bound:
            return ConcatCheck(False, c, v, bound)
    return ConcatCheck(True, mult, worst, (K + 1) * _reach_within(successors, worst, K))


def _reach_within(successors, v, K: int) -> int:
    seen = {v}
    frontier = [v]
    for _ in range(K):
        nxt = []
        for u in frontier:
            for w in successors(u):
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return len(seen)


@dataclass(frozen=True)
class DominanceResult:
    prefix: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]
    alphas: tuple[int, ...]


def dominance_ray(graph, alpha0: int, sigma: Iterable[int]) -> DominanceResult:
    """Build a path from ``alpha0`` with disjoint connecting paths into ``sigma``.

    Runs the pigeonhole recursion on finite data: paths from the current
    vertex to the remaining targets come from one breadth-first tree; the
    successor carrying the most targets is kept, one target's path is fixed,
    and the walk advances to the branch point shared by the most of the
    rest.  Ties go to the smallest vertex index or branch position.
    """
    g = as_digraph(graph)
    targets = sorted(set(int(s) for s in sigma))
    parent = {alpha0: None}
    queue = deque([alpha0])
    while queue:
        u = queue.popleft()
        for w in sorted(g.successors(u).tolist()):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    missing = [s for s in targets if s not in parent]
    if missing:
        raise ValueError(f"vertices {missing} are not reachable from {alpha0}")

    def tree_path(b):
        out = [b]
        while out[-1] != alpha0:
            out.append(parent[out[-1]])
        return out[::-1]

    paths = {b: tree_path(b) for b in targets}
    alpha = alpha0
    prefix = [alpha0]
    alphas = [alpha0]
    found = []
    while paths:
        if alpha in paths:
            found.append((alpha,))
            del paths[alpha]
            if not paths:
                break
        groups: dict[int, list[int]] = {}
        for b, q in paths.items():
            groups.setdefault(q[1], []).append(b)
        gamma = min(groups, key=lambda c: (-len(groups[c]), c))
        family = groups[gamma]
        beta1 = min(family, key=lambda b: (len(paths[b]), b))
        p1 = paths[beta1]
        pos = {v: i for i, v in enumerate(p1)}
        split = {}
        for b in family:
            q = paths[b]
            j = max(i for i, v in enumerate(q) if v in pos)
            split[b] = (pos[q[j]], j)
        tally = Counter(m for m, _ in split.values())
        m = min(tally, key=lambda t: (-tally[t], t))
        nxt_alpha = p1[m]
        found.append(tuple(p1[m:]))
        prefix.extend(p1[1:m + 1])
        alphas.append(nxt_alpha)
        paths = {b: paths[b][split[b][1]:] for b in family if split[b][0] == m and b != beta1}
        alpha = nxt_alpha
    result = DominanceResult(tuple(prefix), tuple(found), tuple(alphas))
    _check_dominance(g, result)
    return result


def _check_dominance(g: Digraph, res: DominanceResult):
    if len(set(res.prefix)) != len(res.prefix):
        raise AssertionError("dominance prefix repeats a vertex")
    for u, v in zip(res.prefix, res.prefix[1:]):
        if not g.has_edge(u, v):
            raise AssertionError("dominance prefix is not a walk")
    used = set()
    for p in res.paths:
        if used & set(p) or len(set(p)) != len(p):
            raise AssertionError("connecting paths are not disjoint")
        used |= set(p)
        for u, v in zip(p, p[1:]):
            if not g.has_edge(u, v):
                raise AssertionError("connecting path is not a walk")


# ---------------------------------------------------------------------------
# enumeration and generator change


def _primitive(word: tuple) -> bool:
    n = len(word)
    return not any(n % d == 0 and word == word[:d] * (n // d) for d in range(1, n))


def enumerate_periodic_rays(spec: Semigroup, max_period: int, horizon: int, kind: str = RAY,
                            base_bound: int = 2, ball: CayleyBall | None = None) -> list[PeriodicRay]:
    """Eventually periodic rays with short bases and periods, one per tail set.

    Bases are the shortlex words of the elements of length at most
    ``base_bound`` (and the empty word for monoids); periods are primitive
    words of length at most ``max_period``.  A candidate is dropped when its
    vertices from ``horizon // 2`` to ``horizon`` lie on an earlier kept ray
    and vice versa.
    """
    if max_period < 1:
        raise ValueError("max_period must be at least 1")
    if kind not in (RAY, ANTI_RAY):
        raise ValueError(f"unknown kind {kind!r}")
    bases = build_ball(spec, base_bound)
    periods = [w for n in range(1, max_period + 1)
               for w in itertools.product(range(len(spec.generators)), repeat=n) if _primitive(w)]
    long = 2 * horizon + 1
    if kind == ANTI_RAY and ball is None:
        ball = build_ball(spec, base_bound + long + 2)
    kept: list[tuple[PeriodicRay, set, set]] = []
    for i in range(bases.size):
        for per in periods:
            ray = PeriodicRay(bases.words[i], (), per, kind)
            chk = ray_vertices(spec, ray, long, ball)
            if not chk.valid:
                continue
            verts = chk.vertices
            tail = set(verts[horizon // 2:horizon + 1])
            full = set(verts)
            if any(tail <= f2 and t2 <= full for _, t2, f2 in kept):
                continue
            kept.append((ray, tail, full))
    return [r for r, _, _ in kept]


@dataclass(frozen=True)
class TranslatedRay:
    """A ray rewritten over a smaller generating set.

    ``vertices`` and ``labels`` describe the extracted ray; ``ray`` is a
    periodic description of it when one was found.  ``budget`` is the
    longest replacement word used and ``shared`` lists (original index,
    new index) pairs of common vertices.
    """

    vertices: tuple
    labels: tuple[int, ...]
    ray: PeriodicRay | None
    budget: int
    replaced: int
    shared: tuple[tuple[int, int], ...]


def translate_ray(spec: Semigroup, s, ray: PeriodicRay, horizon: int = 64, max_budget: int = 12,
                  max_segment: int | None = None) -> TranslatedRay:
    """Rewrite a ray over the generators of ``spec`` plus ``s`` into one over ``spec``'s.

    Label ``len(spec.generators)`` stands for ``s``.  Each ``s``-initiated
    segment ``s b1 ... bi`` (shortest ``i`` first) is replaced by a word over
    the original generators of length at most ``max_budget`` with the same
    value; the resulting walk is then cut down to a ray with
    :func:`walk_to_ray`, keeping the first vertex when it does not recur.
    """
    if ray.kind != RAY:
        raise ValueError("translate_ray handles rays; translate anti-rays through the dual")
    na = len(spec.generators)
    ext = spec.with_generators(list(spec.generators) + [s], list(spec.names) + [_fresh_name(spec)])
    chk = ray_vertices(ext, ray, horizon + 1)
    if not chk.valid:
        raise ValueError(f"not a ray over the extended generators: {chk.reason} at {chk.repeat}")
    if na not in ray.base and na not in ray.prefix and na not in ray.period:
        return TranslatedRay(chk.vertices, tuple(ray.labels(horizon)), ray, 0, 0,
                             tuple((i, i) for i in range(len(chk.vertices))))
    aball = build_ball(spec, max_budget)
    max_segment = max_budget if max_segment is None else max_segment

    def a_word(x):
        if x in aball and len(aball.words[aball.vertex(x)]) <= max_budget:
            return aball.words[aball.vertex(x)]
        return None

    base_word = ray.base
    if na in ray.base:
        base_word = a_word(ext.evaluate(ray.base))
        if base_word is None:
            raise ValueError("start vertex has no word over the original generators within budget")
    labels = ray.labels(horizon)
    walk = [chk.vertices[0]]
    walk_labels: list[int] = []
    orig_pos = {0: 0}
    budget = 0
    replaced = 0
    k = 0
    while k < len(labels):
        b = labels[k]
        if b != na:
            walk_labels.append(b)
            walk.append(spec.multiply(walk[-1], spec.generators[b]))
            k += 1
            orig_pos[k] = len(walk) - 1
            continue
        elem = s
        word = a_word(elem)
        i = 0
        while word is None and i < max_segment and k + i + 1 < len(labels):
            i += 1
            elem = ext.multiply(elem, ext.generators[labels[k + i]])
            word = a_word(elem)
        if word is None:
            seg = ext.alphabet.format(labels[k:k + i + 1])
            raise ValueError(f"segment {seg!r} at step {k} has no replacement within budget {max_budget}")
        for a in word:
            walk_labels.append(a)
            walk.append(spec.multiply(walk[-1], spec.generators[a]))
        budget = max(budget, len(word))
        replaced += 1
        k += i + 1
        orig_pos[k] = len(walk) - 1
    extracted = walk_to_ray(walk)
    idx = list(extracted.indices)
    if walk[0] not in walk[1:]:
        idx = [0] + idx
    verts = tuple(walk[i] for i in idx)
    labs = tuple(walk_labels[i - 1] for i in idx[1:])
    where = {v: j for j, v in enumerate(verts)}
    shared = tuple((i, where[chk.vertices[i]]) for i in sorted(orig_pos) if chk.vertices[i] in where)
    start_word = base_word if idx[0] == 0 else a_word(verts[0])
    periodic = None
    if start_word is not None:
        periodic = _fit_periodic(spec, start_word, verts, labs)
    return TranslatedRay(verts, labs, periodic, budget, replaced, shared)


def _fresh_name(spec: Semigroup) -> str:
    for cand in ("s", "t", "u", "v", "w"):
        if cand not in spec.names:
            return cand
    return f"g{len(spec.names)}"


def _fit_periodic(spec, base, verts, labels, max_period: int = 8):
    # use the first half only: the end of a finite walk_to_ray output can differ
    # from the infinite one
    usable = labels[: max(len(labels) // 2, 1)]
    for total in range(1, len(usable)):
        for p in range(1, min(max_period, total) + 1):
            t = total - p
            if t < 0:
                continue
            per = usable[t:t + p]
            if len(usable) - t < 3 * p:
                continue
            if all(usable[j] == per[(j - t) % p] for j in range(t, len(usable))):
                cand = PeriodicRay(tuple(base), tuple(usable[:t]), tuple(per))
                chk = ray_vertices(spec, cand, len(verts) // 2 + 1)
                if chk.valid and chk.vertices == tuple(verts[:len(chk.vertices)]):
                    return cand
    return None


# ---------------------------------------------------------------------------
# end comparison


class Verdict(str, enum.Enum):
    EQUIVALENT = "Equivalent"
    FIRST_BELOW_SECOND = "FirstBelowSecond"
    SECOND_BELOW_FIRST = "SecondBelowFirst"
    INCOMPARABLE = "Incomparable"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class DirectionEvidence:
    """Disjoint-path counts from one tail to the other across horizons.

    ``status`` is ``"growing"``, ``"stagnant"`` or ``"undetermined"``.  For a
    stagnant direction ``separator`` holds the elements of a minimum cut
    that was checked to keep separating at the later horizons.
    """

    counts: tuple[int, ...]
    horizons: tuple[int, ...]
    radii: tuple[int, ...]
    k: int
    status: str
    separator: tuple | None
    paths: tuple = ()
    monotone: bool = True

    @property
    def growing(self) -> bool:
        return self.status == "growing"

    @property
    def stagnant(self) -> bool:
        return self.status == "stagnant"


@dataclass(frozen=True)
class EndVerdict:
    forward: DirectionEvidence
    backward: DirectionEvidence
    verdict: Verdict


def _verdict(fwd: DirectionEvidence, bwd: DirectionEvidence) -> Verdict:
    if fwd.growing and bwd.growing:
        return Verdict.EQUIVALENT
    if fwd.stagnant and bwd.stagnant:
        return Verdict.INCOMPARABLE
    if fwd.growing and bwd.stagnant:
        return Verdict.FIRST_BELOW_SECOND
    if fwd.stagnant and bwd.growing:
        return Verdict.SECOND_BELOW_FIRST
    return Verdict.UNKNOWN


class _Comparer:
    """Shared ball and ray tails for comparisons at fixed horizons."""

    def __init__(self, spec: Semigroup, rays: Sequence[PeriodicRay], horizons, k: int):
        horizons = tuple(int(h) for h in horizons)
        if len(horizons) < 3 or any(b <= a for a, b in zip(horizons, horizons[1:])):
            raise ValueError("need at least three strictly increasing horizons")
        if k < 1:
            raise ValueError("threshold k must be positive")
        self.spec, self.horizons, self.k = spec, horizons, k
        lead = max(r.offset for r in rays)
        self.radii = tuple(lead + 2 * h for h in horizons)
        self.ball = build_ball(spec, self.radii[-1])
        self.offset = horizons[0] // 2
        self.masks = [self.ball.depth <= r for r in self.radii]
        self.tails = []
        for r in rays:
            chk = ray_vertices(spec, r, horizons[-1] + 1, self.ball)
            if not chk.valid:
                raise ValueError(f"{format_ray(spec, r)} is not valid to horizon {horizons[-1]}: "
                                 f"{chk.reason} at {chk.repeat}")
            idx = [self.ball.index.get(v, -1) for v in chk.vertices]
            self.tails.append(idx)

    def tail(self, which: int, level: int) -> list[int]:
        h = self.horizons[level]
        mask = self.masks[level]
        return [v for v in self.tails[which][self.offset:h + 1] if v >= 0 and mask[v]]

    def direction(self, i: int, j: int) -> DirectionEvidence:
        counts, packs = [], []
        for level in range(len(self.horizons)):
            pk = disjoint_paths(self.ball, self.tail(i, level), self.tail(j, level), self.masks[level])
            counts.append(pk.count)
            packs.append(pk)
        monotone = all(a <= b for a, b in zip(counts, counts[1:]))
        status = "undetermined"
        separator = None
        if counts[-1] >= self.k and counts[-1] > counts[-2]:
            status = "growing"
        elif counts[-1] == counts[-2] == counts[-3]:
            sep = packs[-3].separator
            if all(separates(self.ball, sep, self.tail(i, lv), self.tail(j, lv), self.masks[lv])
                   for lv in (len(counts) - 2, len(counts) - 1)):
                status = "stagnant"
                separator = tuple(self.ball.vertices[v] for v in sorted(sep))
        vs = self.ball.vertices
        paths = tuple(tuple(vs[v] for v in p) for p in packs[-1].paths)
        return DirectionEvidence(tuple(counts), self.horizons, self.radii, self.k, status,
                                 separator, paths, monotone)

    def compare(self, i: int, j: int) -> EndVerdict:
        fwd = self.direction(i, j)
        bwd = self.direction(j, i)
        return EndVerdict(fwd, bwd, _verdict(fwd, bwd))


def end_compare(spec: Semigroup, r1: PeriodicRay, r2: PeriodicRay,
                horizons=DEFAULT_HORIZONS, k: int = DEFAULT_K) -> EndVerdict:
    """Three-valued comparison of two rays (or anti-rays) by their tails.

    At horizon ``h`` the tails are the ray vertices with index between
    ``horizons[0] // 2`` and ``h`` that lie in the ball of radius
    ``offset + 2h`` (``offset`` = longest base plus prefix).  Keeping the
    lower index fixed makes the counts non-decreasing in ``h``.  A direction
    grows when its last count is at least ``k`` and above the previous one;
    it is stagnant when the last three counts agree and the separator found
    at the first of them still separates at the other two.
    """
    return _Comparer(spec, [r1, r2], horizons, k).compare(0, 1)


@dataclass
class PosetSummary:
    """Classes of certified-equivalent rays and the order between them.

    ``below`` holds (lower, upper) class pairs from certified strict
    verdicts, ``hasse`` its covering pairs.  ``width`` and ``height`` are the
    largest antichain and chain of the class order; pairs involving an
    ``Unknown`` verdict are listed in ``unknown`` and ignored there.
    """

    classes: list[list[int]]
    class_of: list[int]
    kinds: list[str]
    below: list[tuple[int, int]]
    hasse: list[tuple[int, int]]
    incomparable: list[tuple[int, int]]
    unknown: list[tuple[int, int]]
    width: int
    height: int
    consistent: bool = True

    @property
    def shape(self) -> str:
        n = len(self.classes)
        if n == 1 or self.height == n:
            return "chain"
        if not self.below:
            return "antichain"
        tops = [c for c in range(n) if not any(lo == c for lo, _ in self.below)]
        if len(tops) == 1:
            rest = [c for c in range(n) if c != tops[0]]
            if all((c, tops[0]) in self.below for c in rest) and self.width == 2 and self.height == n // 2 + 1:
                return "two-chains-join"
        return "custom"


@dataclass
class PosetReport:
    rays: list[PeriodicRay]
    matrix: list[list[Verdict]]
    evidence: dict
    summary: PosetSummary


def end_poset(spec: Semigroup, rays: Sequence[PeriodicRay], horizons=DEFAULT_HORIZONS,
              k: int = DEFAULT_K) -> PosetReport:
    """Pairwise comparisons of ``rays`` assembled into a class poset."""
    rays = list(rays)
    n = len(rays)
    if n == 0:
        raise ValueError("end_poset needs at least one ray")
    cmp = _Comparer(spec, rays, horizons, k)
    matrix = [[Verdict.EQUIVALENT] * n for _ in range(n)]
    evidence = {}
    for i in range(n):
        for j in range(i + 1, n):
            ev = cmp.compare(i, j)
            evidence[(i, j)] = ev
            matrix[i][j] = ev.verdict
            matrix[j][i] = _flip(ev.verdict)
    return PosetReport(rays, matrix, evidence, summarize(matrix, [r.kind for r in rays]))


def _flip(v: Verdict) -> Verdict:
    if v == Verdict.FIRST_BELOW_SECOND:
        return Verdict.SECOND_BELOW_FIRST
    if v == Verdict.SECOND_BELOW_FIRST:
        return Verdict.FIRST_BELOW_SECOND
    return v


def summarize(matrix, kinds=None) -> PosetSummary:
    """Class poset of a verdict matrix (``matrix[i][j]`` compares ray i to ray j)."""
    n = len(matrix)
    kinds = list(kinds) if kinds is not None else [RAY] * n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if matrix[i][j] == Verdict.EQUIVALENT:
                parent[find(j)] = find(i)
    roots = sorted({find(i) for i in range(n)})
    cid = {r: c for c, r in enumerate(roots)}
    class_of = [cid[find(i)] for i in range(n)]
    classes = [[i for i in range(n) if class_of[i] == c] for c in range(len(roots))]
    below, incomparable, unknown = set(), set(), []
    consistent = True
    for i in range(n):
        for j in range(i + 1, n):
            v = matrix[i][j]
            a, b = class_of[i], class_of[j]
            if v == Verdict.UNKNOWN:
                unknown.append((i, j))
            elif v == Verdict.FIRST_BELOW_SECOND:
                below.add((a, b))
            elif v == Verdict.SECOND_BELOW_FIRST:
                below.add((b, a))
            elif v == Verdict.INCOMPARABLE:
                incomparable.add((min(a, b), max(a, b)))
            if a == b and v != Verdict.EQUIVALENT:
                consistent = False
    m = len(classes)
    reach = np.zeros((m, m), dtype=bool)
    for a, b in below:
        reach[a, b] = True
    for w in range(m):
        reach |= reach[:, [w]] & reach[[w], :]
    if reach.diagonal().any():
        consistent = False
    closure = {(a, b) for a in range(m) for b in range(m) if reach[a, b]}
    hasse = sorted((a, b) for a, b in closure
                   if not any((a, c) in closure and (c, b) in closure for c in range(m)))
    kind_of = []
    for c in classes:
        ks = {kinds[i] for i in c}
        kind_of.append(ks.pop() if len(ks) == 1 else "mixed")
    return PosetSummary(classes, class_of, kind_of, sorted(closure), hasse, sorted(incomparable),
                        unknown, _width(reach), _height(reach), consistent)


def _width(reach: np.ndarray) -> int:
    m = reach.shape[0]
    if m == 0:
        return 0
    strict = reach & ~np.eye(m, dtype=bool)
    match = maximum_bipartite_matching(csr_matrix(strict.astype(np.int8)), perm_type="column")
    return m - int((match >= 0).sum())


def _height(reach: np.ndarray) -> int:
    m = reach.shape[0]
    if m == 0:
        return 0
    longest = [1] * m
    # classes sorted by number of strict predecessors form a topological order
    order = sorted(range(m), key=lambda c: int(reach[:, c].sum()))
    for c in order:
        for d in range(m):
            if reach[d, c] and d != c:
                longest[c] = max(longest[c], longest[d] + 1)
    return max(longest)


# ---------------------------------------------------------------------------
# Ore condition and free pairs


@dataclass(frozen=True)
class IntersectionWitness:
    u: object
    v: object
    product: object


@dataclass(frozen=True)
class FreeEvidence:
    depth: int
    words_checked: int
    distinct: bool
    collision: tuple | None = None


def free_pair_witness(spec: Semigroup, s, t, depth: int):
    """Look for ``s*u == t*v`` with ``u, v`` products of at most ``depth`` generators.

    Without a witness, check that the words of length at most ``depth`` in
    ``s`` and ``t`` are pairwise distinct, which is finite evidence that they
    generate a free subsemigroup.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    s, t = spec.check(s), spec.check(t)
    ball = build_ball(spec, depth)
    right = {}
    for v in ball.vertices:
        right.setdefault(spec.multiply(t, v), v)
    for u in ball.vertices:
        p = spec.multiply(s, u)
        if p in right:
            return IntersectionWitness(u, right[p], p)
    seen = {}
    checked = 0
    for n in range(1, depth + 1):
        for word in itertools.product((0, 1), repeat=n):
            x = s if word[0] == 0 else t
            for c in word[1:]:
                x = spec.multiply(x, s if c == 0 else t)
            checked += 1
            if x in seen:
                return FreeEvidence(depth, checked, False, (seen[x], word))
            seen[x] = word
    return FreeEvidence(depth, checked, True)

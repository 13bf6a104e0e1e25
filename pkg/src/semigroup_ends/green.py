"""Green's relations on Cayley balls, absolute and relative to a subsemigroup.

Everything here is evidence read off a finite ball.  Two elements are put in
one class only when the translations relating them stay inside the ball;
elements whose partners would lie outside remain in singleton classes.

For a subsemigroup ``T`` the relative relation ``R^T`` relates ``x`` and
``y`` when ``x T^1 = y T^1``.  In a ball this becomes the strongly connected
components of the step graph with an edge ``x -> x t`` for every ``t`` in
``T`` whose shortlex word, read from ``x``, stays in the ball.  ``L^T`` is
the same construction in the dual, and ``H^T`` is their meet.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .cayley import CayleyBall, Digraph, build_ball, strongly_connected_components
from .models import DualSemigroup, FiniteTableSemigroup, Semigroup

__all__ = [
    "SubsemigroupPredicate",
    "GreenReport",
    "ReesIndexEvidence",
    "GreenIndexEvidence",
    "relative_r_classes",
    "relative_l_classes",
    "green_report",
    "idempotents_and_regulars",
    "left_cancellative_check",
    "rees_index_evidence",
    "green_index_evidence",
    "is_right_group",
    "powers_evidence",
]


@dataclass(frozen=True)
class SubsemigroupPredicate:
    """Membership test for a subsemigroup plus a JSON description of it.

    Build one with the class methods; they sample products of members in a
    small ball and refuse predicates that are visibly not closed.
    """

    contains: Callable[[object], bool]
    description: dict = field(default_factory=dict)

    def __call__(self, x) -> bool:
        return bool(self.contains(x))

    @classmethod
    def whole(cls, spec: Semigroup) -> "SubsemigroupPredicate":
        return cls(lambda x: True, {"all": True})

    @classmethod
    def complement_of(cls, spec: Semigroup, elements: Iterable, check: bool = True) -> "SubsemigroupPredicate":
        """Everything except finitely many elements."""
        excluded = frozenset(spec.check(x) for x in elements)
        pred = cls(lambda x: x not in excluded,
                   {"complement": sorted((spec.format(x) for x in excluded), key=lambda s: (len(s), s))})
        return pred.checked(spec) if check else pred

    @classmethod
    def coordinate(cls, spec: Semigroup, index: int, values=None, not_values=None,
                   check: bool = True) -> "SubsemigroupPredicate":
        """Tuple elements whose coordinate ``index`` is (or is not) in a value set."""
        if (values is None) == (not_values is None):
            raise ValueError("give exactly one of values / not_values")
        if values is not None:
            vs = frozenset(int(v) for v in values)
            pred = cls(lambda x: x[index] in vs, {"coordinate": index, "values": sorted(vs)})
        else:
            vs = frozenset(int(v) for v in not_values)
            pred = cls(lambda x: x[index] not in vs, {"coordinate": index, "not_values": sorted(vs)})
        return pred.checked(spec) if check else pred

    @classmethod
    def from_dict(cls, spec: Semigroup, d: dict) -> "SubsemigroupPredicate":
        if d.get("all"):
            return cls.whole(spec)
        if "complement" in d:
            return cls.complement_of(spec, [spec.parse(s) for s in d["complement"]])
        if "coordinate" in d:
            return cls.coordinate(spec, int(d["coordinate"]), d.get("values"), d.get("not_values"))
        raise ValueError("subsemigroup needs one of 'all', 'complement', 'coordinate'")

    def checked(self, spec: Semigroup, radius: int = 3, samples: int = 2000, seed: int = 0):
        """Sample products of members in a small ball; raise if one falls outside."""
        ball = build_ball(spec, radius)
        members = [x for x in ball.vertices if self(x)]
        if not members:
            raise ValueError("subsemigroup has no members in the radius-%d ball" % radius)
        rng = random.Random(seed)
        pairs = ([(x, y) for x in members for y in members] if len(members) ** 2 <= samples
                 else [(rng.choice(members), rng.choice(members)) for _ in range(samples)])
        for x, y in pairs:
            if not self(spec.multiply(x, y)):
                raise ValueError(f"not closed: {spec.format(x)} * {spec.format(y)} leaves the subsemigroup")
        return self


def _step_graph(ball: CayleyBall, members: np.ndarray) -> Digraph:
    n = ball.size
    src, dst = [], []
    base = np.arange(n)
    for t in np.flatnonzero(members):
        cur = base
        for letter in ball.words[t]:
            nxt = np.full(n, -1, dtype=np.int64)
            ok = cur >= 0
            nxt[ok] = ball.succ[cur[ok], letter]
            cur = nxt
        ok = cur >= 0
        src.append(base[ok])
        dst.append(cur[ok])
    if not src:
        return Digraph(n, [], [])
    return Digraph(n, np.concatenate(src), np.concatenate(dst))


def _members(ball: CayleyBall, T) -> np.ndarray:
    if T is None:
        return np.ones(ball.size, dtype=bool)
    return np.array([T(x) for x in ball.vertices], dtype=bool)


def relative_r_classes(ball: CayleyBall, T: SubsemigroupPredicate | None = None):
    """R^T classes of the ball as (classes, certified) lists.

    ``certified[i]`` is true for classes with more than one element, whose
    members are joined by in-ball witnesses; singletons are only reflexive.
    With ``T`` omitted (or the whole semigroup) these are the strongly
    connected components of the Cayley ball.
    """
    if T is None or T.description.get("all"):
        classes = strongly_connected_components(ball)
    else:
        classes = strongly_connected_components(_step_graph(ball, _members(ball, T)))
    return classes, [len(c) > 1 for c in classes]


def _dual_ball(ball: CayleyBall) -> CayleyBall:
    dual = build_ball(DualSemigroup(ball.spec), ball.radius)
    if dual.vertices != ball.vertices:
        raise AssertionError("dual ball has a different vertex set")
    return dual


def relative_l_classes(ball: CayleyBall, T: SubsemigroupPredicate | None = None, dual: CayleyBall | None = None):
    """L^T classes, computed as R^T classes in the dual ball."""
    return relative_r_classes(dual if dual is not None else _dual_ball(ball), T)


def _meet(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    la = {v: i for i, c in enumerate(a) for v in c}
    lb = {v: i for i, c in enumerate(b) for v in c}
    groups: dict = {}
    for v in sorted(la):
        groups.setdefault((la[v], lb[v]), []).append(v)
    return sorted(groups.values(), key=lambda c: c[0])


@dataclass
class GreenReport:
    ball: CayleyBall
    r_classes: list[list[int]]
    l_classes: list[list[int]]
    h_classes: list[list[int]]
    r_certified: list[bool]
    l_certified: list[bool]
    h_certified: list[bool]
    idempotents: list[int]
    regular: list[int]

    def to_dict(self) -> dict:
        lab = self.ball.label
        part = lambda cs: [[lab(v) for v in c] for c in cs]  # noqa: E731
        return {
            "radius": self.ball.radius,
            "r_classes": part(self.r_classes),
            "r_certified": self.r_certified,
            "l_classes": part(self.l_classes),
            "l_certified": self.l_certified,
            "h_classes": part(self.h_classes),
            "h_certified": self.h_certified,
            "idempotents": [lab(v) for v in self.idempotents],
            "regular": [lab(v) for v in self.regular],
        }


def green_report(ball: CayleyBall, T: SubsemigroupPredicate | None = None) -> GreenReport:
    r, rc = relative_r_classes(ball, T)
    l, lc = relative_l_classes(ball, T)
    h = _meet(r, l)
    idem, reg = idempotents_and_regulars(ball)
    return GreenReport(ball, r, l, h, rc, lc, [len(c) > 1 for c in h], idem, reg)


def idempotents_and_regulars(ball: CayleyBall) -> tuple[list[int], list[int]]:
    """Idempotent vertices, and vertices x with some in-ball z giving x z x = x."""
    spec = ball.spec
    mul = spec.multiply
    idem = [i for i, x in enumerate(ball.vertices) if mul(x, x) == x]
    reg = []
    for i, x in enumerate(ball.vertices):
        if any(mul(mul(x, z), x) == x for z in ball.vertices):
            reg.append(i)
    return idem, reg


def left_cancellative_check(ball: CayleyBall):
    """First in-ball ``(a, x, y)`` with ``a x = a y`` and ``x != y``, or None."""
    mul = ball.spec.multiply
    for a in ball.vertices:
        seen = {}
        for x in ball.vertices:
            p = mul(a, x)
            if p in seen:
                return (a, x, seen[p])
            seen[p] = x
    return None


@dataclass(frozen=True)
class ReesIndexEvidence:
    radii: tuple[int, ...]
    counts: tuple[int, ...]
    stable: bool
    index: int | None

    @property
    def verdict(self) -> str:
        return str(self.index) if self.stable else "unbounded at horizon"


def _stable(counts) -> bool:
    return len(counts) >= 3 and counts[-1] == counts[-2] == counts[-3]


def _check_radii(radii) -> tuple[int, ...]:
    radii = tuple(int(r) for r in radii)
    if not radii or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing")
    return radii


def rees_index_evidence(ambient: Semigroup, T: SubsemigroupPredicate, radii) -> ReesIndexEvidence:
    """Size of the complement of ``T`` in growing balls; index = size + 1 once stable."""
    radii = _check_radii(radii)
    big = build_ball(ambient, radii[-1])
    outside = np.array([not T(x) for x in big.vertices], dtype=bool)
    counts = tuple(int((outside & (big.depth <= r)).sum()) for r in radii)
    stable = _stable(counts)
    return ReesIndexEvidence(radii, counts, stable, counts[-1] + 1 if stable else None)


@dataclass(frozen=True)
class GreenIndexEvidence:
    radii: tuple[int, ...]
    h_counts: tuple[int, ...]
    r_counts: tuple[int, ...]
    stable: bool
    count: int | None

    @property
    def verdict(self) -> str:
        return str(self.count) if self.stable else "unbounded at horizon"


def green_index_evidence(ambient: Semigroup, T: SubsemigroupPredicate, radii) -> GreenIndexEvidence:
    """Relative H^T classes (and R^T classes) meeting the complement of ``T``, per radius."""
    radii = _check_radii(radii)
    h_counts, r_counts = [], []
    for r in radii:
        ball = build_ball(ambient, r)
        outside = [i for i, x in enumerate(ball.vertices) if not T(x)]
        if not outside:
            h_counts.append(0)
            r_counts.append(0)
            continue
        rcl, _ = relative_r_classes(ball, T)
        lcl, _ = relative_l_classes(ball, T)
        hcl = _meet(rcl, lcl)
        out = set(outside)
        h_counts.append(sum(1 for c in hcl if out.intersection(c)))
        r_counts.append(sum(1 for c in rcl if out.intersection(c)))
    stable = _stable(h_counts)
    return GreenIndexEvidence(radii, tuple(h_counts), tuple(r_counts), stable,
                              h_counts[-1] if stable else None)


def is_right_group(spec: FiniteTableSemigroup) -> bool:
    """Exact test: left cancellative and a single R-class."""
    t = spec.table
    n = spec.size
    for a in range(n):
        if len(set(t[a])) != n:
            return False
    # one R-class: every y lies in x S^1
    for x in range(n):
        if len(set(t[x]) | {x}) != n:
            return False
    return True


def powers_evidence(ball: CayleyBall, T: SubsemigroupPredicate | None = None) -> list[tuple[int, bool]]:
    """For each x with x^2 in the ball: whether x and x^2 share a certified R-class."""
    classes, _ = relative_r_classes(ball, T)
    cls = {v: i for i, c in enumerate(classes) for v in c}
    out = []
    for i, x in enumerate(ball.vertices):
        sq = ball.spec.multiply(x, x)
        j = ball.index.get(sq)
        if j is not None:
            out.append((i, cls[i] == cls[j]))
    return out

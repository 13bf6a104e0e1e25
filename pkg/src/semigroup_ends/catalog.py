"""Built-in example semigroups with machine-checked expectations.

Each :class:`CatalogCase` builds its semigroup, samples some rays, runs the
pipeline (ball, rays, comparisons, poset, Green evidence) and compares what
it observes with a list of :class:`Expectation` objects.  Every expectation
records where its value comes from: ``"stated"`` for a claim made about the
worked example itself, ``"derived"`` for a value computed independently
(the note names the oracle).

The two ``*-suite`` cases run randomized oracle comparisons instead.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .cayley import Digraph, build_ball, disjoint_paths, separates
from .ends import (ANTI_RAY, DEFAULT_HORIZONS, DEFAULT_K, RAY, PeriodicRay, Verdict,
                   dominance_ray, end_poset, enumerate_periodic_rays, format_ray, parse_ray,
                   translate_ray, walk_to_ray)
from .green import (SubsemigroupPredicate, green_index_evidence, rees_index_evidence,
                    relative_r_classes)
from .models import (DualSemigroup, GridFlagSemigroup, IntegerTupleSemigroup,
                     PresentedSemigroup, ReesMatrixSemigroup, Semigroup)
from .oracles import brute_force_disjoint_paths, random_dag, random_digraph, random_walk
from .words import RewriteSystem

__all__ = [
    "RunConfig",
    "Expectation",
    "ExpectationResult",
    "CaseReport",
    "CatalogCase",
    "CATALOG",
    "case_names",
    "get_case",
    "verify_case",
    "aba_spec",
    "integers_spec",
    "grid_spec",
    "zz01_spec",
    "zzn_spec",
    "rees_spec",
    "ray_classes",
    "ray_antichain",
]


@dataclass(frozen=True)
class RunConfig:
    horizons: tuple[int, ...] = DEFAULT_HORIZONS
    k: int = DEFAULT_K
    radii: tuple[int, ...] = (3, 4, 5, 6)
    ball_cap: int | None = None
    output_format: str = "text"
    output_path: str | None = None
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "horizons", tuple(int(h) for h in self.horizons))
        object.__setattr__(self, "radii", tuple(int(r) for r in self.radii))
        if any(b <= a for a, b in zip(self.horizons, self.horizons[1:])):
            raise ValueError("horizons must be strictly increasing")
        if any(b <= a for a, b in zip(self.radii, self.radii[1:])):
            raise ValueError("radii must be strictly increasing")
        if self.ball_cap is not None and self.ball_cap <= 0:
            raise ValueError("ball cap must be positive")
        if self.k < 1:
            raise ValueError("k must be positive")


@dataclass(frozen=True)
class Expectation:
    key: str
    expected: object
    provenance: str
    note: str = ""

    def __post_init__(self):
        if self.provenance not in ("stated", "derived"):
            raise ValueError("provenance must be 'stated' or 'derived'")


@dataclass(frozen=True)
class ExpectationResult:
    expectation: Expectation
    observed: object

    @property
    def passed(self) -> bool:
        return self.observed == self.expectation.expected


@dataclass
class CaseReport:
    name: str
    results: list[ExpectationResult]
    seconds: float

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def lines(self) -> list[str]:
        out = [f"case {self.name}: {'PASS' if self.passed else 'FAIL'}"]
        for r in self.results:
            e = r.expectation
            mark = "ok  " if r.passed else "DIFF"
            if r.passed and len(repr(e.expected)) > 100:
                line = f"  {mark} {e.key}: observed value matches the expected one [{e.provenance}"
            else:
                line = f"  {mark} {e.key}: expected {e.expected!r}, observed {r.observed!r} [{e.provenance}"
            line += f": {e.note}]" if e.note else "]"
            out.append(line)
        return out

    def to_dict(self) -> dict:
        return {
            "case": self.name,
            "passed": self.passed,
            "expectations": [
                {"key": r.expectation.key, "expected": _plain(r.expectation.expected),
                 "observed": _plain(r.observed), "passed": r.passed,
                 "provenance": r.expectation.provenance, "note": r.expectation.note}
                for r in self.results
            ],
        }


def _plain(x):
    if isinstance(x, (tuple, list)):
        return [_plain(v) for v in x]
    if isinstance(x, Verdict):
        return x.value
    return x


@dataclass
class CatalogCase:
    name: str
    description: str
    spec: Callable[[], Semigroup]
    observe: Callable[[RunConfig], dict]
    expectations: list[Expectation] = field(default_factory=list)
    rays: Callable[[], list[str]] | None = None


# ---------------------------------------------------------------------------
# semigroups


def aba_spec() -> PresentedSemigroup:
    return PresentedSemigroup(RewriteSystem.from_strings("ab", [("aba", "b"), ("bba", "abb")]), monoid=True)


def integers_spec() -> IntegerTupleSemigroup:
    return IntegerTupleSemigroup(1, [1, -1], monoid=True, names="aA")


def grid_spec(extra_diagonal: bool = False, monoid: bool = True) -> IntegerTupleSemigroup:
    gens = [(1, 0), (0, 1)] + ([(1, 1)] if extra_diagonal else [])
    return IntegerTupleSemigroup(2, gens, monoid=monoid, names="abc"[:len(gens)])


def zz01_spec() -> GridFlagSemigroup:
    return GridFlagSemigroup(2, [(1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1), (0, 0, 0)], names="aAbBz")


def zz01_sub_spec() -> GridFlagSemigroup:
    return GridFlagSemigroup(2, [(1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1)], names="aAbB")


def zzn_spec() -> IntegerTupleSemigroup:
    return IntegerTupleSemigroup(3, [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1)],
                                 monoid=True, names="aAbBc")


def zzn_sub_spec() -> IntegerTupleSemigroup:
    return IntegerTupleSemigroup(3, [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 2), (0, 0, 3)],
                                 monoid=True, names="aAbBcd")


def rees_spec(n: int = 2, m: int = 1) -> ReesMatrixSemigroup:
    P = [[0] * n for _ in range(m)]
    spec = ReesMatrixSemigroup(integers_spec(), n, m, P, X=[0, 1, -1])
    tag = {0: "e", 1: "p", -1: "m"}
    names = [f"{tag[g]}{i}" + (f"_{lam}" if m > 1 else "") for i, g, lam in spec.generators]
    return spec.with_generators(spec.generators, names)


# ---------------------------------------------------------------------------
# helpers shared by cases and the acceptance suite


def ray_classes(report, kind: str = RAY) -> int:
    """Number of classes containing at least one ray of ``kind``."""
    s = report.summary
    return sum(1 for c in s.classes if any(report.rays[i].kind == kind for i in c))


def ray_antichain(report) -> int:
    """Largest set of ray-containing classes that are pairwise certified Incomparable."""
    s = report.summary
    reps = [c[0] for c in s.classes if report.rays[c[0]].kind == RAY]
    best = 0
    for size in range(1, len(reps) + 1):
        found = any(all(report.matrix[i][j] == Verdict.INCOMPARABLE for i, j in itertools.combinations(sub, 2))
                    for sub in itertools.combinations(reps, size))
        if not found:
            break
        best = size
    return best


def _rays(spec, literals):
    return [parse_ray(spec, s) for s in literals]


def _poset_obs(report) -> dict:
    s = report.summary
    return {
        "classes": len(s.classes),
        "unknown": len(s.unknown),
        "shape": s.shape,
        "width": s.width,
        "height": s.height,
        "consistent": s.consistent,
    }


def _matrix(report):
    return [[v.value for v in row] for row in report.matrix]


# ---------------------------------------------------------------------------
# the cases


def _aba_observe(cfg: RunConfig) -> dict:
    spec = aba_spec()
    conf = spec.system.is_locally_confluent()
    rays = enumerate_periodic_rays(spec, 2, 16)
    anti = enumerate_periodic_rays(spec, 2, 16, kind=ANTI_RAY)
    rep = end_poset(spec, rays + anti, cfg.horizons, cfg.k)
    s = rep.summary
    anti_only = sum(1 for c in s.classes if all(rep.rays[i].kind == ANTI_RAY for i in c))
    r_classes, _ = relative_r_classes(build_ball(spec, 8))
    layers = end_poset(spec, _rays(spec, [f"base={'b' * i};period=a" for i in range(6)]), cfg.horizons, cfg.k)
    return {
        "layer_classes": len(layers.summary.classes),
        "layer_hasse": [list(p) for p in layers.summary.hasse],
        "confluent": bool(conf),
        "unjoinable_pairs": len(conf.unjoinable),
        "ray_classes": ray_classes(rep),
        "unknown": len(s.unknown),
        "ray_antichain": ray_antichain(rep),
        "antiray_only_classes": anti_only,
        "r_classes_trivial": all(len(c) == 1 for c in r_classes),
    }


def _z_observe(cfg: RunConfig) -> dict:
    spec = integers_spec()
    rays = enumerate_periodic_rays(spec, 1, 16)
    rep = end_poset(spec, rays, cfg.horizons, cfg.k)
    obs = _poset_obs(rep)
    obs["rays"] = len(rays)
    return obs


NXN_RAYS = ([f"base={'a' * i};period=b" for i in range(4)]
            + [f"base={'b' * i};period=a" for i in range(4)] + ["base=;period=ab"])


def _nxn_expected_matrix():
    # rows i < j: i below j; columns likewise; rows and columns incomparable;
    # the diagonal above everything
    n = 9
    m = [["Equivalent"] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if j == 8:
                m[i][j] = "FirstBelowSecond"
            elif i == 8:
                m[i][j] = "SecondBelowFirst"
            elif (i < 4) != (j < 4):
                m[i][j] = "Incomparable"
            else:
                m[i][j] = "FirstBelowSecond" if i < j else "SecondBelowFirst"
    return m


def _nxn_observe(cfg: RunConfig) -> dict:
    spec = grid_spec()
    rep = end_poset(spec, _rays(spec, NXN_RAYS), cfg.horizons, cfg.k)
    obs = _poset_obs(rep)
    obs["matrix"] = _matrix(rep)
    return obs


ZZ01_RAYS = ["base=a;period=a", "base=a;period=b", "base=A;period=A", "base=B;period=B",
             "base=z;period=a", "base=z;period=b", "base=zA;period=A", "base=zB;period=B"]
ZZ01_SUB_RAYS = ["base=a;period=a", "base=a;period=b", "base=A;period=A", "base=B;period=B"]


def _zz01_observe(cfg: RunConfig) -> dict:
    spec = zz01_spec()
    rep = end_poset(spec, _rays(spec, ZZ01_RAYS), cfg.horizons, cfg.k)
    s = rep.summary
    flag = {i: spec.evaluate(r.base)[2] for i, r in enumerate(rep.rays)}
    one = {s.class_of[i] for i in flag if flag[i] == 1}
    zero = {s.class_of[i] for i in flag if flag[i] == 0}
    sub = zz01_sub_spec()
    sub_rep = end_poset(sub, _rays(sub, ZZ01_SUB_RAYS), cfg.horizons, cfg.k)
    T = SubsemigroupPredicate.coordinate(spec, 2, values=[1])
    gi = green_index_evidence(spec, T, cfg.radii)
    return {
        "classes": len(s.classes),
        "unknown": len(s.unknown) + len(sub_rep.summary.unknown),
        "flag1_below_flag0": len(one) == 1 and len(zero) == 1 and (one.pop(), zero.pop()) in s.below,
        "sub_classes": len(sub_rep.summary.classes),
        "green_index": gi.count,
    }


def _rees_rays(spec, n):
    lits = []
    for i in range(1, n + 1):
        lits.append(f"base=e{i};period=p{i}")
        lits.append(f"base=e{i};period=m{i}")
    return _rays(spec, lits)


def _rees_observe(cfg: RunConfig) -> dict:
    spec = rees_spec(2, 1)
    rep = end_poset(spec, _rees_rays(spec, 2), cfg.horizons, cfg.k)
    dual = DualSemigroup(spec)
    left = end_poset(dual, _rees_rays(dual, 2), cfg.horizons, cfg.k)
    ball = build_ball(spec, 6)
    crossing = any(ball.vertices[u][0] != ball.vertices[v][0] for u, v, _ in ball.edges)
    return {
        "right_classes": len(rep.summary.classes),
        "right_shape": rep.summary.shape,
        "left_classes": len(left.summary.classes),
        "left_shape": left.summary.shape,
        "unknown": len(rep.summary.unknown) + len(left.summary.unknown),
        "edges_cross_components": crossing,
    }


ZZN_RAYS = [f"base={'c' * i};period=a" for i in range(4)] + ["base=;period=c"]


def _zzn_observe(cfg: RunConfig) -> dict:
    spec = zzn_spec()
    rep = end_poset(spec, _rays(spec, ZZN_RAYS), cfg.horizons, cfg.k)
    sub = zzn_sub_spec()
    sub_rep = end_poset(sub, _rays(sub, ["base=c;period=a", "base=d;period=a"]), cfg.horizons, cfg.k)
    T = SubsemigroupPredicate.coordinate(spec, 2, not_values=[1])
    gi = green_index_evidence(spec, T, cfg.radii)
    return {
        "shape": rep.summary.shape,
        "classes": len(rep.summary.classes),
        "unknown": len(rep.summary.unknown),
        "sub_layers_2_3": sub_rep.matrix[0][1].value,
        "green_index": gi.count,
    }


CHANGE_GEN_RAYS = ([f"base={'a' * i};period=b" for i in range(4)]
                   + [f"base={'b' * i};period=a" for i in range(4)] + ["base=;period=c"])


def change_gen_matrices(cfg: RunConfig):
    """Verdict matrices over ``{a, b, c=(1,1)}`` and over ``{a, b}`` after translation."""
    ext = grid_spec(extra_diagonal=True)
    base = grid_spec()
    rays = _rays(ext, CHANGE_GEN_RAYS)
    before = end_poset(ext, rays, cfg.horizons, cfg.k)
    translated = []
    for r in rays:
        tr = translate_ray(base, (1, 1), r, horizon=2 * cfg.horizons[-1] + 8)
        if tr.ray is None:
            raise ValueError(f"no periodic form for translated {format_ray(ext, r)}")
        translated.append(tr.ray)
    after = end_poset(base, translated, cfg.horizons, cfg.k)
    return before, after, translated


def _change_gen_observe(cfg: RunConfig) -> dict:
    before, after, _ = change_gen_matrices(cfg)
    return {
        "matrices_equal": _matrix(before) == _matrix(after),
        "classes": len(before.summary.classes),
        "unknown": len(before.summary.unknown) + len(after.summary.unknown),
    }


REES_INDEX_S_RAYS = NXN_RAYS
REES_INDEX_T_RAYS = ([f"base={'a' * i}b;period=b" for i in range(4)]
                     + [f"base={'b' * i}a;period=a" for i in range(4)] + ["base=a;period=ba"])


def rees_index_posets(cfg: RunConfig):
    S = grid_spec()
    T = grid_spec(monoid=False)
    s_rep = end_poset(S, _rays(S, REES_INDEX_S_RAYS), cfg.horizons, cfg.k)
    t_rep = end_poset(T, _rays(T, REES_INDEX_T_RAYS), cfg.horizons, cfg.k)
    return s_rep, t_rep


def _rees_index_observe(cfg: RunConfig) -> dict:
    S = grid_spec()
    pred = SubsemigroupPredicate.complement_of(S, [(0, 0)])
    ev = rees_index_evidence(S, pred, cfg.radii)
    s_rep, t_rep = rees_index_posets(cfg)
    return {
        "rees_index": ev.index,
        "posets_equal": _matrix(s_rep) == _matrix(t_rep),
        "unknown": len(s_rep.summary.unknown) + len(t_rep.summary.unknown),
    }


def menger_suite(seed: int = 0, cases: int = 200) -> dict:
    rng = random.Random(seed)
    mismatches = 0
    duality = 0
    for _ in range(cases):
        n, edges, S, T = random_digraph(rng)
        g = Digraph.from_successors([[v for u, v in edges if u == w] for w in range(n)])
        pk = disjoint_paths(g, S, T)
        if pk.count != brute_force_disjoint_paths(n, edges, S, T):
            mismatches += 1
        if len(pk.separator) != pk.count or not separates(g, pk.separator, S, T):
            duality += 1
    return {"cases": cases, "mismatches": mismatches, "duality_failures": duality}


def lemma_suite(seed: int = 0, walks: int = 500, dags: int = 100) -> dict:
    rng = random.Random(seed)
    bad_walks = 0
    for _ in range(walks):
        walk, edges = random_walk(rng, rng.randint(2, 7), rng.randint(2, 20))
        res = walk_to_ray(walk)
        ok = len(set(res.vertices)) == len(res.vertices)
        ok &= all((u, v) in edges for u, v in zip(res.vertices, res.vertices[1:]))
        ok &= all(walk[i] == v for i, v in zip(res.indices, res.vertices))
        ok &= list(res.indices) == sorted(res.indices)
        bad_walks += not ok
    bad_dags = 0
    for _ in range(dags):
        succ = random_dag(rng, rng.randint(4, 14))
        n = len(succ)
        sigma = rng.sample(range(1, n), rng.randint(1, n - 1))
        try:
            res = dominance_ray(succ, 0, sigma)
        except AssertionError:
            bad_dags += 1
            continue
        hits = sorted(p[-1] for p in res.paths)
        starts_on_ray = all(p[0] in res.prefix for p in res.paths)
        if hits != sorted(set(hits)) or not set(hits) <= set(sigma) or not starts_on_ray:
            bad_dags += 1
    return {"walks": walks, "walk_failures": bad_walks, "dags": dags, "dag_failures": bad_dags}


def _e(key, expected, provenance, note=""):
    return Expectation(key, expected, provenance, note)


CATALOG: dict[str, CatalogCase] = {}


def _register(case: CatalogCase):
    CATALOG[case.name] = case


_register(CatalogCase(
    "aba_monoid", "monoid <a,b | aba=b>: rewriting completeness and its ends", aba_spec, _aba_observe, [
        _e("confluent", True, "stated", "the two rules form a complete system"),
        _e("unjoinable_pairs", 0, "stated", "the two rules form a complete system"),
        _e("ray_classes", 4, "derived",
           "b-count is invariant under the rules, so each b-layer is a directed line; "
           "sampled ends are a^w, ba^w, bba^w and the rays using b infinitely often"),
        _e("unknown", 0, "derived", "flow comparison at default horizons"),
        _e("ray_antichain", 2, "derived", "even and odd layers form two chains below the b-heavy end"),
        _e("layer_classes", 6, "stated", "infinitely many ends; b^i a^w for i < 6 are pairwise distinct"),
        _e("layer_hasse", [[0, 2], [1, 3], [2, 4], [3, 5]], "derived",
           "b^i a^w lies below b^(i+2) a^w; the two parities are incomparable"),
        _e("antiray_only_classes", 2, "stated", "there are anti-rays not equivalent to any ray"),
        _e("r_classes_trivial", True, "stated", "anti-rays exist although R-classes are trivial"),
    ]))
_register(CatalogCase(
    "z", "the integers: two incomparable ends", integers_spec, _z_observe, [
        _e("rays", 2, "derived", "only +1 and -1 periods of length 1 give rays"),
        _e("classes", 2, "stated", "a group has 1, 2 or continuum many ends, here 2"),
        _e("shape", "antichain", "stated", "group ends form an antichain"),
        _e("unknown", 0, "derived", "single-vertex cuts at every horizon"),
    ]))
_register(CatalogCase(
    "nxn", "N0 x N0: rows, columns and the diagonal", grid_spec, _nxn_observe, [
        _e("classes", 9, "stated", "rows give infinitely many ends; the sample shows 9"),
        _e("shape", "two-chains-join", "derived", "disjoint rightward/upward connecting paths"),
        _e("unknown", 0, "derived", "flow comparison at default horizons"),
        _e("matrix", _nxn_expected_matrix(), "derived",
           "paths (i,j)->(j,j) are disjoint; coordinates never decrease"),
    ]))
_register(CatalogCase(
    "zz01", "Z x Z x {0,1} and its subsemigroup with flag 1", zz01_spec, _zz01_observe, [
        _e("classes", 2, "stated", "two ends, one per flag"),
        _e("flag1_below_flag0", True, "derived", "edges only go from flag 1 to flag 0"),
        _e("sub_classes", 1, "stated", "the flag-1 subsemigroup has only one end"),
        _e("green_index", 1, "stated", "the flag-0 part is one H^T-class"),
        _e("unknown", 0, "derived", "flow comparison at default horizons"),
    ]))
_register(CatalogCase(
    "rees", "Rees matrix semigroup M[Z; 2, 1; 0]", rees_spec, _rees_observe, [
        _e("right_classes", 4, "stated", "right ends form an antichain of size n * 2"),
        _e("right_shape", "antichain", "stated", "right ends form an antichain"),
        _e("left_classes", 2, "stated", "left ends form an antichain of size m * 2"),
        _e("left_shape", "antichain", "stated", "left ends form an antichain"),
        _e("edges_cross_components", False, "stated", "the right graph splits by the I-component"),
        _e("unknown", 0, "derived", "flow comparison at default horizons"),
    ]))
_register(CatalogCase(
    "zzn", "Z x Z x N0 and the subsemigroup missing layer 1", zzn_spec, _zzn_observe, [
        _e("shape", "chain", "stated", "any two ends of the ambient semigroup are comparable"),
        _e("classes", 5, "derived", "layers 0..3 and the vertical ray are distinct"),
        _e("sub_layers_2_3", "Incomparable", "stated", "no paths between layers 2 and 3 in T"),
        _e("green_index", 1, "stated", "the complement is one H^T-class"),
        _e("unknown", 0, "derived", "flow comparison at default horizons"),
    ]))
_register(CatalogCase(
    "change_gen", "N0 x N0 with and without the extra generator (1,1)", lambda: grid_spec(True),
    _change_gen_observe, [
        _e("matrices_equal", True, "stated", "the end poset does not depend on the generating set"),
        _e("classes", 9, "derived", "same sample as nxn"),
        _e("unknown", 0, "derived", "flow comparison at default horizons"),
    ]))
_register(CatalogCase(
    "rees_index", "N0 x N0 and the subsemigroup without the identity", grid_spec, _rees_index_observe, [
        _e("rees_index", 2, "stated", "Rees index is |S \\ T| + 1 = 2"),
        _e("posets_equal", True, "stated", "finite Rees index preserves the end poset"),
        _e("unknown", 0, "derived", "flow comparison at default horizons"),
    ]))
_register(CatalogCase(
    "menger-suite", "disjoint-path packing against exhaustive search", integers_spec,
    lambda cfg: menger_suite(cfg.seed), [
        _e("cases", 200, "derived", "random digraphs with at most 8 vertices"),
        _e("mismatches", 0, "derived", "exhaustive packing over vertex subsets"),
        _e("duality_failures", 0, "derived", "separator size equals count and separates"),
    ]))
_register(CatalogCase(
    "lemma-suite", "walk-to-ray extraction and dominance rays on random inputs", integers_spec,
    lambda cfg: lemma_suite(cfg.seed), [
        _e("walks", 500, "derived", "random finite walks"),
        _e("walk_failures", 0, "derived", "distinct vertices, valid edges, subsequence"),
        _e("dags", 100, "derived", "random out-locally finite DAGs"),
        _e("dag_failures", 0, "derived", "connecting paths pairwise disjoint and end in sigma"),
    ]))


def case_names() -> list[str]:
    return list(CATALOG)


def get_case(name: str) -> CatalogCase:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog case {name!r}; known: {', '.join(CATALOG)}") from None


def verify_case(case: CatalogCase, cfg: RunConfig | None = None) -> CaseReport:
    """Run a case and compare every expectation; missing observations count as diffs."""
    cfg = cfg or RunConfig()
    start = time.perf_counter()
    observed = case.observe(cfg)
    results = [ExpectationResult(e, observed.get(e.key, "<not observed>")) for e in case.expectations]
    return CaseReport(case.name, results, time.perf_counter() - start)

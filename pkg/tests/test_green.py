import itertools
import random

import pytest

from semigroup_ends.catalog import grid_spec, zz01_spec, zzn_spec
from semigroup_ends.cayley import build_ball
from semigroup_ends.green import (SubsemigroupPredicate, green_index_evidence, green_report,
                                  idempotents_and_regulars, is_right_group, left_cancellative_check,
                                  powers_evidence, rees_index_evidence, relative_l_classes,
                                  relative_r_classes)
from semigroup_ends.models import FiniteTableSemigroup, IntegerTupleSemigroup
from semigroup_ends.oracles import right_group_by_equations, right_group_table


def transformation_table(maps):
    """Semigroup generated by self-maps of {0..k-1}, composed left to right."""
    elems = [tuple(m) for m in maps]
    seen = set(elems)
    i = 0
    while i < len(elems):
        for g in maps:
            p = tuple(g[v] for v in elems[i])
            if p not in seen:
                seen.add(p)
                elems.append(p)
        i += 1
    idx = {e: n for n, e in enumerate(elems)}
    return [[idx[tuple(y[v] for v in x)] for y in elems] for x in elems]


def cyclic(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def right_zero(n):
    return [[b for b in range(n)] for _ in range(n)]


def left_zero(n):
    return [[a for _ in range(n)] for a in range(n)]


TABLES = {
    "T3-sample": transformation_table([(1, 2, 0), (1, 0, 2), (0, 0, 2)]),
    "rank-one": transformation_table([(0, 0, 0), (1, 1, 1), (1, 2, 0)]),
    "Z4xE3": right_group_table(cyclic(4), 3),
    "right-zero": right_zero(3),
    "left-zero": left_zero(3),
    "Z5": cyclic(5),
}


def _classes_oracle(table, members, side):
    n = len(table)
    def ideal(x):
        if side == "r":
            return frozenset([x] + [table[x][t] for t in members])
        return frozenset([x] + [table[t][x] for t in members])
    # closure: x T^1 is already closed since T is a subsemigroup
    groups = {}
    for x in range(n):
        groups.setdefault(ideal(x), []).append(x)
    return sorted(sorted(g) for g in groups.values())


def _as_elements(ball, classes):
    return sorted(sorted(ball.vertices[v] for v in c) for c in classes)


@pytest.mark.parametrize("name", sorted(TABLES))
def test_r_and_l_classes_of_finite_semigroups(name):
    spec = FiniteTableSemigroup(TABLES[name])
    ball = build_ball(spec, spec.size + 1)
    assert sorted(ball.vertices) == list(range(spec.size))
    everything = list(range(spec.size))
    r, _ = relative_r_classes(ball)
    l, _ = relative_l_classes(ball)
    assert _as_elements(ball, r) == _classes_oracle(spec.table, everything, "r")
    assert _as_elements(ball, l) == _classes_oracle(spec.table, everything, "l")


def test_relative_classes_of_a_finite_subsemigroup():
    spec = FiniteTableSemigroup(TABLES["T3-sample"])
    t = spec.table
    rng = random.Random(4)
    for _ in range(10):
        gens = rng.sample(range(spec.size), 2)
        members = set(gens)
        while True:
            new = {t[a][b] for a in members for b in members} - members
            if not new:
                break
            members |= new
        pred = SubsemigroupPredicate(lambda x, m=frozenset(members): x in m, {"custom": True})
        ball = build_ball(spec, spec.size + 1)
        r, _ = relative_r_classes(ball, pred)
        assert _as_elements(ball, r) == _classes_oracle(t, sorted(members), "r")


def test_zz01_classes():
    ball = build_ball(zz01_spec(), 4)
    r, cert = relative_r_classes(ball)
    assert sorted(len(c) for c in r) == [25, 41]
    assert all(cert)
    rep = green_report(ball)
    assert len(rep.h_classes) == 2
    assert [ball.vertices[i] for i in rep.idempotents] == [(0, 0, 0), (0, 0, 1)]
    assert rep.to_dict()["radius"] == 4


def test_left_cancellative_counterexample():
    a, x, y = left_cancellative_check(build_ball(zz01_spec(), 3))
    spec = zz01_spec()
    assert x != y and spec.multiply(a, x) == spec.multiply(a, y)
    assert left_cancellative_check(build_ball(grid_spec(), 3)) is None


def test_regular_elements_of_a_group():
    spec = IntegerTupleSemigroup(1, [1, -1])
    ball = build_ball(spec, 3)
    idem, reg = idempotents_and_regulars(ball)
    assert [ball.vertices[i] for i in idem] == [0]
    # x z x = x needs z = -x, which is in the ball for every x
    assert len(reg) == ball.size


def test_predicates_check_closure():
    s = grid_spec()
    with pytest.raises(ValueError, match="not closed"):
        SubsemigroupPredicate.coordinate(s, 0, values=[0, 1])
    with pytest.raises(ValueError):
        SubsemigroupPredicate.coordinate(s, 0)
    with pytest.raises(ValueError):
        SubsemigroupPredicate.from_dict(s, {"bogus": 1})
    p = SubsemigroupPredicate.from_dict(s, {"complement": ["(0,0)"]})
    assert not p((0, 0)) and p((1, 0))
    assert p.description == {"complement": ["(0,0)"]}


def test_rees_index_of_nxn_without_identity():
    s = grid_spec()
    ev = rees_index_evidence(s, SubsemigroupPredicate.complement_of(s, [(0, 0)]), (3, 4, 5, 6))
    assert ev.counts == (1, 1, 1, 1) and ev.stable and ev.index == 2


def test_rees_index_unbounded_for_infinite_complement():
    s = zz01_spec()
    ev = rees_index_evidence(s, SubsemigroupPredicate.coordinate(s, 2, values=[1]), (1, 2, 3, 4))
    assert ev.counts == (1, 5, 13, 25)
    assert not ev.stable and ev.verdict == "unbounded at horizon"


def test_green_index_examples():
    s = zz01_spec()
    ev = green_index_evidence(s, SubsemigroupPredicate.coordinate(s, 2, values=[1]), (3, 4, 5, 6))
    assert ev.h_counts == (1, 1, 1, 1) and ev.count == 1
    z = zzn_spec()
    ev = green_index_evidence(z, SubsemigroupPredicate.coordinate(z, 2, not_values=[1]), (3, 4, 5, 6))
    assert ev.count == 1


def test_green_index_radii_must_increase():
    s = grid_spec()
    with pytest.raises(ValueError):
        green_index_evidence(s, SubsemigroupPredicate.complement_of(s, [(0, 0)]), (4, 3))


def test_whole_semigroup_has_empty_complement():
    s = grid_spec()
    ev = green_index_evidence(s, SubsemigroupPredicate.whole(s), (2, 3, 4))
    assert ev.h_counts == (0, 0, 0) and ev.count == 0


def _all_small_tables(n):
    for flat in itertools.product(range(n), repeat=n * n):
        t = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
        if all(t[t[x][y]][z] == t[x][t[y][z]] for x in range(n) for y in range(n) for z in range(n)):
            yield t


def test_right_group_exact_against_equation_oracle():
    tables = list(_all_small_tables(2)) + list(_all_small_tables(3))
    tables += [right_group_table(cyclic(g), e) for g in (1, 2, 3) for e in (1, 2, 3)]
    tables += [TABLES["T3-sample"], TABLES["rank-one"]]
    positives = 0
    for t in tables:
        spec = FiniteTableSemigroup(t)
        expected = right_group_by_equations(t)
        assert is_right_group(spec) == expected
        positives += expected
    assert positives > 5


def test_right_and_left_zero():
    assert is_right_group(FiniteTableSemigroup(right_zero(3)))
    assert not is_right_group(FiniteTableSemigroup(left_zero(3)))


def test_powers_share_class_in_a_group():
    ball = build_ball(IntegerTupleSemigroup(2, [(1, 0), (-1, 0), (0, 1), (0, -1)]), 6)
    ev = powers_evidence(ball)
    assert ev and all(same for _, same in ev)

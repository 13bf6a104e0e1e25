import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semigroup_ends.catalog import (grid_spec, integers_spec, aba_spec, rees_spec, zz01_spec,
                                    zzn_spec)
from semigroup_ends.models import (DualSemigroup, ElementError, FiniteTableSemigroup,
                                   GridFlagSemigroup, IntegerTupleSemigroup, ProductSemigroup,
                                   ReesMatrixSemigroup, dual_spec, is_idempotent, multiply,
                                   spec_from_dict)

SPECS = {
    "z": integers_spec,
    "nxn": grid_spec,
    "aba_monoid": aba_spec,
    "zz01": zz01_spec,
    "zzn": zzn_spec,
    "rees": rees_spec,
    "product": lambda: ProductSemigroup(integers_spec(), grid_spec()),
    "dual": lambda: DualSemigroup(rees_spec()),
    "table": lambda: FiniteTableSemigroup([[0, 1], [1, 0]]),
}


def _random_element(spec, rng, length=6):
    letters = [rng.randrange(len(spec.generators)) for _ in range(rng.randint(1, length))]
    return spec.evaluate(letters)


@pytest.mark.parametrize("name", sorted(SPECS))
def test_associative_on_random_products(name):
    spec = SPECS[name]()
    rng = random.Random(name)
    for _ in range(60):
        x, y, z = (_random_element(spec, rng) for _ in range(3))
        assert spec.multiply(spec.multiply(x, y), z) == spec.multiply(x, spec.multiply(y, z))


@pytest.mark.parametrize("name", sorted(SPECS))
def test_dict_round_trip(name):
    spec = SPECS[name]()
    doc = json.loads(json.dumps(spec.to_dict()))
    again = spec_from_dict(doc)
    assert again == spec
    assert again.names == spec.names
    rng = random.Random(1)
    for _ in range(20):
        x, y = _random_element(spec, rng), _random_element(spec, rng)
        assert again.multiply(x, y) == spec.multiply(x, y)


@pytest.mark.parametrize("name", sorted(SPECS))
def test_format_parse_round_trip(name):
    spec = SPECS[name]()
    rng = random.Random(2)
    for _ in range(20):
        x = _random_element(spec, rng)
        assert spec.parse(spec.format(x)) == x


def test_spec_documents_from_the_interface():
    nxn = spec_from_dict({"kind": "commutative_monoid", "k": 2, "generators": [[1, 0], [0, 1]]})
    assert nxn.generators == ((1, 0), (0, 1)) and nxn.monoid
    kos = spec_from_dict({"kind": "presented", "rules": [["aba", "b"], ["bba", "abb"]], "monoid": True})
    assert kos.names == ("a", "b")
    assert kos.multiply(kos.parse("ab"), kos.parse("a")) == kos.parse("b")
    with pytest.raises(ValueError, match=r"rules\[0\].*shortlex"):
        spec_from_dict({"kind": "presented", "rules": [["a", "ab"]]})


@pytest.mark.parametrize("doc, field", [
    ({"kind": "nope"}, "kind"),
    ({}, "kind"),
    ({"kind": "rees_matrix", "group": {"kind": "commutative_monoid", "k": 1, "generators": [1, -1]},
      "n": 2, "m": 1, "P": [[0]], "X": [0]}, "sandwich"),
    ({"kind": "rees_matrix", "group": {"kind": "commutative_monoid", "k": 1, "generators": [1, -1]},
      "n": 2, "m": 1, "P": "x", "X": [0]}, "P"),
    ({"kind": "finite_table", "table": [[0, 0], [1, 0]]}, "associative"),
    ({"kind": "grid_flag", "k": 1, "generators": [[1, 2]]}, "flag"),
])
def test_bad_documents_name_the_problem(doc, field):
    with pytest.raises(ValueError, match=field):
        spec_from_dict(doc)


def test_integer_tuple_membership_and_identity():
    z = integers_spec()
    assert z.is_group and z.identity() == 0 and z.inverse(5) == -5
    n2 = grid_spec()
    assert not n2.is_group and n2.contains((0, 0)) and not n2.contains((-1, 0))
    t = grid_spec(monoid=False)
    assert not t.contains((0, 0)) and t.contains((1, 0))
    with pytest.raises(ElementError):
        t.evaluate([])
    with pytest.raises(ElementError):
        n2.inverse((1, 0))


def test_grid_flag_multiplies_flags():
    s = zz01_spec()
    assert s.multiply((1, 2, 1), (3, 4, 0)) == (4, 6, 0)
    assert s.multiply((1, 2, 1), (3, 4, 1)) == (4, 6, 1)
    assert s.identity() == (0, 0, 1)


def test_rees_multiplication_uses_sandwich_entry():
    z = integers_spec()
    s = ReesMatrixSemigroup(z, 2, 2, [[0, 5], [7, 0]], X=[0, 1, -1])
    assert s.multiply((1, 3, 2), (1, 4, 1)) == (1, 3 + 7 + 4, 1)
    assert s.multiply((2, 3, 1), (2, 4, 2)) == (2, 3 + 5 + 4, 2)
    gens = rees_spec().names
    assert set(gens) == {"e1", "p1", "m1", "e2", "p2", "m2"}


def test_rees_needs_group_shape():
    with pytest.raises(ValueError):
        ReesMatrixSemigroup(integers_spec(), 0, 1, [[]], X=[0])


def test_dual_reverses_products():
    s = aba_spec()
    d = dual_spec(s)
    x, y = s.parse("ab"), s.parse("b")
    assert d.multiply(x, y) == s.multiply(y, x)
    assert d.names == s.names


def test_with_generators_keeps_multiplication():
    s = grid_spec()
    t = s.with_generators([(1, 0), (0, 1), (1, 1)], ["a", "b", "c"])
    assert t.evaluate([2, 0]) == (2, 1)
    assert s.generators == ((1, 0), (0, 1))


def test_finite_table_checks():
    right_zero = FiniteTableSemigroup([[0, 1], [0, 1]])
    assert is_idempotent(right_zero, 1)
    assert not right_zero.is_group
    z2 = FiniteTableSemigroup([[0, 1], [1, 0]], generators=[1], monoid=True)
    assert z2.is_group and z2.inverse(1) == 1
    with pytest.raises(ValueError):
        FiniteTableSemigroup([[0, 1], [0, 1]], generators=[0])
    with pytest.raises(ValueError):
        FiniteTableSemigroup([[0, 1], [0, 1]], monoid=True)


def test_multiply_checks_membership():
    with pytest.raises(ElementError):
        multiply(grid_spec(), (1, 0), (-1, 0))


def test_product_parse_nested():
    p = ProductSemigroup(integers_spec(), ProductSemigroup(integers_spec(), integers_spec()))
    x = (3, (-1, 2))
    assert p.parse(p.format(x)) == x


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=12))
def test_integer_tuple_evaluate_is_vector_sum(letters):
    s = zzn_spec()
    expected = tuple(sum(s.generators[i][c] for i in letters) for c in range(3))
    assert s.evaluate(letters) == expected


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=10))
def test_presented_evaluate_is_normal_form(letters):
    s = aba_spec()
    assert s.evaluate(letters) == s.system.normal_form(tuple(letters))


def test_grid_flag_rejects_bad_generators():
    with pytest.raises(ValueError):
        GridFlagSemigroup(2, [(1, 0)])
    assert IntegerTupleSemigroup(1, [1]).format(3) == "3"

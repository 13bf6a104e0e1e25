import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semigroup_ends.oracles import all_normal_forms
from semigroup_ends.words import (Alphabet, AlphabetMismatch, RewriteRule, RewriteSystem,
                                  StepBudgetExceeded, Word, shortlex_less)

ABA = RewriteSystem.from_strings("ab", [("aba", "b"), ("bba", "abb")])
NON_CONFLUENT = RewriteSystem.from_strings("ab", [("ab", "a"), ("ba", "b")])


def test_alphabet_round_trip_single_and_multi_char():
    a = Alphabet(("a", "b"))
    assert a.parse("abba") == (0, 1, 1, 0)
    assert a.format((0, 1, 1, 0)) == "abba"
    m = Alphabet(("e1", "p1", "m1"))
    assert m.parse("e1.p1.p1") == (0, 1, 1)
    assert m.format((0, 1, 1)) == "e1.p1.p1"
    assert a.parse("") == a.parse("ε") == ()


@pytest.mark.parametrize("symbols", [(), ("a", "a"), ("a.b",), ("1",), ("",)])
def test_alphabet_rejects_bad_names(symbols):
    with pytest.raises(ValueError):
        Alphabet(symbols)


def test_unknown_letter_is_named():
    with pytest.raises(ValueError, match="'c'"):
        Alphabet(("a", "b")).parse("abc")


def test_shortlex_order():
    a = Alphabet(("a", "b"))
    w = lambda s: Word.parse(a, s)  # noqa: E731
    assert shortlex_less(w("b"), w("aa"))
    assert shortlex_less(w("ab"), w("ba"))
    assert not shortlex_less(w("ab"), w("ab"))
    with pytest.raises(AlphabetMismatch):
        shortlex_less(w("a"), Word.parse(Alphabet(("x",)), "x"))


def test_words_concatenate_only_within_alphabet():
    a, b = Alphabet(("a", "b")), Alphabet(("x",))
    assert str(Word.parse(a, "ab") * Word.parse(a, "b")) == "abb"
    with pytest.raises(AlphabetMismatch):
        Word.parse(a, "a") * Word.parse(b, "x")


def test_rules_must_reduce():
    with pytest.raises(ValueError, match="shortlex"):
        RewriteRule((0,), (0, 1))
    with pytest.raises(ValueError):
        RewriteRule((0, 1), (0, 1))
    with pytest.raises(ValueError):
        RewriteRule((), ())
    RewriteRule((1, 0), (0, 1))


def test_aba_system_is_complete():
    report = ABA.is_locally_confluent()
    assert report.confluent and not report.unjoinable
    assert report.pairs_checked == len(ABA.critical_pairs()) > 0


def test_non_confluent_system_reports_pair():
    report = NON_CONFLUENT.is_locally_confluent()
    assert not report
    cp = report.unjoinable[0]
    assert cp.left != cp.right


def test_normal_form_examples():
    nf = lambda s: ABA.format(ABA.normal_form(ABA.parse(s)))  # noqa: E731
    assert nf("aba") == "b"
    assert nf("bba") == "abb"
    assert nf("bbaa") == "aabb"
    assert nf("ababa") == "abb"


def test_rewrite_steps_end_in_normal_form():
    steps = ABA.rewrite_steps(ABA.parse("bbaba"))
    assert steps[-1] == ABA.normal_form(steps[0])
    assert all(ABA.normal_form(s) == steps[-1] for s in steps)


def test_step_budget():
    small = RewriteSystem(ABA.alphabet, ABA.rules, max_steps=2)
    with pytest.raises(StepBudgetExceeded):
        small.normal_form(ABA.parse("bbabbabba"))


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(0, 1), max_size=9))
def test_aba_system_unique_normal_forms(letters):
    # independent oracle: every reduction order reaches the same irreducible word
    forms = all_normal_forms(ABA, tuple(letters))
    assert forms == {ABA.normal_form(tuple(letters))}


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 1), max_size=6), st.lists(st.integers(0, 1), max_size=6))
def test_normal_form_is_a_congruence(u, v):
    nf = ABA.normal_form
    assert nf(nf(u) + nf(v)) == nf(tuple(u) + tuple(v))
    assert ABA.is_irreducible(nf(u))


def test_non_confluent_system_has_several_normal_forms():
    assert len(all_normal_forms(NON_CONFLUENT, NON_CONFLUENT.parse("aba"))) > 1


def test_confluence_agrees_with_exhaustive_reduction_on_random_systems():
    rng = random.Random(5)
    checked = 0
    for _ in range(60):
        rules = []
        for _ in range(rng.randint(1, 3)):
            n = rng.randint(2, 3)
            lhs = "".join(rng.choice("ab") for _ in range(n))
            rhs = "".join(rng.choice("ab") for _ in range(rng.randint(0, n - 1)))
            rules.append((lhs, rhs))
        try:
            system = RewriteSystem.from_strings("ab", rules)
        except ValueError:
            continue
        confluent = bool(system.is_locally_confluent())
        unique = all(len(all_normal_forms(system, tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 7))))) == 1
                     for _ in range(40))
        if not unique:
            assert not confluent
        checked += 1
    assert checked > 30

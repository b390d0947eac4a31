import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grammic.rewriting import (
    BudgetExceeded,
    Derivation,
    candidate_rules4,
    derivation,
    grammic_rules3,
    knuth_rules,
    min_grammic_rule_count,
    neighbors,
    rewrite_class,
    rewrite_eq,
    rule_set,
    zero_one_distances,
)
from grammic.rowaction import grammic_eq_bounded
from grammic.tableau import plactic_eq, row_normal_form
from grammic.threeletter import extract_params


def ids(rules):
    return sorted(r.id for r in rules.rules)


def test_knuth_rule_counts():
    assert ids(knuth_rules(2)) == ["121~211", "212~221"]
    assert len(knuth_rules(3)) == 8
    assert len(knuth_rules(4)) == 20
    with pytest.raises(ValueError):
        knuth_rules(1)


def test_grammic3_rules():
    rules = grammic_rules3()
    assert len(rules) == 9
    assert [r.id for r in rules.extra_rules()] == ["3212~2132"]
    assert ((2, 1, 3, 2), (3, 2, 1, 2)) in rules


@pytest.mark.parametrize("variant", ["bdac", "badc"])
def test_candidate_rules4(variant):
    rules = candidate_rules4(variant)
    extra = rules.extra_rules()
    assert len(extra) == 5
    assert ((3, 2, 1, 2), (2, 3, 1, 2) if variant == "bdac" else (2, 1, 3, 2)) in rules
    assert ((4, 2, 1, 3), tuple({"bdac": (2, 4, 1, 3), "badc": (2, 1, 4, 3)}[variant])) in rules
    with pytest.raises(ValueError):
        candidate_rules4("dbca")


def test_every_rule_preserves_tableau_or_action():
    for r in knuth_rules(4).rules:
        assert plactic_eq(r.lhs, r.rhs)
    for rules, k in ((grammic_rules3(), 3), (candidate_rules4("bdac"), 4), (candidate_rules4("badc"), 4)):
        for r in rules.rules:
            assert grammic_eq_bounded(r.lhs, r.rhs, k)


def test_rule_set_lookup():
    assert rule_set("knuth", 2).name == "knuth2"
    assert rule_set("grammic3").k == 3
    with pytest.raises(ValueError):
        rule_set("grammic3", 4)
    with pytest.raises(ValueError):
        rule_set("nope")


def test_neighbors_both_directions():
    rules = knuth_rules(2)
    assert neighbors((1, 2, 1), rules) == {(2, 1, 1)}
    assert neighbors((2, 1, 1), rules) == {(1, 2, 1)}
    assert neighbors((1, 1, 2), rules) == set()


def test_plain_derivation_replays():
    rules = grammic_rules3()
    d = derivation((3, 2, 1, 2), (2, 1, 3, 2), rules)
    assert len(d.steps) == 1 and d.grammic_rule_count == 1
    assert d.words(rules) == [(3, 2, 1, 2), (2, 1, 3, 2)]
    assert derivation((1, 2), (2, 1), rules) is None
    assert derivation((1, 2), (1, 3), rules) is None
    assert derivation((1, 2), (1, 2), rules).steps == ()


def test_derivation_json_round_trip():
    rules = grammic_rules3()
    u = (3, 3, 3, 2, 2, 2, 1, 1, 1, 2, 2, 2, 2, 2)
    v = (2, 2, 2, 3, 3, 3, 1, 1, 1, 2, 2, 2, 2, 2)
    d = derivation(u, v, rules, weighted=True)
    data = d.to_json()
    assert data["grammicCount"] == 3
    back = Derivation.from_json(data, rules)
    assert back == d
    assert back.words(rules)[-1] == v
    lines = d.render(rules)
    assert len(lines) == len(d.steps)
    assert "[" in lines[0] and "->" in lines[0]


def test_tampered_derivation_rejected():
    rules = grammic_rules3()
    d = derivation((3, 2, 1, 2), (2, 1, 3, 2), rules)
    bad = Derivation(d.start, (3, 2, 1, 2), d.steps)
    with pytest.raises(ValueError):
        bad.words(rules)


def test_zero_one_distances_small():
    dist = zero_one_distances((3, 2, 1, 2), grammic_rules3())
    assert dist[(3, 2, 1, 2)] == 0
    assert dist[(2, 1, 3, 2)] == 1
    assert dist[(2, 3, 1, 2)] == 1


def test_budget_exceeded():
    word = (3, 3, 2, 2, 1, 1, 2, 3)
    with pytest.raises(BudgetExceeded):
        rewrite_class(word, knuth_rules(3), budget=3)
    with pytest.raises(BudgetExceeded):
        zero_one_distances(word, grammic_rules3(), budget=3)


def test_min_grammic_rule_count():
    assert min_grammic_rule_count((3, 2, 1, 2), (2, 1, 3, 2)) == 1
    assert min_grammic_rule_count((1, 2, 1), (2, 1, 1)) == 0
    assert min_grammic_rule_count((1, 2), (2, 1)) is None
    with pytest.raises(ValueError):
        min_grammic_rule_count((4, 1), (1, 4))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=7).map(tuple))
def test_knuth_class_is_tableau_class(w):
    cls = rewrite_class(w, knuth_rules(3))
    assert all(row_normal_form(x) == row_normal_form(w) for x in cls)
    assert row_normal_form(w) in cls


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=7).map(tuple))
def test_grammic3_class_is_sound(w):
    rules = grammic_rules3()
    for x in rewrite_class(w, rules):
        assert grammic_eq_bounded(w, x, 3)
        assert rewrite_eq(x, w, rules)


def test_rule_count_on_parameter_family():
    # 3^a 2^3 3^c 1^3 2^5 with a + c = 3: the count is the shift in c
    forms = [extract_params(w) for w in (
        (3, 3, 3, 2, 2, 2, 1, 1, 1, 2, 2, 2, 2, 2),
        (3, 2, 2, 2, 3, 3, 1, 1, 1, 2, 2, 2, 2, 2),
    )]
    assert [p.c for p in forms] == [0, 2]
    assert min_grammic_rule_count(forms[0].word(), forms[1].word()) == 2

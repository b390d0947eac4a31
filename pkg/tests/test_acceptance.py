"""Acceptance criteria, one test each.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary lists one
PASS/FAIL line per criterion.
"""

import io
import itertools
import json
import random
import time
from timeit import repeat

import numpy as np
import pytest

from grammic.cli import run
from grammic.explorer import compare_partitions, grammic_partition, plactic_partition, rewrite_partition, rule_count_census
from grammic.rewriting import grammic_rules3, min_grammic_rule_count
from grammic.rowaction import (
    _act_uniform,
    act_word,
    affine_tail_check,
    bottom_row,
    grammic_eq_bounded,
    nonvanishing_threshold,
)
from grammic.tableau import build_tableau, column_normal_form, plactic_eq, row_normal_form
from grammic.threeletter import extract_params, grammic_eq3
from grammic.words import parikh, parse_word, project, words_of_length

SEED = 1729


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue()


@pytest.mark.criterion(1, "Example 1 tableau and normal forms, < 1 ms")
def test_example_one():
    w = parse_word("32231122", 3)
    t = build_tableau(w)
    assert t.rows == ((1, 1, 2, 2), (2, 2, 3), (3,))
    assert row_normal_form(w) == w
    assert column_normal_form(w) == parse_word("32121322", 3)

    def work():
        build_tableau(w)
        column_normal_form(w)

    best = min(repeat(work, number=100, repeat=5)) / 100
    assert best < 1e-3
    code, out = cli("tableau", "32231122")
    assert code == 0
    assert out.splitlines()[:3] == ["3", "223", "1122"]
    assert "row normal form: 32231122" in out and "column normal form: 32121322" in out


@pytest.mark.criterion(2, "k=2, n<=10: plactic and grammic partitions coincide, < 10 s")
def test_two_letters():
    start = time.perf_counter()
    words = 0
    for n in range(1, 11):
        p, g = plactic_partition(n, 2), grammic_partition(n, 2)
        assert compare_partitions(p, g).verdict == "equal"
        words += 2**n
    assert words == 2046
    assert time.perf_counter() - start < 10


@pytest.mark.criterion(3, "k=3, n<=8: rewrite(Knuth + 3212~2132) equals grammic partition, < 5 min")
def test_three_letter_presentation(partitions):
    start = time.perf_counter()
    rules = grammic_rules3()
    for n in range(1, 9):
        r = rewrite_partition(n, 3, rules)
        assert compare_partitions(r, partitions("grammic", n, 3)).verdict == "equal"
    assert time.perf_counter() - start < 300


@pytest.mark.criterion(4, "k=3, n<=8: grammic_eq3 agrees with the grid decider on all Parikh-class pairs, < 5 min")
def test_three_letter_decider():
    start = time.perf_counter()
    pairs = 0
    for n in range(1, 9):
        classes = {}
        for w in words_of_length(n, 3):
            classes.setdefault(parikh(w, 3), []).append(w)
        for members in classes.values():
            for u, v in itertools.combinations(members, 2):
                pairs += 1
                assert grammic_eq3(u, v) == grammic_eq_bounded(u, v, 3, prefilter=False).equivalent, (u, v)
    assert pairs == sum((sum(c * c for c in _multinomials(n)) - 3**n) // 2 for n in range(1, 9))
    assert time.perf_counter() - start < 300


def _multinomials(n):
    from math import factorial
    return [factorial(n) // (factorial(a) * factorial(b) * factorial(n - a - b))
            for a in range(n + 1) for b in range(n + 1 - a)]


@pytest.mark.criterion(5, "n<=8: min grammic-rule count equals |c - c'|")
def test_rule_count_law():
    report = rule_count_census(8)
    assert report.pairs_checked > 0
    assert report.mismatches == []


CHAIN = [
    (3,) * 3 + (2,) * 3 + (1,) * 3 + (2,) * 5,
    (3,) * 2 + (2,) * 3 + (3,) + (1,) * 3 + (2,) * 5,
    (3,) + (2,) * 3 + (3,) * 2 + (1,) * 3 + (2,) * 5,
    (2,) * 3 + (3,) * 3 + (1,) * 3 + (2,) * 5,
]


@pytest.mark.criterion(6, "four-form chain: pairwise grammic-equivalent, pairwise plactic-inequivalent")
def test_example_chain():
    for w in CHAIN:
        assert row_normal_form(w) == w
    for u, v in itertools.combinations(CHAIN, 2):
        assert grammic_eq_bounded(u, v, 3, prefilter=False)
        assert grammic_eq3(u, v)
        assert not plactic_eq(u, v)
        assert min_grammic_rule_count(u, v) == abs(extract_params(u).c - extract_params(v).c)


@pytest.mark.criterion(7, "projection facts for 23311223 / 23331122 and 4213 / 2413")
def test_projection_facts():
    u, v = parse_word("23311223", 3), parse_word("23331122", 3)
    assert not grammic_eq_bounded(u, v, 3)
    expected = {(1, 2): "21122", (1, 3): "33113", (2, 3): "332223"}
    for letters, nf in expected.items():
        pu, pv = project(u, letters, relabel=False), project(v, letters, relabel=False)
        assert row_normal_form(pu) == parse_word(nf, 3)
        assert grammic_eq_bounded(project(u, letters), project(v, letters), 2)

    a, b = parse_word("4213", 4), parse_word("2413", 4)
    assert grammic_eq_bounded(a, b, 4)
    pa, pb = project(a, (1, 2, 4), relabel=False), project(b, (1, 2, 4), relabel=False)
    assert (pa, pb) == ((4, 2, 1), (2, 4, 1))
    assert bottom_row(pa, 4) == (1, 0, 0, 0)
    assert bottom_row(pb, 4) == (1, 0, 0, 1)
    assert not grammic_eq_bounded(project(a, (1, 2, 4)), project(b, (1, 2, 4)), 3)


def _random_row_forms(rng, count):
    out = []
    while len(out) < count:
        k = rng.randint(2, 5)
        w = tuple(rng.randint(1, k) for _ in range(rng.randint(1, 10)))
        out.append((row_normal_form(w), k))
    return out


@pytest.mark.criterion(8, "lemma suite: bottom row, affine tail, non-vanishing threshold")
def test_lemma_suite():
    rng = random.Random(SEED)
    violations = 0

    # bottom row: 0 . w counts the bottom row of P(w)
    for n in range(0, 9):
        for w in words_of_length(n, 3):
            violations += bottom_row(w, 3) != parikh(build_tableau(w).bottom_row, 3)
    for _ in range(10**4):
        w = tuple(rng.randint(1, 4) for _ in range(rng.randint(0, 14)))
        violations += bottom_row(w, 4) != parikh(build_tableau(w).bottom_row, 4)

    # affine tail: past |u| the image moves on a line
    for _ in range(10**4):
        k = rng.randint(2, 4)
        u = tuple(rng.randint(1, k) for _ in range(rng.randint(0, 10)))
        i = rng.randint(1, k)
        base = tuple(rng.randint(0, 12) for _ in range(k))
        t = len(u) + 1 + rng.randint(0, 40)
        x = list(base)
        x[i - 1] = t
        violations += affine_tail_check(u, i, base, t) != act_word(x, u)

    # non-vanishing: x[i] > m_i keeps coordinate i positive along every proper prefix
    for w, k in _random_row_forms(rng, 10**3):
        for i in range(1, k + 1):
            m = nonvanishing_threshold(w, i, k)
            axes = [np.arange(len(w) + 2)] * k
            axes[i - 1] = np.array([m + 1, m + 2])
            state = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, k)
            for j in w[:-1]:
                state = _act_uniform(state, j)
                violations += int((state[:, i - 1] <= 0).any())
    assert violations == 0


@pytest.mark.criterion(9, "bound soundness: 10^3 equivalent pairs agree on 10^2 vectors up to 10n")
def test_bound_soundness(partitions):
    rng = random.Random(SEED)
    pools = []
    for n, k in [(n, 3) for n in range(4, 9)] + [(n, 4) for n in range(4, 7)]:
        classes = [c for c in partitions("grammic", n, k).classes if len(c) > 1]
        pools.append((n, k, classes))
    violations = checked = 0
    while checked < 10**3:
        n, k, classes = rng.choice(pools)
        u, v = rng.sample(rng.choice(classes), 2)
        assert grammic_eq_bounded(u, v, k)
        checked += 1
        for _ in range(100):
            x = tuple(rng.randint(0, 10 * n) for _ in range(k))
            violations += act_word(x, u) != act_word(x, v)
    assert violations == 0


@pytest.mark.criterion(10, "conjecture4 --max-len 6 --rule both under a 10^7 budget")
def test_conjecture_harness():
    code, out = cli("--format", "json", "--budget", str(10**7), "conjecture4", "--max-len", "6", "--rule", "both")
    assert code == 0
    data = json.loads(out)
    reports = {r["variant"]: r for r in data["reports"]}
    assert set(reports) == {"bdac", "badc"}
    assert reports["bdac"]["ruleValid"] is True
    for r in reports.values():
        assert isinstance(r["ruleValid"], bool)
        assert [x["n"] for x in r["lengths"]] == list(range(1, 7))
        for x in r["lengths"]:
            assert x["agreement"] in ("equal", "rewrite-finer", "rewrite-coarser", "rewrite-incomparable")
            assert x["counterexamplesVerified"] is True

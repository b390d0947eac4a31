"""Brute-force class enumeration and the experiments built on it.

Partitions of all ``k^n`` words are computed three ways: by tableau
(plactic), by action fingerprint (grammic) and by connected components of a
rewrite graph. Everything is emitted in a deterministic order so reports
diff cleanly between runs.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from . import __version__
from .rewriting import (
    DEFAULT_BUDGET,
    VARIANTS,
    BudgetExceeded,
    RuleSet,
    candidate_rules4,
    grammic_rules3,
    rewrite_eq,
    rule_set,
    zero_one_distances,
)
from .rowaction import grammic_eq_bounded, grammic_fingerprint, iter_all_fingerprints
from .tableau import build_tableau, row_normal_form
from .threeletter import extract_params
from .words import Word, chunk_ranges, format_word, parikh, project, words_of_length

RELATIONS = ("plactic", "grammic", "rewrite:knuth", "rewrite:grammic3", "rewrite:bdac", "rewrite:badc")


def _header(n: int, k: int, relation: str) -> dict:
    return {"n": n, "k": k, "relation": relation, "toolVersion": __version__}


@dataclass(frozen=True)
class ClassPartition:
    n: int
    k: int
    relation: str
    classes: tuple[tuple[Word, ...], ...]

    @classmethod
    def from_groups(cls, n: int, k: int, relation: str, groups: Iterable[Iterable[Word]]) -> "ClassPartition":
        classes = sorted(tuple(sorted(g)) for g in groups)
        return cls(n, k, relation, tuple(classes))

    def __len__(self):
        return len(self.classes)

    def labels(self) -> dict[Word, int]:
        return {w: i for i, cls in enumerate(self.classes) for w in cls}

    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def check(self) -> None:
        """Raise unless the classes partition all words and keep letter counts."""
        seen = [w for cls in self.classes for w in cls]
        if len(seen) != self.k**self.n or set(seen) != set(words_of_length(self.n, self.k)):
            raise AssertionError("classes do not partition the words")
        for cls in self.classes:
            if len({parikh(w, self.k) for w in cls}) != 1:
                raise AssertionError(f"class of {format_word(cls[0])} mixes letter counts")

    def to_json(self, count_only: bool = False) -> dict:
        data = _header(self.n, self.k, self.relation)
        data["classCount"] = len(self.classes)
        if not count_only:
            data["classes"] = [[list(w) for w in cls] for cls in self.classes]
        return data

    def to_text(self, count_only: bool = False) -> str:
        head = f"# n={self.n} k={self.k} relation={self.relation} toolVersion={__version__}\n# classes: {len(self.classes)}"
        if count_only:
            return head
        blocks = ["\n".join(format_word(w) or "(empty)" for w in cls) for cls in self.classes]
        return head + "\n" + "\n\n".join(blocks)


def _check_budget(n: int, k: int, budget: int) -> None:
    if k**n > budget:
        raise BudgetExceeded(budget)


def plactic_partition(n: int, k: int, budget: int = DEFAULT_BUDGET) -> ClassPartition:
    _check_budget(n, k, budget)
    groups: dict = {}
    for w in words_of_length(n, k):
        groups.setdefault(build_tableau(w), []).append(w)
    return ClassPartition.from_groups(n, k, "plactic", groups.values())


def _fingerprint_groups(n: int, k: int, start: int, stop: int) -> list[tuple[str, bytes, list[Word]]]:
    """Group words ``start..stop`` by fingerprint.

    Words sharing a digest are compared byte for byte against the group
    representative; a mismatch opens a new group under the same digest.
    """
    groups: dict[str, list[tuple[bytes, list[Word]]]] = {}
    words = words_of_length(n, k, start, stop)
    for w, (_, images) in zip(words, iter_all_fingerprints(n, k, start, stop)):
        raw = images.tobytes()
        digest = hashlib.blake2b(raw, digest_size=16).hexdigest()
        bucket = groups.setdefault(digest, [])
        for rep, members in bucket:
            if rep == raw:
                members.append(w)
                break
        else:
            bucket.append((raw, [w]))
    return [(d, rep, members) for d, bucket in groups.items() for rep, members in bucket]


def grammic_partition(n: int, k: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> ClassPartition:
    _check_budget(n, k, budget)
    total = k**n
    if workers > 1 and total > 1:
        ranges = chunk_ranges(total, workers * 4)
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_fingerprint_groups, *zip(*[(n, k, lo, hi) for lo, hi in ranges])))
    else:
        parts = [_fingerprint_groups(n, k, 0, total)]
    merged: dict[str, list[tuple[bytes, list[Word]]]] = {}
    for part in parts:
        for digest, rep, members in part:
            bucket = merged.setdefault(digest, [])
            for other_rep, other in bucket:
                if other_rep == rep:
                    other.extend(members)
                    break
            else:
                bucket.append((rep, list(members)))
    groups = [members for bucket in merged.values() for _, members in bucket]
    return ClassPartition.from_groups(n, k, "grammic", groups)


def rewrite_partition(n: int, k: int, rules: RuleSet, budget: int = DEFAULT_BUDGET) -> ClassPartition:
    """Connected components of the rewrite graph on words of length ``n``."""
    _check_budget(n, k, budget)
    words = list(words_of_length(n, k))
    index = {w: i for i, w in enumerate(words)}
    parent = list(range(len(words)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, w in enumerate(words):
        for _, nxt in rules.moves(w):
            a, b = find(i), find(index[nxt])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[Word]] = {}
    for i, w in enumerate(words):
        groups.setdefault(find(i), []).append(w)
    return ClassPartition.from_groups(n, k, f"rewrite:{rules.name}", groups.values())


def enumerate_classes(n: int, k: int, relation: str, budget: int = DEFAULT_BUDGET, workers: int = 1) -> ClassPartition:
    if relation == "plactic":
        return plactic_partition(n, k, budget)
    if relation == "grammic":
        return grammic_partition(n, k, budget, workers)
    if relation.startswith("rewrite:"):
        name = relation.split(":", 1)[1]
        rules = rule_set(name, k)
        if rules.k != k:
            raise ValueError(f"rule set {name} is over {rules.k} letters, not {k}")
        return rewrite_partition(n, k, rules, budget)
    raise ValueError(f"unknown relation {relation!r}")


@dataclass(frozen=True)
class PartitionComparison:
    """How two partitions of the same words relate.

    ``verdict`` is ``equal``, ``finer`` (the first refines the second),
    ``coarser`` or ``incomparable``. ``merged_only_in_second`` is a pair the
    second partition joins and the first separates, and vice versa.
    """

    verdict: str
    merged_only_in_first: tuple[Word, Word] | None = None
    merged_only_in_second: tuple[Word, Word] | None = None

    def to_json(self) -> dict:
        data = {"verdict": self.verdict}
        if self.merged_only_in_first:
            data["mergedOnlyInFirst"] = [list(w) for w in self.merged_only_in_first]
        if self.merged_only_in_second:
            data["mergedOnlyInSecond"] = [list(w) for w in self.merged_only_in_second]
        return data


def _split_witness(p: ClassPartition, labels: dict[Word, int]) -> tuple[Word, Word] | None:
    """First pair joined in ``p`` but separated by ``labels``."""
    for cls in p.classes:
        first = labels[cls[0]]
        for w in cls[1:]:
            if labels[w] != first:
                return cls[0], w
    return None


def compare_partitions(p1: ClassPartition, p2: ClassPartition) -> PartitionComparison:
    if (p1.n, p1.k) != (p2.n, p2.k):
        raise ValueError("partitions are over different word sets")
    only_second = _split_witness(p2, p1.labels())
    only_first = _split_witness(p1, p2.labels())
    if only_first is None and only_second is None:
        verdict = "equal"
    elif only_first is None:
        verdict = "finer"
    elif only_second is None:
        verdict = "coarser"
    else:
        verdict = "incomparable"
    return PartitionComparison(verdict, only_first, only_second)


@lru_cache(maxsize=None)
def _action_key(word: Word, k: int) -> bytes:
    return grammic_fingerprint(word, k).outputs.tobytes()


def is_interval(letters: Iterable[int]) -> bool:
    letters = sorted(letters)
    return letters == list(range(letters[0], letters[-1] + 1))


@dataclass
class ProjectionReport:
    n: int
    k: int
    subsets: list[tuple[int, ...]]
    equivalent_pairs: int = 0
    violations_by_subset: dict = field(default_factory=dict)
    violation_examples: list = field(default_factory=list)
    converse_groups: int = 0
    converse_examples: list = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(self.violations_by_subset.values())

    def violations_on(self, intervals: bool) -> int:
        return sum(v for s, v in self.violations_by_subset.items() if is_interval(s) == intervals)

    def to_json(self) -> dict:
        data = _header(self.n, self.k, "grammic-projection")
        data.update(
            equivalentPairs=self.equivalent_pairs,
            violations=self.violations,
            violationsBySubset={
                "".join(map(str, s)): {"count": self.violations_by_subset.get(s, 0), "interval": is_interval(s)}
                for s in self.subsets
            },
            violationExamples=self.violation_examples,
            converseGroups=self.converse_groups,
            converseExamples=self.converse_examples,
        )
        return data

    def to_text(self) -> str:
        lines = [
            f"# projections n<={self.n} k={self.k} toolVersion={__version__}",
            f"equivalent pairs checked: {self.equivalent_pairs}",
            f"classes with a violating projection: {self.violations}",
        ]
        for sub in self.subsets:
            kind = "interval" if is_interval(sub) else "non-interval"
            lines.append(f"  on {''.join(map(str, sub))} ({kind}): {self.violations_by_subset.get(sub, 0)}")
        fw = format_word
        lines += [
            f"  e.g. {fw(e['u'])} ~ {fw(e['v'])} but not on {fw(e['letters'])}: {fw(e['pu'])} vs {fw(e['pv'])}"
            for e in self.violation_examples
        ]
        lines.append(f"inequivalent words with all projections equivalent: {self.converse_groups} groups")
        lines += [f"  e.g. {fw(e['u'])} !~ {fw(e['v'])}" for e in self.converse_examples]
        return "\n".join(lines)


def projection_scan(n: int, k: int, subsets: Iterable[Iterable[int]] | None = None, max_examples: int = 20,
                    budget: int = DEFAULT_BUDGET) -> ProjectionReport:
    """Check whether grammic-equivalent words stay equivalent under projection.

    By default every proper nonempty subalphabet is tried, for every length
    up to ``n``. A violation is a grammic class whose projections onto some
    subalphabet fall into more than one class. The report also counts groups
    of words that agree on every projection while lying in several grammic
    classes.
    """
    if k not in (3, 4):
        raise ValueError("projection scans are defined for k in {3, 4}")
    if subsets is None:
        subsets = [s for r in range(1, k) for s in combinations(range(1, k + 1), r)]
    subsets = [tuple(sorted(s)) for s in subsets]
    report = ProjectionReport(n, k, subsets)
    for m in range(1, n + 1):
        partition = grammic_partition(m, k, budget)
        by_projection: dict[tuple, dict[int, Word]] = {}
        for label, cls in enumerate(partition.classes):
            report.equivalent_pairs += len(cls) * (len(cls) - 1) // 2
            keys = []
            for w in cls:
                key = tuple(_action_key(project(w, s), len(s)) for s in subsets)
                keys.append(key)
                by_projection.setdefault(key, {}).setdefault(label, w)
            for si, sub in enumerate(subsets):
                odd = next((w for w, key in zip(cls, keys) if key[si] != keys[0][si]), None)
                if odd is None:
                    continue
                report.violations_by_subset[sub] = report.violations_by_subset.get(sub, 0) + 1
                if len(report.violation_examples) < max_examples:
                    report.violation_examples.append({
                        "u": list(cls[0]),
                        "v": list(odd),
                        "letters": list(sub),
                        "pu": list(project(cls[0], sub, relabel=False)),
                        "pv": list(project(odd, sub, relabel=False)),
                    })
        groups = sorted((sorted(reps.values()) for reps in by_projection.values() if len(reps) > 1))
        report.converse_groups += len(groups)
        for reps in groups[: max(0, max_examples - len(report.converse_examples))]:
            report.converse_examples.append({"u": list(reps[0]), "v": list(reps[1])})
    return report


@dataclass
class RuleCountReport:
    n: int
    pairs_checked: int = 0
    mismatches: list = field(default_factory=list)

    def to_json(self) -> dict:
        data = _header(self.n, 3, "rewrite:grammic3")
        data.update(pairsChecked=self.pairs_checked, mismatches=self.mismatches)
        return data


def rule_count_census(n: int, budget: int = DEFAULT_BUDGET) -> RuleCountReport:
    """Compare the least number of ``3212 = 2132`` steps with ``|c - c'|``.

    Covers every pair of distinct row normal forms that are grammic-equivalent
    without being plactic-equivalent, over all lengths up to ``n``.
    """
    rules = grammic_rules3()
    report = RuleCountReport(n)
    for m in range(1, n + 1):
        for cls in grammic_partition(m, 3, budget).classes:
            forms = sorted({row_normal_form(w) for w in cls})
            if len(forms) < 2:
                continue
            for i, u in enumerate(forms):
                dist = zero_one_distances(u, rules, budget=budget)
                pu = extract_params(u)
                for v in forms[i + 1:]:
                    pv = extract_params(v)
                    report.pairs_checked += 1
                    expected = abs(pu.c - pv.c)
                    got = dist.get(v)
                    if got != expected:
                        report.mismatches.append({"u": list(u), "v": list(v), "expected": expected, "found": got})
    return report


@dataclass
class LengthResult:
    n: int
    rewrite_classes: int
    grammic_classes: int
    comparison: PartitionComparison
    counterexamples_verified: bool = True

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rewriteClasses": self.rewrite_classes,
            "grammicClasses": self.grammic_classes,
            "agreement": "equal" if self.comparison.verdict == "equal" else f"rewrite-{self.comparison.verdict}",
            **{k: v for k, v in self.comparison.to_json().items() if k != "verdict"},
            "counterexamplesVerified": self.counterexamples_verified,
        }


@dataclass
class ConjectureReport:
    variant: str
    max_len: int
    rule_valid: bool
    invalid_instances: list = field(default_factory=list)
    lengths: list[LengthResult] = field(default_factory=list)

    @property
    def sound(self) -> bool:
        """No rewrite class straddles two grammic classes."""
        return all(r.comparison.verdict in ("equal", "finer") for r in self.lengths)

    @property
    def agrees(self) -> bool:
        return all(r.comparison.verdict == "equal" for r in self.lengths)

    def to_json(self) -> dict:
        data = _header(self.max_len, 4, f"rewrite:{self.variant}")
        data.update(
            variant=self.variant,
            ruleValid=self.rule_valid,
            invalidInstances=self.invalid_instances,
            sound=self.sound,
            agreesUpToMaxLen=self.agrees,
            lengths=[r.to_json() for r in self.lengths],
        )
        return data

    def to_text(self) -> str:
        lines = [
            f"# variant dbac={self.variant} k=4 max-len={self.max_len} toolVersion={__version__}",
            f"rule instances grammic-valid: {'yes' if self.rule_valid else 'no'}",
        ]
        lines += [f"  invalid: {format_word(i['lhs'])} ~ {format_word(i['rhs'])}" for i in self.invalid_instances]
        for r in self.lengths:
            line = f"n={r.n}: rewrite classes {r.rewrite_classes}, grammic classes {r.grammic_classes}, {r.comparison.verdict}"
            c = r.comparison
            if c.merged_only_in_first:
                line += f"; rewrite joins {format_word(c.merged_only_in_first[0])} ~ {format_word(c.merged_only_in_first[1])}"
            if c.merged_only_in_second:
                line += f"; grammic joins {format_word(c.merged_only_in_second[0])} ~ {format_word(c.merged_only_in_second[1])}"
            lines.append(line)
        return "\n".join(lines)


def conjecture4(max_len: int, variant: str, budget: int = DEFAULT_BUDGET, workers: int = 1) -> ConjectureReport:
    """Gather evidence on whether Knuth rules plus ``dbac = <variant>`` present
    the grammic congruence on four letters."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    rules = candidate_rules4(variant)
    invalid = [
        {"lhs": list(r.lhs), "rhs": list(r.rhs)}
        for r in rules.rules
        if not grammic_eq_bounded(r.lhs, r.rhs, 4)
    ]
    report = ConjectureReport(variant, max_len, not invalid, invalid)
    for n in range(1, max_len + 1):
        rp = rewrite_partition(n, 4, rules, budget)
        gp = grammic_partition(n, 4, budget, workers)
        cmp = compare_partitions(rp, gp)
        verified = True
        if cmp.merged_only_in_first:
            u, v = cmp.merged_only_in_first
            verified &= rewrite_eq(u, v, rules, budget) and not grammic_eq_bounded(u, v, 4)
        if cmp.merged_only_in_second:
            u, v = cmp.merged_only_in_second
            verified &= grammic_eq_bounded(u, v, 4).equivalent and not rewrite_eq(u, v, rules, budget)
        report.lengths.append(LengthResult(n, len(rp), len(gp), cmp, verified))
    return report

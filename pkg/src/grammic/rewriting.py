"""Length-preserving string rewriting: Knuth rules and their extensions.

Schematic rules such as ``bac = bca (a < b <= c)`` are expanded into ground
instances over the alphabet, so finding the neighbours of a word is a plain
substring scan. Rules are applied in both directions.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Iterator, Sequence

from .words import Word, format_word

DEFAULT_BUDGET = 10**7

FORWARD = "fwd"
BACKWARD = "bwd"

VARIANTS = ("bdac", "badc")


class BudgetExceeded(RuntimeError):
    def __init__(self, budget: int):
        super().__init__(f"search visited more than {budget} words")
        self.budget = budget


@dataclass(frozen=True)
class RewriteRule:
    id: str
    lhs: Word
    rhs: Word
    kind: str = "knuth"  # "knuth" or "extra"
    description: str = ""

    def __post_init__(self):
        if len(self.lhs) != len(self.rhs) or Counter(self.lhs) != Counter(self.rhs):
            raise ValueError(f"rule {self.id} does not preserve letter counts")


def _rule(lhs: Word, rhs: Word, kind: str, description: str) -> RewriteRule:
    return RewriteRule(f"{format_word(lhs)}~{format_word(rhs)}", lhs, rhs, kind, description)


@dataclass(frozen=True)
class RuleSet:
    name: str
    k: int
    rules: tuple[RewriteRule, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index: dict[Word, list[tuple[RewriteRule, Word, str]]] = {}
        for r in self.rules:
            index.setdefault(r.lhs, []).append((r, r.rhs, FORWARD))
            index.setdefault(r.rhs, []).append((r, r.lhs, BACKWARD))
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_lengths", sorted({len(r.lhs) for r in self.rules}))
        object.__setattr__(self, "_by_id", {r.id: r for r in self.rules})

    def __len__(self):
        return len(self.rules)

    def __contains__(self, pair) -> bool:
        lhs, rhs = (tuple(p) for p in pair)
        return any((r.lhs, r.rhs) in ((lhs, rhs), (rhs, lhs)) for r in self.rules)

    def rule(self, rule_id: str) -> RewriteRule:
        return self._by_id[rule_id]

    def extra_rules(self) -> list[RewriteRule]:
        return [r for r in self.rules if r.kind != "knuth"]

    def moves(self, word: Word) -> Iterator[tuple["Step", Word]]:
        n = len(word)
        for length in self._lengths:
            for pos in range(n - length + 1):
                for rule, repl, direction in self._index.get(word[pos:pos + length], ()):
                    yield Step(rule.id, pos, direction, rule.kind != "knuth"), word[:pos] + repl + word[pos + length:]


def knuth_rules(k: int) -> RuleSet:
    if k < 2:
        raise ValueError("Knuth rules need at least two letters")
    rules = []
    for a, b, c in combinations_with_replacement(range(1, k + 1), 3):
        # a <= b <= c
        if a < b:
            rules.append(_rule((b, a, c), (b, c, a), "knuth", "bac = bca, a < b <= c"))
        if b < c:
            rules.append(_rule((a, c, b), (c, a, b), "knuth", "acb = cab, a <= b < c"))
    return RuleSet(f"knuth{k}", k, tuple(rules))


GRAMMIC_RULE = ((3, 2, 1, 2), (2, 1, 3, 2))


def grammic_rules3() -> RuleSet:
    extra = _rule(*GRAMMIC_RULE, "extra", "3212 = 2132")
    return RuleSet("grammic3", 3, knuth_rules(3).rules + (extra,))


def candidate_rules4(variant: str) -> RuleSet:
    """Knuth rules on four letters plus ``dbac = <variant>`` for a < b <= c < d."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    extra = []
    for a, b, c, d in combinations_with_replacement(range(1, 5), 4):
        if a < b <= c < d:
            env = {"a": a, "b": b, "c": c, "d": d}
            rhs = tuple(env[ch] for ch in variant)
            extra.append(_rule((d, b, a, c), rhs, "extra", f"dbac = {variant}, a < b <= c < d"))
    return RuleSet(variant, 4, knuth_rules(4).rules + tuple(extra))


def rule_set(name: str, k: int | None = None) -> RuleSet:
    """Look up a rule set by name: ``knuth``, ``grammic3``, ``bdac`` or ``badc``."""
    if name == "knuth":
        return knuth_rules(k or 3)
    if name == "grammic3":
        if k not in (None, 3):
            raise ValueError("grammic3 is defined over three letters")
        return grammic_rules3()
    if name in VARIANTS:
        if k not in (None, 4):
            raise ValueError(f"{name} is defined over four letters")
        return candidate_rules4(name)
    raise ValueError(f"unknown rule set {name!r}")


@dataclass(frozen=True)
class Step:
    rule: str
    pos: int
    dir: str
    extra: bool = False

    def to_json(self) -> dict:
        return {"rule": self.rule, "pos": self.pos, "dir": self.dir}


@dataclass(frozen=True)
class Derivation:
    start: Word
    end: Word
    steps: tuple[Step, ...]

    @property
    def grammic_rule_count(self) -> int:
        return sum(1 for s in self.steps if s.extra)

    def words(self, rules: RuleSet) -> list[Word]:
        """Replay the steps from ``start``; raises if a step does not apply."""
        seq = [self.start]
        w = self.start
        for s in self.steps:
            r = rules.rule(s.rule)
            old, new = (r.lhs, r.rhs) if s.dir == FORWARD else (r.rhs, r.lhs)
            if w[s.pos:s.pos + len(old)] != old:
                raise ValueError(f"step {s} does not apply to {format_word(w)}")
            w = w[:s.pos] + new + w[s.pos + len(old):]
            seq.append(w)
        if w != self.end:
            raise ValueError("replay does not reach the recorded end word")
        return seq

    def to_json(self) -> dict:
        return {
            "start": list(self.start),
            "end": list(self.end),
            "steps": [s.to_json() for s in self.steps],
            "grammicCount": self.grammic_rule_count,
        }

    @classmethod
    def from_json(cls, data: dict, rules: RuleSet) -> "Derivation":
        steps = tuple(
            Step(s["rule"], s["pos"], s["dir"], rules.rule(s["rule"]).kind != "knuth") for s in data["steps"]
        )
        return cls(tuple(data["start"]), tuple(data["end"]), steps)

    def render(self, rules: RuleSet) -> list[str]:
        lines = []
        seq = self.words(rules)
        for s, before, after in zip(self.steps, seq, seq[1:]):
            width = len(rules.rule(s.rule).lhs)
            text = format_word(before)
            shown = f"{text[:s.pos]}[{text[s.pos:s.pos + width]}]{text[s.pos + width:]}"
            lines.append(f"{shown} -> {format_word(after)}  ({s.rule} {s.dir})")
        return lines


def neighbors(word: Sequence[int], rules: RuleSet) -> set[Word]:
    return {w for _, w in rules.moves(tuple(word))}


def _same_letters(u: Word, v: Word) -> bool:
    return len(u) == len(v) and Counter(u) == Counter(v)


def _trace(parents: dict, start: Word, end: Word) -> Derivation:
    steps = []
    w = end
    while w != start:
        prev, step = parents[w]
        steps.append(step)
        w = prev
    return Derivation(start, end, tuple(reversed(steps)))


def derivation(u: Sequence[int], v: Sequence[int], rules: RuleSet, weighted: bool = False,
               budget: int = DEFAULT_BUDGET) -> Derivation | None:
    """Find a chain of rewrites from ``u`` to ``v``, or ``None``.

    Plain breadth-first search gives a chain with the fewest steps. With
    ``weighted`` Knuth steps are free and extra-rule steps cost one, and the
    chain minimises the number of extra-rule applications.
    """
    u, v = tuple(u), tuple(v)
    if not _same_letters(u, v):
        return None
    if u == v:
        return Derivation(u, v, ())
    parents: dict[Word, tuple[Word, Step]] = {}
    if not weighted:
        seen = {u}
        queue = deque([u])
        while queue:
            w = queue.popleft()
            for step, nxt in rules.moves(w):
                if nxt in seen:
                    continue
                seen.add(nxt)
                if len(seen) > budget:
                    raise BudgetExceeded(budget)
                parents[nxt] = (w, step)
                if nxt == v:
                    return _trace(parents, u, v)
                queue.append(nxt)
        return None
    dist = zero_one_distances(u, rules, budget=budget, target=v, parents=parents)
    if v not in dist:
        return None
    return _trace(parents, u, v)


def zero_one_distances(u: Sequence[int], rules: RuleSet, budget: int = DEFAULT_BUDGET,
                       target: Word | None = None, parents: dict | None = None) -> dict[Word, int]:
    """Least number of extra-rule steps from ``u`` to each reachable word.

    Shortest paths with weight 0 for Knuth steps and 1 for the others, using
    one deque per cost layer: free steps extend the current layer in FIFO
    order, costly ones feed the next layer. The FIFO order keeps the recorded
    parent chains short. Stops early once ``target`` is settled.
    """
    u = tuple(u)
    dist = {u: 0}
    done = set()
    current, upcoming = deque([u]), deque()
    while current or upcoming:
        if not current:
            current, upcoming = upcoming, current
        w = current.popleft()
        if w in done:
            continue
        done.add(w)
        if w == target:
            break
        d = dist[w]
        for step, nxt in rules.moves(w):
            nd = d + (1 if step.extra else 0)
            if nd < dist.get(nxt, nd + 1):
                if nxt not in dist and len(dist) >= budget:
                    raise BudgetExceeded(budget)
                dist[nxt] = nd
                if parents is not None:
                    parents[nxt] = (w, step)
                (upcoming if step.extra else current).append(nxt)
    if target is not None:
        return {w: dist[w] for w in done}
    return dist


def rewrite_eq(u: Sequence[int], v: Sequence[int], rules: RuleSet, budget: int = DEFAULT_BUDGET) -> bool:
    return derivation(u, v, rules, budget=budget) is not None


def rewrite_class(u: Sequence[int], rules: RuleSet, budget: int = DEFAULT_BUDGET) -> set[Word]:
    """All words reachable from ``u``."""
    u = tuple(u)
    seen = {u}
    stack = [u]
    while stack:
        w = stack.pop()
        for _, nxt in rules.moves(w):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > budget:
                    raise BudgetExceeded(budget)
                stack.append(nxt)
    return seen


def min_grammic_rule_count(u: Sequence[int], v: Sequence[int], k: int = 3,
                           budget: int = DEFAULT_BUDGET) -> int | None:
    """Fewest applications of ``3212 = 2132`` needed to connect ``u`` and ``v``."""
    if k != 3 or any(not 1 <= x <= 3 for x in (*u, *v)):
        raise ValueError("the grammic rule count is defined over the alphabet {1,2,3}")
    d = derivation(u, v, grammic_rules3(), weighted=True, budget=budget)
    return None if d is None else d.grammic_rule_count

"""Fast grammic equivalence over the alphabet {1, 2, 3}.

Every tableau over three letters has at most three rows, so its row normal
form is ``3^a 2^b 3^c 1^d 2^e 3^f``. Two words act identically on rows iff
their exponents agree, or they differ only in how ``a + c`` is split with
both ``c`` and ``c'`` at most ``e`` (and ``b``, ``d`` positive).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

from .tableau import build_tableau


@dataclass(frozen=True, order=True)
class TableauParams:
    a: int
    b: int
    c: int
    d: int
    e: int
    f: int

    def is_valid(self) -> bool:
        return min(asdict(self).values()) >= 0 and self.a <= self.b <= self.d and self.b + self.c <= self.d + self.e

    def word(self) -> tuple[int, ...]:
        """The row normal form these exponents describe."""
        return (3,) * self.a + (2,) * self.b + (3,) * self.c + (1,) * self.d + (2,) * self.e + (3,) * self.f

    def render(self) -> str:
        rows = ["3" * self.a, "2" * self.b + "3" * self.c, "1" * self.d + "2" * self.e + "3" * self.f]
        return "/".join(r for r in rows if r)

    def to_json(self) -> dict:
        return asdict(self)


def _require_three(word: Sequence[int]) -> None:
    if any(not 1 <= x <= 3 for x in word):
        raise ValueError("expected a word over the alphabet {1,2,3}")


def extract_params(word: Sequence[int]) -> TableauParams:
    _require_three(word)
    rows = build_tableau(word).rows
    bottom = rows[0] if rows else ()
    middle = rows[1] if len(rows) > 1 else ()
    top = rows[2] if len(rows) > 2 else ()
    return TableauParams(
        a=top.count(3),
        b=middle.count(2),
        c=middle.count(3),
        d=bottom.count(1),
        e=bottom.count(2),
        f=bottom.count(3),
    )


def params_equivalent(p: TableauParams, q: TableauParams) -> bool:
    if p == q:
        return True
    return (
        (p.b, p.d, p.e, p.f) == (q.b, q.d, q.e, q.f)
        and p.b > 0
        and p.d > 0
        and p.a + p.c == q.a + q.c
        and p.c <= p.e
        and q.c <= p.e
    )


def grammic_eq3(u: Sequence[int], v: Sequence[int]) -> bool:
    _require_three(u)
    _require_three(v)
    return params_equivalent(extract_params(u), extract_params(v))


def class_params(p: TableauParams) -> list[TableauParams]:
    """Every parameter tuple grammic-equivalent to ``p``, sorted."""
    if not p.is_valid():
        raise ValueError(f"invalid tableau parameters {p}")
    if p.b == 0 or p.d == 0 or p.c > p.e:
        return [p]
    s = p.a + p.c
    # a' = s - c' must stay within 0..b
    lo, hi = max(0, s - p.b), min(p.e, s)
    return [TableauParams(s - c, p.b, c, p.d, p.e, p.f) for c in range(lo, hi + 1)]


def class_3_multiplicity(p: TableauParams) -> int:
    """Number of row normal forms in the grammic class of ``p``."""
    if not p.is_valid():
        raise ValueError(f"invalid tableau parameters {p}")
    if p.b == 0 or p.d == 0 or p.c > p.e:
        return 1
    s = p.a + p.c
    return min(p.e, s) - max(0, s - p.b) + 1

"""Young tableaux and Schensted insertion.

Rows are nondecreasing tuples. Columns are strictly decreasing tuples read
top to bottom, which is how they appear in a column normal form. A tableau
keeps its rows bottom to top: insertion cascades upward from row 0.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Sequence

from .words import Word, format_word

Row = tuple[int, ...]
Column = tuple[int, ...]


class TableauError(ValueError):
    pass


def _check_letter(b: int, k: int | None) -> None:
    if b < 1 or (k is not None and b > k):
        raise TableauError(f"letter {b} outside alphabet")


def row_insert(row: Sequence[int], b: int, k: int | None = None) -> tuple[Row, int | None]:
    """Insert ``b`` into a row, returning the new row and the bumped letter.

    The bumped letter is the leftmost one strictly greater than ``b``; when
    there is none ``b`` is appended and nothing is bumped.
    """
    _check_letter(b, k)
    i = bisect_right(row, b)
    if i == len(row):
        return tuple(row) + (b,), None
    return tuple(row[:i]) + (b,) + tuple(row[i + 1:]), row[i]


def column_insert(column: Sequence[int], b: int, k: int | None = None) -> tuple[Column, int | None]:
    """Left-insert ``b`` into a decreasing column.

    If ``b`` exceeds the top letter it is placed on top. Otherwise it
    replaces the least letter ``>= b``, which is expelled.
    """
    _check_letter(b, k)
    if not column or b > column[0]:
        return (b,) + tuple(column), None
    # column is decreasing; scan from the bottom for the least letter >= b
    for i in range(len(column) - 1, -1, -1):
        if column[i] >= b:
            return tuple(column[:i]) + (b,) + tuple(column[i + 1:]), column[i]
    raise AssertionError("unreachable: top letter is >= b")


@dataclass(frozen=True)
class YoungTableau:
    rows: tuple[Row, ...] = ()

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "YoungTableau":
        t = cls(tuple(tuple(r) for r in rows if r))
        t.validate()
        return t

    @classmethod
    def from_columns(cls, columns: Sequence[Column]) -> "YoungTableau":
        height = max((len(c) for c in columns), default=0)
        rows = [tuple(c[-1 - r] for c in columns if len(c) > r) for r in range(height)]
        return cls.from_rows(rows)

    def validate(self) -> None:
        for r, row in enumerate(self.rows):
            if not row:
                raise TableauError(f"row {r} is empty")
            if any(x > y for x, y in zip(row, row[1:])):
                raise TableauError(f"row {r} is not nondecreasing: {row}")
            if r > 0:
                below = self.rows[r - 1]
                if len(row) > len(below):
                    raise TableauError(f"row {r} longer than the row below it")
                if any(row[j] <= below[j] for j in range(len(row))):
                    raise TableauError(f"column strictness fails between rows {r - 1} and {r}")

    @property
    def height(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    @property
    def bottom_row(self) -> Row:
        return self.rows[0] if self.rows else ()

    def columns(self) -> list[Column]:
        """Columns left to right, each written top to bottom."""
        width = len(self.bottom_row)
        return [tuple(row[j] for row in reversed(self.rows) if len(row) > j) for j in range(width)]

    def cells(self) -> list[int]:
        return [x for row in self.rows for x in row]

    def insert(self, b: int) -> "YoungTableau":
        rows = list(self.rows)
        bumped: int | None = b
        r = 0
        while bumped is not None:
            if r == len(rows):
                rows.append((bumped,))
                bumped = None
            else:
                rows[r], bumped = row_insert(rows[r], bumped)
            r += 1
        return YoungTableau(tuple(rows))

    def row_word(self) -> Word:
        return tuple(x for row in reversed(self.rows) for x in row)

    def column_word(self) -> Word:
        return tuple(x for col in self.columns() for x in col)

    def render(self, sep: str = "\n") -> str:
        """Top row first, one row per line, e.g. ``3\\n223\\n1122``."""
        return sep.join(format_word(row) for row in reversed(self.rows))

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.rows]

    @classmethod
    def from_json(cls, data: list[list[int]]) -> "YoungTableau":
        return cls.from_rows(data)


def build_tableau(word: Iterable[int]) -> YoungTableau:
    """P(w) by row insertion of the letters of ``word`` from left to right."""
    rows: list[list[int]] = []
    for b in word:
        bumped = b
        for row in rows:
            i = bisect_right(row, bumped)
            if i == len(row):
                row.append(bumped)
                break
            row[i], bumped = bumped, row[i]
        else:
            rows.append([bumped])
    return YoungTableau(tuple(tuple(r) for r in rows))


def build_tableau_by_columns(word: Sequence[int]) -> YoungTableau:
    """P(w) built column-wise.

    Column insertion acts on the left, so the letters are fed from the right
    end of ``word``; an expelled letter is left-inserted into the next column.
    """
    columns: list[Column] = []
    for b in reversed(word):
        expelled: int | None = b
        j = 0
        while expelled is not None:
            if j == len(columns):
                columns.append((expelled,))
                expelled = None
            else:
                columns[j], expelled = column_insert(columns[j], expelled)
            j += 1
    return YoungTableau.from_columns(columns)


def row_normal_form(word: Iterable[int]) -> Word:
    return build_tableau(word).row_word()


def column_normal_form(word: Iterable[int]) -> Word:
    return build_tableau(word).column_word()


def row_factors(word: Sequence[int]) -> list[Row]:
    """Split a word into maximal nondecreasing runs, left to right.

    For a row normal form these are exactly the tableau rows, top row first.
    """
    runs: list[list[int]] = []
    for x in word:
        if runs and runs[-1][-1] <= x:
            runs[-1].append(x)
        else:
            runs.append([x])
    return [tuple(r) for r in runs]


def is_row_normal_form(word: Sequence[int]) -> bool:
    return tuple(word) == row_normal_form(word)


def plactic_eq(u: Iterable[int], v: Iterable[int]) -> bool:
    return build_tableau(u) == build_tableau(v)

"""The action of words on rows, seen as vectors of letter multiplicities.

A row ``1^x1 2^x2 ... k^xk`` is the vector ``(x1, ..., xk)``. Inserting a
letter ``j`` replaces the leftmost letter greater than ``j`` by ``j`` and
throws the replaced letter away, or appends ``j`` if there is none.

Two words act identically on every row exactly when they have the same
length and agree on the grid ``{0, ..., n+1}^k`` where ``n`` is the longer
length; everything here that decides equivalence rests on that grid.
"""

from __future__ import annotations

import hashlib
from functools import lru_cache
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .tableau import is_row_normal_form, row_factors
from .words import Word, parikh, word_at

RowVector = tuple[int, ...]

GRID_DTYPE = np.int32


def act_letter(x: Sequence[int], j: int) -> RowVector:
    k = len(x)
    if not 1 <= j <= k:
        raise ValueError(f"letter {j} outside alphabet 1..{k}")
    out = list(x)
    out[j - 1] += 1
    for h in range(j, k):
        if out[h] > 0:
            out[h] -= 1
            break
    return tuple(out)


def act_word(x: Sequence[int], word: Iterable[int]) -> RowVector:
    x = tuple(x)
    for j in word:
        x = act_letter(x, j)
    return x


def bottom_row(word: Sequence[int], k: int) -> RowVector:
    """Letter counts of the bottom row of P(word), computed as ``0 . word``."""
    return act_word((0,) * k, word)


@lru_cache(maxsize=64)
def grid_points(bound: int, k: int) -> np.ndarray:
    """All of ``{0..bound}^k`` as a read-only ``(G, k)`` array in lexicographic order."""
    side = bound + 1
    points = np.indices((side,) * k, dtype=GRID_DTYPE).reshape(k, -1).T.copy()
    points.flags.writeable = False
    return points


def act_word_on_points(word: Sequence[int], points: np.ndarray) -> np.ndarray:
    """Images of every row of ``points`` (shape ``(G, k)``) under ``word``."""
    state = np.array(points, dtype=GRID_DTYPE)
    for j in word:
        state = _act_uniform(state, j)
    return state


def _act_uniform(state: np.ndarray, j: int) -> np.ndarray:
    """Apply letter ``j`` to every vector of ``state`` (last axis = coordinates)."""
    out = state.copy()
    out[..., j - 1] += 1
    pending = np.ones(state.shape[:-1], dtype=bool)
    for h in range(j, state.shape[-1]):
        hit = pending & (out[..., h] > 0)
        out[..., h] -= hit
        pending &= ~hit
    return out


def iter_all_fingerprints(n: int, k: int, start: int = 0, stop: int | None = None,
                          max_cells: int = 1 << 24) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(index, images)`` for the words of length ``n`` in lexicographic order.

    Words are walked as a trie: each block of words sharing a prefix is
    expanded one letter at a time, so every prefix is evaluated once. The
    block depth is chosen to keep at most ``max_cells`` integers alive.
    ``start``/``stop`` restrict to a range of word indices.
    """
    total = k**n
    stop = total if stop is None else min(stop, total)
    points = grid_points(n + 1, k)
    depth = 0
    while depth < n and k ** (n - depth) * points.size > max_cells:
        depth += 1
    block = k ** (n - depth)
    for b in range(start // block, -(-stop // block)):
        prefix = word_at(b, depth, k)
        state = act_word_on_points(prefix, points)[None]
        for _ in range(n - depth):
            state = np.stack([_act_uniform(state, j) for j in range(1, k + 1)], axis=1)
            state = state.reshape(-1, *points.shape)
        base = b * block
        for off in range(max(0, start - base), min(block, stop - base)):
            yield base + off, state[off]


@dataclass(frozen=True, eq=False)
class Fingerprint:
    n: int
    k: int
    outputs: np.ndarray

    @property
    def digest(self) -> str:
        return fingerprint_digest(self.outputs)

    def __eq__(self, other):
        if not isinstance(other, Fingerprint):
            return NotImplemented
        return self.n == other.n and self.k == other.k and np.array_equal(self.outputs, other.outputs)

    def __hash__(self):
        return hash((self.n, self.k, self.digest))

    def to_json(self, include_outputs: bool = False) -> dict:
        data = {"n": self.n, "k": self.k, "digest": self.digest}
        if include_outputs:
            data["outputs"] = self.outputs.tolist()
        return data


def fingerprint_digest(outputs: np.ndarray) -> str:
    data = np.ascontiguousarray(outputs, dtype=GRID_DTYPE).tobytes()
    return hashlib.blake2b(data, digest_size=16).hexdigest()


@lru_cache(maxsize=1 << 14)
def _grid_images(word: Word, k: int) -> np.ndarray:
    images = act_word_on_points(word, grid_points(len(word) + 1, k))
    images.flags.writeable = False
    return images


def grammic_fingerprint(word: Sequence[int], k: int) -> Fingerprint:
    return Fingerprint(len(word), k, _grid_images(tuple(word), k))


@dataclass(frozen=True)
class Witness:
    """Why two words are not grammic-equivalent.

    ``x`` is a grid point separating them, or ``None`` when the lengths
    already differ.
    """

    x: RowVector | None
    image_u: RowVector | None
    image_v: RowVector | None
    reason: str

    def to_json(self) -> dict:
        if self.x is None:
            return {"reason": self.reason}
        return {"x": list(self.x), "image_u": list(self.image_u), "image_v": list(self.image_v), "reason": self.reason}


@dataclass(frozen=True)
class GrammicVerdict:
    equivalent: bool
    witness: Witness | None = None
    grid_size: int = 0

    def __bool__(self):
        return self.equivalent


def grammic_eq_bounded(u: Sequence[int], v: Sequence[int], k: int, prefilter: bool = True) -> GrammicVerdict:
    """Decide whether ``u`` and ``v`` act identically on all rows.

    Compares the two actions over ``{0..max(|u|,|v|)+1}^k``. The optional
    pre-filter rejects on length, letter counts or bottom rows first; each of
    those rejections still comes with a grid point that separates the words.
    """
    u, v = tuple(u), tuple(v)
    if len(u) != len(v):
        return GrammicVerdict(False, Witness(None, None, None, f"lengths differ: {len(u)} != {len(v)}"))
    n = len(u)
    if prefilter:
        if parikh(u, k) != parikh(v, k):
            # every coordinate of (n,..,n) stays positive along both words,
            # so the images there encode the letter counts
            x = (n,) * k
            return GrammicVerdict(False, Witness(x, act_word(x, u), act_word(x, v), "letter counts differ"))
        zero = (0,) * k
        bu, bv = act_word(zero, u), act_word(zero, v)
        if bu != bv:
            return GrammicVerdict(False, Witness(zero, bu, bv, "bottom rows differ"))
    points = grid_points(n + 1, k)
    out = _grid_images(u, k), _grid_images(v, k)
    if np.array_equal(out[0], out[1]):
        return GrammicVerdict(True, None, len(points))
    g = int(np.flatnonzero((out[0] != out[1]).any(axis=1))[0])
    x = tuple(int(c) for c in points[g])
    image_u = tuple(int(c) for c in out[0][g])
    image_v = tuple(int(c) for c in out[1][g])
    return GrammicVerdict(False, Witness(x, image_u, image_v, "images differ"), len(points))


def nonvanishing_threshold(word: Sequence[int], i: int, k: int) -> int:
    """Threshold ``m`` above which coordinate ``i`` never empties.

    ``word`` must be a row normal form. The count runs over the rows whose
    initial letter is smaller than ``i`` and adds up their letters smaller
    than ``i``. For every ``x`` with ``x[i] > m`` and every proper prefix
    ``w`` of ``word``, ``(x . w)[i] > 0``.
    """
    if not 1 <= i <= k:
        raise ValueError(f"coordinate {i} outside 1..{k}")
    if not is_row_normal_form(word):
        raise ValueError("word is not in row normal form")
    total = 0
    for row in row_factors(word):
        if row[0] < i:
            total += sum(1 for a in row if a < i)
    return total


def affine_tail_check(word: Sequence[int], i: int, base: Sequence[int], t: int) -> RowVector:
    """Predict ``X(t) . word`` from the values at ``n`` and ``n + 1``.

    ``X(s)`` is ``base`` with coordinate ``i`` set to ``s`` and ``n = |word|``.
    Past ``n`` the image moves along a line in ``s``.
    """
    n = len(word)
    if t <= n:
        raise ValueError(f"t={t} must exceed the word length {n}")

    def at(s: int) -> RowVector:
        x = list(base)
        x[i - 1] = s
        return act_word(x, word)

    lo, hi = at(n), at(n + 1)
    return tuple(a + (t - n) * (b - a) for a, b in zip(lo, hi))

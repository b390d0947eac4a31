"""Ordered alphabets, words, Parikh vectors, projections and word enumeration.

Letters are the integers ``1..k`` with their natural order, so letter ``i``
stands for the ``i``-th smallest generator. A word is a plain tuple of
letters; the empty tuple is the identity of the free monoid.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

Word = tuple[int, ...]

MAX_ALPHABET = 9


class WordError(ValueError):
    """Raised for malformed word text or letters outside the alphabet."""


@dataclass(frozen=True)
class Alphabet:
    size: int

    def __post_init__(self):
        if not 1 <= self.size <= MAX_ALPHABET:
            raise WordError(f"alphabet size must lie in 1..{MAX_ALPHABET}, got {self.size}")

    @property
    def letters(self) -> range:
        return range(1, self.size + 1)

    def check(self, word: Iterable[int]) -> Word:
        word = tuple(word)
        for letter in word:
            if not 1 <= letter <= self.size:
                raise WordError(f"letter {letter} outside alphabet 1..{self.size}")
        return word


def alphabet_size(k: int | Alphabet) -> int:
    return k.size if isinstance(k, Alphabet) else Alphabet(k).size


def parse_word(text: str, alphabet: int | Alphabet) -> Word:
    """Parse ``"3212"`` or ``"cbab"`` into a tuple of letters.

    Digits map to themselves and lowercase latin letters map ``a -> 1``,
    ``b -> 2`` and so on. The two notations may not be mixed.
    """
    alphabet = alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet)
    text = text.strip()
    if not text:
        return ()
    if all(ch in string.digits for ch in text):
        letters = [int(ch) for ch in text]
    elif all(ch in string.ascii_lowercase for ch in text):
        letters = [ord(ch) - ord("a") + 1 for ch in text]
    else:
        raise WordError(f"cannot parse {text!r}: use only digits or only lowercase letters")
    return alphabet.check(letters)


def format_word(word: Sequence[int]) -> str:
    return "".join(str(letter) for letter in word)


def infer_alphabet(*words: Sequence[int]) -> int:
    """Smallest alphabet size covering every letter of ``words``."""
    return max((max(w) for w in words if w), default=1)


def parikh(word: Sequence[int], k: int | Alphabet) -> tuple[int, ...]:
    k = alphabet_size(k)
    counts = [0] * k
    for letter in word:
        counts[letter - 1] += 1
    return tuple(counts)


def project(word: Sequence[int], letters: Iterable[int], relabel: bool = True) -> Word:
    """Erase the letters not in ``letters``.

    With ``relabel`` the survivors are renamed through the order isomorphism
    ``letters -> 1..len(letters)`` so the result lives over a contiguous
    alphabet; otherwise the original letter values are kept.
    """
    kept = sorted(set(letters))
    if not kept:
        raise WordError("projection onto an empty subalphabet")
    rank = {letter: i + 1 for i, letter in enumerate(kept)}
    if relabel:
        return tuple(rank[x] for x in word if x in rank)
    return tuple(x for x in word if x in rank)


def count_words(n: int, k: int) -> int:
    return k**n


def word_at(index: int, n: int, k: int) -> Word:
    """The ``index``-th word of length ``n`` in lexicographic order."""
    if not 0 <= index < k**n:
        raise IndexError(index)
    digits = []
    for _ in range(n):
        index, r = divmod(index, k)
        digits.append(r + 1)
    return tuple(reversed(digits))


def words_of_length(n: int, k: int | Alphabet, start: int = 0, stop: int | None = None) -> Iterator[Word]:
    """Yield the words of length ``n`` in lexicographic order.

    ``start`` and ``stop`` select a half-open range of word indices, so
    disjoint ranges can be handed to independent workers.
    """
    k = alphabet_size(k)
    total = k**n
    stop = total if stop is None else min(stop, total)
    if start == 0 and stop == total:
        yield from product(range(1, k + 1), repeat=n)
        return
    if start >= stop:
        return
    current = list(word_at(start, n, k))
    for _ in range(stop - start):
        yield tuple(current)
        # odometer increment, rightmost letter fastest
        pos = n - 1
        while pos >= 0 and current[pos] == k:
            current[pos] = 1
            pos -= 1
        if pos >= 0:
            current[pos] += 1


def chunk_ranges(total: int, chunks: int) -> list[tuple[int, int]]:
    """Split ``range(total)`` into at most ``chunks`` contiguous pieces."""
    chunks = max(1, min(chunks, total)) if total else 1
    size, extra = divmod(total, chunks)
    ranges, lo = [], 0
    for i in range(chunks):
        hi = lo + size + (1 if i < extra else 0)
        ranges.append((lo, hi))
        lo = hi
    return ranges

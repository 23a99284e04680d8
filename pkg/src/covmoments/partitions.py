"""Set partitions of {1..m}, their canonical words, and the special
symmetric class that governs limiting covariance-matrix moments.

A partition is stored as blocks ordered by least element; its canonical
word assigns letter j to the j-th block in that order, so partitions of
{1..m} and canonical words of length m are the same data.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

DEFAULT_ENUMERATION_CAP = 14


class SizeLimitError(RuntimeError):
    """Raised when an exhaustive enumeration would exceed its configured cap."""


def bell(m: int) -> int:
    """Number of set partitions of {1..m} (Bell number)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    row = [1]
    for _ in range(m):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def catalan(k: int) -> int:
    return math.comb(2 * k, k) // (k + 1)


def narayana(k: int, r: int) -> int:
    """Count of pair-matched special symmetric words of length 2k with r+1
    even generating vertices: C(k,r)*C(k-1,r)/(r+1)."""
    if not 0 <= r <= k - 1:
        return 0
    return math.comb(k, r) * math.comb(k - 1, r) // (r + 1)


@dataclass(frozen=True)
class Partition:
    """Set partition of {1..m}; blocks sorted ascending, ordered by least element."""

    m: int
    blocks: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_blocks(blocks: Iterable[Iterable[int]]) -> "Partition":
        """Build and validate a partition from an iterable of blocks."""
        normalized = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
        if not normalized or any(len(b) == 0 for b in normalized):
            raise ValueError("blocks must be non-empty")
        elements = [e for b in normalized for e in b]
        m = len(elements)
        if sorted(elements) != list(range(1, m + 1)):
            raise ValueError("blocks must partition {1..m} exactly")
        return Partition(m, normalized)

    @staticmethod
    def from_word(word: "Word") -> "Partition":
        groups: dict[int, list[int]] = defaultdict(list)
        for pos, letter in enumerate(word.letters, start=1):
            groups[letter].append(pos)
        return Partition.from_blocks(groups.values())

    def block_of(self) -> dict[int, int]:
        """Map element -> index of its block (0-based)."""
        owner = {}
        for idx, block in enumerate(self.blocks):
            for e in block:
                owner[e] = idx
        return owner

    def to_word(self) -> "Word":
        owner = self.block_of()
        return Word(tuple(owner[i] + 1 for i in range(1, self.m + 1)))

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(sorted(len(b) for b in self.blocks))

    def as_lists(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


@dataclass(frozen=True)
class Word:
    """Canonical word: letters 1..b, letter j first appearing before letter j+1."""

    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        seen = 0
        for letter in self.letters:
            if letter > seen + 1 or letter < 1:
                raise ValueError(f"word {self.letters} is not in canonical first-occurrence form")
            seen = max(seen, letter)

    @staticmethod
    def from_text(text: str) -> "Word":
        return Word(tuple(ord(c) - ord("a") + 1 for c in text))

    @property
    def text(self) -> str:
        return "".join(chr(ord("a") + letter - 1) for letter in self.letters)

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def distinct_letters(self) -> int:
        return max(self.letters) if self.letters else 0

    def multiplicities(self) -> tuple[int, ...]:
        """Occurrence count per letter, in letter order."""
        counts = Counter(self.letters)
        return tuple(counts[j] for j in range(1, self.distinct_letters + 1))

    def to_partition(self) -> Partition:
        return Partition.from_word(self)

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class WordStats:
    b: int
    r_plus_1: int
    first_positions: tuple[int, ...]

    @property
    def odd_generating(self) -> int:
        """Count of odd indices among the generating set {0} + first positions."""
        return len(self.first_positions) + 1 - self.r_plus_1


def word_statistics(word: Word) -> WordStats:
    """Generating-vertex statistics of a word.

    The generating indices are 0 together with the first-occurrence position of
    each letter; r+1 counts the even ones (index 0 included).
    """
    firsts = []
    seen: set[int] = set()
    for pos, letter in enumerate(word.letters, start=1):
        if letter not in seen:
            seen.add(letter)
            firsts.append(pos)
    generating = {0} | set(firsts)
    r_plus_1 = sum(1 for i in generating if i % 2 == 0)
    return WordStats(b=len(firsts), r_plus_1=r_plus_1, first_positions=tuple(firsts))


def _check_cap(m: int, cap: int | None) -> None:
    limit = DEFAULT_ENUMERATION_CAP if cap is None else cap
    if m > limit:
        raise SizeLimitError(
            f"ground set of size {m} exceeds the enumeration cap {limit} "
            f"(Bell({limit}) = {bell(limit)} partitions is the configured ceiling)"
        )


def enumerate_partitions(m: int, cap: int | None = None) -> Iterator[Partition]:
    """Yield every partition of {1..m} once, in restricted-growth order."""
    if m < 1:
        raise ValueError("m must be >= 1")
    _check_cap(m, cap)
    letters = [1] * m

    def rec(i: int, maxletter: int) -> Iterator[Partition]:
        if i == m:
            yield Partition.from_word(Word(tuple(letters)))
            return
        for letter in range(1, maxletter + 2):
            letters[i] = letter
            yield from rec(i + 1, max(maxletter, letter))

    yield from rec(1, 1)


def enumerate_pair_partitions(m: int, cap: int | None = None) -> Iterator[Partition]:
    """Yield every pair partition of {1..m} (empty for odd m)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    _check_cap(m, cap)
    if m % 2:
        return

    def rec(remaining: tuple[int, ...], acc: list[tuple[int, int]]) -> Iterator[Partition]:
        if not remaining:
            yield Partition.from_blocks(list(acc))
            return
        first, rest = remaining[0], remaining[1:]
        for i, partner in enumerate(rest):
            acc.append((first, partner))
            yield from rec(rest[:i] + rest[i + 1 :], acc)
            acc.pop()

    yield from rec(tuple(range(1, m + 1)), [])


def is_pair(p: Partition) -> bool:
    return all(len(b) == 2 for b in p.blocks)


def has_even_blocks(p: Partition) -> bool:
    return all(len(b) % 2 == 0 for b in p.blocks)


def is_non_crossing(p: Partition) -> bool:
    """True iff no two blocks interleave as a < b < c < d with a,c and b,d split."""
    for i in range(len(p.blocks)):
        for j in range(i + 1, len(p.blocks)):
            if _blocks_cross(p.blocks[i], p.blocks[j]):
                return False
    return True


def _blocks_cross(x: Sequence[int], y: Sequence[int]) -> bool:
    # Merge the two sorted blocks and collapse runs of equal ownership;
    # an alternation of length >= 4 is exactly a crossing.
    merged = sorted([(e, 0) for e in x] + [(e, 1) for e in y])
    alternations = 1
    for (_, prev), (_, cur) in zip(merged, merged[1:]):
        if cur != prev:
            alternations += 1
            if alternations >= 4:
                return True
    return False


def is_special_symmetric(p: Partition) -> bool:
    """Literal membership test for the special symmetric class.

    Requirements:
      - every block has even size (the class sits inside even-block partitions;
        without this, gap-free singleton blocks slip through vacuously);
      (i) the last block (largest least element) splits into maximal runs of
          consecutive integers, each of even length;
      (ii) between any two successive elements of a block, every other block
          occurs equally often at odd and at even gap positions (position of
          an interleaved element w in the gap (u, v) is w - u).
    Empty for odd ground sets.
    """
    if p.m % 2:
        return False
    if not has_even_blocks(p):
        return False
    last = p.blocks[-1]
    run = 1
    for prev, cur in zip(last, last[1:]):
        if cur == prev + 1:
            run += 1
        else:
            if run % 2:
                return False
            run = 1
    if run % 2:
        return False

    owner = p.block_of()
    for idx, block in enumerate(p.blocks):
        for u, v in zip(block, block[1:]):
            if v == u + 1:
                continue
            balance: dict[int, int] = defaultdict(int)
            for w in range(u + 1, v):
                balance[owner[w]] += 1 if (w - u) % 2 else -1
            if any(balance.values()):
                return False
    return True


@dataclass(frozen=True)
class PartitionClass:
    is_pair: bool
    is_even_blocks: bool
    is_non_crossing: bool
    is_special_symmetric: bool
    b: int
    r_plus_1: int


def classify(p: Partition) -> PartitionClass:
    stats = word_statistics(p.to_word())
    return PartitionClass(
        is_pair=is_pair(p),
        is_even_blocks=has_even_blocks(p),
        is_non_crossing=is_non_crossing(p),
        is_special_symmetric=is_special_symmetric(p),
        b=len(p.blocks),
        r_plus_1=stats.r_plus_1,
    )


_GROUP_KEYS = ("total", "blocks", "even_generating", "sizes")


def _group_value(key: str, p: Partition, stats: WordStats):
    if key == "total":
        return "total"
    if key == "blocks":
        return len(p.blocks)
    if key == "even_generating":
        return stats.r_plus_1
    if key == "sizes":
        return p.block_sizes()
    raise ValueError(f"unknown grouping key {key!r}; expected one of {_GROUP_KEYS}")


def count_ss(
    k: int,
    by: str | Sequence[str] = "total",
    pair_only: bool = False,
    cap: int | None = None,
) -> dict:
    """Exhaustively count special symmetric partitions of {1..2k}.

    `by` selects the grouping: "total", "blocks" (b), "even_generating" (r+1),
    "sizes" (block-size multiset), or a tuple of those for a joint table.
    With pair_only=True only pair partitions are enumerated, which is the
    sub-table whose even-generating slices are the Narayana numbers.
    """
    keys = (by,) if isinstance(by, str) else tuple(by)
    for key in keys:
        if key not in _GROUP_KEYS:
            raise ValueError(f"unknown grouping key {key!r}; expected one of {_GROUP_KEYS}")
    source = enumerate_pair_partitions if pair_only else enumerate_partitions
    counts: dict = defaultdict(int)
    for p in source(2 * k, cap=cap):
        if not is_special_symmetric(p):
            continue
        stats = word_statistics(p.to_word())
        group = tuple(_group_value(key, p, stats) for key in keys)
        counts[group[0] if len(group) == 1 else group] += 1
    return dict(counts)

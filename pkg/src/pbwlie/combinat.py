"""Small enumeration helpers: set partitions, ordered set partitions, descents."""
from __future__ import annotations

from itertools import combinations
from typing import Iterator, List, Sequence, Tuple

Block = Tuple[int, ...]


def nonempty_subsets(items: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    for r in range(1, len(items) + 1):
        yield from combinations(items, r)


def ordered_set_partitions(items: Sequence[int]) -> Iterator[Tuple[Block, ...]]:
    """All sequences of nonempty disjoint blocks covering ``items``; each block is sorted.

    The empty set has exactly one ordered partition, the empty sequence.
    """
    items = tuple(sorted(items))
    if not items:
        yield ()
        return
    for first in nonempty_subsets(items):
        rest = tuple(x for x in items if x not in first)
        for tail in ordered_set_partitions(rest):
            yield (first,) + tail


def set_partitions(items: Sequence[int]) -> Iterator[Tuple[Block, ...]]:
    """Unordered set partitions, blocks listed by increasing minimum."""
    items = tuple(sorted(items))
    if not items:
        yield ()
        return
    head, rest = items[0], items[1:]
    for r in range(len(rest) + 1):
        for others in combinations(rest, r):
            block = (head,) + others
            remaining = tuple(x for x in rest if x not in others)
            for tail in set_partitions(remaining):
                yield (block,) + tail


def descents(seq: Sequence[int]) -> int:
    return sum(1 for a, b in zip(seq, seq[1:]) if a > b)


def ascents(seq: Sequence[int]) -> int:
    return sum(1 for a, b in zip(seq, seq[1:]) if a < b)


def bubble_sort_swaps(seq: Sequence) -> List[int]:
    """Adjacent transpositions (1-based left positions) that sort ``seq`` stably.

    Repeatedly swaps the leftmost adjacent out-of-order pair, so the list is
    the same for every run.
    """
    s = list(seq)
    swaps: List[int] = []
    while True:
        for i in range(len(s) - 1):
            if s[i] > s[i + 1]:
                s[i], s[i + 1] = s[i + 1], s[i]
                swaps.append(i + 1)
                break
        else:
            return swaps

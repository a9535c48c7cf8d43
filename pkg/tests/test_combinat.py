from math import factorial

from hypothesis import given, strategies as st

from pbwlie.combinat import (ascents, bubble_sort_swaps, descents, nonempty_subsets,
                             ordered_set_partitions, set_partitions)

BELL = [1, 1, 2, 5, 15, 52, 203]
FUBINI = [1, 1, 3, 13, 75, 541, 4683]


def test_partition_counts():
    for n in range(7):
        assert sum(1 for _ in set_partitions(range(n))) == BELL[n]
        assert sum(1 for _ in ordered_set_partitions(range(n))) == FUBINI[n]


def test_set_partitions_blocks_ordered_by_minimum():
    for part in set_partitions(range(5)):
        mins = [b[0] for b in part]
        assert mins == sorted(mins)
        assert sorted(x for b in part for x in b) == list(range(5))


def test_subsets():
    assert len(list(nonempty_subsets([1, 2, 3, 4]))) == 15


def test_descent_statistics():
    assert descents((3, 1, 2)) == 1
    assert ascents((3, 1, 2)) == 1
    # Eulerian numbers for n = 4
    from itertools import permutations
    counts = [0] * 4
    for p in permutations(range(4)):
        counts[descents(p)] += 1
    assert counts == [1, 11, 11, 1]


@given(st.lists(st.integers(0, 4), max_size=7))
def test_bubble_sort_swaps_sort(seq):
    s = list(seq)
    for i in bubble_sort_swaps(seq):
        assert s[i - 1] > s[i]
        s[i - 1], s[i] = s[i], s[i - 1]
    assert s == sorted(seq)


@given(st.permutations(range(6)))
def test_swap_count_is_inversion_count(p):
    inv = sum(1 for i in range(6) for j in range(i + 1, 6) if p[i] > p[j])
    assert len(bubble_sort_swaps(p)) == inv <= factorial(6)

import pytest

from oracles import burnside_graph_count, canonical_code, labeled_canonical_classes
from wlpairs.enumeration import MAX_INTERNAL_N, EnumerationLimitError, enumerate_nonisomorphic
from wlpairs.graph6 import write_graph6


@pytest.mark.parametrize("n", range(0, 7))
def test_matches_brute_force_canonical_forms(n):
    reps = list(enumerate_nonisomorphic(n))
    codes = [canonical_code(g) for g in reps]
    assert len(set(codes)) == len(codes)
    assert set(codes) == labeled_canonical_classes(n)


def test_burnside_oracle_known_values():
    assert [burnside_graph_count(n) for n in range(1, 9)] == [1, 2, 4, 11, 34, 156, 1044, 12346]


def test_count_n7():
    assert sum(1 for _ in enumerate_nonisomorphic(7)) == burnside_graph_count(7)


@pytest.mark.slow
def test_count_n8():
    assert sum(1 for _ in enumerate_nonisomorphic(8)) == burnside_graph_count(8)


def test_order_and_determinism():
    a = list(enumerate_nonisomorphic(5))
    keys = [(g.m, write_graph6(g)) for g in a]
    assert keys == sorted(keys)
    assert [write_graph6(g) for g in enumerate_nonisomorphic(5)] == [k for _, k in keys]


def test_limit():
    with pytest.raises(EnumerationLimitError):
        next(enumerate_nonisomorphic(MAX_INTERNAL_N + 1))
    with pytest.raises(EnumerationLimitError):
        next(enumerate_nonisomorphic(-1))

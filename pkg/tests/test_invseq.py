from itertools import combinations, permutations

import pytest
from hypothesis import given
import hypothesis.strategies as st

from permbij.errors import InvalidWordError, PreconditionError
from permbij.invseq import (
    all_inversion_sequences,
    count_inversion_class,
    enumerate_inversion_class,
    extension_creates,
    inv_statistics,
    inversion_class_array,
    is_inversion_sequence,
    lehmer_code,
    ms_code,
    ms_decode,
    require_seq_avoids,
    seq_avoids,
    seq_contains,
)
from permbij.permcore import avoiders, standardize, statistics


def naive_seq_contains(e, p):
    p = tuple(int(c) for c in p)
    want = tuple(sorted(set(p)).index(a) for a in p)
    for idx in combinations(range(len(e)), len(p)):
        sub = [e[i] for i in idx]
        if tuple(sorted(set(sub)).index(a) for a in sub) == want:
            return True
    return False


inversion_sequences = st.integers(0, 9).flatmap(
    lambda n: st.tuples(*[st.integers(0, i) for i in range(n)])
)


def test_validity():
    assert is_inversion_sequence((0, 1, 0, 3))
    assert is_inversion_sequence(())
    assert not is_inversion_sequence((1,))
    assert not is_inversion_sequence((0, 2))
    with pytest.raises(InvalidWordError):
        ms_decode((0, 2))


@pytest.mark.parametrize("p", ["201", "210", "012", "102", "0", "3120"])
def test_containment_matches_subsequence_scan(p):
    for n in range(1, 7):
        for e in all_inversion_sequences(n):
            assert seq_contains(e, p) == naive_seq_contains(e, p), (e, p)


@given(inversion_sequences, st.integers(0, 9))
def test_extension_check_matches_full_scan(e, k):
    k = k % (len(e) + 1)
    full = not seq_avoids(e + (k,), "201,210")
    if seq_avoids(e, "201,210"):
        assert extension_creates(e, k, "201,210") == full


def test_class_counts():
    assert [count_inversion_class(n) for n in range(1, 8)] == [1, 2, 6, 24, 116, 632, 3720]


def test_array_matches_filter():
    for n in range(1, 8):
        ref = sorted(e for e in all_inversion_sequences(n) if seq_avoids(e, "201,210"))
        assert sorted(map(tuple, inversion_class_array(n).tolist())) == ref
        assert sorted(enumerate_inversion_class(n)) == ref


def test_patterns_need_distinct_letters():
    with pytest.raises(InvalidWordError):
        seq_contains((0, 0, 0), "000")


def test_spot_values():
    assert not seq_contains((0, 0, 0), "201")
    assert not seq_contains((0, 1, 0, 2), "201")
    with pytest.raises(InvalidWordError):
        seq_contains((0, 2, 0, 1), "201")


def test_other_pattern_pairs():
    for pats in ("012", "021,102", "120"):
        for n in range(1, 7):
            ref = sum(1 for e in all_inversion_sequences(n) if seq_avoids(e, pats))
            assert count_inversion_class(n, pats) == ref


def test_lehmer():
    assert lehmer_code((3, 1, 2)) == (0, 1, 1)
    for n in range(1, 7):
        codes = {lehmer_code(p) for p in permutations(range(1, n + 1))}
        assert len(codes) == len(set(all_inversion_sequences(n)))


def test_ms_code_example():
    assert ms_code((5, 8, 2, 9, 3, 7, 4, 1, 6)) == (0, 0, 1, 0, 2, 5, 3, 0, 5)
    assert ms_decode((0, 0, 1, 0, 2, 5, 3, 0, 5)) == (5, 8, 2, 9, 3, 7, 4, 1, 6)


@pytest.mark.parametrize("n", range(1, 8))
def test_ms_code_is_a_bijection_carrying_three_statistics(n):
    seen = set()
    for p in permutations(range(1, n + 1)):
        e = ms_code(p)
        assert is_inversion_sequence(e)
        seen.add(e)
        s, r = statistics(p), inv_statistics(e)
        assert (s.exc, len(s.rlmin), s.lmaxz) == (r.rep, r.rlmin, r.zero)
        assert ms_decode(e) == p
    assert len(seen) == len(list(all_inversion_sequences(n)))


def test_ms_code_restricts_to_the_inversion_class():
    for n in range(1, 8):
        images = {ms_code(p) for p in avoiders(n, "45312,45321,54312,54321")}
        assert images == set(enumerate_inversion_class(n))


@given(st.permutations(list(range(1, 11))))
def test_ms_decode_inverts_on_length_ten(p):
    assert ms_decode(ms_code(p)) == tuple(p)


@pytest.mark.parametrize("n", [1, 4, 7])
def test_statistics_extremes(n):
    zeros = inv_statistics((0,) * n)
    assert (zeros.dist, zeros.rep, zeros.zero, zeros.rlmin, zeros.satu) == (0, n - 1, n, 1, 1)
    stair = inv_statistics(tuple(range(n)))
    assert (stair.satu, stair.dist, stair.rlmin) == (n, n - 1, n)


def test_rlmin_is_strict():
    assert inv_statistics((0, 1, 1, 0, 2)).rlmin == 2


def test_require_seq_avoids_names_pattern():
    with pytest.raises(PreconditionError) as err:
        require_seq_avoids((0, 1, 2, 0, 1), "201,210", "test")
    assert err.value.pattern == "201"


@given(st.lists(st.integers(1, 30), unique=True, min_size=1, max_size=8))
def test_lehmer_counts_larger_earlier_letters(w):
    direct = tuple(sum(1 for a in w[:i] if a > b) for i, b in enumerate(w))
    assert lehmer_code(standardize(w)) == direct

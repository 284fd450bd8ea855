import pytest
from hypothesis import given, settings

from permbij.bijections import (
    SHORT_SOURCE,
    SHORT_TARGET,
    SOURCE,
    TAGS,
    TARGET,
    alpha,
    beta,
    classify,
    decompose_type_I,
    decompose_type_II,
    phi,
    psi,
)
from permbij.errors import PreconditionError, StructureError
from permbij.permcore import avoiders, contains_pattern, standardize, statistics
from permbij.properties import (
    alpha_adjacency_iff,
    alpha_lrmax_pair_breaks,
    alpha_relative_order_kept,
    phi_descent_at_max_kept,
    phi_descent_breaks,
    top_block_empty,
)
from permbij.verify import ALPHA_KEPT, PHI_KEPT

from conftest import avoiders_of


def kept(a, b, names):
    ra, rb = statistics(a), statistics(b)
    return all(getattr(ra, s) == getattr(rb, s) for s in names)


# --- worked examples -------------------------------------------------------

def test_phi_worked_example(phi_example):
    assert phi(phi_example["w"]) == phi_example["phi"]
    assert psi(phi_example["phi"]) == phi_example["w"]


def test_type_I_parse_of_worked_example(phi_example):
    d = decompose_type_I(phi_example["w"])
    assert d.k == 2
    assert d.ascending_run_boundaries == (2, 6)
    assert d.max_position == 10
    assert d.top_block == (19, 16, 18)
    assert d.floor_blocks == ((11, 12, 13, 8), (3, 5, 1))
    assert d.reassemble() == phi_example["w"]


def test_psi_on_a_single_segment():
    v = (15, 17, 20, 19, 16, 18)
    assert psi(v) == (15, 17, 20, 19, 16, 18)
    assert phi(psi(v)) == v


def test_alpha_worked_example(alpha_example):
    w, img = alpha_example["w"], alpha_example["alpha"]
    assert alpha(w) == img
    assert beta(img) == w
    assert kept(w, img, ALPHA_KEPT)


def test_type_II_parse_rebuilds_word(phi_example):
    d = decompose_type_II(phi_example["phi"])
    assert sum(d.segments(), ()) == phi_example["phi"]
    assert all(length >= 1 for _, length in d.runs)


def test_small_cases():
    for f in (phi, psi, alpha, beta):
        assert f(()) == ()
        assert f((7,)) == (7,)
        assert f((3, 9)) == (3, 9)
        assert f((9, 3)) == (9, 3)


# --- preconditions ---------------------------------------------------------

@pytest.mark.parametrize("f,w,pat", [
    (phi, (3, 1, 2, 4), "3124"),
    (psi, (3, 1, 4, 2), "3142"),
    (alpha, (3, 1, 2, 4, 5), "31245"),
    (beta, (3, 2, 4, 1, 5), "32415"),
])
def test_precondition_names_pattern(f, w, pat):
    with pytest.raises(PreconditionError) as err:
        f(w)
    assert err.value.pattern == pat
    assert pat in str(err.value)


def test_classify_rejects_empty_and_bad_side():
    with pytest.raises(StructureError):
        classify(())
    with pytest.raises(ValueError):
        classify((1, 2), side="middle")


def test_type_I_parse_rejects_unstacked_tail():
    # 1 sits below the floor threshold 4 but 6 after it sits above
    with pytest.raises(StructureError):
        decompose_type_I((4, 2, 5, 7, 1, 6), check=False)


# --- exhaustive small lengths -----------------------------------------------

@pytest.mark.parametrize("n", range(1, 8))
def test_phi_is_a_bijection(n):
    src, dst = avoiders(n, SHORT_SOURCE), avoiders(n, SHORT_TARGET)
    images = [phi(w) for w in src]
    assert sorted(images) == list(dst)
    for w, v in zip(src, images):
        assert psi(v) == w
        assert kept(w, v, PHI_KEPT)


@pytest.mark.parametrize("n", range(1, 8))
def test_alpha_is_a_bijection(n):
    src, dst = avoiders(n, SOURCE), avoiders(n, TARGET)
    images = [alpha(w) for w in src]
    assert sorted(images) == list(dst)
    for w, v in zip(src, images):
        assert beta(v) == w
        assert kept(w, v, ALPHA_KEPT)


def test_every_word_gets_a_tag():
    seen = set()
    for n in range(1, 8):
        for w in avoiders(n, SOURCE):
            seen.add(classify(w, check=False).tag)
        for v in avoiders(n, TARGET):
            seen.add(classify(v, "target", check=False).tag)
    assert seen <= set(TAGS)
    assert {"I-1", "I-2", "I-3", "II-1", "II-2", "II-3", "II-4", "A-1", "A-2", "A-3", "B-1", "B-2", "B-3"} <= seen


def test_tag_families_correspond():
    from collections import Counter
    for n in range(4, 8):
        src = Counter(classify(w, check=False).tag for w in avoiders(n, SOURCE))
        dst = Counter(classify(v, "target", check=False).tag for v in avoiders(n, TARGET))
        for k in (1, 2, 3):
            assert src[f"I-{k}"] == dst[f"A-{k}"]
        assert src["II-1"] == dst["B-1"]
        assert src["II-3"] == dst["B-3"]
        assert src["II-2"] + src["II-4"] == dst["B-2"]


# --- random larger words -----------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(avoiders_of("3124,3214", min_len=1, max_len=16))
def test_phi_roundtrip_random(w):
    v = phi(w)
    assert not any(contains_pattern(v, p) for p in SHORT_TARGET)
    assert psi(v) == w
    assert kept(w, v, PHI_KEPT)


@settings(max_examples=150, deadline=None)
@given(avoiders_of("3142,3241", min_len=1, max_len=16))
def test_psi_roundtrip_random(v):
    assert phi(psi(v)) == v


@settings(max_examples=150, deadline=None)
@given(avoiders_of("31245,32145,31254,32154", min_len=1, max_len=16))
def test_alpha_roundtrip_random(w):
    v = alpha(w)
    assert not any(contains_pattern(v, p) for p in TARGET)
    assert beta(v) == w
    assert kept(w, v, ALPHA_KEPT)


@settings(max_examples=150, deadline=None)
@given(avoiders_of("31425,32415,31524,32514", min_len=1, max_len=16))
def test_beta_roundtrip_random(v):
    assert alpha(beta(v)) == v


@settings(max_examples=100, deadline=None)
@given(avoiders_of("31245,32145,31254,32154", max_len=12))
def test_maps_commute_with_relabelling(w):
    s = standardize(w)
    letters = sorted(w)
    assert alpha(w) == tuple(letters[a - 1] for a in alpha(s))


# --- structural properties ---------------------------------------------------

def test_phi_keeps_descents_before_the_max():
    for n in range(1, 9):
        for w in avoiders(n, SHORT_SOURCE):
            assert phi_descent_breaks(w, through_max=False) == []


def test_phi_descent_after_max_tracks_top_block():
    for n in range(2, 9):
        for w in avoiders(n, SHORT_SOURCE):
            kept_ = phi_descent_at_max_kept(w)
            if kept_ is not None:
                assert kept_ == (not top_block_empty(w))


def test_phi_splits_descent_after_max_with_empty_top_block():
    w = (4, 1, 5, 2, 3)
    assert phi(w) == (4, 1, 2, 3, 5)
    assert phi_descent_breaks(w) == [3]


def test_alpha_keeps_order_and_adjacency():
    for n in range(1, 9):
        for w in avoiders(n, SOURCE):
            assert alpha_relative_order_kept(w)
            assert alpha_adjacency_iff(w)


def test_alpha_lrmax_pairs_with_shortened_bound():
    for n in range(1, 9):
        for w in avoiders(n, SOURCE):
            assert alpha_lrmax_pair_breaks(w, literal=False) == []


@pytest.mark.parametrize("w,breaks", [((3, 1, 4, 2, 5), [2]), ((4, 1, 5, 2, 3, 6), [2])])
def test_alpha_lrmax_pair_literal_counterexamples(w, breaks):
    assert classify(w).tag == "trivial-rlmax1"
    assert alpha_lrmax_pair_breaks(w, literal=True) == breaks
    assert alpha_lrmax_pair_breaks(w, literal=False) == []

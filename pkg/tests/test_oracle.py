import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import images, loops
from digitopo import catalog
from digitopo.catalog import D_LOOP
from digitopo.core import DigitalImage, box, components
from digitopo.homotopy import DigitalLoop, constant_loop, pad
from digitopo.oracle import (
    ENDPOINT_FIXED,
    LOOP_PRESERVING,
    CapExceeded,
    SearchBudget,
    Status,
    connected_subsets,
    contractibility_search,
    find_hole,
    has_hole_direct,
    has_loophole_bounded,
    is_nullhomotopic_bounded,
    loop_reachable_set,
    no_hole_equiv_check,
    random_loop,
    reduced_loops,
    search_paths,
)


def brute_one_step(X, row, mode):
    """Every row one step away, by brute product; the reference for the pruned enumerator."""
    opts = [(p,) + X.adjacency_lists[p] for p in row]
    out = set()
    for cand in itertools.product(*opts):
        if any(not X.adjacent_or_equal(cand[i], cand[i + 1]) for i in range(len(cand) - 1)):
            continue
        if mode == ENDPOINT_FIXED and (cand[0] != row[0] or cand[-1] != row[-1]):
            continue
        if mode == LOOP_PRESERVING and cand[0] != cand[-1]:
            continue
        out.add(cand)
    return out


def brute_closure(X, row, mode):
    seen, todo = {row}, [row]
    while todo:
        cur = todo.pop()
        for nb in brute_one_step(X, cur, mode):
            if nb not in seen:
                seen.add(nb)
                todo.append(nb)
    return seen


RING8 = DigitalImage([p for p in box((0, 2), (0, 2)) if p != (1, 1)], "4")


# loop searches

def test_loophole_loop_closes_at_its_rotations():
    entry = catalog.build("LOOPHOLE_X")
    f = entry.artifacts["loop"]
    rs = loop_reachable_set(entry.image, f, LOOP_PRESERVING)
    body = list(f.seq[:-1])
    rotations = {tuple(body[i:] + body[:i] + [body[i]]) for i in range(8)}
    assert rs.complete and set(rs.loops) == rotations


def test_length_zero_loop_is_alone(mss6):
    rs = loop_reachable_set(mss6, constant_loop(mss6, (0, 0, 1)), ENDPOINT_FIXED)
    assert rs.loops == (((0, 0, 1),),)


def test_fig48_cycle_contracts_at_length_10():
    # frozen from the search and an independent hand check of the two moves
    f = catalog.build("FIG48").artifacts["7cycle"]
    rep = is_nullhomotopic_bounded(f.image, f, SearchBudget(max_states=10**6, pad_len=10))
    assert rep.status is Status.REACHED
    assert rep.frontier_depth == 2
    assert rep.certificate.check().valid


def test_fig48_cycle_contracts_without_padding():
    # frozen: two full-row moves already suffice at the loop's own length
    f = catalog.build("FIG48").artifacts["7cycle"]
    rep = search_paths(f.image, f.seq, ENDPOINT_FIXED, lambda r: len(set(r)) == 1)
    assert rep.status is Status.REACHED and rep.frontier_depth == 2


def test_d_loop_reaches_constant(mss6):
    rep = is_nullhomotopic_bounded(mss6, DigitalLoop(mss6, D_LOOP), SearchBudget(pad_len=10), strategy="greedy")
    assert rep.reached and rep.certificate.check().valid


def test_constant_loop_reached_immediately(mss6):
    rep = is_nullhomotopic_bounded(mss6, constant_loop(mss6, (0, 0, 1)), SearchBudget(pad_len=0))
    assert rep.reached and rep.frontier_depth == 0


def test_budget_exceeded_is_not_exhausted():
    f = catalog.build("LOOPHOLE_X").artifacts["loop"]
    rep = search_paths(f.image, pad(f, 12).seq, LOOP_PRESERVING, None, SearchBudget(max_states=50))
    assert rep.status is Status.BUDGET_EXCEEDED


@settings(max_examples=40)
@given(st.data())
def test_pruned_moves_match_brute_force(data):
    X = data.draw(images(n=2, max_size=5, hi=2))
    f = data.draw(loops(X, max_len=4))
    for mode in (ENDPOINT_FIXED, LOOP_PRESERVING):
        rs = loop_reachable_set(X, f, mode)
        assert set(rs.loops) == brute_closure(X, f.seq, mode)


@settings(max_examples=30)
@given(st.data())
def test_reachable_sets_are_closed_and_monotone(data):
    X = data.draw(images(n=2, max_size=5, hi=2))
    f = data.draw(loops(X, max_len=5))
    fixed = loop_reachable_set(X, f, ENDPOINT_FIXED)
    free = loop_reachable_set(X, f, LOOP_PRESERVING)
    assert set(fixed.loops) <= set(free.loops)
    g = DigitalLoop(X, data.draw(st.sampled_from(fixed.loops)))
    assert loop_reachable_set(X, g, ENDPOINT_FIXED).loops == fixed.loops


@settings(max_examples=30)
@given(st.data())
def test_reached_certificates_verify(data):
    X = data.draw(images(n=2, max_size=6, hi=2))
    f = data.draw(loops(X, max_len=6))
    rep = is_nullhomotopic_bounded(X, f, SearchBudget(max_states=20_000, pad_len=f.m + 2))
    if rep.reached:
        assert rep.certificate.check().valid


# self-map searches

def test_contractibility_examples():
    assert contractibility_search(DigitalImage([(0, 0)], "4")).frontier_depth == 0
    assert contractibility_search(DigitalImage(box((0, 1), (0, 1)), "4")).reached
    diamond = DigitalImage([(1, 0), (-1, 0), (0, 1), (0, -1)], "8")
    rep = contractibility_search(diamond)
    assert rep.reached and rep.certificate.rows[0] == diamond.points


def test_ring_is_not_contractible():
    # hole check needs the full 8-point ring, above the default cap
    rep = contractibility_search(RING8, cap=8)
    assert rep.status is Status.EXHAUSTED


def test_pointed_contraction_keeps_the_point():
    X = DigitalImage(box((0, 1), (0, 1)), "4")
    rep = contractibility_search(X, pointed_at=(1, 1))
    assert rep.reached
    col = X.points.index((1, 1))
    assert all(row[col] == (1, 1) for row in rep.certificate.rows)


def test_caps_are_enforced():
    with pytest.raises(CapExceeded):
        contractibility_search(catalog.mss6())
    with pytest.raises(CapExceeded):
        has_hole_direct(RING8)


def test_hole_examples():
    assert not has_hole_direct(DigitalImage([(0, 0)], "4"))
    assert not has_hole_direct(DigitalImage(box((0, 1), (0, 1)), "4"))
    assert find_hole(RING8, cap=8) == RING8.points


def test_no_hole_equivalence_examples():
    sample = [DigitalImage(P, "4") for P in connected_subsets(DigitalImage(box((0, 2), (0, 2)), "4")) if len(P) <= 5]
    assert len(sample) == 128
    assert no_hole_equiv_check(sample)
    star = catalog.build("MSC8ps").image
    assert no_hole_equiv_check([star])
    assert not has_hole_direct(star)
    assert no_hole_equiv_check([])


def test_connected_subsets_counts():
    X = DigitalImage(box((0, 1), (0, 1)), "4")
    subsets = list(connected_subsets(X))
    # 4 singletons, 4 edges, 4 paths of three, the whole square
    assert len(subsets) == 13
    assert all(len(components(DigitalImage(P, "4"))) == 1 for P in subsets)


# loopholes

def test_loophole_witness_on_punctured_cube():
    entry = catalog.build("LOOPHOLE_X")
    f = entry.artifacts["loop"]
    rep = has_loophole_bounded(entry.image, 8, loops=[f.seq])
    assert rep.witness == f and rep.sampled


def test_no_loophole_on_small_images():
    assert has_loophole_bounded(DigitalImage([(0, 0)], "4"), 8).witness is None
    rep = has_loophole_bounded(DigitalImage(box((0, 1), (0, 1)), "4"), 8)
    assert rep.witness is None and rep.complete


def test_mss6_sampled_loops_have_no_loophole(mss6):
    rng = random.Random(5)
    sample = [random_loop(mss6, rng.choice(mss6.points), 8, rng).seq for _ in range(40)]
    rep = has_loophole_bounded(mss6, 8, SearchBudget(max_states=200_000), loops=sample)
    assert rep.witness is None and rep.sampled


def test_ring_has_a_loophole():
    rep = has_loophole_bounded(RING8, 8)
    assert rep.witness is not None and len(set(rep.witness.seq)) == 8


def test_reduced_loops_are_reduced():
    X = DigitalImage(box((0, 1), (0, 1)), "8")
    for seq in reduced_loops(X, 5):
        body = seq[:-1]
        n = len(body)
        assert all(body[i] != body[(i + 1) % n] for i in range(n))
        assert all(body[i] != body[(i + 2) % n] for i in range(n))


@given(seed=st.integers(0, 10**6))
def test_random_loop_is_a_loop(seed):
    X = catalog.mss6()
    f = random_loop(X, (0, 0, 1), 15, random.Random(seed))
    assert f.basepoint == (0, 0, 1) and f.m <= 15

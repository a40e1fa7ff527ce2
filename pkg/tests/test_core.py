import itertools

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import images, points
from digitopo import catalog
from digitopo.catalog import C
from digitopo.core import (
    MAX_DIM,
    Adjacency,
    DigitalImage,
    DimensionError,
    NotInImageError,
    adjacent,
    boundary,
    box,
    components,
    is_continuous_map,
    neighborhood,
)


def brute_adjacent(x, y, u):
    """Direct reading of the c_u definition, kept separate from the library."""
    diffs = [abs(a - b) for a, b in zip(x, y)]
    changed = sum(1 for d in diffs if d == 1)
    return all(d <= 1 for d in diffs) and 1 <= changed <= u


# adjacency

@pytest.mark.parametrize("n,alias,u", [(1, "2", 1), (2, "4", 1), (2, "8", 2), (3, "6", 1), (3, "18", 2), (3, "26", 3)])
def test_aliases_resolve(n, alias, u):
    a = Adjacency.parse(alias, n)
    assert (a.n, a.u) == (n, u)
    assert a.alias == alias
    assert a.degree == int(alias)
    assert len(a.offsets()) == int(alias)


def test_dict_and_unknown_alias():
    assert Adjacency.parse({"u": 2}, 4) == Adjacency(4, 2)
    assert Adjacency(4, 2).alias is None
    with pytest.raises(ValueError):
        Adjacency.parse("8", 3)
    with pytest.raises(ValueError):
        Adjacency(2, 3)
    with pytest.raises(DimensionError):
        Adjacency(MAX_DIM + 1, 1)


def test_adjacent_examples():
    assert adjacent((0, 0, 0), (1, 1, 0), Adjacency(3, 2))
    assert not adjacent((0, 0), (1, 1), Adjacency(2, 1))
    assert adjacent((0, 0), (1, 1), Adjacency(2, 2))
    assert not adjacent((1, 2), (1, 2), Adjacency(2, 2))
    assert not adjacent((0, 0), (2, 0), Adjacency(2, 2))


def test_adjacent_dimension_mismatch():
    with pytest.raises(DimensionError):
        adjacent((0, 0), (0, 0, 1), Adjacency(2, 1))
    with pytest.raises(DimensionError):
        adjacent((0, 0), (0, 1), Adjacency(3, 1))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), points(n, -1, 1), points(n, -1, 1))))
def test_adjacent_matches_definition_symmetric_monotone(args):
    n, x, y = args
    for u in range(1, n + 1):
        a = Adjacency(n, u)
        assert adjacent(x, y, a) == brute_adjacent(x, y, u)
        assert adjacent(x, y, a) == adjacent(y, x, a)
        if u < n and adjacent(x, y, a):
            assert adjacent(x, y, Adjacency(n, u + 1))
    assert not adjacent(x, x, Adjacency(n, n))


# images

def test_image_rejects_duplicates_and_mixed_dimensions():
    with pytest.raises(ValueError):
        DigitalImage([(0, 0), (0, 0)], "4")
    with pytest.raises(DimensionError):
        DigitalImage([(0, 0), (0, 0, 0)], "4")
    with pytest.raises(ValueError):
        DigitalImage([], "4")


def test_image_points_sorted_and_immutable():
    X = DigitalImage([(1, 0), (0, 1), (0, 0)], "4")
    assert X.points == ((0, 0), (0, 1), (1, 0))
    with pytest.raises(AttributeError):
        X.points = ()


# neighborhoods and boundary

def test_neighborhood_of_c0_in_mss18(mss18):
    brute = {p for p in mss18.points if brute_adjacent(C[0], p, 2)}
    assert set(neighborhood(mss18, C[0])) == brute == {C[1], C[5], C[6], C[9]}


def test_mss18p_has_no_6_neighbors():
    X = catalog.mss18p("6")
    assert all(neighborhood(X, p) == () for p in X.points)


def test_neighborhood_errors_and_ambient(mss18):
    with pytest.raises(NotInImageError):
        neighborhood(mss18, (5, 5, 5))
    assert len(neighborhood(mss18, C[0], ambient=True)) == 18


@given(images())
def test_closed_minus_open_is_the_point(X):
    for p in X.points:
        assert set(neighborhood(X, p, closed=True)) - set(neighborhood(X, p)) == {p}


def test_boundary_of_cube():
    X = DigitalImage(box((0, 4), (0, 4), (0, 4)), "6")
    b = boundary(X)
    assert len(b) == 98
    assert all(any(c in (0, 4) for c in p) for p in b)


def test_boundary_small_cases():
    assert boundary(DigitalImage([(3, 3)], "8")) == ((3, 3),)
    sq = DigitalImage(box((0, 2), (0, 2)), "4")
    assert set(boundary(sq)) == set(sq.points) - {(1, 1)}


@given(st.integers(1, 3), st.integers(2, 3))
def test_boundary_of_box_is_extremal_faces(n, k):
    X = DigitalImage(box(*[(0, k)] * n), Adjacency(n, 1))
    assert set(boundary(X)) == {p for p in X.points if any(c in (0, k) for c in p)}


@given(images())
def test_boundary_subset(X):
    assert set(boundary(X)) <= set(X.points)


# components

def test_mss18_under_6_pairs_up(mss18):
    # the listed coordinates put c1,c2 / c4,c5 / c6,c7 / c8,c9 at unit distance
    comps = components(mss18.with_adjacency("6"))
    assert sorted(len(c) for c in comps) == [1, 1, 2, 2, 2, 2]
    assert {frozenset(c) for c in comps if len(c) == 2} == {
        frozenset({C[1], C[2]}), frozenset({C[4], C[5]}), frozenset({C[6], C[7]}), frozenset({C[8], C[9]})}


def test_mss18p_under_6_singletons():
    comps = components(catalog.mss18p("6"))
    assert len(comps) == 6 and all(len(c) == 1 for c in comps)


def test_mss6_connected(mss6):
    assert components(mss6) == [mss6.points]


def test_empty_image_has_no_components():
    assert components(DigitalImage([], Adjacency(2, 1))) == []


@given(images())
def test_components_partition_matches_networkx(X):
    comps = components(X)
    flat = [p for c in comps for p in c]
    assert sorted(flat) == list(X.points)
    assert [c[0] for c in comps] == sorted(c[0] for c in comps)
    G = nx.Graph()
    G.add_nodes_from(X.points)
    G.add_edges_from((p, q) for p, q in itertools.combinations(X.points, 2) if brute_adjacent(p, q, X.kappa.u))
    assert {frozenset(c) for c in comps} == {frozenset(c) for c in nx.connected_components(G)}


# continuity

def test_identity_and_constant_are_continuous(mss18):
    assert is_continuous_map({p: p for p in mss18.points}, mss18, mss18)
    assert is_continuous_map({p: C[4] for p in mss18.points}, mss18, mss18)


def test_clamp_on_mss18_minus_c3(mss18):
    X = mss18.subimage([p for p in mss18.points if p != C[3]])
    q1 = {p: (p[0], min(p[1], 1), p[2]) for p in X.points}
    assert is_continuous_map(q1, X, mss18)


def test_continuity_errors(mss18):
    with pytest.raises(NotInImageError):
        is_continuous_map({p: (9, 9, 9) for p in mss18.points}, mss18, mss18)
    with pytest.raises(NotInImageError):
        is_continuous_map({}, mss18, mss18)


def test_discontinuous_map(mss18):
    f = {p: p for p in mss18.points}
    f[C[0]] = C[3]
    assert not is_continuous_map(f, mss18, mss18)


@st.composite
def box_self_maps(draw):
    """Compositions of coordinate clamps and a swap: continuous self-maps of a square box."""
    ops = draw(st.lists(st.tuples(st.sampled_from(["min", "max", "swap"]), st.integers(0, 1), st.integers(0, 3)),
                        max_size=4))

    def f(p):
        for kind, axis, t in ops:
            if kind == "swap":
                p = (p[1], p[0])
            else:
                v = min(p[axis], t) if kind == "min" else max(p[axis], t)
                p = p[:axis] + (v,) + p[axis + 1:]
        return p

    return f


@given(st.sampled_from(["4", "8"]), box_self_maps(), box_self_maps(), st.data())
def test_continuity_closed_under_composition(adj, f, g, data):
    X = DigitalImage(box((0, 3), (0, 3)), adj)
    F = {p: f(p) for p in X.points}
    G = {p: g(p) for p in X.points}
    assert is_continuous_map(F, X, X) and is_continuous_map(G, X, X)
    assert is_continuous_map({p: G[F[p]] for p in X.points}, X, X)
    # random maps too: whenever both happen to be continuous, so is the composite
    R = {p: data.draw(st.sampled_from(X.points)) for p in X.points}
    if is_continuous_map(R, X, X):
        assert is_continuous_map({p: R[F[p]] for p in X.points}, X, X)

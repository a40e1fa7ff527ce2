import itertools

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import images
from digitopo import catalog
from digitopo.core import DigitalImage, box
from digitopo.euler import (
    DISK_CHI,
    DigitalDisk,
    boundary_curve_chi,
    cliques,
    connected_sum_chi,
    euler_characteristic,
    is_isomorphic,
    simplex_census,
)


def naive_alpha(X):
    """Check every subset for pairwise adjacency; only for small images."""
    counts = []
    for k in range(1, len(X) + 1):
        c = sum(1 for S in itertools.combinations(X.points, k) if all(X.adjacent(p, q) for p, q in itertools.combinations(S, 2)))
        if c == 0:
            break
        counts.append(c)
    return tuple(counts)


def graph(X):
    G = nx.Graph()
    G.add_nodes_from(X.points)
    G.add_edges_from(X.edges())
    return G


# census values

@pytest.mark.parametrize("id_,alpha,chi", [
    ("MSC8s", (8, 17, 12, 2), 1),
    ("MSC8ps", (5, 8, 4), 1),
    ("MSC4s", (9, 12), -3),
    ("MSS_18", (10, 20, 8), -2),
])
def test_catalog_census(id_, alpha, chi):
    c = simplex_census(catalog.build(id_).image)
    assert c.alpha == alpha and c.chi == chi


def test_msc8s_legacy_value_differs():
    c = simplex_census(catalog.build("MSC8s").image)
    assert c.legacy_vef == 3 and c.differs
    assert c.to_json() == {"alpha": [8, 17, 12, 2], "chi": 1, "legacy_vef": 3, "differs": True}
    assert not simplex_census(catalog.build("MSC4s").image).differs


def test_sphere_values():
    assert euler_characteristic(catalog.mss18p()) == 2
    assert euler_characteristic(catalog.mss6()) == -22
    assert euler_characteristic(catalog.mss6_sharp()) == -38
    assert euler_characteristic(catalog.mss18_sharp()) == -6


def test_mss18_faces_are_the_listed_triangles():
    found = {frozenset(c) for c in cliques(catalog.mss18(), 3)}
    assert found == {frozenset(catalog.C[i] for i in tri) for tri in catalog.MSS18_FACES}


def test_single_point_and_pair():
    assert simplex_census(DigitalImage([(0, 0)], "4")).alpha == (1,)
    assert simplex_census(DigitalImage([(0, 0), (0, 1)], "4")).alpha == (2, 1)


@settings(max_examples=80)
@given(images(max_size=12))
def test_census_matches_naive_count(X):
    assert simplex_census(X).alpha == naive_alpha(X)


@given(images())
def test_census_matches_networkx_cliques(X):
    c = simplex_census(X)
    assert c.alpha[0] == len(X)
    assert (c.alpha[1] if len(c.alpha) > 1 else 0) == len(X.edges())
    biggest = max(len(k) for k in nx.find_cliques(graph(X)))
    assert c.dimension == biggest - 1


def test_no_triangles_under_four_adjacency():
    X = DigitalImage(box((0, 3), (0, 3)), "4")
    c = simplex_census(X)
    assert len(c.alpha) == 2 and c.alpha[1] == 24


# connected sums

def test_connected_sum_formula():
    assert connected_sum_chi(-2, -2, "MSC8ps") == -6
    assert connected_sum_chi(-22, -22, "MSC4s") == -38
    assert connected_sum_chi(0, 0, "MSC8s") == -2
    assert connected_sum_chi(1, 1, catalog.disk_msc4s()) == 8
    with pytest.raises(ValueError):
        connected_sum_chi(0, 0, "MSC6")


def test_connected_sum_agrees_with_direct_census():
    chi6, chi18 = euler_characteristic(catalog.mss6()), euler_characteristic(catalog.mss18())
    assert connected_sum_chi(chi6, chi6, "MSC4s") == euler_characteristic(catalog.mss6_sharp())
    assert connected_sum_chi(chi18, chi18, "MSC8ps") == euler_characteristic(catalog.mss18_sharp())


@pytest.mark.parametrize("make", [catalog.disk_msc8s, catalog.disk_msc8ps, catalog.disk_msc4s])
def test_disk_curves_have_zero_chi(make):
    disk = make()
    assert boundary_curve_chi(disk) == 0
    assert euler_characteristic(disk.image) == DISK_CHI[disk.kind]


def test_disk_validation():
    line = DigitalImage([(0, 0), (0, 1), (0, 2)], "4")
    with pytest.raises(ValueError):
        DigitalDisk(line, frozenset(), "MSC4s")
    ring = catalog.disk_msc4s().curve
    with pytest.raises(ValueError):
        DigitalDisk(ring, frozenset({(0, 0)}), "MSC4s")
    with pytest.raises(ValueError):
        DigitalDisk(ring, frozenset(), "square")


# isomorphism

def test_isomorphism_examples():
    a = DigitalImage([(0, 0), (0, 1), (0, 2)], "4")
    b = DigitalImage([(5, 5), (6, 6), (7, 7)], "8")
    m = is_isomorphic(a, b)
    assert m is not None and m[(0, 1)] == (6, 6)
    assert is_isomorphic(a, DigitalImage([(0, 0), (0, 1), (1, 0)], "8")) is None
    assert is_isomorphic(catalog.mss18p(), catalog.mss18p("26")) is not None
    assert is_isomorphic(catalog.build("MSC8ps").image, catalog.build("MSC4s").image) is None


def test_shifted_image_is_isomorphic(mss6):
    shifted = DigitalImage([tuple(c + 3 for c in p) for p in mss6.points], "6")
    m = is_isomorphic(mss6, shifted)
    assert m is not None
    assert all(shifted.adjacent(m[p], m[q]) for p, q in mss6.edges())


@settings(max_examples=60)
@given(images(max_size=7), images(max_size=7))
def test_isomorphism_matches_networkx(X, Y):
    m = is_isomorphic(X, Y)
    assert (m is not None) == nx.is_isomorphic(graph(X), graph(Y))
    if m is not None:
        assert sorted(m.values()) == list(Y.points)
        assert all(Y.adjacent(m[p], m[q]) == X.adjacent(p, q) for p, q in itertools.combinations(X.points, 2))
        assert simplex_census(X) == simplex_census(Y)

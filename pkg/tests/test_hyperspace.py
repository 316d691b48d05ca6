from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from continuum_lab.errors import InputError
from continuum_lab.gridspace import GridComplex
from continuum_lab.hyperspace import (Box, FiniteMetricSpace, connected_closed_sets, cover_degree,
                                      essential_to_cube_map, grid_box_cover, hausdorff_distance,
                                      mesh_bound, order_chain, small_mesh_witness, subset_masks,
                                      whitney_levels, whitney_map)
from continuum_lab.wallman import FiniteSpace

import oracles

F = Fraction


@st.composite
def metric_spaces(draw, max_points=6):
    """Points of the plane with the l1 metric (exact and always a metric)."""
    pts = draw(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)),
                        min_size=1, max_size=max_points, unique=True))
    d = [[F(abs(a[0] - b[0]) + abs(a[1] - b[1])) for b in pts] for a in pts]
    return FiniteMetricSpace([f"p{i}" for i in range(len(pts))], d)


def test_metric_examples_and_errors():
    M = FiniteMetricSpace.line([0, 1, 2])
    assert hausdorff_distance([0], [0, 2], M) == 2
    assert M.diameter([0, 2]) == 2
    assert FiniteMetricSpace.from_json(M.to_json()).d == M.d
    with pytest.raises(InputError) as e:
        FiniteMetricSpace.from_json({"points": ["a", "b"], "distances": [["0", "1"], ["2", "0"]]})
    assert e.value.path == "/distances/0/1"
    with pytest.raises(InputError, match="triangle"):
        FiniteMetricSpace(["a", "b", "c"], [[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    with pytest.raises(InputError, match="nonempty"):
        hausdorff_distance([], [0], M)


def test_grid_metric():
    M = FiniteMetricSpace.from_grid(GridComplex(2, 3))
    assert M.diameter(M.points) == 1
    assert M.dist((0, 0), (1, 1)) == F(1, 2)


@given(metric_spaces())
def test_hausdorff_axioms_and_oracle(M):
    n = len(M)
    subs = list(subset_masks(n))[:40]
    for A in subs:
        a = [M.points[i] for i in A]
        assert hausdorff_distance(a, a, M) == 0
    for A, B in combinations(subs, 2):
        a, b = [M.points[i] for i in A], [M.points[i] for i in B]
        h = hausdorff_distance(a, b, M)
        assert h > 0 and h == hausdorff_distance(b, a, M)
        assert h == oracles.hausdorff(M.d, A, B)
        assert abs(M.diameter(a) - M.diameter(b)) <= 2 * h
    for A, B, C in list(combinations(subs, 3))[:200]:
        pa, pb, pc = ([M.points[i] for i in S] for S in (A, B, C))
        assert hausdorff_distance(pa, pc, M) <= hausdorff_distance(pa, pb, M) + hausdorff_distance(pb, pc, M)


@given(metric_spaces(max_points=7))
def test_whitney_map_is_whitney(M):
    mu = whitney_map(M)
    v = mu.verify()
    assert v["singletons_zero"] and v["whole_is_one"] == True  # noqa: E712
    assert v["monotone"] and v["exhaustive"]


def test_whitney_examples():
    M = FiniteMetricSpace.line([0, 1, 2])
    mu = whitney_map(M)
    assert mu([0, 1]) == F(1, 4) and mu([0, 1, 2]) == 1 and mu([1]) == 0
    single = FiniteMetricSpace(["a"], [[0]])
    assert whitney_map(single).verify()["whole_is_one"]


def test_whitney_levels():
    X = GridComplex(1, 4)
    band = whitney_levels(X, None, 0, 0)
    assert len(band.sets) == 4 and band.covers and band.overlap_count == 0
    top = whitney_levels(X, None, 1, 0)
    assert [s for s, _ in top.sets] == [tuple(X.cells)]
    mid = whitney_levels(X, None, F(1, 4), F(1, 4))
    assert not mid.to_json()["pairwise_disjoint"]
    assert mesh_bound(mid.eta, 2) == mid.eta / 8
    with pytest.raises(InputError):
        mesh_bound(1, 0)


def test_connected_sets_count():
    # connected subsets of a 2x2 grid with corner adjacency: every nonempty subset
    assert len(connected_closed_sets(GridComplex(2, 2))) == 15
    assert len(connected_closed_sets(GridComplex(1, 4))) == 10


@given(st.sets(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=1))
def test_connected_sets_match_oracle(cells):
    X = GridComplex(2, 3, cells)
    got = {frozenset(s) for s in connected_closed_sets(X)}
    want = set()
    items = sorted(cells)
    for k in range(1, len(items) + 1):
        for S in combinations(items, k):
            if len(oracles.components(X, S, "closed")) == 1:
                want.add(frozenset(S))
    assert got == want


def test_order_chain():
    oc = order_chain(GridComplex(1, 3), (1,))
    assert len(oc.sets) == 4 and not oc.is_chain
    assert oc.witness == (((0,), (1,)), ((1,), (2,)))
    oc = order_chain(FiniteSpace.discrete("ab"), "a")
    assert oc.is_chain and oc.sets == [("a",)]


def test_cover_degree_examples():
    assert cover_degree(grid_box_cover(3, 3)).max_degree == 26
    for l in (3, 4, 7):
        assert cover_degree(grid_box_cover(1, l)).max_degree == 2
    assert cover_degree([{1, 2}, {2, 3}, {4}]).max_degree == 1


@settings(max_examples=30)
@given(st.integers(1, 4), st.integers(1, 5))
def test_cover_degree_bound(d, l):
    if l ** d > 1000:
        return
    deg = cover_degree(grid_box_cover(d, l)).max_degree
    assert deg <= 3 ** d - 1
    assert deg == min(l, 3) ** d - 1


def test_box_meets():
    a = Box(((F(0), F(1, 2)),))
    b = Box(((F(1, 2), F(1)),))
    assert a.meets(b) and not a.meets(Box(((F(3, 4), F(1)),)))


def test_small_mesh():
    X = GridComplex(2, 6)
    N = [[(0, 0)], [(5, 5)], [(0, 5)], [(5, 0)]]
    r = small_mesh_witness(X, N, "essential")
    assert r.diameter == 1 and r.components == 1 and not r.artifact
    with pytest.raises(InputError) as e:
        small_mesh_witness(X, [[(0, 0), (4, 0)]])
    assert e.value.path == "/N/0"
    with pytest.raises(InputError, match="not disjoint"):
        small_mesh_witness(X, [[(0, 0)], [(1, 1)]])
    # cutting all the way across leaves only narrow pieces
    X = GridComplex(1, 5)
    r = small_mesh_witness(X, [[(2,)]], "essential")
    assert r.component is None and r.artifact


def test_cube_map():
    X = GridComplex(1, 5)
    m = essential_to_cube_map(X, [X.face_pairs()[0]])
    assert [m.functions[0][(i,)] for i in range(5)] == [0, F(1, 4), F(1, 2), F(3, 4), 1]
    assert m.preimages[0] == frozenset({(2,)}) and m.ok
    bad = essential_to_cube_map(X, [X.face_pairs()[0]], partitions=[[]])
    assert bad.checks == [{"L_separates_faces": False, "preimage_separates": False}]
    X = GridComplex(2, 5)
    assert essential_to_cube_map(X, X.face_pairs()).ok

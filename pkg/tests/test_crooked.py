import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from continuum_lab.crooked import (HALF, STRIP, T0, T1, CrookedPartition, bing_construction,
                                   bing_partition, chicane_from_maps, chicane_search,
                                   coordinate_function, crooked_partition, dilate)
from continuum_lab.errors import ConstructionError, InputError
from continuum_lab.gridspace import GridComplex, is_partition_between
from continuum_lab.wallman import FiniteSpace

from helpers import maps_for, random_pliable

F = Fraction
P = crooked_partition()


def test_default_geometry_invariants():
    rep = P.report((14, 28))
    assert rep["ok"]
    assert set(rep["invariants"]) == {"separation", "closures_disjoint", "strip", "edges", "thresholds"}
    assert rep["thresholds"] == ["5/14", "9/14"]
    assert (T0, T1, STRIP) == (F(5, 14), F(9, 14), (F(1, 7), F(6, 7)))


def test_regions_and_sections():
    assert P.region(0, HALF) == "M0" and P.region(1, HALF) == "M1"
    assert P.region(F(3, 14), 0) == "P"
    assert P.horizontal_section(0) == [(F(1, 7), F(2, 7))]
    assert P.horizontal_section(1) == [(F(5, 7), F(6, 7))]
    assert all(a > HALF for a, _ in P.vertical_section(T0))
    assert all(b < HALF for _, b in P.vertical_section(T1))
    assert P.slices(T0) == (0, 1) and P.slices(F(1, 2)) == (1,) and P.slices(F(6, 7)) == (2,)
    with pytest.raises(InputError):
        P.region(2, 0)


@given(st.fractions(0, 1, max_denominator=56), st.fractions(0, 1, max_denominator=56))
def test_region_is_exhaustive(x, y):
    r = P.region(x, y)
    assert r in ("P", "M0", "M1")
    assert (r == "P") == P.contains(x, y)
    if x < STRIP[0]:
        assert r == "M0"
    if x > STRIP[1]:
        assert r == "M1"


def test_geometry_override_and_rejection():
    data = P.to_json()
    assert CrookedPartition.from_json(data) == P
    with pytest.raises(InputError, match="five rectangles"):
        CrookedPartition.from_json({"rectangles": data["rectangles"][:4]})
    bad = {"rectangles": data["rectangles"][:4] + [{"x": ["5/7", "1"], "y": ["1/7", "1"]}]}
    with pytest.raises(InputError, match="fails: .*strip"):
        crooked_partition(CrookedPartition.from_json(bad))
    with pytest.raises(InputError):
        P.grid_cells(10)


def test_grid_separation():
    for res in (14, 28, 42):
        assert P.grid_separation(res)


def _pgrid_example():
    cells = P.grid_cells(14)
    X = GridComplex(2, 14, cells)
    C = [c for c in cells if c[1] == 0]
    D = [c for c in cells if c[1] == 13]
    f, g = coordinate_function(X, 1), coordinate_function(X, 0)
    for c in C:
        f[c] = F(0)
    for c in D:
        f[c] = F(1)
    Fs = [c for c in cells if c[1] >= 9 and c[1] != 13]
    G = [c for c in cells if c[1] <= 4 and c[1] != 0]
    return X, (C, D, Fs, G), f, g


def test_chicane_from_maps_pgrid():
    X, four, f, g = _pgrid_example()
    ch = chicane_from_maps(X, four, f, g)
    assert all(ch.conditions(X.cells).values())
    assert ch.geometric
    assert set(four[0]) <= ch.X0 and set(four[1]) <= ch.X2


def test_chicane_from_maps_constant():
    X = GridComplex(1, 4)
    zero = {c: F(0) for c in X.cells}
    g = {c: F(1, 7) for c in X.cells}
    ch = chicane_from_maps(X, ([(0,)], [], [], []), zero, g)
    assert ch.X0 == frozenset(X.cells) and not ch.X1 and not ch.X2


def test_chicane_from_maps_errors():
    X, four, f, g = _pgrid_example()
    g2 = dict(g)
    g2[four[0][0]] = F(1)
    with pytest.raises(InputError, match="image outside P"):
        chicane_from_maps(X, four, f, g2)
    f2 = dict(f)
    f2[four[1][0]] = F(1, 2)
    with pytest.raises(InputError, match="D_one"):
        chicane_from_maps(X, four, f2, g)
    with pytest.raises(InputError, match="not pliable"):
        chicane_from_maps(X, (four[0], four[1], four[0], []), f, g)


@settings(max_examples=40)
@given(st.integers(1, 2), st.integers(2, 8), st.integers(0, 2**32))
def test_chicane_from_maps_random(dim, res, seed):
    rng = random.Random(seed)
    X = GridComplex(dim, res)
    four = random_pliable(X, rng)
    f, g = maps_for(X, four, P, rng)
    ch = chicane_from_maps(X, four, f, g)
    assert all(ch.conditions(X.cells).values())


def test_chicane_search_grid():
    X = GridComplex(2, 2)
    r = chicane_search(X, ([(0, 1)], [(1, 0)], [(1, 1)], [(0, 0)]))
    assert not r.found and r.certificate["exhaustive"]
    X = GridComplex(1, 5)
    r = chicane_search(X, ([(0,)], [(4,)], [], []))
    assert r.found and r.chicane.geometric
    r = chicane_search(GridComplex(2, 4), ([(0, 0)], [(3, 3)], [(3, 0)], [(0, 3)]), budget=1)
    assert not r.found and not r.certificate["exhaustive"]


def test_chicane_search_space():
    S = FiniteSpace.discrete("abcd")
    r = chicane_search(S, (["a"], ["b"], ["c"], ["d"]))
    assert r.found and all(r.chicane.conditions(S.points).values())
    # a space where the last closed pair fails: no chicane
    S = FiniteSpace.from_sets("abc", [["a"], ["b"], ["a", "b"]])
    r = chicane_search(S, (["a"], ["b"], ["b"], ["a"]))
    assert r.found is False or all(r.chicane.conditions(S.points).values())
    with pytest.raises(InputError, match="not pliable"):
        chicane_search(S, (["a"], ["a"], [], []))
    with pytest.raises(InputError, match="not a closed set"):
        chicane_search(S, (["c"], ["a"], [], []))


def test_bing_construction():
    X = GridComplex(2, 14)
    assert bing_construction(0, X, []).cells == frozenset(X.cells)
    r = bing_construction(1, X, [coordinate_function(X, 1)])
    assert r.cells == P.grid_cells(14) and r.ok
    with pytest.raises(InputError, match="divisible by 14"):
        bing_construction(1, GridComplex(2, 10), [coordinate_function(GridComplex(2, 10), 1)])


def test_bing_construction_k2():
    X = GridComplex(4, 14)
    r = bing_construction(2, X, [coordinate_function(X, 1), coordinate_function(X, 3)])
    assert r.cells and r.partition_checks == [True, True]


def test_bing_partition():
    X = GridComplex(2, 14)
    F0, F1 = X.face(0, 0), X.face(0, 1)
    fs = [coordinate_function(X, 1)] * 3
    r0 = bing_partition(X, F0, F1, fs, 0)
    assert not r0.checks["partition"]
    r1 = bing_partition(X, F0, F1, fs, 1)
    assert r1.ok and r1.cell_partition
    r2 = bing_partition(X, F0, F1, fs, 2)
    assert r2.ok
    assert r2.chain0[0] == F0 and r2.chain1[0] == F1
    for i in range(2):
        assert dilate(X, r2.chain0[i]) <= r2.chain0[i + 1]
        assert dilate(X, r2.chain1[i]) <= r2.chain1[i + 1]
    with pytest.raises(ConstructionError) as e:
        bing_partition(X, F0, F1, fs, 3)
    assert e.value.step == 2
    with pytest.raises(InputError):
        bing_partition(X, F0, F0, fs, 1)


def test_bing_partition_one_step_is_pgrid_complement():
    X = GridComplex(2, 14)
    r = bing_partition(X, X.face(0, 0), X.face(0, 1), [coordinate_function(X, 1)], 1)
    assert is_partition_between(X, r.L, X.face(0, 0), X.face(0, 1))

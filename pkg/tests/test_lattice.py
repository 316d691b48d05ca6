from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from continuum_lab.errors import CapExceeded, InputError
from continuum_lab.lattice import (FiniteLattice, SetLattice, atoms, chain, diamond,
                                   generate_set_lattice, is_disjunctive, is_distributive,
                                   is_power_set, pentagon, power_set, validate_lattice)


def two():
    return chain(2)


def test_two_element_lattice_ok():
    assert validate_lattice(two()).ok


def test_planted_commutativity_defect():
    lat = chain(3)
    meet = [list(r) for r in lat.meet]
    meet[0][1] = 1                         # 0 ^ m = m but m ^ 0 = 0
    rep = validate_lattice(lat.elements, meet, lat.join, "0", "1")
    assert not rep.ok
    v = [x for x in rep.violations if x.axiom == "commutativity of meet"]
    assert v and set(v[0].witness) == {"0", "m"}


def test_diamond_is_a_lattice_but_not_distributive():
    m3 = diamond()
    assert validate_lattice(m3).ok
    d = is_distributive(m3)
    assert not d
    x, y, z = (m3.index(e) for e in d.witness)
    # oracle: the witness really violates distributivity
    assert m3.meet[x][m3.join[y][z]] != m3.join[m3.meet[x][y]][m3.meet[x][z]]
    assert set(d.witness) == {"a", "b", "c"}


def test_distributive_examples():
    assert is_distributive(power_set([1, 2]).lattice)
    assert is_distributive(chain(3))
    assert not is_distributive(pentagon())


def test_disjunctive_examples():
    assert is_disjunctive(power_set([1, 2, 3]).lattice)
    v = is_disjunctive(chain(3))
    assert not v and v.witness == ("1", "m")
    sl = SetLattice.from_json({"universe": [1, 2], "members": [[], [1], [1, 2]]})
    v = is_disjunctive(sl.lattice)
    assert not v and v.witness == ("{1,2}", "{1}")


def test_atoms():
    assert sorted(atoms(power_set([1, 2, 3]).lattice)) == ["{1}", "{2}", "{3}"]
    assert atoms(chain(3)) == ["m"]
    assert atoms(two()) == ["1"]


def test_generate_set_lattice_examples():
    assert generate_set_lattice([1, 2], []).members() == [frozenset(), frozenset({1, 2})]
    assert len(generate_set_lattice([1, 2, 3], [[1], [2], [3]])) == 8
    g = generate_set_lattice([1, 2, 3], [[1, 2], [2, 3]])
    assert sorted(map(sorted, g.members())) == sorted([[], [2], [1, 2], [2, 3], [1, 2, 3]])
    with pytest.raises(InputError):
        generate_set_lattice([1, 2], [[3]])


def test_generate_cap():
    with pytest.raises(CapExceeded):
        generate_set_lattice(range(6), [[i] for i in range(6)], cap=20)


def test_input_errors():
    with pytest.raises(InputError, match="duplicate"):
        validate_lattice(["0", "0"], [[0, 0], [0, 0]], [[0, 0], [0, 0]], 0, 0)
    lat = chain(3)
    with pytest.raises(InputError) as exc:
        FiniteLattice.from_json({**lat.to_json(), "meet": lat.to_json()["meet"][:2]})
    assert exc.value.path == "/meet/2"


def test_json_round_trip():
    lat = diamond()
    assert FiniteLattice.from_json(lat.to_json()) == lat
    sl = power_set("ab")
    assert SetLattice.from_json(sl.to_json()).masks == sl.masks


def test_degenerate_lattice_accepted():
    lat = FiniteLattice.from_tables(["e"], [["e"]], [["e"]], "e", "e")
    assert lat.is_degenerate() and validate_lattice(lat).ok and is_distributive(lat)


@st.composite
def set_lattices(draw):
    n = draw(st.integers(1, 5))
    gens = draw(st.lists(st.sets(st.integers(0, n - 1)), max_size=5))
    return generate_set_lattice(range(n), gens)


@given(set_lattices())
def test_set_lattices_are_distributive_lattices(sl):
    lat = sl.lattice
    assert validate_lattice(lat).ok
    assert is_distributive(lat)


@given(st.integers(1, 5))
def test_atoms_of_singleton_generated(n):
    sl = generate_set_lattice(range(n), [[i] for i in range(n)])
    assert sorted(atoms(sl.lattice)) == sorted("{%d}" % i for i in range(n))


@given(set_lattices())
def test_distributive_disjunctive_is_power_set(sl):
    lat = sl.lattice
    if is_disjunctive(lat):
        assert is_power_set(lat)
        ats = lat.atom_indices
        rep = {x: frozenset(a for a in ats if lat.leq(a, x)) for x in range(len(lat))}
        assert len(set(rep.values())) == len(lat)
        for x, y in product(range(len(lat)), repeat=2):
            assert rep[lat.meet[x][y]] == rep[x] & rep[y]
            assert rep[lat.join[x][y]] == rep[x] | rep[y]


def test_validate_matches_brute_force_on_random_tables():
    rng = np.random.default_rng(3)
    for _ in range(40):
        n = 3
        m = rng.integers(0, n, (n, n)).tolist()
        j = rng.integers(0, n, (n, n)).tolist()
        rep = validate_lattice(list("abc"), m, j, 0, 2)
        comm = all(m[x][y] == m[y][x] for x in range(n) for y in range(n))
        if not comm:
            assert "commutativity of meet" in rep.axioms()
        idem = all(m[x][x] == x for x in range(n))
        assert ("idempotence of meet" in rep.axioms()) == (not idem)

"""Finite bounded lattices stored as explicit meet/join tables.

Element identifiers are opaque strings at the interface and dense integers
internally; the order of ``elements`` fixes the integer assignment.  The
one-element lattice (bottom == top) is accepted everywhere: it is the
closed-set lattice of the empty space.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Hashable, Iterable, Sequence

import numpy as np

from . import kernels
from .errors import CapExceeded, InputError

MAX_ELEMENTS = 4096


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple

    def to_json(self):
        return {"axiom": self.axiom, "witness": list(self.witness)}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def axioms(self):
        return [v.axiom for v in self.violations]


@dataclass(frozen=True)
class Verdict:
    """A yes/no answer with an optional witness; truthiness follows ``holds``."""

    holds: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    elements: tuple
    meet: tuple
    join: tuple
    bottom: int
    top: int

    def __eq__(self, other):
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return (self.elements, self.meet, self.join, self.bottom, self.top) == (
            other.elements, other.meet, other.join, other.bottom, other.top)

    def __hash__(self):
        return hash((self.elements, self.meet, self.join, self.bottom, self.top))

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FiniteLattice({len(self)} elements: {', '.join(self.elements[:8])}{'...' if len(self) > 8 else ''})"

    @classmethod
    def from_tables(cls, elements, meet, join, bottom, top, check=True) -> "FiniteLattice":
        """Build from element ids and tables whose entries are ids or indices.

        With ``check`` the lattice axioms are verified and a failing report
        raises :class:`InputError`.
        """
        names, m, j, b, t = _coerce(elements, meet, join, bottom, top)
        lat = cls(names, m, j, b, t)
        if check:
            report = _validate(lat)
            if not report.ok:
                first = report.violations[0]
                raise InputError(f"not a lattice: {first.axiom} fails at {first.witness}")
        return lat

    @classmethod
    def from_json(cls, data: dict) -> "FiniteLattice":
        for key in ("elements", "meet", "join", "bottom", "top"):
            if key not in data:
                raise InputError(f"missing key {key!r}", f"/{key}")
        return cls.from_tables(data["elements"], data["meet"], data["join"],
                               data["bottom"], data["top"])

    def to_json(self) -> dict:
        e = self.elements
        return {
            "elements": list(e),
            "meet": [[e[v] for v in row] for row in self.meet],
            "join": [[e[v] for v in row] for row in self.join],
            "bottom": e[self.bottom],
            "top": e[self.top],
        }

    @cached_property
    def meet_array(self) -> np.ndarray:
        return np.array(self.meet, dtype=np.int32).reshape(len(self), len(self))

    @cached_property
    def join_array(self) -> np.ndarray:
        return np.array(self.join, dtype=np.int32).reshape(len(self), len(self))

    @cached_property
    def _index(self):
        return {name: i for i, name in enumerate(self.elements)}

    def index(self, name) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown element {name!r}") from None

    def leq(self, x: int, y: int) -> bool:
        return self.meet[x][y] == x

    @cached_property
    def down_masks(self) -> tuple:
        """Bitmask of ``{y : y <= x}`` for every x."""
        n = len(self)
        return tuple(sum(1 << y for y in range(n) if self.meet[y][x] == y) for x in range(n))

    @cached_property
    def atom_indices(self) -> tuple:
        b = self.bottom
        nonzero = [x for x in range(len(self)) if x != b]
        return tuple(x for x in nonzero
                     if not any(y != x and self.leq(y, x) for y in nonzero))

    def is_degenerate(self) -> bool:
        return self.bottom == self.top


def _coerce(elements, meet, join, bottom, top):
    names = tuple(str(e) for e in elements)
    if not names:
        raise InputError("a lattice needs at least one element", "/elements")
    if len(set(names)) != len(names):
        dup = next(x for x in names if names.count(x) > 1)
        raise InputError(f"duplicate element id {dup!r}", "/elements")
    if len(names) > MAX_ELEMENTS:
        raise CapExceeded(f"{len(names)} elements exceeds the cap of {MAX_ELEMENTS}")
    index = {name: i for i, name in enumerate(names)}
    n = len(names)

    def entry(value, path):
        if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
            if 0 <= value < n:
                return int(value)
        elif str(value) in index:
            return index[str(value)]
        raise InputError(f"unknown element {value!r}", path)

    def table(rows, key):
        if not isinstance(rows, Sequence) or isinstance(rows, str) or len(rows) != n:
            got = len(rows) if isinstance(rows, Sequence) else "?"
            raise InputError(f"{key} table must have {n} rows, got {got}",
                             f"/{key}/{min(got, n) if isinstance(got, int) else 0}")
        out = []
        for i, row in enumerate(rows):
            if not isinstance(row, Sequence) or isinstance(row, str) or len(row) != n:
                raise InputError(f"{key} row {i} must have {n} entries", f"/{key}/{i}")
            out.append(tuple(entry(v, f"/{key}/{i}/{k}") for k, v in enumerate(row)))
        return tuple(out)

    return names, table(meet, "meet"), table(join, "join"), entry(bottom, "/bottom"), entry(top, "/top")


def validate_lattice(elements, meet=None, join=None, bottom=None, top=None) -> ValidationReport:
    """Check every bounded-lattice axiom; each violation carries its first witness.

    Accepts either a :class:`FiniteLattice` or raw tables.  Non-total tables
    and duplicate ids raise :class:`InputError` instead of being reported.
    """
    if isinstance(elements, FiniteLattice):
        lat = elements
    else:
        lat = FiniteLattice(*_coerce(elements, meet, join, bottom, top))
    return _validate(lat)


def _validate(lat: FiniteLattice) -> ValidationReport:
    n, names = len(lat), lat.elements
    m, j = lat.meet_array, lat.join_array
    idx = np.arange(n)
    found = []

    def first_pair(mask):
        hits = np.argwhere(mask)
        return tuple(names[int(v)] for v in hits[0]) if len(hits) else None

    def record(axiom, witness):
        if witness is not None:
            found.append(Violation(axiom, witness))

    for op, t in (("meet", m), ("join", j)):
        record(f"commutativity of {op}", first_pair(t != t.T))
        w = kernels.assoc_violation(t)
        record(f"associativity of {op}", None if w is None else tuple(names[v] for v in w))
        bad = np.flatnonzero(t[idx, idx] != idx)
        record(f"idempotence of {op}", (names[bad[0]],) if len(bad) else None)
    # x ^ (x v y) = x and x v (x ^ y) = x
    record("absorption of meet over join", first_pair(m[idx[:, None], j] != idx[:, None]))
    record("absorption of join over meet", first_pair(j[idx[:, None], m] != idx[:, None]))
    b, t = lat.bottom, lat.top
    for axiom, bad in (("bottom absorbs in meet", m[b] != b),
                       ("bottom is neutral for join", j[b] != idx),
                       ("top absorbs in join", j[t] != t),
                       ("top is neutral for meet", m[t] != idx)):
        hits = np.flatnonzero(bad)
        record(axiom, (names[hits[0]],) if len(hits) else None)
    leq = m == idx[:, None]  # leq[x, y] iff x ^ y = x
    record("antisymmetry of order", first_pair(leq & leq.T & (idx[:, None] != idx[None, :])))
    reach = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
    bad = np.argwhere(reach & ~leq)
    if len(bad):
        x, z = (int(v) for v in bad[0])
        y = next(y for y in range(n) if leq[x, y] and leq[y, z])
        record("transitivity of order", (names[x], names[y], names[z]))
    return ValidationReport(tuple(found))


def is_distributive(lat: FiniteLattice) -> Verdict:
    w = kernels.distrib_violation(lat.meet_array, lat.join_array)
    if w is None:
        return Verdict(True)
    return Verdict(False, tuple(lat.elements[v] for v in w))


def is_disjunctive(lat: FiniteLattice) -> Verdict:
    """``a !<= b`` must admit a nonzero ``c <= a`` with ``c ^ b = 0``."""
    n, b0 = len(lat), lat.bottom
    m = lat.meet
    for a in range(n):
        below_a = [c for c in range(n) if c != b0 and m[c][a] == c]
        for b in range(n):
            if m[a][b] == a:
                continue
            if not any(m[c][b] == b0 for c in below_a):
                return Verdict(False, (lat.elements[a], lat.elements[b]))
    return Verdict(True)


def atoms(lat: FiniteLattice) -> list:
    return [lat.elements[x] for x in lat.atom_indices]


def lattice_from_order(names: Sequence[str], leq) -> FiniteLattice | None:
    """Derive tables from an order matrix; ``None`` if the order is no lattice.

    ``leq[x][y]`` is truthy iff x <= y; the relation must be a partial order
    with a least and a greatest element.
    """
    n = len(names)
    le = np.asarray(leq, dtype=bool).reshape(n, n)
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            lower = np.flatnonzero(le[:, x] & le[:, y])
            upper = np.flatnonzero(le[x] & le[y])
            glb = [z for z in lower if le[lower, z].all()]
            lub = [z for z in upper if le[z, upper].all()]
            if len(glb) != 1 or len(lub) != 1:
                return None
            meet[x][y] = meet[y][x] = int(glb[0])
            join[x][y] = join[y][x] = int(lub[0])
    bottoms = [x for x in range(n) if le[x].all()]
    tops = [x for x in range(n) if le[:, x].all()]
    if len(bottoms) != 1 or len(tops) != 1:
        return None
    return FiniteLattice(tuple(names), tuple(map(tuple, meet)), tuple(map(tuple, join)),
                         bottoms[0], tops[0])


def chain(n: int, names: Sequence[str] | None = None) -> FiniteLattice:
    """The n-element chain; default ids are 0 < m < 1 for n = 3 and c0 < c1 < ... otherwise."""
    if names is None:
        if n == 3:
            names = ["0", "m", "1"]
        elif n == 2:
            names = ["0", "1"]
        else:
            names = [f"c{i}" for i in range(n)]
    le = [[x <= y for y in range(n)] for x in range(n)]
    return lattice_from_order(names, le)


def diamond() -> FiniteLattice:
    """M3: 0 < a, b, c < 1 with pairwise meets 0 and joins 1."""
    names = ["0", "a", "b", "c", "1"]
    le = [[x == y or x == 0 or y == 4 for y in range(5)] for x in range(5)]
    return lattice_from_order(names, le)


def pentagon() -> FiniteLattice:
    """N5: 0 < a < b < 1 and 0 < c < 1."""
    names = ["0", "a", "b", "c", "1"]
    pairs = {(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (2, 4), (3, 4)}
    le = [[x == y or (x, y) in pairs for y in range(5)] for x in range(5)]
    return lattice_from_order(names, le)


def _label(point) -> str:
    return str(point)


def set_id(member: Iterable, universe: Sequence | None = None) -> str:
    """Canonical element id of a set, e.g. ``{}`` or ``{1,2}``."""
    items = list(member)
    if universe is not None:
        order = {p: i for i, p in enumerate(universe)}
        items.sort(key=order.__getitem__)
    return "{" + ",".join(_label(p) for p in items) + "}"


@dataclass(frozen=True)
class SetLattice:
    """A family of subsets of ``universe`` closed under union and intersection.

    Members are held as bitmasks over the universe order and listed in
    increasing bitmask value, so the power set of ``[1, 2]`` reads
    ``{}, {1}, {2}, {1,2}``.
    """

    universe: tuple
    masks: tuple
    _pos: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_pos", {p: i for i, p in enumerate(self.universe)})

    def __len__(self):
        return len(self.masks)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.universe)) - 1

    def members(self) -> list:
        return [self.to_set(m) for m in self.masks]

    def to_set(self, mask: int) -> frozenset:
        return frozenset(p for i, p in enumerate(self.universe) if mask >> i & 1)

    def to_mask(self, subset: Iterable) -> int:
        mask = 0
        for p in subset:
            if p not in self._pos:
                raise InputError(f"{p!r} is not in the universe")
            mask |= 1 << self._pos[p]
        return mask

    def element_id(self, mask: int) -> str:
        return set_id([p for i, p in enumerate(self.universe) if mask >> i & 1])

    @cached_property
    def lattice(self) -> FiniteLattice:
        """The table view; element ids are the member sets written ``{a,b}``."""
        masks = self.masks
        pos = {m: i for i, m in enumerate(masks)}
        meet = tuple(tuple(pos[a & b] for b in masks) for a in masks)
        join = tuple(tuple(pos[a | b] for b in masks) for a in masks)
        names = tuple(self.element_id(m) for m in masks)
        return FiniteLattice(names, meet, join, pos[0], pos[self.full_mask])

    def to_lattice(self) -> FiniteLattice:
        return self.lattice

    def to_json(self) -> dict:
        return {"universe": list(self.universe),
                "members": [[p for i, p in enumerate(self.universe) if m >> i & 1] for m in self.masks]}

    @classmethod
    def from_json(cls, data: dict) -> "SetLattice":
        if "universe" not in data or "members" not in data:
            raise InputError("set lattice needs 'universe' and 'members'")
        universe = tuple(data["universe"])
        pos = {p: i for i, p in enumerate(universe)}
        masks = set()
        for k, member in enumerate(data["members"]):
            mask = 0
            for p in member:
                if p not in pos:
                    raise InputError(f"{p!r} is not in the universe", f"/members/{k}")
                mask |= 1 << pos[p]
            masks.add(mask)
        full = (1 << len(universe)) - 1
        if 0 not in masks or full not in masks:
            raise InputError("members must contain the empty set and the universe", "/members")
        for a, b in product(masks, repeat=2):
            if a | b not in masks or a & b not in masks:
                raise InputError("members are not closed under union and intersection", "/members")
        return cls(universe, tuple(sorted(masks)))


def _close(masks: set, full: int, cap: int) -> set:
    masks = set(masks) | {0, full}
    frontier = list(masks)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(masks):
                for c in (a | b, a & b):
                    if c not in masks and c not in new:
                        new.add(c)
        if len(masks) + len(new) > cap:
            raise CapExceeded(f"closure exceeds the cap of {cap} members")
        masks |= new
        frontier = list(new)
    return masks


def generate_set_lattice(universe: Iterable[Hashable], generators: Iterable[Iterable],
                         cap: int = MAX_ELEMENTS) -> SetLattice:
    """Smallest family containing the generators, the empty set and the universe
    that is closed under pairwise union and intersection."""
    universe = tuple(dict.fromkeys(universe))
    pos = {p: i for i, p in enumerate(universe)}
    masks = set()
    for g in generators:
        g = list(g)
        bad = [p for p in g if p not in pos]
        if bad:
            raise InputError(f"generator {set_id(g)} is not a subset of the universe (stray {bad[0]!r})")
        masks.add(sum(1 << pos[p] for p in set(g)))
    full = (1 << len(universe)) - 1
    return SetLattice(universe, tuple(sorted(_close(masks, full, cap))))


def set_lattice_from_masks(universe: Sequence, masks: Iterable[int]) -> SetLattice:
    """Wrap masks already known to form a ring of sets with empty set and universe."""
    return SetLattice(tuple(universe), tuple(sorted(set(masks))))


def power_set(universe: Iterable) -> SetLattice:
    universe = tuple(universe)
    return SetLattice(universe, tuple(range(1 << len(universe))))


def representation(lat: FiniteLattice) -> dict:
    """``a -> bitmask of the atoms below a`` (bits follow ``atom_indices`` order)."""
    ats = lat.atom_indices
    return {x: sum(1 << k for k, at in enumerate(ats) if lat.leq(at, x)) for x in range(len(lat))}


def is_power_set(lat: FiniteLattice) -> bool:
    """True iff ``a -> {atoms below a}`` is an isomorphism onto the full power set of atoms."""
    rep = representation(lat)
    k = len(lat.atom_indices)
    if lat.is_degenerate():
        return True
    if len(set(rep.values())) != len(lat) or len(lat) != 1 << k:
        return False
    return all(rep[lat.meet[x][y]] == rep[x] & rep[y] and rep[lat.join[x][y]] == rep[x] | rep[y]
               for x in range(len(lat)) for y in range(len(lat)))

"""Wallman spaces of finite distributive lattices and finite closed-set systems.

Every finite T1 space is discrete, so the Wallman space of a finite
lattice is always a discrete space with one point per atom.  Connected
Wallman spaces only appear for infinite lattices; the finite machinery here
is a test bed for the representation a -> C_a, not a source of continua.

:class:`FiniteSpace` also accepts closed-set systems that are not T1 (any
family of subsets generating a topology), since chicane searches and the
lattice/oracle cross-checks run over arbitrary finite topologies;
:meth:`FiniteSpace.is_t1` reports the separation property.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations

from .errors import InputError
from .lattice import FiniteLattice, SetLattice, is_distributive, is_disjunctive, set_id


@dataclass(frozen=True)
class Filter:
    """A proper filter, stored as a bitmask over element indices."""
    lattice: FiniteLattice = field(repr=False)
    mask: int

    @property
    def members(self) -> list:
        return [self.lattice.elements[i] for i in range(len(self.lattice)) if self.mask >> i & 1]

    @property
    def generator(self) -> str:
        """The meet of all members (a finite filter is the up-set of it)."""
        lat = self.lattice
        g = lat.top
        for i in range(len(lat)):
            if self.mask >> i & 1:
                g = lat.meet[g][i]
        return lat.elements[g]

    def __contains__(self, element) -> bool:
        return bool(self.mask >> self.lattice.index(element) & 1)

    def is_filter(self) -> bool:
        lat, m = self.lattice, self.mask
        idx = [i for i in range(len(lat)) if m >> i & 1]
        if not idx or m >> lat.bottom & 1:
            return False
        for i in idx:
            for j in range(len(lat)):
                if lat.leq(i, j) and not m >> j & 1:
                    return False
            for j in idx:
                if not m >> lat.meet[i][j] & 1:
                    return False
        return True


def _up(lat: FiniteLattice, a: int) -> int:
    return sum(1 << y for y in range(len(lat)) if lat.leq(a, y))


def maximal_filters(lat: FiniteLattice) -> list:
    """All maximal proper filters, ordered by atom index.

    In a finite lattice every filter is principal, so the proper filters are
    the up-sets of nonzero elements; the maximal ones are found by
    inclusion and checked against the up-sets of atoms.
    """
    if lat.is_degenerate():
        warnings.warn("degenerate lattice (0 = 1) has no proper filters", stacklevel=2)
        return []
    proper = {a: _up(lat, a) for a in range(len(lat)) if a != lat.bottom}
    maximal = [a for a, m in proper.items()
               if not any(m != o and m & o == m for o in proper.values())]
    if sorted(maximal) != sorted(lat.atom_indices):  # pragma: no cover - lattice theory
        raise AssertionError("maximal filters disagree with atom up-sets")
    return [Filter(lat, proper[a]) for a in sorted(maximal)]


# --------------------------------------------------------------------------
# finite spaces


@dataclass(frozen=True)
class FiniteSpace:
    """Points and a family of closed sets generating the closed-set lattice.

    The closed sets are the closure of ``closed_base`` (plus the empty set
    and the whole space) under finite unions and intersections.
    """
    points: tuple
    closed_base: tuple   # bitmasks over ``points``

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise InputError("duplicate point")
        full = self.full
        for m in self.closed_base:
            if m & ~full:
                raise InputError("base member is not a subset of the points")

    @classmethod
    def from_sets(cls, points, base) -> "FiniteSpace":
        points = tuple(points)
        pos = {p: i for i, p in enumerate(points)}
        masks = []
        for k, member in enumerate(base):
            m = 0
            for p in member:
                if p not in pos:
                    raise InputError(f"{p!r} is not a point", f"/closed_base/{k}")
                m |= 1 << pos[p]
            masks.append(m)
        return cls(points, tuple(sorted(set(masks))))

    @classmethod
    def discrete(cls, points) -> "FiniteSpace":
        points = tuple(points)
        return cls(points, tuple(1 << i for i in range(len(points))))

    @classmethod
    def from_json(cls, data) -> "FiniteSpace":
        if not isinstance(data, dict):
            raise InputError("space must be a JSON object", "")
        for key in ("points", "closed_base"):
            if key not in data:
                raise InputError(f"missing field {key!r}", "")
        if not isinstance(data["points"], list):
            raise InputError("points must be a list", "/points")
        if not isinstance(data["closed_base"], list):
            raise InputError("closed_base must be a list", "/closed_base")
        points = [str(p) if not isinstance(p, (str, int)) else p for p in data["points"]]
        if len(set(points)) != len(points):
            raise InputError("duplicate point", "/points")
        for k, member in enumerate(data["closed_base"]):
            if not isinstance(member, list):
                raise InputError("base member must be a list", f"/closed_base/{k}")
        return cls.from_sets(points, data["closed_base"])

    def to_json(self) -> dict:
        return {"points": list(self.points),
                "closed_base": [self.to_points(m) for m in self.closed_base]}

    @property
    def full(self) -> int:
        return (1 << len(self.points)) - 1

    def to_points(self, mask: int) -> list:
        return [p for i, p in enumerate(self.points) if mask >> i & 1]

    def to_mask(self, subset) -> int:
        pos = {p: i for i, p in enumerate(self.points)}
        m = 0
        for p in subset:
            if p not in pos:
                raise InputError(f"{p!r} is not a point")
            m |= 1 << pos[p]
        return m

    @cached_property
    def closed_masks(self) -> tuple:
        """All closed sets, increasing bitmask order."""
        family = {0, self.full} | set(self.closed_base)
        # intersections first, then unions; the union closure of an
        # intersection-closed family is closed under both
        changed = True
        while changed:
            changed = False
            for a in list(family):
                for b in list(family):
                    if a & b not in family:
                        family.add(a & b)
                        changed = True
        changed = True
        while changed:
            changed = False
            for a in list(family):
                for b in list(family):
                    if a | b not in family:
                        family.add(a | b)
                        changed = True
        return tuple(sorted(family))

    def is_closed(self, mask: int) -> bool:
        return mask in self._closed_set

    @cached_property
    def _closed_set(self):
        return frozenset(self.closed_masks)

    def closure(self, mask: int) -> int:
        """Smallest closed set containing ``mask``."""
        out = self.full
        for c in self.closed_masks:
            if c & mask == mask:
                out &= c
        return out

    def is_t1(self) -> bool:
        """Every singleton is closed (intersection of closed sets)."""
        return all(self.closure(1 << i) == 1 << i for i in range(len(self.points)))

    def is_discrete(self) -> bool:
        return len(self.closed_masks) == 1 << len(self.points)


def closed_set_lattice(space: FiniteSpace) -> SetLattice:
    """All closed sets of ``space`` as a ring of sets over its points."""
    return SetLattice(tuple(space.points), space.closed_masks)


def space_from_set_lattice(sl: SetLattice) -> FiniteSpace:
    return FiniteSpace(tuple(sl.universe), tuple(sl.masks))


def homeomorphism(s: FiniteSpace, t: FiniteSpace) -> dict | None:
    """A bijection of points carrying closed sets exactly onto closed sets, or None."""
    n = len(s.points)
    if n != len(t.points) or len(s.closed_masks) != len(t.closed_masks):
        return None
    target = t._closed_set
    # points can only go to points lying in equally many closed sets
    def profile(space, i):
        return sum(1 for c in space.closed_masks if c >> i & 1)
    ps = [profile(s, i) for i in range(n)]
    pt = [profile(t, i) for i in range(n)]
    if sorted(ps) != sorted(pt):
        return None
    for perm in permutations(range(n)):
        if any(ps[i] != pt[perm[i]] for i in range(n)):
            continue
        ok = True
        for c in s.closed_masks:
            img = 0
            for i in range(n):
                if c >> i & 1:
                    img |= 1 << perm[i]
            if img not in target:
                ok = False
                break
        if ok:
            return {s.points[i]: t.points[perm[i]] for i in range(n)}
    return None


# --------------------------------------------------------------------------
# Wallman space


@dataclass(frozen=True)
class WallmanSpace:
    """The Wallman space of a finite distributive lattice and its base map.

    Points are the maximal filters, labelled by their generating atoms.
    ``base[a]`` is C_a, the set of points whose filter contains a.
    """
    lattice: FiniteLattice = field(repr=False)
    space: FiniteSpace
    base: dict           # element id -> frozenset of points
    injective: bool
    homomorphism: bool

    def to_json(self) -> dict:
        pts = self.space.points
        order = {p: i for i, p in enumerate(pts)}
        return {
            "points": list(pts),
            "closed_base": [self.space.to_points(m) for m in self.space.closed_base],
            "representation": {e: sorted(self.base[e], key=order.__getitem__)
                               for e in self.lattice.elements},
            "injective": self.injective,
            "homomorphism": self.homomorphism,
        }


def wallman_space(lat: FiniteLattice) -> WallmanSpace:
    """Wallman space of a distributive lattice with the map a -> C_a.

    The map is always a lattice homomorphism onto the closed base; it is
    injective exactly when the lattice is disjunctive.
    """
    if not is_distributive(lat):
        raise InputError("lattice is not distributive; the representation needs distributivity")
    filters = maximal_filters(lat)
    points = tuple(f.generator for f in filters)
    n = len(lat)
    rep = [sum(1 << k for k, f in enumerate(filters) if f.mask >> a & 1) for a in range(n)]
    space = FiniteSpace(points, tuple(sorted(set(rep))))
    homo = all(rep[lat.meet[a][b]] == rep[a] & rep[b] and rep[lat.join[a][b]] == rep[a] | rep[b]
               for a in range(n) for b in range(n))
    homo = homo and rep[lat.bottom] == 0 and rep[lat.top] == space.full
    injective = len(set(rep)) == n
    base = {lat.elements[a]: frozenset(space.to_points(rep[a])) for a in range(n)}
    return WallmanSpace(lat, space, base, injective, homo)


def representation_report(lat: FiniteLattice) -> dict:
    """Whether a -> C_a is injective, next to the disjunctivity verdict."""
    w = wallman_space(lat)
    disj = is_disjunctive(lat)
    return {
        "points": len(w.space.points),
        "homomorphism": w.homomorphism,
        "injective": w.injective,
        "disjunctive": bool(disj),
        "disjunctive_witness": list(disj.witness) if disj.witness else None,
        "collapsed": _collapsed(w),
    }


def _collapsed(w: WallmanSpace) -> list:
    """Pairs of distinct elements with the same C_a (first per class)."""
    seen, out = {}, []
    for e in w.lattice.elements:
        key = w.base[e]
        if key in seen:
            out.append([seen[key], e])
        else:
            seen[key] = e
    return out


def round_trip(space: FiniteSpace) -> dict | None:
    """Homeomorphism from ``space`` to the Wallman space of its closed-set lattice."""
    sl = closed_set_lattice(space)
    w = wallman_space(sl.lattice)
    # points of w are labelled by atom ids like "{p}"; compare as spaces
    return homeomorphism(space, w.space)


def point_label(space: FiniteSpace, mask: int) -> str:
    return set_id(space.to_points(mask), space.points)

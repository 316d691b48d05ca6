"""Grid approximations of cubes: closed cell sets, connectivity, Urysohn
functions, partitions, essential families and monotone-light factorization.

A cell is an integer tuple ``c`` in ``[0, r)^n`` standing for the closed box
``prod [c_i / r, (c_i + 1) / r]``.  Two adjacency conventions are used:

* closed mode: boxes intersect (share a face, an edge or a corner);
* open mode: boxes share a facet.

For example the cells (0, 0) and (1, 1) of a 2x2 grid touch at the centre:
one component in closed mode, two in open mode.

Geometric questions (does a family of closed cell sets have a common
point?  which points survive after removing a closed set?) are answered on
the cubical elements of the grid: the open faces of all dimensions, written
in doubled coordinates.  Coordinate ``2k`` is the hyperplane ``x = k/r``
and ``2k + 1`` the open slab between ``k/r`` and ``(k+1)/r``; the closure of
cell ``c`` consists of the elements ``e`` with ``e_i`` in ``{2c_i, 2c_i+1,
2c_i+2}``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable

from .errors import CapExceeded, InputError

MAX_CELLS = 1_000_000
DEFAULT_BUDGET = 200_000


def _cell(c) -> tuple:
    return tuple(int(v) for v in c)


class GridComplex:
    """The grid of ``res**dim`` cells of I^dim, or a subcomplex of it.

    ``cells`` restricts the complex to a subset of the grid (for example the
    trace of a partition); ``None`` means the full grid.
    """

    def __init__(self, dim: int, res: int, cells: Iterable | None = None, cap: int = MAX_CELLS):
        if dim < 1 or res < 1:
            raise InputError("dimension and resolution must be at least 1")
        if res ** dim > cap:
            raise CapExceeded(f"{res}^{dim} cells exceed the cap of {cap}")
        self.dim, self.res = int(dim), int(res)
        if cells is None:
            self._cells = None
        else:
            cs = frozenset(_cell(c) for c in cells)
            for c in cs:
                self._check(c)
            self._cells = cs

    def _check(self, c):
        if len(c) != self.dim or any(v < 0 or v >= self.res for v in c):
            raise InputError(f"cell {list(c)} is outside the {self.res}^{self.dim} grid")

    @property
    def is_full(self) -> bool:
        return self._cells is None

    def __repr__(self):
        kind = "" if self.is_full else f", {len(self)} cells"
        return f"GridComplex(dim={self.dim}, res={self.res}{kind})"

    def __eq__(self, other):
        return (isinstance(other, GridComplex) and (self.dim, self.res) == (other.dim, other.res)
                and self.cell_set == other.cell_set)

    def __hash__(self):
        return hash((self.dim, self.res, self.cell_set))

    def __len__(self):
        return self.res ** self.dim if self._cells is None else len(self._cells)

    def __contains__(self, c):
        c = tuple(c)
        if len(c) != self.dim or any(v < 0 or v >= self.res for v in c):
            return False
        return self._cells is None or c in self._cells

    @cached_property
    def cells(self) -> tuple:
        """All cells in lexicographic order."""
        if self._cells is None:
            return tuple(product(range(self.res), repeat=self.dim))
        return tuple(sorted(self._cells))

    @cached_property
    def cell_set(self) -> frozenset:
        return frozenset(self.cells)

    def subcomplex(self, cells) -> "GridComplex":
        cells = cell_set(cells)
        bad = [c for c in cells if c not in self]
        if bad:
            raise InputError(f"cell {list(min(bad))} is not in the complex")
        return GridComplex(self.dim, self.res, cells)

    def cell_set_of(self, cells, what="cell set") -> frozenset:
        out = cell_set(cells)
        for c in sorted(out):
            if c not in self:
                raise InputError(f"{what} has cell {list(c)} outside the complex")
        return out

    # faces of the cube

    def face(self, axis: int, side: int) -> frozenset:
        """Boundary layer ``x_axis = 0`` (side 0) or ``x_axis = 1`` (side 1)."""
        if not 0 <= axis < self.dim:
            raise InputError(f"axis {axis} out of range")
        v = 0 if side == 0 else self.res - 1
        return frozenset(c for c in self.cells if c[axis] == v)

    def face_pairs(self) -> list:
        return [(self.face(i, 0), self.face(i, 1)) for i in range(self.dim)]

    # adjacency

    def neighbors(self, c, mode: str = "closed"):
        c = tuple(c)
        if mode == "open":
            for i in range(self.dim):
                for d in (-1, 1):
                    n = c[:i] + (c[i] + d,) + c[i + 1:]
                    if n in self:
                        yield n
        elif mode == "closed":
            for delta in product((-1, 0, 1), repeat=self.dim):
                if any(delta):
                    n = tuple(a + b for a, b in zip(c, delta))
                    if n in self:
                        yield n
        else:
            raise InputError(f"unknown adjacency mode {mode!r}")

    def to_json(self) -> dict:
        out = {"dim": self.dim, "res": self.res}
        if not self.is_full:
            out["cells"] = [list(c) for c in self.cells]
        return out

    @classmethod
    def from_json(cls, data) -> "GridComplex":
        if not isinstance(data, dict):
            raise InputError("grid must be an object", "")
        for key in ("dim", "res"):
            if not isinstance(data.get(key), int) or isinstance(data.get(key), bool):
                raise InputError(f"{key!r} must be an integer", f"/{key}")
        cells = data.get("cells")
        if cells is not None:
            cells = parse_cells(cells, "/cells")
        return cls(data["dim"], data["res"], cells)

    # cubical elements

    @cached_property
    def _elements(self):
        """Elements of the closures of all cells: (list, index, closure masks)."""
        closures = {}
        seen = {}
        for c in self.cells:
            mask = 0
            for e in product(*[(2 * v, 2 * v + 1, 2 * v + 2) for v in c]):
                k = seen.get(e)
                if k is None:
                    k = seen[e] = len(seen)
                mask |= 1 << k
            closures[c] = mask
        elems = sorted(seen, key=seen.get)
        return elems, seen, closures

    @property
    def elements(self) -> list:
        return self._elements[0]

    def closure_mask(self, cells) -> int:
        cl = self._elements[2]
        m = 0
        for c in cells:
            m |= cl[tuple(c)]
        return m

    @cached_property
    def _element_adjacency(self):
        elems, index, _ = self._elements
        adj = [[] for _ in elems]
        for k, e in enumerate(elems):
            for i, v in enumerate(e):
                if v % 2 == 1:   # open direction: its two boundary faces
                    for w in (v - 1, v + 1):
                        f = e[:i] + (w,) + e[i + 1:]
                        j = index[f]
                        adj[k].append(j)
                        adj[j].append(k)
        return [sorted(set(a)) for a in adj]

    def cells_containing(self, element_index: int) -> list:
        e = self.elements[element_index]
        ranges = [(v // 2 - 1, v // 2) if v % 2 == 0 else (v // 2,) for v in e]
        return [c for c in product(*ranges) if c in self]


def cell_set(cells) -> frozenset:
    return frozenset(_cell(c) for c in cells)


def parse_cells(data, path="") -> list:
    if not isinstance(data, list):
        raise InputError("cell set must be a list of integer lists", path or "")
    out = []
    for k, c in enumerate(data):
        if not isinstance(c, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in c):
            raise InputError("cell must be a list of integers", f"{path}/{k}")
        out.append(tuple(c))
    return out


def cells_json(cells) -> list:
    return [list(c) for c in sorted(cells)]


def geometric_meet(X: GridComplex, *sets) -> bool:
    """Do the closed cell sets share a point of the cube?"""
    m = -1
    for s in sets:
        m &= X.closure_mask(s)
        if not m:
            return False
    return bool(m)


def touches(X: GridComplex, a, b) -> bool:
    return geometric_meet(X, a, b)


# --------------------------------------------------------------------------
# components and distances


def components(X: GridComplex, cells=None, mode: str = "closed") -> list:
    """Connected pieces of ``cells`` (default: all of X), each sorted, ordered by first cell."""
    todo = set(X.cells if cells is None else X.cell_set_of(cells))
    out = []
    for start in sorted(todo):
        if start not in todo:
            continue
        todo.discard(start)
        comp, queue = [start], deque([start])
        while queue:
            c = queue.popleft()
            for n in X.neighbors(c, mode):
                if n in todo:
                    todo.discard(n)
                    comp.append(n)
                    queue.append(n)
        out.append(sorted(comp))
    return out


def is_connected(X: GridComplex, cells=None, mode: str = "closed") -> bool:
    return len(components(X, cells, mode)) <= 1


def distances(X: GridComplex, sources, mode: str = "closed") -> dict:
    """Graph distance from the cell set ``sources`` to every reachable cell."""
    dist = {c: 0 for c in sources}
    queue = deque(sorted(dist))
    while queue:
        c = queue.popleft()
        d = dist[c] + 1
        for n in X.neighbors(c, mode):
            if n not in dist:
                dist[n] = d
                queue.append(n)
    return dist


def chebyshev(a, b) -> int:
    return max(abs(x - y) for x, y in zip(a, b))


# --------------------------------------------------------------------------
# cell functions


class CellFunction(dict):
    """Map from cells to exact rationals in [0, 1]."""

    def to_json(self) -> list:
        return [[list(c), str(self[c])] for c in sorted(self)]

    @classmethod
    def from_json(cls, data, path="") -> "CellFunction":
        if not isinstance(data, list):
            raise InputError("cell function must be a list of [cell, value] pairs", path or "")
        out = cls()
        for k, item in enumerate(data):
            if not isinstance(item, list) or len(item) != 2:
                raise InputError("entry must be [cell, value]", f"{path}/{k}")
            cell = parse_cells([item[0]], f"{path}/{k}")[0]
            try:
                v = Fraction(str(item[1]))
            except (ValueError, ZeroDivisionError):
                raise InputError(f"bad rational {item[1]!r}", f"{path}/{k}/1") from None
            out[cell] = v
        return out

    def image(self, cells) -> set:
        return {self[tuple(c)] for c in cells}

    def in_range(self) -> bool:
        return all(0 <= v <= 1 for v in self.values())


def _urysohn(X: GridComplex, C, D) -> CellFunction:
    # empty-set conventions: no C -> 1, no D -> 0 (C wins when both are empty)
    C, D = frozenset(C), frozenset(D)
    if not D:
        return CellFunction((c, Fraction(0)) for c in X.cells)
    if not C:
        return CellFunction((c, Fraction(1)) for c in X.cells)
    dc, dd = distances(X, C), distances(X, D)
    f = CellFunction()
    for c in X.cells:
        a, b = dc.get(c), dd.get(c)
        if a is None and b is None:
            f[c] = Fraction(0)      # component meets neither set
        elif a is None:
            f[c] = Fraction(1)
        elif b is None:
            f[c] = Fraction(0)
        else:
            f[c] = Fraction(a, a + b)
    return f


def urysohn(X: GridComplex, C, D) -> CellFunction:
    """``d(x, C) / (d(x, C) + d(x, D))`` with closed-mode graph distance.

    ``C`` and ``D`` must be nonempty and share no cell.  On a component of X
    missing one of the sets the function is constant (0 away from D, 1 away
    from C).
    """
    C = X.cell_set_of(C, "C")
    D = X.cell_set_of(D, "D")
    if not C or not D:
        raise InputError("urysohn needs nonempty C and D")
    common = C & D
    if common:
        raise InputError(f"C and D share cell {list(min(common))}")
    return _urysohn(X, C, D)


def foursome_urysohn(X: GridComplex, C, D, F, G) -> CellFunction:
    """``(u + v) / 2`` with ``u = urysohn(C, F u D)`` and ``v = urysohn(C u G, D)``.

    For a pliable foursome this is 0 on C, at most 1/2 on G, at least 1/2
    on F and 1 on D.  Empty members are allowed.
    """
    C, D, F, G = (X.cell_set_of(s, n) for s, n in ((C, "C"), (D, "D"), (F, "F"), (G, "G")))
    for (a, an), (b, bn) in (((C, "C"), (D, "D")), ((C, "C"), (F, "F")), ((D, "D"), (G, "G"))):
        common = a & b
        if common:
            raise InputError(f"not pliable: {an} and {bn} share cell {list(min(common))}")
    u = _urysohn(X, C, F | D)
    v = _urysohn(X, C | G, D)
    return CellFunction((c, (u[c] + v[c]) / 2) for c in X.cells)


def foursome_conditions(f: CellFunction, C, D, F, G) -> dict:
    """The four range conditions of a foursome map, by name."""
    half = Fraction(1, 2)
    return {
        "C_zero": all(f[c] == 0 for c in C),
        "G_low": all(f[c] <= half for c in G),
        "F_high": all(f[c] >= half for c in F),
        "D_one": all(f[c] == 1 for c in D),
    }


# --------------------------------------------------------------------------
# partitions


def _check_pair(X, A, B, i=None):
    A, B = X.cell_set_of(A, "A"), X.cell_set_of(B, "B")
    common = A & B
    if common:
        where = "" if i is None else f" in pair {i}"
        raise InputError(f"A and B share cell {list(min(common))}{where}")
    return A, B


def _element_path(X: GridComplex, removed: int, A, B):
    """Element path from cl(A) to cl(B) avoiding ``removed``, or None."""
    _, _, closures = X._elements
    adj = X._element_adjacency
    src = 0
    for c in A:
        src |= closures[c]
    src &= ~removed
    tgt = 0
    for c in B:
        tgt |= closures[c]
    tgt &= ~removed
    if not src or not tgt:
        return None
    prev = {}
    queue = deque()
    k = 0
    m = src
    while m:
        if m & 1:
            prev[k] = None
            queue.append(k)
        m >>= 1
        k += 1
    while queue:
        k = queue.popleft()
        if tgt >> k & 1:
            path = []
            while k is not None:
                path.append(k)
                k = prev[k]
            return path[::-1]
        for j in adj[k]:
            if j not in prev and not removed >> j & 1:
                prev[j] = k
                queue.append(j)
    return None


def _cell_path(X: GridComplex, L, A, B):
    """Open-mode path of cells outside L from A to B (full grids)."""
    start = sorted(c for c in A if c not in L)
    targets = {c for c in B if c not in L}
    prev = {c: None for c in start}
    queue = deque(start)
    while queue:
        c = queue.popleft()
        if c in targets:
            path = []
            while c is not None:
                path.append(c)
                c = prev[c]
            return path[::-1]
        for n in X.neighbors(c, "open"):
            if n not in prev and n not in L:
                prev[n] = c
                queue.append(n)
    return None


def separation_path(X: GridComplex, L, A, B):
    """A witness that L does not separate A from B, as a list of cells; None if it does.

    On a full grid this is an open-mode (facet) path of cells outside L.  On
    a subcomplex connectivity runs through the cubical elements not covered
    by L, and the path lists cells carrying those elements.
    """
    L = X.cell_set_of(L, "L")
    A, B = _check_pair(X, A, B)
    if X.is_full:
        return _cell_path(X, L, A, B)
    path = _element_path(X, X.closure_mask(L), A, B)
    if path is None:
        return None
    out = []
    for k in path:
        c = X.cells_containing(k)[0]
        if not out or out[-1] != c:
            out.append(c)
    return out


def is_partition_between(X: GridComplex, L, A, B) -> bool:
    """No component of the complement of L meets both A \\ L and B \\ L."""
    return separation_path(X, L, A, B) is None


def element_separates(X: GridComplex, L, A, B) -> bool:
    """Geometric separation test on cubical elements (valid on any subcomplex)."""
    return _element_path(X, X.closure_mask(cell_set(L)), cell_set(A), cell_set(B)) is None


def interior_mask(X: GridComplex, W) -> int:
    """Elements inside the open set ``X minus (cells outside W)``: every cell carrying them is in W."""
    W = cell_set(W)
    m = 0
    for k in range(len(X.elements)):
        if all(c in W for c in X.cells_containing(k)):
            m |= 1 << k
    return m


def open_partition_check(X: GridComplex, W0, W1, A, B) -> dict:
    """Is the closed set ``L = X minus (W0 u W1)`` a partition between A and B?

    W0 and W1 are cell-open sets, i.e. complements of the closed cell sets
    they miss, so a facet shared by a W0 cell and a W1 cell lies in L.
    """
    full = (1 << len(X.elements)) - 1
    i0, i1 = interior_mask(X, W0), interior_mask(X, W1)
    L = full & ~(i0 | i1)
    A, B = cell_set(A), cell_set(B)
    return {
        "A_inside_W0": not (X.closure_mask(A) & ~i0),
        "B_inside_W1": not (X.closure_mask(B) & ~i1),
        "disjoint": not (i0 & i1),
        "separated": _element_path(X, L, A, B) is None,
    }


class _Budget:
    def __init__(self, limit):
        self.limit, self.used = limit, 0

    def spend(self, n=1) -> bool:
        self.used += n
        return self.used <= self.limit


class _OutOfBudget(Exception):
    pass


def minimal_partitions(X: GridComplex, A, B, budget=None) -> list:
    """All inclusion-minimal cell sets L separating A from B, in search order.

    Branches on the cells covering an unblocked A-B element path (include
    the j-th candidate, exclude the earlier ones), which reaches every
    minimal hitting set; non-minimal finds are dropped afterwards.  Raises
    ``_OutOfBudget`` when the node budget runs out.
    """
    A, B = _check_pair(X, A, B)
    _, _, closures = X._elements
    found = {}

    def dfs(L, removed, excluded):
        if budget is not None and not budget.spend():
            raise _OutOfBudget
        path = _element_path(X, removed, A, B)
        if path is None:
            found.setdefault(frozenset(L), None)
            return
        cands = []
        seen = set()
        for k in path:
            for c in X.cells_containing(k):
                if c not in seen and c not in excluded:
                    seen.add(c)
                    cands.append(c)
        excl = set(excluded)
        for c in cands:
            dfs(L + [c], removed | closures[c], frozenset(excl))
            excl.add(c)

    dfs([], 0, frozenset())
    out = []
    for L in found:
        if all(_element_path(X, X.closure_mask(L - {c}), A, B) is not None for c in L):
            out.append(L)
    return out


def _partition_order(A, B):
    def key(L):
        proper = not (L & A) and not (L & B)
        return (not proper, len(L), sorted(L))
    return key


@dataclass
class EssentialResult:
    verdict: str                  # "essential" | "inessential" | "unknown"
    exhaustive: bool
    partitions: list | None = None   # witness partitions (inessential)
    nodes: int = 0
    certificate: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict == "essential"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "exhaustive": self.exhaustive,
            "partitions": None if self.partitions is None else [cells_json(L) for L in self.partitions],
            "nodes": self.nodes,
            "certificate": dict(self.certificate),
        }


def essential_check(X: GridComplex, pairs, budget: int = DEFAULT_BUDGET) -> EssentialResult:
    """Decide whether every choice of partitions L_i between A_i and B_i has a common point.

    Partitions may contain cells of A_i or B_i.  Essential is reported only
    after all combinations of minimal partitions were checked (larger
    partitions only enlarge the intersection); Inessential comes with
    partitions verified to separate and to have empty intersection;
    Unknown when the node budget runs out first.
    """
    pairs = [_check_pair(X, A, B, i) for i, (A, B) in enumerate(pairs)]
    meter = _Budget(budget)
    if budget <= 0:
        return EssentialResult("unknown", False, None, 0, {"reason": "budget exhausted"})
    lists = []
    try:
        for A, B in pairs:
            parts = sorted(minimal_partitions(X, A, B, meter), key=_partition_order(A, B))
            dedup, seen = [], set()
            for L in parts:
                m = X.closure_mask(L)
                if m not in seen:
                    seen.add(m)
                    dedup.append((L, m))
            lists.append(dedup)
    except _OutOfBudget:
        return EssentialResult("unknown", False, None, meter.used,
                               {"reason": "budget exhausted while enumerating partitions"})
    counts = [len(p) for p in lists]
    if not pairs:
        return EssentialResult("essential", True, None, meter.used,
                               {"minimal_partitions": [], "combinations": 0})
    combos = [0]
    choice = []

    def dfs(i, cur):
        for L, m in lists[i]:
            if not meter.spend():
                raise _OutOfBudget
            combos[0] += 1
            nxt = cur & m
            choice.append(L)
            if not nxt:
                # empty already; fill the rest with first partitions
                for j in range(i + 1, len(lists)):
                    choice.append(lists[j][0][0])
                return True
            if i + 1 < len(lists) and dfs(i + 1, nxt):
                return True
            choice.pop()
        return False

    try:
        if any(c == 0 for c in counts):   # pragma: no cover - a separator always exists
            raise AssertionError("no partition found")
        hit = dfs(0, -1)
    except _OutOfBudget:
        return EssentialResult("unknown", False, None, meter.used,
                               {"reason": "budget exhausted while combining partitions",
                                "minimal_partitions": counts})
    cert = {"minimal_partitions": counts, "combinations": combos[0]}
    if hit:
        witness = list(choice)
        for (A, B), L in zip(pairs, witness):
            if not is_partition_between(X, L, A, B) or not element_separates(X, L, A, B):
                raise AssertionError("witness partition failed verification")  # pragma: no cover
        if geometric_meet(X, *witness):  # pragma: no cover
            raise AssertionError("witness partitions meet")
        return EssentialResult("inessential", True, witness, meter.used, cert)
    return EssentialResult("essential", True, None, meter.used, cert)


@dataclass
class Restriction:
    subcomplex: GridComplex | None
    traces: list            # [(index, A_i & L_J, B_i & L_J)] for i outside J
    result: EssentialResult | None
    verdict: str

    def to_json(self) -> dict:
        return {
            "cells": None if self.subcomplex is None else cells_json(self.subcomplex.cells),
            "traces": [{"index": i, "A": cells_json(a), "B": cells_json(b)} for i, a, b in self.traces],
            "verdict": self.verdict,
            "result": None if self.result is None else self.result.to_json(),
        }


def restrict_essential(X: GridComplex, pairs, J, partitions, budget: int = DEFAULT_BUDGET) -> Restriction:
    """Trace of the family on ``L_J``, the common cells of the given partitions.

    ``partitions`` maps each index in J to its partition; each is verified
    first.  With J empty this is essential_check on X itself; with J
    covering every index the verdict is whether the partitions have a
    common point.
    """
    J = sorted(set(J))
    pairs = [_check_pair(X, A, B, i) for i, (A, B) in enumerate(pairs)]
    if any(i < 0 or i >= len(pairs) for i in J):
        raise InputError("index in J out of range")
    parts = {int(i): X.cell_set_of(partitions[i], f"partition {i}") for i in J} if J else {}
    if set(parts) != set(J):
        raise InputError("partitions must be given exactly for the indices in J")
    for i in J:
        A, B = pairs[i]
        if not is_partition_between(X, parts[i], A, B):
            raise InputError(f"partition {i} does not separate its pair")
    if not J:
        res = essential_check(X, pairs, budget)
        return Restriction(X, [(i, A, B) for i, (A, B) in enumerate(pairs)], res, res.verdict)
    if len(J) == len(pairs):
        meet = geometric_meet(X, *(parts[i] for i in J))
        return Restriction(None, [], None, "essential" if meet else "inessential")
    common = frozenset.intersection(*(parts[i] for i in J))
    sub = GridComplex(X.dim, X.res, common)
    traces = [(i, A & common, B & common) for i, (A, B) in enumerate(pairs) if i not in J]
    if not common:
        return Restriction(sub, traces, None, "inessential")
    res = essential_check(sub, [(a, b) for _, a, b in traces], budget)
    return Restriction(sub, traces, res, res.verdict)


# --------------------------------------------------------------------------
# monotone-light factorization


@dataclass
class Factorization:
    mu: dict          # cell -> index into Z
    Z: list           # fiber components (sorted cell lists)
    lam: dict         # index into Z -> value

    def to_json(self) -> dict:
        return {
            "Z": [cells_json(z) for z in self.Z],
            "mu": [[list(c), k] for c, k in sorted(self.mu.items())],
            "lambda": [[k, _jsonable(v)] for k, v in sorted(self.lam.items())],
        }


def _jsonable(v):
    if isinstance(v, tuple):
        return list(v)
    if isinstance(v, Fraction):
        return str(v)
    return v


def monotone_light_factorize(X: GridComplex, f: dict) -> Factorization:
    """``f = lam o mu`` with mu onto the closed-mode components of the fibers of f."""
    missing = [c for c in X.cells if c not in f]
    if missing:
        raise InputError(f"map is not defined on cell {list(missing[0])}")
    fibers = {}
    for c in X.cells:
        fibers.setdefault(f[c], []).append(c)
    Z = []
    for cells in fibers.values():
        Z.extend(components(X, cells, "closed"))
    Z.sort()
    mu = {c: k for k, comp in enumerate(Z) for c in comp}
    lam = {k: f[comp[0]] for k, comp in enumerate(Z)}
    return Factorization(mu, Z, lam)


def projection(X: GridComplex, axes) -> dict:
    """Coordinate projection onto the given axes."""
    return {c: tuple(c[a] for a in axes) for c in X.cells}

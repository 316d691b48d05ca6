"""Finite-scale hyperspace tools.

Hausdorff distance on subsets of a finite metric space, the normalized
pair-sum Whitney map, Whitney bands of connected closed sets, order chains,
intersection degrees of covers, the small-mesh component search and the
diagonal map of a family of pairs into a cube.

Subsets are given as collections of points (or cells, on grids); all
arithmetic is exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product

from .errors import CapExceeded, InputError
from .gridspace import (CellFunction, GridComplex, cell_set, cells_json, components,
                        distances, is_partition_between, touches, urysohn)
from .wallman import FiniteSpace

DEFAULT_SET_CAP = 200_000
EXHAUSTIVE_WHITNEY = 12


def _rational(v, path=""):
    if isinstance(v, bool):
        raise InputError(f"not a rational: {v!r}", path)
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise InputError(f"not a rational: {v!r}", path)


# --------------------------------------------------------------------------
# metric spaces


class FiniteMetricSpace:
    """Points with an exact, symmetric distance table satisfying the metric axioms."""

    def __init__(self, points, table):
        self.points = tuple(points)
        n = len(self.points)
        if n == 0:
            raise InputError("a metric space needs at least one point", "/points")
        if len(set(self.points)) != n:
            raise InputError("duplicate point", "/points")
        if len(table) != n:
            raise InputError(f"distance table has {len(table)} rows, expected {n}", "/distances")
        rows = []
        for i, row in enumerate(table):
            if len(row) != n:
                raise InputError(f"row has {len(row)} entries, expected {n}", f"/distances/{i}")
            rows.append(tuple(_rational(v, f"/distances/{i}/{j}") for j, v in enumerate(row)))
        for i in range(n):
            if rows[i][i] != 0:
                raise InputError("nonzero diagonal entry", f"/distances/{i}/{i}")
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise InputError("distance table is not symmetric", f"/distances/{i}/{j}")
                if i != j and rows[i][j] <= 0:
                    raise InputError("distinct points at distance <= 0", f"/distances/{i}/{j}")
        for i, j, k in product(range(n), repeat=3):
            if rows[i][k] > rows[i][j] + rows[j][k]:
                raise InputError(f"triangle inequality fails through {self.points[j]!r}",
                                 f"/distances/{i}/{k}")
        self.d = tuple(rows)
        self._pos = {p: i for i, p in enumerate(self.points)}

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"FiniteMetricSpace({len(self)} points)"

    @classmethod
    def line(cls, coords) -> "FiniteMetricSpace":
        """Points of the real line with |x - y|; labels are the coordinates."""
        xs = [Fraction(x) for x in coords]
        return cls(tuple(xs), [[abs(a - b) for b in xs] for a in xs])

    @classmethod
    def from_grid(cls, X: GridComplex, scale: Fraction | None = None) -> "FiniteMetricSpace":
        """Closed-mode graph distance between cells, scaled by ``1 / (res - 1)`` by default.

        With this scale opposite faces of a full grid are at distance 1.
        Cells in different components get distance ``(res - 1) * dim`` plus one
        step (larger than any distance inside a component), keeping the axioms.
        """
        cells = X.cells
        if scale is None:
            scale = Fraction(1, max(X.res - 1, 1))
        far = X.res * X.dim
        rows = []
        for c in cells:
            dist = distances(X, [c])
            rows.append([Fraction(dist.get(o, far)) * scale for o in cells])
        return cls(cells, rows)

    @classmethod
    def from_json(cls, data) -> "FiniteMetricSpace":
        if not isinstance(data, dict):
            raise InputError("metric space must be a JSON object", "")
        for key in ("points", "distances"):
            if key not in data:
                raise InputError(f"missing field {key!r}", "")
        if not isinstance(data["points"], list):
            raise InputError("points must be a list", "/points")
        if not isinstance(data["distances"], list) or not all(isinstance(r, list) for r in data["distances"]):
            raise InputError("distances must be a list of rows", "/distances")
        return cls([p if isinstance(p, (str, int)) else str(p) for p in data["points"]], data["distances"])

    def to_json(self) -> dict:
        pts = [str(p) if isinstance(p, Fraction) else _label(p) for p in self.points]
        return {"points": pts, "distances": [[str(v) for v in row] for row in self.d]}

    def index(self, p) -> int:
        try:
            return self._pos[p]
        except (KeyError, TypeError):
            raise InputError(f"{p!r} is not a point of the space") from None

    def indices(self, subset, what="subset") -> tuple:
        idx = sorted({self.index(p if not isinstance(p, list) else tuple(p)) for p in subset})
        return tuple(idx)

    def dist(self, p, q) -> Fraction:
        return self.d[self.index(p)][self.index(q)]

    def diameter(self, subset) -> Fraction:
        idx = self.indices(subset)
        return max((self.d[i][j] for i in idx for j in idx), default=Fraction(0))


def _nonempty(M: FiniteMetricSpace, A, name):
    idx = M.indices(A)
    if not idx:
        raise InputError(f"{name} must be nonempty")
    return idx


def hausdorff_distance(A, B, M: FiniteMetricSpace) -> Fraction:
    """max(max_a d(a, B), max_b d(b, A)) for nonempty subsets A, B of M."""
    a, b = _nonempty(M, A, "A"), _nonempty(M, B, "B")
    return _hausdorff(M.d, a, b)


def _hausdorff(d, a, b):
    ab = max(min(d[i][j] for j in b) for i in a)
    ba = max(min(d[j][i] for i in a) for j in b)
    return max(ab, ba)


def subset_masks(n: int):
    """All nonempty subsets of range(n) as index tuples, in mask order."""
    for m in range(1, 1 << n):
        yield tuple(i for i in range(n) if m >> i & 1)


# --------------------------------------------------------------------------
# Whitney maps


@dataclass(frozen=True)
class WhitneyMap:
    """``mu(A) = (sum of d over pairs in A) / total``, with total the sum over all pairs."""
    space: FiniteMetricSpace
    total: Fraction

    def __call__(self, subset) -> Fraction:
        return self.of_indices(self.space.indices(subset))

    def of_indices(self, idx) -> Fraction:
        d = self.space.d
        s = sum((d[i][j] for i, j in combinations(idx, 2)), Fraction(0))
        return s / self.total if self.total else Fraction(0)

    def verify(self, exhaustive_limit: int = EXHAUSTIVE_WHITNEY, samples: int = 2000, seed: int = 0) -> dict:
        """Check the Whitney conditions: singletons at 0, whole space at 1, strict monotonicity.

        Exhaustive over all pairs A < B when the space has at most
        ``exhaustive_limit`` points, otherwise over random pairs.
        """
        n = len(self.space)
        single = all(self.of_indices((i,)) == 0 for i in range(n))
        whole = self.of_indices(tuple(range(n))) == (1 if n > 1 else 0)
        bad = None
        checked = 0
        if n <= exhaustive_limit:
            vals = {}
            for m in range(1, 1 << n):
                vals[m] = self.of_indices(tuple(i for i in range(n) if m >> i & 1))
            for m in range(1, 1 << n):
                # drop one point at a time: covers every strict inclusion by transitivity
                for i in range(n):
                    if m >> i & 1 and m != 1 << i:
                        checked += 1
                        if not vals[m & ~(1 << i)] < vals[m]:
                            bad = (m & ~(1 << i), m)
                            break
                if bad:
                    break
            exhaustive = True
        else:
            import random
            rng = random.Random(seed)
            for _ in range(samples):
                b = [i for i in range(n) if rng.random() < 0.5] or [0]
                if len(b) < 2:
                    continue
                a = [i for i in b if rng.random() < 0.7]
                if not a or len(a) == len(b):
                    a = b[:-1]
                checked += 1
                if not self.of_indices(tuple(a)) < self.of_indices(tuple(b)):
                    bad = (a, b)
                    break
            exhaustive = False
        out = {"singletons_zero": single, "whole_is_one": whole, "monotone": bad is None,
               "exhaustive": exhaustive, "checked": checked}
        if bad is not None:
            if exhaustive:
                bad = tuple(tuple(i for i in range(n) if m >> i & 1) for m in bad)
            out["violation"] = [[self.space.points[i] for i in s] for s in bad]
        return out


def whitney_map(M: FiniteMetricSpace) -> WhitneyMap:
    """The normalized pair-sum Whitney map of M."""
    n = len(M)
    total = sum((M.d[i][j] for i, j in combinations(range(n), 2)), Fraction(0))
    if n >= 2 and total == 0:  # pragma: no cover - excluded by the metric axioms
        raise InputError("all distances are zero; no strictly monotone map")
    return WhitneyMap(M, total)


# --------------------------------------------------------------------------
# connected closed sets


def _grid_connected_sets(X: GridComplex, cap: int, root=None):
    """Every connected cell set (closed mode) as a sorted tuple of cells.

    With ``root`` only the sets containing that cell.  Each set is produced
    once: branches either take the lowest frontier cell or ban it.
    """
    cells = X.cells
    pos = {c: i for i, c in enumerate(cells)}
    nbr = [0] * len(cells)
    for c, i in pos.items():
        for n in X.neighbors(c, "closed"):
            nbr[i] |= 1 << pos[n]
    out = []

    def rec(S, frontier, banned, allowed):
        if len(out) >= cap:
            raise CapExceeded(f"more than {cap} connected sets")
        out.append(S)
        while frontier:
            w = frontier & -frontier
            frontier ^= w
            k = w.bit_length() - 1
            S2 = S | w
            rec(S2, (frontier | nbr[k]) & allowed & ~banned & ~S2, banned, allowed)
            banned |= w

    roots = range(len(cells)) if root is None else [pos[root]]
    for r in roots:
        # sets whose lowest cell is r (or all sets through r)
        allowed = ~((1 << r) - 1) if root is None else -1
        rec(1 << r, nbr[r] & allowed & ~(1 << r), 0, allowed)
    return [tuple(cells[i] for i in range(len(cells)) if m >> i & 1) for m in out]


def _space_connected(space: FiniteSpace, mask: int) -> bool:
    # a closed set is disconnected iff it is the union of two disjoint nonempty closed subsets
    if mask == 0:
        return False
    subs = [c for c in space.closed_masks if c and c & mask == c and c != mask]
    subset = set(subs)
    return not any((mask & ~c) in subset for c in subs)


def connected_closed_sets(space, cap: int = DEFAULT_SET_CAP, containing=None) -> list:
    """Nonempty connected closed sets, as sorted tuples (cells or points).

    On a grid these are the closed-mode connected cell sets; on a finite
    space the closed sets that do not split into two disjoint closed parts.
    """
    if isinstance(space, GridComplex):
        if containing is not None:
            containing = tuple(containing)
            if containing not in space:
                raise InputError(f"{list(containing)} is not a cell of the grid")
        return _grid_connected_sets(space, cap, containing)
    if isinstance(space, FiniteSpace):
        out = []
        bit = None
        if containing is not None:
            bit = space.to_mask([containing])
        for m in space.closed_masks:
            if bit is not None and not m & bit:
                continue
            if _space_connected(space, m):
                out.append(tuple(space.to_points(m)))
                if len(out) > cap:
                    raise CapExceeded(f"more than {cap} connected sets")
        return out
    raise InputError("space must be a grid complex or a finite space")


def _metric_for(space, mu: WhitneyMap | None):
    if mu is not None:
        return mu
    if isinstance(space, GridComplex):
        return whitney_map(FiniteMetricSpace.from_grid(space))
    raise InputError("a Whitney map is required for a finite space")


def _label(p):
    return list(p) if isinstance(p, tuple) else p


@dataclass
class WhitneyBand:
    r: Fraction
    tol: Fraction
    sets: list                 # [(members, mu)]
    overlaps: list             # pairs of intersecting members (first few)
    overlap_count: int
    covers: bool
    uncovered: list
    eta: Fraction | None       # least diameter in the band

    def to_json(self) -> dict:
        return {
            "r": str(self.r), "tol": str(self.tol),
            "sets": [{"members": [_label(p) for p in s], "mu": str(m)} for s, m in self.sets],
            "count": len(self.sets),
            "pairwise_disjoint": self.overlap_count == 0,
            "overlap_count": self.overlap_count,
            "overlaps": [[i, j] for i, j in self.overlaps],
            "covers": self.covers,
            "uncovered": [_label(p) for p in self.uncovered],
            "eta": None if self.eta is None else str(self.eta),
        }


def whitney_levels(space, mu: WhitneyMap | None, r, tol=0, cap: int = DEFAULT_SET_CAP) -> WhitneyBand:
    """Connected closed sets with ``mu`` in ``[r - tol, r + tol]``.

    Disjointness and covering are reported: on finite spaces bands usually
    overlap.  ``mu`` defaults to the pair-sum map of the scaled grid metric.
    """
    r, tol = _rational(r), _rational(tol)
    if tol < 0:
        raise InputError("tol must be nonnegative")
    mu = _metric_for(space, mu)
    M = mu.space
    points = space.cells if isinstance(space, GridComplex) else space.points
    if set(points) != set(M.points):
        raise InputError("the Whitney map lives on a different point set")
    band = []
    for s in connected_closed_sets(space, cap):
        m = mu.of_indices(M.indices(s))
        if r - tol <= m <= r + tol:
            band.append((s, m))
    band.sort(key=lambda t: (t[1], len(t[0]), t[0]))
    overlaps, count = [], 0
    masks = [frozenset(s) for s, _ in band]
    for i, j in combinations(range(len(band)), 2):
        if masks[i] & masks[j]:
            count += 1
            if len(overlaps) < 10:
                overlaps.append((i, j))
    covered = frozenset().union(*masks) if masks else frozenset()
    uncovered = [p for p in points if p not in covered]
    eta = min((M.diameter(s) for s, _ in band), default=None)
    return WhitneyBand(r, tol, band, overlaps, count, not uncovered, uncovered, eta)


def mesh_bound(eta, n: int) -> Fraction:
    """The mesh bound eta / (4n) used with covers of a Whitney level."""
    if n < 1:
        raise InputError("n must be positive")
    return _rational(eta) / (4 * n)


@dataclass
class OrderChain:
    point: object
    sets: list
    is_chain: bool
    witness: tuple | None

    def to_json(self) -> dict:
        return {
            "point": _label(self.point),
            "sets": [[_label(p) for p in s] for s in self.sets],
            "count": len(self.sets),
            "chain": self.is_chain,
            "witness": None if self.witness is None else [[_label(p) for p in s] for s in self.witness],
        }


def order_chain(space, x, cap: int = DEFAULT_SET_CAP) -> OrderChain:
    """Connected closed sets containing ``x``; a chain, or two that overlap without nesting."""
    if isinstance(space, GridComplex):
        x = tuple(x)
    sets = connected_closed_sets(space, cap, containing=x)
    sets.sort(key=lambda s: (len(s), s))
    fs = [frozenset(s) for s in sets]
    witness = None
    for i, j in combinations(range(len(sets)), 2):
        if not fs[i] <= fs[j] and not fs[j] <= fs[i]:
            witness = (sets[i], sets[j])   # both contain x, so they meet
            break
    return OrderChain(x, sets, witness is None, witness)


# --------------------------------------------------------------------------
# covers


@dataclass(frozen=True)
class Box:
    """Closed axis-parallel box given by exact intervals."""
    intervals: tuple

    def meets(self, other: "Box") -> bool:
        return all(a0 <= b1 and b0 <= a1 for (a0, a1), (b0, b1) in zip(self.intervals, other.intervals))

    def to_json(self) -> list:
        return [[str(a), str(b)] for a, b in self.intervals]


def grid_box_cover(d: int, l: int) -> list:
    """The l^d closed boxes of side 1/l covering I^d, in lexicographic order."""
    if d < 1 or l < 1:
        raise InputError("dimension and number of cuts must be at least 1")
    if l ** d > DEFAULT_SET_CAP:
        raise CapExceeded(f"{l}^{d} boxes exceed the cap of {DEFAULT_SET_CAP}")
    return [Box(tuple((Fraction(k, l), Fraction(k + 1, l)) for k in idx))
            for idx in product(range(l), repeat=d)]


@dataclass
class CoverDegree:
    graph: list          # adjacency lists by cover index
    max_degree: int
    argmax: int

    def to_json(self) -> dict:
        return {"max_degree": self.max_degree, "argmax": self.argmax,
                "degrees": [len(a) for a in self.graph], "edges": sum(len(a) for a in self.graph) // 2}


def _meets(a, b) -> bool:
    if isinstance(a, Box) and isinstance(b, Box):
        return a.meets(b)
    return bool(frozenset(a) & frozenset(b))


def cover_degree(cover) -> CoverDegree:
    """Intersection graph of the cover and the largest number of other members one member meets."""
    cover = list(cover)
    if not cover:
        raise InputError("cover must be nonempty")
    n = len(cover)
    graph = [[] for _ in range(n)]
    if all(isinstance(c, Box) for c in cover) and n > 64:
        _box_graph(cover, graph)
    else:
        for i, j in combinations(range(n), 2):
            if _meets(cover[i], cover[j]):
                graph[i].append(j)
                graph[j].append(i)
    degs = [len(a) for a in graph]
    best = max(range(n), key=lambda i: (degs[i], -i))
    return CoverDegree(graph, degs[best], best)


def _box_graph(cover, graph):
    # sweep on the first coordinate keeps large grid covers cheap
    order = sorted(range(len(cover)), key=lambda i: cover[i].intervals[0])
    for a, i in enumerate(order):
        lo, hi = cover[i].intervals[0]
        for j in order[a + 1:]:
            if cover[j].intervals[0][0] > hi:
                break
            if cover[i].meets(cover[j]):
                graph[i].append(j)
                graph[j].append(i)
    for adj in graph:
        adj.sort()


# --------------------------------------------------------------------------
# small mesh


@dataclass
class SmallMeshResult:
    component: list | None
    diameter: Fraction | None
    components: int
    essential: str | None
    artifact: bool

    def to_json(self) -> dict:
        return {
            "found": self.component is not None,
            "component": None if self.component is None else cells_json(self.component),
            "diameter": None if self.diameter is None else str(self.diameter),
            "components": self.components,
            "essential": self.essential,
            "discretization_artifact": self.artifact,
        }


def _grid_diameter(X: GridComplex, cells, scale) -> Fraction:
    cells = sorted(cells)
    if not cells:
        return Fraction(0)
    if X.is_full:
        # closed-mode graph distance on the full grid is the Chebyshev distance
        span = max(max(c[i] for c in cells) - min(c[i] for c in cells) for i in range(X.dim))
        return span * scale
    best = 0
    cs = set(cells)
    for c in cells:
        dist = distances(X, [c])
        best = max(best, max(dist.get(o, X.res * X.dim) for o in cs))
    return best * scale


def small_mesh_witness(X: GridComplex, N, essential: str | None = None) -> SmallMeshResult:
    """A component of X minus the union of N with scaled diameter at least 1.

    The metric is closed-mode graph distance scaled by ``1 / (res - 1)``.  N
    must be pairwise disjoint closed cell sets of diameter at most 1/2.
    Components are open-mode pieces of the remaining cells; the widest one
    is returned (ties broken by first cell).  ``essential`` is the verdict of
    an essentiality check for the face pairs, if one was run: a missing
    witness on an essential grid is flagged as a discretization artifact.
    """
    scale = Fraction(1, max(X.res - 1, 1))
    members = [X.cell_set_of(S, f"N[{k}]") for k, S in enumerate(N)]
    for k, S in enumerate(members):
        d = _grid_diameter(X, S, scale)
        if d > Fraction(1, 2):
            raise InputError(f"member {k} of N has diameter {d} > 1/2", f"/N/{k}")
    for i, j in combinations(range(len(members)), 2):
        if touches(X, members[i], members[j]):
            raise InputError(f"members {i} and {j} of N are not disjoint", f"/N/{j}")
    used = frozenset().union(*members) if members else frozenset()
    rest = [c for c in X.cells if c not in used]
    comps = components(X, rest, "open")
    best, best_d = None, None
    for comp in comps:
        d = _grid_diameter(X, comp, scale)
        if best_d is None or d > best_d:
            best, best_d = comp, d
    if best is None or best_d < 1:
        return SmallMeshResult(None, None, len(comps), essential, essential == "essential")
    return SmallMeshResult(best, best_d, len(comps), essential, False)


# --------------------------------------------------------------------------
# diagonal maps into cubes


@dataclass
class CubeMap:
    functions: list              # CellFunction per pair
    partitions: list             # cell sets of the cube grid
    preimages: list
    checks: list                 # per pair: {"L_separates_faces", "preimage_separates"}

    @property
    def ok(self) -> bool:
        return all(all(c.values()) for c in self.checks)

    def to_json(self) -> dict:
        return {
            "functions": [f.to_json() for f in self.functions],
            "partitions": [cells_json(L) for L in self.partitions],
            "preimages": [cells_json(P) for P in self.preimages],
            "checks": [dict(c) for c in self.checks],
            "ok": self.ok,
        }


def middle_slab(cube: GridComplex, axis: int) -> frozenset:
    """Cells of the cube grid in the middle layer along ``axis`` (res should be odd)."""
    mid = cube.res // 2
    return frozenset(c for c in cube.cells if c[axis] == mid)


def _in_cell(y, cell, res) -> bool:
    return all(Fraction(k, res) <= v <= Fraction(k + 1, res) for v, k in zip(y, cell))


def essential_to_cube_map(X: GridComplex, pairs, partitions=None, cube_res: int = 3) -> CubeMap:
    """Diagonal of the Urysohn maps ``f_i = urysohn(C_i, D_i)`` into I^n.

    For each partition L_i of the cube grid between its faces along axis i
    (default: the middle slab), checks that ``f^{-1}[L_i]`` is a partition
    between C_i and D_i in X.  A point of I^n lies in L_i when it lies in
    one of its closed cells.
    """
    pairs = list(pairs)
    n = len(pairs)
    if n == 0:
        raise InputError("need at least one pair")
    fs = []
    for i, (C, D) in enumerate(pairs):
        C, D = X.cell_set_of(C, f"C[{i}]"), X.cell_set_of(D, f"D[{i}]")
        if C & D:
            raise InputError(f"pair {i} overlaps at cell {list(min(C & D))}", f"/pairs/{i}")
        fs.append((C, D, urysohn(X, C, D)))
    cube = GridComplex(n, cube_res)
    if partitions is None:
        partitions = [middle_slab(cube, i) for i in range(n)]
    if len(partitions) != n:
        raise InputError(f"expected {n} partitions, got {len(partitions)}")
    Ls = [cube.cell_set_of(L, f"L[{i}]") for i, L in enumerate(partitions)]
    image = {c: tuple(f[c] for _, _, f in fs) for c in X.cells}
    pre, checks = [], []
    for i, L in enumerate(Ls):
        P = frozenset(c for c in X.cells if any(_in_cell(image[c], k, cube_res) for k in L))
        C, D, _ = fs[i]
        pre.append(P)
        checks.append({
            "L_separates_faces": is_partition_between(cube, L, cube.face(i, 0), cube.face(i, 1)),
            "preimage_separates": is_partition_between(X, P, C, D),
        })
    return CubeMap([f for _, _, f in fs], Ls, pre, checks)

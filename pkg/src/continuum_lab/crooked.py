"""The crooked partition of the square, chicanes, and Bing's constructions on grids.

The partition P is a union of five closed rectangles running from the
bottom edge up, across, down, across and up to the top edge.  Its
complement has two pieces: M0 (containing the left edge) and M1
(containing the right edge).  The slices P0, P1, P2 cut P at
x = 5/14 and x = 9/14; a point on a cut belongs to both neighbouring
slices.

All geometry is exact: rectangles have rational corners and every
question about P is answered on the arrangement of the lines through
those corners.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product

from .errors import ConstructionError, InputError
from .gridspace import (CellFunction, GridComplex, cells_json, foursome_conditions,
                        is_partition_between, open_partition_check, urysohn)
from .wallman import FiniteSpace

T0 = Fraction(5, 14)
T1 = Fraction(9, 14)
STRIP = (Fraction(1, 7), Fraction(6, 7))
HALF = Fraction(1, 2)

_F = Fraction


def frac(v) -> Fraction:
    """Exact rational from an int, Fraction or a string like ``"5/14"``."""
    if isinstance(v, bool):
        raise InputError(f"not a rational: {v!r}")
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise InputError(f"not a rational: {v!r}")


DEFAULT_RECTANGLES = (
    (_F(1, 7), _F(2, 7), _F(0), _F(6, 7)),      # R1: up from the bottom edge
    (_F(1, 7), _F(4, 7), _F(5, 7), _F(6, 7)),   # R2: top bar
    (_F(3, 7), _F(4, 7), _F(1, 7), _F(6, 7)),   # R3: back down
    (_F(3, 7), _F(6, 7), _F(1, 7), _F(2, 7)),   # R4: bottom bar
    (_F(5, 7), _F(6, 7), _F(1, 7), _F(1)),      # R5: up to the top edge
)


def _mid(a, b):
    return (a + b) / 2


@dataclass(frozen=True)
class CrookedPartition:
    """Five closed rectangles ``(x0, x1, y0, y1)`` in the unit square."""
    rectangles: tuple = DEFAULT_RECTANGLES

    def __post_init__(self):
        rects = tuple(tuple(frac(v) for v in r) for r in self.rectangles)
        for k, (x0, x1, y0, y1) in enumerate(rects):
            if not (0 <= x0 <= x1 <= 1 and 0 <= y0 <= y1 <= 1):
                raise InputError(f"rectangle {k} is not inside the unit square", f"/rectangles/{k}")
        object.__setattr__(self, "rectangles", rects)

    # json

    def to_json(self) -> dict:
        return {"rectangles": [{"x": [str(r[0]), str(r[1])], "y": [str(r[2]), str(r[3])]}
                               for r in self.rectangles]}

    @classmethod
    def from_json(cls, data) -> "CrookedPartition":
        if not isinstance(data, dict) or not isinstance(data.get("rectangles"), list):
            raise InputError("geometry needs a 'rectangles' list", "/rectangles")
        rects = []
        for k, r in enumerate(data["rectangles"]):
            path = f"/rectangles/{k}"
            try:
                if isinstance(r, dict):
                    rects.append((frac(r["x"][0]), frac(r["x"][1]), frac(r["y"][0]), frac(r["y"][1])))
                elif isinstance(r, list) and len(r) == 4:
                    rects.append(tuple(frac(v) for v in r))
                else:
                    raise InputError("rectangle must be {x: [a, b], y: [c, d]}", path)
            except (KeyError, IndexError, TypeError):
                raise InputError("rectangle must be {x: [a, b], y: [c, d]}", path) from None
            except InputError as exc:
                raise InputError(exc.message, exc.path or path) from None
        if len(rects) != 5:
            raise InputError(f"expected five rectangles, got {len(rects)}", "/rectangles")
        return cls(tuple(rects))

    # point queries

    def contains(self, x, y) -> bool:
        x, y = frac(x), frac(y)
        return any(x0 <= x <= x1 and y0 <= y <= y1 for x0, x1, y0, y1 in self.rectangles)

    def horizontal_section(self, y) -> list:
        """P on the line at height y, as merged closed x-intervals."""
        y = frac(y)
        return _merge([(x0, x1) for x0, x1, y0, y1 in self.rectangles if y0 <= y <= y1])

    def vertical_section(self, x) -> list:
        """P on the vertical line at x, as merged closed y-intervals."""
        x = frac(x)
        return _merge([(y0, y1) for x0, x1, y0, y1 in self.rectangles if x0 <= x <= x1])

    def slices(self, x) -> tuple:
        """Indices j with x in the x-range of P_j."""
        x = frac(x)
        return tuple(j for j, ok in enumerate((x <= T0, T0 <= x <= T1, x >= T1)) if ok)

    # exact arrangement

    @cached_property
    def _arrangement(self):
        xs = sorted({_F(0), _F(1)} | {r[0] for r in self.rectangles} | {r[1] for r in self.rectangles})
        ys = sorted({_F(0), _F(1)} | {r[2] for r in self.rectangles} | {r[3] for r in self.rectangles})

        def rep(vals, a):
            return vals[a // 2] if a % 2 == 0 else _mid(vals[a // 2], vals[a // 2 + 1])

        na, nb = 2 * len(xs) - 1, 2 * len(ys) - 1
        inP = {}
        for a in range(na):
            for b in range(nb):
                inP[a, b] = self.contains(rep(xs, a), rep(ys, b))

        def faces(e):
            a, b = e
            out = []
            if a % 2:
                out += [(a - 1, b), (a + 1, b)]
            if b % 2:
                out += [(a, b - 1), (a, b + 1)]
            return out

        adj = {e: [] for e in inP}
        for e in inP:
            for f in faces(e):
                adj[e].append(f)
                adj[f].append(e)
        label = {}
        comps = []
        for e in sorted(inP):
            if inP[e] or e in label:
                continue
            k = len(comps)
            label[e] = k
            comp, queue = [e], deque([e])
            while queue:
                cur = queue.popleft()
                for f in adj[cur]:
                    if not inP[f] and f not in label:
                        label[f] = k
                        comp.append(f)
                        queue.append(f)
            comps.append(comp)
        left = {label[(0, b)] for b in range(nb) if not inP[0, b]}
        right = {label[(na - 1, b)] for b in range(nb) if not inP[na - 1, b]}
        return xs, ys, inP, adj, label, comps, left, right, faces

    def _locate(self, vals, v):
        for i, w in enumerate(vals):
            if v == w:
                return 2 * i
            if v < w:
                return 2 * i - 1
        raise InputError(f"coordinate {v} outside [0, 1]")

    def region(self, x, y) -> str:
        """``"P"``, ``"M0"``, ``"M1"`` (or ``"other"`` for a stray piece) for a point of I^2."""
        x, y = frac(x), frac(y)
        if not (0 <= x <= 1 and 0 <= y <= 1):
            raise InputError(f"point ({x}, {y}) outside the unit square")
        xs, ys, inP, _, label, _, left, right, _ = self._arrangement
        e = (self._locate(xs, x), self._locate(ys, y))
        if inP[e]:
            return "P"
        k = label[e]
        if k in left:
            return "M0"
        if k in right:
            return "M1"
        return "other"

    # invariants

    def invariants(self) -> dict:
        """Each CrookedPartition invariant as ``{"ok": bool, "detail": ...}``."""
        xs, ys, inP, adj, label, comps, left, right, faces = self._arrangement
        out = {}
        out["separation"] = {
            "ok": bool(left) and bool(right) and not (left & right),
            "detail": {"complement_pieces": len(comps), "left_pieces": sorted(left),
                       "right_pieces": sorted(right)},
        }

        def closure(keys):
            cl = set()
            for e, k in label.items():
                if k in keys:
                    cl.add(e)
                    stack = [e]
                    while stack:
                        cur = stack.pop()
                        for f in faces(cur):
                            if f not in cl:
                                cl.add(f)
                                stack.append(f)
            return cl

        touching = closure(left) & closure(right)
        out["closures_disjoint"] = {"ok": not touching and bool(left) and bool(right),
                                    "detail": {"common_boundary_elements": len(touching)}}
        xmin = min(r[0] for r in self.rectangles)
        xmax = max(r[1] for r in self.rectangles)
        out["strip"] = {"ok": xmin >= STRIP[0] and xmax <= STRIP[1],
                        "detail": {"x_extent": [str(xmin), str(xmax)],
                                   "strip": [str(STRIP[0]), str(STRIP[1])]}}
        bottom = self.horizontal_section(0)
        top = self.horizontal_section(1)
        out["edges"] = {"ok": all(b <= T0 for _, b in bottom) and all(a >= T1 for a, _ in top),
                        "detail": {"bottom": _ivals(bottom), "top": _ivals(top)}}
        at0 = self.vertical_section(T0)
        at1 = self.vertical_section(T1)
        out["thresholds"] = {"ok": all(a > HALF for a, _ in at0) and all(b < HALF for _, b in at1),
                             "detail": {"x=5/14": _ivals(at0), "x=9/14": _ivals(at1)}}
        return out

    def grid_cells(self, res: int) -> frozenset:
        """Cells of the res x res grid lying in P (exact when every corner sits on a grid line)."""
        for r in self.rectangles:
            for v in r:
                if (v * res).denominator != 1:
                    raise InputError(f"resolution {res} does not put corner {v} on a grid line")
        out = set()
        for i in range(res):
            for j in range(res):
                if self.contains(_F(2 * i + 1, 2 * res), _F(2 * j + 1, 2 * res)):
                    out.add((i, j))
        return frozenset(out)

    def grid_separation(self, res: int) -> bool:
        X = GridComplex(2, res)
        return is_partition_between(X, self.grid_cells(res), X.face(0, 0), X.face(0, 1))

    def report(self, resolutions=(14, 28)) -> dict:
        inv = self.invariants()
        grids = {str(r): self.grid_separation(r) for r in resolutions}
        inv["separation"]["detail"]["grid_checks"] = grids
        inv["separation"]["ok"] = inv["separation"]["ok"] and all(grids.values())
        return {
            "ok": all(v["ok"] for v in inv.values()),
            "invariants": inv,
            "thresholds": [str(T0), str(T1)],
            "rectangles": self.to_json()["rectangles"],
        }

    def validate(self, resolutions=(14, 28)) -> "CrookedPartition":
        rep = self.report(resolutions)
        if not rep["ok"]:
            bad = [k for k, v in rep["invariants"].items() if not v["ok"]]
            raise InputError(f"crooked partition fails: {', '.join(bad)}")
        return self


def _merge(ivals):
    out = []
    for a, b in sorted(ivals):
        if out and a <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return out


def _ivals(ivals):
    return [[str(a), str(b)] for a, b in ivals]


_DEFAULT = None


def crooked_partition(geometry: CrookedPartition | None = None) -> CrookedPartition:
    """The default partition (or ``geometry``) after checking every invariant."""
    global _DEFAULT
    if geometry is not None:
        return geometry.validate()
    if _DEFAULT is None:
        _DEFAULT = CrookedPartition().validate()
    return _DEFAULT


# --------------------------------------------------------------------------
# chicanes


@dataclass(frozen=True)
class Chicane:
    """Closed sets (X0, X1, X2) for the foursome (C, D, F, G).

    Members are cells of a grid or points of a finite space.
    """
    X0: frozenset
    X1: frozenset
    X2: frozenset
    foursome: tuple
    geometric: bool | None = None   # conditions also hold for the closed boxes

    def conditions(self, universe) -> dict:
        return chicane_conditions(universe, self.X0, self.X1, self.X2, *self.foursome)

    def to_json(self) -> dict:
        def enc(s):
            items = sorted(s)
            return [list(c) if isinstance(c, tuple) else c for c in items]
        C, D, F, G = self.foursome
        out = {"X0": enc(self.X0), "X1": enc(self.X1), "X2": enc(self.X2),
               "foursome": {"C": enc(C), "D": enc(D), "F": enc(F), "G": enc(G)}}
        if self.geometric is not None:
            out["geometric"] = self.geometric
        return out


def chicane_conditions(universe, X0, X1, X2, C, D, F, G) -> dict:
    """The six chicane conditions for sets of points (cells count as points)."""
    universe = set(universe)
    X0, X1, X2 = set(X0), set(X1), set(X2)
    return {
        "cover": X0 | X1 | X2 == universe,
        "C_in_X0": set(C) <= X0,
        "D_in_X2": set(D) <= X2,
        "X0_X2_disjoint": not (X0 & X2),
        "X0_X1_G_empty": not (X0 & X1 & set(G)),
        "X1_X2_F_empty": not (X1 & X2 & set(F)),
    }


def geometric_chicane_conditions(X: GridComplex, X0, X1, X2, C, D, F, G) -> dict:
    """The six conditions for the closed boxes (point-set intersections)."""
    cl = X.closure_mask
    return {
        "cover": set(X0) | set(X1) | set(X2) == set(X.cells),
        "C_in_X0": set(C) <= set(X0),
        "D_in_X2": set(D) <= set(X2),
        "X0_X2_disjoint": not (cl(X0) & cl(X2)),
        "X0_X1_G_empty": not (cl(X0) & cl(X1) & cl(G)),
        "X1_X2_F_empty": not (cl(X1) & cl(X2) & cl(F)),
    }


def _pliable(C, D, F, G):
    for (a, an), (b, bn) in (((C, "C"), (D, "D")), ((C, "C"), (F, "F")), ((D, "D"), (G, "G"))):
        common = set(a) & set(b)
        if common:
            raise InputError(f"not pliable: {an} and {bn} share {sorted(common)[0]!r}")


def chicane_from_maps(X: GridComplex, foursome, f: CellFunction, g: CellFunction,
                      partition: CrookedPartition | None = None) -> Chicane:
    """``X_j = {x : g(x) in the x-range of P_j}`` once ``(g(x), f(x))`` lies in P everywhere.

    Each cell is treated as the point at which f and g are evaluated, so the
    chicane conditions are checked on cells; the ``geometric`` flag says
    whether they also hold for the closed boxes.
    """
    P = partition or crooked_partition()
    C, D, F, G = (X.cell_set_of(s, n) for s, n in zip(foursome, "CDFG"))
    _pliable(C, D, F, G)
    missing = [c for c in X.cells if c not in f or c not in g]
    if missing:
        raise InputError(f"f and g must be defined on every cell (missing {list(missing[0])})")
    conds = foursome_conditions(f, C, D, F, G)
    bad = [k for k, ok in conds.items() if not ok]
    if bad:
        raise InputError(f"f is not a Urysohn map for the foursome: {', '.join(bad)} fails")
    outside = [c for c in X.cells if not P.contains(g[c], f[c])]
    if outside:
        raise InputError("image outside P at cells " + ", ".join(str(list(c)) for c in outside[:10])
                         + (" ..." if len(outside) > 10 else ""))
    parts = [set(), set(), set()]
    for c in X.cells:
        for j in P.slices(g[c]):
            parts[j].add(c)
    X0, X1, X2 = (frozenset(p) for p in parts)
    conds = chicane_conditions(X.cells, X0, X1, X2, C, D, F, G)
    if not all(conds.values()):  # pragma: no cover - guaranteed by the partition invariants
        raise ConstructionError("chicane conditions fail: " + ", ".join(k for k, v in conds.items() if not v))
    geo = all(geometric_chicane_conditions(X, X0, X1, X2, C, D, F, G).values())
    return Chicane(X0, X1, X2, (C, D, F, G), geo)


@dataclass
class ChicaneSearchResult:
    chicane: Chicane | None
    certificate: dict

    @property
    def found(self) -> bool:
        return self.chicane is not None

    def to_json(self) -> dict:
        return {"found": self.found,
                "chicane": None if self.chicane is None else self.chicane.to_json(),
                "certificate": dict(self.certificate)}


def chicane_masks(closed: list, full: int, C: int, D: int, F: int, G: int, closure=None):
    """First chicane ``(X0, X1, X2)`` as bitmasks over a finite closed-set family, or None.

    ``closed`` lists every closed set.  X0 and X2 run over closed sets
    containing C and D; X1 is the smallest closed set covering the rest,
    which is optimal because the remaining conditions only get harder as
    X1 grows.  Returns ``(triple or None, pairs examined)``.
    """
    if closure is None:
        closure = _closure_fn(closed, full)
    zeros = [x for x in closed if x & C == C]
    twos = [x for x in closed if x & D == D]
    n = 0
    for x0 in zeros:
        for x2 in twos:
            if x0 & x2:
                continue
            n += 1
            x1 = closure(full & ~(x0 | x2))
            if not (x0 & x1 & G) and not (x1 & x2 & F):
                return (x0, x1, x2), n
    return None, n


def _closure_fn(closed, full):
    cache = {}

    def closure(m):
        v = cache.get(m)
        if v is None:
            v = full
            for c in closed:
                if c & m == m:
                    v &= c
            cache[m] = v
        return v
    return closure


def _search_space(space: FiniteSpace, C, D, F, G):
    family = {0, space.full} | set(space.closed_base)
    for a in family:
        for b in family:
            if a & b not in family:
                raise InputError("closed base is not closed under intersection")
    masks = []
    for s, name in ((C, "C"), (D, "D"), (F, "F"), (G, "G")):
        m = s if isinstance(s, int) else space.to_mask(s)
        if not space.is_closed(m):
            raise InputError(f"{name} is not a closed set of the space")
        masks.append(m)
    C, D, F, G = masks
    for (a, an), (b, bn) in (((C, "C"), (D, "D")), ((C, "C"), (F, "F")), ((D, "D"), (G, "G"))):
        if a & b:
            raise InputError(f"not pliable: {an} and {bn} intersect")
    closed = list(space.closed_masks)
    triple, n = chicane_masks(closed, space.full, C, D, F, G)
    cert = {"exhaustive": True, "closed_sets": len(closed), "pairs_examined": n}
    if triple is None:
        return ChicaneSearchResult(None, cert)
    pts = lambda m: frozenset(space.to_points(m))
    four = tuple(pts(m) for m in (C, D, F, G))
    ch = Chicane(*(pts(m) for m in triple), four)
    if not all(ch.conditions(space.points).values()):  # pragma: no cover
        raise AssertionError("chicane failed verification")
    return ChicaneSearchResult(ch, cert)


def _search_grid(X: GridComplex, C, D, F, G, budget):
    C, D, F, G = (X.cell_set_of(s, n) for s, n in zip((C, D, F, G), "CDFG"))
    _pliable(C, D, F, G)
    cells = list(X.cells)
    cl = X._elements[2]
    gm, fm = X.closure_mask(G), X.closure_mask(F)
    # label 0: in X0, 2: in X2, 1: in neither (then in the minimal X1)
    forced = {c: 0 for c in C}
    for c in D:
        forced[c] = 2
    nodes = [0]
    label = {}
    masks = [0, 0, 0]

    def ok_partial():
        # X1 only grows as more cells get label 1, X0 / X2 as well, so
        # every condition is monotone and can be checked on the prefix
        if masks[0] & masks[2]:
            return False
        if masks[0] & masks[1] & gm:
            return False
        if masks[1] & masks[2] & fm:
            return False
        return True

    def dfs(i):
        nodes[0] += 1
        if budget is not None and nodes[0] > budget:
            raise _Stop
        if i == len(cells):
            return True
        c = cells[i]
        options = (forced[c],) if c in forced else (0, 2, 1)
        for lab in options:
            saved = masks[lab]
            masks[lab] |= cl[c]
            label[c] = lab
            if ok_partial() and dfs(i + 1):
                return True
            masks[lab] = saved
            del label[c]
        return False

    try:
        hit = dfs(0)
    except _Stop:
        return ChicaneSearchResult(None, {"exhaustive": False, "nodes": nodes[0],
                                          "reason": "budget exhausted"})
    cert = {"exhaustive": True, "nodes": nodes[0], "cells": len(cells)}
    if not hit:
        return ChicaneSearchResult(None, cert)
    X0 = frozenset(c for c in cells if label[c] == 0)
    X2 = frozenset(c for c in cells if label[c] == 2)
    X1 = frozenset(c for c in cells if label[c] == 1)
    conds = geometric_chicane_conditions(X, X0, X1, X2, C, D, F, G)
    if not all(conds.values()):  # pragma: no cover
        raise AssertionError("chicane failed verification")
    return ChicaneSearchResult(Chicane(X0, X1, X2, (C, D, F, G), True), cert)


class _Stop(Exception):
    pass


def chicane_search(space, foursome, budget: int | None = None) -> ChicaneSearchResult:
    """Exhaustive search for a chicane.

    On a :class:`FiniteSpace` the closed sets are generated by its base
    (which must be closed under intersection).  On a :class:`GridComplex`
    the closed sets are unions of cells and all intersections are taken
    point-wise on the closed boxes.
    """
    C, D, F, G = foursome
    if isinstance(space, FiniteSpace):
        return _search_space(space, C, D, F, G)
    if isinstance(space, GridComplex):
        return _search_grid(space, C, D, F, G, budget)
    raise InputError("chicane_search needs a FiniteSpace or a GridComplex")


# --------------------------------------------------------------------------
# Bing's constructions


def center(c, axis: int, res: int) -> Fraction:
    return Fraction(2 * c[axis] + 1, 2 * res)


def coordinate_function(X: GridComplex, axis: int) -> CellFunction:
    """Cell centre's coordinate along ``axis``."""
    return CellFunction((c, center(c, axis, X.res)) for c in X.cells)


@dataclass
class BingResult:
    cells: frozenset
    partition_checks: list        # per i: is u_i^{-1}[P] a partition between the faces of axis 2i
    preimages: list = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return all(self.partition_checks)

    def to_json(self) -> dict:
        return {"cells": cells_json(self.cells), "size": len(self.cells),
                "partition_checks": list(self.partition_checks), "ok": self.ok}


def _require_res(X: GridComplex):
    if X.res % 14:
        raise InputError(f"resolution {X.res} is not divisible by 14")


def bing_construction(k: int, X: GridComplex, functions, partition: CrookedPartition | None = None) -> BingResult:
    """``intersection over i of u_i^{-1}[P]`` with ``u_i = (centre coordinate 2i, f_i)``."""
    P = partition or crooked_partition()
    if k < 0:
        raise InputError("k must be nonnegative")
    if X.dim != 2 * k and k > 0:
        raise InputError(f"grid dimension {X.dim} is not 2k = {2 * k}")
    if k and len(functions) < k:
        raise InputError(f"{k} functions needed, {len(functions)} given")
    _require_res(X)
    result = set(X.cells)
    checks, pre = [], []
    for i in range(k):
        f = functions[i]
        Pi = frozenset(c for c in X.cells if P.contains(center(c, 2 * i, X.res), f[c]))
        pre.append(Pi)
        checks.append(is_partition_between(X, Pi, X.face(2 * i, 0), X.face(2 * i, 1)))
        result &= Pi
    return BingResult(frozenset(result), checks, pre)


def dilate(X: GridComplex, cells) -> frozenset:
    """Closure of a cell-open set: the cells together with their closed-mode neighbours."""
    out = set(cells)
    for c in cells:
        out.update(X.neighbors(c, "closed"))
    return frozenset(out)


@dataclass
class BingPartition:
    W0: frozenset
    W1: frozenset
    L: frozenset
    chain0: list      # W_{0,i}, i = 0..steps
    chain1: list
    checks: dict
    cell_partition: bool = False   # stricter: no W0 cell shares a facet with a W1 cell

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"W0": cells_json(self.W0), "W1": cells_json(self.W1), "L": cells_json(self.L),
                "chain_sizes": [[len(a), len(b)] for a, b in zip(self.chain0, self.chain1)],
                "checks": dict(self.checks), "cell_partition": self.cell_partition, "ok": self.ok}


def bing_partition(X: GridComplex, F0, F1, functions, steps: int,
                   partition: CrookedPartition | None = None) -> BingPartition:
    """Iterate ``W_{j,i+1} = u_i^{-1}[M_j]`` with ``u_i = (g_i, f_i)``.

    ``W_{j,0} = F_j``; ``g_i`` is the Urysohn function of the closures of
    ``W_{0,i}`` and ``W_{1,i}``.  Returns the final regions, the complement
    L and the verified postconditions.

    The W sets are cell-open (the complement of the cells they miss), so the
    partition check is geometric: a facet shared by a W0 cell and a W1 cell
    belongs to L.  ``cell_partition`` reports the stricter reading where
    such cells count as connected; it needs finer grids once the regions
    start to interleave.
    """
    P = partition or crooked_partition()
    F0, F1 = X.cell_set_of(F0, "F0"), X.cell_set_of(F1, "F1")
    if not F0 or not F1:
        raise InputError("F0 and F1 must be nonempty")
    if F0 & F1:
        raise InputError(f"F0 and F1 share cell {list(min(F0 & F1))}")
    if steps < 0 or steps > len(functions):
        raise InputError(f"steps must be between 0 and the number of functions ({len(functions)})")
    W0, W1 = [F0], [F1]
    mono = True
    for i in range(steps):
        c0, c1 = dilate(X, W0[-1]), dilate(X, W1[-1])
        if c0 & c1:
            raise ConstructionError("closures of the two regions touch", step=i)
        g = urysohn(X, c0, c1)
        f = functions[i]
        n0, n1 = set(), set()
        for c in X.cells:
            r = P.region(g[c], f[c])
            if r == "M0":
                n0.add(c)
            elif r == "M1":
                n1.add(c)
        n0, n1 = frozenset(n0), frozenset(n1)
        mono = mono and c0 <= n0 and c1 <= n1
        W0.append(n0)
        W1.append(n1)
    w0 = frozenset().union(*W0)
    w1 = frozenset().union(*W1)
    L = frozenset(X.cells) - w0 - w1
    geo = open_partition_check(X, w0, w1, F0, F1) if not (w0 & w1) else {}
    checks = {
        "F0_in_W0": F0 <= w0,
        "F1_in_W1": F1 <= w1,
        "disjoint": not (w0 & w1),
        "monotone": mono,
        "partition": bool(geo) and all(geo.values()),
    }
    cellwise = not (w0 & w1) and is_partition_between(X, L, F0, F1)
    return BingPartition(w0, w1, L, W0, W1, checks, cellwise)

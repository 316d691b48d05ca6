"""Theories, atomic diagrams, embeddings and bounded model search.

Lattices are enumerated up to isomorphism by size.  Every lattice with at
least three elements arises from a smaller one by adjoining a new coatom
(removing a coatom never destroys a lattice: meets of the remaining
elements cannot equal it), so size n + 1 is generated from the canonical
list of size n and filtered through a canonical labeling of the order
relation.
"""
from __future__ import annotations

import re
import string
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from ..errors import CapExceeded, InputError
from ..lattice import FiniteLattice
from .builtins import builtin
from .evaluate import compile_sentence, evaluate, evaluator_for
from .syntax import Const, Eq, Join, Meet, Neq, ParseError, constants, parse

DEFAULT_CAP = 10


# --------------------------------------------------------------------------
# theories


@dataclass(frozen=True)
class Theory:
    """Named sentences over declared constants.

    ``interpretations`` optionally maps constants to element ids; it is used
    when the theory is checked against a given lattice.
    """
    sentences: tuple = ()          # ((name, Sentence), ...)
    constants: tuple = ()
    interpretations: dict = field(default_factory=dict)

    def __post_init__(self):
        names = [n for n, _ in self.sentences]
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            raise InputError(f"duplicate sentence name {sorted(dup)[0]!r}")
        if len(set(self.constants)) != len(self.constants):
            raise InputError("duplicate constant declaration")
        declared = set(self.constants)
        for name, s in self.sentences:
            missing = constants(s) - declared
            if missing:
                raise InputError(f"sentence {name!r} uses undeclared constant {sorted(missing)[0]!r}")
        for c in self.interpretations:
            if c not in declared:
                raise InputError(f"interpretation for undeclared constant {c!r}")

    def __len__(self):
        return len(self.sentences)

    def names(self):
        return [n for n, _ in self.sentences]

    def sentence(self, name):
        for n, s in self.sentences:
            if n == name:
                return s
        raise KeyError(name)

    def extend(self, *named) -> "Theory":
        return Theory(self.sentences + tuple(named), self.constants, dict(self.interpretations))


def theory(*named, constants=(), interpretations=None) -> Theory:
    """Build a theory from ``(name, sentence)`` pairs or bare sentences."""
    out = []
    for i, item in enumerate(named):
        out.append(item if isinstance(item, tuple) else (f"s{i}", item))
    return Theory(tuple(out), tuple(constants), dict(interpretations or {}))


_LINE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_.-]*)\s*:\s*(.*)$")


def parse_theory(text: str, source: str = "<theory>") -> Theory:
    """Parse the theory file format.

    One ``name: sentence`` per line; ``#`` starts a comment; a line ending
    in ``\\`` continues on the next one.  ``constants: a b c`` declares
    named constants (optionally ``a=elem``), and ``name: builtin NAME [ARG]``
    includes a builtin sentence.
    """
    consts, interp, entries = [], {}, []
    logical, start = "", None
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].rstrip()
        if start is None:
            start = lineno
        if line.endswith("\\"):
            logical += line[:-1] + " "
            continue
        logical += line
        if logical.strip():
            m = _LINE.match(logical)
            if not m:
                raise InputError(f"{source}:{start}: expected 'name: sentence'")
            name, body = m.group(1), m.group(2).strip()
            if name == "constants":
                for tok in body.split():
                    c, _, val = tok.partition("=")
                    if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", c):
                        raise InputError(f"{source}:{start}: bad constant name {c!r}")
                    consts.append(c)
                    if val:
                        interp[c] = val
            else:
                entries.append((start, name, body))
        logical, start = "", None
    named = []
    for lineno, name, body in entries:
        try:
            if body.startswith("builtin ") or body == "builtin":
                words = body.split(None, 2)
                if len(words) < 2:
                    raise InputError("builtin needs a name")
                s = builtin(words[1], words[2] if len(words) > 2 else None, consts)
            else:
                s = parse(body, consts)
        except ParseError as exc:
            raise InputError(f"{source}:{lineno}: sentence {name!r}: {exc}") from None
        except InputError as exc:
            raise InputError(f"{source}:{lineno}: sentence {name!r}: {exc}") from None
        named.append((name, s))
    try:
        return Theory(tuple(named), tuple(consts), interp)
    except InputError as exc:
        raise InputError(f"{source}: {exc}") from None


def load_theory(path) -> Theory:
    path = Path(path)
    return parse_theory(path.read_text(), str(path))


def format_theory(t: Theory) -> str:
    from .syntax import pretty
    lines = []
    if t.constants:
        lines.append("constants: " + " ".join(
            f"{c}={t.interpretations[c]}" if c in t.interpretations else c for c in t.constants))
    lines.extend(f"{name}: {pretty(s)}" for name, s in t.sentences)
    return "\n".join(lines) + "\n"


def check_theory(lat: FiniteLattice, t: Theory, bindings: dict | None = None) -> dict:
    """``{sentence name: EvalResult}`` under the theory's interpretations."""
    binds = dict(t.interpretations)
    binds.update(bindings or {})
    return {name: evaluate(lat, s, binds) for name, s in t.sentences}


# --------------------------------------------------------------------------
# diagrams and embeddings


def diagram(lat: FiniteLattice) -> Theory:
    """Atomic diagram: constants ``e0, e1, ...``, every table entry and all disequalities.

    Disequalities are included so that a model of the diagram contains an
    injective image of the lattice.
    """
    n = len(lat)
    names = [f"e{i}" for i in range(n)]
    c = [Const(x) for x in names]
    out = []
    for i in range(n):
        for j in range(n):
            out.append((f"meet_{i}_{j}", Eq(Meet(c[i], c[j]), c[lat.meet[i][j]])))
    for i in range(n):
        for j in range(n):
            out.append((f"join_{i}_{j}", Eq(Join(c[i], c[j]), c[lat.join[i][j]])))
    for i in range(n):
        for j in range(i + 1, n):
            out.append((f"neq_{i}_{j}", Neq(c[i], c[j])))
    return Theory(tuple(out), tuple(names), {names[i]: lat.elements[i] for i in range(n)})


def _down_sizes(lat):
    return [bin(m).count("1") for m in lat.down_masks]


def is_embedding(A: FiniteLattice, B: FiniteLattice, f: dict) -> bool:
    """``f`` (index -> index) is injective and preserves meet, join and both bounds."""
    n = len(A)
    if len(f) != n or len(set(f.values())) != n:
        return False
    if f[A.bottom] != B.bottom or f[A.top] != B.top:
        return False
    return all(f[A.meet[x][y]] == B.meet[f[x]][f[y]] and f[A.join[x][y]] == B.join[f[x]][f[y]]
               for x in range(n) for y in range(n))


def find_embedding(A: FiniteLattice, B: FiniteLattice, bijective: bool = False) -> dict | None:
    """Some injective lattice homomorphism ``A -> B`` preserving 0 and 1, as ids.

    Backtracking over A's elements in order of down-set size; the returned
    map is verified on every pair before it is reported.
    """
    if len(A) > len(B) or (bijective and len(A) != len(B)):
        return None
    if A.is_degenerate() != B.is_degenerate():
        # 0 = 1 must be preserved both ways
        return None
    sizes = _down_sizes(A)
    order = [A.bottom, A.top] + sorted((x for x in range(len(A)) if x not in (A.bottom, A.top)),
                                       key=lambda x: (sizes[x], x))
    if A.bottom == A.top:
        order = [A.bottom]
    bsizes = _down_sizes(B)
    f: dict = {}
    used = set()

    def consistent(x, b):
        for y, fy in f.items():
            if A.leq(x, y) != B.leq(b, fy) or A.leq(y, x) != B.leq(fy, b):
                return False
            m, j = A.meet[x][y], A.join[x][y]
            if m in f and f[m] != B.meet[b][fy]:
                return False
            if j in f and f[j] != B.join[b][fy]:
                return False
        return True

    def candidates(x):
        if x == A.bottom:
            return [B.bottom]
        if x == A.top:
            return [B.top]
        # the image of x has at least as many elements below it
        return [b for b in range(len(B)) if b not in used and bsizes[b] >= sizes[x]]

    def search(k):
        if k == len(order):
            return True
        x = order[k]
        for b in candidates(x):
            if consistent(x, b):
                f[x] = b
                used.add(b)
                if search(k + 1):
                    return True
                del f[x]
                used.discard(b)
        return False

    if not search(0):
        return None
    if not is_embedding(A, B, f):  # pragma: no cover - guarded by construction
        return None
    return {A.elements[x]: B.elements[b] for x, b in sorted(f.items())}


def is_isomorphic(A: FiniteLattice, B: FiniteLattice) -> bool:
    return len(A) == len(B) and find_embedding(A, B, bijective=True) is not None


# --------------------------------------------------------------------------
# canonical forms and enumeration


def _refine(cells, down, up, n):
    while True:
        cell_of = [0] * n
        for k, cell in enumerate(cells):
            for x in cell:
                cell_of[x] = k
        new = []
        for k, cell in enumerate(cells):
            if len(cell) == 1:
                new.append(cell)
                continue
            sig = {}
            for x in cell:
                below = [0] * len(cells)
                above = [0] * len(cells)
                for y in range(n):
                    if down[x] >> y & 1:
                        below[cell_of[y]] += 1
                    if up[x] >> y & 1:
                        above[cell_of[y]] += 1
                sig.setdefault((tuple(below), tuple(above)), []).append(x)
            for key in sorted(sig):
                new.append(sig[key])
        if len(new) == len(cells):
            return new
        cells = new


def canonical_form(down: list) -> tuple:
    """Canonical ``(code, order)`` of a finite poset given by down-set bitmasks.

    ``code`` lists the relabeled down-sets and is equal for isomorphic
    posets; ``order[i]`` is the element placed at position ``i``.
    Individualization-refinement with twin pruning (twins share strict
    lower and upper sets, so swapping them is an automorphism).
    """
    n = len(down)
    up = [sum(1 << y for y in range(n) if down[y] >> x & 1) for x in range(n)]
    best = [None, None]

    def leaf(cells):
        order = [c[0] for c in cells]
        pos = {x: i for i, x in enumerate(order)}
        code = tuple(sum(1 << pos[y] for y in range(n) if down[x] >> y & 1) for x in order)
        if best[0] is None or code < best[0]:
            best[0], best[1] = code, order

    def search(cells):
        cells = _refine(cells, down, up, n)
        k = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if k is None:
            leaf(cells)
            return
        tried = []
        for x in cells[k]:
            sx = (down[x] & ~(1 << x), up[x] & ~(1 << x))
            if any(sx == (down[t] & ~(1 << t), up[t] & ~(1 << t)) for t in tried):
                continue
            tried.append(x)
            rest = [y for y in cells[k] if y != x]
            search(cells[:k] + [[x], rest] + cells[k + 1:])

    search([list(range(n))])
    return best[0], best[1]


def _element_names(n):
    if n == 1:
        return ["0"]
    inner = []
    letters = string.ascii_lowercase.replace("v", "")  # "v" is the join symbol
    for i in range(n - 2):
        inner.append(letters[i] if i < len(letters) else f"x{i}")
    return ["0"] + inner + ["1"]


def lattice_from_code(code) -> FiniteLattice:
    """The lattice whose element i has down-set bitmask ``code[i]``."""
    n = len(code)
    by_mask = {m: i for i, m in enumerate(code)}
    size = [bin(m).count("1") for m in code]
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            meet[x][y] = by_mask[code[x] & code[y]]
            need = code[x] | code[y]
            join[x][y] = min((z for z in range(n) if code[z] & need == need), key=lambda z: size[z])
    return FiniteLattice(tuple(_element_names(n)), tuple(map(tuple, meet)),
                         tuple(map(tuple, join)), 0, n - 1)


def canonical_lattice(lat: FiniteLattice) -> FiniteLattice:
    code, _ = canonical_form(list(lat.down_masks))
    return lattice_from_code(code)


def _children(code):
    """Down-set codes of all one-coatom extensions (top last)."""
    n = len(code)
    top = n - 1
    inner = list(range(top))                 # candidates for the new coatom's down-set
    order = sorted(inner, key=lambda x: (bin(code[x]).count("1"), x))
    principal = {code[x] for x in inner}
    out = []

    def grow(i, chosen):
        if i == len(order):
            if chosen & 1 and all((chosen & code[x]) in principal for x in inner):
                c = n - 1
                new = [code[x] for x in inner] + [chosen | (1 << c)]
                new.append((1 << (n + 1)) - 1)
                out.append(new)
            return
        x = order[i]
        grow(i + 1, chosen)
        strict = code[x] & ~(1 << x)
        if strict & chosen == strict:
            grow(i + 1, chosen | (1 << x))

    grow(0, 0)
    return out


@lru_cache(maxsize=None)
def lattice_codes(n: int) -> tuple:
    """Canonical codes of all n-element lattices, sorted."""
    if n < 1:
        return ()
    if n == 1:
        return ((1,),)
    if n == 2:
        return ((1, 3),)
    seen = set()
    for parent in lattice_codes(n - 1):
        for child in _children(list(parent)):
            seen.add(canonical_form(child)[0])
    return tuple(sorted(seen))


def enumerate_lattices(n: int, cap: int = DEFAULT_CAP):
    """All lattices with exactly ``n`` elements up to isomorphism, canonical order."""
    if n > cap:
        raise CapExceeded(f"size {n} exceeds the enumeration cap {cap}")
    for code in lattice_codes(n):
        yield lattice_from_code(code)


LATTICE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 5, 6: 15, 7: 53, 8: 222, 9: 1078, 10: 5994}


# --------------------------------------------------------------------------
# model search


@dataclass
class ModelSearchResult:
    model: FiniteLattice | None
    bindings: dict
    certificate: dict
    models: list = field(default_factory=list)   # (lattice, bindings) when all_models

    @property
    def found(self) -> bool:
        return self.model is not None

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "model": self.model.to_json() if self.model is not None else None,
            "bindings": dict(self.bindings),
            "certificate": dict(self.certificate),
        }


class _Checker:
    """Checks a theory on one lattice, assigning constants depth first."""

    def __init__(self, t: Theory):
        self.consts = list(t.constants)
        rank = {c: i for i, c in enumerate(self.consts)}
        self.stages = [[] for _ in range(len(self.consts) + 1)]
        for name, s in t.sentences:
            plan = compile_sentence(s)
            last = max((rank[c] + 1 for c in plan.constants), default=0)
            self.stages[last].append(plan)

    def models(self, lat: FiniteLattice, first_only=True):
        evs = {}

        def holds(plan, values):
            ev = evs.get(id(plan))
            if ev is None:
                ev = evs[id(plan)] = evaluator_for(plan, lat)
            env = [-1] * max(plan.nslots, 1)
            env[0], env[1] = lat.bottom, lat.top
            for i, c in enumerate(plan.constants):
                env[2 + i] = values[c]
            return ev.run(plan.root, env)

        found = []

        def dfs(k, values):
            if not all(holds(p, values) for p in self.stages[k]):
                return False
            if k == len(self.consts):
                found.append({c: lat.elements[values[c]] for c in self.consts})
                return first_only
            c = self.consts[k]
            for e in range(len(lat)):
                values[c] = e
                if dfs(k + 1, values):
                    return True
            values.pop(c, None)
            return False

        dfs(0, {})
        return found


def model_search(t: Theory, size_bound: int, cap: int = DEFAULT_CAP, min_size: int = 1,
                 all_models: bool = False, largest_first: bool = False) -> ModelSearchResult:
    """First model of ``t`` (smallest size, then canonical order) with at most ``size_bound`` elements.

    ``largest_first`` walks the sizes downward from the bound instead, which
    reports the biggest model; ``min_size`` skips the small sizes.

    With ``all_models`` every model (one binding per lattice) up to the
    bound is collected.  The certificate records how many lattices of each
    size were checked and whether the enumeration ran to exhaustion.
    """
    if isinstance(t, (list, tuple)):
        t = theory(*t)
    if size_bound < 1:
        raise InputError("size bound must be at least 1")
    if size_bound > cap:
        raise CapExceeded(f"size bound {size_bound} exceeds the configured cap {cap}")
    checker = _Checker(t)
    checked = {}
    models = []
    sizes = range(max(min_size, 1), size_bound + 1)
    for n in (reversed(sizes) if largest_first else sizes):
        checked[n] = 0
        for lat in enumerate_lattices(n, cap):
            checked[n] += 1
            found = checker.models(lat)
            if found:
                if not all_models:
                    cert = {"exhaustive": False, "size_bound": size_bound, "checked": checked,
                            "models_found": 1}
                    return ModelSearchResult(lat, found[0], _jsonable(cert), [(lat, found[0])])
                models.append((lat, found[0]))
    cert = {"exhaustive": True, "size_bound": size_bound, "checked": checked,
            "models_found": len(models)}
    if models:
        lat, binds = models[0]
        return ModelSearchResult(lat, binds, _jsonable(cert), models)
    return ModelSearchResult(None, {}, _jsonable(cert), [])


def _jsonable(cert):
    cert = dict(cert)
    cert["checked"] = {str(k): v for k, v in cert["checked"].items()}
    return cert

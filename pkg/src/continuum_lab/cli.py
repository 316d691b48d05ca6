"""Command-line front end: ``continuum-lab SUBCOMMAND ...``.

Every run produces a report with the subcommand, input digests, verdicts,
the result and the exit code.  Exit code 0 means every verdict passed, 1
that some verification failed (the report carries the witness) and 2 that
an input was rejected (the report names the input and a JSON pointer).

Inputs that take JSON accept either a file path or the JSON text itself.
Reports are deterministic; only the ``timing`` field varies between runs
and it is left out of ``report_sha256``.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import crooked, gridspace, hyperspace, wallman
from .errors import ConstructionError, InputError
from .formula import (BUILTINS, builtin, check_theory, diagram, evaluate, format_theory,
                      load_theory, model_search, parse, parse_theory, pretty, theory)
from .gridspace import CellFunction, GridComplex, cells_json, parse_cells
from .lattice import FiniteLattice, SetLattice, is_disjunctive, is_distributive, validate_lattice

PROG = "continuum-lab"
DEFAULT_BUDGET = 1_000_000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


# --------------------------------------------------------------------------
# reports


class RunReport:
    def __init__(self, command: str, args):
        self.command = command
        self.flags = {"budget": args.budget, "seed": args.seed}
        self.inputs = {}
        self.verdicts = []
        self.result = {}
        self.error = None
        self.timing = 0.0

    def add_input(self, name, source, raw: bytes):
        self.inputs[name] = {"source": source, "sha256": hashlib.sha256(raw).hexdigest()}

    def verdict(self, name: str, ok: bool, witness=None):
        entry = {"name": name, "ok": bool(ok)}
        if witness is not None and not ok:
            entry["witness"] = witness
        self.verdicts.append(entry)

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return 2
        return 0 if all(v["ok"] for v in self.verdicts) else 1

    def body(self) -> dict:
        out = {"command": self.command, "flags": dict(self.flags), "inputs": dict(self.inputs),
               "verdicts": list(self.verdicts)}
        if self.error is not None:
            out["error"] = self.error
        else:
            out["result"] = self.result
        out["exit_code"] = self.exit_code
        return out

    def to_json(self) -> dict:
        body = self.body()
        body["report_sha256"] = hashlib.sha256(_dumps(body).encode()).hexdigest()
        body["timing"] = {"seconds": round(self.timing, 6)}
        return body

    def to_text(self) -> str:
        lines = []
        for v in self.verdicts:
            lines.append(f"{'PASS' if v['ok'] else 'FAIL'} {v['name']}")
        if self.error is not None:
            where = f" at {self.error['pointer']}" if self.error.get("pointer") else ""
            src = f" in {self.error['input']}" if self.error.get("input") else ""
            lines.append(f"ERROR{src}{where}: {self.error['message']}")
        lines.append(f"{self.command}: exit {self.exit_code}")
        return "\n".join(lines) + "\n"


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (set, frozenset)):
        return sorted(list(x) if isinstance(x, tuple) else x for x in o)
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"not serializable: {type(o).__name__}")


def _dumps(obj, indent=None) -> str:
    return json.dumps(obj, default=_default, indent=indent, ensure_ascii=False)


# --------------------------------------------------------------------------
# inputs


class _Inputs:
    def __init__(self, report: RunReport):
        self.report = report
        self.current = None

    def raw(self, name: str, arg: str) -> str:
        """File contents when ``arg`` names a file, else ``arg`` itself."""
        self.current = name
        p = Path(arg)
        text = None
        if not arg.lstrip().startswith(("{", "[")):
            try:
                text = p.read_text()
            except OSError as exc:
                raise InputError(f"cannot read {arg}: {exc.strerror}") from None
            self.report.add_input(name, arg, text.encode())
        else:
            text = arg
            self.report.add_input(name, "<inline>", text.encode())
        return text

    def json(self, name: str, arg: str):
        text = self.raw(name, arg)
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON: {exc.msg} at line {exc.lineno}, column {exc.colno}", "") from None

    def lattice(self, arg: str, name="lattice") -> FiniteLattice:
        data = self.json(name, arg)
        if isinstance(data, dict) and "universe" in data:
            return SetLattice.from_json(data).lattice
        if not isinstance(data, dict):
            raise InputError("lattice must be a JSON object", "")
        return FiniteLattice.from_json(data)

    def grid(self, arg: str, name="grid") -> GridComplex:
        return GridComplex.from_json(self.json(name, arg))

    def cells(self, X: GridComplex, arg: str, name: str) -> frozenset:
        cells = parse_cells(self.json(name, arg))
        return X.cell_set_of(cells, name)

    def function(self, X: GridComplex, arg: str, name: str) -> CellFunction:
        f = CellFunction.from_json(self.json(name, arg))
        missing = [c for c in X.cells if c not in f]
        if missing:
            raise InputError(f"function is not defined on cell {list(missing[0])}", "")
        return f

    def metric(self, arg: str, name="space") -> hyperspace.FiniteMetricSpace:
        return hyperspace.FiniteMetricSpace.from_json(self.json(name, arg))

    def space(self, arg: str, name="space") -> wallman.FiniteSpace:
        return wallman.FiniteSpace.from_json(self.json(name, arg))


def _sentence(text: str, constants=()):
    m = re.fullmatch(r"\s*([A-Za-z_]\w*)\s*(?:\((.*)\))?\s*", text)
    if m and m.group(1) in BUILTINS:
        return builtin(m.group(1), m.group(2) or None, constants)
    return parse(text, constants)


def _bindings(pairs) -> dict:
    out = {}
    for item in pairs or ():
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise InputError(f"binding must look like name=element, got {item!r}")
        out[name.strip()] = value.strip()
    return out


def _point(text: str):
    try:
        v = json.loads(text)
    except json.JSONDecodeError:
        return text
    return tuple(v) if isinstance(v, list) else v


# --------------------------------------------------------------------------
# subcommands


def cmd_validate_lattice(args, inp, rep):
    data = inp.json("lattice", args.lattice)
    if isinstance(data, dict) and "universe" in data:
        lat = SetLattice.from_json(data).lattice
        report = validate_lattice(lat)
    else:
        if not isinstance(data, dict):
            raise InputError("lattice must be a JSON object", "")
        for key in ("elements", "meet", "join", "bottom", "top"):
            if key not in data:
                raise InputError(f"missing key {key!r}", f"/{key}")
        report = validate_lattice(data["elements"], data["meet"], data["join"], data["bottom"], data["top"])
        lat = FiniteLattice.from_tables(data["elements"], data["meet"], data["join"],
                                        data["bottom"], data["top"], check=False)
    rep.result = {"elements": len(lat), "violations": [v.to_json() for v in report.violations]}
    if report.ok:
        dist = is_distributive(lat)
        rep.result["distributive"] = bool(dist)
        rep.result["disjunctive"] = bool(is_disjunctive(lat)) if dist else None
        rep.result["atoms"] = [lat.elements[a] for a in lat.atom_indices]
    rep.verdict("lattice_axioms", report.ok, [v.to_json() for v in report.violations[:1]])


def cmd_eval(args, inp, rep):
    lat = inp.lattice(args.lattice)
    binds = _bindings(args.bind)
    if args.theory:
        t = parse_theory(inp.raw("theory", args.theory), args.theory)
        results = check_theory(lat, t, binds)
        rep.result = {"sentences": {n: r.to_json() for n, r in results.items()}}
        for n, r in results.items():
            rep.verdict(n, r.value, r.to_json())
    if args.formula:
        inp.current = "formula"
        s = _sentence(args.formula, tuple(binds))
        r = evaluate(lat, s, binds)
        rep.result["formula"] = pretty(s)
        rep.result["evaluation"] = r.to_json()
        rep.verdict("value", r.value, r.to_json())
    if not args.theory and not args.formula:
        raise InputError("give --formula or --theory")


def _theory_arg(args, inp):
    parts = []
    if args.theory:
        parts.append(parse_theory(inp.raw("theory", args.theory), args.theory))
    if args.formula:
        inp.current = "formula"
        sentences = [(f"f{i}", _sentence(text)) for i, text in enumerate(args.formula)]
        parts.append(theory(*sentences))
    if not parts:
        raise InputError("give --theory or --formula")
    t = parts[0]
    for extra in parts[1:]:
        t = t.extend(*extra.sentences)
    return t


def cmd_model_search(args, inp, rep):
    t = _theory_arg(args, inp)
    res = model_search(t, args.size, cap=args.cap, min_size=args.min_size,
                       all_models=args.all, largest_first=args.largest_first)
    rep.result = res.to_json()
    if args.all:
        rep.result["models"] = [{"model": m.to_json(), "bindings": b} for m, b in res.models]
    if args.expect == "model":
        rep.verdict("model_found", res.found, res.certificate)
    else:
        rep.verdict("no_model", not res.found and res.certificate["exhaustive"],
                    res.to_json())


def cmd_diagram(args, inp, rep):
    lat = inp.lattice(args.lattice)
    t = diagram(lat)
    results = check_theory(lat, t)
    bad = [n for n, r in results.items() if not r.value]
    rep.result = {"constants": list(t.constants), "interpretations": dict(t.interpretations),
                  "sentences": len(t), "theory": format_theory(t)}
    rep.verdict("diagram_holds", not bad, bad[:1])


def cmd_wallman(args, inp, rep):
    if args.space:
        S = inp.space(args.space)
        h = wallman.round_trip(S)
        rep.result = {"t1": S.is_t1(), "homeomorphism": h}
        rep.verdict("round_trip", h is not None)
        return
    if not args.lattice:
        raise InputError("give --lattice or --space")
    lat = inp.lattice(args.lattice)
    w = wallman.wallman_space(lat)
    report = wallman.representation_report(lat)
    rep.result = {"space": w.to_json(), "report": report}
    rep.verdict("homomorphism", w.homomorphism)
    rep.verdict("injective_iff_disjunctive", report["injective"] == report["disjunctive"],
                report["disjunctive_witness"])


def cmd_components(args, inp, rep):
    X = inp.grid(args.grid)
    cells = inp.cells(X, args.cells, "cells") if args.cells else None
    comps = gridspace.components(X, cells, args.mode)
    rep.result = {"mode": args.mode, "count": len(comps), "components": [cells_json(c) for c in comps]}


def cmd_urysohn(args, inp, rep):
    X = inp.grid(args.grid)
    C = inp.cells(X, args.C, "C")
    D = inp.cells(X, args.D, "D")
    if args.F is not None or args.G is not None:
        F = inp.cells(X, args.F or "[]", "F")
        G = inp.cells(X, args.G or "[]", "G")
        f = gridspace.foursome_urysohn(X, C, D, F, G)
        conds = gridspace.foursome_conditions(f, C, D, F, G)
        for k, ok in conds.items():
            rep.verdict(k, ok)
    else:
        f = gridspace.urysohn(X, C, D)
    rep.result = {"function": f.to_json()}


def cmd_partition_check(args, inp, rep):
    X = inp.grid(args.grid)
    L = inp.cells(X, args.L, "L")
    A = inp.cells(X, args.A, "A")
    B = inp.cells(X, args.B, "B")
    path = gridspace.separation_path(X, L, A, B)
    rep.result = {"partition": path is None, "path": None if path is None else cells_json(path)}
    rep.verdict("partition", path is None, None if path is None else {"path": [list(c) for c in path]})


def _pairs(X, inp, arg, name="pairs"):
    data = inp.json(name, arg)
    if not isinstance(data, list):
        raise InputError("pairs must be a list of [A, B]", "")
    out = []
    for i, pair in enumerate(data):
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputError("pair must be [A, B]", f"/{i}")
        out.append(tuple(X.cell_set_of(parse_cells(s, f"/{i}/{k}"), f"{name}[{i}]")
                         for k, s in enumerate(pair)))
    return out


def cmd_essential_check(args, inp, rep):
    X = inp.grid(args.grid)
    pairs = _pairs(X, inp, args.pairs) if args.pairs else X.face_pairs()
    res = gridspace.essential_check(X, pairs, args.budget)
    rep.result = res.to_json()
    rep.verdict("essential", res.verdict == "essential",
                {"verdict": res.verdict, "partitions": rep.result["partitions"],
                 "certificate": res.certificate})


def cmd_ml_factorize(args, inp, rep):
    X = inp.grid(args.grid)
    if args.function:
        f = inp.function(X, args.function, "function")
    elif args.project is not None:
        axes = [int(a) for a in args.project.split(",") if a.strip()]
        for a in axes:
            if not 0 <= a < X.dim:
                raise InputError(f"axis {a} out of range")
        f = gridspace.projection(X, axes)
    else:
        raise InputError("give --function or --project")
    fac = gridspace.monotone_light_factorize(X, f)
    rep.result = fac.to_json()
    ok = all(fac.lam[fac.mu[c]] == f[c] for c in X.cells)
    rep.verdict("factorization", ok)


def _geometry(args, inp):
    if getattr(args, "geometry", None):
        return crooked.CrookedPartition.from_json(inp.json("geometry", args.geometry)).validate()
    return crooked.crooked_partition()


def cmd_crooked_validate(args, inp, rep):
    if args.geometry:
        P = crooked.CrookedPartition.from_json(inp.json("geometry", args.geometry))
    else:
        P = crooked.crooked_partition()
    report = P.report(tuple(args.res))
    rep.result = {"geometry": P.to_json(), "invariants": report["invariants"]}
    for name, v in report["invariants"].items():
        rep.verdict(name, v["ok"], v.get("detail"))


def _foursome(X, inp, arg):
    data = inp.json("foursome", arg)
    if not isinstance(data, dict):
        raise InputError("foursome must be an object with C, D, F, G", "")
    out = []
    for k in "CDFG":
        if k not in data:
            raise InputError(f"missing field {k!r}", f"/{k}")
        out.append(X.cell_set_of(parse_cells(data[k], f"/{k}"), k))
    return tuple(out)


def cmd_crooked_chicane(args, inp, rep):
    P = _geometry(args, inp)
    if args.space:
        S = inp.space(args.space)
        data = inp.json("foursome", args.foursome)
        if not isinstance(data, dict) or any(k not in data for k in "CDFG"):
            raise InputError("foursome must be an object with C, D, F, G", "")
        four = tuple(data[k] for k in "CDFG")
        res = crooked.chicane_search(S, four, args.budget)
        rep.result = res.to_json()
        rep.verdict("chicane_found", res.found, res.certificate)
        return
    X = inp.grid(args.grid)
    four = _foursome(X, inp, args.foursome)
    if args.f and args.g:
        f = inp.function(X, args.f, "f")
        g = inp.function(X, args.g, "g")
        ch = crooked.chicane_from_maps(X, four, f, g, P)
        conds = ch.conditions(X.cells)
        rep.result = {"chicane": ch.to_json(), "conditions": conds}
        for k, ok in conds.items():
            rep.verdict(k, ok)
    else:
        res = crooked.chicane_search(X, four, args.budget)
        rep.result = res.to_json()
        rep.verdict("chicane_found", res.found, res.certificate)


def _bing_functions(args, inp, X, n):
    if args.functions:
        data = inp.json("functions", args.functions)
        if not isinstance(data, list):
            raise InputError("functions must be a list of cell functions", "")
        fs = [CellFunction.from_json(d, f"/{i}") for i, d in enumerate(data)]
        for i, f in enumerate(fs):
            missing = [c for c in X.cells if c not in f]
            if missing:
                raise InputError(f"function {i} is not defined on cell {list(missing[0])}", f"/{i}")
        return fs
    return n


def cmd_crooked_bing(args, inp, rep):
    P = _geometry(args, inp)
    X = GridComplex(2 * args.k, args.res)
    fs = _bing_functions(args, inp, X, None)
    if fs is None:
        fs = [crooked.coordinate_function(X, 2 * i + 1) for i in range(args.k)]
    res = crooked.bing_construction(args.k, X, fs, P)
    rep.result = res.to_json()
    for i, ok in enumerate(res.partition_checks):
        rep.verdict(f"partition_axis_{2 * i}", ok)


def cmd_crooked_bing_partition(args, inp, rep):
    P = _geometry(args, inp)
    X = GridComplex(2, args.res)
    fs = _bing_functions(args, inp, X, None)
    if fs is None:
        fs = [crooked.coordinate_function(X, 1)] * args.steps
    F0, F1 = X.face(0, 0), X.face(0, 1)
    try:
        bp = crooked.bing_partition(X, F0, F1, fs, args.steps, P)
    except ConstructionError as exc:
        rep.result = {"error": str(exc), "step": exc.step}
        rep.verdict("construction", False, {"step": exc.step, "message": str(exc)})
        return
    rep.result = bp.to_json()
    for k, ok in bp.checks.items():
        rep.verdict(k, ok)


def cmd_hausdorff(args, inp, rep):
    M = inp.metric(args.space)
    A = inp.json("A", args.A)
    B = inp.json("B", args.B)
    inp.current = "A"
    A = [tuple(p) if isinstance(p, list) else p for p in A]
    B = [tuple(p) if isinstance(p, list) else p for p in B]
    d = hyperspace.hausdorff_distance(A, B, M)
    rep.result = {"distance": str(d), "diam_A": str(M.diameter(A)), "diam_B": str(M.diameter(B))}


def _metric_source(args, inp):
    if args.space:
        return None, inp.metric(args.space)
    if args.grid:
        X = inp.grid(args.grid)
        return X, hyperspace.FiniteMetricSpace.from_grid(X)
    raise InputError("give --space or --grid")


def cmd_whitney(args, inp, rep):
    X, M = _metric_source(args, inp)
    mu = hyperspace.whitney_map(M)
    check = mu.verify(seed=args.seed)
    rep.result = {"points": len(M), "total": str(mu.total), "verification": check}
    for k in ("singletons_zero", "whole_is_one", "monotone"):
        rep.verdict(k, check[k], check.get("violation"))
    if args.r is not None:
        if X is None:
            raise InputError("Whitney levels need --grid (connected sets are enumerated on grids)")
        band = hyperspace.whitney_levels(X, mu, args.r, args.tol, cap=args.cap)
        rep.result["level"] = band.to_json()
        rep.result["level"]["mesh_bound"] = (None if band.eta is None
                                             else str(hyperspace.mesh_bound(band.eta, args.n)))


def cmd_cover_degree(args, inp, rep):
    if args.cover:
        data = inp.json("cover", args.cover)
        if not isinstance(data, list) or not data:
            raise InputError("cover must be a nonempty list of sets", "")
        cover = [frozenset(tuple(p) if isinstance(p, list) else p for p in s) for s in data]
    else:
        cover = hyperspace.grid_box_cover(args.dim, args.cuts)
    res = hyperspace.cover_degree(cover)
    rep.result = res.to_json()
    if not args.cover:
        bound = 3 ** args.dim - 1
        rep.result["bound"] = bound
        rep.verdict("within_bound", res.max_degree <= bound)


def cmd_small_mesh(args, inp, rep):
    X = inp.grid(args.grid)
    data = inp.json("N", args.N) if args.N else []
    if not isinstance(data, list):
        raise InputError("N must be a list of cell sets", "")
    N = [X.cell_set_of(parse_cells(s, f"/{k}"), f"N[{k}]") for k, s in enumerate(data)]
    essential = None
    if args.check_essential:
        essential = gridspace.essential_check(X, X.face_pairs(), args.budget).verdict
    res = hyperspace.small_mesh_witness(X, N, essential)
    rep.result = res.to_json()
    rep.verdict("witness_found", res.component is not None,
                {"discretization_artifact": res.artifact, "components": res.components})


def cmd_order_chain(args, inp, rep):
    if args.grid:
        space = inp.grid(args.grid)
    elif args.space:
        space = inp.space(args.space)
    else:
        raise InputError("give --grid or --space")
    x = _point(args.point)
    if isinstance(space, wallman.FiniteSpace) and isinstance(x, tuple):
        raise InputError(f"{list(x)} is not a point of the space")
    res = hyperspace.order_chain(space, x, cap=args.cap)
    rep.result = res.to_json()
    rep.verdict("chain", res.is_chain, rep.result["witness"])


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the report to this file")

    p = _Parser(prog=PROG, description="Finite-scale checks for lattices, grids and crooked partitions.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, metavar="COMMAND")
    sub.required = True

    def add(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    s = add("validate-lattice", cmd_validate_lattice, "check the bounded-lattice axioms")
    s.add_argument("lattice")

    s = add("eval", cmd_eval, "evaluate a sentence or theory on a lattice")
    s.add_argument("--lattice", required=True)
    s.add_argument("--formula", help="sentence text or builtin name, e.g. conn or conn(a)")
    s.add_argument("--theory", help="theory file")
    s.add_argument("--bind", action="append", metavar="NAME=ELEM")

    s = add("model-search", cmd_model_search, "search for a finite lattice model")
    s.add_argument("--theory")
    s.add_argument("--formula", action="append")
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--min-size", type=int, default=1)
    s.add_argument("--cap", type=int, default=10, help="largest size bound accepted")
    s.add_argument("--all", action="store_true")
    s.add_argument("--largest-first", action="store_true")
    s.add_argument("--expect", choices=("model", "none"), default="model")

    s = add("diagram", cmd_diagram, "positive/negative diagram of a lattice")
    s.add_argument("--lattice", required=True)

    s = add("wallman", cmd_wallman, "Wallman space of a distributive lattice")
    s.add_argument("--lattice")
    s.add_argument("--space", help="finite space for a round trip")

    s = add("components", cmd_components, "connected components of a cell set")
    s.add_argument("--grid", required=True)
    s.add_argument("--cells")
    s.add_argument("--mode", choices=("closed", "open"), default="closed")

    s = add("urysohn", cmd_urysohn, "discrete Urysohn function")
    s.add_argument("--grid", required=True)
    s.add_argument("--C", required=True)
    s.add_argument("--D", required=True)
    s.add_argument("--F")
    s.add_argument("--G")

    s = add("partition-check", cmd_partition_check, "is L a partition between A and B")
    s.add_argument("--grid", required=True)
    s.add_argument("--L", required=True)
    s.add_argument("--A", required=True)
    s.add_argument("--B", required=True)

    s = add("essential-check", cmd_essential_check, "essentiality of a family of pairs")
    s.add_argument("--grid", required=True)
    s.add_argument("--pairs", help="list of [A, B]; default: the face pairs")

    s = add("ml-factorize", cmd_ml_factorize, "monotone-light factorization")
    s.add_argument("--grid", required=True)
    s.add_argument("--function")
    s.add_argument("--project", help="comma-separated axes")

    cp = sub.add_parser("crooked", help="crooked partition tools")
    csub = cp.add_subparsers(dest="crooked_command", parser_class=_Parser, metavar="ACTION")
    csub.required = True

    def cadd(name, func, help_text):
        sp = csub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--geometry", help="JSON file of five rectangles")
        return sp

    s = cadd("validate", cmd_crooked_validate, "check the partition invariants")
    s.add_argument("--res", type=int, nargs="+", default=[14, 28])
    s = cadd("chicane", cmd_crooked_chicane, "chicane from maps or by search")
    s.add_argument("--grid")
    s.add_argument("--space")
    s.add_argument("--foursome", required=True)
    s.add_argument("--f")
    s.add_argument("--g")
    s = cadd("bing", cmd_crooked_bing, "intersection of preimages of P")
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--res", type=int, default=14)
    s.add_argument("--functions")
    s = cadd("bing-partition", cmd_crooked_bing_partition, "iterated partition between the vertical faces")
    s.add_argument("--steps", type=int, default=2)
    s.add_argument("--res", type=int, default=14)
    s.add_argument("--functions")

    s = add("hausdorff", cmd_hausdorff, "Hausdorff distance of two subsets")
    s.add_argument("--space", required=True)
    s.add_argument("--A", required=True)
    s.add_argument("--B", required=True)

    s = add("whitney", cmd_whitney, "Whitney map checks and levels")
    s.add_argument("--space")
    s.add_argument("--grid")
    s.add_argument("--r", type=Fraction)
    s.add_argument("--tol", type=Fraction, default=Fraction(0))
    s.add_argument("--n", type=int, default=1, help="dimension for the mesh bound eta/(4n)")
    s.add_argument("--cap", type=int, default=hyperspace.DEFAULT_SET_CAP)

    s = add("cover-degree", cmd_cover_degree, "intersection degree of a cover")
    s.add_argument("--dim", type=int, default=1)
    s.add_argument("--cuts", type=int, default=3)
    s.add_argument("--cover")

    s = add("small-mesh", cmd_small_mesh, "wide component missing a small-mesh family")
    s.add_argument("--grid", required=True)
    s.add_argument("--N")
    s.add_argument("--check-essential", action="store_true")

    s = add("order-chain", cmd_order_chain, "connected closed sets through a point")
    s.add_argument("--grid")
    s.add_argument("--space")
    s.add_argument("--point", required=True)
    s.add_argument("--cap", type=int, default=hyperspace.DEFAULT_SET_CAP)
    return p


def run(argv=None) -> tuple:
    """Parse ``argv``, run the subcommand and return ``(report, args)``.

    Usage errors raise :class:`UsageError`.
    """
    args = build_parser().parse_args(argv)
    name = args.command + (f" {args.crooked_command}" if args.command == "crooked" else "")
    rep = RunReport(name, args)
    inp = _Inputs(rep)
    start = time.perf_counter()
    try:
        args.func(args, inp, rep)
    except InputError as exc:
        rep.error = {"input": inp.current, "message": exc.message, "pointer": exc.path}
    except ConstructionError as exc:
        rep.verdict("construction", False, {"step": exc.step, "message": str(exc)})
    rep.timing = time.perf_counter() - start
    return rep, args


def main(argv=None) -> int:
    try:
        rep, args = run(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    if args.format == "json":
        text = _dumps(rep.to_json(), indent=2) + "\n"
    else:
        text = rep.to_text()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return rep.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

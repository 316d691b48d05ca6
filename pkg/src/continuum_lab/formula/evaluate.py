"""Brute-force evaluation of sentences over a finite lattice.

A sentence is normalized (quantifiers pushed inward past subformulas that
do not mention the bound variable, which is sound over nonempty domains and
keeps the left-to-right nesting of variables), flattened into a node array
and run by the active kernel.  Slots 0 and 1 of the environment hold the
bounds and named constants follow, so one compiled plan serves every
lattice and every binding of the constants.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .. import kernels
from ..errors import InputError
from ..kernels import opcodes as op
from ..lattice import FiniteLattice
from .syntax import (And, Const, Eq, Exists, Forall, Implies, Join, Meet, Neq,
                     Not, Or, Var, conj, constants, disj, free_vars,
                     quantifier_prefix)


@dataclass(frozen=True)
class EvalResult:
    """Truth value plus the outermost block's assignment when it decides.

    ``kind`` is ``"counterexample"`` for a false universal block,
    ``"witness"`` for a true existential block and ``None`` otherwise.
    """
    value: bool
    kind: str | None = None
    assignment: dict = field(default_factory=dict)

    def __bool__(self):
        return self.value

    def to_json(self) -> dict:
        return {"value": self.value, "kind": self.kind, "assignment": dict(self.assignment)}


# --------------------------------------------------------------------------
# normalization


def _parts(f, cls):
    return list(f.parts) if isinstance(f, cls) else [f]


def _flatten(f):
    """Merge nested connectives and curry ``P -> (Q -> R)`` into ``P & Q -> R``."""
    if isinstance(f, And):
        out = []
        for p in f.parts:
            out.extend(_parts(_flatten(p), And))
        return conj(*out)
    if isinstance(f, Or):
        out = []
        for p in f.parts:
            out.extend(_parts(_flatten(p), Or))
        return disj(*out)
    if isinstance(f, Implies):
        prem, concl = _flatten(f.premise), _flatten(f.conclusion)
        if isinstance(concl, Implies):
            return Implies(conj(*_parts(prem, And), *_parts(concl.premise, And)), concl.conclusion)
        return Implies(prem, concl)
    if isinstance(f, Not):
        return Not(_flatten(f.body))
    if isinstance(f, (Forall, Exists)):
        return type(f)(f.variables, _flatten(f.body))
    return f


def _split(parts, z):
    outside = [p for p in parts if z not in free_vars(p)]
    inside = [p for p in parts if z in free_vars(p)]
    return outside, inside


def _quantify(universal: bool, z: str, body):
    """``forall z. body`` / ``exists z. body`` with the scope of ``z`` shrunk."""
    if z not in free_vars(body):
        return body
    cls = Forall if universal else Exists
    if isinstance(body, Implies):
        prem = _parts(body.premise, And)
        outside, inside = _split(prem, z)
        if universal and outside:
            rest = Implies(conj(*inside), body.conclusion) if inside else body.conclusion
            return Implies(conj(*outside), _quantify(True, z, rest))
        if not universal and not inside:
            return Implies(body.premise, _quantify(False, z, body.conclusion))
    if isinstance(body, Or):
        outside, inside = _split(body.parts, z)
        if outside:
            return disj(*outside, _quantify(universal, z, disj(*inside)))
    if isinstance(body, And):
        outside, inside = _split(body.parts, z)
        if outside:
            return conj(*outside, _quantify(universal, z, conj(*inside)))
    return cls((z,), body)


def normalize(f):
    """Equivalent formula (over nonempty domains) with miniscoped quantifiers."""
    f = _flatten(f)
    if isinstance(f, (Forall, Exists)):
        body = normalize(f.body)
        for z in reversed(f.variables):
            body = _quantify(isinstance(f, Forall), z, body)
        return body
    if isinstance(f, And):
        return conj(*(normalize(p) for p in f.parts))
    if isinstance(f, Or):
        return disj(*(normalize(p) for p in f.parts))
    if isinstance(f, Implies):
        return Implies(normalize(f.premise), normalize(f.conclusion))
    if isinstance(f, Not):
        return Not(normalize(f.body))
    return f


# --------------------------------------------------------------------------
# compilation


@dataclass(frozen=True)
class Plan:
    kind: tuple
    a: tuple
    b: tuple
    root: int
    nslots: int
    constants: tuple     # names, occupying slots 2, 3, ...
    outer: tuple         # (variable, slot) of the outermost quantifier block
    outer_kind: str | None


class _Compiler:
    def __init__(self, const_names):
        self.kind, self.a, self.b = [], [], []
        self.slots = {name: 2 + i for i, name in enumerate(const_names)}
        self.nslots = 2 + len(const_names)
        self.scope = {}
        self.binding_slots = {}

    def emit(self, kind, a=0, b=0):
        self.kind.append(kind)
        self.a.append(a)
        self.b.append(b)
        return len(self.kind) - 1

    def term(self, t):
        if isinstance(t, Var):
            if t.name not in self.scope:
                raise InputError(f"unbound variable {t.name!r}")
            return self.emit(op.VAR, self.scope[t.name])
        if isinstance(t, Const):
            slot = {"0": 0, "1": 1}.get(t.name, self.slots.get(t.name))
            return self.emit(op.VAR, slot)
        kind = op.MEET if isinstance(t, Meet) else op.JOIN
        left = self.term(t.left)
        return self.emit(kind, left, self.term(t.right))

    def chain(self, kind, parts):
        # right-nested binary chain
        node = self.formula(parts[-1])
        for p in reversed(parts[:-1]):
            left = self.formula(p)
            node = self.emit(kind, left, node)
        return node

    def formula(self, f):
        if isinstance(f, (Eq, Neq)):
            left = self.term(f.left)
            return self.emit(op.EQ if isinstance(f, Eq) else op.NEQ, left, self.term(f.right))
        if isinstance(f, Not):
            return self.emit(op.NOT, self.formula(f.body))
        if isinstance(f, And):
            return self.chain(op.AND, f.parts) if f.parts else self.emit(op.TRUE)
        if isinstance(f, Or):
            return self.chain(op.OR, f.parts) if f.parts else self.emit(op.FALSE)
        if isinstance(f, Implies):
            left = self.formula(f.premise)
            return self.emit(op.IMPLIES, left, self.formula(f.conclusion))
        if isinstance(f, (Forall, Exists)):
            kind = op.FORALL if isinstance(f, Forall) else op.EXISTS
            saved = dict(self.scope)
            slots = []
            for z in f.variables:
                slot = self.nslots
                self.nslots += 1
                self.scope[z] = slot
                self.binding_slots.setdefault(z, []).append(slot)
                slots.append(slot)
            node = self.formula(f.body)
            for slot in reversed(slots):
                node = self.emit(kind, slot, node)
            self.scope = saved
            return node
        raise TypeError(f"not a formula: {f!r}")


@lru_cache(maxsize=256)
def compile_sentence(sentence) -> Plan:
    free = free_vars(sentence)
    if free:
        raise InputError(f"unbound variable {sorted(free)[0]!r}")
    names = tuple(sorted(constants(sentence)))
    comp = _Compiler(names)
    root = comp.formula(normalize(sentence))
    prefix = quantifier_prefix(sentence)
    outer, outer_kind = (), None
    if prefix:
        outer_kind, variables = prefix[0]
        # the first binding of each outer variable in the normalized tree
        outer = tuple((z, comp.binding_slots[z][0] if z in comp.binding_slots else None)
                      for z in variables)
    return Plan(tuple(comp.kind), tuple(comp.a), tuple(comp.b), root, comp.nslots,
                names, outer, outer_kind)


# --------------------------------------------------------------------------
# evaluation


def _bind(lat: FiniteLattice, value, name):
    if isinstance(value, int) and not isinstance(value, bool):
        if 0 <= value < len(lat):
            return value
        raise InputError(f"constant {name!r} bound to out-of-range index {value}")
    try:
        return lat.index(value)
    except (KeyError, ValueError, InputError):
        raise InputError(f"constant {name!r} bound to unknown element {value!r}") from None


def evaluator_for(plan: Plan, lat: FiniteLattice, backend=None):
    mod = backend or kernels
    return mod.PlanEvaluator(plan.kind, plan.a, plan.b, lat.meet_array, lat.join_array)


def evaluate(lat: FiniteLattice, sentence, bindings: dict | None = None, backend=None) -> EvalResult:
    """Truth of ``sentence`` in ``lat`` with named constants given by ``bindings``.

    Bindings map constant names to element ids (or integer indices).  The
    reported assignment covers the outermost quantifier block and uses the
    lexicographically first values in element order.
    """
    plan = compile_sentence(sentence)
    bindings = bindings or {}
    env = [-1] * max(plan.nslots, 1)
    env[0], env[1] = lat.bottom, lat.top
    for i, name in enumerate(plan.constants):
        if name not in bindings:
            raise InputError(f"unbound constant {name!r}")
        env[2 + i] = _bind(lat, bindings[name], name)
    value = evaluator_for(plan, lat, backend).run(plan.root, env)
    return _result(lat, plan, env, value)


def _result(lat, plan, env, value):
    decided = (plan.outer_kind == "forall" and not value) or (plan.outer_kind == "exists" and value)
    if not decided:
        return EvalResult(bool(value))
    assignment = {}
    for z, slot in plan.outer:
        e = env[slot] if slot is not None else -1
        assignment[z] = lat.elements[e if e >= 0 else 0]
    kind = "counterexample" if plan.outer_kind == "forall" else "witness"
    return EvalResult(bool(value), kind, assignment)


def instance_witness(lat: FiniteLattice, sentence, assignment: dict, bindings: dict | None = None):
    """Witnesses of the existential block right under the universal prefix.

    ``assignment`` fixes the leading universal variables (element ids).
    Returns the lexicographically first witnesses as a dict, or None when
    no witness exists for that instance.
    """
    if not isinstance(sentence, Forall):
        raise InputError("instance_witness needs a universally quantified sentence")
    body = sentence
    fixed = []
    while isinstance(body, Forall):
        fixed.extend(body.variables)
        body = body.body
    missing = [z for z in fixed if z not in assignment]
    if missing:
        raise InputError(f"no value given for {missing[0]!r}")
    sub = _substitute(body, {z: Const(_const_name(z)) for z in fixed})
    binds = dict(bindings or {})
    binds.update({_const_name(z): assignment[z] for z in fixed})
    res = evaluate(lat, sub, binds)
    if not res.value:
        return None
    return dict(res.assignment)


def _const_name(z):
    return "__" + z


def _substitute(f, mapping):
    def term(t):
        if isinstance(t, Var):
            return mapping.get(t.name, t)
        if isinstance(t, (Meet, Join)):
            return type(t)(term(t.left), term(t.right))
        return t
    if isinstance(f, (Eq, Neq)):
        return type(f)(term(f.left), term(f.right))
    if isinstance(f, Not):
        return Not(_substitute(f.body, mapping))
    if isinstance(f, (And, Or)):
        return type(f)(tuple(_substitute(p, mapping) for p in f.parts))
    if isinstance(f, Implies):
        return Implies(_substitute(f.premise, mapping), _substitute(f.conclusion, mapping))
    inner = {k: v for k, v in mapping.items() if k not in f.variables}
    return type(f)(f.variables, _substitute(f.body, inner))


def substitute(f, mapping: dict):
    """Replace free variables by terms."""
    return _substitute(f, mapping)

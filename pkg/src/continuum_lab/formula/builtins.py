"""Named sentences: normality, connectedness, the chicane condition and dim <= 1.

Each builtin is the literal quantifier structure of its display:

* ``normal``: the Wallman space is Hausdorff;
* ``conn``: the element (default ``1``) has no complemented splitting;
* ``hi``: every pliable foursome ``x, y, u, v`` (with ``x ^ y = x ^ u =
  y ^ v = 0``) has a chicane ``z1, z2, z3``;
* ``dim_le_1``: two disjoint pairs can be pulled apart by covers whose four
  pieces have empty meet.

Auxiliary sentences used as theory ingredients: ``distributive``,
``disjunctive`` (with a nonzero witness), ``nondegenerate`` (0 != 1) and
``nontrivial`` (some element other than the bounds).
"""
from __future__ import annotations

from ..errors import InputError
from .syntax import (BOTTOM, TOP, And, Eq, Exists, Forall, Implies, Join, Meet,
                     Neq, Not, Or, Var, conj, join, meet, parse_term)

x, y, u, v = Var("x"), Var("y"), Var("u"), Var("v")
z1, z2, z3 = Var("z1"), Var("z2"), Var("z3")


def _zero(t):
    return Eq(t, BOTTOM)


def normal():
    return Forall(("x", "y"), Exists(("u", "v"), Implies(
        _zero(Meet(x, y)),
        conj(_zero(Meet(x, u)), _zero(Meet(y, v)), Eq(Join(u, v), TOP)))))


def conn(a=TOP):
    """``conn(a)``: the display for ``conn(1)`` with every ``1`` replaced by ``a``."""
    return Forall(("x", "y"), Implies(
        conj(_zero(Meet(x, y)), Eq(Join(x, y), a)),
        Or((Eq(x, BOTTOM), Eq(x, a)))))


def chicane_conditions(x=x, y=y, u=u, v=v, z1=z1, z2=z2, z3=z3):
    """The six conditions on ``z1, z2, z3`` (in display order)."""
    return conj(
        _zero(Meet(x, Join(z2, z3))),
        _zero(Meet(y, Join(z1, z2))),
        _zero(Meet(z1, z3)),
        _zero(meet(z1, z2, v)),
        _zero(meet(z2, z3, u)),
        Eq(join(z1, z2, z3), TOP),
    )


def pliable(x=x, y=y, u=u, v=v):
    return conj(_zero(Meet(x, y)), _zero(Meet(x, u)), _zero(Meet(y, v)))


def hi():
    return Forall(("x", "y", "u", "v"), Exists(("z1", "z2", "z3"), Implies(
        pliable(), chicane_conditions())))


def dim_le_1():
    x0, y0, x1, y1 = Var("x0"), Var("y0"), Var("x1"), Var("y1")
    u0, v0, u1, v1 = Var("u0"), Var("v0"), Var("u1"), Var("v1")
    return Forall(("x0", "y0", "x1", "y1"), Exists(("u0", "v0", "u1", "v1"), Implies(
        conj(_zero(Meet(x0, y0)), _zero(Meet(x1, y1))),
        conj(_zero(Meet(x0, u0)), _zero(Meet(y0, v0)),
             _zero(Meet(x1, u1)), _zero(Meet(y1, v1)),
             Eq(Join(u0, v0), TOP), Eq(Join(u1, v1), TOP),
             _zero(meet(u0, v0, u1, v1))))))


def distributive():
    xx, yy, zz = Var("x"), Var("y"), Var("z")
    return Forall(("x", "y", "z"), Eq(Meet(xx, Join(yy, zz)), Join(Meet(xx, yy), Meet(xx, zz))))


def disjunctive():
    a, b, c = Var("a"), Var("b"), Var("c")
    return Forall(("a", "b"), Implies(
        Not(Eq(Meet(a, b), a)),
        Exists(("c",), conj(Neq(c, BOTTOM), Eq(Meet(c, a), c), _zero(Meet(c, b))))))


def nondegenerate():
    return Neq(BOTTOM, TOP)


def nontrivial():
    return Exists(("x",), And((Neq(x, BOTTOM), Neq(x, TOP))))


BUILTINS = {
    "normal": normal,
    "conn": conn,
    "hi": hi,
    "dim_le_1": dim_le_1,
    "distributive": distributive,
    "disjunctive": disjunctive,
    "nondegenerate": nondegenerate,
    "nontrivial": nontrivial,
}


def builtin(name: str, arg=None, constants=None):
    """The named sentence; ``arg`` (a term or term text) parameterizes ``conn``."""
    try:
        make = BUILTINS[name]
    except KeyError:
        raise InputError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}") from None
    if arg is None:
        return make()
    if name != "conn":
        raise InputError(f"builtin {name!r} takes no argument")
    if isinstance(arg, str):
        arg = parse_term(arg, constants)
    return conn(arg)

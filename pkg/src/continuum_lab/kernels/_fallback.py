"""Pure-Python implementations of the hot kernels.

Same contracts as the compiled ``_core`` module; selected automatically
when the extension is unavailable.
"""
from __future__ import annotations

import numpy as np

from .opcodes import (AND, CONST, EQ, EXISTS, FALSE, FORALL, IMPLIES, JOIN,
                      MEET, NEQ, NOT, OR, TRUE, VAR)

BACKEND = "python"


def assoc_violation(table):
    """First ``(x, y, z)`` in lexicographic order with ``(xy)z != x(yz)``."""
    t = np.asarray(table, dtype=np.int32)
    for x in range(len(t)):
        left = t[t[x]]          # t[t[x, y], z]
        right = t[x][t]         # t[x, t[y, z]]
        bad = np.argwhere(left != right)
        if len(bad):
            return x, int(bad[0][0]), int(bad[0][1])
    return None


def distrib_violation(meet, join):
    """First ``(x, y, z)`` with ``x ^ (y v z) != (x ^ y) v (x ^ z)``."""
    m = np.asarray(meet, dtype=np.int32)
    j = np.asarray(join, dtype=np.int32)
    for x in range(len(m)):
        row = m[x]
        left = row[j]
        right = j[row[:, None], row[None, :]]
        bad = np.argwhere(left != right)
        if len(bad):
            return x, int(bad[0][0]), int(bad[0][1])
    return None


class PlanEvaluator:
    """Evaluates flattened sentence plans over fixed meet/join tables.

    Nodes are compiled lazily into nested closures.  Quantifier loops leave
    the deciding value in their slot when they exit early and reset the slot
    to -1 when they run to completion.
    """

    def __init__(self, kind, a, b, meet, join):
        self.kind = [int(k) for k in kind]
        self.a = [int(v) for v in a]
        self.b = [int(v) for v in b]
        self.meet = [list(map(int, row)) for row in meet]
        self.join = [list(map(int, row)) for row in join]
        self.n = len(self.meet)
        self._cache = {}

    def run(self, root: int, env: list) -> bool:
        return bool(self._compile(root)(env))

    def _compile(self, node):
        fn = self._cache.get(node)
        if fn is None:
            fn = self._cache[node] = self._build(node)
        return fn

    def _build(self, node):
        kind, a, b = self.kind[node], self.a[node], self.b[node]
        if kind == VAR:
            return lambda env: env[a]
        if kind == CONST:
            return lambda env: a
        if kind == TRUE:
            return lambda env: True
        if kind == FALSE:
            return lambda env: False
        if kind in (MEET, JOIN):
            table = self.meet if kind == MEET else self.join
            fa, fb = self._compile(a), self._compile(b)
            return lambda env: table[fa(env)][fb(env)]
        if kind == NOT:
            fa = self._compile(a)
            return lambda env: not fa(env)
        fa, fb = (self._compile(a), self._compile(b)) if kind not in (FORALL, EXISTS) else (None, None)
        if kind == EQ:
            return lambda env: fa(env) == fb(env)
        if kind == NEQ:
            return lambda env: fa(env) != fb(env)
        if kind == AND:
            return lambda env: fa(env) and fb(env)
        if kind == OR:
            return lambda env: fa(env) or fb(env)
        if kind == IMPLIES:
            return lambda env: (not fa(env)) or fb(env)
        body = self._compile(b)
        n = self.n
        if kind == FORALL:
            def forall(env):
                for e in range(n):
                    env[a] = e
                    if not body(env):
                        return False
                env[a] = -1
                return True
            return forall
        if kind == EXISTS:
            def exists(env):
                for e in range(n):
                    env[a] = e
                    if body(env):
                        return True
                env[a] = -1
                return False
            return exists
        raise ValueError(f"unknown plan node kind {kind}")

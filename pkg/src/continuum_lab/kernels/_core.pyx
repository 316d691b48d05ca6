# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled hot kernels: lattice table scans and the sentence-plan interpreter.

Contracts match ``continuum_lab.kernels._fallback``; node kinds match
``continuum_lab.kernels.opcodes``.
"""
import numpy as np

BACKEND = "cython"

cdef enum:
    K_VAR = 0
    K_CONST = 1
    K_MEET = 2
    K_JOIN = 3
    K_EQ = 4
    K_NEQ = 5
    K_NOT = 6
    K_AND = 7
    K_OR = 8
    K_IMPLIES = 9
    K_FORALL = 10
    K_EXISTS = 11
    K_TRUE = 12
    K_FALSE = 13

OPCODES = {
    "VAR": K_VAR, "CONST": K_CONST, "MEET": K_MEET, "JOIN": K_JOIN,
    "EQ": K_EQ, "NEQ": K_NEQ, "NOT": K_NOT, "AND": K_AND, "OR": K_OR,
    "IMPLIES": K_IMPLIES, "FORALL": K_FORALL, "EXISTS": K_EXISTS,
    "TRUE": K_TRUE, "FALSE": K_FALSE,
}


def _as_table(t):
    return np.ascontiguousarray(t, dtype=np.int32)


def assoc_violation(table):
    cdef int[:, ::1] t = _as_table(table)
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t x, y, z
    with nogil:
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if t[t[x, y], z] != t[x, t[y, z]]:
                        with gil:
                            return int(x), int(y), int(z)
    return None


def distrib_violation(meet, join):
    cdef int[:, ::1] m = _as_table(meet)
    cdef int[:, ::1] j = _as_table(join)
    cdef Py_ssize_t n = m.shape[0]
    cdef Py_ssize_t x, y, z
    with nogil:
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if m[x, j[y, z]] != j[m[x, y], m[x, z]]:
                        with gil:
                            return int(x), int(y), int(z)
    return None


cdef class PlanEvaluator:
    cdef int[::1] kind
    cdef int[::1] a
    cdef int[::1] b
    cdef int[:, ::1] meet
    cdef int[:, ::1] join
    cdef int n

    def __init__(self, kind, a, b, meet, join):
        self.kind = np.ascontiguousarray(kind, dtype=np.int32)
        self.a = np.ascontiguousarray(a, dtype=np.int32)
        self.b = np.ascontiguousarray(b, dtype=np.int32)
        self.meet = _as_table(meet)
        self.join = _as_table(join)
        self.n = self.meet.shape[0]

    cdef int _term(self, int node, int* env) noexcept nogil:
        cdef int k = self.kind[node]
        if k == K_VAR:
            return env[self.a[node]]
        if k == K_CONST:
            return self.a[node]
        if k == K_MEET:
            return self.meet[self._term(self.a[node], env), self._term(self.b[node], env)]
        return self.join[self._term(self.a[node], env), self._term(self.b[node], env)]

    cdef bint _formula(self, int node, int* env) noexcept nogil:
        cdef int k = self.kind[node]
        cdef int e, slot, body
        if k == K_EQ:
            return self._term(self.a[node], env) == self._term(self.b[node], env)
        if k == K_NEQ:
            return self._term(self.a[node], env) != self._term(self.b[node], env)
        if k == K_AND:
            return self._formula(self.a[node], env) and self._formula(self.b[node], env)
        if k == K_OR:
            return self._formula(self.a[node], env) or self._formula(self.b[node], env)
        if k == K_IMPLIES:
            return (not self._formula(self.a[node], env)) or self._formula(self.b[node], env)
        if k == K_NOT:
            return not self._formula(self.a[node], env)
        if k == K_TRUE:
            return True
        if k == K_FALSE:
            return False
        slot = self.a[node]
        body = self.b[node]
        if k == K_FORALL:
            for e in range(self.n):
                env[slot] = e
                if not self._formula(body, env):
                    return False
            env[slot] = -1
            return True
        # K_EXISTS
        for e in range(self.n):
            env[slot] = e
            if self._formula(body, env):
                return True
        env[slot] = -1
        return False

    def run(self, int root, env):
        cdef int[::1] buf = np.ascontiguousarray(env, dtype=np.int32)
        cdef bint result
        with nogil:
            result = self._formula(root, &buf[0])
        env[:] = [int(v) for v in buf]
        return bool(result)

"""Abstract syntax, parser and printer for first-order sentences about lattices.

Concrete syntax::

    forall x y. (x ^ y = 0) -> exists u v. (x ^ u = 0 & y ^ v = 0 & u v v = 1)

``^`` is meet and ``v`` is join (``v`` is an operator only where an operator
is expected, so it stays usable as a variable name); ``^`` binds tighter
than ``v``.  Atoms are ``s = t``, ``s != t`` and ``s <= t`` (sugar for
``s ^ t = s``).  Connectives, loosest first: quantifiers (``forall``/
``exists`` with a variable list and a dot, scoping as far right as
possible), ``->`` (right associative), ``|``, ``&``, ``~``.  ``0`` and ``1``
are the bounds; a named constant is written ``@name``, or bare when it is
declared and not shadowed by a bound variable.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union

from ..errors import InputError


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str  # "0" and "1" are the bounds


@dataclass(frozen=True)
class Meet:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Join:
    left: "Term"
    right: "Term"


Term = Union[Var, Const, Meet, Join]

BOTTOM = Const("0")
TOP = Const("1")


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Neq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Implies:
    premise: "Formula"
    conclusion: "Formula"


@dataclass(frozen=True)
class Forall:
    variables: tuple
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    variables: tuple
    body: "Formula"


Formula = Union[Eq, Neq, Not, And, Or, Implies, Forall, Exists]
Sentence = Formula


def conj(*parts):
    return parts[0] if len(parts) == 1 else And(tuple(parts))


def disj(*parts):
    return parts[0] if len(parts) == 1 else Or(tuple(parts))


def meet(*terms):
    out = terms[0]
    for t in terms[1:]:
        out = Meet(out, t)
    return out


def join(*terms):
    out = terms[0]
    for t in terms[1:]:
        out = Join(out, t)
    return out


def leq(a, b):
    return Eq(Meet(a, b), a)


# --------------------------------------------------------------------------
# free names


def term_vars(t) -> set:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Const):
        return set()
    return term_vars(t.left) | term_vars(t.right)


def free_vars(f) -> frozenset:
    if isinstance(f, (Eq, Neq)):
        return frozenset(term_vars(f.left) | term_vars(f.right))
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or)):
        return frozenset().union(*(free_vars(p) for p in f.parts))
    if isinstance(f, Implies):
        return free_vars(f.premise) | free_vars(f.conclusion)
    if isinstance(f, (Forall, Exists)):
        return free_vars(f.body) - set(f.variables)
    raise TypeError(f"not a formula: {f!r}")


def _term_consts(t) -> set:
    if isinstance(t, Const):
        return set() if t.name in ("0", "1") else {t.name}
    if isinstance(t, Var):
        return set()
    return _term_consts(t.left) | _term_consts(t.right)


def constants(f) -> frozenset:
    """Named constants (not the bounds) occurring in ``f``."""
    if isinstance(f, (Eq, Neq)):
        return frozenset(_term_consts(f.left) | _term_consts(f.right))
    if isinstance(f, Not):
        return constants(f.body)
    if isinstance(f, (And, Or)):
        return frozenset().union(*(constants(p) for p in f.parts))
    if isinstance(f, Implies):
        return constants(f.premise) | constants(f.conclusion)
    return constants(f.body)


def quantifier_prefix(f) -> list:
    """Leading quantifier blocks as ``[(kind, variables), ...]``."""
    out = []
    while isinstance(f, (Forall, Exists)):
        kind = "forall" if isinstance(f, Forall) else "exists"
        if out and out[-1][0] == kind:
            out[-1] = (kind, out[-1][1] + f.variables)
        else:
            out.append((kind, f.variables))
        f = f.body
    return out


# --------------------------------------------------------------------------
# printing


def format_term(t, level: int = 0) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return t.name if t.name in ("0", "1") else "@" + t.name
    if isinstance(t, Join):
        s = f"{format_term(t.left, 0)} v {format_term(t.right, 1)}"
        return s if level <= 0 else f"({s})"
    s = f"{format_term(t.left, 1)} ^ {format_term(t.right, 2)}"
    return s if level <= 1 else f"({s})"


def format_formula(f, level: int = 0) -> str:
    """Render ``f`` so that :func:`parse` gives back an equal tree."""
    if isinstance(f, Eq):
        return f"{format_term(f.left)} = {format_term(f.right)}"
    if isinstance(f, Neq):
        return f"{format_term(f.left)} != {format_term(f.right)}"
    if isinstance(f, Not):
        return "~" + format_formula(f.body, 4)
    if isinstance(f, (Forall, Exists)):
        word = "forall" if isinstance(f, Forall) else "exists"
        s = f"{word} {' '.join(f.variables)}. {format_formula(f.body, 0)}"
        return s if level == 0 else f"({s})"
    if isinstance(f, Implies):
        s = f"{format_formula(f.premise, 2)} -> {format_formula(f.conclusion, 1)}"
        return s if level <= 1 else f"({s})"
    if isinstance(f, Or):
        s = " | ".join(format_formula(p, 3) for p in f.parts)
        return s if level <= 2 else f"({s})"
    if isinstance(f, And):
        s = " & ".join(format_formula(p, 4) for p in f.parts)
        return s if level <= 3 else f"({s})"
    raise TypeError(f"not a formula: {f!r}")


def format_sentence(f) -> str:
    return format_formula(f, 0)


pretty = format_sentence


# --------------------------------------------------------------------------
# parsing


class ParseError(InputError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op>->|!=|<=|[()^=&|~.,@])
  | (?P<num>[01](?![A-Za-z0-9_]))
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
""", re.VERBOSE)

KEYWORDS = {"forall", "exists"}


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list:
    toks, pos, line, line_start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            if "\n" in chunk:
                line += chunk.count("\n")
                line_start = pos + chunk.rindex("\n") + 1
        else:
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    toks.append(_Tok("end", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text, declared):
        self.toks = _tokenize(text)
        self.i = 0
        self.declared = None if declared is None else set(declared)
        self.bound = []

    @property
    def tok(self):
        return self.toks[self.i]

    def fail(self, message, tok=None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.col)

    def expect(self, text):
        if self.tok.text != text or self.tok.kind == "end":
            what = "end of input" if self.tok.kind == "end" else repr(self.tok.text)
            self.fail(f"expected {text!r}, found {what}")
        self.i += 1

    def at(self, *texts):
        return self.tok.kind in ("op", "ident") and self.tok.text in texts

    # formulas ----------------------------------------------------------
    def formula(self):
        if self.tok.kind == "ident" and self.tok.text in KEYWORDS:
            return self.quantified()
        return self.implication()

    def quantified(self):
        word = self.tok.text
        self.i += 1
        names = []
        while self.tok.kind == "ident" and self.tok.text not in KEYWORDS:
            if self.tok.text in self.bound or self.tok.text in names:
                self.fail(f"variable {self.tok.text!r} is bound twice")
            names.append(self.tok.text)
            self.i += 1
            if self.at(","):
                self.i += 1
        if not names:
            self.fail(f"{word} needs at least one variable")
        self.expect(".")
        self.bound.extend(names)
        body = self.formula()
        del self.bound[-len(names):]
        cls = Forall if word == "forall" else Exists
        return cls(tuple(names), body)

    def implication(self):
        left = self.disjunction()
        if self.at("->"):
            self.i += 1
            return Implies(left, self.formula())
        return left

    def disjunction(self):
        parts = [self.conjunction()]
        while self.at("|"):
            self.i += 1
            parts.append(self.conjunction())
        return disj(*parts)

    def conjunction(self):
        parts = [self.negation()]
        while self.at("&"):
            self.i += 1
            parts.append(self.negation())
        return conj(*parts)

    def negation(self):
        if self.at("~"):
            self.i += 1
            return Not(self.negation())
        if self.tok.kind == "ident" and self.tok.text in KEYWORDS:
            return self.quantified()
        if self.at("("):
            # a parenthesis opens either a formula or a term; try formula first
            save, depth = self.i, len(self.bound)
            self.i += 1
            try:
                inner = self.formula()
                self.expect(")")
            except ParseError:
                self.i = save
                del self.bound[depth:]
            else:
                if not self.at("=", "!=", "<=", "^", "v"):
                    return inner
                self.i = save
        return self.atom()

    def atom(self):
        left = self.term()
        tok = self.tok
        if not self.at("=", "!=", "<="):
            what = "end of input" if tok.kind == "end" else repr(tok.text)
            self.fail(f"expected '=', '!=' or '<=', found {what}")
        self.i += 1
        right = self.term()
        if tok.text == "=":
            return Eq(left, right)
        if tok.text == "!=":
            return Neq(left, right)
        return leq(left, right)

    # terms -------------------------------------------------------------
    def term(self):
        out = self.meet_term()
        while self.tok.kind == "ident" and self.tok.text == "v":
            self.i += 1
            out = Join(out, self.meet_term())
        return out

    def meet_term(self):
        out = self.primary()
        while self.at("^"):
            self.i += 1
            out = Meet(out, self.primary())
        return out

    def primary(self):
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Const(tok.text)
        if self.at("@"):
            self.i += 1
            if self.tok.kind != "ident":
                self.fail("expected a constant name after '@'")
            name = self.tok.text
            if self.declared is not None and name not in self.declared:
                self.fail(f"unknown constant {name!r}")
            self.i += 1
            return Const(name)
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            self.i += 1
            if tok.text in self.bound:
                return Var(tok.text)
            if self.declared is not None and tok.text in self.declared:
                return Const(tok.text)
            self.fail(f"unbound variable {tok.text!r}", tok)
        if self.at("("):
            self.i += 1
            inner = self.term()
            self.expect(")")
            return inner
        what = "end of input" if tok.kind == "end" else repr(tok.text)
        self.fail(f"expected a term, found {what}")


def parse(text: str, constants: Iterable[str] | None = None):
    """Parse a closed sentence.

    ``constants`` declares the named constants: bare identifiers that are
    not bound resolve to them, and ``@name`` must be one of them.  With
    ``None`` any ``@name`` is accepted and bare free identifiers are errors.
    """
    p = _Parser(text, constants)
    out = p.formula()
    if p.tok.kind != "end":
        p.fail(f"unexpected {p.tok.text!r}")
    return out


def parse_term(text: str, constants: Iterable[str] | None = None):
    p = _Parser(text, constants)
    out = p.term()
    if p.tok.kind != "end":
        p.fail(f"unexpected {p.tok.text!r}")
    return out

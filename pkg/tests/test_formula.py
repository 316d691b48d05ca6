from itertools import product

import pytest
from hypothesis import given, strategies as st

from continuum_lab.errors import CapExceeded, InputError
from continuum_lab.formula import (ParseError, builtin, check_theory, diagram, evaluate,
                                   find_embedding, format_theory, instance_witness,
                                   is_embedding, is_isomorphic, model_search, normalize, parse,
                                   parse_theory, pretty, theory)
from continuum_lab.formula.syntax import (And, Const, Eq, Exists, Forall, Implies, Join, Meet,
                                          Neq, Not, Or, Var, quantifier_prefix)
from continuum_lab.lattice import chain, diamond, pentagon, power_set
from continuum_lab.formula.models import enumerate_lattices, lattice_from_code

from oracles import naive_eval


# parsing


def test_parse_examples():
    s = parse("forall x. x ^ 1 = x")
    assert s == Forall(("x",), Eq(Meet(Var("x"), Const("1")), Var("x")))
    s = parse("forall x y. (x ^ y = 0) -> exists u v. (x ^ u = 0 & y ^ v = 0 & u v v = 1)")
    assert quantifier_prefix(s) == [("forall", ("x", "y"))]
    assert isinstance(s.body, Implies) and isinstance(s.body.conclusion, Exists)
    assert s.body.conclusion.variables == ("u", "v")


def test_parse_error_location():
    with pytest.raises(ParseError) as exc:
        parse("forall x. x ^")
    assert (exc.value.line, exc.value.column) == (1, 14)


def test_parse_errors():
    with pytest.raises(InputError, match="unbound"):
        parse("forall x. x ^ y = x")
    with pytest.raises(InputError):
        parse("forall x. x ^ a = x")              # undeclared constant
    assert parse("forall x. x ^ a = x", ["a"]).body.left.right == Const("a")


def test_leq_desugars():
    assert parse("forall x. 0 <= x") == parse("forall x. 0 ^ x = 0")


VARS = ["x", "y", "z"]


@st.composite
def terms(draw, scope, depth=2):
    leaves = [Var(v) for v in scope] + [Const("0"), Const("1"), Const("a")]
    if depth == 0 or draw(st.booleans()):
        return draw(st.sampled_from(leaves))
    op = draw(st.sampled_from([Meet, Join]))
    return op(draw(terms(scope, depth - 1)), draw(terms(scope, depth - 1)))


@st.composite
def formulas(draw, scope=(), depth=3):
    kind = draw(st.integers(0, 6 if depth else 1))
    if kind <= 1:
        cls = Eq if kind == 0 else Neq
        return cls(draw(terms(scope)), draw(terms(scope)))
    if kind == 2:
        return Not(draw(formulas(scope, depth - 1)))
    if kind in (3, 4):
        n = draw(st.integers(2, 3))
        cls = And if kind == 3 else Or
        return cls(tuple(draw(formulas(scope, depth - 1)) for _ in range(n)))
    if kind == 5:
        return Implies(draw(formulas(scope, depth - 1)), draw(formulas(scope, depth - 1)))
    free = [v for v in VARS if v not in scope]
    if not free:
        return Eq(draw(terms(scope)), draw(terms(scope)))
    vs = tuple(free[:draw(st.integers(1, len(free)))])
    cls = draw(st.sampled_from([Forall, Exists]))
    return cls(vs, draw(formulas(tuple(scope) + vs, depth - 1)))


@given(formulas())
def test_pretty_round_trip(f):
    assert parse(pretty(f), ["a"]) == f


@given(formulas())
def test_normalize_preserves_truth(f):
    for lat in (chain(3), diamond(), power_set("pq").lattice):
        for a in range(len(lat)):
            env = {"a": a}
            assert naive_eval(lat, normalize(f), env) == naive_eval(lat, f, env)


@given(formulas())
def test_evaluate_matches_naive(f):
    for lat in (chain(2), pentagon(), power_set("pq").lattice):
        for a in range(len(lat)):
            got = evaluate(lat, f, {"a": lat.elements[a]}).value
            assert got == naive_eval(lat, f, {"a": a})


# builtins


def test_builtin_shapes():
    assert quantifier_prefix(builtin("normal")) == [("forall", ("x", "y")), ("exists", ("u", "v"))]
    hi = builtin("hi")
    assert quantifier_prefix(hi) == [("forall", ("x", "y", "u", "v")), ("exists", ("z1", "z2", "z3"))]
    concl = hi.body.body.conclusion
    assert len(concl.parts) == 6
    assert concl.parts[-1] == parse("forall z1 z2 z3. z1 v z2 v z3 = 1").body
    d = builtin("dim_le_1")
    assert [len(v) for _, v in quantifier_prefix(d)] == [4, 4]
    assert d.body.body.conclusion.parts[-1] == parse(
        "forall u0 v0 u1 v1. u0 ^ v0 ^ u1 ^ v1 = 0").body
    with pytest.raises(InputError):
        builtin("nope")


def test_conn_argument():
    s = builtin("conn", "a", ["a"])
    lat = power_set([1, 2]).lattice
    assert evaluate(lat, s, {"a": "{1}"}).value
    assert not evaluate(lat, s, {"a": "{1,2}"}).value


def test_eval_examples():
    assert evaluate(chain(3), builtin("conn")).value
    r = evaluate(power_set([1, 2]).lattice, builtin("conn"))
    assert not r and r.kind == "counterexample"
    assert r.assignment == {"x": "{1}", "y": "{2}"}
    with pytest.raises(InputError, match="unbound constant"):
        evaluate(chain(3), parse("forall x. x ^ a = x", ["a"]))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hi_on_power_sets_with_explicit_witness(n):
    sl = power_set(range(n))
    lat = sl.lattice
    assert evaluate(lat, builtin("hi")).value
    full = sl.full_mask
    pos = {m: i for i, m in enumerate(sl.masks)}
    for x, y, u, v in product(sl.masks, repeat=4):
        if x & y or x & u or y & v:
            continue
        z1, z2, z3 = full & ~y, 0, y
        assert not x & (z2 | z3) and not y & (z1 | z2) and not z1 & z3
        assert not z1 & z2 & v and not z2 & z3 & u and z1 | z2 | z3 == full
    # the evaluator's own witnesses satisfy the conditions too
    w = instance_witness(lat, builtin("hi"), {"x": lat.elements[pos[1 % (full + 1)]],
                                              "y": lat.elements[0], "u": lat.elements[0],
                                              "v": lat.elements[0]})
    assert w is not None and set(w) == {"z1", "z2", "z3"}


@pytest.mark.parametrize("name", ["normal", "conn", "hi", "dim_le_1", "distributive"])
def test_eval_respects_isomorphism(name):
    s = builtin(name)
    for lat in enumerate_lattices(5):
        perm = lat.elements[::-1]
        relabeled = type(lat).from_json({
            "elements": list(perm),
            "meet": [[lat.elements[lat.meet[lat.index(a)][lat.index(b)]] for b in perm] for a in perm],
            "join": [[lat.elements[lat.join[lat.index(a)][lat.index(b)]] for b in perm] for a in perm],
            "bottom": lat.elements[lat.bottom], "top": lat.elements[lat.top]})
        assert evaluate(lat, s).value == evaluate(relabeled, s).value


# diagrams and embeddings


def test_diagram_counts():
    d2, d3 = diagram(chain(2)), diagram(chain(3))
    assert (len(d2.constants), len(d2)) == (2, 8 + 1)
    assert (len(d3.constants), len(d3)) == (3, 18 + 3)
    assert all(r.value for r in check_theory(chain(3), d3).values())


def test_diagram_models_embed():
    t = diagram(chain(3))
    res = model_search(t, 5, all_models=True)
    assert res.found
    for lat, binds in res.models:
        # the diagram fixes the tables, not the bounds of the ambient model
        f = [lat.index(binds[f"e{i}"]) for i in range(3)]
        c = chain(3)
        assert len(set(f)) == 3
        for i, j in product(range(3), repeat=2):
            assert lat.meet[f[i]][f[j]] == f[c.meet[i][j]]
            assert lat.join[f[i]][f[j]] == f[c.join[i][j]]


def test_find_embedding_examples():
    two = chain(2)
    for lat in (chain(3), diamond(), power_set("ab").lattice):
        e = find_embedding(two, lat)
        assert e == {"0": lat.elements[lat.bottom], "1": lat.elements[lat.top]}
    p2 = power_set([1, 2]).lattice
    e = find_embedding(chain(3), p2)
    assert e["m"] in ("{1}", "{2}")
    assert is_embedding(chain(3), p2, {chain(3).index(k): p2.index(v) for k, v in e.items()})
    assert find_embedding(diamond(), power_set([1, 2, 3]).lattice) is None


def test_isomorphism():
    assert not is_isomorphic(diamond(), pentagon())
    assert is_isomorphic(power_set("ab").lattice, power_set([1, 2]).lattice)


# model search


def test_model_search_counts_match_oracle():
    from oracles import lattice_counts
    want = lattice_counts(7)
    for n, k in want.items():
        assert sum(1 for _ in enumerate_lattices(n)) == k


def test_model_search_examples():
    t = theory(("d", builtin("distributive")), ("j", builtin("disjunctive")), ("c", builtin("conn")))
    res = model_search(t, 4, all_models=True)
    assert res.certificate["exhaustive"]
    assert max(len(m) for m, _ in res.models) <= 2
    t = theory(("c", builtin("conn")), ("n", builtin("normal")), ("h", builtin("hi")))
    res = model_search(t, 3, largest_first=True)
    assert res.model.elements == ("0", "a", "1")
    assert is_isomorphic(res.model, chain(3))
    t = theory(parse("0 != 1"), parse("0 = 1"))
    res = model_search(t, 6)
    assert not res.found and res.certificate["exhaustive"]
    with pytest.raises(CapExceeded):
        model_search(t, 11)
    with pytest.raises(InputError):
        model_search(t, 0)


def test_model_search_with_constants():
    t = parse_theory("constants: a b\nab: a ^ b = 0\nnz: a != 0 & b != 0\n")
    res = model_search(t, 4)
    lat = res.model
    assert len(lat) == 4
    a, b = lat.index(res.bindings["a"]), lat.index(res.bindings["b"])
    assert lat.meet[a][b] == lat.bottom and a != lat.bottom and b != lat.bottom


# theory files


def test_theory_file_format(tmp_path):
    text = ("# comment\nconstants: a b=1\n"
            "c: builtin conn a   # connectedness of a\n"
            "meet: forall x. \\\n   x ^ a = x ^ a\n")
    t = parse_theory(text)
    assert t.names() == ["c", "meet"] and t.constants == ("a", "b")
    assert t.interpretations == {"b": "1"}
    again = parse_theory(format_theory(t))
    assert again.sentences == t.sentences
    p = tmp_path / "t.theory"
    p.write_text("bad line\n")
    from continuum_lab.formula import load_theory
    with pytest.raises(InputError, match="t.theory:1"):
        load_theory(p)
    with pytest.raises(InputError, match=":2: sentence 'x'"):
        parse_theory("a: forall x. x = x\nx: forall x. x ^\n")
    with pytest.raises(InputError, match="duplicate"):
        parse_theory("a: forall x. x = x\na: forall x. x = x\n")

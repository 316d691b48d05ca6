import numpy as np
import pytest

from continuum_lab import kernels
from continuum_lab.formula import builtin, parse
from continuum_lab.formula.evaluate import compile_sentence, evaluate
from continuum_lab.lattice import chain, diamond, pentagon, power_set
from continuum_lab.formula.models import enumerate_lattices

from oracles import naive_eval


def test_backend_selection():
    names = [m.BACKEND for m in kernels.available_backends()]
    assert names[-1] == "python"
    assert kernels.BACKEND == names[0]


def test_assoc_and_distrib_agree(backend):
    for lat in (chain(4), diamond(), pentagon(), power_set("abc").lattice):
        assert backend.assoc_violation(lat.meet_array) is None
        w = backend.distrib_violation(lat.meet_array, lat.join_array)
        assert (w is None) == (lat not in (diamond(), pentagon()))
    t = np.array([[0, 1], [0, 1]], dtype=np.int32)      # x*y = y: associative
    assert backend.assoc_violation(t) is None
    t = np.array([[1, 0], [0, 0]], dtype=np.int32)      # NOR-like table: not associative
    assert backend.assoc_violation(t) is not None


SENTENCES = [
    "forall x. x ^ 1 = x",
    "exists x. x != 0 & x != 1",
    "forall x y. x ^ y = 0 -> (x = 0 | y = 0)",
    "forall x. exists y. x ^ y = 0 & x v y = 1",
    "~ exists x y z. x ^ (y v z) != (x ^ y) v (x ^ z)",
]


@pytest.mark.parametrize("text", SENTENCES)
def test_backends_agree_with_naive(backend, text):
    s = parse(text)
    for n in range(1, 6):
        for lat in enumerate_lattices(n):
            assert evaluate(lat, s, backend=backend).value == naive_eval(lat, s)


@pytest.mark.parametrize("name", ["normal", "conn", "hi", "distributive", "disjunctive"])
def test_builtins_agree_with_naive(backend, name):
    s = builtin(name)
    for n in range(1, 6):
        for lat in enumerate_lattices(n):
            assert evaluate(lat, s, backend=backend).value == naive_eval(lat, s)


@pytest.mark.parametrize("text", SENTENCES[:4])
def test_backends_leave_identical_environments(text):
    # the deciding value stays in its slot; completed quantifiers reset theirs
    plan = compile_sentence(parse(text))
    for lat in (chain(4), diamond(), power_set("ab").lattice):
        envs = []
        for mod in kernels.available_backends():
            env = [-1] * plan.nslots
            env[0], env[1] = lat.bottom, lat.top
            ev = mod.PlanEvaluator(plan.kind, plan.a, plan.b, lat.meet_array, lat.join_array)
            envs.append((ev.run(plan.root, env), env))
        assert all(e == envs[0] for e in envs)


def test_benchmark_runs(capsys):
    import importlib.util
    from pathlib import Path
    path = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    mod.workloads = lambda: {"distributivity": lambda k: k.distrib_violation(
        chain(4).meet_array, chain(4).join_array)}
    mod.main(["--repeat", "1", "--json"])
    out = capsys.readouterr().out
    assert '"distributivity"' in out

"""Shared generators for tests that need data satisfying preconditions."""
import random
from fractions import Fraction

from continuum_lab.gridspace import GridComplex, foursome_urysohn
from continuum_lab.crooked import CellFunction, T0, T1

ACCEPTANCE_LINES = []


def random_pliable(X: GridComplex, rng: random.Random, k=4):
    """A random pliable foursome of cell sets with C and D nonempty."""
    cells = list(X.cells)
    while True:
        C, D, F, G = (frozenset(rng.sample(cells, rng.randint(0, min(k, len(cells)))))
                      for _ in range(4))
        if C and D and not C & D and not C & F and not D & G:
            return C, D, F, G


def section_point(P, y, rng: random.Random) -> Fraction:
    """A point of the horizontal section of P at height y, often a threshold or an endpoint."""
    a, b = rng.choice(P.horizontal_section(y))
    picks = [a, b, (a + b) / 2, a + (b - a) * Fraction(rng.randint(0, 12), 12)]
    picks += [t for t in (T0, T1) if a <= t <= b]
    return rng.choice(picks)


def maps_for(X: GridComplex, foursome, P, rng: random.Random):
    """Urysohn map f for the foursome and a map g with (g, f) inside P everywhere."""
    f = foursome_urysohn(X, *foursome)
    g = CellFunction((c, section_point(P, f[c], rng)) for c in X.cells)
    return f, g


# one invocation per CLI subcommand, with the exit code it should produce
D = "tests/data/"
CLI_CASES = [
    (["validate-lattice", D + "chain3.json"], 0),
    (["eval", "--lattice", D + "chain3.json", "--formula", "conn"], 0),
    (["eval", "--lattice", D + "p2.json", "--formula", "conn"], 1),
    (["model-search", "--theory", D + "theory_no_model.theory", "--size", "6", "--expect", "none"], 0),
    (["model-search", "--theory", D + "theory_hi_chain.theory", "--size", "3", "--largest-first"], 0),
    (["diagram", "--lattice", D + "chain3.json"], 0),
    (["wallman", "--lattice", D + "p2.json"], 0),
    (["wallman", "--space", D + "discrete4.json"], 0),
    (["components", "--grid", D + "grid5.json", "--cells", D + "middle_column.json"], 0),
    (["urysohn", "--grid", D + "line5.json", "--C", "[[0]]", "--D", "[[4]]"], 0),
    (["partition-check", "--grid", D + "grid5.json", "--L", D + "middle_column.json",
      "--A", D + "left_face.json", "--B", D + "right_face.json"], 0),
    (["partition-check", "--grid", D + "grid5.json", "--L", "[]",
      "--A", D + "left_face.json", "--B", D + "right_face.json"], 1),
    (["essential-check", "--grid", '{"dim": 2, "res": 3}'], 0),
    (["ml-factorize", "--grid", '{"dim": 2, "res": 4}', "--project", "0"], 0),
    (["crooked", "validate"], 0),
    (["crooked", "chicane", "--grid", '{"dim": 2, "res": 2}', "--foursome", D + "foursome_2x2.json"], 1),
    (["crooked", "chicane", "--space", D + "discrete4.json", "--foursome", D + "foursome_points.json"], 0),
    (["crooked", "bing", "--k", "1"], 0),
    (["crooked", "bing-partition", "--steps", "2"], 0),
    (["hausdorff", "--space", D + "metric3.json", "--A", '["0"]', "--B", '["0", "2"]'], 0),
    (["whitney", "--grid", D + "line5.json", "--r", "1/4", "--tol", "1/8"], 0),
    (["cover-degree", "--dim", "3", "--cuts", "3"], 0),
    (["small-mesh", "--grid", '{"dim": 2, "res": 6}', "--N", "[[[0, 0]], [[5, 5]]]"], 0),
    (["order-chain", "--grid", '{"dim": 1, "res": 3}', "--point", "[1]"], 1),
]

"""First-order sentences over finite lattices."""
from .builtins import BUILTINS, builtin
from .evaluate import EvalResult, evaluate, instance_witness, normalize, substitute
from .models import (DEFAULT_CAP, ModelSearchResult, Theory, canonical_lattice, check_theory,
                     diagram, enumerate_lattices, find_embedding, format_theory, is_embedding,
                     is_isomorphic, load_theory, model_search, parse_theory, theory)
from .syntax import ParseError, format_sentence, parse, parse_term, pretty

eval_sentence = evaluate

__all__ = [
    "BUILTINS", "builtin", "EvalResult", "evaluate", "eval_sentence", "instance_witness",
    "normalize", "substitute", "DEFAULT_CAP", "ModelSearchResult", "Theory",
    "canonical_lattice", "check_theory", "diagram", "enumerate_lattices", "find_embedding",
    "format_theory", "is_embedding", "is_isomorphic", "load_theory", "model_search",
    "parse_theory", "theory", "ParseError", "format_sentence", "parse", "parse_term", "pretty",
]

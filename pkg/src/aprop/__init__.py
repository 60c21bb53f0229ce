"""Decision engine for analogical proportions over finite algebras.

Two quaternary relations are implemented on pairs of finite algebras:
the similarity-based relation (arrow-competitor maximality over arbitrary
term pairs) and the rewrite-justification relation (fourth-element
maximality over rewrite rules), together with axiom checking, isomorphism
transfer checks, and a batch CLI.
"""

from .algebras import (
    FiniteAlgebra,
    Mapping,
    evaluate,
    is_homomorphism,
    is_isomorphism,
    load_algebra,
    parse_spec_file,
    solution_set,
    unique_solution_elements,
)
from .clone import Bounds, PairContext, build_pair_context, generate_clone
from .proportion_rw import proportion_rw, solve_rw
from .proportion_sim import proportion_sim, solve_sim
from .similarity import lesssim, similar
from .terms import ArrowPattern, Language, RewriteRule, Term, parse_term
from .verify import (
    AXIOM_SCHEMATA,
    bundled_algebra,
    bundled_algebra_names,
    check_axiom,
    check_first_iso_theorem,
    check_isomorphism_lemma,
    check_second_iso_theorem,
    compare_frameworks,
    run_paper_vectors,
)

__all__ = [
    "FiniteAlgebra",
    "Mapping",
    "Language",
    "Term",
    "ArrowPattern",
    "RewriteRule",
    "Bounds",
    "PairContext",
    "build_pair_context",
    "generate_clone",
    "parse_term",
    "parse_spec_file",
    "load_algebra",
    "evaluate",
    "solution_set",
    "unique_solution_elements",
    "is_homomorphism",
    "is_isomorphism",
    "lesssim",
    "similar",
    "proportion_sim",
    "proportion_rw",
    "solve_sim",
    "solve_rw",
    "AXIOM_SCHEMATA",
    "check_axiom",
    "run_paper_vectors",
    "bundled_algebra",
    "bundled_algebra_names",
    "check_isomorphism_lemma",
    "check_first_iso_theorem",
    "check_second_iso_theorem",
    "compare_frameworks",
]

__version__ = "0.1.0"

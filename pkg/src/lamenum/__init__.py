"""Counting, ranking, uniform sampling and simple-type checking of lambda
terms in de Bruijn notation.

Size counts abstraction and application nodes (indices are free); a
(size, budget) pair names the finite family of terms whose free indices
stay within the budget.  For every family there is a rank bijection, which
is what enumeration, uniform sampling and the statistics modules are built
on.
"""

from .counting import (CoeffVector, RelationReport, RelationViolation,
                       count_contexts, count_exact_free,
                       count_exact_free_by_recurrence, count_family, count_nf,
                       count_nf_contexts, count_neutral,
                       count_neutral_contexts, count_terms, neutral_polynomial,
                       nf_polynomial, surjections, term_polynomial,
                       validate_relations)
from .experiments import ExperimentReport, ExperimentSpec, run_experiment
from .ranking import (NotNormalFormError, OpennessError, RankRangeError,
                      enumerate_family, enumerate_nf, enumerate_terms,
                      rank_nf, rank_term, unrank_nf, unrank_term)
from .sampling import (EmptyDomainError, SamplerConfig, SieveExhaustedError,
                       make_rng, random_nf, random_rank, random_term,
                       random_typable)
from .terms import (Abs, App, Index, LamenumError, Term, TermMetrics,
                    TermSyntaxError, head_lambdas, is_normal_form,
                    openness_of, parse_term, print_term, size_of, subterms,
                    term_from_json, term_from_json_text, term_metrics,
                    term_to_json, term_to_json_text, variable_depths)
from .typecheck import (Arrow, ConstraintResult, Equation, OpenTermError,
                        SimpleType, TypeVar, UntypableError, build_constraint,
                        canonical_type, decompose, format_type, is_typable,
                        occurs_in, principal_type, solve, substitute)

__version__ = "0.1.0"

__all__ = [
    "Abs", "App", "Arrow", "CoeffVector", "ConstraintResult",
    "EmptyDomainError", "Equation", "ExperimentReport", "ExperimentSpec",
    "Index", "LamenumError", "NotNormalFormError", "OpenTermError",
    "OpennessError", "RankRangeError", "RelationReport", "RelationViolation",
    "SamplerConfig", "SieveExhaustedError", "SimpleType", "Term",
    "TermMetrics", "TermSyntaxError", "TypeVar", "UntypableError",
    "build_constraint", "canonical_type", "count_contexts",
    "count_exact_free", "count_exact_free_by_recurrence", "count_family",
    "count_neutral", "count_neutral_contexts", "count_nf",
    "count_nf_contexts", "count_terms", "decompose", "enumerate_family",
    "enumerate_nf", "enumerate_terms", "format_type", "head_lambdas",
    "is_normal_form", "is_typable", "make_rng", "neutral_polynomial",
    "nf_polynomial", "occurs_in", "openness_of", "parse_term",
    "principal_type", "print_term", "random_nf", "random_rank",
    "random_term", "random_typable", "rank_nf", "rank_term",
    "run_experiment", "size_of", "solve", "substitute", "subterms",
    "surjections", "term_from_json", "term_from_json_text", "term_metrics",
    "term_polynomial", "term_to_json", "term_to_json_text", "unrank_nf",
    "unrank_term", "validate_relations", "variable_depths", "__version__",
]

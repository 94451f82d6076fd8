"""Exact Lie-Poisson computations on S(q) for gl_n, sl_n and custom Lie algebras."""
from .algebra import (
    Covector,
    InvariantForm,
    LieAlgebra,
    Splitting,
    build_classical,
    cartan_splitting,
    centralizer,
    killing_form,
    lower_right_sl2,
    make_splitting,
    principal_triple,
    trace_form,
)
from .invariants import InvariantSet, charpoly_invariants, trace_power_invariants, verify_centrality
from .poisson import BracketFamily, bracket_at, deformed_poisson_bracket, pencil_defect, poisson_bracket
from .poly import Poly, PolyRing, TermCapExceeded, parse_poly, term_cap
from .ranklab import SpanReport, b_of, index_of, is_regular
from .subalgebras import (
    GeneratedSubalgebra,
    Verdict,
    criterion_polynomial,
    criterion_verdict,
    generate_MF,
    generate_Z,
    generate_Ztilde,
    pairwise_bracket_report,
)

__version__ = "0.1.0"

__all__ = [
    "Covector",
    "InvariantForm",
    "LieAlgebra",
    "Splitting",
    "build_classical",
    "cartan_splitting",
    "centralizer",
    "killing_form",
    "lower_right_sl2",
    "make_splitting",
    "principal_triple",
    "trace_form",
    "InvariantSet",
    "charpoly_invariants",
    "trace_power_invariants",
    "verify_centrality",
    "BracketFamily",
    "bracket_at",
    "deformed_poisson_bracket",
    "pencil_defect",
    "poisson_bracket",
    "Poly",
    "PolyRing",
    "TermCapExceeded",
    "parse_poly",
    "term_cap",
    "SpanReport",
    "b_of",
    "index_of",
    "is_regular",
    "GeneratedSubalgebra",
    "Verdict",
    "criterion_polynomial",
    "criterion_verdict",
    "generate_MF",
    "generate_Z",
    "generate_Ztilde",
    "pairwise_bracket_report",
]

"""Homotopy of simple loops on 2-bridge spheres in 2-bridge link complements."""

__version__ = "0.1.0"

from .slopes import INFINITY, ContinuedFraction, Slope, SlopeIntervals, contains, intervals, parse_slope, to_continued_fraction
from .words import CyclicWord, Word, upper_word
from .sequences import CyclicSeq, Decomposition, Seq, decompose, s_sequence_of_slope, t_sequence
from .farey import OrbitReduction, is_null_homotopic, orbit_bfs, reduce_to_fundamental_domain
from .cancellation import is_piece_criterion, min_piece_count, symmetrized_set, verify_c4_t4
from .diagrams import AnnularDiagram, FaceSplit, conjugacy_witness, search_one_layer, validate
from .oracle import RewriteCertificate, check_certificate, nonconjugacy_evidence, riley_polynomial, word_problem_search
from .decide import Classification, Family, UnsupportedSlope, Verdict, classify_family, classify_loop, decide_homotopic, full_decision

__all__ = [
    "INFINITY", "ContinuedFraction", "Slope", "SlopeIntervals", "contains", "intervals", "parse_slope",
    "to_continued_fraction", "CyclicWord", "Word", "upper_word", "CyclicSeq", "Decomposition", "Seq",
    "decompose", "s_sequence_of_slope", "t_sequence", "OrbitReduction", "is_null_homotopic", "orbit_bfs",
    "reduce_to_fundamental_domain", "is_piece_criterion", "min_piece_count", "symmetrized_set",
    "verify_c4_t4", "AnnularDiagram", "FaceSplit", "conjugacy_witness", "search_one_layer", "validate",
    "RewriteCertificate", "check_certificate", "nonconjugacy_evidence", "riley_polynomial",
    "word_problem_search", "Classification", "Family", "UnsupportedSlope", "Verdict", "classify_family",
    "classify_loop", "decide_homotopic", "full_decision",
]

"""Recognition of star pairwise compatibility graphs with verified witnesses.

A graph is a star-PCG when its vertices can be given weights and a window
``[dmin, dmax]`` such that two vertices are adjacent exactly when their
weight sum falls in the window. :func:`recognize` decides membership and
returns an exact rational witness that has been checked by forward
evaluation.
"""

from .estimator import StarPCGRecognizer
from .families import SetFamily, consecutive_ordering, contiguous_ordering, is_consecutive, is_contiguous
from .gaps import GapCertificate, ProperColoring, find_gap, is_gap_free, proper_coloring
from .graph import ContractError, Graph, GraphFormatError, format_graph, parse_graph
from .oracle import brute_force_gap_free, random_graph, random_star_pcg
from .pcr import StarPCR, WeightedTree, evaluate_pcr, star_graph, verify_witness
from .recognize import RecognitionOutcome, Refusal, recognize
from .validation import check_graph
from .weights import normalize, run_synthesis, synthesize_weights

__version__ = "0.1.0"

__all__ = [
    "ContractError",
    "GapCertificate",
    "Graph",
    "GraphFormatError",
    "ProperColoring",
    "RecognitionOutcome",
    "Refusal",
    "SetFamily",
    "StarPCGRecognizer",
    "StarPCR",
    "WeightedTree",
    "brute_force_gap_free",
    "check_graph",
    "consecutive_ordering",
    "contiguous_ordering",
    "evaluate_pcr",
    "find_gap",
    "format_graph",
    "is_consecutive",
    "is_contiguous",
    "is_gap_free",
    "normalize",
    "parse_graph",
    "proper_coloring",
    "random_graph",
    "random_star_pcg",
    "recognize",
    "run_synthesis",
    "star_graph",
    "synthesize_weights",
    "verify_witness",
]

"""Maximum matchings in dense graphs of given matching number: blossom
matching, Gallai-Edmonds decomposition, exact counting, extremal formulas
and constructive matching families."""

from .graph import Graph, build_graph, generate
from .matching import matching_number, maximum_matching, validate_matching
from .gallai_edmonds import decompose, decompose_by_definition, verify_decomposition
from .counting import (
    count_maximum_matchings,
    count_maximum_matchings_bruteforce,
    count_maximum_matchings_decomposed,
    count_perfect_matchings,
)
from .bounds import bound_report, eg_max_size

__version__ = "0.1.0"

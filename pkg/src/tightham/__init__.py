"""Extremal tools for k-uniform hypergraphs: tight components, shifting,
matchings, tight cycles and the local-structure verifier for dense 3-graphs."""

from .core import (
    ColouredPair,
    ContractViolation,
    Hypergraph,
    HypergraphError,
    Matching,
    crossing_sets,
    degree,
    distinguishable,
    is_tightly_connected,
    min_d_degree,
    shadow,
    tight_adjacent,
    tight_components,
)
from .shifting import (
    canonicalize_pair,
    is_left_shifted,
    is_right_shifted,
    left_shift_closure,
    right_shift_closure,
    shift,
    shift_pair,
)
from .matchcycle import (
    SearchTimeout,
    has_matching_of_size,
    has_tight_hamilton,
    is_tight_cycle,
    longest_tight_cycle,
    max_matching,
)

__version__ = "0.1.0"

"""Similarity of AB and BA: rank sequences, certificates and unitary screens."""

from ._abba import (  # noqa: F401
    DimensionError,
    Error,
    HypothesisError,
    ParseError,
    UnsupportedError,
    catalog_names,
    classify,
    construct_similarity,
    decide,
    decide_unitary_2x2,
    enumerate_tail_sequences,
    find_intertwiner,
    fixture,
    is_valid_rank_sequence,
    load_matrix,
    minimal_counterexample_analysis,
    phi_similarity,
    rank,
    rank_one_normal_unitary,
    rank_sequence,
    realize_rank_sequence,
    search,
    word_trace_screen,
)

__all__ = [name for name in dir() if not name.startswith("_")]

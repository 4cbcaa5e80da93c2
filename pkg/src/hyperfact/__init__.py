"""Regular colorings (r-factorizations) of complete uniform hypergraphs.

Construct r-factorizations of K_n^h, extend partial ones through
amalgamation and detachment, and verify everything exactly.
"""
from .core import (
    U,
    Coloring,
    InternalError,
    InvalidParameters,
    MultiHypergraph,
    PartialFact,
    Params,
    amalgamate,
    binom,
    complete,
    degree,
    identity_checks,
    merge,
    as_pieces,
    as_restrict,
    partial_fact,
    random_partial,
    restrict,
    retarget,
    shrink,
)
from .detach import DetachPlan, InvalidInput, SearchExhausted, SplitState, detach, split_once
from .extend import (
    ExtendFailure,
    ExtendResult,
    extend_generic,
    extend_k4,
    extend_k5,
    extend_outside,
    extend_pieces,
    factorize,
)
from .hf import ParseError, ValidationError, format_hf, parse_hf, read_hf, write_hf
from .oracle import SearchConfig, SearchResult, oracle_detach, oracle_extend
from .verify import (
    VerifyReport,
    check_conditions,
    check_full,
    check_p_friendly,
    check_partial,
    check_pieces_conditions,
    type_profile,
)

__version__ = "0.1.0"

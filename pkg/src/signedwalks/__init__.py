"""Closed walks in signed multigraphs: rotation closure, the exclusive
3-walk property, signature reconstruction, and bounded exhaustive checks."""

from .corpus import Corpus, CorpusParams, example_triangle, generate_corpus
from .errors import (
    CapExceeded,
    DocumentError,
    GraphError,
    PreconditionError,
    SignedWalkError,
    UnknownMembership,
    WalkError,
)
from .graph import (
    MINUS,
    PLUS,
    Multigraph,
    Sign,
    Signature,
    apply_switching,
    build_graph,
    enumerate_signatures,
    sign_mul,
    switching_equivalent,
)
from .realize import (
    Realizability,
    RealizabilityResult,
    SpanningForest,
    build_section2_oracle,
    build_spanning_forest,
    decide_realizable,
    exhaustive_refute,
    fundamental_walk,
    reconstruct_signature,
    unbalanced_vertices,
    verify_realization,
)
from .walks import (
    Step,
    Walk,
    canonical_rotation,
    concat,
    enumerate_closed_walks,
    enumerate_walks,
    inverse,
    make_walk,
    rotate,
    rotations,
    sign_of_walk,
    trivial_walk,
)
from .walksets import (
    IN,
    OUT,
    UNKNOWN,
    CheckReport,
    ExplicitOracle,
    Membership,
    Section2Oracle,
    SignatureOracle,
    Verdict,
    WalkSetOracle,
    check_exclusive_3walk,
    check_lemma_prop7,
    check_lemma_prop8,
    check_rotation_closed,
    list_members,
    recheck,
    sigma_of,
)

__version__ = "0.1.0"

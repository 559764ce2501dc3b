"""Vertex-oriented trivalent graph spaces and manifold weight systems."""

__version__ = "0.1.0"

from .errors import (
    BadPrime,
    CacheCorruption,
    DegreeMismatch,
    MalformedGraph,
    ResourceLimit,
    VectorFileError,
)
from .graphs import (
    EMPTY_KEY,
    Graph,
    components,
    disjoint_union,
    empty_graph,
    interval_graph,
    make_graph,
    parse_key,
    serialize,
    theta_graph,
    y_graph,
)
from .canon import SignedClass, canonicalize, is_isomorphic, reverse_vertex

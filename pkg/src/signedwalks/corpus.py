"""Exhaustive corpora of small labeled multigraphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .errors import CapExceeded
from .graph import Multigraph, Signature, build_graph

MAX_VERTICES = 5
MAX_EDGES = 6


@dataclass(frozen=True)
class CorpusParams:
    max_vertices: int = 3
    max_edges: int = 4
    loops: bool = True
    parallel: bool = True


@dataclass(frozen=True)
class Corpus:
    params: CorpusParams
    graphs: tuple[Multigraph, ...]

    def __iter__(self) -> Iterator[Multigraph]:
        return iter(self.graphs)

    def __len__(self) -> int:
        return len(self.graphs)


def generate_corpus(params: CorpusParams = CorpusParams()) -> Corpus:
    """Every multigraph on vertices ``v0..v{n-1}`` (``n = max_vertices``) with at most ``max_edges`` edges.

    A graph is a multiset of endpoint pairs; edges are named ``e0, e1, ...``
    in sorted endpoint order.  Graphs on fewer vertices appear padded with
    isolated vertices.  Output order is by edge count, then lexicographic.
    """
    n, m = params.max_vertices, params.max_edges
    if not 0 <= n <= MAX_VERTICES or not 0 <= m <= MAX_EDGES:
        raise CapExceeded(
            f"corpus parameters ({n} vertices, {m} edges) exceed the caps "
            f"({MAX_VERTICES} vertices, {MAX_EDGES} edges)"
        )
    vertices = [f"v{i}" for i in range(n)]
    slots = [
        (u, v)
        for u, v in itertools.combinations_with_replacement(vertices, 2)
        if params.loops or u != v
    ]
    choose = itertools.combinations_with_replacement if params.parallel else itertools.combinations
    width = len(str(max(m - 1, 0)))
    graphs = []
    for k in range(m + 1):
        for ends in choose(slots, k):
            edges = {f"e{i:0{width}d}": pair for i, pair in enumerate(ends)}
            graphs.append(Multigraph(vertices, edges))
    return Corpus(params, tuple(graphs))


def example_triangle():
    """The triangle ``v0 v1 v2`` with ``e01`` negative: the smallest unbalanced cycle."""
    graph = build_graph(
        ["v0", "v1", "v2"],
        [("e01", ("v0", "v1")), ("e12", ("v1", "v2")), ("e20", ("v2", "v0"))],
    )
    return graph, Signature(graph, {"e01": "-", "e12": "+", "e20": "+"})

"""Rooted, directed walks and their algebra.

A walk is a start vertex plus a sequence of oriented edge traversals.  Walks
are compared as rooted sequences: a closed walk, its rotations and its inverse
are all distinct values.  A loop has a single traversal orientation.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .errors import CapExceeded, GraphError, WalkError
from .graph import Multigraph, Sign, Signature

WALK_CAP = 10**6


class Step(NamedTuple):
    edge: str
    tail: str
    head: str

    def reversed(self) -> Step:
        return Step(self.edge, self.head, self.tail)


class Walk:
    """Immutable walk on a host graph.

    Build walks with :func:`make_walk`; the constructor trusts its input.
    """

    __slots__ = ("graph", "start", "steps", "_odd", "_rotations")

    def __init__(self, graph: Multigraph, start: str, steps: Sequence[Step] = ()):
        self.graph = graph
        self.start = start
        self.steps = tuple(steps)
        self._odd = None
        self._rotations = None

    @property
    def end(self) -> str:
        return self.steps[-1].head if self.steps else self.start

    @property
    def closed(self) -> bool:
        return self.end == self.start

    @property
    def trivial(self) -> bool:
        return not self.steps

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(s.edge for s in self.steps)

    @property
    def odd_edges(self) -> frozenset[str]:
        """Edges traversed an odd number of times."""
        if self._odd is None:
            odd: set[str] = set()
            for s in self.steps:
                odd ^= {s.edge}
            self._odd = frozenset(odd)
        return self._odd

    def key(self) -> tuple:
        return (self.start, self.steps)

    def __eq__(self, other):
        if not isinstance(other, Walk):
            return NotImplemented
        return (
            self.start == other.start
            and self.steps == other.steps
            and self.graph == other.graph
        )

    def __hash__(self):
        return hash((self.start, self.steps))

    def __str__(self):
        parts = [self.start]
        for s in self.steps:
            parts += [s.edge, s.head]
        return "(" + ",".join(parts) + ")"

    def __repr__(self):
        return f"Walk{self}"


def trivial_walk(graph: Multigraph, v: str) -> Walk:
    if not graph.has_vertex(v):
        raise WalkError(f"unknown vertex {v!r}")
    return Walk(graph, v)


def make_walk(graph: Multigraph, start: str, edge_ids: Iterable[str]) -> Walk:
    """Walk from ``start`` along ``edge_ids``; orientations follow from incidence."""
    if not graph.has_vertex(start):
        raise WalkError(f"unknown start vertex {start!r}")
    steps = []
    at = start
    for pos, e in enumerate(edge_ids, 1):
        if e not in graph.edges:
            raise WalkError(f"unknown edge {e!r} at position {pos}", pos)
        u, v = graph.ends(e)
        if at == u:
            head = v
        elif at == v:
            head = u
        else:
            raise WalkError(
                f"edge {e!r} at position {pos} is not incident to {at!r}", pos
            )
        steps.append(Step(e, at, head))
        at = head
    return Walk(graph, start, steps)


def _same_graph(a: Walk, b: Walk) -> None:
    if a.graph is not b.graph and a.graph != b.graph:
        raise WalkError("walks live on different graphs")


def concat(w1: Walk, w2: Walk) -> Walk:
    _same_graph(w1, w2)
    if w1.end != w2.start:
        raise WalkError(f"cannot concatenate: {w1} ends at {w1.end}, {w2} starts at {w2.start}")
    return Walk(w1.graph, w1.start, w1.steps + w2.steps)


def inverse(w: Walk) -> Walk:
    return Walk(w.graph, w.end, tuple(s.reversed() for s in reversed(w.steps)))


def _require_closed(w: Walk) -> None:
    if not w.closed:
        raise WalkError(f"{w} is not closed")


def rotate(w: Walk, k: int) -> Walk:
    """Start ``w`` after its first ``k`` steps, keeping the traversal direction."""
    _require_closed(w)
    if not 0 <= k < max(len(w), 1):
        raise WalkError(f"rotation index {k} out of range for a walk of length {len(w)}")
    if k == 0:
        return w
    return Walk(w.graph, w.steps[k - 1].head, w.steps[k:] + w.steps[:k])


def rotations(w: Walk) -> frozenset[Walk]:
    return frozenset(rotation_list(w))


def rotation_list(w: Walk) -> tuple[Walk, ...]:
    """``rotate(w, k)`` for every valid ``k`` in order, duplicates kept."""
    if w._rotations is None:
        _require_closed(w)
        w._rotations = tuple(rotate(w, k) for k in range(max(len(w), 1)))
    return w._rotations


def canonical_rotation(w: Walk) -> Walk:
    return min(rotation_list(w), key=Walk.key)


def sign_of_walk(sig: Signature, w: Walk) -> Sign:
    if sig.graph is not w.graph and sig.graph != w.graph:
        raise GraphError("walk and signature live on different graphs")
    return Sign.from_parity(len(w.odd_edges & sig.negative))


def count_walks(graph: Multigraph, x: str, lmax: int, y: str | None = None) -> int:
    """Number of walks from ``x`` of length at most ``lmax`` (ending at ``y`` if given)."""
    counts = {v: 0 for v in graph.vertices}
    counts[x] = 1
    total = counts[x] if y in (None, x) else 0
    for _ in range(lmax):
        nxt = dict.fromkeys(graph.vertices, 0)
        for u, c in counts.items():
            if c:
                for _, w in graph.incident(u):
                    nxt[w] += c
        counts = nxt
        total += sum(counts.values()) if y is None else counts[y]
    return total


@lru_cache(maxsize=512)
def _walks_from(graph: Multigraph, x: str, lmax: int) -> tuple[Walk, ...]:
    out: list[Walk] = []

    def dfs(at: str, steps: tuple[Step, ...]) -> None:
        out.append(Walk(graph, x, steps))
        if len(steps) == lmax:
            return
        for e, w in graph.incident(at):
            dfs(w, steps + (Step(e, at, w),))

    dfs(x, ())
    return tuple(out)


def walks_from(graph: Multigraph, x: str, lmax: int, cap: int = WALK_CAP) -> tuple[Walk, ...]:
    """Every walk starting at ``x`` with length at most ``lmax``, depth-first order."""
    if not graph.has_vertex(x):
        raise WalkError(f"unknown vertex {x!r}")
    if lmax < 0:
        raise WalkError("length bound must be non-negative")
    n = count_walks(graph, x, lmax)
    if n > cap:
        raise CapExceeded(f"{n} walks from {x} up to length {lmax} exceeds the cap {cap}")
    return _walks_from(graph, x, lmax)


def enumerate_walks(graph: Multigraph, x: str, y: str, lmax: int, cap: int = WALK_CAP) -> tuple[Walk, ...]:
    """All ``x``-``y`` walks of length at most ``lmax``.

    Depth-first order with incident edges tried in id order; the trivial
    walk comes first when ``x == y``.
    """
    if not graph.has_vertex(y):
        raise WalkError(f"unknown vertex {y!r}")
    return tuple(w for w in walks_from(graph, x, lmax, cap) if w.end == y)


def enumerate_closed_walks(graph: Multigraph, lmax: int, cap: int = WALK_CAP) -> tuple[Walk, ...]:
    """Closed walks of length at most ``lmax``, grouped by start vertex in id order."""
    out: list[Walk] = []
    for v in graph.vertices:
        out.extend(enumerate_walks(graph, v, v, lmax, cap))
    return tuple(out)


def by_length(walks: Iterable[Walk]) -> list[Walk]:
    """Stable sort by length, so scans report the shortest witness first."""
    return sorted(walks, key=len)

"""Multigraphs with loops and parallel edges, edge signs, signatures and switching.

Identifiers are opaque strings and every deterministic ordering in the package
is lexicographic on them.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from typing import Iterable, Iterator, Mapping

from .errors import CapExceeded, GraphError

SIGNATURE_CAP = 20


class Sign(enum.Enum):
    """Element of the two-element group {+, -}."""

    PLUS = "+"
    MINUS = "-"

    def __mul__(self, other: Sign) -> Sign:
        if not isinstance(other, Sign):
            return NotImplemented
        return Sign.PLUS if self is other else Sign.MINUS

    def __neg__(self) -> Sign:
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_parity(cls, odd: int) -> Sign:
        return cls.MINUS if odd & 1 else cls.PLUS


PLUS = Sign.PLUS
MINUS = Sign.MINUS


def sign_mul(a: Sign, b: Sign) -> Sign:
    return a * b


class Multigraph:
    """Immutable undirected multigraph; loops and parallel edges are allowed.

    ``edges`` maps an edge id to its endpoint pair, stored sorted so that a
    loop is ``(v, v)``.
    """

    __slots__ = ("vertices", "edges", "_incidence", "_hash")

    def __init__(self, vertices: Iterable[str], edges: Mapping[str, tuple[str, str]]):
        vs = tuple(vertices)
        vset = set(vs)
        if len(vset) != len(vs):
            dup = next(v for v in vs if vs.count(v) > 1)
            raise GraphError(f"duplicate vertex id {dup!r}")
        for v in vs:
            if not isinstance(v, str):
                raise GraphError(f"vertex id must be a string, got {v!r}")
        norm: dict[str, tuple[str, str]] = {}
        for e, ends in edges.items():
            if not isinstance(e, str):
                raise GraphError(f"edge id must be a string, got {e!r}")
            u, v = ends
            for w in (u, v):
                if w not in vset:
                    raise GraphError(f"edge {e!r} has endpoint {w!r} which is not a vertex")
            norm[e] = (u, v) if u <= v else (v, u)
        object.__setattr__(self, "vertices", tuple(sorted(vs)))
        object.__setattr__(self, "edges", {e: norm[e] for e in sorted(norm)})
        inc: dict[str, list[tuple[str, str]]] = {v: [] for v in self.vertices}
        for e, (u, v) in self.edges.items():
            inc[u].append((e, v))
            if u != v:
                inc[v].append((e, u))
        object.__setattr__(
            self, "_incidence", {v: tuple(sorted(lst)) for v, lst in inc.items()}
        )
        object.__setattr__(
            self, "_hash", hash((self.vertices, tuple(self.edges.items())))
        )

    def __setattr__(self, name, value):
        raise AttributeError("Multigraph is immutable")

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Multigraph):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        edges = ", ".join(f"{e}:{u}-{v}" for e, (u, v) in self.edges.items())
        return f"Multigraph(vertices={list(self.vertices)}, edges=[{edges}])"

    def incident(self, v: str) -> tuple[tuple[str, str], ...]:
        """``(edge, other endpoint)`` pairs at ``v`` in edge-id order; loops appear once."""
        return self._incidence[v]

    def ends(self, e: str) -> tuple[str, str]:
        return self.edges[e]

    def is_loop(self, e: str) -> bool:
        u, v = self.edges[e]
        return u == v

    def has_vertex(self, v) -> bool:
        return v in self._incidence

    def components(self) -> list[tuple[str, ...]]:
        """Connected components, each sorted, listed by least vertex."""
        seen: set[str] = set()
        out = []
        for root in self.vertices:
            if root in seen:
                continue
            comp = [root]
            seen.add(root)
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for _, w in self._incidence[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            out.append(tuple(sorted(comp)))
        return out


def build_graph(vertices: Iterable[str], edges: Iterable[tuple[str, tuple[str, str]]]) -> Multigraph:
    """Build a multigraph from a vertex list and ``(edge_id, (u, v))`` pairs."""
    emap: dict[str, tuple[str, str]] = {}
    for e, ends in edges:
        if e in emap:
            raise GraphError(f"duplicate edge id {e!r}")
        ends = tuple(ends)
        if len(ends) != 2:
            raise GraphError(f"edge {e!r} must have exactly two endpoints")
        emap[e] = ends
    return Multigraph(vertices, emap)


class Signature:
    """Total map from the edges of one graph to signs."""

    __slots__ = ("graph", "signs", "negative", "_hash")

    def __init__(self, graph: Multigraph, signs: Mapping[str, Sign | str]):
        extra = set(signs) - set(graph.edges)
        if extra:
            raise GraphError(f"signature names unknown edges {sorted(extra)}")
        missing = set(graph.edges) - set(signs)
        if missing:
            raise GraphError(f"signature is missing edges {sorted(missing)}")
        table = {}
        for e in graph.edges:
            s = signs[e]
            if not isinstance(s, Sign):
                try:
                    s = Sign(s)
                except ValueError:
                    raise GraphError(f"edge {e!r}: sign must be '+' or '-', got {s!r}") from None
            table[e] = s
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "signs", table)
        object.__setattr__(
            self, "negative", frozenset(e for e, s in table.items() if s is MINUS)
        )
        object.__setattr__(self, "_hash", hash((graph, self.negative)))

    def __setattr__(self, name, value):
        raise AttributeError("Signature is immutable")

    def __getitem__(self, e: str) -> Sign:
        return self.signs[e]

    def __eq__(self, other):
        if not isinstance(other, Signature):
            return NotImplemented
        return self.negative == other.negative and self.graph == other.graph

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{e}:{s}" for e, s in self.signs.items())
        return f"Signature({body})"

    def compact(self) -> str:
        """Signs in edge-id order, e.g. ``'-++'``."""
        return "".join(s.value for s in self.signs.values())

    @classmethod
    def all_plus(cls, graph: Multigraph) -> Signature:
        return cls(graph, {e: PLUS for e in graph.edges})

    @classmethod
    def from_negative(cls, graph: Multigraph, negative: Iterable[str]) -> Signature:
        neg = set(negative)
        return cls(graph, {e: MINUS if e in neg else PLUS for e in graph.edges})


def _check_vertex_set(graph: Multigraph, vertex_set: Iterable[str]) -> frozenset[str]:
    s = frozenset(vertex_set)
    unknown = [v for v in s if not graph.has_vertex(v)]
    if unknown:
        raise GraphError(f"unknown vertices {sorted(unknown)}")
    return s


def apply_switching(sig: Signature, vertex_set: Iterable[str]) -> Signature:
    """Negate every non-loop edge with exactly one endpoint in ``vertex_set``."""
    s = _check_vertex_set(sig.graph, vertex_set)
    flipped = {e for e, (u, v) in sig.graph.edges.items() if (u in s) != (v in s)}
    return Signature.from_negative(sig.graph, sig.negative ^ flipped)


def enumerate_signatures(graph: Multigraph, cap: int = SIGNATURE_CAP) -> Iterator[Signature]:
    """All ``2**|E|`` signatures; a binary counter over edges in id order, ``+`` = 0.

    The first edge is the most significant digit, so the all-plus signature
    comes first and the all-minus one last.
    """
    edges = list(graph.edges)
    if len(edges) > cap:
        raise CapExceeded(f"{len(edges)} edges exceeds the signature cap {cap}")
    for bits in itertools.product((PLUS, MINUS), repeat=len(edges)):
        yield Signature(graph, dict(zip(edges, bits)))


def switching_equivalent(sig1: Signature, sig2: Signature) -> tuple[bool, frozenset[str] | None]:
    """Decide whether ``sig2`` is a switching of ``sig1``.

    Returns ``(True, S)`` with ``apply_switching(sig1, S) == sig2`` or
    ``(False, None)``.  Per component ``S`` is the smaller side of the cut,
    ties going to the side without the component's least vertex.
    """
    if sig1.graph != sig2.graph:
        raise GraphError("signatures live on different graphs")
    graph = sig1.graph
    differ = sig1.negative ^ sig2.negative
    result: set[str] = set()
    for comp in graph.components():
        side = {comp[0]: False}
        queue = deque([comp[0]])
        while queue:
            u = queue.popleft()
            for e, w in graph.incident(u):
                flip = side[u] ^ (e in differ)
                if w not in side:
                    side[w] = flip
                    queue.append(w)
                elif side[w] != flip:
                    # also catches loops: u == w forces e not in differ
                    return False, None
        cut = {v for v, inside in side.items() if inside}
        if len(cut) * 2 > len(comp):
            cut = set(comp) - cut
        result |= cut
    return True, frozenset(result)

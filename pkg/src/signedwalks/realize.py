"""Signature reconstruction from walk-set oracles and bounded realizability.

A set of closed walks is realizable when it is exactly the set of negative
closed walks of some signature.  Reconstruction puts ``+`` on a breadth-first
spanning forest and reads each remaining edge's sign off the oracle's answer
on that edge's fundamental walk.  If the oracle is realizable at all, the
result realizes it, so a verification failure refutes realizability outright.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from .errors import CapExceeded, PreconditionError, UnknownMembership, WalkError
from .graph import MINUS, Multigraph, Signature, enumerate_signatures
from .walks import WALK_CAP, Step, Walk, by_length, enumerate_closed_walks, inverse
from .walksets import (
    IN,
    UNKNOWN,
    CheckReport,
    Section2Oracle,
    Verdict,
    WalkSetOracle,
    Witness,
    _report,
    sigma_of,
)

REFUTE_CAP = 12


@dataclass(frozen=True)
class SpanningForest:
    graph: Multigraph
    roots: tuple[str, ...]
    tree_edges: frozenset[str]
    paths: dict[str, Walk]
    root_of: dict[str, str]

    @property
    def non_tree_edges(self) -> list[str]:
        return [e for e in self.graph.edges if e not in self.tree_edges]


def build_spanning_forest(graph: Multigraph) -> SpanningForest:
    """Breadth-first forest rooted at the least vertex of each component.

    Incident edges are tried in id order; loops never enter the forest.
    """
    paths: dict[str, Walk] = {}
    root_of: dict[str, str] = {}
    roots = []
    tree = set()
    for root in graph.vertices:
        if root in paths:
            continue
        roots.append(root)
        paths[root] = Walk(graph, root)
        root_of[root] = root
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for e, w in graph.incident(u):
                if w in paths:
                    continue
                tree.add(e)
                paths[w] = Walk(graph, root, paths[u].steps + (Step(e, u, w),))
                root_of[w] = root
                queue.append(w)
    return SpanningForest(graph, tuple(roots), frozenset(tree), paths, root_of)


def fundamental_walk(forest: SpanningForest, e: str) -> Walk:
    """Closed walk at the component root: tree path to ``u``, ``e`` from ``u`` to ``v``, tree path back."""
    if e not in forest.graph.edges:
        raise WalkError(f"unknown edge {e!r}")
    if e in forest.tree_edges:
        raise WalkError(f"{e!r} is a tree edge and has no fundamental walk")
    u, v = forest.graph.ends(e)
    steps = forest.paths[u].steps + (Step(e, u, v),) + inverse(forest.paths[v]).steps
    return Walk(forest.graph, forest.root_of[u], steps)


def reconstruct_signature(oracle: WalkSetOracle) -> Signature:
    forest = build_spanning_forest(oracle.graph)
    negative = []
    for e in forest.non_tree_edges:
        w = fundamental_walk(forest, e)
        s = sigma_of(oracle, w)
        if s is None:
            raise UnknownMembership(
                f"oracle cannot decide the fundamental walk {w} of {e}; "
                f"an explicit walk set needs a bound of at least {len(w)}"
            )
        if s is MINUS:
            negative.append(e)
    return Signature.from_negative(oracle.graph, negative)


def verify_realization(sig: Signature, oracle: WalkSetOracle, lmax: int,
                       cap: int = WALK_CAP) -> CheckReport:
    """Membership agrees with negativity under ``sig`` on all closed walks up to ``lmax``."""
    if sig.graph != oracle.graph:
        raise ValueError("signature and oracle live on different graphs")
    neg = sig.negative
    checked = 0
    unknown = False
    for w in by_length(enumerate_closed_walks(oracle.graph, lmax, cap)):
        m = oracle._member(w)
        checked += 1
        if m is UNKNOWN:
            unknown = True
            continue
        negative = bool(len(w.odd_edges & neg) & 1)
        if negative != (m is IN):
            ident = (
                f"oracle says {m.value}, signature {sig.compact()} makes it "
                f"{'negative' if negative else 'positive'}"
            )
            return _report("realization", {"max_len": lmax}, checked,
                           Witness((("W", w),), ident), unknown)
    return _report("realization", {"max_len": lmax}, checked, None, unknown)


def exhaustive_refute(oracle: WalkSetOracle, lmax: int, cap: int = REFUTE_CAP,
                      walk_cap: int = WALK_CAP) -> dict[Signature, Walk | None]:
    """For each signature, the shortest closed walk where it disagrees with the oracle.

    ``None`` marks an unrefuted signature, a candidate realization at ``lmax``.
    Walks with unknown membership never refute.
    """
    if len(oracle.graph.edges) > cap:
        raise CapExceeded(f"{len(oracle.graph.edges)} edges exceeds the refutation cap {cap}")
    scan = []
    for w in by_length(enumerate_closed_walks(oracle.graph, lmax, walk_cap)):
        m = oracle._member(w)
        if m is not UNKNOWN:
            scan.append((w, w.odd_edges, m is IN))
    out: dict[Signature, Walk | None] = {}
    for tau in enumerate_signatures(oracle.graph, cap):
        neg = tau.negative
        out[tau] = next(
            (w for w, odd, member in scan if bool(len(odd & neg) & 1) != member), None
        )
    return out


class Realizability(enum.Enum):
    REALIZABLE_AT_BOUND = "realizable-at-bound"
    NOT_REALIZABLE = "not-realizable"


@dataclass(frozen=True)
class RealizabilityResult:
    verdict: Realizability
    bound: int
    signature: Signature | None = None
    witness: Walk | None = None
    reconstructed: Signature | None = None
    refutations: dict[Signature, Walk | None] | None = None

    @property
    def realizable(self) -> bool:
        return self.verdict is Realizability.REALIZABLE_AT_BOUND


def decide_realizable(oracle: WalkSetOracle, lmax: int, refute_cap: int = REFUTE_CAP,
                      walk_cap: int = WALK_CAP) -> RealizabilityResult:
    """Reconstruct, verify at ``lmax``, and on failure cross-check every signature.

    The exhaustive cross-check runs only when the graph has at most
    ``refute_cap`` edges.  A failed verification alone already proves
    non-realizability; the cross-check adds a witness per signature.
    """
    tau = reconstruct_signature(oracle)
    report = verify_realization(tau, oracle, lmax, walk_cap)
    if report.verdict is Verdict.INCONCLUSIVE:
        raise UnknownMembership(
            f"some closed walks up to length {lmax} have unknown membership; "
            "raise the explicit walk set's bound or lower the verification length"
        )
    if report.passed:
        return RealizabilityResult(Realizability.REALIZABLE_AT_BOUND, lmax, tau, reconstructed=tau)
    witness = report.witness.walk("W")
    refutations = None
    if len(oracle.graph.edges) <= refute_cap:
        refutations = exhaustive_refute(oracle, lmax, refute_cap, walk_cap)
        survivor = next((s for s, w in refutations.items() if w is None), None)
        if survivor is not None:
            # only reachable when fundamental walks exceed lmax
            return RealizabilityResult(Realizability.REALIZABLE_AT_BOUND, lmax, survivor,
                                       reconstructed=tau, refutations=refutations)
    return RealizabilityResult(Realizability.NOT_REALIZABLE, lmax, None, witness,
                               reconstructed=tau, refutations=refutations)


def unbalanced_vertices(sig: Signature) -> frozenset[str]:
    """Vertices lying on some negative closed walk, i.e. in unbalanced components."""
    forest = build_spanning_forest(sig.graph)
    bad_roots = {
        forest.root_of[sig.graph.ends(e)[0]]
        for e in forest.non_tree_edges
        if len(fundamental_walk(forest, e).odd_edges & sig.negative) & 1
    }
    return frozenset(v for v, r in forest.root_of.items() if r in bad_roots)


def build_section2_oracle(sig: Signature, v0: str) -> Section2Oracle:
    """Negative closed walks of ``sig`` minus those starting at ``v0``.

    ``v0`` must lie on a negative closed walk; otherwise the construction
    degenerates into a realizable set.
    """
    if not sig.graph.has_vertex(v0):
        raise PreconditionError(f"unknown vertex {v0!r}")
    if v0 not in unbalanced_vertices(sig):
        raise PreconditionError(
            f"{v0} lies on no negative closed walk under signature {sig.compact()}"
        )
    return Section2Oracle(sig, v0)

"""Sets of closed walks given by membership oracles, and bounded checkers.

Every checker enumerates exhaustively up to its bound.  A ``pass`` verdict
only speaks for walks within the bound; a ``fail`` verdict carries a witness
that can be re-checked with :func:`recheck`.  Walks are scanned shortest
first, so the reported witness has minimal length in the scan.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import GraphError, UnknownMembership, WalkError
from .graph import MINUS, PLUS, Multigraph, Sign, Signature
from .walks import (
    WALK_CAP,
    Walk,
    by_length,
    concat,
    enumerate_closed_walks,
    enumerate_walks,
    inverse,
    rotation_list,
    rotations,
    walks_from,
)


class Membership(enum.Enum):
    IN = "in"
    OUT = "out"
    UNKNOWN = "unknown"


IN, OUT, UNKNOWN = Membership.IN, Membership.OUT, Membership.UNKNOWN


class WalkSetOracle:
    """Membership predicate for a set of closed walks on a fixed graph."""

    flavor = "abstract"

    def __init__(self, graph: Multigraph):
        self.graph = graph

    def membership(self, walk: Walk) -> Membership:
        if walk.graph is not self.graph and walk.graph != self.graph:
            raise GraphError("walk is not on the oracle's graph")
        if not walk.closed:
            raise WalkError(f"{walk} is not closed")
        return self._member(walk)

    def _member(self, walk: Walk) -> Membership:
        raise NotImplementedError

    def __contains__(self, walk: Walk) -> bool:
        return self.membership(walk) is IN


class SignatureOracle(WalkSetOracle):
    """The negative closed walks of a signed graph."""

    flavor = "signature"

    def __init__(self, signature: Signature):
        super().__init__(signature.graph)
        self.signature = signature
        self._neg = signature.negative

    def _member(self, walk):
        return IN if len(walk.odd_edges & self._neg) & 1 else OUT

    def __repr__(self):
        return f"SignatureOracle({self.signature.compact()})"


class Section2Oracle(WalkSetOracle):
    """Negative closed walks of ``signature`` except those starting at ``v0``.

    Use :func:`signedwalks.realize.build_section2_oracle` to get the
    precondition check on ``v0``.
    """

    flavor = "section2"

    def __init__(self, signature: Signature, v0: str):
        super().__init__(signature.graph)
        if not self.graph.has_vertex(v0):
            raise GraphError(f"unknown vertex {v0!r}")
        self.signature = signature
        self.v0 = v0
        self._neg = signature.negative

    def _member(self, walk):
        if walk.start == self.v0:
            return OUT
        return IN if len(walk.odd_edges & self._neg) & 1 else OUT

    def __repr__(self):
        return f"Section2Oracle({self.signature.compact()}, v0={self.v0})"


class ExplicitOracle(WalkSetOracle):
    """A finite list of members, authoritative for walks up to ``bound``."""

    flavor = "explicit"

    def __init__(self, graph: Multigraph, members: Iterable[Walk], bound: int):
        super().__init__(graph)
        if bound < 0:
            raise ValueError("bound must be non-negative")
        self.bound = bound
        keys = set()
        for w in members:
            if w.graph != graph:
                raise GraphError(f"member {w} is not on the oracle's graph")
            if not w.closed:
                raise WalkError(f"member {w} is not closed")
            if len(w) > bound:
                raise WalkError(f"member {w} is longer than the bound {bound}")
            keys.add(w.key())
        self._keys = frozenset(keys)

    @property
    def members(self) -> list[Walk]:
        return sorted((Walk(self.graph, s, st) for s, st in self._keys), key=Walk.key)

    def _member(self, walk):
        if len(walk) > self.bound:
            return UNKNOWN
        return IN if walk.key() in self._keys else OUT

    def __repr__(self):
        return f"ExplicitOracle({len(self._keys)} members, bound={self.bound})"


def sigma_of(oracle: WalkSetOracle, walk: Walk) -> Sign | None:
    """Indicator sign of the walk set: ``-`` for members, ``+`` otherwise, ``None`` if unknown."""
    m = oracle.membership(walk)
    if m is UNKNOWN:
        return None
    return MINUS if m is IN else PLUS


def _sig(m: Membership) -> Sign | None:
    return None if m is UNKNOWN else (MINUS if m is IN else PLUS)


class Verdict(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Witness:
    walks: tuple[tuple[str, Walk], ...]
    identity: str

    def walk(self, name: str) -> Walk:
        return dict(self.walks)[name]


@dataclass(frozen=True)
class CheckReport:
    name: str
    verdict: Verdict
    checked: int
    bounds: dict[str, int]
    witness: Witness | None = None
    parts: tuple[CheckReport, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    @property
    def failed(self) -> bool:
        return self.verdict is Verdict.FAIL

    @property
    def bound(self) -> int:
        return max(self.bounds.values(), default=0)

    def summary(self) -> str:
        bounds = ", ".join(f"{k}={v}" for k, v in self.bounds.items())
        if self.verdict is Verdict.PASS:
            head = f"pass at bound {bounds}"
        elif self.verdict is Verdict.FAIL:
            head = f"FAIL ({bounds})"
        else:
            head = f"inconclusive ({bounds}): unknown memberships within the bound"
        return f"{self.name}: {head}; {self.checked} instances checked"


def _report(name, bounds, checked, witness, unknown, parts=()):
    if witness is not None:
        verdict = Verdict.FAIL
    elif unknown:
        verdict = Verdict.INCONCLUSIVE
    else:
        verdict = Verdict.PASS
    return CheckReport(name, verdict, checked, bounds, witness, tuple(parts))


def check_rotation_closed(oracle: WalkSetOracle, lmax: int, cap: int = WALK_CAP) -> CheckReport:
    """Membership is constant on the rotations of every closed walk up to ``lmax``."""
    checked = 0
    unknown = False
    for w in by_length(enumerate_closed_walks(oracle.graph, lmax, cap)):
        m = oracle._member(w)
        if m is UNKNOWN:
            unknown = True
            continue
        for r in rotation_list(w)[1:]:
            mr = oracle._member(r)
            checked += 1
            if mr is UNKNOWN:
                unknown = True
            elif mr is not m:
                ident = f"W = {w} is {m.value}, its rotation R = {r} is {mr.value}"
                return _report("rotation-closure", {"max_len": lmax}, checked,
                               Witness((("W", w), ("R", r)), ident), unknown)
    return _report("rotation-closure", {"max_len": lmax}, checked, None, unknown)


@lru_cache(maxsize=256)
def _xy_blocks(graph: Multigraph, factor_len: int, cap: int):
    """Per ordered pair (x, y): the xy-walks and all products ``Wi Wj^-1`` row-major."""
    blocks = []
    for x in graph.vertices:
        ws = by_length(walks_from(graph, x, factor_len, cap))
        for y in graph.vertices:
            group = [w for w in ws if w.end == y]
            if not group:
                continue
            invs = [inverse(w) for w in group]
            prods = [Walk(graph, x, a.steps + b.steps) for a in group for b in invs]
            blocks.append((x, y, tuple(group), tuple(prods)))
    return tuple(blocks)


_CODE = {IN: -1, OUT: 1, UNKNOWN: 0}


def _first_bad_triple(m: np.ndarray) -> tuple[int, int, int] | None:
    """Least (i, j, k) with ``m[i,j] * m[i,k] * m[j,k] == -1``."""
    n = m.shape[0]
    step = max(1, 2_000_000 // max(n * n, 1))
    for lo in range(0, n, step):
        rows = m[lo:lo + step]
        prod = rows[:, :, None] * rows[:, None, :] * m[None, :, :]
        bad = prod == -1
        if bad.any():
            i, j, k = np.unravel_index(int(np.argmax(bad)), bad.shape)
            return lo + int(i), int(j), int(k)
    return None


def check_exclusive_3walk(oracle: WalkSetOracle, factor_len: int, cap: int = WALK_CAP) -> CheckReport:
    """Even parity of members among W1W2^-1, W1W3^-1, W2W3^-1.

    Ranges over ordered vertex pairs (x, y) and ordered triples of xy-walks of
    length at most ``factor_len``, repetition and trivial walks included.
    """
    bounds = {"factor_len": factor_len}
    checked = 0
    unknown = False
    member = oracle._member
    for x, y, group, prods in _xy_blocks(oracle.graph, factor_len, cap):
        n = len(group)
        m = np.fromiter((_CODE[member(p)] for p in prods), dtype=np.int8, count=n * n)
        m = m.reshape(n, n)
        checked += n ** 3
        hit = _first_bad_triple(m)
        if hit is not None:
            i, j, k = hit
            w1, w2, w3 = group[i], group[j], group[k]
            signs = [Sign.MINUS if m[a, b] == -1 else Sign.PLUS for a, b in ((i, j), (i, k), (j, k))]
            ident = (
                "sigma(W1 W2^-1) * sigma(W1 W3^-1) * sigma(W2 W3^-1) = "
                f"({signs[0]})({signs[1]})({signs[2]}) = -"
            )
            return _report("exclusive-3-walk", bounds, checked,
                           Witness((("W1", w1), ("W2", w2), ("W3", w3)), ident), unknown)
        if not unknown and (m == 0).any():
            unknown = True
    return _report("exclusive-3-walk", bounds, checked, None, unknown)


def check_lemma_prop7(oracle: WalkSetOracle, lmax: int, cap: int = WALK_CAP) -> CheckReport:
    """The four consequences of the exclusive 3-walk property.

    (i) no trivial walk is a member; (ii) ``W W^-1`` is never a member;
    (iii) ``sigma(W) == sigma(W^-1)``; (iv) ``sigma(W W') == sigma(W) sigma(W')``
    for closed ``W, W'`` at a common vertex.  Items (ii) and (iv) use factors
    of length at most ``lmax // 2``; item (iii) uses closed walks up to ``lmax``.
    """
    g = oracle.graph
    member = oracle._member
    half = lmax // 2
    parts = []

    checked = unknown = 0
    witness = None
    for v in g.vertices:
        e = Walk(g, v)
        m = member(e)
        checked += 1
        unknown |= m is UNKNOWN
        if m is IN:
            witness = Witness((("W", e),), f"trivial walk {e} is in the set")
            break
    parts.append(_report("prop7(i)", {"max_len": 0}, checked, witness, unknown))

    checked = unknown = 0
    witness = None
    for v in g.vertices:
        for w in by_length(walks_from(g, v, half, cap)):
            ww = concat(w, inverse(w))
            m = member(ww)
            checked += 1
            unknown |= m is UNKNOWN
            if m is IN:
                witness = Witness((("W", w),), f"W W^-1 = {ww} is in the set")
                break
        if witness:
            break
    parts.append(_report("prop7(ii)", {"max_len": 2 * half}, checked, witness, unknown))

    closed = by_length(enumerate_closed_walks(g, lmax, cap))
    checked = unknown = 0
    witness = None
    for w in closed:
        a, b = _sig(member(w)), _sig(member(inverse(w)))
        checked += 1
        if a is None or b is None:
            unknown = 1
        elif a is not b:
            witness = Witness((("W", w),), f"sigma(W) = {a} but sigma(W^-1) = {b}")
            break
    parts.append(_report("prop7(iii)", {"max_len": lmax}, checked, witness, unknown))

    checked = unknown = 0
    witness = None
    short: dict[str, list[Walk]] = {v: [] for v in g.vertices}
    for w in closed:
        if len(w) <= half:
            short[w.start].append(w)
    for w in (w for v in g.vertices for w in short[v]):
        for w2 in short[w.start]:
            a, b = _sig(member(w)), _sig(member(w2))
            c = _sig(member(Walk(g, w.start, w.steps + w2.steps)))
            checked += 1
            if a is None or b is None or c is None:
                unknown = 1
            elif c is not a * b:
                witness = Witness(
                    (("W", w), ("W'", w2)),
                    f"sigma(W W') = {c} but sigma(W) * sigma(W') = ({a})({b}) = {a * b}",
                )
                break
        if witness:
            break
    parts.append(_report("prop7(iv)", {"max_len": 2 * half}, checked, witness, unknown))

    failing = next((p for p in parts if p.failed), None)
    return _report(
        "prop7",
        {"max_len": lmax},
        sum(p.checked for p in parts),
        failing.witness if failing else None,
        any(p.verdict is Verdict.INCONCLUSIVE for p in parts),
        parts,
    )


def check_lemma_prop8(oracle: WalkSetOracle, walk_bound: int, prefix_bound: int,
                      cap: int = WALK_CAP) -> CheckReport:
    """Conjugation invariance: ``sigma(P W P^-1) == sigma(W)``.

    ``W`` ranges over closed walks up to ``walk_bound`` and ``P`` over walks
    ending at the start of ``W`` up to ``prefix_bound``.
    """
    g = oracle.graph
    member = oracle._member
    bounds = {"walk_bound": walk_bound, "prefix_bound": prefix_bound}
    into = {
        y: [p for x in g.vertices for p in by_length(enumerate_walks(g, x, y, prefix_bound, cap))]
        for y in g.vertices
    }
    checked = 0
    unknown = False
    for w in by_length(enumerate_closed_walks(g, walk_bound, cap)):
        s = _sig(member(w))
        if s is None:
            unknown = True
            continue
        for p in into[w.start]:
            conj = Walk(g, p.start, p.steps + w.steps + inverse(p).steps)
            t = _sig(member(conj))
            checked += 1
            if t is None:
                unknown = True
            elif t is not s:
                ident = f"sigma(P W P^-1) = {t} for P W P^-1 = {conj}, but sigma(W) = {s}"
                return _report("prop8", bounds, checked,
                               Witness((("P", p), ("W", w)), ident), unknown)
    return _report("prop8", bounds, checked, None, unknown)


def list_members(oracle: WalkSetOracle, lmax: int, cap: int = WALK_CAP) -> list[Walk]:
    """Members of length at most ``lmax`` in closed-walk enumeration order."""
    out = []
    for w in enumerate_closed_walks(oracle.graph, lmax, cap):
        m = oracle._member(w)
        if m is UNKNOWN:
            raise UnknownMembership(f"membership of {w} is unknown (beyond the explicit bound)")
        if m is IN:
            out.append(w)
    return out


def recheck(oracle: WalkSetOracle, report: CheckReport) -> bool:
    """Independently confirm that a failing report's witness violates its property."""
    if not report.failed:
        raise ValueError("only failing reports carry witnesses")
    name = report.name
    if name == "prop7":
        failing = next(p for p in report.parts if p.failed)
        return recheck(oracle, failing)
    w = report.witness.walk
    s = lambda walk: sigma_of(oracle, walk)  # noqa: E731
    if name == "rotation-closure":
        a, b = w("W"), w("R")
        return b in rotations(a) and oracle.membership(a) is not oracle.membership(b)
    if name == "exclusive-3-walk":
        w1, w2, w3 = w("W1"), w("W2"), w("W3")
        signs = [s(concat(a, inverse(b))) for a, b in ((w1, w2), (w1, w3), (w2, w3))]
        return None not in signs and signs[0] * signs[1] * signs[2] is MINUS
    if name == "prop7(i)":
        return w("W").trivial and oracle.membership(w("W")) is IN
    if name == "prop7(ii)":
        return oracle.membership(concat(w("W"), inverse(w("W")))) is IN
    if name == "prop7(iii)":
        a, b = s(w("W")), s(inverse(w("W")))
        return None not in (a, b) and a is not b
    if name == "prop7(iv)":
        a, b, c = s(w("W")), s(w("W'")), s(concat(w("W"), w("W'")))
        return None not in (a, b, c) and c is not a * b
    if name == "prop8":
        p, walk = w("P"), w("W")
        a, b = s(concat(concat(p, walk), inverse(p))), s(walk)
        return None not in (a, b) and a is not b
    raise ValueError(f"no recheck rule for {name!r}")

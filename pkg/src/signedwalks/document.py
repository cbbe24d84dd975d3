"""JSON scenario documents: a graph plus optional signature, walks and walk set.

Example::

    {"version": 1,
     "graph": {"vertices": ["v0", "v1"], "edges": [{"id": "e", "ends": ["v0", "v1"]}]},
     "signature": {"e": "-"},
     "walks": [{"start": "v0", "edges": ["e", "e"]}],
     "walkset": {"flavor": "explicit", "members": [...], "bound": 4},
     "v0": "v0"}
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import DocumentError, GraphError, WalkError
from .graph import Multigraph, Signature, build_graph
from .walks import Walk, make_walk

FORMAT_VERSION = 1
FLAVORS = ("signature", "explicit", "section2")

_TOP = {"version", "graph", "signature", "walks", "walkset", "v0"}
_GRAPH = {"vertices", "edges"}
_EDGE = {"id", "ends"}
_WALK = {"start", "edges"}
_WALKSET = {"flavor", "v0", "members", "bound"}


@dataclass(frozen=True)
class WalkSetDecl:
    flavor: str
    v0: str | None = None
    members: tuple[Walk, ...] = ()
    bound: int | None = None


@dataclass(frozen=True)
class Document:
    graph: Multigraph
    signature: Signature | None = None
    walks: tuple[Walk, ...] = ()
    walkset: WalkSetDecl | None = None
    v0: str | None = None
    version: int = FORMAT_VERSION


def _expect(value, kind, where):
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        name = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise DocumentError(f"expected {name}, got {type(value).__name__}", where)
    return value


def _fields(obj, allowed, required, where):
    _expect(obj, dict, where)
    for key in obj:
        if key not in allowed:
            raise DocumentError(f"unknown field {key!r}", where)
    for key in required:
        if key not in obj:
            raise DocumentError(f"missing field {key!r}", where)


def _vertex(graph, v, where):
    _expect(v, str, where)
    if not graph.has_vertex(v):
        raise DocumentError(f"unknown vertex {v!r}", where)
    return v


def _parse_walk(graph, obj, where):
    _fields(obj, _WALK, _WALK, where)
    start = _vertex(graph, obj["start"], f"{where}.start")
    edges = _expect(obj["edges"], list, f"{where}.edges")
    for i, e in enumerate(edges):
        _expect(e, str, f"{where}.edges[{i}]")
    try:
        return make_walk(graph, start, edges)
    except WalkError as exc:
        pos = f"{where}.edges[{exc.position - 1}]" if exc.position else where
        raise DocumentError(str(exc), pos) from None


def _parse_graph(obj):
    _fields(obj, _GRAPH, _GRAPH, "graph")
    vertices = _expect(obj["vertices"], list, "graph.vertices")
    for i, v in enumerate(vertices):
        _expect(v, str, f"graph.vertices[{i}]")
    edges = []
    for i, e in enumerate(_expect(obj["edges"], list, "graph.edges")):
        where = f"graph.edges[{i}]"
        _fields(e, _EDGE, _EDGE, where)
        ends = _expect(e["ends"], list, f"{where}.ends")
        if len(ends) != 2:
            raise DocumentError("an edge needs exactly two endpoints", f"{where}.ends")
        for j, v in enumerate(ends):
            _expect(v, str, f"{where}.ends[{j}]")
        edges.append((_expect(e["id"], str, f"{where}.id"), tuple(ends)))
    try:
        return build_graph(vertices, edges)
    except GraphError as exc:
        raise DocumentError(str(exc), "graph") from None


def parse_document(text: str) -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    _fields(raw, _TOP, ("graph",), "document")
    version = _expect(raw.get("version", FORMAT_VERSION), int, "version")
    if version != FORMAT_VERSION:
        raise DocumentError(f"unsupported format version {version}", "version")
    graph = _parse_graph(raw["graph"])

    signature = None
    if "signature" in raw:
        signs = _expect(raw["signature"], dict, "signature")
        for e, s in signs.items():
            if e not in graph.edges:
                raise DocumentError(f"unknown edge {e!r}", f"signature.{e}")
            if s not in ("+", "-"):
                raise DocumentError(f"sign must be '+' or '-', got {s!r}", f"signature.{e}")
        try:
            signature = Signature(graph, signs)
        except GraphError as exc:
            raise DocumentError(str(exc), "signature") from None

    walks = tuple(
        _parse_walk(graph, w, f"walks[{i}]")
        for i, w in enumerate(_expect(raw.get("walks", []), list, "walks"))
    )

    walkset = None
    if "walkset" in raw:
        ws = raw["walkset"]
        _fields(ws, _WALKSET, ("flavor",), "walkset")
        flavor = ws["flavor"]
        if flavor not in FLAVORS:
            raise DocumentError(f"flavor must be one of {', '.join(FLAVORS)}", "walkset.flavor")
        v0 = _vertex(graph, ws["v0"], "walkset.v0") if "v0" in ws else None
        members = tuple(
            _parse_walk(graph, w, f"walkset.members[{i}]")
            for i, w in enumerate(_expect(ws.get("members", []), list, "walkset.members"))
        )
        bound = _expect(ws["bound"], int, "walkset.bound") if "bound" in ws else None
        if flavor == "explicit" and bound is None:
            raise DocumentError("an explicit walk set needs a 'bound'", "walkset")
        walkset = WalkSetDecl(flavor, v0, members, bound)

    v0 = _vertex(graph, raw["v0"], "v0") if "v0" in raw else None
    return Document(graph, signature, walks, walkset, v0, version)


def walk_to_json(w: Walk) -> dict:
    return {"start": w.start, "edges": list(w.edge_ids)}


def document_to_json(doc: Document) -> dict:
    out: dict = {
        "version": doc.version,
        "graph": {
            "vertices": list(doc.graph.vertices),
            "edges": [{"id": e, "ends": list(ends)} for e, ends in doc.graph.edges.items()],
        },
    }
    if doc.signature is not None:
        out["signature"] = {e: s.value for e, s in doc.signature.signs.items()}
    if doc.walks:
        out["walks"] = [walk_to_json(w) for w in doc.walks]
    if doc.walkset is not None:
        ws: dict = {"flavor": doc.walkset.flavor}
        if doc.walkset.v0 is not None:
            ws["v0"] = doc.walkset.v0
        if doc.walkset.members:
            ws["members"] = [walk_to_json(w) for w in doc.walkset.members]
        if doc.walkset.bound is not None:
            ws["bound"] = doc.walkset.bound
        out["walkset"] = ws
    if doc.v0 is not None:
        out["v0"] = doc.v0
    return out


def serialize_document(doc: Document) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(document_to_json(doc), sort_keys=True, indent=2) + "\n"

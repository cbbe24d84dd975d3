"""Command line interface.

Exit codes: 0 when every check passes (or the walk set is realizable, or the
counterexample is reproduced), 1 when a property fails or the walk set is not
realizable, 2 on usage, input, precondition or cap errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import CorpusParams, example_triangle, generate_corpus
from .document import Document, parse_document, walk_to_json
from .errors import SignedWalkError
from .realize import build_section2_oracle, decide_realizable, exhaustive_refute
from .suites import SUITES, counterexample_bundle, run_suite
from .walks import Walk
from .walksets import (
    CheckReport,
    ExplicitOracle,
    SignatureOracle,
    Verdict,
    WalkSetOracle,
    check_exclusive_3walk,
    check_lemma_prop7,
    check_lemma_prop8,
    check_rotation_closed,
    list_members,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _walk_json(w: Walk) -> dict:
    return {**walk_to_json(w), "text": str(w)}


def _report_json(r: CheckReport) -> dict:
    out = {"name": r.name, "verdict": r.verdict.value, "checked": r.checked, "bounds": r.bounds}
    if r.witness is not None:
        out["witness"] = {
            "walks": {name: _walk_json(w) for name, w in r.witness.walks},
            "identity": r.witness.identity,
        }
    if r.parts:
        out["parts"] = [_report_json(p) for p in r.parts]
    return out


def _report_lines(r: CheckReport, indent: str = "") -> list[str]:
    lines = [indent + r.summary()]
    if r.witness is not None:
        for name, w in r.witness.walks:
            lines.append(f"{indent}  {name} = {w}")
        lines.append(f"{indent}  {r.witness.identity}")
    for p in r.parts:
        lines += _report_lines(p, indent + "  ")
    return lines


class Output:
    def __init__(self, command: str):
        self.lines = [f"command: {command}"]
        self.data: dict = {"command": command}

    def header(self, key: str, value, text: str | None = None):
        self.data[key] = value
        self.lines.append(f"{key}: {text if text is not None else value}")

    def render(self, fmt: str, code: int) -> str:
        if fmt == "json":
            return json.dumps({**self.data, "exit": code}, sort_keys=True, indent=2) + "\n"
        return "\n".join(self.lines) + "\n"


def _load(path: str | None) -> Document:
    if path is None:
        raise UsageError("--graph FILE is required")
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text)


def resolve_oracle(doc: Document, flavor: str | None, v0: str | None) -> WalkSetOracle:
    """Oracle named by ``--walkset`` (default: the document's walk set, else ``signature``)."""
    decl = doc.walkset
    flavor = flavor or (decl.flavor if decl else "signature")
    if flavor == "explicit":
        if decl is None or decl.flavor != "explicit":
            raise UsageError("--walkset explicit needs an explicit 'walkset' in the document")
        return ExplicitOracle(doc.graph, decl.members, decl.bound)
    if doc.signature is None:
        raise UsageError(f"--walkset {flavor} needs a 'signature' in the document")
    if flavor == "signature":
        return SignatureOracle(doc.signature)
    v0 = v0 or (decl.v0 if decl else None) or doc.v0
    if v0 is None:
        raise UsageError("--walkset section2 needs --v0 or a 'v0' in the document")
    return build_section2_oracle(doc.signature, v0)


def _describe(oracle: WalkSetOracle) -> str:
    if oracle.flavor == "explicit":
        return f"explicit ({len(oracle.members)} members, bound {oracle.bound})"
    sig = oracle.signature.compact() or "()"
    if oracle.flavor == "section2":
        return f"section2 (signature {sig}, negative closed walks not starting at {oracle.v0})"
    return f"signature (negative closed walks of {sig})"


def _graph_header(out: Output, doc: Document, path: str):
    g = doc.graph
    out.header("graph", {"file": path, "vertices": len(g.vertices), "edges": len(g.edges)},
               f"{path} ({len(g.vertices)} vertices, {len(g.edges)} edges)")


def cmd_check(args, out: Output) -> int:
    doc = _load(args.graph)
    oracle = resolve_oracle(doc, args.walkset, args.v0)
    _graph_header(out, doc, args.graph)
    out.header("walkset", oracle.flavor, _describe(oracle))
    walk_bound = max(args.max_len - args.prefix_len, 0)
    out.header("bounds", {"max_len": args.max_len, "factor_len": args.factor_len,
                          "prefix_len": args.prefix_len, "walk_bound": walk_bound},
               f"max_len={args.max_len} factor_len={args.factor_len} "
               f"prefix_len={args.prefix_len} walk_bound={walk_bound}")
    reports = [
        check_rotation_closed(oracle, args.max_len),
        check_exclusive_3walk(oracle, args.factor_len),
        check_lemma_prop7(oracle, args.max_len),
        check_lemma_prop8(oracle, walk_bound, args.prefix_len),
    ]
    out.data["checks"] = [_report_json(r) for r in reports]
    for r in reports:
        out.lines += _report_lines(r)
    if any(r.failed for r in reports):
        return 1
    if any(r.verdict is Verdict.INCONCLUSIVE for r in reports):
        out.lines.append("inconclusive: raise the explicit walk set's bound")
        return 2
    return 0


def cmd_members(args, out: Output) -> int:
    doc = _load(args.graph)
    oracle = resolve_oracle(doc, args.walkset, args.v0)
    _graph_header(out, doc, args.graph)
    out.header("walkset", oracle.flavor, _describe(oracle))
    out.header("bounds", {"max_len": args.max_len}, f"max_len={args.max_len}")
    members = list_members(oracle, args.max_len)
    out.data["members"] = [_walk_json(w) for w in members]
    out.lines.append(f"members: {len(members)}")
    out.lines += [f"  {w}" for w in members]
    return 0


def cmd_reconstruct(args, out: Output) -> int:
    doc = _load(args.graph)
    oracle = resolve_oracle(doc, args.walkset, args.v0)
    _graph_header(out, doc, args.graph)
    out.header("walkset", oracle.flavor, _describe(oracle))
    out.header("bounds", {"verify_len": args.verify_len}, f"verify_len={args.verify_len}")
    result = decide_realizable(oracle, args.verify_len)
    out.data["verdict"] = result.verdict.value
    out.data["reconstructed"] = {e: s.value for e, s in result.reconstructed.signs.items()}
    out.lines.append(f"verdict: {result.verdict.value} (bound {result.bound})")
    out.lines.append("reconstructed: " + _signs_text(result.reconstructed))
    if result.realizable:
        out.data["signature"] = {e: s.value for e, s in result.signature.signs.items()}
        out.lines.append("signature: " + _signs_text(result.signature))
        return 0
    out.data["witness"] = _walk_json(result.witness)
    out.lines.append(f"witness: {result.witness} disagrees with the reconstructed signature")
    if result.refutations is not None:
        _refutation_output(out, result.refutations)
    return 1


def _signs_text(sig) -> str:
    return " ".join(f"{e}:{s}" for e, s in sig.signs.items()) or "(no edges)"


def _refutation_output(out: Output, refutations) -> int:
    refuted = sum(w is not None for w in refutations.values())
    out.data["refutations"] = [
        {"signature": sig.compact(), "witness": _walk_json(w) if w is not None else None}
        for sig, w in refutations.items()
    ]
    out.lines.append(f"refuted: {refuted}/{len(refutations)} signatures")
    for sig, w in refutations.items():
        out.lines.append(f"  {sig.compact() or '()'}: {w if w is not None else 'UNREFUTED'}")
    return refuted


def cmd_refute(args, out: Output) -> int:
    doc = _load(args.graph)
    oracle = resolve_oracle(doc, args.walkset, args.v0)
    _graph_header(out, doc, args.graph)
    out.header("walkset", oracle.flavor, _describe(oracle))
    out.header("bounds", {"max_len": args.max_len}, f"max_len={args.max_len}")
    refutations = exhaustive_refute(oracle, args.max_len)
    refuted = _refutation_output(out, refutations)
    return 1 if refuted == len(refutations) else 0


def cmd_counterexample(args, out: Output) -> int:
    if args.graph is None:
        _, sig = example_triangle()
        v0 = args.v0 or "v0"
        out.header("graph", {"file": None, "vertices": 3, "edges": 3}, "built-in triangle (3 vertices, 3 edges)")
    else:
        doc = _load(args.graph)
        if doc.signature is None:
            raise UsageError("counterexample needs a 'signature' in the document")
        sig = doc.signature
        v0 = args.v0 or (doc.walkset.v0 if doc.walkset else None) or doc.v0
        if v0 is None:
            raise UsageError("counterexample needs --v0 or a 'v0' in the document")
        _graph_header(out, doc, args.graph)
    out.header("signature", {e: s.value for e, s in sig.signs.items()}, _signs_text(sig))
    out.header("v0", v0)
    out.header("bounds", {"max_len": args.max_len, "factor_len": args.factor_len},
               f"max_len={args.max_len} factor_len={args.factor_len}")
    bundle = counterexample_bundle(sig, v0, args.max_len, args.factor_len)
    labelled = [
        ("(a) negative closed walks", bundle.negative_set_3walk),
        ("(b) negative closed walks not starting at v0", bundle.three_walk),
        ("(c) negative closed walks not starting at v0", bundle.rotation),
    ]
    out.data["checks"] = [_report_json(r) for _, r in labelled]
    for label, r in labelled:
        out.lines.append(label)
        out.lines += _report_lines(r, "  ")
    out.lines.append("(d) no signature realizes the walk set not starting at v0")
    _refutation_output(out, bundle.refutations)
    out.data["reproduced"] = bundle.holds
    out.lines.append(f"reproduced: {'yes' if bundle.holds else 'NO'}")
    return 0 if bundle.holds else 1


def cmd_corpus(args, out: Output) -> int:
    params = CorpusParams(args.max_vertices, args.max_edges, not args.no_loops, not args.no_parallel)
    corpus = generate_corpus(params)
    out.header("corpus", {"max_vertices": params.max_vertices, "max_edges": params.max_edges,
                          "loops": params.loops, "parallel": params.parallel, "graphs": len(corpus)},
               f"{len(corpus)} graphs on {params.max_vertices} vertices, at most {params.max_edges} edges, "
               f"loops {'on' if params.loops else 'off'}, parallel edges {'on' if params.parallel else 'off'}")
    result = run_suite(args.suite, corpus, args.max_len, args.factor_len, args.prefix_len)
    out.header("suite", args.suite)
    out.header("bounds", result.bounds, " ".join(f"{k}={v}" for k, v in result.bounds.items()))
    out.data["instances"] = result.instances
    out.data["failures"] = result.failures
    out.lines.append(f"instances: {result.instances}")
    out.lines.append(f"failures: {len(result.failures)}")
    out.lines += [f"  {f}" for f in result.failures]
    return 0 if result.passed else 1


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seedless", action="store_true", help="reserved; always rejected")

    source = _Parser(add_help=False)
    source.add_argument("--graph", metavar="FILE")
    source.add_argument("--walkset", choices=("signature", "explicit", "section2"))
    source.add_argument("--v0", metavar="ID")

    def nonneg(text):
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if value < 0:
            raise argparse.ArgumentTypeError("must be non-negative")
        return value

    parser = _Parser(prog="signedwalks", description="Closed-walk sets of signed multigraphs.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("check", parents=[common, source], help="rotation, 3-walk and lemma checks")
    p.add_argument("--max-len", type=nonneg, default=6)
    p.add_argument("--factor-len", type=nonneg, default=3)
    p.add_argument("--prefix-len", type=nonneg, default=2)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("members", parents=[common, source], help="list member walks")
    p.add_argument("--max-len", type=nonneg, default=6)
    p.set_defaults(func=cmd_members)

    p = sub.add_parser("reconstruct", parents=[common, source], help="reconstruct and verify a signature")
    p.add_argument("--verify-len", type=nonneg, default=6)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("refute", parents=[common, source], help="test every signature against the walk set")
    p.add_argument("--max-len", type=nonneg, default=6)
    p.set_defaults(func=cmd_refute)

    p = sub.add_parser("counterexample", parents=[common, source],
                       help="walk set satisfying the 3-walk property but not rotation closure")
    p.add_argument("--max-len", type=nonneg, default=6)
    p.add_argument("--factor-len", type=nonneg, default=3)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("corpus", parents=[common], help="run a property suite over a graph corpus")
    p.add_argument("--max-vertices", type=nonneg, default=3)
    p.add_argument("--max-edges", type=nonneg, default=4)
    p.add_argument("--no-loops", action="store_true")
    p.add_argument("--no-parallel", action="store_true")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--max-len", type=nonneg, default=6)
    p.add_argument("--factor-len", type=nonneg, default=3)
    p.add_argument("--prefix-len", type=nonneg, default=2)
    p.set_defaults(func=cmd_corpus)
    return parser


def run_command(argv: list[str]) -> tuple[int, str]:
    """Run one command; returns the exit code and the report text."""
    fmt = "text"
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required")
        fmt = args.format
        if args.seedless:
            raise UsageError("--seedless is reserved: no command uses randomness")
        out = Output(args.command)
        code = args.func(args, out)
        return code, out.render(fmt, code)
    except (UsageError, SignedWalkError, ValueError) as exc:
        if fmt == "json":
            return 2, json.dumps({"error": str(exc), "exit": 2}, sort_keys=True, indent=2) + "\n"
        return 2, f"error: {exc}\n"


def main(argv: list[str] | None = None) -> int:
    code, text = run_command(sys.argv[1:] if argv is None else argv)
    (sys.stderr if code == 2 else sys.stdout).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Named property suites run over a corpus of graphs and all their signatures."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from .corpus import Corpus
from .graph import Signature, apply_switching, enumerate_signatures, switching_equivalent
from .realize import (
    build_section2_oracle,
    decide_realizable,
    exhaustive_refute,
    unbalanced_vertices,
    verify_realization,
)
from .walks import Walk
from .walksets import (
    CheckReport,
    SignatureOracle,
    check_exclusive_3walk,
    check_lemma_prop7,
    check_lemma_prop8,
    check_rotation_closed,
)

SUITES = ("theorem-nc", "prop7", "prop8", "switching", "counterexample-family")


@dataclass
class SuiteResult:
    name: str
    bounds: dict[str, int]
    instances: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class CounterexampleBundle:
    """The walk set ``W_sigma`` minus walks at ``v0`` and the checks that expose it."""

    signature: Signature
    v0: str
    negative_set_3walk: CheckReport
    three_walk: CheckReport
    rotation: CheckReport
    refutations: dict[Signature, Walk | None]

    @property
    def all_refuted(self) -> bool:
        return all(w is not None for w in self.refutations.values())

    @property
    def holds(self) -> bool:
        return (
            self.negative_set_3walk.passed
            and self.three_walk.passed
            and self.rotation.failed
            and self.all_refuted
        )


def counterexample_bundle(sig: Signature, v0: str, max_len: int = 6,
                          factor_len: int = 3) -> CounterexampleBundle:
    oracle = build_section2_oracle(sig, v0)
    return CounterexampleBundle(
        sig,
        v0,
        check_exclusive_3walk(SignatureOracle(sig), factor_len),
        check_exclusive_3walk(oracle, factor_len),
        check_rotation_closed(oracle, max_len),
        exhaustive_refute(oracle, max_len),
    )


def signed_instances(corpus: Corpus) -> Iterator[Signature]:
    for graph in corpus:
        yield from enumerate_signatures(graph)


def _label(sig: Signature, v0: str | None = None) -> str:
    g = sig.graph
    edges = " ".join(f"{e}={u}{v}" for e, (u, v) in g.edges.items())
    tail = f" v0={v0}" if v0 else ""
    return f"[{len(g.vertices)}v: {edges or 'no edges'}] sigma={sig.compact() or '()'}{tail}"


def _fail(result: SuiteResult, what: str, report: CheckReport | None = None) -> None:
    detail = f": {report.summary()}" if report else ""
    if report is not None and report.witness is not None:
        detail += f" -- {report.witness.identity}"
    result.failures.append(what + detail)


def _theorem_nc(corpus, res, max_len, factor_len, prefix_len):
    for sig in signed_instances(corpus):
        oracle = SignatureOracle(sig)
        res.instances += 1
        for report in (check_rotation_closed(oracle, max_len), check_exclusive_3walk(oracle, factor_len)):
            if not report.passed:
                _fail(res, _label(sig), report)


def _oracles(corpus):
    for sig in signed_instances(corpus):
        yield sig, None, SignatureOracle(sig)
        for v0 in sorted(unbalanced_vertices(sig)):
            yield sig, v0, build_section2_oracle(sig, v0)


def _prop7(corpus, res, max_len, factor_len, prefix_len):
    for sig, v0, oracle in _oracles(corpus):
        if not check_exclusive_3walk(oracle, factor_len).passed:
            continue
        res.instances += 1
        report = check_lemma_prop7(oracle, max_len)
        if not report.passed:
            _fail(res, _label(sig, v0), report)


def _prop8(corpus, res, max_len, factor_len, prefix_len):
    for sig, v0, oracle in _oracles(corpus):
        if not (check_rotation_closed(oracle, max_len).passed
                and check_exclusive_3walk(oracle, factor_len).passed):
            continue
        res.instances += 1
        report = check_lemma_prop8(oracle, max_len - prefix_len, prefix_len)
        if not report.passed:
            _fail(res, _label(sig, v0), report)


def _switching(corpus, res, max_len, factor_len, prefix_len):
    for sig in signed_instances(corpus):
        oracle = SignatureOracle(sig)
        res.instances += 1
        result = decide_realizable(oracle, max_len)
        if not result.realizable:
            _fail(res, f"{_label(sig)}: not realizable, witness {result.witness}")
            continue
        report = verify_realization(result.signature, oracle, max_len)
        if not report.passed:
            _fail(res, _label(sig), report)
        if not switching_equivalent(result.signature, sig)[0]:
            _fail(res, f"{_label(sig)}: reconstruction {result.signature.compact()} not switching-equivalent")
        g = sig.graph
        for mask in range(1 << len(g.vertices)):
            subset = [v for i, v in enumerate(g.vertices) if mask >> i & 1]
            report = verify_realization(apply_switching(sig, subset), oracle, max_len)
            if not report.passed:
                _fail(res, f"{_label(sig)} switched at {subset}", report)


def _counterexample_family(corpus, res, max_len, factor_len, prefix_len):
    for sig in signed_instances(corpus):
        for v0 in sorted(unbalanced_vertices(sig)):
            res.instances += 1
            bundle = counterexample_bundle(sig, v0, max_len, factor_len)
            if not bundle.holds:
                unrefuted = [s.compact() for s, w in bundle.refutations.items() if w is None]
                _fail(res, (
                    f"{_label(sig, v0)}: 3-walk {bundle.three_walk.verdict.value}, "
                    f"rotation {bundle.rotation.verdict.value}, unrefuted {unrefuted}"
                ))


_RUNNERS: dict[str, Callable] = {
    "theorem-nc": _theorem_nc,
    "prop7": _prop7,
    "prop8": _prop8,
    "switching": _switching,
    "counterexample-family": _counterexample_family,
}


def run_suite(name: str, corpus: Corpus, max_len: int = 6, factor_len: int = 3,
              prefix_len: int = 2) -> SuiteResult:
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    bounds = {"max_len": max_len, "factor_len": factor_len}
    if name == "prop8":
        bounds = {"walk_bound": max_len - prefix_len, "prefix_bound": prefix_len,
                  "max_len": max_len, "factor_len": factor_len}
    res = SuiteResult(name, bounds)
    _RUNNERS[name](corpus, res, max_len, factor_len, prefix_len)
    return res

"""End-to-end acceptance runs (A1-A8), shared by ``lamsep selfcheck`` and the test suite."""

from __future__ import annotations

import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .builder import build_deciduous_td
from .decomposition import TreeDecomposition, tau, tau_star, validate_td
from .errors import InternalInvariant
from .graph import CutsetVerdict, Graph, build_graph, components_within, is_connected, is_minimal_cutset
from .oracle import (
    Verdict,
    check_all,
    connected_catalog,
    deciduize,
    elimination_decomposition,
    enum_mseps_bruteforce,
    gen_graph,
    gen_laminar_family,
    is_minimal_cutset_reference,
    meets_minimal_cutset_hypothesis,
    noncrossing_2sided_reference,
)
from .separation import ManySidedSeparation, SeparationFamily, crossing_pair, is_laminar, noncrossing, project_family


@dataclass
class CriterionResult:
    cid: str
    title: str
    passed: bool
    detail: str
    elapsed: float
    limit: float | None
    certificates: list = field(default_factory=list)

    def line(self, timings: bool = False) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.cid} {self.title}: {self.detail}"
        if timings:
            text += f" [{self.elapsed:.2f}s"
            text += f" / limit {self.limit:.0f}s]" if self.limit else "]"
        return text


def _timed(cid, title, limit, fn) -> CriterionResult:
    start = time.perf_counter()
    ok, detail, certs = fn()
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        ok = False
        detail += f"; exceeded {limit:.0f}s limit"
    return CriterionResult(cid, title, ok, detail, elapsed, limit, certs)


# -- corpora ---------------------------------------------------------------


def a1_graphs() -> list[tuple[str, Graph]]:
    """Connected graphs with at most 12 vertices from every generator model."""
    out = []
    for n in range(3, 13):
        out.append((f"path n={n}", gen_graph("path", n=n)))
    for n in range(4, 13):
        out.append((f"cycle n={n}", gen_graph("cycle", n=n)))
    for r, c in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4)]:
        out.append((f"grid {r}x{c}", gen_graph("grid", rows=r, cols=c)))
    for n in range(5, 13):
        for seed in range(6):
            out.append((f"tree n={n} seed={seed}", gen_graph("tree", seed=seed, n=n)))
    for n in range(6, 13):
        for p in (0.25, 0.35, 0.5):
            for seed in range(5):
                g = gen_graph("gnp", seed=seed, n=n, p=p)
                if is_connected(g):
                    out.append((f"gnp n={n} p={p} seed={seed}", g))
    return out


@lru_cache(maxsize=None)
def a1_corpus() -> tuple[tuple[str, Graph, SeparationFamily], ...]:
    """Distinct (graph, family) instances from greedy scans in several orders."""
    seen = set()
    out = []
    for name, g in a1_graphs():
        for seed in (None, *range(1, 16)):
            (f,) = gen_laminar_family(g, "greedy", seed=seed)
            key = (g, f)
            if key not in seen:
                seen.add(key)
                out.append((f"{name} order={seed}", g, f))
    return tuple(out)


@lru_cache(maxsize=None)
def a2_corpus(nmax: int = 6) -> tuple[tuple[Graph, SeparationFamily], ...]:
    out = []
    for g in connected_catalog(nmax):
        fams = gen_laminar_family(g, "greedy", max_members=4)
        fams += gen_laminar_family(g, "exhaustive", max_members=4)
        for f in dict.fromkeys(fams):
            out.append((g, f))
    return tuple(out)


def fixture_decompositions() -> list[tuple[Graph, TreeDecomposition]]:
    p3 = gen_graph("path", n=3)
    p5 = gen_graph("path", n=5)
    star = gen_graph("star", k=3)
    TD = TreeDecomposition.from_parts
    return [
        (p3, TD(3, {1: {1, 2}, 2: {2, 3}}, [(1, 2)])),
        (p5, TD(5, {1: {1, 2}, 2: {2}, 3: {2, 3, 4}, 4: {4}, 5: {4, 5}}, [(1, 2), (2, 3), (3, 4), (4, 5)])),
        (p5, TD(5, {1: {1, 2, 3, 4, 5}}, [])),
        (star, TD(4, {1: {1}, 2: {1, 2}, 3: {1, 3}, 4: {1, 4}}, [(1, 2), (1, 3), (1, 4)])),
    ]


# -- criteria --------------------------------------------------------------


def criterion_a1() -> CriterionResult:
    def run():
        corpus = a1_corpus()
        failures, certs = 0, []
        for name, g, f in corpus:
            try:
                td = build_deciduous_td(g, f)
            except InternalInvariant as exc:
                failures += 1
                certs.append(exc.certificate)
                continue
            if not is_laminar(tau_star(g, td)):
                failures += 1
        ok = len(corpus) >= 500 and failures == 0
        return ok, f"{len(corpus) - failures}/{len(corpus)} tau* families laminar (need >=500)", certs

    return _timed("A1", "tau* of built decompositions is laminar", 60, run)


def _report_row(args):
    g, f = args
    r = check_all(g, f)
    return (
        r.verdicts["build_round_trip"],
        r.verdicts["deciduous"],
        r.verdicts["tau_star_equals_family"],
        r.certificate,
    )


def criterion_a2(nmax: int = 6, jobs: int = 1) -> CriterionResult:
    def run():
        corpus = a2_corpus(nmax)
        if jobs > 1:
            with ProcessPoolExecutor(jobs) as pool:
                rows = list(pool.map(_report_row, corpus, chunksize=16))
        else:
            rows = [_report_row(x) for x in corpus]
        good = sum(all(v is Verdict.PASS for v in row[:3]) for row in rows)
        certs = [row[3] for row in rows if row[3] is not None]
        sizes = Counter(len(f) for _, f in corpus)
        detail = (
            f"{good}/{len(corpus)} round trips valid, deciduous and exact over "
            f"{len(connected_catalog(nmax))} graphs (family sizes {dict(sorted(sizes.items()))}); "
            f"{len(certs)} certificates"
        )
        return good == len(corpus) and not certs, detail, certs

    return _timed("A2", "build round trip tau*(T) = family", 120, run)


def criterion_a3(nmax: int = 6) -> CriterionResult:
    def run():
        corpus = a2_corpus(nmax)
        bad = [(g, f) for g, f in corpus if crossing_pair(project_family(f)) is not None]
        return not bad, f"{len(corpus) - len(bad)}/{len(corpus)} projections laminar", []

    return _timed("A3", "projection of a laminar family is laminar", 30, run)


def _a4_graphs() -> list[Graph]:
    small = list(connected_catalog(5))
    pool = list(connected_catalog(7, nmin=6))
    return small + random.Random(20240607).sample(pool, 200)


def criterion_a4() -> CriterionResult:
    def run():
        graphs = _a4_graphs()
        checked = disagreements = lemma_failures = minimal = 0
        for g in graphs:
            V = list(range(1, g.n + 1))
            for r in range(g.n):
                for C in combinations(V, r):
                    C = frozenset(C)
                    fast = is_minimal_cutset(g, C)
                    ref = is_minimal_cutset_reference(g, C)
                    checked += 1
                    if fast is not ref:
                        disagreements += 1
                    if ref is CutsetVerdict.MINIMAL:
                        minimal += 1
                        comps = components_within(g, g.vertices - C)
                        if any(g.neighbors(c).isdisjoint(a) for c in C for a in comps):
                            lemma_failures += 1
        ok = disagreements == 0 and lemma_failures == 0
        detail = (
            f"{checked} vertex sets on {len(graphs)} graphs, {minimal} minimal cutsets; "
            f"{disagreements} verdict disagreements, {lemma_failures} lemma failures"
        )
        return ok, detail, []

    return _timed("A4", "members of a minimal cutset see every component", 60, run)


def criterion_a5(nmax: int = 6) -> CriterionResult:
    def run():
        qualifying = bad = 0
        certs = []
        for g, f in a2_corpus(nmax):
            if not all(meets_minimal_cutset_hypothesis(g, s) for s in f):
                continue
            qualifying += 1
            td = build_deciduous_td(g, f)
            if tau(g, td) != project_family(f):
                bad += 1
        return bad == 0 and qualifying > 0, f"{qualifying - bad}/{qualifying} qualifying families give tau = rho", certs

    return _timed("A5", "tau of the built decomposition equals the projection", 60, run)


def criterion_a6() -> CriterionResult:
    def run():
        pairs = bad = 0
        for g in connected_catalog(5):
            two = [s for s in enum_mseps_bruteforce(g) if s.k == 2]
            for s1 in two:
                for s2 in two:
                    pairs += 1
                    if (noncrossing(s1, s2) is not None) != noncrossing_2sided_reference(s1, s2):
                        bad += 1
        return bad == 0, f"{pairs - bad}/{pairs} ordered pairs agree", []

    return _timed("A6", "many-sided non-crossing agrees with the 2-sided definition", 60, run)


def a7_decompositions() -> list[tuple[Graph, TreeDecomposition]]:
    out = fixture_decompositions()
    for g, f in a2_corpus():
        out.append((g, build_deciduous_td(g, f)))
    for _, g, f in a1_corpus()[::5]:
        out.append((g, build_deciduous_td(g, f)))
    for _, g in a1_graphs()[::3]:
        for seed in range(3):
            td = elimination_decomposition(g, seed)
            out.append((g, td))
            out.append((g, deciduize(td)))
    return out


def criterion_a7() -> CriterionResult:
    def run():
        tds = a7_decompositions()
        invalid = sum(bool(validate_td(g, td)) for g, td in tds)
        bad = sum(not is_laminar(tau(g, td)) for g, td in tds)
        return bad == 0 and invalid == 0, f"{len(tds) - bad}/{len(tds)} tau families laminar ({invalid} invalid inputs)", []

    return _timed("A7", "tau of a tree decomposition is laminar", 30, run)


# values fixed by the acceptance contract
A8_EXPECTED_COUNTS = {"P3": 1, "P4": 4, "K3": 0}
A8_EXPECTED_BAGS = Counter([frozenset({1, 2}), frozenset({2}), frozenset({2, 3, 4}), frozenset({4}), frozenset({4, 5})])


def criterion_a8() -> CriterionResult:
    def run():
        graphs = {
            "P3": gen_graph("path", n=3),
            "P4": gen_graph("path", n=4),
            "K3": build_graph(3, [(1, 2), (1, 3), (2, 3)]),
        }
        counts = {name: len(enum_mseps_bruteforce(g)) for name, g in graphs.items()}
        p5 = gen_graph("path", n=5)
        f = SeparationFamily(
            5,
            [
                ManySidedSeparation.of(5, {1}, {3, 4, 5}, cutset={2}),
                ManySidedSeparation.of(5, {1, 2, 3}, {5}, cutset={4}),
            ],
        )
        td = build_deciduous_td(p5, f)
        degrees = sorted(len(v) for v in td.neighbors().values())
        is_path = len(td.bags) == 5 and degrees == [1, 1, 2, 2, 2]
        bags_ok = Counter(td.bags.values()) == A8_EXPECTED_BAGS
        counts_ok = counts == A8_EXPECTED_COUNTS
        mismatched = [f"{k}={counts[k]} (expected {v})" for k, v in A8_EXPECTED_COUNTS.items() if counts[k] != v]
        detail = "counts " + " ".join(f"{k}={v}" for k, v in counts.items())
        if mismatched:
            detail += "; mismatch " + ", ".join(mismatched)
        detail += f"; P5 build {'is' if is_path else 'is not'} a 5-node path, bags {'match' if bags_ok else 'differ'}"
        return counts_ok and is_path and bags_ok, detail, []

    return _timed("A8", "fixed-point examples", None, run)


def run_all(nmax: int = 6, jobs: int = 1) -> list[CriterionResult]:
    return [
        criterion_a1(),
        criterion_a2(nmax, jobs),
        criterion_a3(nmax),
        criterion_a4(),
        criterion_a5(nmax),
        criterion_a6(),
        criterion_a7(),
        criterion_a8(),
    ]

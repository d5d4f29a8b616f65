"""Brute-force references, instance generators and whole-pipeline checks.

The reference checkers here deliberately avoid the library's own graph and
separation logic (components, containment tests, cutset verdicts) so that
agreement between the two is evidence rather than tautology. They work on
bitmasks over the vertex set.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .builder import build_deciduous_td, family_certificate
from .decomposition import TreeDecomposition, leaf_bipartition, tau, tau_star, validate_td
from .errors import BadParams, InternalInvariant, NotConnectedGraph, NotDeciduous, NotTwoSided, TooLarge
from .graph import CutsetVerdict, Graph, build_graph, enum_minimal_cutsets, is_connected
from .separation import (
    ManySidedSeparation,
    SeparationFamily,
    crossing_pair,
    msep_from_cutset,
    noncrossing,
    project_family,
)

MAX_MSEP_ENUM_N = 9
MAX_EXHAUSTIVE_FAMILY_N = 8


# -- bitmask helpers -------------------------------------------------------


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _adj_masks(g: Graph) -> list[int]:
    adj = [0] * (g.n + 1)
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def _count_components(adj: list[int], within: int) -> int:
    count = 0
    left = within
    while left:
        frontier = left & -left
        seen = frontier
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= adj[low.bit_length() - 1]
                f ^= low
            frontier = nxt & within & ~seen
            seen |= frontier
        left &= ~seen
        count += 1
    return count


# -- reference checkers ----------------------------------------------------


def noncrossing_2sided_reference(s1: ManySidedSeparation, s2: ManySidedSeparation) -> bool:
    """Two ordinary separations do not cross, tested pair by pair over (i, j) in {1,2}^2."""
    if s1.k != 2 or s2.k != 2:
        raise NotTwoSided("reference checker takes 2-sided separations only")
    A, C = [_mask(a) for a in s1.sides], _mask(s1.cutset)
    B, D = [_mask(b) for b in s2.sides], _mask(s2.cutset)
    for i in (0, 1):
        for j in (0, 1):
            first = (A[1 - i] | C) & ~(B[j] | D) == 0
            second = (B[1 - j] | D) & ~(A[i] | C) == 0
            if first and second:
                return True
    return False


def is_minimal_cutset_reference(g: Graph, C) -> CutsetVerdict:
    """Definitional test: C disconnects G, and no proper subset of C does."""
    adj = _adj_masks(g)
    full = _mask(range(1, g.n + 1))
    cm = _mask(C)
    if _count_components(adj, full & ~cm) < 2:
        return CutsetVerdict.NOT_CUTSET
    members = sorted(C)
    for r in range(len(members)):
        for sub in combinations(members, r):
            if _count_components(adj, full & ~_mask(sub)) != 1:
                return CutsetVerdict.NOT_MINIMAL
    return CutsetVerdict.MINIMAL


def is_deciduous_reference(nodes, edges) -> bool:
    """Every leaf-to-leaf path has even length (BFS from every leaf)."""
    nb = {t: set() for t in nodes}
    for a, b in edges:
        nb[a].add(b)
        nb[b].add(a)
    leaves = [t for t in nb if len(nb[t]) == 1]
    for src in leaves:
        dist = {src: 0}
        order = [src]
        for t in order:
            for u in nb[t]:
                if u not in dist:
                    dist[u] = dist[t] + 1
                    order.append(u)
        if any(dist[l] % 2 for l in leaves):
            return False
    return True


def _set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in _set_partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1 :]


def enum_mseps_bruteforce(g: Graph, limit: int = MAX_MSEP_ENUM_N) -> SeparationFamily:
    """Every many-sided separation of ``g`` with nonempty sides.

    Walks all set partitions of V; the cutset is either empty or one of the
    blocks, the remaining blocks are the sides.
    """
    if g.n > limit:
        raise TooLarge(f"n={g.n} exceeds enumeration guard {limit}")
    adj = _adj_masks(g)
    found = []
    for blocks in _set_partitions(list(range(1, g.n + 1))):
        masks = [_mask(b) for b in blocks]
        for c in [None] + list(range(len(blocks))):
            sides = [m for idx, m in enumerate(masks) if idx != c]
            if len(sides) < 2:
                continue
            if all(_touches(adj, a, b) is False for a, b in combinations(sides, 2)):
                cut = blocks[c] if c is not None else []
                found.append(
                    ManySidedSeparation(
                        tuple(frozenset(blocks[idx]) for idx in range(len(blocks)) if idx != c),
                        frozenset(cut),
                        g.n,
                    )
                )
    return SeparationFamily(g.n, found)


def _touches(adj: list[int], a: int, b: int) -> bool:
    while a:
        low = a & -a
        if adj[low.bit_length() - 1] & b:
            return True
        a ^= low
    return False


# -- generators ------------------------------------------------------------

MODELS = ("path", "cycle", "star", "grid", "tree", "gnp")


def gen_graph(model: str, seed: int = 0, **params) -> Graph:
    """Deterministic graph for ``(model, params, seed)``.

    path/cycle/tree/gnp take ``n``; star takes ``k`` leaves around centre 1;
    grid takes ``rows`` and ``cols`` (row-major ids); gnp also takes ``p``.
    """
    rng = random.Random(seed)
    try:
        if model == "path":
            n = _positive(params, "n")
            return build_graph(n, [(v, v + 1) for v in range(1, n)])
        if model == "cycle":
            n = _positive(params, "n", minimum=3)
            return build_graph(n, [(v, v + 1) for v in range(1, n)] + [(n, 1)])
        if model == "star":
            k = _positive(params, "k")
            return build_graph(k + 1, [(1, v) for v in range(2, k + 2)])
        if model == "grid":
            r, c = _positive(params, "rows"), _positive(params, "cols")
            edges = []
            for i in range(r):
                for j in range(c):
                    v = i * c + j + 1
                    if j + 1 < c:
                        edges.append((v, v + 1))
                    if i + 1 < r:
                        edges.append((v, v + c))
            return build_graph(r * c, edges)
        if model == "tree":
            return build_graph(_positive(params, "n"), _prufer_tree(_positive(params, "n"), rng))
        if model == "gnp":
            n = _positive(params, "n")
            p = float(params["p"])
            if not 0.0 <= p <= 1.0:
                raise BadParams(f"p={p} not in [0, 1]")
            return build_graph(n, [(u, v) for u, v in combinations(range(1, n + 1), 2) if rng.random() < p])
    except KeyError as exc:
        raise BadParams(f"model {model!r} needs parameter {exc.args[0]!r}") from None
    raise BadParams(f"unknown model {model!r}; expected one of {', '.join(MODELS)}")


def _positive(params, name, minimum=1) -> int:
    value = int(params[name])
    if value < minimum:
        raise BadParams(f"{name}={value} must be at least {minimum}")
    return value


def _prufer_tree(n: int, rng: random.Random) -> list[tuple[int, int]]:
    if n == 1:
        return []
    if n == 2:
        return [(1, 2)]
    seq = [rng.randint(1, n) for _ in range(n - 2)]
    degree = [1] * (n + 1)
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(1, n + 1) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [x for x in range(1, n + 1) if degree[x] == 1]
    edges.append((u, w))
    return edges


def _cutset_separations(g: Graph) -> list[ManySidedSeparation]:
    if not is_connected(g):
        raise NotConnectedGraph("laminar family generation needs a connected graph")
    return [msep_from_cutset(g, C) for C in enum_minimal_cutsets(g, g.n)]


def greedy_laminar_family(
    g: Graph, seed: int | None = None, max_members: int | None = None
) -> SeparationFamily:
    """Keep minimal-cutset separations that cross nothing kept so far.

    Candidates are scanned in canonical cutset order, or in an order shuffled
    by ``seed`` when one is given.
    """
    candidates = _cutset_separations(g)
    if seed is not None:
        random.Random(seed).shuffle(candidates)
    kept: list[ManySidedSeparation] = []
    for s in candidates:
        if max_members is not None and len(kept) >= max_members:
            break
        if all(noncrossing(s, t) is not None for t in kept):
            kept.append(s)
    return SeparationFamily(g.n, kept)


def maximal_laminar_families(g: Graph, max_members: int | None = None) -> list[SeparationFamily]:
    """All laminar sets of minimal-cutset separations that cannot be extended.

    With ``max_members`` set, a set that reached the cap also counts as
    maximal.
    """
    if g.n > MAX_EXHAUSTIVE_FAMILY_N:
        raise TooLarge(f"n={g.n} exceeds exhaustive family guard {MAX_EXHAUSTIVE_FAMILY_N}")
    cand = _cutset_separations(g)
    count = len(cand)
    ok = [[a != b and noncrossing(cand[a], cand[b]) is not None for b in range(count)] for a in range(count)]
    cap = count if max_members is None else max_members
    out = []

    def extend(chosen: list[int], start: int) -> None:
        if len(chosen) == cap or not any(
            all(ok[c][x] for x in chosen) for c in range(count) if c not in chosen
        ):
            out.append(SeparationFamily(g.n, [cand[x] for x in chosen]))
            return
        for c in range(start, count):
            if all(ok[c][x] for x in chosen):
                extend(chosen + [c], c + 1)

    extend([], 0)
    return out


def gen_laminar_family(
    g: Graph, strategy: str = "greedy", seed: int | None = None, max_members: int | None = None
) -> list[SeparationFamily]:
    """Laminar families of minimal-cutset separations; greedy yields exactly one."""
    if strategy in ("greedy", "minimal-cutsets-greedy"):
        return [greedy_laminar_family(g, seed, max_members)]
    if strategy == "exhaustive":
        return maximal_laminar_families(g, max_members)
    raise BadParams(f"unknown strategy {strategy!r}")


def elimination_decomposition(g: Graph, seed: int = 0) -> TreeDecomposition:
    """Tree decomposition from a random elimination order; node t holds vertex t's bag."""
    rng = random.Random(seed)
    order = list(range(1, g.n + 1))
    rng.shuffle(order)
    pos = {v: i for i, v in enumerate(order)}
    nb = {v: set(g.neighbors(v)) for v in order}
    bags, edges, roots = {}, [], []
    for v in order:
        later = {u for u in nb[v] if pos[u] > pos[v]}
        bags[v] = frozenset(later | {v})
        for a, b in combinations(later, 2):
            nb[a].add(b)
            nb[b].add(a)
        if later:
            edges.append((v, min(later, key=pos.__getitem__)))
        else:
            roots.append(v)
    edges.extend(zip(roots, roots[1:]))
    return TreeDecomposition.from_parts(g.n, bags, edges)


def deciduize(td: TreeDecomposition) -> TreeDecomposition:
    """Hang a copy of each wrongly-coloured leaf's bag below it so all leaves share a colour."""
    nb = td.neighbors()
    nodes = td.nodes
    color = {nodes[0]: 0}
    order = [nodes[0]]
    for t in order:
        for u in nb[t]:
            if u not in color:
                color[u] = 1 - color[t]
                order.append(u)
    leaves = [t for t in nodes if len(nb[t]) == 1]
    if not leaves:
        return td
    keep = max((0, 1), key=lambda c: (sum(color[t] == c for t in leaves), -c))
    bags = dict(td.bags)
    edges = set(td.edges)
    nxt = max(nodes) + 1
    for t in leaves:
        if color[t] != keep:
            bags[nxt] = td.bags[t]
            edges.add((t, nxt))
            nxt += 1
    return TreeDecomposition.from_parts(td.n, bags, edges)


@lru_cache(maxsize=None)
def connected_catalog(nmax: int, nmin: int = 1) -> tuple[Graph, ...]:
    """Every connected graph on nmin..nmax vertices (nmax <= 7), one per isomorphism class."""
    if nmax > 7:
        raise TooLarge("the graph atlas covers at most 7 vertices")
    import networkx as nx

    out = []
    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if nmin <= n <= nmax and nx.is_connected(G):
            out.append(build_graph(n, [(u + 1, v + 1) for u, v in G.edges()]))
    return tuple(out)


# -- whole-theorem checks --------------------------------------------------


class Verdict(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"
    HYPOTHESIS_NOT_MET = "hypothesis-not-met"


CHECKS = (
    "laminar",
    "rho_laminar",
    "build_round_trip",
    "deciduous",
    "tau_star_equals_family",
    "tau_star_laminar",
    "tau_equals_rho",
)


@dataclass
class TheoremReport:
    verdicts: dict = field(default_factory=lambda: {c: Verdict.SKIPPED for c in CHECKS})
    hypothesis_met: bool = False
    certificate: dict | None = None
    # tau == rho(f) outside the hypothesis; recorded, never judged
    observations: dict = field(default_factory=dict)
    decomposition: TreeDecomposition | None = None

    @property
    def ok(self) -> bool:
        return all(v is not Verdict.FAIL for v in self.verdicts.values())

    def failed(self) -> list[str]:
        return [c for c in CHECKS if self.verdicts[c] is Verdict.FAIL]

    def summary(self) -> str:
        return "\n".join(f"{c}: {self.verdicts[c].value}" for c in CHECKS)


def meets_minimal_cutset_hypothesis(g: Graph, s: ManySidedSeparation) -> bool:
    """Cutset is a minimal cutset and the sides are exactly the components of G - C."""
    if not s.cutset or any(not a for a in s.sides):
        return False
    if is_minimal_cutset_reference(g, s.cutset) is not CutsetVerdict.MINIMAL:
        return False
    try:
        return msep_from_cutset(g, s.cutset) == s
    except Exception:
        return False


def _fail(report: TheoremReport, g: Graph, f: SeparationFamily, check: str, **witness) -> None:
    report.verdicts[check] = Verdict.FAIL
    if report.certificate is None:
        report.certificate = certificate(g, f, check, witness)


def certificate(g: Graph, f: SeparationFamily, check: str, witness: dict) -> dict:
    return {
        "check": check,
        "graph": {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]},
        "family": family_certificate(f)["family"],
        "witness": witness,
    }


def check_all(g: Graph, f: SeparationFamily) -> TheoremReport:
    """Run every theorem-level check on one (graph, family) instance, in order."""
    report = TheoremReport()
    pair = crossing_pair(f)
    if pair is not None:
        _fail(report, g, f, "laminar", crossing=[repr(pair[0]), repr(pair[1])])
        return report
    report.verdicts["laminar"] = Verdict.PASS

    rho = project_family(f)
    rho_pair = crossing_pair(rho)
    if rho_pair is None:
        report.verdicts["rho_laminar"] = Verdict.PASS
    else:
        _fail(report, g, f, "rho_laminar", crossing=[repr(rho_pair[0]), repr(rho_pair[1])])

    try:
        td = build_deciduous_td(g, f)
    except InternalInvariant as exc:
        _fail(report, g, f, "build_round_trip", builder=exc.certificate)
        return report
    report.decomposition = td
    violations = validate_td(g, td)
    if violations:
        _fail(report, g, f, "build_round_trip", violations=[str(v) for v in violations])
        return report
    report.verdicts["build_round_trip"] = Verdict.PASS

    try:
        leaf_bipartition(td)
        report.verdicts["deciduous"] = Verdict.PASS
    except NotDeciduous:
        _fail(report, g, f, "deciduous")
        return report

    star = tau_star(g, td)
    if star == f:
        report.verdicts["tau_star_equals_family"] = Verdict.PASS
    else:
        _fail(report, g, f, "tau_star_equals_family", tau_star=[repr(s) for s in star])
    star_pair = crossing_pair(star)
    if star_pair is None:
        report.verdicts["tau_star_laminar"] = Verdict.PASS
    else:
        _fail(report, g, f, "tau_star_laminar", crossing=[repr(star_pair[0]), repr(star_pair[1])])

    edge_seps = tau(g, td)
    report.hypothesis_met = all(meets_minimal_cutset_hypothesis(g, s) for s in f)
    if report.hypothesis_met:
        if edge_seps == rho:
            report.verdicts["tau_equals_rho"] = Verdict.PASS
        else:
            _fail(
                report,
                g,
                f,
                "tau_equals_rho",
                tau=[repr(s) for s in edge_seps],
                rho=[repr(s) for s in rho],
            )
    else:
        report.verdicts["tau_equals_rho"] = Verdict.HYPOTHESIS_NOT_MET
        report.observations["tau_equals_rho"] = edge_seps == rho
    return report

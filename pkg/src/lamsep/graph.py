"""Simple undirected graphs on vertices 1..n, components and cutsets.

Vertex sets are plain ``frozenset[int]``; every operation validates that the
members lie in ``1..n`` and raises :class:`OutOfRange` otherwise.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .errors import DuplicateEdge, NotConnectedGraph, OutOfRange, SelfLoop, TooLarge

VertexSet = frozenset  # frozenset[int]

#: default guard for brute-force cutset enumeration
MAX_CUTSET_ENUM_N = 16


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset  # of (u, v) with u < v
    adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        adj = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "adj", tuple(frozenset(a) for a in adj))

    @property
    def vertices(self) -> frozenset:
        return frozenset(range(1, self.n + 1))

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> frozenset:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise OutOfRange(f"vertex count must be non-negative, got {n}")
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        for w in (u, v):
            if not 1 <= w <= n:
                raise OutOfRange(f"edge {u}-{v}: endpoint {w} not in 1..{n}")
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise DuplicateEdge(f"duplicate edge {e[0]}-{e[1]}")
        seen.add(e)
    return Graph(n, frozenset(seen))


def check_vertices(g: Graph, vs: Iterable[int]) -> frozenset:
    """Return ``vs`` as a frozenset, raising OutOfRange for foreign ids."""
    s = frozenset(vs)
    for v in s:
        if not (isinstance(v, int) and 1 <= v <= g.n):
            raise OutOfRange(f"vertex {v!r} not in 1..{g.n}")
    return s


def set_key(s: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Canonical order on vertex sets: by size, then lexicographically."""
    t = tuple(sorted(s))
    return len(t), t


def anticomplete(g: Graph, X: Iterable[int], Y: Iterable[int]) -> bool:
    X = check_vertices(g, X)
    Y = check_vertices(g, Y)
    if len(X) > len(Y):
        X, Y = Y, X
    return all(g.adj[x].isdisjoint(Y) for x in X)


def components_within(g: Graph, S: Iterable[int]) -> list[frozenset]:
    """Connected components of the subgraph induced on ``S``, ordered by min vertex."""
    S = check_vertices(g, S)
    remaining = set(S)
    comps = []
    for start in sorted(S):
        if start not in remaining:
            continue
        remaining.discard(start)
        comp = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if w in remaining:
                    remaining.discard(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(components_within(g, g.vertices)) <= 1


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise NotConnectedGraph("graph is not connected")


class CutsetVerdict(enum.Enum):
    NOT_CUTSET = "NotCutset"
    NOT_MINIMAL = "CutsetNotMinimal"
    MINIMAL = "Minimal"


def is_minimal_cutset(g: Graph, C: Iterable[int]) -> CutsetVerdict:
    """Classify ``C`` for a connected graph.

    Minimality is decided by the neighbour characterisation: a cutset is
    minimal iff every member has a neighbour in every component of G - C.
    The definitional subset test lives in :mod:`lamsep.oracle`.
    """
    C = check_vertices(g, C)
    _require_connected(g)
    return _classify(g, C, components_within(g, g.vertices - C))


def _classify(g: Graph, C: frozenset, comps: list[frozenset]) -> CutsetVerdict:
    if len(comps) < 2:
        return CutsetVerdict.NOT_CUTSET
    for c in C:
        nb = g.adj[c]
        if any(nb.isdisjoint(comp) for comp in comps):
            return CutsetVerdict.NOT_MINIMAL
    return CutsetVerdict.MINIMAL


def enum_minimal_cutsets(g: Graph, max_size: int, limit: int = MAX_CUTSET_ENUM_N) -> list[frozenset]:
    """All minimal cutsets of size at most ``max_size``, by (size, lex)."""
    if g.n > limit:
        raise TooLarge(f"n={g.n} exceeds enumeration guard {limit}")
    _require_connected(g)
    out = []
    V = g.vertices
    for size in range(1, min(max_size, g.n - 2) + 1):
        for C in combinations(range(1, g.n + 1), size):
            C = frozenset(C)
            if _classify(g, C, components_within(g, V - C)) is CutsetVerdict.MINIMAL:
                out.append(C)
    return out

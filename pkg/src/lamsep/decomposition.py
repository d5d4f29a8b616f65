"""Tree decompositions: validation, width, deciduousness and the maps tau, tau*."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import ContextMismatch, InvalidDecomposition, NotDeciduous, Violation
from .graph import Graph
from .separation import ManySidedSeparation, SeparationFamily


@dataclass(frozen=True)
class TreeDecomposition:
    """A tree on integer node ids with a bag per node.

    ``edges`` holds pairs ``(a, b)`` with ``a < b``. Instances are treated as
    immutable; ``bags`` must not be mutated after construction.
    """

    n: int
    bags: Mapping[int, frozenset]
    edges: frozenset

    @classmethod
    def from_parts(cls, n: int, bags: Mapping[int, Iterable[int]], edges: Iterable[tuple[int, int]]):
        return cls(
            n,
            {t: frozenset(b) for t, b in bags.items()},
            frozenset((a, b) if a < b else (b, a) for a, b in edges),
        )

    __hash__ = None  # bags is a dict

    @property
    def nodes(self) -> list[int]:
        return sorted(self.bags)

    def neighbors(self) -> dict[int, list[int]]:
        nb: dict[int, list[int]] = {t: [] for t in self.bags}
        for a, b in sorted(self.edges):
            nb[a].append(b)
            nb[b].append(a)
        return nb

    def leaves(self) -> list[int]:
        return [t for t, ns in self.neighbors().items() if len(ns) == 1]

    def relabel(self, mapping: Mapping[int, int]) -> "TreeDecomposition":
        return TreeDecomposition.from_parts(
            self.n,
            {mapping[t]: b for t, b in self.bags.items()},
            ((mapping[a], mapping[b]) for a, b in self.edges),
        )


@dataclass(frozen=True)
class Bipartition:
    X: frozenset
    Y: frozenset


def _tree_violations(td: TreeDecomposition) -> list[Violation]:
    out = []
    if not td.bags:
        return [Violation("tree", "decomposition has no nodes")]
    for a, b in sorted(td.edges):
        if a == b:
            out.append(Violation("tree", f"self-loop at node {a}", (a, b)))
        for t in (a, b):
            if t not in td.bags:
                out.append(Violation("tree", f"edge {a}-{b} uses unknown node {t}", (a, b)))
    if out:
        return out
    if len(td.edges) != len(td.bags) - 1:
        out.append(Violation("tree", f"{len(td.bags)} nodes but {len(td.edges)} edges", len(td.edges)))
    reach = _reachable(td.neighbors(), min(td.bags), lambda t: True)
    unreached = sorted(set(td.bags) - reach)
    if unreached:
        out.append(Violation("tree", f"node {unreached[0]} is disconnected from node {min(td.bags)}", unreached[0]))
    return out


def _reachable(nb: Mapping[int, list[int]], start: int, allowed) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        for u in nb[t]:
            if u not in seen and allowed(u):
                seen.add(u)
                queue.append(u)
    return seen


def validate_td(g: Graph, td: TreeDecomposition) -> list[Violation]:
    """Tree structure plus vertex cover (i), edge cover (ii), connected support (iii)."""
    if td.n != g.n:
        raise ContextMismatch(f"decomposition built for n={td.n}, graph has n={g.n}")
    out = _tree_violations(td)
    if out:
        return out
    for t in td.nodes:
        bad = sorted(v for v in td.bags[t] if not 1 <= v <= g.n)
        if bad:
            out.append(Violation("subset", f"bag {t} contains {bad[0]} outside 1..{g.n}", (t, bad[0])))
    support: dict[int, list[int]] = {v: [] for v in range(1, g.n + 1)}
    for t in td.nodes:
        for v in td.bags[t]:
            if v in support:
                support[v].append(t)
    for v in range(1, g.n + 1):
        if not support[v]:
            out.append(Violation("i", f"vertex {v} is in no bag", v))
    for u, v in g.sorted_edges():
        if not any(v in td.bags[t] for t in support[u]):
            out.append(Violation("ii", f"edge {u}-{v} is in no bag", (u, v)))
    nb = td.neighbors()
    for v in range(1, g.n + 1):
        sup = support[v]
        if sup:
            inside = set(sup)
            if _reachable(nb, sup[0], inside.__contains__) != inside:
                out.append(Violation("iii", f"support of vertex {v} is disconnected", v))
    return out


def width(td: TreeDecomposition, paper_literal: bool = False) -> int:
    """Largest bag size minus one.

    ``paper_literal`` uses the smallest bag instead, for comparison against
    the literal min-based formula.
    """
    sizes = [len(b) for b in td.bags.values()]
    return (min(sizes) if paper_literal else max(sizes)) - 1


def leaf_bipartition(td: TreeDecomposition) -> Bipartition:
    """2-colouring of the tree with every leaf in Y; raises NotDeciduous if none exists."""
    nb = td.neighbors()
    nodes = td.nodes
    if len(nodes) == 1:
        return Bipartition(frozenset(), frozenset(nodes))
    color = {nodes[0]: 0}
    queue = deque([nodes[0]])
    while queue:
        t = queue.popleft()
        for u in nb[t]:
            if u not in color:
                color[u] = 1 - color[t]
                queue.append(u)
    leaf_colors = {color[t] for t in nodes if len(nb[t]) == 1}
    if len(leaf_colors) != 1:
        raise NotDeciduous("leaves lie on both sides of the bipartition")
    (yc,) = leaf_colors
    X = frozenset(t for t in nodes if color[t] != yc)
    return Bipartition(X, frozenset(nodes) - X)


def is_deciduous(td: TreeDecomposition) -> bool:
    try:
        leaf_bipartition(td)
    except NotDeciduous:
        return False
    return True


def _require_valid(g: Graph, td: TreeDecomposition) -> None:
    violations = validate_td(g, td)
    if violations:
        raise InvalidDecomposition(str(violations[0]), violations)


def _branch_union(td: TreeDecomposition, nb, root: int, blocked: int) -> frozenset:
    """Union of bags in the component of T - blocked containing ``root``."""
    seen = _reachable(nb, root, lambda t: t != blocked)
    return frozenset().union(*(td.bags[t] for t in seen))


def tau(g: Graph, td: TreeDecomposition) -> SeparationFamily:
    """One 2-sided separation per tree edge, as a canonical set."""
    _require_valid(g, td)
    nb = td.neighbors()
    out = []
    for a, b in sorted(td.edges):
        C = td.bags[a] & td.bags[b]
        A1 = _branch_union(td, nb, a, b) - C
        A2 = _branch_union(td, nb, b, a) - C
        out.append(ManySidedSeparation((A1, A2), C, g.n))
    return SeparationFamily(g.n, out)


def separation_at(td: TreeDecomposition, x: int, nb=None) -> ManySidedSeparation:
    """The many-sided separation centred at node ``x``: one side per branch."""
    nb = nb or td.neighbors()
    C = td.bags[x]
    sides = tuple(_branch_union(td, nb, y, x) - C for y in nb[x])
    return ManySidedSeparation(sides, C, td.n)


def tau_star(g: Graph, td: TreeDecomposition) -> SeparationFamily:
    _require_valid(g, td)
    X = leaf_bipartition(td).X
    nb = td.neighbors()
    return SeparationFamily(g.n, (separation_at(td, x, nb) for x in sorted(X)))

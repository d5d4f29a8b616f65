"""Deciduous tree decompositions from laminar families of many-sided separations.

Every member ``S_m`` becomes a centre node carrying its cutset. Each side of
each member is a *flag* ``(m, i)``. Two flags face each other when ``S_m``
sees ``S_m'`` through side i, ``S_m'`` sees ``S_m`` through side j, and no third
member separates them. Classes of mutually facing flags become the leaf-side
nodes; the bag of a class is the intersection of its flags' regions.

The result is always re-validated. A failure there is reported as
:class:`InternalInvariant` with a certificate rather than returned.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decomposition import TreeDecomposition, leaf_bipartition, tau_star, validate_td
from .errors import ContextMismatch, CrossingPair, InternalInvariant, NotDeciduous, NotLaminar
from .graph import Graph
from .separation import ManySidedSeparation, SeparationFamily, crossing_pair, noncrossing

Flag = tuple  # (member index m, side index i), both 1-based


@dataclass(frozen=True)
class LocationClass:
    flags: frozenset
    region: frozenset

    def sorted_flags(self) -> list[Flag]:
        return sorted(self.flags)


def side_of(s: ManySidedSeparation, other: ManySidedSeparation) -> int:
    """Side of ``s`` through which ``other`` is seen.

    This is the first index of the least non-crossing witness, so ``other``
    minus one of its sides fits in that region *and* the reverse containment
    holds. For distinct separations with nonempty sides the witness is unique.
    """
    w = noncrossing(s, other)
    if w is None:
        raise CrossingPair(f"{s!r} and {other!r} cross")
    return w[0]


def _require_laminar(f: SeparationFamily) -> None:
    pair = crossing_pair(f)
    if pair is not None:
        raise NotLaminar(f"{pair[0]!r} and {pair[1]!r} cross", pair)


def family_certificate(f: SeparationFamily, g: Graph | None = None, **extra) -> dict:
    """JSON-ready description of a family (and graph), plus any extra witness fields."""
    cert = {
        "family": {
            "n": f.n,
            "separations": [
                {"cutset": sorted(s.cutset), "sides": [sorted(a) for a in s.sides]} for s in f
            ],
        }
    }
    if g is not None:
        cert["graph"] = {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}
    cert.update(extra)
    return cert


def find_outermost(f: SeparationFamily) -> tuple[ManySidedSeparation, int]:
    """Least ``(S, i)`` such that every other member fits, minus one side, into region i of S."""
    if not len(f):
        raise ValueError("family is empty")
    _require_laminar(f)
    for s in f:
        for i in range(1, s.k + 1):
            reg = s.region(i)
            if all(
                any(o.core(j) <= reg for j in range(1, o.k + 1)) for o in f if o is not s
            ):
                return s, i
    raise InternalInvariant(
        "laminar family has no outermost member", family_certificate(f, check="find_outermost")
    )


def _side_table(f: SeparationFamily) -> dict[tuple[int, int], int]:
    # both orientations of a pair come from one witness so they always agree,
    # even when empty sides make the witness ambiguous
    ms = f.members
    table = {}
    for a in range(1, len(ms) + 1):
        for b in range(a + 1, len(ms) + 1):
            w = noncrossing(ms[a - 1], ms[b - 1])
            if w is None:
                raise CrossingPair(f"{ms[a - 1]!r} and {ms[b - 1]!r} cross")
            table[a, b], table[b, a] = w
    return table


def locations(f: SeparationFamily, g: Graph | None = None) -> list[LocationClass]:
    """Partition all flags into classes of mutually facing flags.

    Classes are listed by their least flag. For the empty family there is a
    single class with region V(G), which needs ``g`` (or falls back to 1..n).
    """
    _require_laminar(f)
    ms = f.members
    if not ms:
        V = g.vertices if g is not None else frozenset(range(1, f.n + 1))
        return [LocationClass(frozenset(), V)]
    side = _side_table(f)
    parent = {(m, i): (m, i) for m in range(1, len(ms) + 1) for i in range(1, ms[m - 1].k + 1)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = len(ms)
    for a in range(1, count + 1):
        for b in range(a + 1, count + 1):
            i, j = side[a, b], side[b, a]
            # c lies between a and b only if it also splits them apart;
            # members sharing a class with a and b satisfy the first two tests
            between = any(
                side[a, c] == i and side[b, c] == j and side[c, a] != side[c, b]
                for c in range(1, count + 1)
                if c != a and c != b
            )
            if not between:
                ra, rb = find((a, i)), find((b, j))
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    groups: dict[Flag, list[Flag]] = {}
    for flag in sorted(parent):
        groups.setdefault(find(flag), []).append(flag)
    out = []
    for flags in sorted(groups.values()):
        region = frozenset.intersection(*(ms[m - 1].region(i) for m, i in flags))
        out.append(LocationClass(frozenset(flags), region))
    return out


def build_deciduous_td(g: Graph, f: SeparationFamily) -> TreeDecomposition:
    """Deciduous tree decomposition whose tau* is exactly ``f``.

    Centre nodes are numbered 1..|f| in family order, class nodes follow in
    :func:`locations` order.
    """
    if f.n != g.n:
        raise ContextMismatch(f"family over n={f.n}, graph has n={g.n}")
    classes = locations(f, g)
    count = len(f)
    bags = {m: f[m - 1].cutset for m in range(1, count + 1)}
    edges = []
    for idx, cls in enumerate(classes, count + 1):
        bags[idx] = cls.region
        for m, _ in cls.sorted_flags():
            edges.append((m, idx))
    td = TreeDecomposition.from_parts(g.n, bags, edges)
    _post_validate(g, f, classes, td)
    return td


def _post_validate(g, f, classes, td) -> None:
    def fail(reason, **witness):
        cert = family_certificate(
            f,
            g,
            check="build_deciduous_td",
            reason=reason,
            classes=[
                {"flags": [list(fl) for fl in c.sorted_flags()], "region": sorted(c.region)}
                for c in classes
            ],
            bags={str(t): sorted(b) for t, b in sorted(td.bags.items())},
            tree_edges=[list(e) for e in sorted(td.edges)],
            **witness,
        )
        raise InternalInvariant(f"built decomposition failed post-validation: {reason}", cert)

    violations = validate_td(g, td)
    if violations:
        fail("invalid decomposition", violations=[str(v) for v in violations])
    try:
        bip = leaf_bipartition(td)
    except NotDeciduous:
        fail("not deciduous")
    if bip.X != frozenset(range(1, len(f) + 1)):
        fail("centre nodes are not the X class", x_class=sorted(bip.X))
    got = tau_star(g, td)
    if got != f:
        fail(
            "tau* differs from the input family",
            tau_star=[repr(s) for s in got],
        )

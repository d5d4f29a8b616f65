"""Many-sided separations, the non-crossing relation, laminarity and projection.

A many-sided separation is a tuple of sides ``A_1..A_k`` (k >= 2) and a cutset
``C`` partitioning the vertex set, with sides pairwise anticomplete. The k=2
case is the ordinary separation ``(A_1, A_2, C)``.

Side indices and member indices in the public API are 1-based, so witnesses
read the same way as the usual ``(i, j)`` notation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import BadIndexSet, ContextMismatch, NotACutset, Violation
from .graph import Graph, check_vertices, components_within

_EMPTY = frozenset()


def _side_key(side: frozenset):
    # nonempty sides are disjoint, so min alone orders them; size and lex
    # only break ties between invalid (overlapping) inputs
    if not side:
        return (1, 0, 0, ())
    t = tuple(sorted(side))
    return (0, t[0], len(t), t)


@dataclass(frozen=True, eq=False)
class ManySidedSeparation:
    sides: tuple  # tuple[frozenset[int], ...]
    cutset: frozenset
    n: int

    def __post_init__(self):
        object.__setattr__(self, "sides", tuple(frozenset(s) for s in self.sides))
        object.__setattr__(self, "cutset", frozenset(self.cutset))
        if len(self.sides) < 2:
            raise ValueError(f"a separation needs at least two sides, got {len(self.sides)}")

    @classmethod
    def of(cls, n: int, *sides: Iterable[int], cutset: Iterable[int] = ()) -> "ManySidedSeparation":
        return cls(tuple(frozenset(s) for s in sides), frozenset(cutset), n)

    @property
    def k(self) -> int:
        return len(self.sides)

    def side(self, i: int) -> frozenset:
        """Side ``A_i`` (1-based)."""
        return self.sides[i - 1]

    def region(self, i: int) -> frozenset:
        """``A_i | C``."""
        return self.sides[i - 1] | self.cutset

    def core(self, j: int) -> frozenset:
        """Everything except ``A_j``: the other sides plus the cutset."""
        return self._union - self.sides[j - 1] | self.cutset

    @cached_property
    def _union(self) -> frozenset:
        return frozenset().union(*self.sides)

    def canonical(self) -> "ManySidedSeparation":
        return ManySidedSeparation(tuple(sorted(self.sides, key=_side_key)), self.cutset, self.n)

    @cached_property
    def key(self) -> tuple:
        return (
            self.n,
            tuple(sorted(self.cutset)),
            tuple(_side_key(s)[3] for s in sorted(self.sides, key=_side_key)),
        )

    def __eq__(self, other):
        if not isinstance(other, ManySidedSeparation):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self) -> str:
        def fmt(s):
            return "{" + ",".join(map(str, sorted(s))) + "}"

        return "(" + ", ".join(fmt(s) for s in self.sides + (self.cutset,)) + ")"


def canonical(s: ManySidedSeparation) -> ManySidedSeparation:
    return s.canonical()


def _member_order(s: ManySidedSeparation):
    return s.key[1], s.key[2]


class SeparationFamily:
    """A duplicate-free set of canonical separations over one vertex count.

    Iteration follows the canonical member order (cutset, then sides), which
    is also the order used for 1-based member indices.
    """

    __slots__ = ("n", "members")

    def __init__(self, n: int, members: Iterable[ManySidedSeparation] = ()):
        uniq = {}
        for s in members:
            if s.n != n:
                raise ContextMismatch(f"separation built for n={s.n}, family has n={n}")
            uniq.setdefault(s, s.canonical())
        self.n = n
        self.members = tuple(sorted(uniq.values(), key=_member_order))

    def __iter__(self) -> Iterator[ManySidedSeparation]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, s) -> bool:
        return s in set(self.members)

    def __getitem__(self, idx: int) -> ManySidedSeparation:
        return self.members[idx]

    def __eq__(self, other):
        if not isinstance(other, SeparationFamily):
            return NotImplemented
        return self.n == other.n and self.members == other.members

    def __hash__(self):
        return hash((self.n, self.members))

    def __repr__(self) -> str:
        return f"SeparationFamily(n={self.n}, {list(self.members)})"

    def with_member(self, s: ManySidedSeparation) -> "SeparationFamily":
        return SeparationFamily(self.n, self.members + (s,))

    def union(self, other: "SeparationFamily") -> "SeparationFamily":
        if other.n != self.n:
            raise ContextMismatch(f"families over n={self.n} and n={other.n}")
        return SeparationFamily(self.n, self.members + other.members)


def validate_msep(g: Graph, s: ManySidedSeparation, strict: bool = False) -> list[Violation]:
    """Check the partition and anticomplete conditions; empty list means valid.

    With ``strict`` set, empty sides are reported as warnings.
    """
    if s.n != g.n:
        raise ContextMismatch(f"separation built for n={s.n}, graph has n={g.n}")
    out: list[Violation] = []
    parts = list(s.sides) + [s.cutset]
    names = [f"A{i}" for i in range(1, s.k + 1)] + ["C"]
    for name, p in zip(names, parts):
        bad = sorted(v for v in p if not (isinstance(v, int) and 1 <= v <= g.n))
        if bad:
            out.append(Violation("subset", f"{name} contains {bad[0]} outside 1..{g.n}", bad[0]))
    for a in range(len(parts)):
        for b in range(a + 1, len(parts)):
            shared = parts[a] & parts[b]
            if shared:
                v = min(shared)
                out.append(Violation("disjoint", f"{names[a]} and {names[b]} share vertex {v}", v))
    missing = g.vertices - frozenset().union(*parts)
    if missing:
        v = min(missing)
        out.append(Violation("cover", f"vertex {v} is in no part", v))
    owner = {}
    for i, side in enumerate(s.sides, 1):
        for v in side:
            owner.setdefault(v, i)
    for u, v in g.sorted_edges():
        iu, iv = owner.get(u), owner.get(v)
        if iu is not None and iv is not None and iu != iv:
            out.append(Violation("anticomplete", f"edge {u}-{v} joins A{iu} and A{iv}", (u, v)))
    if strict:
        for i, side in enumerate(s.sides, 1):
            if not side:
                out.append(Violation("empty-side", f"A{i} is empty", i, warning=True))
    return out


def _same_context(s1: ManySidedSeparation, s2: ManySidedSeparation) -> None:
    if s1.n != s2.n:
        raise ContextMismatch(f"separations over n={s1.n} and n={s2.n}")


def noncrossing(s1: ManySidedSeparation, s2: ManySidedSeparation) -> tuple[int, int] | None:
    """Least witness ``(i, j)`` that ``s1`` and ``s2`` do not cross, else None.

    ``(i, j)`` qualifies when ``s2`` minus its side j fits in region i of
    ``s1`` and ``s1`` minus its side i fits in region j of ``s2``.
    """
    _same_context(s1, s2)
    for i in range(1, s1.k + 1):
        reg1 = s1.region(i)
        core1 = s1.core(i)
        for j in range(1, s2.k + 1):
            if s2.core(j) <= reg1 and core1 <= s2.region(j):
                return i, j
    return None


def crossing_pair(f: SeparationFamily) -> tuple[ManySidedSeparation, ManySidedSeparation] | None:
    """First crossing pair of distinct members in canonical order, or None."""
    ms = f.members
    for a in range(len(ms)):
        for b in range(a + 1, len(ms)):
            if noncrossing(ms[a], ms[b]) is None:
                return ms[a], ms[b]
    return None


def is_laminar(f: SeparationFamily) -> bool:
    return crossing_pair(f) is None


def project(s: ManySidedSeparation) -> SeparationFamily:
    """Each side against the union of the others, sharing the cutset."""
    whole = s._union
    return SeparationFamily(
        s.n, (ManySidedSeparation((a, whole - a), s.cutset, s.n) for a in s.sides)
    )


def project_family(f: SeparationFamily) -> SeparationFamily:
    out = []
    for s in f:
        out.extend(project(s))
    return SeparationFamily(f.n, out)


def coarsen(s: ManySidedSeparation, I: Iterable[int]) -> ManySidedSeparation:
    """Merge the sides indexed by ``I`` (1-based) against the rest."""
    I = frozenset(I)
    if not I or any(not 1 <= i <= s.k for i in I) or len(I) == s.k:
        raise BadIndexSet(f"index set {sorted(I)} must be a nonempty proper subset of 1..{s.k}")
    left = frozenset().union(*(s.side(i) for i in I))
    right = s._union - left
    return ManySidedSeparation((left, right), s.cutset, s.n).canonical()


def msep_from_cutset(g: Graph, C: Iterable[int]) -> ManySidedSeparation:
    """The separation whose sides are the components of G - C."""
    C = check_vertices(g, C)
    comps = components_within(g, g.vertices - C)
    if len(comps) < 2:
        raise NotACutset(f"G - {sorted(C)} has {len(comps)} component(s)")
    return ManySidedSeparation(tuple(comps), C, g.n)

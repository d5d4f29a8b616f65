from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lamsep.errors import BadIndexSet, ContextMismatch, NotACutset
from lamsep.graph import components_within, enum_minimal_cutsets
from lamsep.oracle import connected_catalog, enum_mseps_bruteforce, gen_laminar_family
from lamsep.separation import (
    ManySidedSeparation,
    SeparationFamily,
    coarsen,
    crossing_pair,
    is_laminar,
    msep_from_cutset,
    noncrossing,
    project,
    project_family,
    validate_msep,
)

from conftest import graphs

M = ManySidedSeparation.of
S1 = M(5, {1}, {3, 4, 5}, cutset={2})
S2 = M(5, {1, 2, 3}, {5}, cutset={4})
C4_A = M(4, {2}, {4}, cutset={1, 3})
C4_B = M(4, {1}, {3}, cutset={2, 4})
STAR = M(4, {2}, {3}, {4}, cutset={1})


def scan_witnesses(s, o):
    """All (i, j) meeting both containments, computed straight from the sides."""
    out = []
    for i, Ai in enumerate(s.sides, 1):
        for j, Bj in enumerate(o.sides, 1):
            o_rest = set().union(*[b for q, b in enumerate(o.sides, 1) if q != j]) | o.cutset
            s_rest = set().union(*[a for p, a in enumerate(s.sides, 1) if p != i]) | s.cutset
            if o_rest <= Ai | s.cutset and s_rest <= Bj | o.cutset:
                out.append((i, j))
    return out


class TestValidate:
    def test_valid(self, p5):
        assert validate_msep(p5, S1) == []

    def test_valid_nonadjacent_sides(self, p5):
        s = M(5, {1, 3}, {5}, cutset={2, 4})
        # 1-3 and 3-5 are non-edges, sides and cutset partition 1..5
        assert not any(p5.has_edge(a, b) for a in {1, 3} for b in {5})
        assert validate_msep(p5, s) == []

    def test_crossing_edge(self, p5):
        (v,) = validate_msep(p5, M(5, {1, 2, 3}, {4, 5}))
        assert v.condition == "anticomplete" and v.witness == (3, 4)

    def test_overlap_and_missing(self, p5):
        conds = {v.condition: v.witness for v in validate_msep(p5, M(5, {1, 2}, {2, 5}, cutset={3}))}
        assert conds["disjoint"] == 2
        assert conds["cover"] == 4

    def test_out_of_range(self, p5):
        conds = [v.condition for v in validate_msep(p5, M(5, {1, 7}, {3, 4, 5}, cutset={2}))]
        assert "subset" in conds

    def test_context_mismatch(self, p5):
        with pytest.raises(ContextMismatch):
            validate_msep(p5, C4_A)

    def test_strict_flags_empty_sides(self, p5):
        s = M(5, {1}, set(), cutset={2, 3, 4, 5})
        assert validate_msep(p5, s) == []
        (w,) = validate_msep(p5, s, strict=True)
        assert w.warning and w.condition == "empty-side"

    def test_needs_two_sides(self):
        with pytest.raises(ValueError):
            M(3, {1, 2, 3})


class TestNoncrossing:
    def test_nested_p5(self):
        assert scan_witnesses(S1, S2)[0] == (2, 1)
        assert noncrossing(S1, S2) == (2, 1)

    def test_crossing_c4(self):
        assert scan_witnesses(C4_A, C4_B) == []
        assert noncrossing(C4_A, C4_B) is None

    def test_two_sided_self(self):
        assert scan_witnesses(S1, S1)[0] == (1, 2)
        assert noncrossing(S1, S1) == (1, 2)

    def test_three_sided_crosses_itself(self):
        assert noncrossing(STAR, STAR) is None

    def test_context(self):
        with pytest.raises(ContextMismatch):
            noncrossing(S1, C4_A)

    def test_symmetric_and_least_exhaustive(self):
        for g in connected_catalog(5):
            seps = list(enum_mseps_bruteforce(g))
            for s in seps:
                for o in seps:
                    w = noncrossing(s, o)
                    assert (w is None) == (noncrossing(o, s) is None)
                    scan = scan_witnesses(s, o)
                    assert w == (scan[0] if scan else None)


class TestLaminar:
    def test_p5(self):
        f = SeparationFamily(5, [S1, S2])
        assert is_laminar(f) and crossing_pair(f) is None

    def test_c4(self):
        f = SeparationFamily(4, [C4_A, C4_B])
        assert not is_laminar(f)
        assert set(crossing_pair(f)) == {C4_A, C4_B}

    def test_singleton(self):
        assert is_laminar(SeparationFamily(5, [S1]))
        # a family is a set: a 3-sided member is not compared with itself
        assert is_laminar(SeparationFamily(4, [STAR]))


class TestProject:
    def test_star(self):
        want = {
            M(4, {2}, {3, 4}, cutset={1}),
            M(4, {3}, {2, 4}, cutset={1}),
            M(4, {4}, {2, 3}, cutset={1}),
        }
        formula = {
            M(4, a, set().union(*[b for b in STAR.sides if b != a]), cutset=STAR.cutset) for a in STAR.sides
        }
        assert formula == want
        assert set(project(STAR)) == want and len(project(STAR)) == 3

    def test_two_sided_is_fixed(self):
        assert list(project(S1)) == [S1]
        s = M(5, {1}, set(), cutset={2, 3, 4, 5})
        assert list(project(s)) == [s]

    def test_family(self):
        assert project_family(SeparationFamily(5, [S1, S2])) == SeparationFamily(5, [S1, S2])
        assert set(project_family(SeparationFamily(4, [STAR]))) == set(project(STAR))
        assert len(project_family(SeparationFamily(5))) == 0


class TestCoarsen:
    def test_union(self):
        assert coarsen(STAR, {1, 2}) == M(4, {2, 3}, {4}, cutset={1})

    @pytest.mark.parametrize("I", [set(), {1, 2, 3}, {0}, {4}])
    def test_bad_index_sets(self, I):
        with pytest.raises(BadIndexSet):
            coarsen(STAR, I)

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_count_of_distinct_coarsenings(self, k):
        s = ManySidedSeparation(tuple(frozenset({v}) for v in range(2, k + 2)), frozenset({1}), k + 1)
        outs = {
            coarsen(s, I) for r in range(1, k) for I in combinations(range(1, k + 1), r)
        }
        assert len(outs) == 2 ** (k - 1) - 1

    def test_valid_and_never_both_connected(self):
        for g in connected_catalog(6):
            for C in enum_minimal_cutsets(g, g.n):
                s = msep_from_cutset(g, C)
                for r in range(1, s.k):
                    for I in combinations(range(1, s.k + 1), r):
                        t = coarsen(s, I)
                        assert validate_msep(g, t) == []
                        if s.k >= 3:
                            assert any(len(components_within(g, a)) > 1 for a in t.sides)


class TestFromCutset:
    def test_p5(self, p5):
        assert msep_from_cutset(p5, {2}).sides == ({1}, {3, 4, 5})
        assert msep_from_cutset(p5, {2}) == S1

    def test_c4(self, c4):
        assert msep_from_cutset(c4, {1, 3}) == C4_A

    def test_not_a_cutset(self, p5):
        with pytest.raises(NotACutset):
            msep_from_cutset(p5, set())

    @given(graphs(min_n=3, max_n=8, connected=True))
    def test_sides_connected_and_projection_size(self, g):
        for C in enum_minimal_cutsets(g, g.n):
            s = msep_from_cutset(g, C)
            assert validate_msep(g, s) == []
            assert all(len(components_within(g, a)) == 1 for a in s.sides)
            if s.k >= 3:
                assert len(project(s)) == s.k


class TestCanonical:
    def test_reorder(self):
        s = ManySidedSeparation(({3, 4, 5}, {1}), {2}, 5)
        assert s.canonical().sides == ({1}, {3, 4, 5})
        assert s == S1

    def test_empty_sides_last(self):
        s = ManySidedSeparation((set(), {4}, {1}), {2, 3}, 5).canonical()
        assert s.sides == ({1}, {4}, frozenset())

    def test_cutset_matters(self):
        assert M(5, {1}, {5}, cutset={2, 3, 4}) != M(5, {1}, {5}, cutset={2, 3})

    def test_family_dedups_permutations(self):
        f = SeparationFamily(5, [S1])
        assert len(f.with_member(ManySidedSeparation(({3, 4, 5}, {1}), {2}, 5))) == 1

    def test_family_context(self):
        with pytest.raises(ContextMismatch):
            SeparationFamily(4, [S1])


def test_projection_of_laminar_family_is_laminar():
    for g in connected_catalog(6):
        for f in gen_laminar_family(g, "exhaustive"):
            assert is_laminar(project_family(f))


@given(graphs(min_n=2, max_n=5), st.randoms(use_true_random=False))
def test_projection_laminar_on_arbitrary_families(g, rnd):
    seps = list(enum_mseps_bruteforce(g))
    rnd.shuffle(seps)
    kept = []
    for s in seps[:40]:
        if all(noncrossing(s, t) is not None for t in kept):
            kept.append(s)
    f = SeparationFamily(g.n, kept)
    assert is_laminar(f)
    assert is_laminar(project_family(f))

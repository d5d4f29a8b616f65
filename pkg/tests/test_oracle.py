from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lamsep.decomposition import is_deciduous, leaf_bipartition, validate_td
from lamsep.errors import BadParams, NotConnectedGraph, NotTwoSided, TooLarge
from lamsep.graph import CutsetVerdict, build_graph, is_connected, is_minimal_cutset
from lamsep.oracle import (
    CHECKS,
    Verdict,
    check_all,
    connected_catalog,
    deciduize,
    elimination_decomposition,
    enum_mseps_bruteforce,
    gen_graph,
    gen_laminar_family,
    is_deciduous_reference,
    is_minimal_cutset_reference,
    meets_minimal_cutset_hypothesis,
    noncrossing_2sided_reference,
)
from lamsep.separation import ManySidedSeparation, SeparationFamily, crossing_pair, noncrossing, validate_msep

from conftest import graphs

M = ManySidedSeparation.of


def table(f):
    return [(sorted(s.cutset), [sorted(a) for a in s.sides]) for s in f]


def labelled_mseps(g):
    # every labelling V -> {0 (cutset), 1..n}; independent of the partition walk
    seen = set()
    for labels in product(range(g.n + 1), repeat=g.n):
        parts = {}
        for v, lab in zip(range(1, g.n + 1), labels):
            parts.setdefault(lab, set()).add(v)
        cut = parts.pop(0, set())
        if len(parts) < 2:
            continue
        s = M(g.n, *parts.values(), cutset=cut)
        if not [p for p in validate_msep(g, s) if not p.warning]:
            seen.add(s)
    return seen


class TestEnumeration:
    def test_small_counts(self, p3, k3):
        assert len(enum_mseps_bruteforce(p3)) == 1
        assert len(enum_mseps_bruteforce(k3)) == 0

    def test_p4_has_five(self):
        f = enum_mseps_bruteforce(gen_graph("path", n=4))
        assert table(f) == [
            ([1, 3], [[2], [4]]),
            ([2], [[1], [3, 4]]),
            ([2, 3], [[1], [4]]),
            ([2, 4], [[1], [3]]),
            ([3], [[1, 2], [4]]),
        ]

    def test_star(self, star3):
        assert len(enum_mseps_bruteforce(star3)) == 7

    @pytest.mark.parametrize("g", connected_catalog(4), ids=lambda g: f"n{g.n}m{g.m}")
    def test_matches_labelling_scan(self, g):
        assert set(enum_mseps_bruteforce(g)) == labelled_mseps(g)

    def test_guard(self):
        with pytest.raises(TooLarge):
            enum_mseps_bruteforce(gen_graph("path", n=10))


class TestReferences:
    def test_two_sided(self):
        s1 = M(5, {1}, {3, 4, 5}, cutset={2})
        s2 = M(5, {1, 2, 3}, {5}, cutset={4})
        assert noncrossing_2sided_reference(s1, s2)
        assert not noncrossing_2sided_reference(M(4, {2}, {4}, cutset={1, 3}), M(4, {1}, {3}, cutset={2, 4}))
        with pytest.raises(NotTwoSided):
            noncrossing_2sided_reference(M(4, {2}, {3}, {4}, cutset={1}), s1)

    @given(graphs(min_n=2, max_n=5), st.data())
    def test_two_sided_agrees_with_noncrossing(self, g, data):
        two = [s for s in enum_mseps_bruteforce(g) if s.k == 2]
        if two:
            a, b = data.draw(st.sampled_from(two)), data.draw(st.sampled_from(two))
            assert noncrossing_2sided_reference(a, b) == (noncrossing(a, b) is not None)

    def test_minimal_cutset(self, p5, c4):
        assert is_minimal_cutset_reference(p5, {3}) is CutsetVerdict.MINIMAL
        assert is_minimal_cutset_reference(p5, {2, 3}) is CutsetVerdict.NOT_MINIMAL
        assert is_minimal_cutset_reference(c4, {1}) is CutsetVerdict.NOT_CUTSET
        assert is_minimal_cutset_reference(c4, {1, 3}) is CutsetVerdict.MINIMAL

    @given(graphs(min_n=1, max_n=7, connected=True), st.data())
    def test_minimal_cutset_agrees(self, g, data):
        C = data.draw(st.sets(st.integers(1, g.n)))
        assert is_minimal_cutset_reference(g, C) is is_minimal_cutset(g, C)

    def test_deciduous(self):
        assert is_deciduous_reference([1, 2, 3], [(1, 2), (2, 3)])
        assert not is_deciduous_reference([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4)])
        assert is_deciduous_reference([1], [])


class TestGenerators:
    def test_shapes(self):
        assert gen_graph("grid", rows=2, cols=3).m == 7
        assert gen_graph("cycle", n=5).m == 5
        assert gen_graph("star", k=4).n == 5
        t = gen_graph("tree", seed=3, n=9)
        assert t.m == 8 and is_connected(t)

    def test_deterministic(self):
        for model in ("tree", "gnp"):
            a = gen_graph(model, seed=11, n=9, p=0.4)
            assert a == gen_graph(model, seed=11, n=9, p=0.4)
        assert len({gen_graph("gnp", seed=s, n=8, p=0.5) for s in range(10)}) > 1

    @pytest.mark.parametrize(
        "model,params",
        [("path", {"n": 0}), ("cycle", {"n": 2}), ("grid", {"rows": 2}), ("gnp", {"n": 4, "p": 1.5}), ("hyper", {"n": 3})],
    )
    def test_bad_params(self, model, params):
        with pytest.raises(BadParams):
            gen_graph(model, **params)

    def test_families(self, p5, c4, star3):
        assert table(gen_laminar_family(p5)[0]) == [
            ([2], [[1], [3, 4, 5]]),
            ([3], [[1, 2], [4, 5]]),
            ([4], [[1, 2, 3], [5]]),
        ]
        assert table(gen_laminar_family(c4)[0]) == [([1, 3], [[2], [4]])]
        assert table(gen_laminar_family(star3)[0]) == [([1], [[2], [3], [4]])]
        assert len(gen_laminar_family(c4, "exhaustive")) == 2
        assert gen_laminar_family(p5, seed=4) == gen_laminar_family(p5, seed=4)
        with pytest.raises(BadParams):
            gen_laminar_family(p5, "random")
        with pytest.raises(NotConnectedGraph):
            gen_laminar_family(build_graph(3, [(1, 2)]))

    def test_exhaustive_families_are_maximal(self):
        for g in connected_catalog(5):
            cands = set(enum_mseps_bruteforce(g))
            for f in gen_laminar_family(g, "exhaustive"):
                assert crossing_pair(f) is None
                for s in cands - set(f):
                    if meets_minimal_cutset_hypothesis(g, s):
                        assert any(noncrossing(s, t) is None for t in f)

    @given(graphs(min_n=1, max_n=8), st.integers(0, 10**6))
    def test_elimination_and_deciduize(self, g, seed):
        td = elimination_decomposition(g, seed)
        assert validate_td(g, td) == []
        d = deciduize(td)
        assert validate_td(g, d) == []
        assert is_deciduous(d)
        assert is_deciduous_reference(d.nodes, d.edges)
        assert set(td.nodes) <= set(d.nodes)
        leaf_bipartition(d)


class TestCheckAll:
    def test_p5_passes(self, p5):
        r = check_all(p5, gen_laminar_family(p5)[0])
        assert r.ok and r.hypothesis_met
        assert all(r.verdicts[c] is Verdict.PASS for c in CHECKS)

    def test_crossing_stops_early(self, c4):
        f = SeparationFamily(4, [M(4, {2}, {4}, cutset={1, 3}), M(4, {1}, {3}, cutset={2, 4})])
        r = check_all(c4, f)
        assert r.failed() == ["laminar"]
        assert all(r.verdicts[c] is Verdict.SKIPPED for c in CHECKS[1:])
        assert r.certificate["check"] == "laminar"
        assert r.certificate["graph"] == {"n": 4, "edges": [[1, 2], [1, 4], [2, 3], [3, 4]]}

    def test_non_minimal_member(self, p5):
        r = check_all(p5, SeparationFamily(5, [M(5, {1}, {4, 5}, cutset={2, 3})]))
        assert r.ok and not r.hypothesis_met
        assert r.verdicts["tau_equals_rho"] is Verdict.HYPOTHESIS_NOT_MET
        assert "tau_equals_rho" in r.observations

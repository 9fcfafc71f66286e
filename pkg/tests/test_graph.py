"""graph module: construction, pattern search, cograph structure,
probe certificates and the random instance generator."""

import pytest
from hypothesis import given, settings, strategies as st

from probecut import (
    GenerationTimeout,
    InvalidCertificate,
    InvalidEdge,
    InvalidInstance,
    NotACograph,
    NotConnected,
    PartitionedProbeGraph,
    ProbeCertificate,
    UnsupportedPattern,
    build_graph,
    cycle_pattern,
    diamond_pattern,
    dominating_edge,
    find_induced,
    independent_pattern,
    is_connected,
    is_p4_free,
    join_split,
    moshi_double,
    parse_pattern,
    path_pattern,
    random_probe_hfree,
    sp1_p4_pattern,
    star_pattern,
    two_p2_pattern,
    verify_probe_certificate,
)
from probecut.oracles import brute_probe_certificate

from conftest import (
    all_probes,
    complete_graph,
    cycle_graph,
    exhaustive_induced,
    path_graph,
    star_graph,
)


graphs_strategy = st.integers(min_value=1, max_value=7).flatmap(
    lambda n: st.builds(
        lambda bits: build_graph(
            n,
            [
                e
                for i, e in enumerate(
                    (u, v) for u in range(n) for v in range(u + 1, n)
                )
                if (bits >> i) & 1
            ],
        ),
        st.integers(min_value=0, max_value=(1 << (n * (n - 1) // 2)) - 1),
    )
)


class TestBuildGraph:
    def test_k2(self):
        g = build_graph(2, [(0, 1)])
        assert g.edges() == [(0, 1)]
        assert g.adj[0] == frozenset({1})

    def test_c3(self):
        g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
        assert g.edge_count() == 3

    def test_self_loop_rejected(self):
        with pytest.raises(InvalidEdge):
            build_graph(4, [(0, 1), (1, 1)])

    def test_out_of_range_rejected(self):
        with pytest.raises(InvalidEdge):
            build_graph(2, [(0, 2)])

    def test_duplicates_collapse(self):
        g = build_graph(3, [(0, 1), (1, 0), (0, 1)])
        assert g.edge_count() == 1

    @given(graphs_strategy)
    def test_adjacency_symmetric_no_loops(self, g):
        for v in range(g.n):
            assert v not in g.adj[v]
            for u in g.adj[v]:
                assert v in g.adj[u]


class TestConnectivity:
    def test_k2(self):
        assert is_connected(build_graph(2, [(0, 1)]))

    def test_two_isolated(self):
        assert not is_connected(build_graph(2, []))

    def test_p4(self):
        assert is_connected(path_graph(4))

    def test_empty_graph(self):
        assert not is_connected(build_graph(0, []))

    def test_single_vertex(self):
        assert is_connected(build_graph(1, []))


class TestFindInduced:
    def test_p4_in_p4_lexicographic(self):
        assert find_induced(path_graph(4), path_pattern(4)) == {
            0: 0, 1: 1, 2: 2, 3: 3,
        }

    def test_no_p4_in_star(self):
        assert find_induced(star_graph(3), path_pattern(4)) is None

    def test_2p2_in_c5_absent(self):
        # any two disjoint edges of a 5-cycle are joined by a third edge,
        # so there is no induced pair; the exhaustive oracle agrees
        assert not exhaustive_induced(cycle_graph(5), two_p2_pattern())
        assert find_induced(cycle_graph(5), two_p2_pattern()) is None

    def test_2p2_in_p5(self):
        g, h = path_graph(5), two_p2_pattern()
        assert exhaustive_induced(g, h)
        occurrence = find_induced(g, h)
        assert occurrence is not None
        placed = [occurrence[i] for i in range(4)]
        assert len(set(placed)) == 4
        for i in range(4):
            for j in range(i + 1, 4):
                assert h.graph.has_edge(i, j) == g.has_edge(placed[i], placed[j])

    def test_oversized_pattern_rejected(self):
        big = path_pattern(9)
        with pytest.raises(UnsupportedPattern):
            find_induced(complete_graph(10), big)

    @given(graphs_strategy)
    @settings(max_examples=60)
    def test_matches_exhaustive_oracle(self, g):
        for h in (
            path_pattern(4),
            star_pattern(3),
            two_p2_pattern(),
            diamond_pattern(),
            sp1_p4_pattern(1),
            independent_pattern(4),
            cycle_pattern(4),
        ):
            assert (find_induced(g, h) is not None) == exhaustive_induced(g, h)


class TestPatterns:
    def test_parse_round_trip(self):
        for name in ("P4", "C5", "K1,3", "2P2", "4P1", "P1+P4", "2P1+P4", "diamond"):
            assert parse_pattern(name).name == name

    def test_parse_unknown(self):
        with pytest.raises(UnsupportedPattern):
            parse_pattern("H17")

    def test_diamond_is_k4_minus_edge(self):
        d = diamond_pattern().graph
        assert d.edge_count() == 5 and not d.has_edge(2, 3)


class TestProbeCertificate:
    def test_p3_completed_to_triangle_is_2p2_free(self):
        g = path_graph(3)
        ppg = PartitionedProbeGraph(g, frozenset({1}), frozenset({0, 2}))
        cert = ProbeCertificate.of([(0, 2)])
        assert verify_probe_certificate(ppg, cert, two_p2_pattern())

    def test_empty_certificate_equals_plain_freeness(self):
        g = path_graph(4)
        ppg = all_probes(g)
        cert = ProbeCertificate.of([])
        assert verify_probe_certificate(ppg, cert, star_pattern(3))
        assert not verify_probe_certificate(ppg, cert, path_pattern(4))

    def test_moshi_k2_certificate_claw_free(self):
        ppg, cert = moshi_double(build_graph(2, [(0, 1)]))
        assert verify_probe_certificate(ppg, cert, star_pattern(3))

    def test_invalid_endpoint_rejected(self):
        g = path_graph(3)
        ppg = PartitionedProbeGraph(g, frozenset({1}), frozenset({0, 2}))
        with pytest.raises(InvalidCertificate):
            verify_probe_certificate(
                ppg, ProbeCertificate.of([(0, 1)]), two_p2_pattern()
            )

    def test_existing_edge_rejected(self):
        g = build_graph(4, [(0, 2), (1, 2), (1, 3)])
        ppg = PartitionedProbeGraph(g, frozenset({1, 2}), frozenset({0, 3}))
        with pytest.raises(InvalidCertificate):
            verify_probe_certificate(
                ppg, ProbeCertificate.of([(0, 3), (0, 0)]), two_p2_pattern()
            )

    def test_nonprobe_independence_enforced(self):
        with pytest.raises(InvalidInstance):
            PartitionedProbeGraph(
                path_graph(3), frozenset({1}), frozenset({0, 2}) | {1}
            )
        with pytest.raises(InvalidInstance):
            PartitionedProbeGraph(
                build_graph(2, [(0, 1)]), frozenset(), frozenset({0, 1})
            )


class TestCographMachinery:
    def test_c4_is_p4_free(self):
        assert is_p4_free(cycle_graph(4)) is True

    def test_p4_witness(self):
        assert is_p4_free(path_graph(4)) == (0, 1, 2, 3)

    def test_k14_is_p4_free(self):
        assert is_p4_free(star_graph(4)) is True
        assert not exhaustive_induced(star_graph(4), path_pattern(4))

    @given(graphs_strategy)
    @settings(max_examples=80)
    def test_agrees_with_pattern_search(self, g):
        assert (is_p4_free(g) is True) == (
            find_induced(g, path_pattern(4)) is None
        )

    def test_dominating_edge_k2(self):
        assert dominating_edge(build_graph(2, [(0, 1)])) == (0, 1)

    def test_dominating_edge_c4(self):
        g = cycle_graph(4)
        u, v = dominating_edge(g)
        assert g.has_edge(u, v)

    def test_dominating_edge_star_contains_centre(self):
        edge = dominating_edge(star_graph(3))
        assert 0 in edge
        # only centre-incident edges dominate, and those are all the edges
        assert set(star_graph(3).edges()) == {(0, 1), (0, 2), (0, 3)}

    def test_dominating_edge_postcondition(self):
        for seed in range(40):
            g = _random_connected_cograph(seed)
            if g.n < 2:
                continue
            u, v = dominating_edge(g)
            assert g.has_edge(u, v)
            for w in range(g.n):
                assert w in (u, v) or g.has_edge(w, u) or g.has_edge(w, v)

    def test_dominating_edge_rejects_p4(self):
        with pytest.raises(NotACograph):
            dominating_edge(path_graph(4))

    def test_dominating_edge_rejects_disconnected(self):
        with pytest.raises(NotConnected):
            dominating_edge(build_graph(2, []))

    def test_join_split_k2(self):
        assert join_split(build_graph(2, [(0, 1)])) == (
            frozenset({0}), frozenset({1}),
        )

    def test_join_split_c4(self):
        assert join_split(cycle_graph(4)) == (frozenset({0, 2}), frozenset({1, 3}))

    def test_join_split_star(self):
        assert join_split(star_graph(3)) == (frozenset({0}), frozenset({1, 2, 3}))

    def test_join_split_postcondition(self):
        for seed in range(40):
            g = _random_connected_cograph(seed)
            if g.n < 2:
                continue
            s1, s2 = join_split(g)
            assert s1 and s2 and not (s1 & s2)
            assert s1 | s2 == set(range(g.n))
            for a in s1:
                for b in s2:
                    assert g.has_edge(a, b)


def _random_connected_cograph(seed: int):
    """Random cograph built by unioning/joining smaller ones, then joined
    once more at the top so the result is connected."""
    import random

    rng = random.Random(seed)

    def grow(labels):
        if len(labels) == 1:
            return []
        k = rng.randint(1, len(labels) - 1)
        left, right = labels[:k], labels[k:]
        edges = grow(left) + grow(right)
        if rng.random() < 0.5:
            edges += [(u, v) for u in left for v in right]
        return edges

    n = rng.randint(2, 8)
    labels = list(range(n))
    k = rng.randint(1, n - 1)
    edges = grow(labels[:k]) + grow(labels[k:])
    edges += [(u, v) for u in labels[:k] for v in labels[k:]]
    return build_graph(n, edges)


class TestRandomProbeHfree:
    def test_k2_full_density(self):
        ppg, cert = random_probe_hfree(2, path_pattern(4), 1.0, seed=3)
        assert ppg.graph.edge_count() == 1
        assert len(ppg.nonprobes) <= 1
        assert cert.f_edges == frozenset()

    def test_outputs_always_verify(self):
        for seed in range(25):
            ppg, cert = random_probe_hfree(7, sp1_p4_pattern(1), 0.6, seed=seed)
            assert verify_probe_certificate(ppg, cert, sp1_p4_pattern(1))
            assert is_connected(ppg.graph)

    def test_matches_brute_certificate_search(self):
        ppg, cert = random_probe_hfree(8, sp1_p4_pattern(1), 0.5, seed=1)
        found = brute_probe_certificate(ppg, sp1_p4_pattern(1))
        assert found is not None
        assert verify_probe_certificate(ppg, found, sp1_p4_pattern(1))

    def test_deterministic_in_seed(self):
        a = random_probe_hfree(7, sp1_p4_pattern(2), 0.5, seed=42)
        b = random_probe_hfree(7, sp1_p4_pattern(2), 0.5, seed=42)
        assert a[0].graph == b[0].graph
        assert a[0].nonprobes == b[0].nonprobes
        assert a[1] == b[1]

    def test_timeout_when_impossible(self):
        # a 2P1-free graph is complete; density 0.3 never produces one at n=10
        with pytest.raises(GenerationTimeout):
            random_probe_hfree(
                10, independent_pattern(2), 0.3, seed=0, attempts=50
            )

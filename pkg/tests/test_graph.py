import json
import random
import re

import numpy as np
import pytest

from oracles import brute_intersect, count_blocks
from llsgraph import (
    BNProblem,
    ChainConfig,
    ComponentGraph,
    LLSComponent,
    VanishingSeq,
    all_sequences,
    build_graph,
    components_intersect,
    connected_component_count,
    default_chain,
    enumerate_components,
    is_connected,
    is_nonempty_component,
    merge_max,
)
from llsgraph.graph import intersection_matrix

EX = BNProblem(2, 2, 6, (0, 2, 3), (0, 3, 5))
ELLIPTIC2 = ChainConfig((1, 1))


def comp_of(s):
    return LLSComponent((VanishingSeq(s, 6),))


class TestIntersection:
    def test_first_pair_intersects(self):
        assert components_intersect(comp_of((1, 3, 6)), comp_of((2, 3, 6)), ELLIPTIC2, EX)

    def test_pairs_across_groups_do_not(self):
        for x in [(1, 3, 6), (2, 3, 6)]:
            for y in [(1, 4, 5), (2, 4, 5)]:
                assert not components_intersect(comp_of(x), comp_of(y), ELLIPTIC2, EX)

    def test_reflexive_and_symmetric(self):
        p = BNProblem(3, 1, 5, (0, 1), (0, 2))
        cfg = default_chain(3)
        comps = enumerate_components(p, cfg)
        for c1 in comps:
            assert components_intersect(c1, c1, cfg, p)
            for c2 in comps:
                assert components_intersect(c1, c2, cfg, p) == components_intersect(c2, c1, cfg, p)

    def test_edges_have_nonempty_merged_aspects(self):
        p = BNProblem(3, 2, 6, (0, 1, 3), (0, 2, 3))
        cfg = default_chain(3)
        gr = build_graph(p, cfg)
        assert gr.edges
        for u, v in gr.edges:
            for genus, (a1, b1), (a2, b2) in zip(cfg.genera, gr.vertices[u].aspects(p),
                                                 gr.vertices[v].aspects(p)):
                assert is_nonempty_component(genus, p.r, p.d, merge_max(a1, a2), merge_max(b1, b2))

    def test_vectorised_matrix_matches_scalar_and_oracle(self):
        rng = random.Random(7)
        print("seed 7")
        for _ in range(40):
            r = rng.randint(0, 2)
            d = rng.randint(r, 6)
            genera = tuple(rng.randint(0, 1) for _ in range(rng.randint(1, 3)))
            seqs = all_sequences(r, d)
            p = BNProblem(sum(genera), r, d, rng.choice(seqs), rng.choice(seqs))
            cfg = ChainConfig(genera)
            verts = enumerate_components(p, cfg)
            m = intersection_matrix(verts, cfg, p)
            raw = [tuple(s.entries for s in c.node_b) for c in verts]
            for i, c1 in enumerate(verts):
                for j, c2 in enumerate(verts):
                    expected = brute_intersect(raw[i], raw[j], r, d, p.a.entries, p.b.entries, genera)
                    assert m[i, j] == expected == components_intersect(c1, c2, cfg, p)


class TestBuildGraph:
    def test_disconnected_example(self):
        gr = build_graph(EX, ELLIPTIC2)
        labels = [c.node_b[0].entries for c in gr.vertices]
        edges = {frozenset((labels[u], labels[v])) for u, v in gr.edges}
        assert len(gr.vertices) == 4
        assert edges == {frozenset({(1, 3, 6), (2, 3, 6)}), frozenset({(1, 4, 5), (2, 4, 5)})}
        assert connected_component_count(gr) == 2
        assert not is_connected(gr)

    def test_empty_graph(self):
        p = BNProblem(1, 2, 6, (0, 2, 3), (1, 4, 6))
        gr = build_graph(p, default_chain(1))
        assert gr.vertices == () and not gr.edges
        assert connected_component_count(gr) == 0
        assert not is_connected(gr)

    def test_single_vertex(self):
        p = BNProblem(1, 1, 3, (0, 1), (0, 1))
        gr = build_graph(p, default_chain(1))
        assert len(gr.vertices) == 1 and not gr.edges
        assert is_connected(gr)

    def test_complete_graph_is_one_component(self):
        k = 5
        verts = tuple(LLSComponent((VanishingSeq((i,), 6),)) for i in range(k))
        edges = frozenset((i, j) for i in range(k) for j in range(i + 1, k))
        gr = ComponentGraph(BNProblem(1, 0, 6, (0,), (0,)), ChainConfig((1, 0)), verts, edges)
        assert connected_component_count(gr) == 1

    def test_rejects_self_loops(self):
        verts = (LLSComponent(()),)
        with pytest.raises(ValueError):
            ComponentGraph(BNProblem(1, 0, 1, (0,), (0,)), ChainConfig((1,)), verts, frozenset({(0, 0)}))

    def test_partition_matches_independent_dfs(self):
        for a in all_sequences(2, 6):
            gr = build_graph(BNProblem(2, 2, 6, a, (0, 3, 5)), ELLIPTIC2)
            assert connected_component_count(gr) == count_blocks(len(gr.vertices), gr.edges)
            assert sorted(k for block in gr.partition() for k in block) == list(range(len(gr.vertices)))

    def test_counts_invariant_under_relabeling(self):
        p = BNProblem(3, 2, 6, (0, 1, 3), (0, 2, 3))
        cfg = default_chain(3)
        gr = build_graph(p, cfg)
        rng = random.Random(3)
        perm = list(range(len(gr.vertices)))
        rng.shuffle(perm)
        shuffled = [gr.vertices[k] for k in perm]
        m = intersection_matrix(shuffled, cfg, p)
        us, vs = np.nonzero(np.triu(m, k=1))
        assert len(us) == len(gr.edges)
        assert count_blocks(len(shuffled), zip(us.tolist(), vs.tolist())) == connected_component_count(gr)

    def test_connected_whenever_rho_hat_positive_on_small_range(self):
        from llsgraph import rho_hat
        for g in range(4):
            for r in range(2):
                for d in range(r, 6):
                    for a in all_sequences(r, d):
                        for b in all_sequences(r, d):
                            p = BNProblem(g, r, d, a, b)
                            if rho_hat(p) >= 1:
                                assert is_connected(build_graph(p, default_chain(g)))


class TestExport:
    def test_dot(self):
        dot = build_graph(EX, ELLIPTIC2).to_dot()
        assert dot.startswith("graph lls {")
        assert len(re.findall(r"^\s*v\d+ \[label=", dot, re.M)) == 4
        assert len(re.findall(r"^\s*v\d+ -- v\d+;", dot, re.M)) == 2
        assert 'label="b1=(1,3,6)"' in dot

    def test_json_round_trip(self):
        gr = build_graph(EX, ELLIPTIC2)
        data = json.loads(json.dumps(gr.to_json()))
        assert data["connected_components"] == 2
        assert data["partition"] == [[0, 2], [1, 3]]
        back = ComponentGraph.from_json(data)
        assert back == gr
        assert back.partition() == gr.partition()

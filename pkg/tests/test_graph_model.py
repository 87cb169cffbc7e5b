import json
import random

import pytest
from hypothesis import given, strategies as st

from vpoly.errors import ContractLoopError, InputError
from vpoly.graph_model import (ComponentDecomposition, Weight, WeightedGraph,
                               banana_graph, build_family, canonical_encoding,
                               cycle_graph, full_binary_tree, graph_from_json,
                               graph_to_json, line_graph,
                               one_plus_1_over_n_tree)

from helpers import bfs_component_count, random_multigraph


def triangle(weights=(1, 1, 1)):
    return cycle_graph(3, [(w,) for w in weights])


# -- weights ------------------------------------------------------------------

coords = st.lists(st.integers(0, 9), min_size=2, max_size=2).map(tuple)


@given(coords, coords, coords)
def test_weight_addition_commutative_associative(a, b, c):
    wa, wb, wc = Weight(a), Weight(b), Weight(c)
    assert wa + wb == wb + wa
    assert (wa + wb) + wc == wa + (wb + wc)


def test_weight_validation():
    with pytest.raises(InputError):
        Weight(())
    with pytest.raises(InputError):
        Weight((-1,))
    with pytest.raises(InputError):
        Weight((1.5,))


def test_weight_dim_mismatch_rejected():
    with pytest.raises(InputError):
        WeightedGraph(2, [("v1", (1,))], [])
    with pytest.raises(InputError):
        Weight((1,)) + Weight((1, 2))


# -- construction errors ---------------------------------------------------------

def test_duplicate_ids_rejected():
    with pytest.raises(InputError):
        WeightedGraph(1, [("v1", (1,)), ("v1", (2,))], [])
    with pytest.raises(InputError):
        WeightedGraph(1, [("v1", (1,))], [("e1", ("v1", "v1")), ("e1", ("v1", "v1"))])


def test_unknown_endpoint_rejected():
    with pytest.raises(InputError):
        WeightedGraph(1, [("v1", (1,))], [("e1", ("v1", "v9"))])


# -- deletion ------------------------------------------------------------------

def test_delete_triangle_edge_leaves_path():
    g = triangle().delete_edge("e1")
    assert g.edge_ids() == ["e2", "e3"]
    assert g.vertex_ids() == ["v1", "v2", "v3"]
    assert g.is_connected()


def test_delete_single_edge_leaves_isolated_vertices():
    g = line_graph(2, [(1,), (2,)]).delete_edge("e1")
    assert g.n_edges == 0
    assert g.n_vertices == 2
    assert not g.is_connected()


def test_delete_loop_leaves_vertex():
    g = WeightedGraph(1, [("v1", (1,))], [("e1", ("v1", "v1"))]).delete_edge("e1")
    assert g.n_edges == 0 and g.n_vertices == 1


def test_delete_unknown_edge():
    with pytest.raises(InputError):
        triangle().delete_edge("e9")


# -- contraction -----------------------------------------------------------------

def test_contract_single_edge_adds_weights():
    g = line_graph(2, [(1,), (2,)]).contract_edge("e1")
    assert g.n_vertices == 1 and g.n_edges == 0
    assert g.weight_of("v1") == Weight((3,))


def test_contract_triangle_edge_gives_parallel_pair():
    g = triangle().contract_edge("e1")
    assert g.n_vertices == 2 and g.n_edges == 2
    assert g.weight_of("v1") == Weight((2,))
    assert g.weight_of("v3") == Weight((1,))
    assert set(g.ends_of("e2")) == {"v1", "v3"}
    assert set(g.ends_of("e3")) == {"v1", "v3"}


def test_contract_loop_rejected():
    g = WeightedGraph(1, [("v1", (1,))], [("e1", ("v1", "v1"))])
    with pytest.raises(ContractLoopError):
        g.contract_edge("e1")


def test_contract_can_create_loop():
    g = triangle().contract_edge("e1").contract_edge("e2")
    assert g.n_vertices == 1
    assert g.is_loop("e3")
    assert g.weight_of("v1") == Weight((3,))


def test_contract_counts_and_weight_conservation():
    rng = random.Random(5)
    for _ in range(50):
        g = random_multigraph(rng, max_edges=6)
        non_loops = [e for e in g.edge_ids() if not g.is_loop(e)]
        if not non_loops:
            continue
        e = rng.choice(non_loops)
        h = g.contract_edge(e)
        assert h.n_vertices == g.n_vertices - 1
        assert h.n_edges == g.n_edges - 1
        total = lambda gr: sum(w.coords[0] for _, w in gr.vertices)
        assert total(h) == total(g)


def test_delete_contract_commute_on_disjoint_edges():
    rng = random.Random(17)
    found = 0
    while found < 30:
        g = random_multigraph(rng, max_vertices=6, max_edges=8)
        pairs = [(e, f) for e in g.edge_ids() for f in g.edge_ids()
                 if e < f and not set(g.ends_of(e)) & set(g.ends_of(f))
                 and not g.is_loop(e) and not g.is_loop(f)]
        if not pairs:
            continue
        e, f = rng.choice(pairs)
        found += 1
        a = g.contract_edge(e).contract_edge(f)
        b = g.contract_edge(f).contract_edge(e)
        assert canonical_encoding(a) == canonical_encoding(b)
        c = g.delete_edge(e).contract_edge(f)
        d = g.contract_edge(f).delete_edge(e)
        assert canonical_encoding(c) == canonical_encoding(d)


# -- components -------------------------------------------------------------------

def test_components_empty_subset():
    dec = triangle().components([])
    assert dec.b0 == 3
    assert dec.blocks == (("v1",), ("v2",), ("v3",))
    assert all(w == Weight((1,)) for w in dec.weights)


def test_components_single_edge():
    dec = triangle().components(["e1"])
    assert dec.b0 == 2
    assert dec.blocks == (("v1", "v2"), ("v3",))
    assert dec.weights == (Weight((2,)), Weight((1,)))


def test_components_full_subset():
    dec = triangle().components(["e1", "e2", "e3"])
    assert dec.b0 == 1
    assert dec.weights == (Weight((3,)),)


def test_components_unknown_edge():
    with pytest.raises(InputError):
        triangle().components(["e7"])


def test_components_partition_and_bfs_agreement():
    rng = random.Random(3)
    for _ in range(60):
        g = random_multigraph(rng)
        eids = g.edge_ids()
        subset = [e for e in eids if rng.random() < 0.5]
        dec = g.components(subset)
        everyone = [v for block in dec.blocks for v in block]
        assert sorted(everyone) == g.vertex_ids()
        assert len(everyone) == len(set(everyone))
        for block, w in zip(dec.blocks, dec.weights):
            s = Weight(g.weight_of(block[0]).coords)
            for v in block[1:]:
                s = s + g.weight_of(v)
            assert s == w
        assert dec.b0 == bfs_component_count(g, subset)


def test_connected_iff_single_component():
    rng = random.Random(9)
    for _ in range(40):
        g = random_multigraph(rng)
        assert g.is_connected() == (g.components(g.edge_ids()).b0 == 1)


# -- families -----------------------------------------------------------------------

def test_line_family():
    g = line_graph(3)
    assert g.vertex_ids() == ["v1", "v2", "v3"]
    assert [(e, set(ends)) for e, ends in g.edges] == [
        ("e1", {"v1", "v2"}), ("e2", {"v2", "v3"})]


def test_cycle_family_closing_edge():
    g = cycle_graph(4)
    assert set(g.ends_of("e4")) == {"v4", "v1"}
    assert g.n_edges == 4


def test_banana_families():
    b0 = banana_graph(0, 1, 2)
    assert b0.n_vertices == 2 and b0.n_edges == 1 and not b0.is_loop("e1")
    assert b0.weight_of("v1") == Weight((1,)) and b0.weight_of("v2") == Weight((2,))
    b1 = banana_graph(1, 1, 2)
    assert b1.n_edges == 2
    assert set(b1.ends_of("e1")) == set(b1.ends_of("e2")) == {"v1", "v2"}
    with pytest.raises(InputError):
        banana_graph(1, 2, 2)
    with pytest.raises(InputError):
        banana_graph(1, 0, 2)
    with pytest.raises(InputError):
        banana_graph(-1, 1, 2)


def test_full_binary_tree_shape():
    t = full_binary_tree(2, [1, 2, 3, 4], internal_weight=9)
    assert t.n_vertices == 7 and t.n_edges == 6
    assert t.is_tree()
    assert [t.weight_of(f"v{j}").coords[0] for j in range(4, 8)] == [1, 2, 3, 4]
    assert all(t.weight_of(f"v{j}").coords[0] == 9 for j in range(1, 4))
    single = full_binary_tree(0, [5])
    assert single.n_vertices == 1 and single.n_edges == 0


def test_one_plus_1_over_n_tree_branching_ratio():
    for n in (1, 2, 3):
        for internal in (1, 2, 3, 5, 8):
            t = one_plus_1_over_n_tree(n, internal)
            assert t.is_tree()
            # children counts from the root v1
            child_count = {vid: 0 for vid, _ in t.vertices}
            parent = {"v1": None}
            order = ["v1"]
            adj = {vid: [] for vid, _ in t.vertices}
            for _, (a, b) in t.edges:
                adj[a].append(b)
                adj[b].append(a)
            i = 0
            while i < len(order):
                v = order[i]
                i += 1
                for u in adj[v]:
                    if u != parent.get(v):
                        parent[u] = v
                        child_count[v] += 1
                        order.append(u)
            internals = [v for v, c in child_count.items() if c > 0]
            branching = [v for v, c in child_count.items() if c == 2]
            leaves = [v for v, c in child_count.items() if c == 0]
            assert len(internals) == internal
            assert len(branching) == -(-internal // n)  # ceil
            assert len(leaves) == len(branching) + 1
            assert all(c <= 2 for c in child_count.values())


def test_build_family_dispatch():
    assert build_family("line", n=3) == line_graph(3)
    assert build_family("banana", m=1, c1=1, c2=2) == banana_graph(1, 1, 2)
    with pytest.raises(InputError):
        build_family("moebius", n=3)


def test_family_size_validation():
    with pytest.raises(InputError):
        line_graph(0)
    with pytest.raises(InputError):
        cycle_graph(2, [(1,)])
    with pytest.raises(InputError):
        one_plus_1_over_n_tree(0, 3)


# -- json ---------------------------------------------------------------------------

def test_graph_json_round_trip_byte_stable():
    rng = random.Random(13)
    for _ in range(20):
        g = random_multigraph(rng)
        text = graph_to_json(g)
        h = graph_from_json(text)
        assert canonical_encoding(h) == canonical_encoding(g)
        assert graph_to_json(h) == text


def test_graph_json_schema():
    d = json.loads(graph_to_json(banana_graph(0, 1, 2)))
    assert d == {"weight_dim": 1,
                 "vertices": [{"id": "v1", "weight": [1]}, {"id": "v2", "weight": [2]}],
                 "edges": [{"id": "e1", "ends": ["v1", "v2"]}]}


def test_graph_json_malformed():
    with pytest.raises(InputError):
        graph_from_json("{not json")
    with pytest.raises(InputError):
        graph_from_json(json.dumps({"weight_dim": 1, "vertices": []}))


def test_component_decomposition_is_value():
    dec = triangle().components(["e1"])
    assert isinstance(dec, ComponentDecomposition)
    assert dec == triangle().components(["e1"])

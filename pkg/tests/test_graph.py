import numpy as np
import pytest

from flowpreserve.flow import max_flow
from flowpreserve.generators import random_digraph
from flowpreserve.graph import (CapGraph, DiGraph, GraphParseError,
                                match_edge_ids, parse_any_edge_list,
                                parse_cap_edge_list, parse_edge_list,
                                serialize_cap_edge_list, serialize_edge_list)

from bruteforce import menger_max_flow, reaches


def test_restrict_in_edges_empty_keep(path3):
    g = path3.restrict_in_edges(2, set())
    assert g.edge_list() == [(0, 0, 1)]


def test_restrict_in_edges_identity(diamond):
    assert diamond.restrict_in_edges(3, {2, 3}) == diamond


def test_restrict_in_edges_drops_flow(diamond):
    before = max_flow(diamond, 0, 3).value
    after = max_flow(diamond.restrict_in_edges(3, {2}), 0, 3).value
    assert (before, after) == (2, 1)


def test_restrict_in_edges_rejects_non_in_edge(diamond):
    with pytest.raises(ValueError):
        diamond.restrict_in_edges(3, {0})


def test_remove_edges_empty(diamond):
    assert diamond.remove_edges(set()) == diamond


def test_remove_edges_keeps_ids(diamond):
    g = diamond.remove_edges({0})
    assert g.eids.tolist() == [1, 2, 3]
    assert max_flow(g, 0, 3).value == 1


def test_remove_edges_both_paths_cut(diamond):
    g = diamond.remove_edges({0, 3})
    assert not reaches(g, 0, 3)
    assert max_flow(g, 0, 3).value == 0


def test_remove_edges_unknown_id(diamond):
    with pytest.raises(ValueError):
        diamond.remove_edges({9})


def test_add_edge_fresh_ids():
    g = DiGraph.from_edges(2, [])
    g1, e1 = g.add_edge(0, 1)
    assert e1 == 0
    g2, e2 = g1.add_edge(0, 1)
    assert e2 == 1
    assert g2.m == 2  # parallel edges with distinct ids


def test_add_edge_shortcut_raises_flow(diamond):
    g, _ = diamond.add_edge(0, 3)
    assert max_flow(g, 0, 3).value == 3
    assert menger_max_flow(g, 0, 3) == 3


def test_add_edge_out_of_range(diamond):
    with pytest.raises(ValueError):
        diamond.add_edge(0, 4)


def test_self_loops_and_parallel_edges_representable():
    g = DiGraph.from_edges(2, [(0, 0), (0, 1), (0, 1)])
    assert g.out_degree(0) == 3
    assert g.in_degree(0) == 1
    assert max_flow(g, 0, 1).value == 2


def test_parse_simple_path():
    g = parse_edge_list("3 2\n0 1\n1 2\n")
    assert g.n == 3
    assert g.edge_list() == [(0, 0, 1), (1, 1, 2)]


def test_parse_serialize_round_trip():
    text = "4 4\n0 1\n0 2\n1 3\n2 3\n"
    assert serialize_edge_list(parse_edge_list(text)) == text


def test_parse_comments_not_counted():
    g = parse_edge_list("# header\n3 2\n0 1\n# mid\n1 2\n")
    assert g.m == 2


def test_parse_vertex_out_of_range_message():
    with pytest.raises(GraphParseError, match=r"vertex index out of range, line 2"):
        parse_edge_list("2 1\n0 5\n")


def test_parse_malformed_line():
    with pytest.raises(GraphParseError, match=r"line 3"):
        parse_edge_list("2 2\n0 1\n0\n")


def test_parse_truncated():
    with pytest.raises(GraphParseError, match="unexpected end of input"):
        parse_edge_list("3 2\n0 1\n")


def test_parse_trailing_data():
    with pytest.raises(GraphParseError, match="unexpected trailing data"):
        parse_edge_list("2 1\n0 1\n1 0\n")


def test_cap_parse_nonpositive_capacity():
    with pytest.raises(GraphParseError, match=r"nonpositive capacity, line 3"):
        parse_cap_edge_list("2 2\n0 1 2\n1 0 0\n")


def test_cap_round_trip():
    text = "3 2\n0 1 2\n1 2 3\n"
    assert serialize_cap_edge_list(parse_cap_edge_list(text)) == text


def test_parse_any_picks_format():
    assert isinstance(parse_any_edge_list("2 1\n0 1\n"), DiGraph)
    assert isinstance(parse_any_edge_list("2 1\n0 1 4\n"), CapGraph)


def test_degree_sums_match_edge_count():
    for seed in range(5):
        g = random_digraph(7, 12, seed)
        assert sum(g.in_degree(v) for v in range(g.n)) == g.m
        assert sum(g.out_degree(v) for v in range(g.n)) == g.m


def test_remove_and_restrict_commute_on_disjoint_sets():
    g = random_digraph(6, 14, 3)
    v = 5
    in_ids = g.in_edge_ids(v).tolist()
    keep = set(in_ids[:1])
    other = [e for e, _, _ in g.edge_list() if e not in in_ids][:3]
    a = g.remove_edges(other).restrict_in_edges(v, keep)
    b = g.restrict_in_edges(v, keep).remove_edges(other)
    assert a == b


def test_adjacency_agrees_with_edge_list():
    g = random_digraph(6, 10, 11)
    for v in range(g.n):
        from_list = sorted(e for e, u, _ in g.edge_list() if u == v)
        assert g.out_edge_ids(v).tolist() == from_list


def test_arrays_immutable(diamond):
    with pytest.raises(ValueError):
        diamond.tails[0] = 3


def test_match_edge_ids_parallel_bundles():
    g = DiGraph.from_edges(2, [(0, 1), (0, 1), (1, 0)])
    sub = parse_edge_list("2 2\n0 1\n1 0\n")
    aligned = match_edge_ids(g, sub)
    assert aligned.eids.tolist() == [0, 2]


def test_match_edge_ids_rejects_foreign_edge():
    g = DiGraph.from_edges(3, [(0, 1)])
    with pytest.raises(ValueError):
        match_edge_ids(g, parse_edge_list("3 1\n1 2\n"))


def test_capgraph_expansion_counts():
    cg = CapGraph.from_edges(2, [(0, 1, 3), (1, 0, 1)])
    g, origin = cg.expand()
    assert g.m == 4
    assert origin.tolist() == [0, 0, 0, 1]
    assert max_flow(g, 0, 1).value == 3

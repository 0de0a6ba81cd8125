import itertools

import pytest

from flowpreserve.flow import decompose_paths, max_flow
from flowpreserve.generators import (lower_bound_instance, random_capgraph,
                                     random_digraph)
from flowpreserve.graph import CapGraph, DiGraph
from flowpreserve.preserver import (capacitated_ftbfp, ftbfp,
                                    ftbfp_single_dest, ftrs,
                                    ftrs_single_dest)
from flowpreserve.verify import verify_ftbfp

from bruteforce import fault_sets, reaches


def test_single_path_keeps_only_in_edge(path3):
    for k in range(3):
        assert ftrs_single_dest(path3, 0, 2, k).kept_edges == frozenset({1})


def test_diamond_k1_needs_both_in_edges(diamond):
    sel = ftrs_single_dest(diamond, 0, 3, 1)
    assert sel.kept_edges == frozenset({2, 3})
    # dropping either in-edge breaks reachability under some 2-fault set
    # (budget k + f - 1 = 2); the full selection never does
    edge_ids = [e for e, _, _ in diamond.edge_list()]
    for keep in ({2}, {3}):
        restricted = diamond.restrict_in_edges(3, keep)
        assert any(reaches(diamond, 0, 3, F)
                   and not reaches(restricted, 0, 3, F)
                   for F in fault_sets(edge_ids, 2))
    full = diamond.restrict_in_edges(3, sel.kept_edges)
    for F in fault_sets(edge_ids, 2):
        assert reaches(diamond, 0, 3, F) == reaches(full, 0, 3, F)


def test_ftrs_selection_exhaustive_fault_enumeration():
    for seed in range(12):
        g = random_digraph(6, 6 + seed % 7, seed * 19 + 3)
        s, t = 0, g.n - 1
        f = max_flow(g, s, t).value
        for k in (0, 1, 2):
            sel = ftrs_single_dest(g, s, t, k)
            assert len(sel.kept_edges) <= (2 ** k) * max(f, 1)
            restricted = g.restrict_in_edges(t, sel.kept_edges)
            budget = max(0, k + f - 1)
            for F in fault_sets([e for e, _, _ in g.edge_list()], budget):
                assert (reaches(g, s, t, F)
                        == reaches(restricted, s, t, F))


def test_cut_trace_growth():
    for seed in range(10):
        g = random_digraph(7, 12, seed * 23 + 9)
        sel = ftrs_single_dest(g, 0, g.n - 1, 2)
        sizes = sel.cut_sizes
        f = max_flow(g, 0, g.n - 1).value
        assert sizes[0] == f
        for a, b in zip(sizes, sizes[1:]):
            assert b <= 2 * a
        assert len(sel.source_set_sizes) == 3


def test_lambda_one_selection_is_small():
    for seed in range(6):
        g = random_digraph(6, 10, seed + 50)
        for k in (0, 1, 2):
            sel = ftbfp_single_dest(g, 0, g.n - 1, 1, k)
            assert len(sel) <= 2 ** k


def test_abundant_flow_keeps_exactly_lam_plus_k():
    # four edge-disjoint two-edge paths: f=4 exceeds lam+k=3
    g = DiGraph.from_edges(6, [(0, 2), (2, 1), (0, 3), (3, 1),
                               (0, 4), (4, 1), (0, 5), (5, 1)])
    sel = ftbfp_single_dest(g, 0, 1, 2, 1)
    assert len(sel) == 3


def test_selection_size_bound():
    for seed in range(10):
        g = random_digraph(7, 13, seed * 7 + 29)
        for lam, k in [(1, 2), (2, 1), (2, 2), (3, 2)]:
            f = max_flow(g, 0, g.n - 1, cap=lam + k).value
            sel = ftbfp_single_dest(g, 0, g.n - 1, lam, k)
            assert len(sel) <= (2 ** k) * min(max(f, 1), lam + k)
            assert len(sel) <= (2 ** k) * lam


def test_tree_is_its_own_preserver():
    tree = DiGraph.from_edges(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)])
    r = ftbfp(tree, 0, 2, 2)
    assert r.h == tree
    assert r.max_in_degree == 1


def test_star_is_its_own_preserver():
    star = DiGraph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    assert ftrs(star, 0, 2).h == star


def test_source_in_edges_dropped():
    g = DiGraph.from_edges(3, [(0, 1), (1, 2), (2, 0), (1, 0)])
    r = ftrs(g, 0, 1)
    assert r.h.in_degree(0) == 0
    assert verify_ftbfp(g, r.h, 0, 1, 1) is None


def test_unreachable_vertices_keep_nothing():
    g = DiGraph.from_edges(4, [(1, 2), (2, 3), (3, 1)])
    r = ftbfp(g, 0, 2, 1)
    assert r.h.m == 0
    assert verify_ftbfp(g, r.h, 0, 2, 1) is None


def test_complete_graph_k4():
    edges = [(u, v) for u in range(4) for v in range(4) if u != v]
    g = DiGraph.from_edges(4, edges)
    r = ftrs(g, 0, 1)
    assert all(r.h.in_degree(v) <= 2 for v in range(4))
    assert verify_ftbfp(g, r.h, 0, 1, 1) is None


def test_extremal_instance_preserver_is_whole_graph():
    inst = lower_bound_instance(1, 1, 12)
    r = ftbfp(inst.g, inst.source, 1, 1)
    assert r.h == inst.g  # every edge is forced at these parameters


def test_random_suite_verifies():
    for seed in range(10):
        g = random_digraph(8, 14, seed * 3 + 11)
        for lam, k in [(1, 1), (2, 1), (2, 2), (3, 0)]:
            r = ftbfp(g, 0, lam, k)
            assert verify_ftbfp(g, r.h, 0, lam, k) is None


def test_chain_steps_are_preservers_of_previous_step():
    # rebuild the per-destination chain with public ops and verify each link
    g = random_digraph(6, 11, 77)
    s, lam, k = 0, 2, 1
    current = g.restrict_in_edges(s, set())
    assert verify_ftbfp(g, current, s, lam, k) is None
    for v in range(g.n):
        if v == s:
            continue
        nxt = current.restrict_in_edges(
            v, ftbfp_single_dest(current, s, v, lam, k))
        assert verify_ftbfp(current, nxt, s, lam, k) is None
        assert nxt.m <= current.m
        current = nxt
    assert current == ftbfp(g, s, lam, k).h


def test_restricting_one_vertex_never_starves_another():
    # selecting any max-flow's in-edges at v keeps every other vertex's
    # clamped flow intact
    for seed in range(8):
        g = random_digraph(6, 12, seed * 13 + 1)
        s, lam = 0, 2
        for v in range(1, g.n):
            flow = max_flow(g, s, v, cap=lam)
            paths = decompose_paths(g, s, v, flow)
            kept = frozenset(p[-1] for p in paths)
            h = g.restrict_in_edges(v, kept)
            for t in range(1, g.n):
                want = min(lam, max_flow(g, s, t).value)
                assert max_flow(h, s, t, cap=lam).value >= want


def test_determinism():
    g = random_digraph(8, 16, 5)
    a = ftbfp(g, 0, 2, 2)
    b = ftbfp(g, 0, 2, 2)
    assert a.h == b.h and a.kept_in_edges == b.kept_in_edges
    assert a.audit == b.audit


def test_ftrs_matches_lam_one_ftbfp():
    g = random_digraph(7, 12, 9)
    assert ftrs(g, 0, 2).h == ftbfp(g, 0, 1, 2).h


def test_invalid_params(diamond):
    with pytest.raises(ValueError):
        ftbfp(diamond, 0, 0, 1)
    with pytest.raises(ValueError):
        ftbfp(diamond, 0, 1, -1)
    with pytest.raises(ValueError):
        ftbfp_single_dest(diamond, 3, 3, 1, 1)


def test_capacitated_all_unit_matches_plain(diamond):
    cg = CapGraph.from_edges(4, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)])
    sub = capacitated_ftbfp(cg, 0, 1, 1)
    assert sub.base == ftbfp(diamond, 0, 1, 1).h


def test_capacitated_single_fat_edge_survives():
    cg = CapGraph.from_edges(2, [(0, 1, 5)])
    sub = capacitated_ftbfp(cg, 0, 2, 1)
    assert sub.m == 1 and sub.capacity(0) == 5


def enum_decrements(caps, k):
    def rec(i, left):
        if i == len(caps):
            yield ()
            return
        for take in range(min(left, caps[i]) + 1):
            for rest in rec(i + 1, left - take):
                yield (take,) + rest
    yield from rec(0, k)


def expand_with_caps(base, cap_of):
    edges = []
    for e, u, v in base.edge_list():
        edges.extend([(u, v)] * max(0, cap_of.get(e, 0)))
    return DiGraph.from_edges(base.n, edges)


def test_capacitated_preserves_clamped_flows_under_decrements():
    for seed in range(6):
        cg = random_capgraph(5, 7, 3, seed * 3 + 2)
        lam, k = 2, 2
        sub = capacitated_ftbfp(cg, 0, lam, k)
        caps = dict(zip(cg.base.eids.tolist(), cg.caps.tolist()))
        sub_ids = {e for e, _, _ in sub.base.edge_list()}
        for dec in enum_decrements(cg.caps.tolist(), k):
            cstar = {e: caps[e] - d
                     for e, d in zip(cg.base.eids.tolist(), dec)}
            ge = expand_with_caps(cg.base, cstar)
            he = expand_with_caps(sub.base,
                                  {e: cstar[e] for e in sub_ids})
            for t in range(1, cg.n):
                assert (max_flow(ge, 0, t, cap=lam).value
                        == max_flow(he, 0, t, cap=lam).value)

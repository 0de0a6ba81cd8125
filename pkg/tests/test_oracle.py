import itertools

import pytest

from flowpreserve.flow import max_flow
from flowpreserve.generators import random_digraph, splitmix64
from flowpreserve.graph import DiGraph
from flowpreserve.oracle import (AT_LEAST, EXACT, OracleLoadError,
                                 QueryResult, build_oracle, load_oracle,
                                 query, save_oracle)

from bruteforce import reachable


def test_tree_oracle_family_shape():
    tree = DiGraph.from_edges(4, [(0, 1), (1, 2), (1, 3)])
    o = build_oracle(tree, 1, 1)
    for x in range(4):
        hx = o.family[x]
        kept_vertices = {u for _, u, v in hx.edge_list()} | \
                        {v for _, u, v in hx.edge_list()}
        assert kept_vertices <= reachable(tree, x) | {x}
        # a tree's out-reachable part is exactly what survives
        assert hx.m == len(reachable(tree, x)) - 1


def test_storage_bound():
    g = random_digraph(8, 20, 2)
    lam, k = 2, 1
    o = build_oracle(g, lam, k)
    for hx in o.family.values():
        assert hx.m <= lam * 2 ** k * g.n
    assert o.total_stored_edges() <= g.n * lam * 2 ** k * g.n


def test_query_diamond_no_faults(diamond):
    o = build_oracle(diamond, 2, 1)
    assert query(o, 0, 3) == QueryResult(2, AT_LEAST)


def test_query_unreachable_is_exact_zero(diamond):
    o = build_oracle(diamond, 2, 1)
    assert query(o, 3, 0) == QueryResult(0, EXACT)


def test_query_self_is_at_least(diamond):
    o = build_oracle(diamond, 2, 1)
    assert query(o, 1, 1) == QueryResult(2, AT_LEAST)


def test_query_validation(diamond):
    o = build_oracle(diamond, 2, 1)
    with pytest.raises(ValueError):
        query(o, 0, 3, {0, 1})  # |F| > k
    with pytest.raises(ValueError):
        query(o, 0, 3, {42})
    with pytest.raises(ValueError):
        query(o, 0, 9)


def test_queries_match_direct_computation():
    stream = splitmix64(99)
    for seed in range(4):
        g = random_digraph(8, 18, seed * 41 + 13)
        lam, k = 2, 2
        o = build_oracle(g, lam, k)
        eids = [e for e, _, _ in g.edge_list()]
        for _ in range(200):
            x = next(stream) % g.n
            y = next(stream) % g.n
            nf = next(stream) % (k + 1)
            faults = {eids[next(stream) % len(eids)] for _ in range(nf)}
            got = query(o, x, y, faults)
            if x == y:
                assert got == QueryResult(lam, AT_LEAST)
                continue
            direct = max_flow(g.remove_edges(faults), x, y, cap=lam).value
            want = (QueryResult(direct, EXACT) if direct < lam
                    else QueryResult(lam, AT_LEAST))
            assert got == want


def test_build_workers_deterministic():
    g = random_digraph(7, 14, 8)
    a = build_oracle(g, 1, 1, workers=1)
    b = build_oracle(g, 1, 1, workers=4)
    assert all(a.family[x] == b.family[x] for x in range(g.n))


def test_save_load_round_trip_exhaustive(diamond, tmp_path):
    o = build_oracle(diamond, 2, 1)
    path = tmp_path / "oracle.txt"
    save_oracle(o, path)
    o2 = load_oracle(path)
    assert (o2.lam, o2.k, o2.fingerprint) == (o.lam, o.k, o.fingerprint)
    eids = [e for e, _, _ in diamond.edge_list()]
    fault_choices = [set()] + [{e} for e in eids]
    for x, y in itertools.product(range(4), range(4)):
        for faults in fault_choices:
            assert query(o, x, y, faults) == query(o2, x, y, faults)


def test_load_rejects_truncation(diamond, tmp_path):
    path = tmp_path / "oracle.txt"
    save_oracle(build_oracle(diamond, 1, 1), path)
    content = path.read_text()
    path.write_text(content[:len(content) // 2])
    with pytest.raises(OracleLoadError):
        load_oracle(path)


def test_load_rejects_bad_magic(tmp_path):
    path = tmp_path / "oracle.txt"
    path.write_text("not-an-oracle 1\n")
    with pytest.raises(OracleLoadError, match="not an oracle file"):
        load_oracle(path)


def test_load_rejects_wrong_version(diamond, tmp_path):
    path = tmp_path / "oracle.txt"
    save_oracle(build_oracle(diamond, 1, 1), path)
    content = path.read_text().replace("flowpreserve-oracle 1",
                                       "flowpreserve-oracle 9", 1)
    path.write_text(content)
    with pytest.raises(OracleLoadError, match="version"):
        load_oracle(path)


def test_load_detects_tampered_graph(diamond, tmp_path):
    path = tmp_path / "oracle.txt"
    save_oracle(build_oracle(diamond, 1, 1), path)
    lines = path.read_text().split("\n")
    lines[4] = "0 0 2"  # rewrite first edge
    path.write_text("\n".join(lines))
    with pytest.raises(OracleLoadError, match="fingerprint mismatch"):
        load_oracle(path)


def test_invalid_build_params(diamond):
    with pytest.raises(ValueError):
        build_oracle(diamond, 0, 1)

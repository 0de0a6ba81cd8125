"""All-pairs fault-tolerant clamped-reachability oracle.

Preprocessing builds one preserver per source vertex; a query (x, y, F)
computes the lam-capped flow from x to y in x's preserver minus F.  The
answer is tagged "exact" below the threshold and "atleast" at it, because
the preserver contract only pins flow values strictly under the threshold.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _kernels
from .graph import DiGraph, graph_fingerprint
from .preserver import ftbfp

EXACT = "exact"
AT_LEAST = "atleast"

_MAGIC = "flowpreserve-oracle"
_VERSION = 1


class OracleLoadError(ValueError):
    pass


@dataclass(frozen=True)
class QueryResult:
    value: int
    tag: str


@dataclass(frozen=True)
class ReachabilityOracle:
    lam: int
    k: int
    graph: DiGraph
    family: dict[int, DiGraph]
    fingerprint: int

    def total_stored_edges(self) -> int:
        return sum(h.m for h in self.family.values())


def build_oracle(g: DiGraph, lam: int, k: int,
                 workers: int = 1) -> ReachabilityOracle:
    """One preserver per source; deterministic regardless of worker count."""
    if lam < 1 or k < 0:
        raise ValueError("invalid parameters")
    sources = list(range(g.n))
    if workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(lambda x: ftbfp(g, x, lam, k).h, sources))
        family = dict(zip(sources, results))
    else:
        family = {x: ftbfp(g, x, lam, k).h for x in sources}
    return ReachabilityOracle(lam=lam, k=k, graph=g, family=family,
                              fingerprint=graph_fingerprint(g))


def query(o: ReachabilityOracle, x: int, y: int,
          faults: Iterable[int] = ()) -> QueryResult:
    """Clamped flow from x to y after deleting the fault set."""
    x, y = int(x), int(y)
    for v in (x, y):
        if not (0 <= v < o.graph.n):
            raise ValueError(f"vertex index out of range: {v}")
    fault_ids = sorted(set(int(e) for e in faults))
    if len(fault_ids) > o.k:
        raise ValueError(f"fault set larger than budget {o.k}")
    for e in fault_ids:
        if not o.graph.has_edge_id(e):
            raise ValueError(f"unknown edge id {e}")
    if x == y:
        return QueryResult(o.lam, AT_LEAST)
    hx = o.family[x]
    disabled = np.zeros(hx.m, dtype=np.uint8)
    for e in fault_ids:
        if hx.has_edge_id(e):
            disabled[hx.position_of(e)] = 1
    out_start, out_pos, in_start, in_pos, _ = hx.adjacency()
    value, _ = _kernels.max_flow_arrays(
        hx.n, hx.tails, hx.heads, out_start, out_pos, in_start, in_pos,
        np.asarray([x], dtype=np.int64), y, o.lam, disabled)
    value = int(value)
    if value < o.lam:
        return QueryResult(value, EXACT)
    return QueryResult(o.lam, AT_LEAST)


def save_oracle(o: ReachabilityOracle, path) -> None:
    """Versioned text container; see load_oracle for the layout."""
    lines = [f"{_MAGIC} {_VERSION}",
             f"lambda {o.lam}",
             f"k {o.k}",
             f"graph {o.graph.n} {o.graph.m} {o.fingerprint:016x}"]
    lines.extend(f"{e} {t} {h}" for e, t, h in o.graph.edge_list())
    for x in sorted(o.family):
        hx = o.family[x]
        lines.append(f"source {x} {hx.m}")
        lines.append(" ".join(str(e) for e in hx.eids.tolist()))
    lines.append("end")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def load_oracle(path) -> ReachabilityOracle:
    """Read a container written by save_oracle.

    Layout: magic+version line; "lambda L"; "k K"; "graph n m hash" with m
    "eid tail head" lines; per source ascending, "source x mx" plus one
    line of kept edge ids; closing "end".  The stored hash is recomputed
    from the edge list on load so corruption or substitution is detected.
    """
    try:
        with open(path, "r", encoding="ascii") as fh:
            lines = fh.read().split("\n")
    except (OSError, UnicodeDecodeError) as exc:
        raise OracleLoadError(f"unreadable oracle file: {exc}") from None
    it = iter(lines)

    def take(what):
        try:
            return next(it)
        except StopIteration:
            raise OracleLoadError(f"truncated oracle file: missing {what}") \
                from None

    magic = take("header").split()
    if len(magic) != 2 or magic[0] != _MAGIC:
        raise OracleLoadError("not an oracle file")
    if magic[1] != str(_VERSION):
        raise OracleLoadError(f"unsupported oracle version {magic[1]}")
    try:
        lam = int(take("lambda").split()[1])
        k = int(take("k").split()[1])
        gline = take("graph header").split()
        n, m, stored_hash = int(gline[1]), int(gline[2]), int(gline[3], 16)
        triples = []
        for _ in range(m):
            e, t, h = (int(tok) for tok in take("edge").split())
            triples.append((e, t, h))
        g = DiGraph(
            n,
            np.asarray([e for e, _, _ in triples], dtype=np.int64),
            np.asarray([t for _, t, _ in triples], dtype=np.int64),
            np.asarray([h for _, _, h in triples], dtype=np.int64))
        if m > 1 and not bool(np.all(np.diff(g.eids) > 0)):
            raise OracleLoadError("edge ids out of order")
        family = {}
        for _ in range(n):
            sline = take("source header").split()
            if sline[0] != "source":
                raise OracleLoadError("malformed source header")
            x, mx = int(sline[1]), int(sline[2])
            id_line = take("source edges").split()
            if len(id_line) != mx:
                raise OracleLoadError(
                    f"source {x}: expected {mx} edge ids, got {len(id_line)}")
            family[x] = g.subgraph_with_edges(int(e) for e in id_line)
        if take("end marker") != "end":
            raise OracleLoadError("truncated oracle file: missing end marker")
    except OracleLoadError:
        raise
    except (ValueError, IndexError) as exc:
        raise OracleLoadError(f"corrupt oracle file: {exc}") from None
    if graph_fingerprint(g) != stored_hash:
        raise OracleLoadError("graph fingerprint mismatch")
    if set(family) != set(range(n)):
        raise OracleLoadError("oracle file missing per-source preservers")
    return ReachabilityOracle(lam=lam, k=k, graph=g, family=family,
                              fingerprint=stored_hash)

"""Sparse fault-tolerant flow preservers.

The single-destination selection runs the farthest-min-cut source-growing
procedure on the out-degree-bounded rewrite of the graph: starting from
{s}, k times take the farthest min cut toward t and absorb its source side
plus that side's out-neighborhood into the source set; the in-edges of t
used by a final max flow from the grown source set survive, everything
else at t is dropped.  With f = max-flow(s, t) this keeps at most 2^k * f
in-edges and withstands any k + f - 1 edge failures for s-to-t
reachability.

For a flow threshold lam the per-destination rule is: if t already admits
lam + k units, keep the in-edges of such a flow; otherwise run the
procedure above with k iterations when f <= lam, and with lam + k - f
iterations when lam < f < lam + k (enough to withstand lam + k - 1
failures).  Either way at most 2^k * lam in-edges survive.

A whole-graph preserver applies the per-destination rule once per vertex
in ascending id, each step against the previous step's graph; sparsifying
one vertex's in-edges never drops another vertex's flow below
min(lam, original), so the steps compose.
"""

from __future__ import annotations

from dataclasses import dataclass

from .flow import farthest_min_cut, max_flow
from .graph import CapGraph, DiGraph
from .transform import bounded_outdegree_transform, pull_back_in_edges


@dataclass(frozen=True)
class FtrsSelection:
    """Per-destination selection trace.

    cut_sizes holds the k farthest-min-cut values followed by the final
    grown-source flow value; source_set_sizes holds |S_1|..|S_{k+1}|.
    """

    dest: int
    kept_edges: frozenset[int]
    cut_sizes: tuple[int, ...]
    source_set_sizes: tuple[int, ...]


@dataclass(frozen=True)
class VertexAudit:
    vertex: int
    kept_in_degree: int
    flow_capped: int  # min(lam + k, max-flow from s) observed at selection time


@dataclass(frozen=True)
class PreserverResult:
    h: DiGraph
    source: int
    lam: int
    k: int
    kept_in_edges: dict[int, frozenset[int]]
    audit: tuple[VertexAudit, ...]

    @property
    def total_edges(self) -> int:
        return self.h.m

    @property
    def max_in_degree(self) -> int:
        return max((self.h.in_degree(v) for v in range(self.h.n)), default=0)


def _validate_params(g: DiGraph, s: int, lam: int, k: int):
    if not (0 <= int(s) < g.n):
        raise ValueError(f"vertex index out of range: {s}")
    if lam < 1:
        raise ValueError("flow threshold must be at least 1")
    if k < 0:
        raise ValueError("fault budget must be nonnegative")


def ftrs_single_dest(g: DiGraph, s: int, t: int, k: int) -> FtrsSelection:
    """In-edge selection at t surviving k + max-flow(s,t) - 1 edge failures."""
    s, t = int(s), int(t)
    if s == t:
        raise ValueError("source and destination must differ")
    if k < 0:
        raise ValueError("fault budget must be nonnegative")
    tg = bounded_outdegree_transform(g, s, t)
    h = tg.h
    sources = frozenset([tg.source_h])
    cut_sizes = []
    source_sizes = []
    for _ in range(k):
        source_sizes.append(len(sources))
        cut = farthest_min_cut(h, sources, tg.dest_h)
        cut_sizes.append(cut.value)
        grown = set(cut.a_side)
        for e in cut.crossing:
            grown.add(h.endpoints(e)[1])
        grown.discard(tg.dest_h)
        sources = frozenset(grown)
    source_sizes.append(len(sources))
    final = max_flow(h, sources, tg.dest_h)
    cut_sizes.append(final.value)
    kept_h = final.used.intersection(tg.dest_in_edge)
    kept = pull_back_in_edges(tg, kept_h)
    return FtrsSelection(dest=t, kept_edges=kept,
                         cut_sizes=tuple(cut_sizes),
                         source_set_sizes=tuple(source_sizes))


def _single_dest_with_flow(g: DiGraph, s: int, t: int, lam: int,
                           k: int) -> tuple[frozenset[int], int]:
    assignment = max_flow(g, s, t, cap=lam + k)
    f = assignment.value
    if f == 0:
        return frozenset(), 0
    if f >= lam + k:
        kept = assignment.used.intersection(g.in_edge_ids(t).tolist())
        assert len(kept) == lam + k
        return frozenset(kept), f
    iterations = k if f <= lam else lam + k - f
    return ftrs_single_dest(g, s, t, iterations).kept_edges, f


def ftbfp_single_dest(g: DiGraph, s: int, t: int, lam: int,
                      k: int) -> frozenset[int]:
    """In-edges of t to keep so flows into t stay exact below lam under k faults."""
    s, t = int(s), int(t)
    if s == t:
        raise ValueError("source and destination must differ")
    _validate_params(g, s, lam, k)
    kept, _ = _single_dest_with_flow(g, s, t, lam, k)
    return kept


def ftbfp(g: DiGraph, s: int, lam: int, k: int) -> PreserverResult:
    """Whole-graph preserver: min(lam, flow) from s survives any k failures."""
    s = int(s)
    _validate_params(g, s, lam, k)
    current = g.restrict_in_edges(s, ())
    kept: dict[int, frozenset[int]] = {}
    audits = []
    for v in range(g.n):
        if v == s:
            continue
        selection, f = _single_dest_with_flow(current, s, v, lam, k)
        current = current.restrict_in_edges(v, selection)
        kept[v] = selection
        audits.append(VertexAudit(vertex=v, kept_in_degree=len(selection),
                                  flow_capped=f))
    return PreserverResult(h=current, source=s, lam=lam, k=k,
                           kept_in_edges=kept, audit=tuple(audits))


def ftrs(g: DiGraph, s: int, k: int) -> PreserverResult:
    """Reachability-only preserver: the lam = 1 case."""
    return ftbfp(g, s, 1, k)


def capacitated_ftbfp(cg: CapGraph, s: int, lam: int, k: int) -> CapGraph:
    """Capacitated preserver via unit expansion.

    Each edge of capacity c becomes c parallel unit edges, the unit
    preserver runs on the expansion, and an original edge survives when
    any of its copies does.  Surviving edges keep their full original
    capacity; a total capacity decrement of at most k in the original
    corresponds to at most k unit-edge failures in the expansion.
    """
    _validate_params(cg.base, s, lam, k)
    expanded, origin = cg.expand()
    result = ftbfp(expanded, s, lam, k)
    # expanded ids are dense, so they index the origin map directly
    survivors = sorted(set(origin[result.h.eids].tolist()))
    return cg.restrict_to_edges(survivors)

"""Unit-capacity max flow, nearest/farthest min cuts, path decomposition.

All operations are deterministic: augmenting paths are found by BFS that
scans adjacency in ascending edge id (forward arcs first, then backward),
so the flow support, both cuts, and the decomposition are pure functions
of the input.  Multi-source flow seeds the BFS with every source, which is
equivalent to an implicit super-source whose arcs never appear in flow
supports or crossing sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _kernels
from .graph import DiGraph


@dataclass(frozen=True)
class FlowAssignment:
    """An integral flow: its value and the edge ids carrying one unit each."""

    value: int
    used: frozenset[int]


@dataclass(frozen=True)
class Cut:
    """A source-side vertex set, the edges crossing out of it, and their count."""

    a_side: frozenset[int]
    crossing: frozenset[int]
    value: int


def _source_array(g: DiGraph, sources) -> np.ndarray:
    if isinstance(sources, (int, np.integer)):
        sources = [int(sources)]
    arr = np.asarray(sorted(set(int(s) for s in sources)), dtype=np.int64)
    if arr.shape[0] == 0:
        raise ValueError("source set is empty")
    if arr[0] < 0 or arr[-1] >= g.n:
        raise ValueError("source vertex out of range")
    return arr


def _run_max_flow(g: DiGraph, sources, t: int, cap):
    src = _source_array(g, sources)
    t = int(t)
    if not (0 <= t < g.n):
        raise ValueError(f"vertex index out of range: {t}")
    if t in src:
        raise ValueError("destination cannot be a source")
    if cap is None:
        cap = -1
    else:
        cap = int(cap)
        if cap < 0:
            raise ValueError("cap must be nonnegative")
    out_start, out_pos, in_start, in_pos, zero = g.adjacency()
    value, used = _kernels.max_flow_arrays(
        g.n, g.tails, g.heads, out_start, out_pos, in_start, in_pos,
        src, t, cap, zero)
    return src, int(value), used


def max_flow(g: DiGraph, sources, t: int, cap: int | None = None) -> FlowAssignment:
    """Maximum flow from a source set to t, optionally stopping at cap units."""
    _, value, used = _run_max_flow(g, sources, t, cap)
    used_ids = frozenset(g.eids[used.view(bool)].tolist())
    return FlowAssignment(value=value, used=used_ids)


def nearest_min_cut(g: DiGraph, sources, t: int) -> Cut:
    """Min cut whose source side is the residual-reachable set (smallest A)."""
    src, value, used = _run_max_flow(g, sources, t, None)
    out_start, out_pos, in_start, in_pos, zero = g.adjacency()
    mask = _kernels.residual_reach_from(
        g.n, g.tails, g.heads, out_start, out_pos, in_start, in_pos,
        src, used, zero)
    return _cut_from_mask(g, mask, value)


def farthest_min_cut(g: DiGraph, sources, t: int) -> Cut:
    """Min cut whose source side is everything not residually reaching t."""
    src, value, used = _run_max_flow(g, sources, t, None)
    out_start, out_pos, in_start, in_pos, zero = g.adjacency()
    reach_t = _kernels.residual_reach_to(
        g.n, g.tails, g.heads, out_start, out_pos, in_start, in_pos,
        int(t), used, zero)
    mask = (1 - reach_t).astype(np.uint8)
    assert mask[src].all(), "source residually reaches t after max flow"
    return _cut_from_mask(g, mask, value)


def _cut_from_mask(g: DiGraph, mask: np.ndarray, flow_value: int) -> Cut:
    a_side = frozenset(np.flatnonzero(mask).tolist())
    crossing_sel = (mask[g.tails] == 1) & (mask[g.heads] == 0)
    crossing = frozenset(g.eids[crossing_sel].tolist())
    assert len(crossing) == flow_value, "cut value differs from flow value"
    return Cut(a_side=a_side, crossing=crossing, value=flow_value)


def decompose_paths(g: DiGraph, sources, t: int,
                    flow: FlowAssignment) -> list[list[int]]:
    """Split a flow into flow.value edge-disjoint source-to-t paths.

    Paths are edge-id lists; leftover flow on cycles is discarded.  Raises
    ValueError if the assignment is not a flow of g for these endpoints.
    """
    src = set(_source_array(g, sources).tolist())
    t = int(t)
    if t in src:
        raise ValueError("destination cannot be a source")
    used_pos = g.positions_of(flow.used)
    net = np.zeros(g.n, dtype=np.int64)
    np.add.at(net, g.tails[used_pos], 1)
    np.add.at(net, g.heads[used_pos], -1)
    emitted = 0
    for v in range(g.n):
        if v == t:
            continue
        if v in src:
            if net[v] < 0:
                raise ValueError("inconsistent flow: source absorbs flow")
            emitted += int(net[v])
        elif net[v] != 0:
            raise ValueError(f"inconsistent flow: conservation fails at {v}")
    if emitted != flow.value or int(-net[t]) != flow.value:
        raise ValueError("inconsistent flow: value does not match support")

    out_edges: dict[int, list[tuple[int, int]]] = {}
    for p in sorted(used_pos.tolist()):
        out_edges.setdefault(int(g.tails[p]), []).append(
            (int(g.eids[p]), int(g.heads[p])))
    cursor = {v: 0 for v in out_edges}
    paths = []
    for s in sorted(src):
        for _ in range(int(net[s])):
            path = []
            v = s
            while v != t:
                lst = out_edges[v]
                eid, nxt = lst[cursor[v]]
                cursor[v] += 1
                path.append(eid)
                v = nxt
            paths.append(path)
    return paths

"""Out-degree-bounding rewrite used before single-destination edge selection.

Every edge (x, y) is split into x -> left -> right -> y, and every vertex
other than the chosen source and destination is replaced, once per in-edge,
by a binary fan-out tree whose root is that in-edge's right vertex and
whose leaves are the vertex's out-edge left stubs.  The result has
out-degree at most 2 everywhere except the source, carries the same
source-to-destination max flow, and keeps a one-to-one mapping between the
destination's in-edges here and in the original graph.

Fan-out trees with q leaves are near-complete: leaves sit at depth
ceil(log2 q) or one less, deepest leaves leftmost, built heap-style with
q-1 internal nodes (q=1 degenerates to a single root-to-leaf edge).  The
destination keeps its own out-edge stubs behind one such tree rooted at
itself, which bounds its out-degree too; those edges can never carry
source-to-destination flow, so flow values and fault behavior are
untouched.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .graph import DiGraph


@dataclass(frozen=True)
class FanoutTree:
    root: int
    leaves: tuple[int, ...]
    internal: tuple[int, ...]  # newly created non-root nodes


@dataclass
class TransformedGraph:
    h: DiGraph
    origin: DiGraph
    source: int
    dest: int
    source_h: int
    dest_h: int
    split_left: dict[int, int]      # origin eid -> left vertex in h
    split_right: dict[int, int]     # origin eid -> right vertex in h
    splitter_edge: dict[int, int]   # origin eid -> h eid of (left, right)
    dest_in_edge: dict[int, int]    # h eid of (right_w, dest) -> origin eid
    fanout_trees: dict[tuple[int, int], FanoutTree] = field(default_factory=dict)
    dest_fanout: FanoutTree | None = None

    def dest_in_edge_ids(self) -> list[int]:
        """In-edge ids of the destination in h, ascending."""
        return sorted(self.dest_in_edge)


class _Builder:
    def __init__(self, next_vid: int):
        self.next_vid = next_vid
        self.edges: list[tuple[int, int]] = []

    def vertex(self) -> int:
        v = self.next_vid
        self.next_vid += 1
        return v

    def edge(self, u: int, v: int) -> int:
        self.edges.append((u, v))
        return len(self.edges) - 1


def _fanout(b: _Builder, root: int, leaves: list[int]) -> FanoutTree:
    q = len(leaves)
    if q == 0:
        return FanoutTree(root, (), ())
    if q == 1:
        b.edge(root, leaves[0])
        return FanoutTree(root, (leaves[0],), ())
    # Heap slots 1..2q-1: internals 1..q-1 (slot 1 is the root), leaf slots
    # q..2q-1 assigned to the given leaves in left-to-right tree order.
    vid_of = {1: root}
    internal = []
    for slot in range(2, q):
        v = b.vertex()
        vid_of[slot] = v
        internal.append(v)
    order = []
    stack = [1]
    while stack:
        slot = stack.pop()
        if slot >= q:
            order.append(slot)
        else:
            stack.append(2 * slot + 1)
            stack.append(2 * slot)
    for idx, slot in enumerate(order):
        vid_of[slot] = leaves[idx]
    for slot in range(1, q):
        b.edge(vid_of[slot], vid_of[2 * slot])
        b.edge(vid_of[slot], vid_of[2 * slot + 1])
    return FanoutTree(root, tuple(leaves), tuple(internal))


def bounded_outdegree_transform(g: DiGraph, s: int, t: int) -> TransformedGraph:
    """Rewrite g for the (s, t) pair; see the module docstring for the shape."""
    s = int(s)
    t = int(t)
    if s == t:
        raise ValueError("source and destination must differ")
    for v in (s, t):
        if not (0 <= v < g.n):
            raise ValueError(f"vertex index out of range: {v}")

    s_h, t_h = 0, 1
    left: dict[int, int] = {}
    right: dict[int, int] = {}
    eid_order = g.eids.tolist()
    for i, e in enumerate(eid_order):
        left[e] = 2 + 2 * i
        right[e] = 3 + 2 * i
    b = _Builder(2 + 2 * g.m)

    splitter: dict[int, int] = {}
    for e in eid_order:
        splitter[e] = b.edge(left[e], right[e])
    for e in g.out_edge_ids(s).tolist():
        b.edge(s_h, left[e])
    for e in g.in_edge_ids(s).tolist():
        b.edge(right[e], s_h)
    dest_in: dict[int, int] = {}
    for e in g.in_edge_ids(t).tolist():
        dest_in[b.edge(right[e], t_h)] = e

    trees: dict[tuple[int, int], FanoutTree] = {}
    for v in range(g.n):
        if v == s or v == t:
            continue
        leaf_stubs = [left[e] for e in g.out_edge_ids(v).tolist()]
        for e_in in g.in_edge_ids(v).tolist():
            trees[(v, e_in)] = _fanout(b, right[e_in], leaf_stubs)
    dest_tree = _fanout(b, t_h, [left[e] for e in g.out_edge_ids(t).tolist()])

    h = DiGraph.from_edges(b.next_vid, b.edges)
    return TransformedGraph(
        h=h, origin=g, source=s, dest=t, source_h=s_h, dest_h=t_h,
        split_left=left, split_right=right, splitter_edge=splitter,
        dest_in_edge=dest_in, fanout_trees=trees, dest_fanout=dest_tree)


def pull_back_in_edges(tg: TransformedGraph,
                       keep_h: Iterable[int]) -> frozenset[int]:
    """Map kept in-edges of the destination in h to the original in-edges."""
    result = []
    for he in keep_h:
        he = int(he)
        if he not in tg.dest_in_edge:
            raise ValueError(
                f"edge id {he} is not an in-edge of the destination in h")
        result.append(tg.dest_in_edge[he])
    return frozenset(result)


def push_faults(tg: TransformedGraph, faults: Iterable[int]) -> frozenset[int]:
    """Map original failed edges to their splitter edges in h."""
    result = []
    for e in faults:
        e = int(e)
        if e not in tg.splitter_edge:
            raise ValueError(f"unknown edge id {e}")
        result.append(tg.splitter_edge[e])
    return frozenset(result)

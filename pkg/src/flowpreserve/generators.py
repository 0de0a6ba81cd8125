"""Instance generators: extremal lower-bound family, set-cover reduction
instances with both direction mappings, and reproducible random graphs.

Vertex and edge id layouts are fixed and documented per generator so tests
can address named structure (source, tree roots, leaves, sinks) directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .graph import CapGraph, DiGraph

MASK64 = 0xFFFFFFFFFFFFFFFF


def splitmix64(seed: int):
    """The splitmix64 generator, yielding 64-bit values.

    state += 0x9E3779B97F4A7C15; z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
    output z ^ (z >> 31).
    All arithmetic mod 2^64.  Documented so suites reproduce cross-language.
    """
    state = seed & MASK64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        yield z ^ (z >> 31)


@dataclass(frozen=True)
class SetCoverInstance:
    """A universe 0..universe_size-1 and a family of subsets covering it."""

    universe_size: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.universe_size < 1:
            raise ValueError("universe must be nonempty")
        covered = set()
        for s in self.sets:
            for e in s:
                if not (0 <= e < self.universe_size):
                    raise ValueError(f"element {e} out of universe range")
            covered.update(s)
        if covered != set(range(self.universe_size)):
            raise ValueError("family does not cover the universe")

    def is_cover(self, indices: Iterable[int]) -> bool:
        picked = set()
        for i in indices:
            picked.update(self.sets[i])
        return picked == set(range(self.universe_size))


def parse_set_cover(text: str) -> SetCoverInstance:
    """Parse "|U| |F|" then one line of element indices per set."""
    lines = [ln for ln in text.split("\n") if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty set-cover input")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError("malformed set-cover header")
    usize, nsets = int(header[0]), int(header[1])
    if len(lines) - 1 != nsets:
        raise ValueError(f"expected {nsets} set lines, got {len(lines) - 1}")
    sets = tuple(frozenset(int(tok) for tok in ln.split())
                 for ln in lines[1:nsets + 1])
    return SetCoverInstance(universe_size=usize, sets=sets)


class _TreeLayout:
    """Complete binary tree as a heap-ordered id block.

    Node j of the block has children 2j+1 and 2j+2; leaves are the last
    2^height ids, ascending left to right.  parent_edge maps each non-root
    node to the edge id entering it; children maps internal nodes to their
    (left, right) node ids.
    """

    def __init__(self, first_vid: int, height: int):
        self.height = height
        self.size = 2 ** (height + 1) - 1
        self.nodes = list(range(first_vid, first_vid + self.size))
        self.root = self.nodes[0]
        self.leaves = self.nodes[2 ** height - 1:]
        self.parent_edge: dict[int, int] = {}
        self.children: dict[int, tuple[int, int]] = {}

    def emit_edges(self, add_edge) -> None:
        for j in range((self.size - 1) // 2):
            left, right = self.nodes[2 * j + 1], self.nodes[2 * j + 2]
            self.children[self.nodes[j]] = (left, right)
            self.parent_edge[left] = add_edge(self.nodes[j], left)
            self.parent_edge[right] = add_edge(self.nodes[j], right)

    def sibling_edges(self, leaf: int) -> frozenset[int]:
        """Edge ids hanging off the root-to-leaf path (one per level)."""
        idx = self.nodes.index(leaf)
        out = []
        while idx > 0:
            parent = (idx - 1) // 2
            sibling = 2 * parent + 1 if idx % 2 == 0 else 2 * parent + 2
            out.append(self.parent_edge[self.nodes[sibling]])
            idx = parent
        return frozenset(out)


@dataclass
class LowerBoundInstance:
    """The extremal family forcing every leaf-to-sink edge into a preserver.

    Layout: vertex 0 is the source; then lam complete binary trees of
    height k as heap blocks; then the sinks.  Edge ids: (source, root_i)
    for i ascending, then tree edges per tree (heap order, left before
    right), then leaf-to-sink edges (leaf ascending, sink ascending).
    """

    g: DiGraph
    source: int
    lam: int
    k: int
    roots: tuple[int, ...]
    leaves: tuple[int, ...]
    sinks: tuple[int, ...]
    root_edge: dict[int, int]          # root vid -> (source, root) eid
    bipartite_eid: dict[tuple[int, int], int]
    _trees: tuple[_TreeLayout, ...]

    def tree_of_leaf(self, leaf: int) -> _TreeLayout:
        for tree in self._trees:
            if leaf in tree.parent_edge or leaf == tree.root:
                return tree
        raise ValueError(f"{leaf} is not a leaf vertex")

    def tailored_fault(self, leaf: int) -> frozenset[int]:
        """The k-edge fault set leaving leaf as its tree's only live exit."""
        return self.tree_of_leaf(leaf).sibling_edges(leaf)


def lower_bound_instance(lam: int, k: int, n: int) -> LowerBoundInstance:
    if lam < 1 or k < 0:
        raise ValueError("invalid parameters")
    if n < 3 * lam * 2 ** k:
        raise ValueError(f"need at least {3 * lam * 2 ** k} vertices")
    tree_size = 2 ** (k + 1) - 1
    trees = []
    next_vid = 1
    for _ in range(lam):
        trees.append(_TreeLayout(next_vid, k))
        next_vid += tree_size
    sinks = tuple(range(next_vid, n))
    edges: list[tuple[int, int]] = []

    def add_edge(u, v):
        edges.append((u, v))
        return len(edges) - 1

    root_edge = {t.root: add_edge(0, t.root) for t in trees}
    for tree in trees:
        tree.emit_edges(add_edge)
    leaves = tuple(leaf for tree in trees for leaf in tree.leaves)
    bip = {(x, y): add_edge(x, y) for x in leaves for y in sinks}
    g = DiGraph.from_edges(n, edges)
    return LowerBoundInstance(g=g, source=0, lam=lam, k=k,
                              roots=tuple(t.root for t in trees),
                              leaves=leaves, sinks=sinks,
                              root_edge=root_edge, bipartite_eid=bip,
                              _trees=tuple(trees))


@dataclass
class HardnessInstance:
    """Reduction graph tying preserver in-degrees to set-cover solutions.

    Layout: vertex 0 is the source; sinks occupy 1..N; then per copy
    i < lam, one block holding the element tree (heap order), the two
    out-stubs l(x), r(x) per leaf (element ascending, l before r), the per-
    set vertices, and the u+1 bypass vertices.  Edge ids: per copy — tree
    edges, leaf stubs, l(x)->set edges (element then set ascending),
    r(x)->bypass edges; then (source, root_i) ascending; then set/bypass
    vertices to sinks (copy, vertex id, sink ascending).
    """

    g: DiGraph
    source: int
    lam: int
    k: int
    u: int
    padded_universe: int
    instance: SetCoverInstance       # original (pre-padding) instance
    padded_sets: tuple[frozenset[int], ...]
    sinks: tuple[int, ...]
    roots: tuple[int, ...]
    leaf_of: dict[tuple[int, int], int]      # (copy, element) -> leaf vid
    l_of: dict[tuple[int, int], int]
    r_of: dict[tuple[int, int], int]
    y_of: dict[tuple[int, int], int]         # (copy, set index) -> vid
    z_of: tuple[tuple[int, ...], ...]
    leaf_stub_eid: dict[tuple[int, int], int]  # (copy, element) -> (leaf, r(x)) eid
    _trees: tuple[_TreeLayout, ...]

    def tailored_fault(self, copy: int, element: int) -> frozenset[int]:
        """k = u+1 edges isolating one element's set route in one copy."""
        tree = self._trees[copy]
        leaf = self.leaf_of[(copy, element)]
        return tree.sibling_edges(leaf) | {self.leaf_stub_eid[(copy, element)]}


def hardness_instance(sc: SetCoverInstance, lam: int) -> HardnessInstance:
    if lam < 1:
        raise ValueError("invalid parameters")
    u = max(0, math.ceil(math.log2(sc.universe_size)))
    padded = 2 ** u
    pad_elems = frozenset(range(sc.universe_size, padded))
    padded_sets = tuple(s | pad_elems for s in sc.sets)
    k = u + 1
    nsets = len(sc.sets)
    n_sinks = 4 * lam * (nsets + padded)

    next_vid = 1 + n_sinks
    sinks = tuple(range(1, 1 + n_sinks))
    trees, leaf_of, l_of, r_of, y_of, z_of = [], {}, {}, {}, {}, []
    for i in range(lam):
        tree = _TreeLayout(next_vid, u)
        next_vid += tree.size
        trees.append(tree)
        for x, leaf in enumerate(tree.leaves):
            leaf_of[(i, x)] = leaf
            l_of[(i, x)] = next_vid
            r_of[(i, x)] = next_vid + 1
            next_vid += 2
        for w in range(nsets):
            y_of[(i, w)] = next_vid
            next_vid += 1
        z_of.append(tuple(range(next_vid, next_vid + u + 1)))
        next_vid += u + 1

    edges: list[tuple[int, int]] = []

    def add_edge(a, b):
        edges.append((a, b))
        return len(edges) - 1

    leaf_stub_eid = {}
    for i in range(lam):
        trees[i].emit_edges(add_edge)
        for x in range(padded):
            add_edge(leaf_of[(i, x)], l_of[(i, x)])
            leaf_stub_eid[(i, x)] = add_edge(leaf_of[(i, x)], r_of[(i, x)])
        for x in range(padded):
            for w in range(nsets):
                if x in padded_sets[w]:
                    add_edge(l_of[(i, x)], y_of[(i, w)])
        for x in range(padded):
            for z in z_of[i]:
                add_edge(r_of[(i, x)], z)
    for i in range(lam):
        add_edge(0, trees[i].root)
    for i in range(lam):
        for a in sorted([y_of[(i, w)] for w in range(nsets)]
                        + list(z_of[i])):
            for v in sinks:
                add_edge(a, v)

    g = DiGraph.from_edges(next_vid, edges)
    return HardnessInstance(
        g=g, source=0, lam=lam, k=k, u=u, padded_universe=padded,
        instance=sc, padded_sets=padded_sets, sinks=sinks,
        roots=tuple(t.root for t in trees), leaf_of=leaf_of, l_of=l_of,
        r_of=r_of, y_of=y_of, z_of=tuple(z_of),
        leaf_stub_eid=leaf_stub_eid, _trees=tuple(trees))


def cover_to_preserver(hi: HardnessInstance,
                       cover: Iterable[int]) -> DiGraph:
    """Preserver induced by a set cover: every sink keeps exactly the
    in-edges from chosen-set vertices and bypass vertices, per copy."""
    cover = sorted(set(int(w) for w in cover))
    for w in cover:
        if not (0 <= w < len(hi.instance.sets)):
            raise ValueError(f"set index {w} out of range")
    if not hi.instance.is_cover(cover):
        raise ValueError("given sets do not cover the universe")
    allowed = set()
    for i in range(hi.lam):
        allowed.update(hi.y_of[(i, w)] for w in cover)
        allowed.update(hi.z_of[i])
    drop = []
    for v in hi.sinks:
        for eid, tail in zip(hi.g.in_edge_ids(v).tolist(),
                             hi.g.in_neighbors(v).tolist()):
            if tail not in allowed:
                drop.append(eid)
    return hi.g.remove_edges(drop)


def preserver_to_cover(hi: HardnessInstance, h: DiGraph) -> frozenset[int]:
    """Extract a cover from a valid preserver of the reduction graph.

    Reads the minimum-in-degree sink, collects per copy the sets whose
    vertex still reaches it, and returns the smallest such collection;
    validity and the |in|/lam size bound hold whenever h satisfies the
    preserver contract.
    """
    sink = min(hi.sinks, key=lambda v: (h.in_degree(v), v))
    tails = set(h.in_neighbors(sink).tolist())
    candidates = []
    for i in range(hi.lam):
        candidates.append(frozenset(
            w for w in range(len(hi.instance.sets))
            if hi.y_of[(i, w)] in tails))
    return min(candidates, key=len)


def random_digraph(n: int, m: int, seed: int) -> DiGraph:
    """Simple random digraph, deterministic for a seed.

    Draws (u, v) = (word % n, next word % n) from splitmix64, skipping
    self-loops and repeats, until m distinct ordered pairs exist.
    """
    n, m = int(n), int(m)
    if n < 0 or m < 0 or m > n * (n - 1):
        raise ValueError(f"infeasible size: n={n} m={m}")
    stream = splitmix64(seed)
    seen = set()
    edges = []
    while len(edges) < m:
        u = next(stream) % n
        v = next(stream) % n
        if u != v and (u, v) not in seen:
            seen.add((u, v))
            edges.append((u, v))
    return DiGraph.from_edges(n, edges)


def random_capgraph(n: int, m: int, cmax: int, seed: int) -> CapGraph:
    """Random topology as random_digraph; capacities are 1 + word % cmax
    drawn from a second splitmix64 stream seeded with seed XOR
    0xCA9A4C17ED30A001."""
    if cmax < 1:
        raise ValueError("cmax must be positive")
    base = random_digraph(n, m, seed)
    stream = splitmix64(seed ^ 0xCA9A4C17ED30A001)
    caps = [1 + next(stream) % cmax for _ in range(m)]
    return CapGraph.from_edges(
        n, [(t, h, c) for (_, t, h), c in zip(base.edge_list(), caps)])

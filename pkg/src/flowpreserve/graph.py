"""Directed multigraphs with stable edge identities, and the edge-list format.

Graphs are immutable values: every surgery operation returns a new graph
and never renumbers surviving edge ids, so a fault set named by edge ids
means the same thing in a graph and in any subgraph derived from it.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Iterator

import numpy as np

from . import _kernels


class GraphParseError(ValueError):
    """Edge-list parse failure; carries the 1-based offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"{message}, line {line}")
        self.line = line


def _as_id_array(ids: Iterable[int]) -> np.ndarray:
    arr = np.asarray(sorted(set(int(i) for i in ids)), dtype=np.int64)
    return arr


class DiGraph:
    """Immutable directed multigraph.

    Edges carry dense integer ids assigned at construction (id = position
    in the input order).  Parallel edges and self-loops are allowed and
    get distinct ids.  Removal keeps the surviving ids unchanged, so a
    derived graph may have a sparse id set; ``add_edge`` hands out
    max(id)+1 as the next fresh id.
    """

    __slots__ = ("n", "eids", "tails", "heads", "_adj")

    def __init__(self, n: int, eids: np.ndarray, tails: np.ndarray,
                 heads: np.ndarray):
        self.n = int(n)
        self.eids = eids
        self.tails = tails
        self.heads = heads
        for arr in (eids, tails, heads):
            arr.setflags(write=False)
        self._adj = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "DiGraph":
        """Build a graph on n vertices; edge ids follow iteration order."""
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        pairs = [(int(u), int(v)) for u, v in edges]
        for u, v in pairs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"vertex index out of range: ({u}, {v})")
        m = len(pairs)
        tails = np.fromiter((u for u, _ in pairs), dtype=np.int64, count=m)
        heads = np.fromiter((v for _, v in pairs), dtype=np.int64, count=m)
        return cls(n, np.arange(m, dtype=np.int64), tails, heads)

    @property
    def m(self) -> int:
        return int(self.eids.shape[0])

    def edge_list(self) -> list[tuple[int, int, int]]:
        """(eid, tail, head) triples in ascending edge id order."""
        return list(zip(self.eids.tolist(), self.tails.tolist(),
                        self.heads.tolist()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiGraph):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.eids, other.eids)
                and np.array_equal(self.tails, other.tails)
                and np.array_equal(self.heads, other.heads))

    __hash__ = None

    def __repr__(self) -> str:
        return f"DiGraph(n={self.n}, m={self.m})"

    # -- id lookups --------------------------------------------------------

    def position_of(self, eid: int) -> int:
        """Array position of an edge id; raises ValueError if unknown."""
        pos = int(np.searchsorted(self.eids, eid))
        if pos >= self.m or self.eids[pos] != eid:
            raise ValueError(f"unknown edge id {eid}")
        return pos

    def positions_of(self, eids: Iterable[int]) -> np.ndarray:
        ids = _as_id_array(eids)
        if ids.shape[0] == 0:
            return np.empty(0, dtype=np.int64)
        if self.m == 0:
            raise ValueError(f"unknown edge id {int(ids[0])}")
        pos = np.searchsorted(self.eids, ids)
        bad = (pos >= self.m) | (self.eids[np.minimum(pos, self.m - 1)] != ids)
        if bad.any():
            raise ValueError(f"unknown edge id {int(ids[np.argmax(bad)])}")
        return pos.astype(np.int64)

    def has_edge_id(self, eid: int) -> bool:
        pos = int(np.searchsorted(self.eids, eid))
        return pos < self.m and self.eids[pos] == eid

    def endpoints(self, eid: int) -> tuple[int, int]:
        pos = self.position_of(eid)
        return int(self.tails[pos]), int(self.heads[pos])

    # -- adjacency ---------------------------------------------------------

    def adjacency(self):
        """(out_start, out_pos, in_start, in_pos, zero_mask), built lazily."""
        if self._adj is None:
            out_start, out_pos, in_start, in_pos = _kernels.build_adjacency(
                self.n, self.tails, self.heads)
            zero = np.zeros(self.m, dtype=np.uint8)
            for arr in (out_start, out_pos, in_start, in_pos, zero):
                arr.setflags(write=False)
            self._adj = (out_start, out_pos, in_start, in_pos, zero)
        return self._adj

    def _check_vertex(self, v: int) -> int:
        v = int(v)
        if not (0 <= v < self.n):
            raise ValueError(f"vertex index out of range: {v}")
        return v

    def out_edge_ids(self, v: int) -> np.ndarray:
        v = self._check_vertex(v)
        out_start, out_pos, _, _, _ = self.adjacency()
        return self.eids[out_pos[out_start[v]:out_start[v + 1]]]

    def in_edge_ids(self, v: int) -> np.ndarray:
        v = self._check_vertex(v)
        _, _, in_start, in_pos, _ = self.adjacency()
        return self.eids[in_pos[in_start[v]:in_start[v + 1]]]

    def out_degree(self, v: int) -> int:
        v = self._check_vertex(v)
        out_start = self.adjacency()[0]
        return int(out_start[v + 1] - out_start[v])

    def in_degree(self, v: int) -> int:
        v = self._check_vertex(v)
        in_start = self.adjacency()[2]
        return int(in_start[v + 1] - in_start[v])

    def out_neighbors(self, v: int) -> np.ndarray:
        v = self._check_vertex(v)
        out_start, out_pos, _, _, _ = self.adjacency()
        return self.heads[out_pos[out_start[v]:out_start[v + 1]]]

    def in_neighbors(self, v: int) -> np.ndarray:
        v = self._check_vertex(v)
        _, _, in_start, in_pos, _ = self.adjacency()
        return self.tails[in_pos[in_start[v]:in_start[v + 1]]]

    # -- surgery -----------------------------------------------------------

    def remove_edges(self, edge_ids: Iterable[int]) -> "DiGraph":
        """Graph minus the named edges; surviving ids unchanged."""
        ids = _as_id_array(edge_ids)
        if ids.shape[0] == 0:
            return self
        pos = self.positions_of(ids)
        keep = np.ones(self.m, dtype=bool)
        keep[pos] = False
        return DiGraph(self.n, self.eids[keep].copy(), self.tails[keep].copy(),
                       self.heads[keep].copy())

    def restrict_in_edges(self, v: int, keep: Iterable[int]) -> "DiGraph":
        """Replace the in-edges of v by the given subset of them."""
        v = self._check_vertex(v)
        keep_ids = set(int(i) for i in keep)
        current = set(self.in_edge_ids(v).tolist())
        stray = keep_ids - current
        if stray:
            raise ValueError(
                f"edge id {min(stray)} is not an in-edge of vertex {v}")
        return self.remove_edges(current - keep_ids)

    def add_edge(self, u: int, v: int) -> tuple["DiGraph", int]:
        """Graph plus one (u, v) edge; returns it with a fresh edge id."""
        u = self._check_vertex(u)
        v = self._check_vertex(v)
        new_id = int(self.eids[-1]) + 1 if self.m else 0
        return (DiGraph(self.n,
                        np.append(self.eids, np.int64(new_id)),
                        np.append(self.tails, np.int64(u)),
                        np.append(self.heads, np.int64(v))),
                new_id)

    def subgraph_with_edges(self, keep_ids: Iterable[int]) -> "DiGraph":
        """Subgraph keeping exactly the named edge ids (same vertex set)."""
        ids = _as_id_array(keep_ids)
        pos = self.positions_of(ids)
        return DiGraph(self.n, self.eids[pos].copy(), self.tails[pos].copy(),
                       self.heads[pos].copy())


class CapGraph:
    """Directed graph with positive integer edge capacities."""

    __slots__ = ("base", "caps")

    def __init__(self, base: DiGraph, caps: np.ndarray):
        if caps.shape[0] != base.m:
            raise ValueError("capacity array does not match edge count")
        if base.m and caps.min() < 1:
            raise ValueError("capacities must be positive")
        self.base = base
        self.caps = caps
        caps.setflags(write=False)

    @classmethod
    def from_edges(cls, n: int,
                   edges: Iterable[tuple[int, int, int]]) -> "CapGraph":
        triples = [(int(u), int(v), int(c)) for u, v, c in edges]
        base = DiGraph.from_edges(n, [(u, v) for u, v, _ in triples])
        caps = np.fromiter((c for _, _, c in triples), dtype=np.int64,
                           count=len(triples))
        return cls(base, caps)

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def m(self) -> int:
        return self.base.m

    def capacity(self, eid: int) -> int:
        return int(self.caps[self.base.position_of(eid)])

    def expand(self) -> tuple[DiGraph, np.ndarray]:
        """Unit-capacity multigraph with c(e) parallel copies per edge.

        Returns (multigraph, origin) where origin[p] is the capacitated
        edge id behind copy position p.
        """
        counts = self.caps
        tails = np.repeat(self.base.tails, counts)
        heads = np.repeat(self.base.heads, counts)
        origin = np.repeat(self.base.eids, counts)
        g = DiGraph(self.base.n, np.arange(tails.shape[0], dtype=np.int64),
                    tails, heads)
        origin.setflags(write=False)
        return g, origin

    def restrict_to_edges(self, keep_ids: Iterable[int]) -> "CapGraph":
        ids = _as_id_array(keep_ids)
        pos = self.base.positions_of(ids)
        return CapGraph(self.base.subgraph_with_edges(ids),
                        self.caps[pos].copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, CapGraph):
            return NotImplemented
        return self.base == other.base and np.array_equal(self.caps, other.caps)

    __hash__ = None

    def __repr__(self) -> str:
        return f"CapGraph(n={self.n}, m={self.m})"


# -- edge-list text format --------------------------------------------------
#
# First line "n m"; then m lines "tail head" (DiGraph) or "tail head cap"
# (CapGraph), 0-indexed.  The edge on the i-th data line gets id i-1.
# Lines starting with '#' are comments and do not count toward m.


def _data_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for lineno, raw in enumerate(lines, start=1):
        if raw.startswith("#"):
            continue
        yield lineno, raw.split()


def _parse_lines(text: str, width: int):
    stream = _data_lines(text)
    try:
        lineno, header = next(stream)
    except StopIteration:
        raise GraphParseError("unexpected end of input", 1) from None
    if len(header) != 2:
        raise GraphParseError("malformed header", lineno)
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphParseError("malformed header", lineno) from None
    if n < 0 or m < 0:
        raise GraphParseError("malformed header", lineno)
    rows = []
    last = lineno
    for lineno, tokens in stream:
        if len(rows) == m:
            raise GraphParseError("unexpected trailing data", lineno)
        if len(tokens) != width:
            raise GraphParseError("malformed edge line", lineno)
        try:
            row = [int(tok) for tok in tokens]
        except ValueError:
            raise GraphParseError("malformed edge line", lineno) from None
        if not (0 <= row[0] < n and 0 <= row[1] < n):
            raise GraphParseError("vertex index out of range", lineno)
        if width == 3 and row[2] < 1:
            raise GraphParseError("nonpositive capacity", lineno)
        rows.append(row)
        last = lineno
    if len(rows) != m:
        raise GraphParseError("unexpected end of input", last + 1)
    return n, rows


def parse_edge_list(text: str) -> DiGraph:
    n, rows = _parse_lines(text, 2)
    return DiGraph.from_edges(n, [(u, v) for u, v in rows])


def serialize_edge_list(g: DiGraph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{t} {h}" for _, t, h in g.edge_list())
    return "\n".join(out) + "\n"


def parse_cap_edge_list(text: str) -> CapGraph:
    n, rows = _parse_lines(text, 3)
    return CapGraph.from_edges(n, rows)


def serialize_cap_edge_list(cg: CapGraph) -> str:
    out = [f"{cg.n} {cg.m}"]
    caps = cg.caps.tolist()
    out.extend(f"{t} {h} {c}"
               for (_, t, h), c in zip(cg.base.edge_list(), caps))
    return "\n".join(out) + "\n"


def parse_any_edge_list(text: str):
    """Parse either format, deciding by the width of the first edge line."""
    width = 2
    for i, (_, tokens) in enumerate(_data_lines(text)):
        if i == 1:
            width = len(tokens)
            break
    if width == 3:
        return parse_cap_edge_list(text)
    return parse_edge_list(text)


def match_edge_ids(g: DiGraph, sub: DiGraph) -> DiGraph:
    """Re-identify a parsed subgraph's edges with g's edge ids.

    Edge-list files carry no ids, so a subgraph read back from disk is
    aligned to its parent by (tail, head) multiset: each parallel bundle
    takes the lowest available parent ids.  Raises ValueError if sub has
    an edge (or multiplicity) the parent lacks, or a different vertex count.
    """
    if sub.n != g.n:
        raise ValueError("vertex count differs from parent graph")
    pool: dict[tuple[int, int], list[int]] = {}
    for eid, t, h in g.edge_list():
        pool.setdefault((t, h), []).append(eid)
    need = Counter((t, h) for _, t, h in sub.edge_list())
    chosen: list[int] = []
    for pair, count in need.items():
        have = pool.get(pair, [])
        if count > len(have):
            raise ValueError(f"edge {pair} not in parent graph "
                             f"(need {count}, have {len(have)})")
        chosen.extend(have[:count])
    return g.subgraph_with_edges(chosen)


def graph_fingerprint(g: DiGraph) -> int:
    """64-bit FNV-1a over "n;m;eid:tail:head,..." — stable graph identity."""
    payload = f"{g.n};{g.m};" + ",".join(
        f"{e}:{t}:{h}" for e, t, h in g.edge_list())
    acc = 0xCBF29CE484222325
    for byte in payload.encode("ascii"):
        acc ^= byte
        acc = (acc * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return acc

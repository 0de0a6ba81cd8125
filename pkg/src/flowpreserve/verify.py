"""Exhaustive ground-truth checking of preservers, bound audits, criticality.

The verifier enumerates every fault set of at most k edges of the parent
graph (smallest first, then lexicographic by sorted edge id) and every
destination, comparing the lam-clamped flow in parent and subgraph.  The
first mismatch in that order is returned as a witness.  A feasibility
guard refuses instances whose (fault set, destination) pair count exceeds
the budget — 2e6 by default, overridable per call or via
FLOWPRESERVE_BUDGET.
"""

from __future__ import annotations

import itertools
import math
import os
import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .flow import max_flow
from .graph import DiGraph
from .preserver import PreserverResult

DEFAULT_BUDGET = 2_000_000


class BudgetExceededError(RuntimeError):
    pass


@dataclass(frozen=True)
class Violation:
    """Witness that a subgraph fails the preserver contract.

    flow_in_g / flow_in_h are the lam-clamped flow values seen from the
    source to dest after deleting the fault set.
    """

    faults: tuple[int, ...]
    dest: int
    flow_in_g: int
    flow_in_h: int

    def __str__(self) -> str:
        ids = ",".join(str(e) for e in self.faults)
        return f"F=[{ids}] t={self.dest} g={self.flow_in_g} h={self.flow_in_h}"


@dataclass(frozen=True)
class BoundsReport:
    ok: bool
    max_in_degree: int
    in_degree_bound: int
    total_edges: int
    edge_bound: int

    @property
    def in_degree_slack(self) -> int:
        return self.in_degree_bound - self.max_in_degree

    @property
    def edge_slack(self) -> int:
        return self.edge_bound - self.total_edges


def _resolve_budget(budget: int | None) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get("FLOWPRESERVE_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET


def _check_subgraph(g: DiGraph, h: DiGraph):
    if h.n != g.n:
        raise ValueError("subgraph has a different vertex count")
    pos = g.positions_of(h.eids)  # raises on unknown ids
    if not (np.array_equal(g.tails[pos], h.tails)
            and np.array_equal(g.heads[pos], h.heads)):
        raise ValueError("subgraph edge ids disagree with parent endpoints")


def _pair_count(m: int, k: int, targets: int) -> int:
    return sum(math.comb(m, j) for j in range(min(k, m) + 1)) * targets


class _FaultScanner:
    """Shared arrays for repeated clamped-flow comparison under fault masks."""

    def __init__(self, g: DiGraph, h: DiGraph, s: int, lam: int):
        self.g = g
        self.h = h
        self.s = int(s)
        self.lam = int(lam)
        self.g_adj = g.adjacency()[:4]
        self.h_adj = h.adjacency()[:4]
        # position in h of each g position, -1 when absent
        self.g_to_h = np.full(g.m, -1, dtype=np.int64)
        hpos = np.searchsorted(g.eids, h.eids)
        self.g_to_h[hpos] = np.arange(h.m, dtype=np.int64)
        self.sources = np.asarray([s], dtype=np.int64)

    def first_mismatch(self, fault_pos: Sequence[int],
                       g_disabled: np.ndarray, h_disabled: np.ndarray) -> int:
        mapped = []
        for p in fault_pos:
            g_disabled[p] = 1
            hp = self.g_to_h[p]
            if hp >= 0:
                h_disabled[hp] = 1
                mapped.append(hp)
        t = _kernels.first_flow_mismatch(
            self.g.n, self.g.tails, self.g.heads, *self.g_adj, g_disabled,
            self.h.tails, self.h.heads, *self.h_adj, h_disabled,
            self.sources, self.s, self.lam)
        for p in fault_pos:
            g_disabled[p] = 0
        for hp in mapped:
            h_disabled[hp] = 0
        return int(t)

    def masks(self) -> tuple[np.ndarray, np.ndarray]:
        return (np.zeros(self.g.m, dtype=np.uint8),
                np.zeros(self.h.m, dtype=np.uint8))


def _fault_combinations(m: int, k: int):
    for size in range(min(k, m) + 1):
        yield from itertools.combinations(range(m), size)


def verify_ftbfp(g: DiGraph, h: DiGraph, s: int, lam: int, k: int,
                 budget: int | None = None,
                 workers: int = 1) -> Violation | None:
    """Exhaustively check h against g; None means the contract holds.

    Returns the first violation in (|F|, F lexicographic, t ascending)
    order.  Raises BudgetExceededError when the enumeration would exceed
    the pair budget.
    """
    s = int(s)
    if not (0 <= s < g.n):
        raise ValueError(f"vertex index out of range: {s}")
    if lam < 1 or k < 0:
        raise ValueError("invalid parameters")
    _check_subgraph(g, h)
    budget = _resolve_budget(budget)
    pairs = _pair_count(g.m, k, max(g.n - 1, 1))
    if pairs > budget:
        raise BudgetExceededError(
            f"instance too large for exhaustive verification: "
            f"{pairs} (F,t) pairs exceed budget {budget}")
    scanner = _FaultScanner(g, h, s, lam)
    if workers <= 1:
        g_dis, h_dis = scanner.masks()
        for combo in _fault_combinations(g.m, k):
            t = scanner.first_mismatch(combo, g_dis, h_dis)
            if t >= 0:
                return _violation(scanner, combo, t)
        return None
    return _verify_parallel(scanner, k, workers)


def _violation(scanner: _FaultScanner, combo: Sequence[int],
               t: int) -> Violation:
    g, h = scanner.g, scanner.h
    fault_ids = [int(g.eids[p]) for p in combo]
    g_rem = g.remove_edges(fault_ids)
    h_rem = h.remove_edges(e for e in fault_ids if h.has_edge_id(e))
    vg = max_flow(g_rem, scanner.s, t, cap=scanner.lam).value
    vh = max_flow(h_rem, scanner.s, t, cap=scanner.lam).value
    return Violation(faults=tuple(sorted(fault_ids)), dest=t,
                     flow_in_g=vg, flow_in_h=vh)


def _verify_parallel(scanner: _FaultScanner, k: int,
                     workers: int) -> Violation | None:
    combos = list(_fault_combinations(scanner.g.m, k))
    best_lock = threading.Lock()
    best: list = [len(combos), -1, None]  # combo index, t, combo

    def scan(start: int, stop: int):
        g_dis, h_dis = scanner.masks()
        for idx in range(start, stop):
            if idx > best[0]:
                break
            t = scanner.first_mismatch(combos[idx], g_dis, h_dis)
            if t >= 0:
                with best_lock:
                    if idx < best[0]:
                        best[0], best[1], best[2] = idx, t, combos[idx]
                break

    chunk = (len(combos) + workers - 1) // workers
    threads = []
    for w in range(workers):
        start = w * chunk
        if start >= len(combos):
            break
        th = threading.Thread(target=scan,
                              args=(start, min(start + chunk, len(combos))))
        th.start()
        threads.append(th)
    for th in threads:
        th.join()
    if best[2] is None:
        return None
    return _violation(scanner, best[2], best[1])


def audit_bounds(result: PreserverResult) -> BoundsReport:
    """Check the preserver size guarantees: per-vertex and total edge bounds."""
    in_bound = (2 ** result.k) * result.lam
    edge_bound = result.lam * (2 ** result.k) * result.h.n
    max_in = result.max_in_degree
    total = result.total_edges
    return BoundsReport(ok=(max_in <= in_bound and total <= edge_bound),
                        max_in_degree=max_in, in_degree_bound=in_bound,
                        total_edges=total, edge_bound=edge_bound)


def edge_criticality(g: DiGraph, s: int, lam: int, k: int, h: DiGraph,
                     edge_id: int,
                     fault_sets: Iterable[Iterable[int]] | None = None,
                     budget: int | None = None) -> Violation | None:
    """Is an edge of h load-bearing for the preserver contract?

    Returns the violation that appears once edge_id is dropped from h
    (the edge is critical), or None.  With fault_sets given, only those
    fault sets are tried — enough to certify criticality from a known
    witness family, but a None result is then not a redundancy proof.
    """
    if not h.has_edge_id(edge_id):
        raise ValueError(f"unknown edge id {edge_id}")
    h2 = h.remove_edges([edge_id])
    if fault_sets is None:
        return verify_ftbfp(g, h2, s, lam, k, budget=budget)
    _check_subgraph(g, h2)
    scanner = _FaultScanner(g, h2, s, lam)
    g_dis, h_dis = scanner.masks()
    for faults in fault_sets:
        ids = sorted(int(e) for e in faults)
        if len(ids) > k:
            raise ValueError("fault set larger than the fault budget")
        combo = scanner.g.positions_of(ids).tolist()
        t = scanner.first_mismatch(combo, g_dis, h_dis)
        if t >= 0:
            return _violation(scanner, combo, t)
    return None

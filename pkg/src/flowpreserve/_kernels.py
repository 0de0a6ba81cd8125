"""Flat-array flow kernels shared by the whole package.

Graphs reach the kernels as parallel arrays over edge *positions*
0..m-1.  Positions follow ascending edge id, which fixes every search
order in the package:

    tails, heads         int64[m]    endpoints of each position
    out_start, out_pos   int64[n+1], int64[m]   positions leaving v are
                         out_pos[out_start[v]:out_start[v+1]], ascending
    in_start, in_pos     likewise for positions entering v

A ``disabled`` uint8 mask removes positions from a computation (fault
sets, subgraph restriction) without rebuilding the arrays — this is what
makes exhaustive fault enumeration cheap.

The kernels compile with numba by default.  FLOWPRESERVE_NUMBA=0 selects
the pure-Python fallback (the same code objects, uncompiled);
FLOWPRESERVE_NUMBA=1 makes the numba import mandatory.  See
benchmarks/bench_kernels.py for a comparison of the two paths.
"""

import os

import numpy as np


def _numba_requested():
    raw = os.environ.get("FLOWPRESERVE_NUMBA", "auto").strip().lower()
    if raw in ("0", "false", "off", "no"):
        return False
    if raw in ("1", "true", "on", "yes"):
        return True
    return None


_req = _numba_requested()
if _req is False:
    NUMBA_ENABLED = False
elif _req is True:
    import numba

    NUMBA_ENABLED = True
else:
    try:
        import numba

        NUMBA_ENABLED = True
    except ImportError:
        NUMBA_ENABLED = False


def _compile(fn):
    if not NUMBA_ENABLED:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


def build_adjacency(n, tails, heads):
    """CSR-style adjacency over positions, ascending edge id per vertex."""
    out_pos = np.argsort(tails, kind="stable").astype(np.int64)
    in_pos = np.argsort(heads, kind="stable").astype(np.int64)
    out_start = np.zeros(n + 1, dtype=np.int64)
    in_start = np.zeros(n + 1, dtype=np.int64)
    if tails.shape[0]:
        np.cumsum(np.bincount(tails, minlength=n), out=out_start[1:])
        np.cumsum(np.bincount(heads, minlength=n), out=in_start[1:])
    return out_start, out_pos, in_start, in_pos


@_compile
def max_flow_arrays(n, tails, heads, out_start, out_pos, in_start, in_pos,
                    sources, t, cap, disabled):
    """Unit-capacity max flow from a source set to t; cap<0 means unbounded.

    Augments along BFS residual paths.  At each vertex the scan order is
    forward arcs (unused positions) ascending, then backward arcs (used
    positions) ascending; the queue is seeded with the sources in the given
    (ascending) order.  Returns (value, used) where used[p]=1 marks a
    position carrying one unit.
    """
    m = tails.shape[0]
    used = np.zeros(m, dtype=np.uint8)
    parent_arc = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    value = 0
    while cap < 0 or value < cap:
        for i in range(n):
            parent_arc[i] = -2
        qh = 0
        qt = 0
        for si in range(sources.shape[0]):
            s = sources[si]
            parent_arc[s] = -1
            queue[qt] = s
            qt += 1
        found = False
        while qh < qt and not found:
            u = queue[qh]
            qh += 1
            a = out_start[u]
            b = out_start[u + 1]
            for ii in range(a, b):
                p = out_pos[ii]
                if disabled[p] == 0 and used[p] == 0:
                    v = heads[p]
                    if parent_arc[v] == -2:
                        parent_arc[v] = 2 * p
                        if v == t:
                            found = True
                            break
                        queue[qt] = v
                        qt += 1
            if found:
                break
            a = in_start[u]
            b = in_start[u + 1]
            for ii in range(a, b):
                p = in_pos[ii]
                if disabled[p] == 0 and used[p] == 1:
                    v = tails[p]
                    if parent_arc[v] == -2:
                        parent_arc[v] = 2 * p + 1
                        if v == t:
                            found = True
                            break
                        queue[qt] = v
                        qt += 1
        if not found:
            break
        v = t
        while parent_arc[v] != -1:
            arc = parent_arc[v]
            p = arc >> 1
            if arc & 1:
                used[p] = 0
                v = heads[p]
            else:
                used[p] = 1
                v = tails[p]
        value += 1
    return value, used


@_compile
def residual_reach_from(n, tails, heads, out_start, out_pos, in_start, in_pos,
                        seeds, used, disabled):
    """Vertices reachable from the seed set in the residual graph of used."""
    mask = np.zeros(n, dtype=np.uint8)
    queue = np.empty(n, dtype=np.int64)
    qh = 0
    qt = 0
    for si in range(seeds.shape[0]):
        s = seeds[si]
        if mask[s] == 0:
            mask[s] = 1
            queue[qt] = s
            qt += 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        a = out_start[u]
        b = out_start[u + 1]
        for ii in range(a, b):
            p = out_pos[ii]
            if disabled[p] == 0 and used[p] == 0:
                v = heads[p]
                if mask[v] == 0:
                    mask[v] = 1
                    queue[qt] = v
                    qt += 1
        a = in_start[u]
        b = in_start[u + 1]
        for ii in range(a, b):
            p = in_pos[ii]
            if disabled[p] == 0 and used[p] == 1:
                v = tails[p]
                if mask[v] == 0:
                    mask[v] = 1
                    queue[qt] = v
                    qt += 1
    return mask


@_compile
def residual_reach_to(n, tails, heads, out_start, out_pos, in_start, in_pos,
                      t, used, disabled):
    """Vertices with a residual path to t (reverse traversal from t)."""
    mask = np.zeros(n, dtype=np.uint8)
    queue = np.empty(n, dtype=np.int64)
    mask[t] = 1
    queue[0] = t
    qh = 0
    qt = 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        a = in_start[u]
        b = in_start[u + 1]
        for ii in range(a, b):
            p = in_pos[ii]
            if disabled[p] == 0 and used[p] == 0:
                v = tails[p]
                if mask[v] == 0:
                    mask[v] = 1
                    queue[qt] = v
                    qt += 1
        a = out_start[u]
        b = out_start[u + 1]
        for ii in range(a, b):
            p = out_pos[ii]
            if disabled[p] == 0 and used[p] == 1:
                v = heads[p]
                if mask[v] == 0:
                    mask[v] = 1
                    queue[qt] = v
                    qt += 1
    return mask


@_compile
def first_flow_mismatch(n, g_tails, g_heads, g_out_start, g_out_pos,
                        g_in_start, g_in_pos, g_disabled,
                        h_tails, h_heads, h_out_start, h_out_pos,
                        h_in_start, h_in_pos, h_disabled,
                        sources, s, lam):
    """First t != s where the lam-capped flows of the two graphs differ, else -1.

    Inner loop of the exhaustive fault-enumeration verifier: both graphs
    share vertex numbering; the fault set is encoded in the disabled masks.
    """
    for t in range(n):
        if t == s:
            continue
        vg, _ = max_flow_arrays(n, g_tails, g_heads, g_out_start, g_out_pos,
                                g_in_start, g_in_pos, sources, t, lam,
                                g_disabled)
        vh, _ = max_flow_arrays(n, h_tails, h_heads, h_out_start, h_out_pos,
                                h_in_start, h_in_pos, sources, t, lam,
                                h_disabled)
        if vg != vh:
            return t
    return -1

"""Hot inner loops.

Every kernel exists twice: a numba-compiled version and a fallback that
runs without numba.  Where the loop vectorises cleanly the fallback is
plain numpy; the backtracking and subset-DP kernels have no vectorised
form, so their fallback is the same source run by the interpreter.
The public wrappers at the bottom pick a path via ``_accel.use_numba``.

Vertex sets are int64 bitmasks throughout, which caps these kernels at
62 vertices (list search) or at the subset-table size (2**n entries).
"""
import numpy as np

from ._accel import njit, use_numba

SAT = 1
UNSAT = 0
BUDGET = -1


# -- independent-set counts over all vertex subsets -------------------------

def _is_counts_numpy(closed, n):
    size = 1 << n
    cnt = np.empty(size, dtype=np.int64)
    par = np.empty(size, dtype=np.uint8)
    cnt[0] = 1
    par[0] = 0
    for v in range(n):
        lo = 1 << v
        low = np.arange(lo, dtype=np.int64)
        # S = low | v: drop v, or drop N[v] (only lower bits remain)
        keep = np.int64(~int(closed[v]) & (lo - 1))
        cnt[lo:2 * lo] = cnt[:lo] + cnt[low & keep]
        par[lo:2 * lo] = par[:lo] ^ 1
    return cnt, par


def _is_counts_loop(closed, n):
    size = 1 << n
    cnt = np.empty(size, dtype=np.int64)
    par = np.empty(size, dtype=np.uint8)
    cnt[0] = 1
    par[0] = 0
    for s in range(1, size):
        b = s & -s
        v = 0
        while b > 1:
            b >>= 1
            v += 1
        b = s & -s
        cnt[s] = cnt[s ^ b] + cnt[s & ~closed[v]]
        par[s] = par[s ^ b] ^ 1
    return cnt, par


_is_counts_nb = njit(_is_counts_loop)


# -- list-coloring backtracking with unit propagation -----------------------

def _list_color_search(indptr, indices, lists, budget):
    """Iterative DFS over bitmask lists.

    The branching vertex is the uncolored one with the fewest remaining
    colors (lowest index on ties), so singleton lists are forced before any
    real branching happens and an empty list is a conflict.  Returns
    ``(status, colors, nodes)`` with colors 1-based, 0 meaning uncolored.
    """
    n = lists.shape[0]
    avail = lists.copy()
    color = np.zeros(n, dtype=np.int64)
    cap = indices.shape[0] + 1
    trail_v = np.empty(cap, dtype=np.int64)
    trail_m = np.empty(cap, dtype=np.int64)
    tp = 0
    dec_v = np.empty(n + 1, dtype=np.int64)
    dec_rem = np.empty(n + 1, dtype=np.int64)
    dec_tp = np.empty(n + 1, dtype=np.int64)
    depth = 0
    nodes = 0
    while True:
        best = -1
        best_pc = 64
        for u in range(n):
            if color[u] == 0:
                x = avail[u]
                pc = 0
                while x:
                    x &= x - 1
                    pc += 1
                if pc < best_pc:
                    best_pc = pc
                    best = u
                    if pc <= 1:
                        break
        if best == -1:
            return SAT, color, nodes
        if best_pc > 0:
            dec_v[depth] = best
            dec_rem[depth] = avail[best]
            dec_tp[depth] = tp
            depth += 1
        while True:
            if depth == 0:
                return UNSAT, color, nodes
            d = depth - 1
            while tp > dec_tp[d]:
                tp -= 1
                avail[trail_v[tp]] = trail_m[tp]
            v = dec_v[d]
            color[v] = 0
            rem = dec_rem[d]
            if rem == 0:
                depth -= 1
                continue
            bit = rem & -rem
            dec_rem[d] = rem ^ bit
            c = 1
            b = bit
            while b > 1:
                b >>= 1
                c += 1
            color[v] = c
            for k in range(indptr[v], indptr[v + 1]):
                w = indices[k]
                if color[w] == 0 and (avail[w] & bit) != 0:
                    trail_v[tp] = w
                    trail_m[tp] = avail[w]
                    tp += 1
                    avail[w] = avail[w] & ~bit
            nodes += 1
            if budget >= 0 and nodes > budget:
                return BUDGET, color, nodes
            break


_list_color_search_nb = njit(_list_color_search)


# -- canonical adjacency codes ----------------------------------------------

def _canon_numpy(edge_bits, table, weights):
    g = edge_bits.shape[0]
    out = np.empty(g, dtype=np.int64)
    arg = np.empty(g, dtype=np.int64)
    for i in range(g):
        codes = (edge_bits[i][table].astype(np.int64) * weights).sum(axis=1)
        j = int(np.argmin(codes))
        out[i] = codes[j]
        arg[i] = j
    return out, arg


def _canon_loop(edge_bits, table, weights):
    g = edge_bits.shape[0]
    n_perm = table.shape[0]
    n_pair = table.shape[1]
    out = np.empty(g, dtype=np.int64)
    arg = np.empty(g, dtype=np.int64)
    for i in range(g):
        best = np.int64(-1)
        best_p = 0
        for p in range(n_perm):
            code = np.int64(0)
            for k in range(n_pair):
                if edge_bits[i, table[p, k]]:
                    code |= weights[k]
            if best < 0 or code < best:
                best = code
                best_p = p
        out[i] = best
        arg[i] = best_p
    return out, arg


_canon_nb = njit(_canon_loop)


# -- treedepth over all vertex subsets --------------------------------------

def _treedepth_table(adj):
    n = adj.shape[0]
    size = 1 << n
    td = np.zeros(size, dtype=np.int8)
    root = np.full(size, -1, dtype=np.int8)
    for s in range(1, size):
        low = s & -s
        comp = low
        frontier = low
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            v = 0
            while b > 1:
                b >>= 1
                v += 1
            nb = adj[v] & s & ~comp
            comp |= nb
            frontier |= nb
        if comp == s:
            best = 127
            best_v = -1
            rest = s
            while rest:
                b = rest & -rest
                rest ^= b
                t = td[s ^ b]
                if t < best:
                    best = t
                    v = 0
                    bb = b
                    while bb > 1:
                        bb >>= 1
                        v += 1
                    best_v = v
            td[s] = best + 1
            root[s] = best_v
        else:
            a = td[comp]
            c = td[s ^ comp]
            td[s] = a if a > c else c
    return td, root


_treedepth_table_nb = njit(_treedepth_table)


# -- dispatch ---------------------------------------------------------------

def independent_set_counts(closed, n):
    """Per-subset counts of independent sets (empty set included) and popcount parity."""
    closed = np.asarray(closed, dtype=np.int64)
    if use_numba():
        return _is_counts_nb(closed, n)
    return _is_counts_numpy(closed, n)


def list_color_search(indptr, indices, lists, budget=-1):
    args = (np.asarray(indptr, dtype=np.int64), np.asarray(indices, dtype=np.int64),
            np.asarray(lists, dtype=np.int64), int(budget))
    if use_numba():
        status, color, nodes = _list_color_search_nb(*args)
    else:
        status, color, nodes = _list_color_search(*args)
    return int(status), color, int(nodes)


def canonical_codes(edge_bits, table, weights):
    edge_bits = np.ascontiguousarray(edge_bits, dtype=np.uint8)
    if use_numba():
        return _canon_nb(edge_bits, table, weights)
    return _canon_numpy(edge_bits, table, weights)


def treedepth_table(adj):
    adj = np.asarray(adj, dtype=np.int64)
    if use_numba():
        return _treedepth_table_nb(adj)
    return _treedepth_table(adj)

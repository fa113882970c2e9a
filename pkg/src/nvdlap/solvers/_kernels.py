"""Compiled kernels: Laplacian elimination, triangular solves and tree solves.

Random numbers inside kernels come from splitmix64 so that factorizations are
reproducible from an integer seed without touching global RNG state.
"""

import numpy as np
from numba import njit

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_TO_UNIT = 1.0 / 9007199254740992.0  # 2**-53


@njit(cache=True)
def _uniform(state):
    s = state[0] + _GOLDEN
    state[0] = s
    z = (s ^ (s >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)) * _TO_UNIT


@njit(cache=True)
def _bucket_insert(v, k, key, bhead, bnext, bprev):
    key[v] = k
    bprev[v] = -1
    h = bhead[k]
    bnext[v] = h
    if h != -1:
        bprev[h] = v
    bhead[k] = v


@njit(cache=True)
def _bucket_remove(v, key, bhead, bnext, bprev):
    p = bprev[v]
    q = bnext[v]
    if p != -1:
        bnext[p] = q
    else:
        bhead[key[v]] = q
    if q != -1:
        bprev[q] = p


@njit(cache=True)
def _sort_pairs(w, u, cnt, su, sw):
    # copy the first cnt (w, u) pairs into (sw, su) sorted by weight
    if cnt <= 24:
        for i in range(cnt):
            x = w[i]
            y = u[i]
            j = i - 1
            while j >= 0 and sw[j] > x:
                sw[j + 1] = sw[j]
                su[j + 1] = su[j]
                j -= 1
            sw[j + 1] = x
            su[j + 1] = y
    else:
        idx = np.argsort(w[:cnt])
        for i in range(cnt):
            sw[i] = w[idx[i]]
            su[i] = u[idx[i]]


@njit(cache=True)
def eliminate(n, eu, ev, ew, exact, seed):
    """Greedy minimum-degree elimination of a graph Laplacian.

    With ``exact`` the Schur complement clique of each pivot is inserted in
    full (sparse Cholesky). Otherwise a pivot with ``k`` neighbors adds
    ``k - 1`` sampled edges whose expectation equals the clique.

    Returns ``(order, colptr, rows, vals, diag)``: pivot ``order[t]`` has
    factor column ``rows/vals[colptr[t]:colptr[t+1]]`` (neighbor, weight over
    pivot degree) and pivot value ``diag[t]``.
    """
    m = len(eu)
    state = np.empty(1, np.uint64)
    state[0] = np.uint64(seed)

    cap = max(2 * m, 16)
    nbr = np.empty(cap, np.int64)
    val = np.empty(cap, np.float64)
    nxt = np.empty(cap, np.int64)
    head = np.full(n, -1, np.int64)
    deg = np.zeros(n, np.int64)
    used = 0
    free = -1
    nfree = 0
    for e in range(m):
        a = eu[e]
        b = ev[e]
        nbr[used] = b
        val[used] = ew[e]
        nxt[used] = head[a]
        head[a] = used
        used += 1
        nbr[used] = a
        val[used] = ew[e]
        nxt[used] = head[b]
        head[b] = used
        used += 1
        deg[a] += 1
        deg[b] += 1

    # bucket queue on current multi-degree, seeded random tie order
    key = np.empty(n, np.int64)
    bhead = np.full(n + 1, -1, np.int64)
    bnext = np.full(n, -1, np.int64)
    bprev = np.full(n, -1, np.int64)
    perm = np.arange(n)
    for i in range(n - 1, 0, -1):
        j = int(_uniform(state) * (i + 1))
        if j > i:
            j = i
        tmp = perm[i]
        perm[i] = perm[j]
        perm[j] = tmp
    for i in range(n):
        v = perm[i]
        _bucket_insert(v, min(deg[v], n), key, bhead, bnext, bprev)

    order = np.empty(n, np.int64)
    diag = np.zeros(n, np.float64)
    colptr = np.zeros(n + 1, np.int64)
    fcap = max(2 * m + n, 16)
    frows = np.empty(fcap, np.int64)
    fvals = np.empty(fcap, np.float64)
    fp = 0

    elim = np.zeros(n, np.bool_)
    pos = np.full(n, -1, np.int64)
    cu = np.empty(n, np.int64)
    cw = np.empty(n, np.float64)
    su = np.empty(n, np.int64)
    sw = np.empty(n, np.float64)
    csum = np.empty(n, np.float64)
    mind = 0

    for t in range(n):
        while bhead[mind] == -1:
            mind += 1
        v = bhead[mind]
        _bucket_remove(v, key, bhead, bnext, bprev)
        elim[v] = True
        order[t] = v

        cnt = 0
        e = head[v]
        while e != -1:
            en = nxt[e]
            u = nbr[e]
            if not elim[u]:
                deg[u] -= 1
                p = pos[u]
                if p == -1:
                    pos[u] = cnt
                    cu[cnt] = u
                    cw[cnt] = val[e]
                    cnt += 1
                else:
                    cw[p] += val[e]
            nxt[e] = free
            free = e
            nfree += 1
            e = en
        head[v] = -1

        wsum = 0.0
        for i in range(cnt):
            pos[cu[i]] = -1
            wsum += cw[i]
        diag[t] = wsum

        if fp + cnt > fcap:
            fcap = max(2 * fcap, fp + cnt)
            r2 = np.empty(fcap, np.int64)
            v2 = np.empty(fcap, np.float64)
            r2[:fp] = frows[:fp]
            v2[:fp] = fvals[:fp]
            frows = r2
            fvals = v2
        for i in range(cnt):
            frows[fp] = cu[i]
            fvals[fp] = cw[i] / wsum
            fp += 1
        colptr[t + 1] = fp

        if cnt >= 2:
            if exact:
                need = cnt * (cnt - 1)
            else:
                need = 2 * (cnt - 1)
            if nfree + (cap - used) < need:
                newcap = max(2 * cap, used + need)
                n2 = np.empty(newcap, np.int64)
                w2 = np.empty(newcap, np.float64)
                x2 = np.empty(newcap, np.int64)
                n2[:used] = nbr[:used]
                w2[:used] = val[:used]
                x2[:used] = nxt[:used]
                nbr = n2
                val = w2
                nxt = x2
                cap = newcap

            if exact:
                for i in range(cnt):
                    for j in range(i + 1, cnt):
                        a = cu[i]
                        b = cu[j]
                        w = cw[i] * cw[j] / wsum
                        for side in range(2):
                            if free != -1:
                                slot = free
                                free = nxt[free]
                                nfree -= 1
                            else:
                                slot = used
                                used += 1
                            if side == 0:
                                nbr[slot] = b
                                nxt[slot] = head[a]
                                head[a] = slot
                            else:
                                nbr[slot] = a
                                nxt[slot] = head[b]
                                head[b] = slot
                            val[slot] = w
                        deg[a] += 1
                        deg[b] += 1
            else:
                _sort_pairs(cw, cu, cnt, su, sw)
                acc = 0.0
                for i in range(cnt):
                    acc += sw[i]
                    csum[i] = acc
                total = acc
                wdeg = wsum
                scale = 1.0
                for i in range(cnt - 1):
                    w = sw[i] * scale
                    f = w / wdeg
                    r = csum[i] + _uniform(state) * (total - csum[i])
                    j = np.searchsorted(csum[:cnt], r, side="right")
                    if j <= i:
                        j = i + 1
                    elif j >= cnt:
                        j = cnt - 1
                    a = su[i]
                    b = su[j]
                    w = f * (1.0 - f) * wdeg
                    for side in range(2):
                        if free != -1:
                            slot = free
                            free = nxt[free]
                            nfree -= 1
                        else:
                            slot = used
                            used += 1
                        if side == 0:
                            nbr[slot] = b
                            nxt[slot] = head[a]
                            head[a] = slot
                        else:
                            nbr[slot] = a
                            nxt[slot] = head[b]
                            head[b] = slot
                        val[slot] = w
                    deg[a] += 1
                    deg[b] += 1
                    wdeg *= (1.0 - f) * (1.0 - f)
                    scale *= 1.0 - f

        for i in range(cnt):
            u = cu[i]
            k = min(deg[u], n)
            if k != key[u]:
                _bucket_remove(u, key, bhead, bnext, bprev)
                _bucket_insert(u, k, key, bhead, bnext, bprev)
                if k < mind:
                    mind = k

    return order, colptr, frows[:fp].copy(), fvals[:fp].copy(), diag


@njit(cache=True)
def ldl_solve(order, colptr, rows, vals, diag, b):
    """Forward substitution, pivot scaling and back substitution through an
    :func:`eliminate` factor. Zero pivots (one per component) map to zero."""
    x = b.copy()
    n = len(order)
    for t in range(n):
        v = order[t]
        z = x[v]
        for e in range(colptr[t], colptr[t + 1]):
            x[rows[e]] += vals[e] * z
        if diag[t] > 0.0:
            x[v] = z / diag[t]
        else:
            x[v] = 0.0
    for t in range(n - 1, -1, -1):
        v = order[t]
        s = x[v]
        for e in range(colptr[t], colptr[t + 1]):
            s += vals[e] * x[rows[e]]
        x[v] = s
    return x


@njit(cache=True)
def tree_order(parent):
    """Root-first BFS order of a forest given by parent pointers, and the
    root of every node."""
    n = len(parent)
    cnt = np.zeros(n + 1, np.int64)
    for v in range(n):
        if parent[v] >= 0:
            cnt[parent[v] + 1] += 1
    for v in range(n):
        cnt[v + 1] += cnt[v]
    child = np.empty(max(cnt[n], 1), np.int64)
    fill = cnt[:n].copy()
    for v in range(n):
        p = parent[v]
        if p >= 0:
            child[fill[p]] = v
            fill[p] += 1
    order = np.empty(n, np.int64)
    root = np.empty(n, np.int64)
    k = 0
    for v in range(n):
        if parent[v] < 0:
            order[k] = v
            root[v] = v
            k += 1
    head = 0
    while head < k:
        v = order[head]
        head += 1
        for e in range(cnt[v], cnt[v + 1]):
            c = child[e]
            order[k] = c
            root[c] = root[v]
            k += 1
    return order[:k], root


@njit(cache=True)
def tree_solve_kernel(order, parent, pweight, b):
    """Solve ``L_tree x = b`` by accumulating subtree sums leaf to root, then
    fixing potentials root to leaf (roots at potential 0)."""
    n = len(b)
    flow = b.copy()
    for t in range(len(order) - 1, -1, -1):
        v = order[t]
        p = parent[v]
        if p >= 0:
            flow[p] += flow[v]
    x = np.zeros(n)
    for t in range(len(order)):
        v = order[t]
        p = parent[v]
        if p >= 0:
            x[v] = x[p] + flow[v] / pweight[v]
    return x

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled table-driven kernels. Must stay behaviorally identical to the
pure implementations in mdsconv.kernels (same enumeration order, same
witnesses, same values)."""

from cpython.mem cimport PyMem_Malloc, PyMem_Free
from libc.string cimport memset

cdef long long INF = <long long>1 << 62


cdef inline int _det_tab(int* m, int s, int q,
                         const int[::1] mul, const int[::1] add,
                         const int[::1] neg, const int[::1] inv):
    cdef int det = 1
    cdef int i, r, j, piv, pv, ipv, f, t, io, ro, po, tmp
    for i in range(s):
        piv = -1
        for r in range(i, s):
            if m[r * s + i] != 0:
                piv = r
                break
        if piv < 0:
            return 0
        io = i * s
        if piv != i:
            po = piv * s
            for j in range(i, s):
                tmp = m[io + j]
                m[io + j] = m[po + j]
                m[po + j] = tmp
            det = neg[det]
        pv = m[io + i]
        det = mul[det * q + pv]
        ipv = inv[pv]
        for r in range(i + 1, s):
            f = m[r * s + i]
            if f != 0:
                f = mul[f * q + ipv]
                ro = r * s
                for j in range(i + 1, s):
                    t = mul[f * q + m[io + j]]
                    if t != 0:
                        m[ro + j] = add[m[ro + j] * q + neg[t]]
    return det


cdef inline int _next_comb(int* comb, int total, int s):
    cdef int i = s - 1, j
    while i >= 0 and comb[i] == total - s + i:
        i -= 1
    if i < 0:
        return 0
    comb[i] += 1
    for j in range(i + 1, s):
        comb[j] = comb[j - 1] + 1
    return 1


def scan_minors(const int[::1] flat, int r, int c, int q,
                const int[::1] mul, const int[::1] add,
                const int[::1] neg, const int[::1] inv):
    """First vanishing minor as (rows, cols) or None; sizes ascending, then
    lexicographic row and column selections."""
    cdef int maxs = r if r < c else c
    cdef int* rows = <int*>PyMem_Malloc(maxs * sizeof(int))
    cdef int* cols = <int*>PyMem_Malloc(maxs * sizeof(int))
    cdef int* m = <int*>PyMem_Malloc(maxs * maxs * sizeof(int))
    if rows == NULL or cols == NULL or m == NULL:
        PyMem_Free(rows); PyMem_Free(cols); PyMem_Free(m)
        raise MemoryError()
    cdef int s, i, j, found = 0
    cdef int more_rows, more_cols
    try:
        for s in range(1, maxs + 1):
            for i in range(s):
                rows[i] = i
            more_rows = 1
            while more_rows:
                for i in range(s):
                    cols[i] = i
                more_cols = 1
                while more_cols:
                    for i in range(s):
                        for j in range(s):
                            m[i * s + j] = flat[rows[i] * c + cols[j]]
                    if _det_tab(m, s, q, mul, add, neg, inv) == 0:
                        found = 1
                        break
                    more_cols = _next_comb(cols, c, s)
                if found:
                    break
                more_rows = _next_comb(rows, r, s)
            if found:
                break
        if not found:
            return None
        return tuple(rows[i] for i in range(s)), tuple(cols[i] for i in range(s))
    finally:
        PyMem_Free(rows)
        PyMem_Free(cols)
        PyMem_Free(m)


def scan_fullsize(const int[::1] flat, int r, int c, int q,
                  const int[::1] mul, const int[::1] add,
                  const int[::1] neg, const int[::1] inv):
    """First row selection whose full-size (c-column) minor vanishes, or None."""
    cdef int* rows = <int*>PyMem_Malloc(c * sizeof(int))
    cdef int* m = <int*>PyMem_Malloc(c * c * sizeof(int))
    if rows == NULL or m == NULL:
        PyMem_Free(rows); PyMem_Free(m)
        raise MemoryError()
    cdef int i, j, found = 0, more = 1
    try:
        for i in range(c):
            rows[i] = i
        while more:
            for i in range(c):
                for j in range(c):
                    m[i * c + j] = flat[rows[i] * c + j]
            if _det_tab(m, c, q, mul, add, neg, inv) == 0:
                found = 1
                break
            more = _next_comb(rows, r, c)
        if not found:
            return None
        return tuple(rows[i] for i in range(c))
    finally:
        PyMem_Free(rows)
        PyMem_Free(m)


cdef inline void _heap_push(long long** hc, long long** hn,
                            Py_ssize_t* size, Py_ssize_t* cap,
                            long long cost, long long node) except *:
    cdef Py_ssize_t i, parent
    cdef long long* nc
    cdef long long* nn
    if size[0] == cap[0]:
        cap[0] = cap[0] * 2
        nc = <long long*>PyMem_Malloc(cap[0] * sizeof(long long))
        nn = <long long*>PyMem_Malloc(cap[0] * sizeof(long long))
        if nc == NULL or nn == NULL:
            PyMem_Free(nc); PyMem_Free(nn)
            raise MemoryError()
        for i in range(size[0]):
            nc[i] = hc[0][i]
            nn[i] = hn[0][i]
        PyMem_Free(hc[0])
        PyMem_Free(hn[0])
        hc[0] = nc
        hn[0] = nn
    i = size[0]
    size[0] += 1
    while i > 0:
        parent = (i - 1) >> 1
        if hc[0][parent] <= cost:
            break
        hc[0][i] = hc[0][parent]
        hn[0][i] = hn[0][parent]
        i = parent
    hc[0][i] = cost
    hn[0][i] = node


cdef inline void _heap_pop(long long* hc, long long* hn, Py_ssize_t* size,
                           long long* cost, long long* node):
    cost[0] = hc[0]
    node[0] = hn[0]
    size[0] -= 1
    cdef long long c = hc[size[0]], n = hn[size[0]]
    cdef Py_ssize_t i = 0, child
    while True:
        child = 2 * i + 1
        if child >= size[0]:
            break
        if child + 1 < size[0] and hc[child + 1] < hc[child]:
            child += 1
        if hc[child] >= c:
            break
        hc[i] = hc[child]
        hn[i] = hn[child]
        i = child
    hc[i] = c
    hn[i] = n


def trellis_min_weight(int n, int k, int q, const int[::1] degrees,
                       const int[::1] coeff_flat, const long long[::1] coeff_offs,
                       const int[::1] mul, const int[::1] add):
    """Least-cost first return to the zero state after a nonzero first input."""
    cdef int delta = 0, j, i, t, d
    for j in range(k):
        delta += degrees[j]
    cdef long long nstates = 1, qk = 1
    for i in range(delta):
        nstates *= q
    for j in range(k):
        qk *= q

    cdef int* pos = <int*>PyMem_Malloc(k * sizeof(int))
    cdef long long* placeval = <long long*>PyMem_Malloc((delta + 1) * sizeof(long long))
    cdef int* digits = <int*>PyMem_Malloc((delta if delta > 0 else 1) * sizeof(int))
    cdef long long* shifted = <long long*>PyMem_Malloc(nstates * sizeof(long long))
    cdef int* s_out = <int*>PyMem_Malloc(nstates * n * sizeof(int))
    cdef long long* inject = <long long*>PyMem_Malloc(qk * sizeof(long long))
    cdef long long* dist = <long long*>PyMem_Malloc(nstates * sizeof(long long))
    cdef int* abuf = <int*>PyMem_Malloc(n * sizeof(int))
    cdef int* a_out = NULL
    cdef int have_a_out = 0
    if qk * n <= (1 << 22):
        a_out = <int*>PyMem_Malloc(qk * n * sizeof(int))
        have_a_out = a_out != NULL
    cdef long long* hc = <long long*>PyMem_Malloc(1024 * sizeof(long long))
    cdef long long* hn = <long long*>PyMem_Malloc(1024 * sizeof(long long))
    cdef Py_ssize_t hsize = 0, hcap = 1024

    if (pos == NULL or placeval == NULL or digits == NULL or shifted == NULL
            or s_out == NULL or inject == NULL or dist == NULL or abuf == NULL
            or hc == NULL or hn == NULL):
        PyMem_Free(pos); PyMem_Free(placeval); PyMem_Free(digits)
        PyMem_Free(shifted); PyMem_Free(s_out); PyMem_Free(inject)
        PyMem_Free(dist); PyMem_Free(abuf); PyMem_Free(a_out)
        PyMem_Free(hc); PyMem_Free(hn)
        raise MemoryError()

    cdef long long s, a, v, sh, ns, nd, dd, cost, best_direct = INF, result = -1
    cdef long long sbase, vecoff, abase
    cdef int dj, pj, x, acc = 0, done = 0
    cdef int* out

    try:
        for j in range(k):
            if degrees[j] > 0:
                pos[j] = acc
                acc += degrees[j]
            else:
                pos[j] = -1
        placeval[0] = 1
        for i in range(delta):
            placeval[i + 1] = placeval[i] * q

        memset(s_out, 0, nstates * n * sizeof(int))
        shifted[0] = 0
        for s in range(1, nstates):
            v = s
            for i in range(delta):
                digits[i] = <int>(v % q)
                v //= q
            sh = 0
            for j in range(k):
                dj = degrees[j]
                if dj == 0:
                    continue
                pj = pos[j]
                for i in range(2, dj + 1):
                    sh += <long long>digits[pj + i - 2] * placeval[pj + i - 1]
            shifted[s] = sh
            sbase = s * n
            for j in range(k):
                dj = degrees[j]
                pj = pos[j]
                for i in range(1, dj + 1):
                    d = digits[pj + i - 1]
                    if d != 0:
                        vecoff = coeff_offs[j] + <long long>i * n
                        for t in range(n):
                            x = mul[coeff_flat[vecoff + t] * q + d]
                            if x != 0:
                                s_out[sbase + t] = add[s_out[sbase + t] * q + x]

        inject[0] = 0
        for a in range(1, qk):
            v = a
            sh = 0
            for j in range(k):
                d = <int>(v % q)
                v //= q
                if degrees[j] > 0 and d != 0:
                    sh += <long long>d * placeval[pos[j]]
            inject[a] = sh

        if have_a_out:
            memset(a_out, 0, qk * n * sizeof(int))
            for a in range(1, qk):
                v = a
                abase = a * n
                for j in range(k):
                    d = <int>(v % q)
                    v //= q
                    if d != 0:
                        vecoff = coeff_offs[j]
                        for t in range(n):
                            x = mul[coeff_flat[vecoff + t] * q + d]
                            if x != 0:
                                a_out[abase + t] = add[a_out[abase + t] * q + x]

        for s in range(nstates):
            dist[s] = INF

        for a in range(1, qk):
            if have_a_out:
                out = a_out + a * n
            else:
                memset(abuf, 0, n * sizeof(int))
                v = a
                for j in range(k):
                    d = <int>(v % q)
                    v //= q
                    if d != 0:
                        vecoff = coeff_offs[j]
                        for t in range(n):
                            x = mul[coeff_flat[vecoff + t] * q + d]
                            if x != 0:
                                abuf[t] = add[abuf[t] * q + x]
                out = abuf
            cost = 0
            for t in range(n):
                if out[t] != 0:
                    cost += 1
            ns = inject[a]
            if ns == 0:
                if cost < best_direct:
                    best_direct = cost
            elif cost < dist[ns]:
                dist[ns] = cost
                _heap_push(&hc, &hn, &hsize, &hcap, cost, ns)

        while hsize > 0 and not done:
            _heap_pop(hc, hn, &hsize, &dd, &s)
            if dd >= best_direct:
                result = best_direct
                done = 1
                break
            if s == 0:
                result = dd
                done = 1
                break
            if dd > dist[s]:
                continue
            sbase = s * n
            sh = shifted[s]
            for a in range(qk):
                if have_a_out:
                    out = a_out + a * n
                else:
                    memset(abuf, 0, n * sizeof(int))
                    v = a
                    for j in range(k):
                        d = <int>(v % q)
                        v //= q
                        if d != 0:
                            vecoff = coeff_offs[j]
                            for t in range(n):
                                x = mul[coeff_flat[vecoff + t] * q + d]
                                if x != 0:
                                    abuf[t] = add[abuf[t] * q + x]
                    out = abuf
                cost = 0
                for t in range(n):
                    if add[out[t] * q + s_out[sbase + t]] != 0:
                        cost += 1
                nd = dd + cost
                if nd >= best_direct:
                    continue
                ns = sh + inject[a]
                if nd < dist[ns]:
                    dist[ns] = nd
                    _heap_push(&hc, &hn, &hsize, &hcap, nd, ns)
        if not done:
            result = best_direct
        return result
    finally:
        PyMem_Free(pos); PyMem_Free(placeval); PyMem_Free(digits)
        PyMem_Free(shifted); PyMem_Free(s_out); PyMem_Free(inject)
        PyMem_Free(dist); PyMem_Free(abuf)
        if a_out != NULL:
            PyMem_Free(a_out)
        PyMem_Free(hc); PyMem_Free(hn)

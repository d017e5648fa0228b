"""Hot kernels: exhaustive minor scans and the trellis shortest-path search.

Two interchangeable backends implement the table-driven kernels:

* ``mdsconv._speedups``, a compiled Cython extension;
* the pure-Python functions in this module.

The backend is selected once at import time. Set ``MDSCONV_BACKEND`` to
``pure`` or ``compiled`` to force one (``auto``, the default, prefers the
compiled extension when it is importable). Fields too large for dense
lookup tables always take the generic paths, which call the field's
arithmetic directly.

All three implementations enumerate minors in the same fixed order (sizes
ascending, then lexicographic on row indices, then on column indices) and
must return identical witnesses.
"""

from __future__ import annotations

import heapq
import os
from array import array
from itertools import combinations

_INF = 1 << 62
_A_TABLE_LIMIT = 1 << 22  # precompute per-input output blocks below this size

_env = os.environ.get("MDSCONV_BACKEND", "auto").lower()
if _env not in ("auto", "pure", "compiled"):
    raise ValueError(f"MDSCONV_BACKEND must be auto, pure or compiled, not {_env!r}")

_speedups = None
if _env != "pure":
    try:
        from mdsconv import _speedups
    except ImportError:
        _speedups = None
        if _env == "compiled":
            raise ImportError(
                "MDSCONV_BACKEND=compiled but the mdsconv._speedups extension "
                "is not built; reinstall with Cython available"
            )

BACKEND = "compiled" if _speedups is not None else "pure"


def backend_info() -> dict:
    return {"backend": BACKEND, "requested": _env}


# ---------------------------------------------------------------------------
# table-driven pure kernels (mirrored by mdsconv._speedups)

def _det_tab(m, s, q, mul, add, neg, inv):
    """Determinant of the s*s flat index matrix m (destroyed) over the tables."""
    det = 1
    for i in range(s):
        piv = -1
        for r in range(i, s):
            if m[r * s + i]:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != i:
            io, po = i * s, piv * s
            for j in range(i, s):
                m[io + j], m[po + j] = m[po + j], m[io + j]
            det = neg[det]
        pv = m[i * s + i]
        det = mul[det * q + pv]
        ipv = inv[pv]
        io = i * s
        for r in range(i + 1, s):
            f = m[r * s + i]
            if f:
                f = mul[f * q + ipv]
                ro = r * s
                for j in range(i + 1, s):
                    t = mul[f * q + m[io + j]]
                    if t:
                        m[ro + j] = add[m[ro + j] * q + neg[t]]
    return det


def _pure_scan_minors(flat, r, c, tab):
    q, mul, add, neg, inv = tab.q, tab.mul, tab.add, tab.neg, tab.inv
    for s in range(1, min(r, c) + 1):
        for rows in combinations(range(r), s):
            bases = [ri * c for ri in rows]
            for cols in combinations(range(c), s):
                m = [flat[rb + cj] for rb in bases for cj in cols]
                if _det_tab(m, s, q, mul, add, neg, inv) == 0:
                    return rows, cols
    return None


def _pure_scan_fullsize(flat, r, c, tab):
    q, mul, add, neg, inv = tab.q, tab.mul, tab.add, tab.neg, tab.inv
    allcols = range(c)
    for rows in combinations(range(r), c):
        m = [flat[ri * c + cj] for ri in rows for cj in allcols]
        if _det_tab(m, c, q, mul, add, neg, inv) == 0:
            return rows
    return None


def _pure_trellis(n, k, q, degrees, cols, tab):
    """Minimum weight over paths that leave the zero state with a nonzero
    input block and first return to it. cols[j][i] is the length-n index
    vector multiplying input j at lag i."""
    mul, add = tab.mul, tab.add
    delta = sum(degrees)
    nstates = q**delta
    qk = q**k

    pos = []
    acc = 0
    for dj in degrees:
        pos.append(acc if dj > 0 else -1)
        acc += dj

    # per-state tables: shifted register image and state output contribution
    shifted = [0] * nstates
    s_out = [0] * (nstates * n)
    digits = [0] * delta
    for s in range(1, nstates):
        v = s
        for i in range(delta):
            v, digits[i] = divmod(v, q)
        shifted[s] = _shift_state(digits, degrees, pos, q)
        base = s * n
        for j in range(k):
            dj = degrees[j]
            pj = pos[j]
            for i in range(1, dj + 1):
                d = digits[pj + i - 1]
                if d:
                    vec = cols[j][i]
                    for t in range(n):
                        x = mul[vec[t] * q + d]
                        if x:
                            s_out[base + t] = add[s_out[base + t] * q + x]

    inject = [0] * qk
    for a in range(1, qk):
        v = a
        inj = 0
        for j in range(k):
            v, d = divmod(v, q)
            if degrees[j] > 0 and d:
                inj += d * q ** pos[j]
        inject[a] = inj

    # input output contribution, precomputed when small enough
    a_out = None
    if qk * n <= _A_TABLE_LIMIT:
        a_out = [0] * (qk * n)
        for a in range(1, qk):
            v = a
            base = a * n
            for j in range(k):
                v, d = divmod(v, q)
                if d:
                    vec = cols[j][0]
                    for t in range(n):
                        x = mul[vec[t] * q + d]
                        if x:
                            a_out[base + t] = add[a_out[base + t] * q + x]

    def input_out(a):
        if a_out is not None:
            base = a * n
            return a_out[base : base + n]
        out = [0] * n
        v = a
        for j in range(k):
            v, d = divmod(v, q)
            if d:
                vec = cols[j][0]
                for t in range(n):
                    x = mul[vec[t] * q + d]
                    if x:
                        out[t] = add[out[t] * q + x]
        return out

    dist = [_INF] * nstates
    heap = []
    best_direct = _INF
    for a in range(1, qk):
        out = input_out(a)
        cost = sum(1 for t in range(n) if out[t])
        ns = inject[a]
        if ns == 0:
            if cost < best_direct:
                best_direct = cost
        elif cost < dist[ns]:
            dist[ns] = cost
            heapq.heappush(heap, (cost, ns))

    while heap:
        d, s = heapq.heappop(heap)
        if d >= best_direct:
            return best_direct
        if s == 0:
            return d
        if d > dist[s]:
            continue
        sbase = s * n
        sh = shifted[s]
        for a in range(qk):
            out = input_out(a)
            cost = 0
            for t in range(n):
                if add[out[t] * q + s_out[sbase + t]]:
                    cost += 1
            nd = d + cost
            if nd >= best_direct:
                continue
            ns = sh + inject[a]
            if nd < dist[ns]:
                dist[ns] = nd
                heapq.heappush(heap, (nd, ns))
    return best_direct


def _shift_state(digits, degrees, pos, q):
    """Encode the state after one shift with a zero slot for the new input."""
    out_digits = [0] * len(digits)
    for j, dj in enumerate(degrees):
        if dj == 0:
            continue
        pj = pos[j]
        for i in range(2, dj + 1):
            out_digits[pj + i - 1] = digits[pj + i - 2]
    enc = 0
    for d in reversed(out_digits):
        enc = enc * q + d
    return enc


# ---------------------------------------------------------------------------
# generic fallbacks for fields without dense tables

def _det_field(m, s, field):
    det = 1
    for i in range(s):
        piv = -1
        for r in range(i, s):
            if m[r * s + i]:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != i:
            io, po = i * s, piv * s
            for j in range(i, s):
                m[io + j], m[po + j] = m[po + j], m[io + j]
            det = field.neg(det)
        pv = m[i * s + i]
        det = field.mul(det, pv)
        ipv = field.inv(pv)
        io = i * s
        for r in range(i + 1, s):
            f = m[r * s + i]
            if f:
                f = field.mul(f, ipv)
                ro = r * s
                for j in range(i + 1, s):
                    t = field.mul(f, m[io + j])
                    if t:
                        m[ro + j] = field.sub(m[ro + j], t)
    return det


def _generic_scan_minors(flat, r, c, field):
    for s in range(1, min(r, c) + 1):
        for rows in combinations(range(r), s):
            bases = [ri * c for ri in rows]
            for cols in combinations(range(c), s):
                m = [flat[rb + cj] for rb in bases for cj in cols]
                if _det_field(m, s, field) == 0:
                    return rows, cols
    return None


def _generic_scan_fullsize(flat, r, c, field):
    allcols = range(c)
    for rows in combinations(range(r), c):
        m = [flat[ri * c + cj] for ri in rows for cj in allcols]
        if _det_field(m, c, field) == 0:
            return rows
    return None


def _generic_trellis(n, k, q, degrees, cols, field):
    mul, add = field.mul, field.add
    delta = sum(degrees)
    nstates = q**delta
    qk = q**k

    pos = []
    acc = 0
    for dj in degrees:
        pos.append(acc if dj > 0 else -1)
        acc += dj

    def decode(v, count):
        out = []
        for _ in range(count):
            v, d = divmod(v, q)
            out.append(d)
        return out

    def state_out(s):
        digits = decode(s, delta)
        out = [0] * n
        for j in range(k):
            dj = degrees[j]
            pj = pos[j]
            for i in range(1, dj + 1):
                d = digits[pj + i - 1]
                if d:
                    vec = cols[j][i]
                    for t in range(n):
                        x = mul(vec[t], d)
                        if x:
                            out[t] = add(out[t], x)
        return out

    def input_out(a):
        out = [0] * n
        v = a
        for j in range(k):
            v, d = divmod(v, q)
            if d:
                vec = cols[j][0]
                for t in range(n):
                    x = mul(vec[t], d)
                    if x:
                        out[t] = add(out[t], x)
        return out

    def next_state(s, a):
        digits = decode(s, delta)
        adig = decode(a, k)
        out_digits = [0] * delta
        for j in range(k):
            dj = degrees[j]
            if dj == 0:
                continue
            pj = pos[j]
            out_digits[pj] = adig[j]
            for i in range(2, dj + 1):
                out_digits[pj + i - 1] = digits[pj + i - 2]
        enc = 0
        for d in reversed(out_digits):
            enc = enc * q + d
        return enc

    dist = [_INF] * nstates
    heap = []
    best_direct = _INF
    for a in range(1, qk):
        out = input_out(a)
        cost = sum(1 for t in range(n) if out[t])
        ns = next_state(0, a)
        if ns == 0:
            best_direct = min(best_direct, cost)
        elif cost < dist[ns]:
            dist[ns] = cost
            heapq.heappush(heap, (cost, ns))

    while heap:
        d, s = heapq.heappop(heap)
        if d >= best_direct:
            return best_direct
        if s == 0:
            return d
        if d > dist[s]:
            continue
        souts = state_out(s)
        for a in range(qk):
            out = input_out(a)
            cost = 0
            for t in range(n):
                if add(out[t], souts[t]):
                    cost += 1
            nd = d + cost
            if nd >= best_direct:
                continue
            ns = next_state(s, a)
            if nd < dist[ns]:
                dist[ns] = nd
                heapq.heappush(heap, (nd, ns))
    return best_direct


# ---------------------------------------------------------------------------
# dispatch

def scan_minors(flat, r, c, field):
    """First vanishing minor as (rows, cols), or None if all are nonzero."""
    tab = field.tables()
    if tab is None:
        return _generic_scan_minors(flat, r, c, field)
    if _speedups is not None:
        mul, add, neg, inv = tab.arrays()
        res = _speedups.scan_minors(array("i", flat), r, c, tab.q, mul, add, neg, inv)
        return res
    return _pure_scan_minors(flat, r, c, tab)


def scan_fullsize(flat, r, c, field):
    """First row set with vanishing full-size minor, or None."""
    tab = field.tables()
    if tab is None:
        return _generic_scan_fullsize(flat, r, c, field)
    if _speedups is not None:
        mul, add, neg, inv = tab.arrays()
        return _speedups.scan_fullsize(array("i", flat), r, c, tab.q, mul, add, neg, inv)
    return _pure_scan_fullsize(flat, r, c, tab)


def trellis_min_weight(n, k, q, degrees, cols, field):
    """Exact minimum path weight on the encoder state graph (see distance)."""
    tab = field.tables()
    if tab is None:
        return _generic_trellis(n, k, q, degrees, cols, field)
    if _speedups is not None:
        mul, add, neg, inv = tab.arrays()
        deg_arr = array("i", degrees)
        flat = []
        offs = [0] * (k + 1)
        for j in range(k):
            for vec in cols[j]:
                flat.extend(vec)
            offs[j + 1] = len(flat)
        return _speedups.trellis_min_weight(
            n, k, q, deg_arr, array("i", flat), array("q", offs), mul, add
        )
    return _pure_trellis(n, k, q, degrees, cols, tab)

"""Compiled modular Groebner kernel (grevlex over GF(p), p < 2^31).

The kernel follows Buchberger's algorithm with sugar selection and
Gebauer-Moeller pruning, but reduces all S-pairs of the lowest sugar together
as rows of a sparse matrix (the F4 scheme). That shares every reducer row
between the pairs of a batch, which is where plain Buchberger spends its time
on realization systems.

Monomials are rows of ``K`` uint64 words holding 8-bit fields (7 value bits and
a clear guard bit). Word 0 starts with the total degree, followed by
complemented exponents 127 - e_k for k = n-1 down to 0, so lexicographic
comparison of the words is the grevlex order and multiplying two monomials is
``a + b - COMP`` wordwise. Monomials are interned in a hash table and
polynomials store monomial ids.
"""

from __future__ import annotations

import numpy as np
from numba import njit

FIELD = 8
VALUE_MAX = 127
PER_WORD = 8


def layout(nvars: int):
    """Number of words and (word, shift) slot of the degree and every variable."""
    slots = [(0, 56)]  # degree
    for idx in range(nvars):
        pos = idx + 1
        slots.append((pos // PER_WORD, 56 - FIELD * (pos % PER_WORD)))
    K = (nvars + 1 + PER_WORD - 1) // PER_WORD
    return K, slots


def constants(nvars: int):
    K, slots = layout(nvars)
    comp = np.zeros(K, dtype=np.uint64)
    guard = np.zeros(K, dtype=np.uint64)
    varmask = np.zeros(K, dtype=np.uint64)
    for (w, sh) in slots[1:]:
        comp[w] |= np.uint64(VALUE_MAX << sh)
        guard[w] |= np.uint64(1 << (sh + FIELD - 1))
        varmask[w] |= np.uint64(0xFF << sh)
    # exponent k lives in the (n-1-k)-th variable slot
    wpos = np.zeros(nvars, dtype=np.int64)
    spos = np.zeros(nvars, dtype=np.int64)
    for k in range(nvars):
        w, sh = slots[1 + (nvars - 1 - k)]
        wpos[k] = w
        spos[k] = sh
    return K, comp, guard, varmask, wpos, spos


def encode(exps, K, wpos, spos):
    row = np.zeros(K, dtype=np.uint64)
    deg = int(sum(exps))
    if deg > VALUE_MAX or max(exps, default=0) > VALUE_MAX:
        raise OverflowError("exponent too large for the compiled kernel")
    row[0] |= np.uint64(deg << 56)
    for k, e in enumerate(exps):
        row[wpos[k]] |= np.uint64((VALUE_MAX - e) << spos[k])
    return row


def decode(row, wpos, spos):
    return tuple(VALUE_MAX - ((int(row[wpos[k]]) >> int(spos[k])) & 0xFF) for k in range(len(wpos)))


# ---------------------------------------------------------------------------
# small compiled helpers


@njit(cache=True)
def _grow2(arr, need):
    if arr.shape[0] >= need:
        return arr
    cap = max(need, 2 * arr.shape[0])
    out = np.empty((cap, arr.shape[1]), dtype=arr.dtype)
    out[: arr.shape[0]] = arr
    return out


@njit(cache=True)
def _grow1(arr, need):
    if arr.shape[0] >= need:
        return arr
    cap = max(need, 2 * arr.shape[0])
    out = np.empty(cap, dtype=arr.dtype)
    out[: arr.shape[0]] = arr
    return out


@njit(cache=True)
def _grow_stamp(arr, need):
    if arr.shape[0] >= need:
        return arr
    cap = max(need, 2 * arr.shape[0])
    out = np.full(cap, -1, dtype=arr.dtype)
    out[: arr.shape[0]] = arr
    return out


@njit(cache=True)
def _divides(a, b, K, guard, varmask):
    """Monomial row ``a`` divides row ``b`` (complement fields of a >= b's)."""
    for w in range(K):
        x = (a[w] & varmask[w]) | guard[w]
        y = b[w] & varmask[w]
        if ((x - y) & guard[w]) != guard[w]:
            return False
    return True


@njit(cache=True)
def _exps_of(row, wpos, spos, n, out):
    for k in range(n):
        out[k] = 127 - np.int64((row[wpos[k]] >> np.uint64(spos[k])) & np.uint64(0xFF))


@njit(cache=True)
def _encode_exps(exps, n, K, wpos, spos, out_row):
    deg = 0
    for k in range(n):
        deg += exps[k]
    for w in range(K):
        out_row[w] = np.uint64(0)
    out_row[0] = np.uint64(deg) << np.uint64(56)
    for k in range(n):
        out_row[wpos[k]] |= np.uint64(127 - exps[k]) << np.uint64(spos[k])


@njit(cache=True)
def _modinv(a, p):
    t, newt = 0, 1
    r, newr = p, a % p
    while newr != 0:
        q = r // newr
        t, newt = newt, t - q * newt
        r, newr = newr, r - q * newr
    if t < 0:
        t += p
    return t


@njit(cache=True)
def _lcm_exps(a, b, n, out):
    for k in range(n):
        out[k] = a[k] if a[k] > b[k] else b[k]


@njit(cache=True)
def _div_exps(a, b, n):
    for k in range(n):
        if a[k] > b[k]:
            return False
    return True


@njit(cache=True)
def _coprime(a, b, n):
    for k in range(n):
        if a[k] != 0 and b[k] != 0:
            return False
    return True


@njit(cache=True)
def _eq_exps(a, b, n):
    for k in range(n):
        if a[k] != b[k]:
            return False
    return True


# ---------------------------------------------------------------------------
# monomial table


@njit(cache=True)
def _hash_row(row, K):
    h = np.uint64(1469598103934665603)
    for w in range(K):
        h ^= row[w]
        h *= np.uint64(1099511628211)
        h ^= h >> np.uint64(29)
    return h


@njit(cache=True)
def _rehash(mt, mt_n, size, K):
    ht = np.full(size, -1, dtype=np.int64)
    mask = np.uint64(size - 1)
    for e in range(mt_n):
        idx = np.int64(_hash_row(mt[e], K) & mask)
        while ht[idx] >= 0:
            idx = (idx + 1) & (size - 1)
        ht[idx] = e
    return ht


@njit(cache=True)
def _intern(mt, mt_n, ht, row, K):
    """Id of monomial ``row``, inserting it if new. Returns (id, mt, mt_n, ht)."""
    size = ht.shape[0]
    idx = np.int64(_hash_row(row, K) & np.uint64(size - 1))
    while True:
        e = ht[idx]
        if e < 0:
            break
        same = True
        for w in range(K):
            if mt[e, w] != row[w]:
                same = False
                break
        if same:
            return e, mt, mt_n, ht
        idx = (idx + 1) & (size - 1)
    mt = _grow2(mt, mt_n + 1)
    mt[mt_n] = row
    ht[idx] = mt_n
    mt_n += 1
    if 2 * mt_n > size:
        ht = _rehash(mt, mt_n, 2 * size, K)
    return mt_n - 1, mt, mt_n, ht


# ---------------------------------------------------------------------------
# the F4-style main loop


@njit(cache=True)
def _sort_desc(ids, mt, K):
    """Permutation sorting monomial ids by descending order (stable radix by word)."""
    m = ids.shape[0]
    order = np.arange(m)
    for w in range(K - 1, -1, -1):
        keys = np.empty(m, dtype=np.uint64)
        for t in range(m):
            keys[t] = mt[ids[order[t]], w]
        perm = np.argsort(keys, kind="mergesort")
        order = order[perm]
    return order[::-1].copy()


@njit(cache=True)
def _groebner(
    gm, gc, gstart, glen, ngens,
    n, K, comp, guard, varmask, wpos, spos, p, budget,
):
    """Reduced grevlex Groebner basis over GF(p).

    Returns (status, steps, rows, coefs, starts, lens) with status 0 ok,
    1 budget exceeded, 2 unit ideal.
    """
    # monomial table
    mt = np.empty((1024, K), dtype=np.uint64)
    mt_n = 0
    ht = np.full(2048, -1, dtype=np.int64)
    # basis store (monomial ids, monic, descending)
    bmon = np.empty(1024, dtype=np.int64)
    bcoef = np.empty(1024, dtype=np.int64)
    nterms = 0
    bstart = np.empty(64, dtype=np.int64)
    blen = np.empty(64, dtype=np.int64)
    bsugar = np.empty(64, dtype=np.int64)
    bexp = np.empty((64, n), dtype=np.int64)
    nel = 0
    active = np.empty(64, dtype=np.int64)
    nactive = 0
    # pairs
    pi = np.empty(256, dtype=np.int64)
    pj = np.empty(256, dtype=np.int64)
    ps = np.empty(256, dtype=np.int64)
    plcm = np.empty(256, dtype=np.int64)
    npairs = 0
    # per-monomial scratch (stamped by iteration)
    stamp = np.full(1024, -1, dtype=np.int64)
    colof = np.empty(1024, dtype=np.int64)
    pivrow = np.empty(1024, dtype=np.int64)
    steps = 0
    status = 0
    lcmv = np.empty(n, dtype=np.int64)
    tmpe = np.empty(n, dtype=np.int64)
    row = np.empty(K, dtype=np.uint64)
    it = 0
    first = True

    while True:
        it += 1
        # ---------------- rows of this batch ----------------
        # row store: monomial ids, coefficients; kind 1 = reducer (pivot), 0 = to reduce
        rmon = np.empty(4096, dtype=np.int64)
        rcoef = np.empty(4096, dtype=np.int64)
        rstart = np.empty(256, dtype=np.int64)
        rlen = np.empty(256, dtype=np.int64)
        rkind = np.empty(256, dtype=np.int64)
        nrows = 0
        rterms = 0
        cols = np.empty(1024, dtype=np.int64)
        ncols = 0
        worklist = np.empty(1024, dtype=np.int64)
        nwork = 0
        sugar = 0
        if first:
            first = False
            if ngens == 0:
                break
            sugar = 0
            for g in range(ngens):
                s = gstart[g]
                l = glen[g]
                d = np.int64(gm[s, 0] >> np.uint64(56))
                if d > sugar:
                    sugar = d
                rstart = _grow1(rstart, nrows + 1)
                rlen = _grow1(rlen, nrows + 1)
                rkind = _grow1(rkind, nrows + 1)
                rmon = _grow1(rmon, rterms + l)
                rcoef = _grow1(rcoef, rterms + l)
                rstart[nrows] = rterms
                rlen[nrows] = l
                rkind[nrows] = 0
                for t in range(l):
                    mid, mt, mt_n, ht = _intern(mt, mt_n, ht, gm[s + t], K)
                    rmon[rterms + t] = mid
                    rcoef[rterms + t] = gc[s + t] % p
                rterms += l
                nrows += 1
        else:
            if npairs == 0:
                break
            sugar = ps[0]
            for q in range(1, npairs):
                if ps[q] < sugar:
                    sugar = ps[q]
            # take every pair of minimal sugar
            q = 0
            while q < npairs:
                if ps[q] != sugar:
                    q += 1
                    continue
                i = pi[q]
                j = pj[q]
                L = plcm[q]
                npairs -= 1
                pi[q] = pi[npairs]
                pj[q] = pj[npairs]
                ps[q] = ps[npairs]
                plcm[q] = plcm[npairs]
                for side in range(2):
                    e = i if side == 0 else j
                    # skip duplicates (same element, same lcm)
                    dup = False
                    for r in range(nrows):
                        if rkind[r] >= 2 and rkind[r] - 2 == e and rmon[rstart[r]] == L:
                            dup = True
                            break
                    if dup:
                        continue
                    s = bstart[e]
                    l = blen[e]
                    rstart = _grow1(rstart, nrows + 1)
                    rlen = _grow1(rlen, nrows + 1)
                    rkind = _grow1(rkind, nrows + 1)
                    rmon = _grow1(rmon, rterms + l)
                    rcoef = _grow1(rcoef, rterms + l)
                    rstart[nrows] = rterms
                    rlen[nrows] = l
                    rkind[nrows] = 2 + e
                    lead = bmon[s]
                    for t in range(l):
                        m = bmon[s + t]
                        for w in range(K):
                            row[w] = mt[m, w] + mt[L, w] - mt[lead, w]
                        mid, mt, mt_n, ht = _intern(mt, mt_n, ht, row, K)
                        rmon[rterms + t] = mid
                        rcoef[rterms + t] = bcoef[s + t]
                    rterms += l
                    nrows += 1
        # ---------------- symbolic preprocessing ----------------
        stamp = _grow_stamp(stamp, mt_n)
        colof = _grow1(colof, mt_n)
        pivrow = _grow1(pivrow, mt_n)
        for r in range(nrows):
            for t in range(rstart[r], rstart[r] + rlen[r]):
                m = rmon[t]
                if stamp[m] != it:
                    stamp[m] = it
                    pivrow[m] = -1
                    cols = _grow1(cols, ncols + 1)
                    cols[ncols] = m
                    ncols += 1
                    worklist = _grow1(worklist, nwork + 1)
                    worklist[nwork] = m
                    nwork += 1
            lead = rmon[rstart[r]]
            if pivrow[lead] < 0 and rkind[r] >= 2:
                pivrow[lead] = r
        wpos_i = 0
        while wpos_i < nwork:
            m = worklist[wpos_i]
            wpos_i += 1
            if pivrow[m] >= 0:
                continue
            g = -1
            for q in range(nactive):
                e = active[q]
                if _divides(mt[bmon[bstart[e]]], mt[m], K, guard, varmask):
                    g = e
                    break
            if g < 0:
                continue
            s = bstart[g]
            l = blen[g]
            lead = bmon[s]
            rstart = _grow1(rstart, nrows + 1)
            rlen = _grow1(rlen, nrows + 1)
            rkind = _grow1(rkind, nrows + 1)
            rmon = _grow1(rmon, rterms + l)
            rcoef = _grow1(rcoef, rterms + l)
            rstart[nrows] = rterms
            rlen[nrows] = l
            rkind[nrows] = 1
            for t in range(l):
                mm = bmon[s + t]
                for w in range(K):
                    row[w] = mt[mm, w] + mt[m, w] - mt[lead, w]
                mid, mt, mt_n, ht = _intern(mt, mt_n, ht, row, K)
                rmon[rterms + t] = mid
                rcoef[rterms + t] = bcoef[s + t]
                if mid >= stamp.shape[0] or stamp[mid] != it:
                    if mid >= stamp.shape[0]:
                        stamp = _grow_stamp(stamp, mid + 1)
                        colof = _grow1(colof, mid + 1)
                        pivrow = _grow1(pivrow, mid + 1)
                    stamp[mid] = it
                    pivrow[mid] = -1
                    cols = _grow1(cols, ncols + 1)
                    cols[ncols] = mid
                    ncols += 1
                    worklist = _grow1(worklist, nwork + 1)
                    worklist[nwork] = mid
                    nwork += 1
            rterms += l
            pivrow[m] = nrows
            nrows += 1
        # ---------------- column order ----------------
        cols = cols[:ncols].copy()
        order = _sort_desc(cols, mt, K)
        cols = cols[order]
        for c in range(ncols):
            colof[cols[c]] = c
        # ---------------- linear algebra ----------------
        pivot_of_col = np.full(ncols, -1, dtype=np.int64)
        # pivots are stored in column form with negated coefficients, so a
        # row update is a multiply-add into an unsigned accumulator that is only
        # brought back below 2^63 when it crosses it (2p^2 < 2^63).
        up = np.uint64(p)
        wrap = np.uint64(2) * up * up
        top = np.uint64(1) << np.uint64(63)
        pcol = np.empty(rterms + 1024, dtype=np.int64)
        pneg = np.empty(rterms + 1024, dtype=np.uint64)
        pstart = np.empty(nrows + 64, dtype=np.int64)
        plen = np.empty(nrows + 64, dtype=np.int64)
        npiv = 0
        pterms = 0
        for r in range(nrows):
            lead = rmon[rstart[r]]
            if pivrow[lead] == r:
                l = rlen[r]
                pstart[npiv] = pterms
                plen[npiv] = l
                for t in range(l):
                    pcol[pterms + t] = colof[rmon[rstart[r] + t]]
                    pneg[pterms + t] = np.uint64((p - rcoef[rstart[r] + t]) % p)
                pterms += l
                pivot_of_col[colof[lead]] = npiv
                npiv += 1
        dense = np.zeros(ncols, dtype=np.uint64)
        new_start = np.empty(16, dtype=np.int64)
        new_len = np.empty(16, dtype=np.int64)
        nnew = 0
        outc = np.empty(ncols, dtype=np.int64)
        outv = np.empty(ncols, dtype=np.int64)
        for r in range(nrows):
            lead = rmon[rstart[r]]
            if pivrow[lead] == r:
                continue
            firstc = ncols
            for t in range(rstart[r], rstart[r] + rlen[r]):
                c = colof[rmon[t]]
                dense[c] = np.uint64(rcoef[t])
                if c < firstc:
                    firstc = c
            no = 0
            for c in range(firstc, ncols):
                if dense[c] == 0:
                    continue
                v = dense[c] % up
                dense[c] = 0
                if v == 0:
                    continue
                pr = pivot_of_col[c]
                if pr >= 0:
                    steps += 1
                    ps0 = pstart[pr]
                    for t in range(ps0 + 1, ps0 + plen[pr]):
                        cc = pcol[t]
                        x = dense[cc] + v * pneg[t]
                        if x >= top:
                            x -= wrap
                        dense[cc] = x
                else:
                    outc[no] = c
                    outv[no] = np.int64(v)
                    no += 1
            if no == 0:
                continue
            inv = _modinv(outv[0], p)
            pcol = _grow1(pcol, pterms + no)
            pneg = _grow1(pneg, pterms + no)
            pstart = _grow1(pstart, npiv + 1)
            plen = _grow1(plen, npiv + 1)
            pstart[npiv] = pterms
            plen[npiv] = no
            for t in range(no):
                pcol[pterms + t] = outc[t]
                pneg[pterms + t] = np.uint64((p - (outv[t] * inv) % p) % p)
            pterms += no
            pivot_of_col[outc[0]] = npiv
            new_start = _grow1(new_start, nnew + 1)
            new_len = _grow1(new_len, nnew + 1)
            new_start[nnew] = pstart[npiv]
            new_len[nnew] = no
            nnew += 1
            npiv += 1
        if budget > 0 and steps > budget:
            status = 1
            break
        # ---------------- new basis elements and pair update ----------------
        unit = False
        for z in range(nnew):
            s0 = new_start[z]
            l = new_len[z]
            bmon = _grow1(bmon, nterms + l)
            bcoef = _grow1(bcoef, nterms + l)
            for t in range(l):
                bmon[nterms + t] = cols[pcol[s0 + t]]
                bcoef[nterms + t] = (p - np.int64(pneg[s0 + t])) % p
            bstart = _grow1(bstart, nel + 1)
            blen = _grow1(blen, nel + 1)
            bsugar = _grow1(bsugar, nel + 1)
            bexp = _grow2(bexp, nel + 1)
            active = _grow1(active, nel + 1)
            h = nel
            bstart[h] = nterms
            blen[h] = l
            bsugar[h] = sugar
            _exps_of(mt[bmon[nterms]], wpos, spos, n, bexp[h])
            nterms += l
            nel += 1
            deg_h = 0
            for k in range(n):
                deg_h += bexp[h, k]
            if deg_h == 0:
                unit = True
                break
            # Gebauer-Moeller
            cand_l = np.empty((nactive, n), dtype=np.int64)
            cand_cp = np.zeros(nactive, dtype=np.bool_)
            keep = np.zeros(nactive, dtype=np.bool_)
            for q in range(nactive):
                g = active[q]
                _lcm_exps(bexp[h], bexp[g], n, cand_l[q])
                cand_cp[q] = _coprime(bexp[h], bexp[g], n)
            for q in range(nactive):
                if cand_cp[q]:
                    keep[q] = True
                    continue
                dominated = False
                for r in range(q + 1, nactive):
                    if _div_exps(cand_l[r], cand_l[q], n):
                        dominated = True
                        break
                if not dominated:
                    for r in range(q):
                        if keep[r] and _div_exps(cand_l[r], cand_l[q], n):
                            dominated = True
                            break
                keep[q] = not dominated
            q = 0
            while q < npairs:
                i = pi[q]
                j = pj[q]
                _lcm_exps(bexp[i], bexp[j], n, lcmv)
                drop = False
                if _div_exps(bexp[h], lcmv, n):
                    _lcm_exps(bexp[i], bexp[h], n, tmpe)
                    if not _eq_exps(tmpe, lcmv, n):
                        _lcm_exps(bexp[j], bexp[h], n, tmpe)
                        if not _eq_exps(tmpe, lcmv, n):
                            drop = True
                if drop:
                    npairs -= 1
                    pi[q] = pi[npairs]
                    pj[q] = pj[npairs]
                    ps[q] = ps[npairs]
                    plcm[q] = plcm[npairs]
                else:
                    q += 1
            for q in range(nactive):
                if keep[q] and not cand_cp[q]:
                    g = active[q]
                    pi = _grow1(pi, npairs + 1)
                    pj = _grow1(pj, npairs + 1)
                    ps = _grow1(ps, npairs + 1)
                    plcm = _grow1(plcm, npairs + 1)
                    pi[npairs] = g
                    pj[npairs] = h
                    dl = 0
                    for k in range(n):
                        dl += cand_l[q, k]
                    dg = 0
                    for k in range(n):
                        dg += bexp[g, k]
                    s1 = bsugar[g] - dg
                    s2 = bsugar[h] - deg_h
                    ps[npairs] = (s1 if s1 > s2 else s2) + dl
                    _encode_exps(cand_l[q], n, K, wpos, spos, row)
                    mid, mt, mt_n, ht = _intern(mt, mt_n, ht, row, K)
                    plcm[npairs] = mid
                    npairs += 1
            na = 0
            for q in range(nactive):
                g = active[q]
                if not _div_exps(bexp[h], bexp[g], n):
                    active[na] = g
                    na += 1
            active[na] = h
            nactive = na + 1
        if unit:
            status = 2
            break

    if status != 0:
        return (status, steps, np.empty((0, K), dtype=np.uint64), np.empty(0, dtype=np.int64),
                np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64))
    # ---------------- minimal basis ----------------
    minimal = np.empty(nactive, dtype=np.int64)
    nmin = 0
    for q in range(nactive):
        g = active[q]
        red = False
        for r in range(nactive):
            o = active[r]
            if o != g and _div_exps(bexp[o], bexp[g], n):
                if not _eq_exps(bexp[o], bexp[g], n) or o < g:
                    red = True
                    break
        if not red:
            minimal[nmin] = g
            nmin += 1
    # ---------------- interreduction: reduce tails by the minimal basis -------------
    it += 1
    stamp = _grow_stamp(stamp, mt_n)
    colof = _grow1(colof, mt_n)
    pivrow = _grow1(pivrow, mt_n)
    cols = np.empty(1024, dtype=np.int64)
    ncols = 0
    worklist = np.empty(1024, dtype=np.int64)
    nwork = 0
    rmon = np.empty(4096, dtype=np.int64)
    rcoef = np.empty(4096, dtype=np.int64)
    rstart = np.empty(nmin + 64, dtype=np.int64)
    rlen = np.empty(nmin + 64, dtype=np.int64)
    nrows = 0
    rterms = 0
    for q in range(nmin):
        g = minimal[q]
        s = bstart[g]
        l = blen[g]
        rmon = _grow1(rmon, rterms + l)
        rcoef = _grow1(rcoef, rterms + l)
        rstart[nrows] = rterms
        rlen[nrows] = l
        for t in range(l):
            m = bmon[s + t]
            rmon[rterms + t] = m
            rcoef[rterms + t] = bcoef[s + t]
            if stamp[m] != it:
                stamp[m] = it
                pivrow[m] = -1
                cols = _grow1(cols, ncols + 1)
                cols[ncols] = m
                ncols += 1
                worklist = _grow1(worklist, nwork + 1)
                worklist[nwork] = m
                nwork += 1
        pivrow[bmon[s]] = nrows
        rterms += l
        nrows += 1
    wpos_i = 0
    while wpos_i < nwork:
        m = worklist[wpos_i]
        wpos_i += 1
        if pivrow[m] >= 0:
            continue
        g = -1
        for q in range(nmin):
            e = minimal[q]
            if _divides(mt[bmon[bstart[e]]], mt[m], K, guard, varmask):
                g = e
                break
        if g < 0:
            continue
        s = bstart[g]
        l = blen[g]
        lead = bmon[s]
        rstart = _grow1(rstart, nrows + 1)
        rlen = _grow1(rlen, nrows + 1)
        rmon = _grow1(rmon, rterms + l)
        rcoef = _grow1(rcoef, rterms + l)
        rstart[nrows] = rterms
        rlen[nrows] = l
        for t in range(l):
            mm = bmon[s + t]
            for w in range(K):
                row[w] = mt[mm, w] + mt[m, w] - mt[lead, w]
            mid, mt, mt_n, ht = _intern(mt, mt_n, ht, row, K)
            rmon[rterms + t] = mid
            rcoef[rterms + t] = bcoef[s + t]
            if mid >= stamp.shape[0] or stamp[mid] != it:
                stamp = _grow_stamp(stamp, mid + 1)
                colof = _grow1(colof, mid + 1)
                pivrow = _grow1(pivrow, mid + 1)
                stamp[mid] = it
                pivrow[mid] = -1
                cols = _grow1(cols, ncols + 1)
                cols[ncols] = mid
                ncols += 1
                worklist = _grow1(worklist, nwork + 1)
                worklist[nwork] = mid
                nwork += 1
        rterms += l
        pivrow[m] = nrows
        nrows += 1
    cols = cols[:ncols].copy()
    order = _sort_desc(cols, mt, K)
    cols = cols[order]
    for c in range(ncols):
        colof[cols[c]] = c
    pivot_of_col = np.full(ncols, -1, dtype=np.int64)
    for r in range(nrows):
        pivot_of_col[colof[rmon[rstart[r]]]] = r
    dense = np.zeros(ncols, dtype=np.int64)
    out_rows = np.empty((1024, K), dtype=np.uint64)
    out_c = np.empty(1024, dtype=np.int64)
    out_start = np.empty(nmin, dtype=np.int64)
    out_len = np.empty(nmin, dtype=np.int64)
    total = 0
    for q in range(nmin):
        # row q is the q-th minimal element; its leading column is its own pivot
        s = rstart[q]
        l = rlen[q]
        leadc = colof[rmon[s]]
        firstc = ncols
        for t in range(s + 1, s + l):
            c = colof[rmon[t]]
            dense[c] = rcoef[t]
            if c < firstc:
                firstc = c
        out_rows = _grow2(out_rows, total + 1 + ncols)
        out_c = _grow1(out_c, total + 1 + ncols)
        out_start[q] = total
        out_rows[total] = mt[rmon[s]]
        out_c[total] = rcoef[s]
        no = 1
        for c in range(firstc, ncols):
            v = dense[c]
            if v == 0:
                continue
            pr = pivot_of_col[c]
            if pr >= 0 and c != leadc:
                steps += 1
                for t in range(rstart[pr], rstart[pr] + rlen[pr]):
                    cc = colof[rmon[t]]
                    dense[cc] = (dense[cc] - v * rcoef[t]) % p
            else:
                out_rows[total + no] = mt[cols[c]]
                out_c[total + no] = v
                no += 1
                dense[c] = 0
        out_len[q] = no
        total += no
    return status, steps, out_rows[:total], out_c[:total], out_start, out_len


def groebner_modp(polys, nvars: int, p: int, budget: int = 0):
    """Run the kernel on ``polys`` given as {exponent tuple: int coefficient} maps.

    Returns (status, steps, basis) where basis is a list of {exponents: coeff}.
    """
    K, comp, guard, varmask, wpos, spos = constants(nvars)
    rows, coefs, starts, lens = [], [], [], []
    for f in polys:
        items = [(encode(m, K, wpos, spos), c % p) for m, c in f.items() if c % p]
        items.sort(key=lambda t: tuple(int(x) for x in t[0]), reverse=True)
        if not items:
            continue
        starts.append(len(rows))
        lens.append(len(items))
        rows.extend(r for r, _ in items)
        coefs.extend(c for _, c in items)
    if not rows:
        return 0, 0, []
    gm = np.array(rows, dtype=np.uint64).reshape(-1, K)
    gc = np.array(coefs, dtype=np.int64)
    gstart = np.array(starts, dtype=np.int64)
    glen = np.array(lens, dtype=np.int64)
    status, steps, om, oc, ostart, olen = _groebner(
        gm, gc, gstart, glen, len(starts), nvars, K, comp, guard, varmask, wpos, spos,
        np.int64(p), np.int64(budget or 0),
    )
    basis = []
    for s, l in zip(ostart, olen):
        basis.append({decode(om[t], wpos, spos): int(oc[t]) for t in range(s, s + l)})
    return int(status), int(steps), basis

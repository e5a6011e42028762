"""Compiled inner loops for the censuses.

Weight distributions of graph sets are computed here by the direction
histogram: for x != 0 the ratio f(x)/x hits each kernel direction g
exactly q^w - 1 times, w the weight of <(1, g)>, so one pass over the
multiplicative group recovers the whole distribution without any rank
computations.  The slow kernel-rank route in linpoly stays the reference;
equivalence of the two is pinned by tests.

Distribution keys pack the weight counts (c1..c5) into an int64, ten bits
per count.
"""

from __future__ import annotations

import numpy as np
from numba import njit, types
from numba.typed import Dict

KEY_BITS = 10


def pack_key(counts):
    key = 0
    for w, c in counts.items():
        if not 1 <= w <= 5 or c >= (1 << KEY_BITS):
            raise ValueError(f"cannot pack counts {counts}")
        key |= c << (KEY_BITS * (w - 1))
    return key


def unpack_key(key):
    counts = {}
    for w in range(1, 6):
        c = (key >> (KEY_BITS * (w - 1))) & ((1 << KEY_BITS) - 1)
        if c:
            counts[w] = c
    return counts


class KernelTables:
    """Numpy views of a tower's arithmetic, shaped for the jitted loops."""

    def __init__(self, tower):
        n = tower.order
        self.n = n
        lg = np.array([tower.log[x] if x else 0 for x in range(n)], np.int64)
        nonzero = np.arange(n) != 0
        ex = np.array(tower.exp, np.uint16)
        s = (lg[:, None] + lg[None, :]) % (n - 1)
        self.mul = np.where(nonzero[:, None] & nonzero[None, :], ex[s], 0).astype(
            np.uint16
        )
        d = (lg[:, None] - lg[None, :]) % (n - 1)
        self.div = np.where(nonzero[:, None] & nonzero[None, :], ex[d], 0).astype(
            np.uint16
        )
        if tower.p == 2:
            self.add = (np.arange(n)[:, None] ^ np.arange(n)[None, :]).astype(np.uint16)
        else:
            self.add = np.array(
                [[tower.add(a, b) for b in range(n)] for a in range(n)], np.uint16
            )
        self.neg = np.array([tower.neg(x) for x in range(n)], np.uint16)
        self.frob = np.array(tower._frob, np.uint16)
        wq = np.full(n + 1, 255, np.uint8)
        for w in range(1, 6):
            val = tower.q ** w - 1
            if val <= n:
                wq[val] = w
        self.wq = wq
        self.insub = np.zeros(n, np.uint8)
        for x in tower.subfield_elements:
            self.insub[x] = 1


_tables_cache = {}


def tables_for(tower):
    tab = _tables_cache.get(tower)
    if tab is None:
        tab = KernelTables(tower)
        _tables_cache[tower] = tab
    return tab


@njit(cache=True)
def graph_census_block(
    n, mul, div, add, wq, frob, a4_vals, a3_rng, a2_rng, a1_rng, a0_rng
):
    """Histogram of distribution keys over a block of coefficient tuples.

    Each a*_rng is a (lo, hi) half-open range; a4_vals is an explicit array.
    Returns a typed dict key -> count; key -1 counts partition failures
    (impossible unless the tables are wrong).
    """
    out = Dict.empty(types.int64, types.int64)
    t4 = np.zeros(n, np.uint16)
    t3 = np.zeros(n, np.uint16)
    t2 = np.zeros(n, np.uint16)
    t1 = np.zeros(n, np.uint16)
    occ = np.zeros(n, np.uint16)
    cnt = np.zeros(6, np.int64)
    for a4 in a4_vals:
        for x in range(n):
            t4[x] = mul[a4, frob[4, x]]
        for a3 in range(a3_rng[0], a3_rng[1]):
            for x in range(n):
                t3[x] = add[t4[x], mul[a3, frob[3, x]]]
            for a2 in range(a2_rng[0], a2_rng[1]):
                for x in range(n):
                    t2[x] = add[t3[x], mul[a2, frob[2, x]]]
                for a1 in range(a1_rng[0], a1_rng[1]):
                    for x in range(n):
                        t1[x] = add[t2[x], mul[a1, frob[1, x]]]
                    for a0 in range(a0_rng[0], a0_rng[1]):
                        for x in range(1, n):
                            v = add[t1[x], mul[a0, x]]
                            occ[div[v, x]] += 1
                        for w in range(6):
                            cnt[w] = 0
                        bad = False
                        for g in range(n):
                            c = occ[g]
                            if c:
                                w = wq[c]
                                if w == 255:
                                    bad = True
                                else:
                                    cnt[w] += 1
                                occ[g] = 0
                        if bad:
                            key = -1
                        else:
                            key = (
                                cnt[1]
                                + (cnt[2] << 10)
                                + (cnt[3] << 20)
                                + (cnt[4] << 30)
                                + (cnt[5] << 40)
                            )
                        if key in out:
                            out[key] += 1
                        else:
                            out[key] = 1
    return out


@njit(cache=True)
def zanella_sweep(n, mul, div, add, neg, wq, frob):
    """Distribution keys over all pairs (alpha, beta) with alpha^q != beta^{q+1}.

    The subspace is spanned by (x - alpha x^{q^2}, x^q - beta x^{q^2}) over
    the multiplicative group; the ratio histogram gives the weights.  Output
    dict maps key -> number of realizing pairs; key -2 counts skipped pairs.
    """
    out = Dict.empty(types.int64, types.int64)
    occ = np.zeros(n + 1, np.uint16)
    cnt = np.zeros(6, np.int64)
    skipped = 0
    for alpha in range(n):
        for beta in range(n):
            if frob[1, alpha] == mul[frob[1, beta], beta]:
                skipped += 1
                continue
            for x in range(1, n):
                f2 = frob[2, x]
                u = add[x, neg[mul[alpha, f2]]]
                v = add[frob[1, x], neg[mul[beta, f2]]]
                if u == 0:
                    occ[n] += 1
                else:
                    occ[div[v, u]] += 1
            for w in range(6):
                cnt[w] = 0
            bad = False
            for g in range(n + 1):
                c = occ[g]
                if c:
                    w = wq[c]
                    if w == 255:
                        bad = True
                    else:
                        cnt[w] += 1
                    occ[g] = 0
            if bad:
                key = -1
            else:
                key = (
                    cnt[1]
                    + (cnt[2] << 10)
                    + (cnt[3] << 20)
                    + (cnt[4] << 30)
                    + (cnt[5] << 40)
                )
            if key in out:
                out[key] += 1
            else:
                out[key] = 1
    if skipped:
        out[-2] = skipped
    return out


@njit(cache=True)
def plane_family_sweep(npts, pts, psi, dvals_lam, n, mul, div, add, neg, insub, fibw):
    """Projection distributions for the third-point plane family.

    psi holds three functionals vanishing on the two fixed spanning points.
    For each lambda-part index L (rows of dvals_lam: the psi_i dot products
    with (lambda, 0)) and each gamma outside F_q, the plane annihilator is
    spanned by two combinations of the psi, and the fiber histogram of the
    rational points gives the projected distribution.  Key -3 counts planes
    that meet the subgeometry.
    """
    out = Dict.empty(types.int64, types.int64)
    occ = np.zeros(n + 1, np.uint16)
    cnt = np.zeros(6, np.int64)
    phi1 = np.zeros(5, np.uint16)
    phi2 = np.zeros(5, np.uint16)
    touched = np.zeros(npts, np.int64)
    for L in range(dvals_lam.shape[0]):
        for gamma in range(n):
            if insub[gamma]:
                continue
            # d_i = psi_i . P3 with P3 = (lambda, gamma)
            d0 = add[dvals_lam[L, 0], mul[gamma, psi[0, 4]]]
            d1 = add[dvals_lam[L, 1], mul[gamma, psi[1, 4]]]
            d2 = add[dvals_lam[L, 2], mul[gamma, psi[2, 4]]]
            # two independent solutions of c . d = 0
            if d0 != 0:
                for j in range(5):
                    phi1[j] = add[mul[d0, psi[1, j]], neg[mul[d1, psi[0, j]]]]
                    phi2[j] = add[mul[d0, psi[2, j]], neg[mul[d2, psi[0, j]]]]
            elif d1 != 0:
                for j in range(5):
                    phi1[j] = psi[0, j]
                    phi2[j] = add[mul[d1, psi[2, j]], neg[mul[d2, psi[1, j]]]]
            else:
                for j in range(5):
                    phi1[j] = psi[0, j]
                    phi2[j] = psi[1, j]
            meets = False
            ntouch = 0
            for i in range(npts):
                v1 = 0
                v2 = 0
                for j in range(5):
                    pj = pts[i, j]
                    if pj:
                        v1 = add[v1, mul[phi1[j], pj]]
                        v2 = add[v2, mul[phi2[j], pj]]
                if v1 == 0 and v2 == 0:
                    meets = True
                    break
                key = div[v2, v1] if v1 != 0 else n
                if occ[key] == 0:
                    touched[ntouch] = key
                    ntouch += 1
                occ[key] += 1
            if meets:
                for k in range(ntouch):
                    occ[touched[k]] = 0
                if -3 in out:
                    out[-3] += 1
                else:
                    out[-3] = 1
                continue
            for w in range(6):
                cnt[w] = 0
            bad = False
            for k in range(ntouch):
                c = occ[touched[k]]
                w = fibw[c]
                if w == 255:
                    bad = True
                else:
                    cnt[w] += 1
                occ[touched[k]] = 0
            if bad:
                key2 = -1
            else:
                key2 = (
                    cnt[1]
                    + (cnt[2] << 10)
                    + (cnt[3] << 20)
                    + (cnt[4] << 30)
                    + (cnt[5] << 40)
                )
            if key2 in out:
                out[key2] += 1
            else:
                out[key2] = 1
    return out


@njit(cache=True)
def rank_le4_graph_census(n, div, wbases, gcount):
    """Distribution keys of all F_2-graphs over the given x-side bases.

    wbases is a (nreps, k) array of basis elements of a k-dimensional
    x-side space W; for each representative every map W -> field is swept,
    encoded as a base-n integer.  Characteristic 2 only.
    """
    out = Dict.empty(types.int64, types.int64)
    nreps, k = wbases.shape
    ncomb = (1 << k) - 1
    xs = np.zeros(ncomb + 1, np.uint16)
    ys = np.zeros(ncomb + 1, np.uint16)
    occ = np.zeros(n + 1, np.uint16)
    cnt = np.zeros(6, np.int64)
    g = np.zeros(k, np.uint16)
    for rep in range(nreps):
        for mask in range(1, ncomb + 1):
            x = 0
            for i in range(k):
                if mask & (1 << i):
                    x ^= wbases[rep, i]
            xs[mask] = x
        for code in range(gcount):
            v = code
            for i in range(k):
                g[i] = v % n
                v //= n
            for mask in range(1, ncomb + 1):
                y = 0
                for i in range(k):
                    if mask & (1 << i):
                        y ^= g[i]
                ys[mask] = y
            for mask in range(1, ncomb + 1):
                x = xs[mask]
                key = div[ys[mask], x] if x != 0 else n
                occ[key] += 1
            for w in range(6):
                cnt[w] = 0
            for key in range(n + 1):
                c = occ[key]
                if c:
                    w = 0
                    cc = c + 1
                    while cc > 1:
                        cc >>= 1
                        w += 1
                    if (1 << w) - 1 != c:
                        cnt[0] += 1  # marks an impossible histogram
                    else:
                        cnt[w] += 1
                    occ[key] = 0
            dkey = (
                cnt[1]
                + (cnt[2] << 10)
                + (cnt[3] << 20)
                + (cnt[4] << 30)
                + (cnt[5] << 40)
            )
            if cnt[0]:
                dkey = -1
            if dkey in out:
                out[dkey] += 1
            else:
                out[dkey] = 1
    return out

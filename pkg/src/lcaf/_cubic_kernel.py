"""Numba kernel for the cubic RLE-LCAF scan.

Mirrors rle_cubic.best_against composed over every rectangle of the
first string; kept in lockstep with the pure-Python path by the test
suite.  Run arrays are 1-based (index 0 unused) to match the run-index
conventions of the rest of the package.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def cubic_scan_pair(s_sym, s_len, s_pl, t_sym, t_len, t_pl, sigma):
    """Best (norm, i1, j1, i2, j2) over all R1 in Rect_S vs max-compatible
    rectangles of Rect_T.  Returns norm -1 when nothing intersects."""
    m_s = len(s_sym)
    m_t = len(t_sym)
    sym = np.zeros(m_t + 1, dtype=np.int64)
    length = np.zeros(m_t + 1, dtype=np.int64)
    for r in range(m_t):
        sym[r + 1] = t_sym[r]
        length[r + 1] = t_len[r]

    outer1 = np.zeros(sigma, dtype=np.int64)
    inner1 = np.zeros(sigma, dtype=np.int64)
    outer = np.zeros(sigma, dtype=np.int64)
    inner = np.zeros(sigma, dtype=np.int64)
    coords = np.empty(4, dtype=np.int64)

    def contrib(c, a1, b1, ci_s, cj_s):
        # coordinate fixed in both rectangles and disagreeing
        if c != a1 and c != b1 and c != ci_s and c != cj_s and outer[c] != outer1[c]:
            return 1
        return 0

    best_norm = -1
    bi1 = bj1 = bi2 = bj2 = 0

    for i1 in range(1, m_s + 1):
        for c in range(sigma):
            outer1[c] = 0
            inner1[c] = 0
        ci1 = s_sym[i1 - 1]
        for j1 in range(i1, m_s + 1):
            cj1 = s_sym[j1 - 1]
            outer1[cj1] += s_len[j1 - 1]
            if j1 > i1 + 1:
                inner1[s_sym[j1 - 2]] += s_len[j1 - 2]
            k = s_pl[j1] - s_pl[i1 - 1]

            j = 1
            while j <= m_t and t_pl[j] < k:
                j += 1
            if j > m_t:
                continue
            i = 1
            for c in range(sigma):
                outer[c] = 0
                inner[c] = 0
            for r in range(1, j + 1):
                outer[sym[r]] += length[r]
            for r in range(2, j):
                inner[sym[r]] += length[r]
            sum_outer = t_pl[j]
            q = 0
            for c in range(sigma):
                q += contrib(c, ci1, cj1, sym[i], sym[j])

            while True:
                if q == 0:
                    nc = 0
                    for cand in (ci1, cj1, sym[i], sym[j]):
                        dup = False
                        for u in range(nc):
                            if coords[u] == cand:
                                dup = True
                                break
                        if not dup:
                            coords[nc] = cand
                            nc += 1
                    norm = sum_outer
                    feasible = True
                    for u in range(nc):
                        c = coords[u]
                        lo = max(inner1[c], inner[c])
                        hi = min(outer1[c], outer[c])
                        if lo > hi:
                            feasible = False
                            break
                        norm += hi - outer[c]
                    if feasible and norm > best_norm:
                        best_norm = norm
                        bi1, bj1, bi2, bj2 = i1, j1, i, j
                if j > i and t_pl[j] - t_pl[i] >= k:
                    ca = sym[i]
                    cb = sym[i + 1]
                    q -= contrib(ca, ci1, cj1, sym[i], sym[j])
                    if cb != ca:
                        q -= contrib(cb, ci1, cj1, sym[i], sym[j])
                    outer[ca] -= length[i]
                    sum_outer -= length[i]
                    if i + 1 < j:
                        inner[cb] -= length[i + 1]
                    i += 1
                    q += contrib(ca, ci1, cj1, sym[i], sym[j])
                    if cb != ca:
                        q += contrib(cb, ci1, cj1, sym[i], sym[j])
                elif j < m_t:
                    ca = sym[j]
                    cb = sym[j + 1]
                    q -= contrib(ca, ci1, cj1, sym[i], sym[j])
                    if cb != ca:
                        q -= contrib(cb, ci1, cj1, sym[i], sym[j])
                    outer[cb] += length[j + 1]
                    sum_outer += length[j + 1]
                    if j > i:
                        inner[ca] += length[j]
                    j += 1
                    q += contrib(ca, ci1, cj1, sym[i], sym[j])
                    if cb != ca:
                        q += contrib(cb, ci1, cj1, sym[i], sym[j])
                else:
                    break
    return best_norm, bi1, bj1, bi2, bj2

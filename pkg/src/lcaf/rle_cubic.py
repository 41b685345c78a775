"""Cubic-time, linear-space RLE-LCAF solver for arbitrary alphabets.

For every rectangle R1 of one string's family, the rectangles of the
other family that can contain a point of norm max L(R1) form the slice
Rect(k), k = max L(R1), of at most 2m rectangles.  That slice is scanned
with a sliding pair of run indices, maintaining the candidate's corner
Parikh vectors and a counter of fixed-coordinate mismatches in O(1) per
step, so each R1 costs O(m) and the whole solve O(m^3).

The hot double loop also exists as a numba kernel (see _cubic_kernel);
lcaf_rle_cubic uses it when available and falls back to the pure-Python
scan otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .core import LcafResult, ParikhVector, RleString
from .rle_rect import Rect, find_occurrence, l1_interval, rect

try:
    from ._cubic_kernel import cubic_scan_pair as _kernel_scan
except ImportError:  # pragma: no cover - numba always present in practice
    _kernel_scan = None

STAR = None  # starred entries of a rectangle's Parikh vector


def rect_parikh(r: Rect) -> tuple:
    """Coordinates shared by all points of r, with None at its dimensions."""
    dims = set(r.dims)
    return tuple(STAR if c in dims else lo for c, (lo, _) in enumerate(r.intervals))


def consistent(r1: Rect, r2: Rect) -> bool:
    """True iff the two rectangles agree on every coordinate fixed in both."""
    if len(r1.intervals) != len(r2.intervals):
        raise ValueError("rectangles live in different dimensions")
    for a, b in zip(rect_parikh(r1), rect_parikh(r2)):
        if a is not STAR and b is not STAR and a != b:
            return False
    return True


def intersection_max_norm(r1: Rect, r2: Rect) -> Optional[Tuple[tuple, int]]:
    """Max-norm common point of two boxes, or None when they miss.

    The componentwise maximum of the intersected intervals is itself a
    common point, so it realizes the maximal l1 norm.
    """
    point = []
    for (lo1, hi1), (lo2, hi2) in zip(r1.intervals, r2.intervals):
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo > hi:
            return None
        point.append(hi)
    return tuple(point), sum(point)


@dataclass(frozen=True)
class BestMatch:
    norm: int
    point: tuple
    provenance: tuple  # (i, j) of the matched rectangle in T
    visited: int  # rectangles inspected by the scan (<= 2m)


def best_against(r1: Rect, t: RleString) -> Optional[BestMatch]:
    """Best intersection of r1 with any rectangle of T's family.

    Only the max-compatible slice Rect_T(max L(R1)) is scanned; a
    mismatch counter q over coordinates fixed in both rectangles gates
    the O(1) intersection evaluation.
    """
    m = t.m
    sigma = t.sigma
    if len(r1.intervals) != sigma:
        raise ValueError("rectangle dimension does not match alphabet size")
    if m == 0:
        return None
    k = l1_interval(r1)[1]
    pl = t.prefix_len
    sym = [0] + [s for s, _ in t.runs]  # 1-based
    length = [0] + [l for _, l in t.runs]
    lo1 = [lo for lo, _ in r1.intervals]
    hi1 = [hi for _, hi in r1.intervals]
    d1 = set(r1.dims)

    j = 1
    while j <= m and pl[j] < k:
        j += 1
    if j > m:
        return None
    i = 1
    outer = [0] * sigma
    inner = [0] * sigma
    for r in range(1, j + 1):
        outer[sym[r]] += length[r]
    for r in range(2, j):
        inner[sym[r]] += length[r]
    sum_outer = pl[j]

    def contrib(c: int, ci: int, cj: int) -> int:
        return int(c not in d1 and c != ci and c != cj and outer[c] != hi1[c])

    q = sum(contrib(c, sym[i], sym[j]) for c in range(sigma))

    best_norm = -1
    best_point: Optional[tuple] = None
    best_prov: Optional[tuple] = None
    visited = 0
    while True:
        visited += 1
        if q == 0:
            coords = {sym[i], sym[j]} | d1
            norm = sum_outer
            feasible = True
            for c in coords:
                lo = max(lo1[c], inner[c])
                hi = min(hi1[c], outer[c])
                if lo > hi:
                    feasible = False
                    break
                norm += hi - outer[c]
            if feasible and norm > best_norm:
                best_norm = norm
                best_point = tuple(
                    min(h1, h2) for h1, h2 in zip(hi1, outer)
                )
                best_prov = (i, j)
        if j > i and pl[j] - pl[i] >= k:
            # row i ends here; advance i keeping j
            ci_old, ci_new = sym[i], sym[i + 1]
            affected = {ci_old, ci_new}
            for c in affected:
                q -= contrib(c, sym[i], sym[j])
            outer[ci_old] -= length[i]
            sum_outer -= length[i]
            if i + 1 < j:
                inner[ci_new] -= length[i + 1]
            i += 1
            for c in affected:
                q += contrib(c, sym[i], sym[j])
        elif j < m:
            cj_old, cj_new = sym[j], sym[j + 1]
            affected = {cj_old, cj_new}
            for c in affected:
                q -= contrib(c, sym[i], sym[j])
            outer[cj_new] += length[j + 1]
            sum_outer += length[j + 1]
            if j > i:
                inner[cj_old] += length[j]
            j += 1
            for c in affected:
                q += contrib(c, sym[i], sym[j])
        else:
            break
    if best_point is None:
        return None
    return BestMatch(best_norm, best_point, best_prov, visited)


def _scan_python(s: RleString, t: RleString) -> Tuple[int, Optional[tuple]]:
    """One direction of the cubic solve: every R1 from S against T."""
    best_norm = -1
    best_point = None
    for i1 in range(1, s.m + 1):
        for j1 in range(i1, s.m + 1):
            match = best_against(rect(s, i1, j1), t)
            if match is not None and match.norm > best_norm:
                best_norm = match.norm
                best_point = match.point
    return best_norm, best_point


def lcaf_rle_cubic(s: RleString, t: RleString, engine: str = "auto") -> LcafResult:
    """RLE-LCAF in O(m^3) time and O(m) space.

    Assumes a shared (renumbered) alphabet.  Any intersecting rectangle
    pair has one side max-compatible with the other, so scanning the
    max-compatible slice in both directions is exhaustive.
    """
    if s.sigma != t.sigma:
        raise ValueError("inputs must share an alphabet size")
    if engine not in ("auto", "kernel", "python"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "kernel" and _kernel_scan is None:
        raise RuntimeError("numba kernel unavailable")
    sigma = s.sigma
    if s.m == 0 or t.m == 0:
        return LcafResult(0, ParikhVector((0,) * sigma), ((0, 0), (0, 0)))

    use_kernel = engine == "kernel" or (engine == "auto" and _kernel_scan is not None)
    if use_kernel:
        import numpy as np

        def pack(v):
            return (
                np.array([x for x, _ in v.runs], dtype=np.int64),
                np.array([l for _, l in v.runs], dtype=np.int64),
                np.array(v.prefix_len, dtype=np.int64),
            )

        ssym, slen, spl = pack(s)
        tsym, tlen, tpl = pack(t)
        norm1, i1, j1, i2, j2 = _kernel_scan(ssym, slen, spl, tsym, tlen, tpl, sigma)
        norm2, k1, k2, k3, k4 = _kernel_scan(tsym, tlen, tpl, ssym, slen, spl, sigma)
        if norm2 > norm1:
            norm1, (i1, j1, i2, j2) = norm2, (k3, k4, k1, k2)
        if norm1 <= 0:
            best_norm, best_point = 0, (0,) * sigma
        else:
            hit = intersection_max_norm(rect(s, int(i1), int(j1)), rect(t, int(i2), int(j2)))
            assert hit is not None and hit[1] == norm1
            best_point, best_norm = hit
    else:
        best_norm, best_point = _scan_python(s, t)
        norm_ts, point_ts = _scan_python(t, s)
        if norm_ts > best_norm:
            best_norm, best_point = norm_ts, point_ts
        if best_norm <= 0:
            best_norm, best_point = 0, (0,) * sigma

    occ_s = find_occurrence(s, best_point)
    occ_t = find_occurrence(t, best_point)
    return LcafResult(best_norm, ParikhVector(best_point), (occ_s, occ_t))

"""Brute-force reference implementations.

Every other solver in this package is validated against these functions,
so they favour obviousness over speed.  The only concession is that
lcaf_oracle keeps window Parikh vectors as packed integers, which changes
nothing semantically but makes large verification sweeps bearable.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Optional, Sequence, Set, Tuple

from .core import LcafResult, ParikhVector, PlainString, RleString

# rect_points_oracle and max_intersection_oracle enumerate integer points
# explicitly; refuse inputs that would enumerate more than this many.
POINT_GUARD = 2_000_000


class OracleGuardError(ValueError):
    """Input too large for explicit point enumeration."""


def window_parikh_set(u: PlainString, length: int) -> Set[tuple]:
    """Parikh vectors of all factors of u of the given length.

    Maintains a single window vector with O(1) updates per slide.
    """
    n = len(u)
    if not 0 <= length <= n:
        raise ValueError(f"window length {length} out of range [0, {n}]")
    counts = [0] * u.sigma
    for s in u.symbols[:length]:
        counts[s] += 1
    out = {tuple(counts)}
    for j in range(length, n):
        counts[u.symbols[j]] += 1
        counts[u.symbols[j - length]] -= 1
        out.add(tuple(counts))
    return out


def _window_keys(symbols: Sequence[int], length: int, weights: Sequence[int]):
    """Packed window Parikh vectors (one int per window) with start indices."""
    key = 0
    for s in symbols[:length]:
        key += weights[s]
    keys = {key: 0}
    for j in range(length, len(symbols)):
        key += weights[symbols[j]] - weights[symbols[j - length]]
        keys.setdefault(key, j - length + 1)
    return keys


def has_abelian_factor(u: PlainString, witness: Iterable[int]) -> Optional[tuple]:
    """Start/end (half-open) of a factor of u with the given Parikh vector."""
    target = tuple(witness)
    length = sum(target)
    if length > len(u):
        return None
    counts = [0] * u.sigma
    for s in u.symbols[:length]:
        counts[s] += 1
    if tuple(counts) == target:
        return (0, length)
    for j in range(length, len(u)):
        counts[u.symbols[j]] += 1
        counts[u.symbols[j - length]] -= 1
        if tuple(counts) == target:
            return (j - length + 1, j + 1)
    return None


def lcaf_oracle(s: PlainString, t: PlainString) -> LcafResult:
    """Quadratic baseline: intersect window Parikh sets per length, top down.

    The empty factor makes length 0 a universal fallback.
    """
    if s.sigma != t.sigma:
        raise ValueError("inputs must share an alphabet size")
    sigma = s.sigma
    base = max(len(s), len(t)) + 1
    weights = [base**c for c in range(sigma)]
    for length in range(min(len(s), len(t)), 0, -1):
        ks = _window_keys(s.symbols, length, weights)
        kt = _window_keys(t.symbols, length, weights)
        if len(kt) < len(ks):
            ks, kt = kt, ks
            swapped = True
        else:
            swapped = False
        common = ks.keys() & kt.keys()
        if common:
            best = min(common)  # deterministic tie-break
            key = best
            counts = []
            for _ in range(sigma):
                counts.append(key % base)
                key //= base
            occ_a, occ_b = ks[best], kt[best]
            if swapped:
                occ_a, occ_b = occ_b, occ_a
            return LcafResult(
                length,
                ParikhVector(tuple(counts)),
                ((occ_a, occ_a + length), (occ_b, occ_b + length)),
            )
    return LcafResult(0, ParikhVector((0,) * sigma), ((0, 0), (0, 0)))


def rect_points_oracle(v: RleString) -> Set[tuple]:
    """All integer points of all rect_V(i, j), enumerated explicitly.

    By the rectangle characterization this equals the set of Parikh
    vectors of all factors of the decoded string.  Small inputs only.
    """
    sigma = v.sigma
    points = {(0,) * sigma}
    budget = POINT_GUARD
    for i in range(1, v.m + 1):
        for j in range(i, v.m + 1):
            outer = v.run_block_parikh(i, j)
            inner = v.run_block_parikh(i + 1, j - 1)
            ranges = []
            size = 1
            for lo, hi in zip(inner, outer):
                ranges.append(range(min(lo, hi), max(lo, hi) + 1))
                size *= len(ranges[-1])
            budget -= size
            if budget < 0:
                raise OracleGuardError("rect_points_oracle size guard exceeded")
            points.update(product(*ranges))
    return points


def _rect_points(rect) -> Set[tuple]:
    ranges = []
    size = 1
    for lo, hi in rect.intervals:
        ranges.append(range(lo, hi + 1))
        size *= hi - lo + 1
        if size > POINT_GUARD:
            raise OracleGuardError("rectangle too large to grid-enumerate")
    return set(product(*ranges))


def max_intersection_oracle(rects1, rects2) -> Optional[Tuple[tuple, int]]:
    """Grid brute force over all rectangle pairs; None when families miss."""
    points1: Set[tuple] = set()
    points2: Set[tuple] = set()
    for r in rects1:
        points1 |= _rect_points(r)
        if len(points1) > POINT_GUARD:
            raise OracleGuardError("max_intersection_oracle size guard exceeded")
    for r in rects2:
        points2 |= _rect_points(r)
        if len(points2) > POINT_GUARD:
            raise OracleGuardError("max_intersection_oracle size guard exceeded")
    common = points1 & points2
    if not common:
        return None
    best = max(common, key=lambda p: (sum(p), p))
    return best, sum(best)

"""Rectangle reduction for RLE strings.

Each pair of run indices 1 <= i <= j <= m induces an axis-aligned box
rect_V(i, j) whose opposite corners are the Parikh vectors of the run
blocks V_i..V_j and V_{i+1}..V_{j-1}; the union of the integer points of
these boxes is exactly the set of Parikh vectors of factors of v.  This
module computes the boxes, the norm slices Rect_V(l), and a delta stream
of the slices over increasing l in O(m) working memory.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

from .core import RleString


@dataclass(frozen=True)
class Rect:
    """Product of closed integer intervals; at most two are non-singleton.

    Identity for set-difference bookkeeping is the provenance triple
    (source, i, j), not the geometry: distinct run index pairs can
    produce equal boxes.
    """

    intervals: tuple  # ((lo, hi), ...) per coordinate
    source: str = "?"
    i: int = 0
    j: int = 0

    def __post_init__(self):
        ivals = tuple((int(lo), int(hi)) for lo, hi in self.intervals)
        object.__setattr__(self, "intervals", ivals)
        if any(lo > hi for lo, hi in ivals):
            raise ValueError("empty interval in rectangle")
        if len(self.dims) > 2:
            raise ValueError("more than two non-singleton coordinates")

    @property
    def dims(self) -> tuple:
        return tuple(c for c, (lo, hi) in enumerate(self.intervals) if lo < hi)

    @property
    def provenance(self) -> tuple:
        return (self.source, self.i, self.j)

    def contains(self, point) -> bool:
        return all(lo <= x <= hi for x, (lo, hi) in zip(point, self.intervals))

    def max_corner(self) -> tuple:
        return tuple(hi for _, hi in self.intervals)

    def min_corner(self) -> tuple:
        return tuple(lo for lo, _ in self.intervals)


def l1_interval(r: Rect) -> Tuple[int, int]:
    """The closed interval of l1 norms attained by points of r."""
    return (sum(lo for lo, _ in r.intervals), sum(hi for _, hi in r.intervals))


def rect(v: RleString, i: int, j: int) -> Rect:
    """The box with opposite corners P(V_i..V_j) and P(V_{i+1}..V_{j-1})."""
    if not 1 <= i <= j <= v.m:
        raise IndexError(f"run indices ({i}, {j}) out of range for m={v.m}")
    outer = v.run_block_parikh(i, j)
    inner = v.run_block_parikh(i + 1, j - 1)  # zero vector when j <= i+1
    return Rect(tuple(zip(inner, outer)), source="V", i=i, j=j)


def min_cover_index(v: RleString, i: int, l: int) -> int:
    """j(i, l): least j with |V_i| + ... + |V_j| >= l, or m+1 if none."""
    m = v.m
    if not 1 <= i <= m + 1:
        raise IndexError(f"run index {i} out of range")
    if l < 0:
        raise ValueError("l must be non-negative")
    if i == m + 1:
        return m + 1
    base = v.prefix_len[i - 1]
    for j in range(i, m + 1):
        if v.prefix_len[j] - base >= l:
            return j
    return m + 1


def _cover_indices(v: RleString, l: int) -> List[int]:
    """j(i, l) for i = 1..m+1 in O(m) total via a sliding window."""
    m = v.m
    jj = [0] * (m + 2)  # 1-based
    j = 1
    for i in range(1, m + 1):
        if j < i:
            j = i
        while j <= m and v.prefix_len[j] - v.prefix_len[i - 1] < l:
            j += 1
        jj[i] = j
    jj[m + 1] = m + 1
    return jj


def rects_at_norm(v: RleString, l: int) -> List[Rect]:
    """Rect_V(l): the at most 2m rectangles whose norm interval contains l."""
    if not 0 <= l <= v.n:
        raise ValueError(f"norm {l} out of range [0, {v.n}]")
    jj = _cover_indices(v, l)
    out = []
    for i in range(1, v.m + 1):
        for j in range(jj[i], min(jj[i + 1], v.m) + 1):
            out.append(rect(v, i, j))
    return out


@dataclass(frozen=True)
class RectDelta:
    """Changes of Rect_V between norms l-1 and l."""

    l: int
    added: tuple = field(default=())
    removed: tuple = field(default=())


def rect_delta_stream(v: RleString) -> Iterator[RectDelta]:
    """Yield, in increasing l, every change of Rect_V(l) versus Rect_V(l-1).

    Replaying the deltas on top of rects_at_norm(v, 0) reconstructs
    Rect_V(l) for every l.  Working memory is O(m): the slice itself is
    implicit in the cover indices, and the priority queue holds at most
    one entry per start index.
    """
    m = v.m
    if m == 0:
        return
    jj = list(range(m + 2))  # j(i, 0) = i; jj[m+1] = m+1
    heap = [(v.prefix_len[i] - v.prefix_len[i - 1], i) for i in range(1, m + 1)]
    heapq.heapify(heap)
    while heap:
        a = heap[0][0]
        l = a + 1
        if l > v.n:
            break
        bumped = []
        while heap and heap[0][0] == a:
            bumped.append(heapq.heappop(heap)[1])
        added = []
        removed = []
        for i in bumped:
            # row i's lower bound rises past its old first rectangle
            removed.append(rect(v, i, jj[i]))
        for i in bumped:
            jj[i] += 1
            if jj[i] <= m:
                heapq.heappush(heap, (v.prefix_len[jj[i]] - v.prefix_len[i - 1], i))
        for i in bumped:
            # row i-1's upper bound rises to the new jj[i]
            if i > 1 and jj[i] <= m and jj[i] >= jj[i - 1]:
                added.append(rect(v, i - 1, jj[i]))
        if added or removed:
            yield RectDelta(l, tuple(added), tuple(removed))


def find_occurrence(v: RleString, point) -> Optional[Tuple[int, int]]:
    """Locate a factor of the decoded string with the given Parikh vector.

    Scans the at most 2m rectangles of Rect_V(norm) for one containing
    the point, then solves for the start offset inside the boundary
    runs.  Returns a half-open (start, end) position range, or None when
    the point is not a factor Parikh vector of v.
    """
    point = tuple(point)
    norm = sum(point)
    if norm > v.n or any(x < 0 for x in point):
        return None
    if norm == 0:
        return (0, 0)
    for r in rects_at_norm(v, norm):
        if r.contains(point):
            i, j = r.i, r.j
            inner = v.run_block_parikh(i + 1, j - 1)
            ci, li = v.runs[i - 1]
            cj, lj = v.runs[j - 1]
            if i == j:
                x_i, x_j = point[ci], 0
            elif ci == cj:
                delta = point[ci] - inner[ci]
                x_j = min(lj, delta)
                x_i = delta - x_j
            else:
                x_i = point[ci] - inner[ci]
                x_j = point[cj] - inner[cj]
            # factor = last x_i chars of run i, runs i+1..j-1, first x_j of run j
            start = v.prefix_len[i] - x_i
            end = (v.prefix_len[j - 1] + x_j) if j > i else start + x_j + point[ci]
            return (start, end)
    return None

"""Geometric RLE-LCAF solvers for alphabets of size two and three.

For sigma = 2 the factor Parikh vectors of a string form an orthogonally
convex subset of the grid, fully described by two monotone step
functions (an upper and a lower envelope); intersecting two such sets
is a linear scan over the step endpoints.

For sigma = 3 the rectangle families of both strings are streamed in
batches of O(m) boxes each (so every norm slice Rect(l) sits inside one
batch), each batch is coordinate-normalized and handed to a sweep-line
solver that finds the common point of maximal l1 norm.  All norm
comparisons use original coordinates; the normalized ranks only drive
the sweep structures.
"""

from __future__ import annotations

import heapq
import itertools
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from .core import InvalidInputError, LcafResult, ParikhVector, RleString
from .rle_rect import Rect, find_occurrence, rect, rect_delta_stream, rects_at_norm


@dataclass(frozen=True)
class StepFunction:
    """Piecewise-constant function given as (p_end, value) breakpoints.

    The value of a breakpoint holds for all p up to and including p_end;
    the first breakpoint covers everything from p = 0.
    """

    breakpoints: tuple

    def __post_init__(self):
        bps = tuple((int(p), int(v)) for p, v in self.breakpoints)
        object.__setattr__(self, "breakpoints", bps)
        if not bps:
            raise ValueError("step function needs at least one breakpoint")
        if any(bps[k][0] >= bps[k + 1][0] for k in range(len(bps) - 1)):
            raise ValueError("breakpoint positions must strictly increase")

    @property
    def domain_max(self) -> int:
        return self.breakpoints[-1][0]

    @property
    def ends(self) -> List[int]:
        return [p for p, _ in self.breakpoints]

    def value(self, p: int) -> int:
        if not 0 <= p <= self.domain_max:
            raise ValueError(f"p={p} outside domain [0, {self.domain_max}]")
        k = bisect_left(self.ends, p)
        return self.breakpoints[k][1]


def _merge_flat(pairs) -> tuple:
    """Drop breakpoints whose value equals the next one's."""
    out = []
    for p, v in pairs:
        if out and out[-1][1] == v:
            out[-1] = (p, v)
        else:
            out.append((p, v))
    return tuple(out)


def envelopes_binary(v: RleString) -> Tuple[StepFunction, StepFunction]:
    """Upper and lower envelope of the factor Parikh vectors of v.

    up(p) = max{q : (p, q) is a factor Parikh vector}, down(p) the min,
    for p in [0, count of symbol 0].  Corners of the m^2 rectangles are
    merged in sorted order through a heap holding one candidate per
    start run: up(p) is the running max of top coordinates over rects
    whose low x reaches p, down(p) the suffix min of bottom coordinates
    over rects whose high x covers p.  Monotonicity of both envelopes
    makes these reductions exact.
    """
    if v.sigma != 2:
        raise InvalidInputError("envelopes are defined for binary strings only")
    m = v.m
    domain = v.prefix_parikh[m][0]
    if m == 0:
        flat = StepFunction(((0, 0),))
        return flat, flat

    def corner(i: int, j: int, lo_axis_x: bool):
        outer = v.run_block_parikh(i, j)
        inner = v.run_block_parikh(i + 1, j - 1)
        if lo_axis_x:
            return (inner[0], outer[1])  # (xlo, yhi), top-left
        return (outer[0], inner[1])  # (xhi, ylo), bottom-right

    def sweep(lo_axis_x: bool) -> List[tuple]:
        heap = []
        for i in range(1, m + 1):
            x, y = corner(i, i, lo_axis_x)
            heap.append((x, y, i, i))
        heapq.heapify(heap)
        out = []
        while heap:
            x, y, i, j = heapq.heappop(heap)
            out.append((x, y))
            if j < m:
                nx, ny = corner(i, j + 1, lo_axis_x)
                heapq.heappush(heap, (nx, ny, i, j + 1))
        return out

    top_left = sweep(True)
    bps = []
    run_max = -1
    for k, (x, y) in enumerate(top_left):
        run_max = max(run_max, y)
        nxt = top_left[k + 1][0] if k + 1 < len(top_left) else domain + 1
        if nxt > x:
            bps.append((min(nxt - 1, domain), run_max))
    up = StepFunction(_merge_flat(bps))

    bottom_right = sweep(False)
    xs = sorted({x for x, _ in bottom_right})
    min_at = {}
    for x, y in bottom_right:
        if x not in min_at or y < min_at[x]:
            min_at[x] = y
    bps = []
    run = None
    for x in reversed(xs):
        run = min_at[x] if run is None else min(run, min_at[x])
        bps.append((x, run))
    bps.reverse()
    down = StepFunction(_merge_flat(bps))
    assert up.domain_max == domain and down.domain_max == domain
    return up, down


def lcaf_rle_binary(s: RleString, t: RleString) -> LcafResult:
    """RLE-LCAF over a binary alphabet in O(m^2 log m) time.

    A common Parikh vector (p, q) exists iff p is in both domains and
    the envelopes interleave: up_s(p) >= down_t(p) and up_t(p) >=
    down_s(p).  The best q for a given p is min(up_s(p), up_t(p)), and
    since all four envelopes are step functions, only right endpoints
    of steps can be optimal.
    """
    if s.sigma != 2 or t.sigma != 2:
        raise InvalidInputError("binary solver requires sigma = 2")
    zero = LcafResult(0, ParikhVector((0, 0)), ((0, 0), (0, 0)))
    if s.m == 0 or t.m == 0:
        return zero
    up_s, down_s = envelopes_binary(s)
    up_t, down_t = envelopes_binary(t)
    pmax = min(up_s.domain_max, up_t.domain_max)
    candidates = {p for f in (up_s, down_s, up_t, down_t) for p in f.ends if p <= pmax}
    candidates.add(pmax)
    best = -1
    best_point = None
    for p in sorted(candidates):
        us, ds = up_s.value(p), down_s.value(p)
        ut, dt = up_t.value(p), down_t.value(p)
        if us >= dt and ut >= ds:
            q = min(us, ut)
            if p + q > best:
                best = p + q
                best_point = (p, q)
    if best <= 0 or best_point is None:
        return zero
    occ_s = find_occurrence(s, best_point)
    occ_t = find_occurrence(t, best_point)
    return LcafResult(best, ParikhVector(best_point), (occ_s, occ_t))


@dataclass(frozen=True)
class GeomInstance:
    """A batched rectangle-intersection subproblem.

    back_maps is None for raw instances and holds, per axis, the sorted
    original coordinate values after normalization; normalized rank r on
    axis c maps back to back_maps[c][r].
    """

    d: int
    family1: tuple
    family2: tuple
    back_maps: Optional[tuple] = None


def reduction_instances(s: RleString, t: RleString) -> Iterator[GeomInstance]:
    """Batch the norm-slice evolution of both rectangle families.

    Both delta streams are merged by norm.  Removals are deferred until
    the next flush, so the families yielded at a flush cover Rect(l) of
    both strings for every l since the previous flush.  A flush happens
    after every m insertions and once at the end, giving O(m) instances
    of at most 3m rectangles per side.
    """
    if s.sigma != t.sigma:
        raise ValueError("inputs must share an alphabet size")
    if s.m == 0 or t.m == 0:
        return
    m = max(s.m, t.m)
    l_cap = min(s.n, t.n)
    fam = [
        {r.provenance: r for r in rects_at_norm(s, 0)},
        {r.provenance: r for r in rects_at_norm(t, 0)},
    ]
    pending = [set(), set()]
    sigma = s.sigma

    def flush() -> GeomInstance:
        inst = GeomInstance(sigma, tuple(fam[0].values()), tuple(fam[1].values()))
        for side in (0, 1):
            for prov in pending[side]:
                fam[side].pop(prov, None)
            pending[side].clear()
        return inst

    def tagged(side: int, v: RleString):
        for delta in rect_delta_stream(v):
            yield (delta.l, side, delta)

    inserted = 0
    for l, side, delta in heapq.merge(tagged(0, s), tagged(1, t)):
        if l > l_cap:
            break
        for r in delta.removed:
            pending[side].add(r.provenance)
        for r in delta.added:
            fam[side][r.provenance] = r
            inserted += 1
            if inserted % m == 0:
                yield flush()
    yield flush()


def normalize(inst: GeomInstance) -> GeomInstance:
    """Replace each axis's coordinates by their ranks, keeping back maps."""
    values = [set() for _ in range(inst.d)]
    for r in list(inst.family1) + list(inst.family2):
        for c, (lo, hi) in enumerate(r.intervals):
            values[c].add(lo)
            values[c].add(hi)
    back = tuple(sorted(vs) for vs in values)
    rank = [{x: k for k, x in enumerate(bm)} for bm in back]

    def remap(r: Rect) -> Rect:
        ivals = tuple(
            (rank[c][lo], rank[c][hi]) for c, (lo, hi) in enumerate(r.intervals)
        )
        return Rect(ivals, source=r.source, i=r.i, j=r.j)

    return GeomInstance(
        inst.d,
        tuple(remap(r) for r in inst.family1),
        tuple(remap(r) for r in inst.family2),
        back,
    )


class _Fenwick:
    """Prefix-sum counter over [0, size)."""

    def __init__(self, size: int):
        self.size = size
        self.tree = [0] * (size + 1)

    def add(self, i: int, delta: int):
        i += 1
        while i <= self.size:
            self.tree[i] += delta
            i += i & -i

    def prefix(self, i: int) -> int:
        # sum over [0, i]; i may be -1 for an empty prefix
        i += 1
        total = 0
        while i > 0:
            total += self.tree[i]
            i -= i & -i
        return total


class _MaxSegTree:
    """Point-update range-max tree; empty slots hold the sentinel."""

    SENTINEL = None

    def __init__(self, size: int):
        n = 1
        while n < max(size, 1):
            n *= 2
        self.n = n
        self.data = [None] * (2 * n)

    @staticmethod
    def _better(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return a if a >= b else b

    def set(self, i: int, val):
        i += self.n
        self.data[i] = val
        i //= 2
        while i >= 1:
            self.data[i] = self._better(self.data[2 * i], self.data[2 * i + 1])
            i //= 2

    def query(self, lo: int, hi: int):
        """Max over the inclusive index range [lo, hi], or None."""
        if lo > hi:
            return None
        res = None
        lo += self.n
        hi += self.n + 1
        while lo < hi:
            if lo & 1:
                res = self._better(res, self.data[lo])
                lo += 1
            if hi & 1:
                hi -= 1
                res = self._better(res, self.data[hi])
            lo //= 2
            hi //= 2
        return res


class _ActiveMaxIndex:
    """Tracks a multiset of indices; answers max index present in a range."""

    def __init__(self, size: int):
        self.count = [0] * size
        self.tree = _MaxSegTree(size)

    def add(self, i: int):
        self.count[i] += 1
        if self.count[i] == 1:
            self.tree.set(i, i)

    def remove(self, i: int):
        self.count[i] -= 1
        if self.count[i] == 0:
            self.tree.set(i, None)

    def query_max(self, lo: int, hi: int) -> Optional[int]:
        return self.tree.query(lo, hi)


_INSERT, _QUERY, _DELETE = 0, 1, 2


def _containment_sweep(corners_of, containers, back) -> Optional[Tuple[tuple, int]]:
    """Best top-right corner of one family lying inside the other family.

    Sweeps x with closed-boundary semantics: at equal x, containers are
    activated before corners are tested and deactivated after.
    """
    y_size = len(back[1])
    events = []
    for r in containers:
        (xlo, xhi), _ = r.intervals
        events.append((xlo, _INSERT, r))
        events.append((xhi, _DELETE, r))
    for r in corners_of:
        events.append((r.intervals[0][1], _QUERY, r))
    events.sort(key=lambda e: (e[0], e[1]))
    lo_counts = _Fenwick(y_size)
    hi_counts = _Fenwick(y_size)
    best = None
    for _, kind, r in events:
        _, (ylo, yhi) = r.intervals
        if kind == _INSERT:
            lo_counts.add(ylo, 1)
            hi_counts.add(yhi, 1)
        elif kind == _DELETE:
            lo_counts.add(ylo, -1)
            hi_counts.add(yhi, -1)
        else:
            cx, cy = r.intervals[0][1], yhi
            stabbed = lo_counts.prefix(cy) - hi_counts.prefix(cy - 1)
            if stabbed > 0:
                pt = (back[0][cx], back[1][cy])
                cand = (pt[0] + pt[1], pt)
                if best is None or cand > best:
                    best = cand
    if best is None:
        return None
    return best[1], best[0]


def _crossing_sweep(verticals, horizontals, back) -> Optional[Tuple[tuple, int]]:
    """Best crossing of a right edge with a top edge of the other family.

    Horizontal top edges are active while the sweep x lies in their
    rectangle's x interval; each vertical right edge queries the topmost
    active edge whose y falls in its own y interval.
    """
    active = _ActiveMaxIndex(len(back[1]))
    events = []
    for r in horizontals:
        (xlo, xhi), (_, yhi) = r.intervals
        events.append((xlo, _INSERT, yhi))
        events.append((xhi, _DELETE, yhi))
    for r in verticals:
        (_, xhi), (ylo, yhi) = r.intervals
        events.append((xhi, _QUERY, (ylo, yhi)))
    events.sort(key=lambda e: (e[0], e[1]))
    best = None
    for x, kind, payload in events:
        if kind == _INSERT:
            active.add(payload)
        elif kind == _DELETE:
            active.remove(payload)
        else:
            ylo, yhi = payload
            y = active.query_max(ylo, yhi)
            if y is not None:
                pt = (back[0][x], back[1][y])
                cand = (pt[0] + pt[1], pt)
                if best is None or cand > best:
                    best = cand
    if best is None:
        return None
    return best[1], best[0]


def solve_2d(inst: GeomInstance) -> Optional[Tuple[tuple, int]]:
    """Maximal-l1 common point of the two families of a normalized 2D instance.

    The top-right corner of any non-empty intersection is either the
    top-right corner of one of the two rectangles (then it lies inside
    the other) or the crossing of one's right edge with the other's top
    edge, so two sweeps in each orientation are exhaustive.
    """
    if inst.d != 2:
        raise ValueError("solve_2d expects a 2-dimensional instance")
    if inst.back_maps is None:
        raise ValueError("instance must be normalized first")
    back = inst.back_maps
    f1, f2 = inst.family1, inst.family2
    best = None
    for fam_a, fam_b in ((f1, f2), (f2, f1)):
        for hit in (
            _containment_sweep(fam_a, fam_b, back),
            _crossing_sweep(fam_a, fam_b, back),
        ):
            if hit is not None:
                point, norm = hit
                if best is None or (norm, point) > (best[1], best[0]):
                    best = (point, norm)
    return best


class _RangeTree2D:
    """Static 2D max structure over weighted points with on/off switching.

    Points are fixed at construction; activate/deactivate toggles them.
    query_box returns the best (weight, point_id) with x and y ranks in
    the given closed ranges, honoring only active points.
    """

    def __init__(self, points):
        # points: list of (x, y, value) with value comparable; ids are
        # positions in the list
        order = sorted(range(len(points)), key=lambda k: (points[k][0], points[k][1], k))
        self.points = points
        self.xs = [points[k][0] for k in order]
        n = 1
        while n < max(len(points), 1):
            n *= 2
        self.n = n
        self.node_keys = [None] * (2 * n)  # sorted (y, id) per node
        self.node_tree = [None] * (2 * n)
        self.positions = [[] for _ in points]  # (node, slot) per point
        for leaf, k in enumerate(order):
            node = n + leaf
            self.node_keys[node] = [(points[k][1], k)]
        for leaf in range(len(points), n):
            self.node_keys[n + leaf] = []
        for node in range(n - 1, 0, -1):
            a, b = self.node_keys[2 * node], self.node_keys[2 * node + 1]
            self.node_keys[node] = sorted(a + b)
        for node in range(1, 2 * n):
            keys = self.node_keys[node]
            self.node_tree[node] = _MaxSegTree(len(keys))
            for slot, (_, k) in enumerate(keys):
                self.positions[k].append((node, slot))

    def activate(self, k: int):
        val = (self.points[k][2], k)
        for node, slot in self.positions[k]:
            self.node_tree[node].set(slot, val)

    def deactivate(self, k: int):
        for node, slot in self.positions[k]:
            self.node_tree[node].set(slot, None)

    def query_box(self, xlo, xhi, ylo, yhi):
        lo = bisect_left(self.xs, xlo) + self.n
        hi = bisect_right(self.xs, xhi) + self.n
        best = None
        while lo < hi:
            if lo & 1:
                best = self._node_best(lo, ylo, yhi, best)
                lo += 1
            if hi & 1:
                hi -= 1
                best = self._node_best(hi, ylo, yhi, best)
            lo //= 2
            hi //= 2
        return best

    def _node_best(self, node, ylo, yhi, best):
        keys = self.node_keys[node]
        a = bisect_left(keys, (ylo, -1))
        b = bisect_right(keys, (yhi, len(self.points))) - 1
        hit = self.node_tree[node].query(a, b)
        return _MaxSegTree._better(best, hit)


def _cross_sweep(fam12, fam23, axes, back) -> Optional[Tuple[tuple, int]]:
    """Cross-dims case of the 3D solver for one axis assignment.

    fam12 rectangles are singletons on axes[2], fam23 on axes[0].  The
    sweep moves along axes[2]; an active fam23 box {a} x [b1,b2] x
    [c1,c2] contributes the point (a, b2) with its original-coordinate
    weight, and a fam12 box queries its own [a-range] x [b-range].  Only
    pairs where the fam23 box has the lower top on the shared middle
    axis are found here; the other orientation comes from the reversed
    assignment.
    """
    a1, a2, a3 = axes
    cands = [r for r in fam23 if r.intervals[a1][0] == r.intervals[a1][1]]
    probes = [r for r in fam12 if r.intervals[a3][0] == r.intervals[a3][1]]
    if not cands or not probes:
        return None
    points = []
    for r in cands:
        a = r.intervals[a1][0]
        b2 = r.intervals[a2][1]
        points.append((a, b2, back[a1][a] + back[a2][b2]))
    tree = _RangeTree2D(points)
    events = []
    for k, r in enumerate(cands):
        c1, c2 = r.intervals[a3]
        events.append((c1, _INSERT, k))
        events.append((c2, _DELETE, k))
    for r in probes:
        events.append((r.intervals[a3][0], _QUERY, r))
    events.sort(key=lambda e: (e[0], e[1]))
    best = None
    for c, kind, payload in events:
        if kind == _INSERT:
            tree.activate(payload)
        elif kind == _DELETE:
            tree.deactivate(payload)
        else:
            alo, ahi = payload.intervals[a1]
            blo, bhi = payload.intervals[a2]
            hit = tree.query_box(alo, ahi, blo, bhi)
            if hit is None:
                continue
            w, k = hit
            a, b2, _ = points[k]
            ranks = [0, 0, 0]
            ranks[a1], ranks[a2], ranks[a3] = a, b2, c
            pt = tuple(back[c0][ranks[c0]] for c0 in range(3))
            norm = w + back[a3][c]
            assert norm == sum(pt)
            if best is None or (norm, pt) > (best[1], best[0]):
                best = (pt, norm)
    return best


def solve_3d(inst: GeomInstance) -> Optional[Tuple[tuple, int]]:
    """Maximal-l1 common point of a normalized 3D instance.

    Pairs whose free axes fit in a common axis pair intersect only at
    equal third coordinate, so they reduce to 2D per group.  Remaining
    pairs fit a 12-box against a 23-box under some axis assignment and
    are handled by a plane sweep along the third axis; all assignments
    are enumerated in both family orders.
    """
    if inst.d != 3:
        raise ValueError("solve_3d expects a 3-dimensional instance")
    if inst.back_maps is None:
        raise ValueError("instance must be normalized first")
    back = inst.back_maps
    best = None

    def consider(hit):
        nonlocal best
        if hit is not None and (best is None or (hit[1], hit[0]) > (best[1], best[0])):
            best = hit

    for pair in ((0, 1), (0, 2), (1, 2)):
        rest = ({0, 1, 2} - set(pair)).pop()
        groups = {}
        for side, fam in enumerate((inst.family1, inst.family2)):
            for r in fam:
                if set(r.dims) <= set(pair):
                    key = r.intervals[rest][0]
                    groups.setdefault(key, ([], []))[side].append(
                        Rect(
                            (r.intervals[pair[0]], r.intervals[pair[1]]),
                            source=r.source,
                            i=r.i,
                            j=r.j,
                        )
                    )
        for key, (g1, g2) in groups.items():
            if not g1 or not g2:
                continue
            sub = GeomInstance(2, tuple(g1), tuple(g2), (back[pair[0]], back[pair[1]]))
            hit = solve_2d(sub)
            if hit is not None:
                (px, py), norm = hit
                fixed = back[rest][key]
                pt = [0, 0, 0]
                pt[pair[0]], pt[pair[1]], pt[rest] = px, py, fixed
                consider((tuple(pt), norm + fixed))

    for axes in itertools.permutations((0, 1, 2)):
        for fam12, fam23 in (
            (inst.family1, inst.family2),
            (inst.family2, inst.family1),
        ):
            consider(_cross_sweep(fam12, fam23, axes, back))
    return best


def lcaf_rle_geometric(
    s: RleString, t: RleString, force_pipeline: bool = False
) -> LcafResult:
    """RLE-LCAF for sigma <= 3 via the batched geometric pipeline.

    Binary inputs use the envelope solver unless force_pipeline is set,
    in which case the instance pipeline runs through solve_2d (mostly
    useful for cross-checking).  Larger alphabets must use the cubic
    solver.
    """
    if s.sigma != t.sigma:
        raise ValueError("inputs must share an alphabet size")
    sigma = s.sigma
    if sigma > 3:
        raise ValueError("geometric solvers support sigma <= 3; use the cubic solver")
    zero = LcafResult(0, ParikhVector((0,) * sigma), ((0, 0), (0, 0)))
    if s.m == 0 or t.m == 0:
        return zero
    if sigma <= 1:
        # both strings repeat the single symbol
        length = min(s.n, t.n)
        point = (length,) * sigma if sigma else ()
        if length == 0:
            return zero
        return LcafResult(
            length, ParikhVector(point), ((0, length), (0, length))
        )
    if sigma == 2 and not force_pipeline:
        return lcaf_rle_binary(s, t)

    solver = solve_2d if sigma == 2 else solve_3d
    best = None
    for raw in reduction_instances(s, t):
        hit = solver(normalize(raw))
        if hit is not None and (best is None or (hit[1], hit[0]) > (best[1], best[0])):
            best = hit
    if best is None or best[1] <= 0:
        return zero
    point, norm = best
    occ_s = find_occurrence(s, point)
    occ_t = find_occurrence(t, point)
    assert occ_s is not None and occ_t is not None
    return LcafResult(norm, ParikhVector(point), (occ_s, occ_t))

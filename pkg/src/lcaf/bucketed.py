"""Subquadratic LCAF solver for small alphabets.

Factors are processed in stages of up to b consecutive lengths.  Parikh
vectors are bucketed by the orthogonal cell floor(P/b) of Z^sigma; each
bucket is one machine word (b^sigma <= 64 bits), the bit of P mod b
marking the presence of a matching factor.  A memoized lookup table maps
(base vector mod b, up to b-1 extension symbols) to the insertion
requests produced by one position, so a scan of the string emits O(n)
requests per stage and a per-cell AND of the two sides decides the stage.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .core import LcafResult, ParikhVector, PlainString
from .oracle import has_abelian_factor

WORD_BITS = 64


class WordBudgetError(ValueError):
    """No feasible cell side length: b^sigma exceeds the machine word."""


def select_b(sigma: int, word_bits: int = WORD_BITS) -> Optional[int]:
    """Largest side length b >= 2 with b**sigma <= word_bits, or None."""
    if sigma == 0:
        return 2
    b = int(round(word_bits ** (1.0 / sigma)))
    while b**sigma > word_bits:
        b -= 1
    while (b + 1) ** sigma <= word_bits:
        b += 1
    return b if b >= 2 else None


def cell_of(p: Sequence[int], b: int) -> Tuple[tuple, tuple]:
    """Split a Parikh vector into (cell coordinates, local remainders)."""
    if b < 1:
        raise ValueError("cell side length must be >= 1")
    cell = tuple(x // b for x in p)
    local = tuple(x % b for x in p)
    return cell, local


def local_index(rems: Sequence[int], b: int) -> int:
    """Pack remainders into the mixed-radix index sum(rems[c] * b**c)."""
    idx = 0
    for c in reversed(range(len(rems))):
        idx = idx * b + rems[c]
    return idx


@lru_cache(maxsize=None)
def _local_tables(b: int, sigma: int):
    """Per-index digit tuples and l1 norms for all b**sigma local indices."""
    digits = []
    norms = []
    for idx in range(b**sigma):
        t = []
        x = idx
        for _ in range(sigma):
            t.append(x % b)
            x //= b
        digits.append(tuple(t))
        norms.append(sum(t))
    return tuple(digits), tuple(norms)


@dataclass(frozen=True)
class InsertionRequest:
    """One batched bucket update: OR `mask` into the bucket of `cell`."""

    cell: tuple
    mask: int


class StepTable:
    """Lookup table from (Q, extension symbols) to insertion requests.

    Q is the base window's Parikh vector mod b; the extensions are the
    last characters of the up to b-1 longer factors sharing the start
    position.  Values carry cell ids relative to the base window's cell
    (componentwise 0/1 offsets).  Entries are memoized on first use; one
    instance serves every stage of a solve.
    """

    def __init__(self, b: int, sigma: int):
        if b < 1:
            raise ValueError("b must be >= 1")
        if b**sigma > WORD_BITS:
            raise WordBudgetError(f"b^sigma = {b**sigma} exceeds {WORD_BITS}-bit buckets")
        self.b = b
        self.sigma = sigma
        self._entries: Dict[tuple, tuple] = {}

    def lookup(self, q: Sequence[int], extensions: Sequence[int]) -> Tuple[Tuple[tuple, int], ...]:
        """Requests for one position, as ((cell offset, bitmask), ...)."""
        b, sigma = self.b, self.sigma
        key = (tuple(q), tuple(extensions))
        hit = self._entries.get(key)
        if hit is not None:
            return hit
        q, exts = key
        if len(q) != sigma or any(not 0 <= x < b for x in q):
            raise ValueError("Q must lie in [0,b)^sigma")
        if len(exts) >= b or any(not 0 <= c < sigma for c in exts):
            raise ValueError("need at most b-1 extension symbols in [0,sigma)")
        rems = list(q)
        off = [0] * sigma
        idx = local_index(rems, b)
        merged: Dict[tuple, int] = {tuple(off): 1 << idx}
        stride = 1
        strides = []
        for _ in range(sigma):
            strides.append(stride)
            stride *= b
        for c in exts:
            rems[c] += 1
            if rems[c] == b:
                rems[c] = 0
                off[c] += 1
                idx -= (b - 1) * strides[c]
            else:
                idx += strides[c]
            o = tuple(off)
            merged[o] = merged.get(o, 0) | (1 << idx)
        value = tuple(merged.items())
        self._entries[key] = value
        return value


@lru_cache(maxsize=None)
def build_step_table(b: int, sigma: int) -> StepTable:
    return StepTable(b, sigma)


def _stage_range_iter(v: PlainString, lo: int, hi: int):
    """Per start position: (base counts, cell coords, Q, extension symbols)."""
    syms = v.symbols
    n = len(syms)
    counts = [0] * v.sigma
    for s in syms[:lo]:
        counts[s] += 1
    for j in range(n - lo + 1):
        if j > 0:
            counts[syms[j - 1]] -= 1
            counts[syms[j + lo - 1]] += 1
        exts = syms[j + lo : min(j + hi, n)]
        yield j, counts, exts


def collect_requests(
    v: PlainString, length_range: Tuple[int, int], table: StepTable, b: int
) -> List[InsertionRequest]:
    """Insertion requests covering all factors of v with length in the range.

    The OR-union of the returned masks per cell equals the set of
    (cell, local) pairs of window Parikh vectors for lengths lo..hi.
    """
    lo, hi = length_range
    if not 0 <= lo <= hi <= len(v):
        raise ValueError("length range out of bounds")
    if hi - lo + 1 > b:
        raise ValueError("length range longer than the stage budget b")
    out: List[InsertionRequest] = []
    for _, counts, exts in _stage_range_iter(v, lo, hi):
        base_cell = tuple(x // b for x in counts)
        q = tuple(x % b for x in counts)
        for off, mask in table.lookup(q, exts):
            cell = tuple(bc + oc for bc, oc in zip(base_cell, off))
            out.append(InsertionRequest(cell, mask))
    return out


def _group(requests: Iterable[InsertionRequest]) -> Dict[tuple, int]:
    grouped: Dict[tuple, int] = {}
    for r in requests:
        grouped[r.cell] = grouped.get(r.cell, 0) | r.mask
    return grouped


def _best_common(grouped_s: Dict, grouped_t: Dict, b: int, sigma: int, unpack):
    """Max-norm Parikh vector present in both sides' buckets, or None."""
    digits, norms = _local_tables(b, sigma)
    if len(grouped_t) < len(grouped_s):
        grouped_s, grouped_t = grouped_t, grouped_s
    best = None
    best_norm = -1
    for cell, ms in grouped_s.items():
        mt = grouped_t.get(cell)
        if not mt:
            continue
        z = ms & mt
        if not z:
            continue
        coords = unpack(cell)
        base = b * sum(coords)
        while z:
            low = z & -z
            z ^= low
            idx = low.bit_length() - 1
            norm = base + norms[idx]
            if norm > best_norm:
                best_norm = norm
                best = tuple(cc * b + d for cc, d in zip(coords, digits[idx]))
    if best is None:
        return None
    return best, best_norm


def solve_stage(
    reqs_s: Iterable[InsertionRequest],
    reqs_t: Iterable[InsertionRequest],
    b: int,
    sigma: int,
) -> Optional[ParikhVector]:
    """Group both request streams by cell, OR, AND, and pick the max norm."""
    hit = _best_common(_group(reqs_s), _group(reqs_t), b, sigma, lambda cell: cell)
    if hit is None:
        return None
    return ParikhVector(hit[0])


def _accumulate_stage(
    v: PlainString,
    lo: int,
    hi: int,
    table: StepTable,
    b: int,
    pack_base: int,
    grouped: Dict[int, int],
) -> None:
    """Fused request collection + grouping with integer-packed cell keys.

    Semantically identical to grouping collect_requests' output; the
    packed keys and the per-stage entry cache keep the scan cheap.
    pack_base must exceed every reachable cell coordinate + 1.
    """
    syms = v.symbols
    sigma = v.sigma
    n = len(syms)
    counts = [0] * sigma
    for s in syms[:lo]:
        counts[s] += 1
    klen = hi - lo
    radix = sigma + 1
    top = radix ** (klen - 1) if klen else 0
    # extension code: klen digits base (sigma+1), end-of-string padded with
    # the sentinel digit sigma
    extcode = 0
    for t in reversed(range(klen)):
        pos = lo + t
        extcode = extcode * radix + (syms[pos] if pos < n else sigma)
    cache: Dict[tuple, tuple] = {}
    get_entry = cache.get
    for j in range(n - lo + 1):
        if j > 0:
            counts[syms[j - 1]] -= 1
            counts[syms[j + lo - 1]] += 1
            if klen:
                nxt = j + lo + klen - 1
                extcode = extcode // radix + (syms[nxt] if nxt < n else sigma) * top
        q_idx = 0
        b0 = 0
        for c in reversed(range(sigma)):
            x = counts[c]
            q_idx = q_idx * b + x % b
            b0 = b0 * pack_base + x // b
        key = (q_idx, extcode)
        entry = get_entry(key)
        if entry is None:
            digits = []
            code = extcode
            for _ in range(klen):
                d = code % radix
                code //= radix
                if d == sigma:
                    break
                digits.append(d)
            q = []
            qi = q_idx
            for _ in range(sigma):
                q.append(qi % b)
                qi //= b
            entry = tuple(
                (sum(oc * pack_base**c for c, oc in enumerate(off)), mask)
                for off, mask in table.lookup(tuple(q), tuple(digits))
            )
            cache[key] = entry
        for offp, mask in entry:
            cell = b0 + offp
            prev = grouped.get(cell)
            grouped[cell] = mask if prev is None else prev | mask
    return None


def stage_ranges(n_min: int, b: int) -> List[Tuple[int, int]]:
    """Disjoint length ranges covering [0, n_min], longest first, width <= b."""
    ranges = []
    hi = n_min
    while hi >= 0:
        lo = max(0, hi - b + 1)
        ranges.append((lo, hi))
        hi = lo - 1
    return ranges


def lcaf_bucketed(s: PlainString, t: PlainString, b: Optional[int] = None) -> LcafResult:
    """LCAF via staged cell bucketing and word-level bucket intersection."""
    if s.sigma != t.sigma:
        raise ValueError("inputs must share an alphabet size")
    sigma = s.sigma
    if b is None:
        b = select_b(sigma)
        if b is None:
            raise WordBudgetError(
                f"word budget exceeded for sigma={sigma}; use the oracle solver"
            )
    table = build_step_table(b, sigma)
    n_min = min(len(s), len(t))
    pack_base = n_min // b + 2
    for lo, hi in stage_ranges(n_min, b):
        grouped_s: Dict[int, int] = {}
        grouped_t: Dict[int, int] = {}
        _accumulate_stage(s, lo, hi, table, b, pack_base, grouped_s)
        _accumulate_stage(t, lo, hi, table, b, pack_base, grouped_t)

        def unpack(cellkey: int, _pb=pack_base, _sigma=sigma) -> tuple:
            coords = []
            for _ in range(_sigma):
                coords.append(cellkey % _pb)
                cellkey //= _pb
            return tuple(coords)

        hit = _best_common(grouped_s, grouped_t, b, sigma, unpack)
        if hit is not None:
            witness, norm = hit
            occ_s = has_abelian_factor(s, witness)
            occ_t = has_abelian_factor(t, witness)
            return LcafResult(norm, ParikhVector(witness), (occ_s, occ_t))
    # the lo=0 stage always matches the zero vector, so this is unreachable
    raise AssertionError("no stage produced a hit")

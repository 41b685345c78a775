import random

import pytest

from lcaf.bucketed import (
    StepTable,
    WordBudgetError,
    build_step_table,
    cell_of,
    collect_requests,
    lcaf_bucketed,
    local_index,
    select_b,
    stage_ranges,
)
from lcaf.core import PlainString
from lcaf.oracle import lcaf_oracle, window_parikh_set


def test_select_b_values():
    assert select_b(0) == 2
    assert select_b(1) == 64
    assert select_b(2) == 8
    assert select_b(3) == 4
    assert select_b(4) == 2
    assert select_b(5) == 2
    assert select_b(6) == 2
    assert select_b(7) is None


def test_cell_of_and_local_index_round_trip():
    rng = random.Random(3)
    for _ in range(100):
        sigma = rng.randint(1, 4)
        b = rng.randint(2, 8)
        p = [rng.randint(0, 30) for _ in range(sigma)]
        cell, local = cell_of(p, b)
        back = [cc * b + lc for cc, lc in zip(cell, local)]
        assert back == p
        idx = local_index(local, b)
        digits = []
        x = idx
        for _ in range(sigma):
            digits.append(x % b)
            x //= b
        assert tuple(digits) == local


def test_step_table_single_example():
    table = StepTable(2, 2)
    reqs = dict(table.lookup((1, 1), (0,)))
    # base (1,1) -> bit 3 of the home cell; appending symbol 0 wraps the
    # first coordinate into the next cell with remainder (0,1) -> bit 2
    assert reqs[(0, 0)] == 1 << 3
    assert reqs[(1, 0)] == 1 << 2


def test_step_table_matches_direct_recount():
    rng = random.Random(4)
    for _ in range(200):
        sigma = rng.randint(1, 3)
        b = select_b(sigma)
        table = build_step_table(b, sigma)
        q = tuple(rng.randrange(b) for _ in range(sigma))
        exts = tuple(rng.randrange(sigma) for _ in range(rng.randint(0, b - 1)))
        got = {}
        for off, mask in table.lookup(q, exts):
            got[off] = got.get(off, 0) | mask
        want = {}
        counts = list(q)
        for step in range(len(exts) + 1):
            if step > 0:
                counts[exts[step - 1]] += 1
            cell, local = cell_of(counts, b)
            want[cell] = want.get(cell, 0) | (1 << local_index(local, b))
        assert got == want


def test_step_table_rejects_bad_inputs():
    table = StepTable(4, 3)
    with pytest.raises(ValueError):
        table.lookup((4, 0, 0), ())
    with pytest.raises(ValueError):
        table.lookup((0, 0, 0), (0, 1, 2, 0))
    with pytest.raises(WordBudgetError):
        StepTable(2, 7)


def test_collect_requests_covers_stage_windows():
    rng = random.Random(8)
    for _ in range(60):
        sigma = rng.choice([2, 3])
        b = select_b(sigma)
        n = rng.randint(1, 24)
        v = PlainString([rng.randrange(sigma) for _ in range(n)], sigma)
        lo = rng.randint(0, n)
        hi = min(n, lo + b - 1)
        table = build_step_table(b, sigma)
        got = {}
        for req in collect_requests(v, (lo, hi), table, b):
            got[req.cell] = got.get(req.cell, 0) | req.mask
        want = {}
        for length in range(lo, hi + 1):
            for p in window_parikh_set(v, length):
                cell, local = cell_of(p, b)
                want[cell] = want.get(cell, 0) | (1 << local_index(local, b))
        assert got == want


def test_stage_ranges_partition():
    for n in (0, 1, 5, 17, 100):
        for b in (2, 4, 8):
            ranges = stage_ranges(n, b)
            seen = []
            for lo, hi in ranges:
                assert 0 <= lo <= hi <= n
                assert hi - lo + 1 <= b
                seen.extend(range(lo, hi + 1))
            assert sorted(seen) == list(range(n + 1))
            # longest lengths come first so the solver can stop early
            assert ranges == sorted(ranges, key=lambda r: -r[1])


def test_lcaf_bucketed_examples():
    s = PlainString.from_text("aabb")
    t = PlainString.from_text("abab")
    r = lcaf_bucketed(s, t)
    assert r.length == 4 and r.witness.counts == (2, 2)
    assert lcaf_bucketed(PlainString([], 2), t).length == 0


def test_lcaf_bucketed_rejects_wide_alphabets():
    s = PlainString(list(range(7)), 7)
    with pytest.raises(WordBudgetError):
        lcaf_bucketed(s, s)


def test_lcaf_bucketed_matches_oracle_sweep():
    rng = random.Random(9)
    for _ in range(250):
        sigma = rng.choice([2, 3, 4, 5, 6])
        s = PlainString([rng.randrange(sigma) for _ in range(rng.randint(0, 32))], sigma)
        t = PlainString([rng.randrange(sigma) for _ in range(rng.randint(0, 32))], sigma)
        expected = lcaf_oracle(s, t)
        got = lcaf_bucketed(s, t)
        assert got.length == expected.length
        (a0, a1), (b0, b1) = got.occurrences
        ws = [0] * sigma
        for c in s.symbols[a0:a1]:
            ws[c] += 1
        assert tuple(ws) == got.witness.counts

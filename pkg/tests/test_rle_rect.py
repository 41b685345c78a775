import random

import pytest

from lcaf.core import PlainString, RleString, rle_encode
from lcaf.oracle import rect_points_oracle
from lcaf.rle_rect import (
    Rect,
    l1_interval,
    find_occurrence,
    min_cover_index,
    rect,
    rect_delta_stream,
    rects_at_norm,
)


def random_rle(rng, m, sigma, max_run=4):
    runs, prev = [], -1
    for _ in range(m):
        sym = rng.randrange(sigma)
        while sym == prev:
            sym = rng.randrange(sigma)
        runs.append((sym, rng.randint(1, max_run)))
        prev = sym
    return RleString(runs, sigma=sigma)


def test_rect_validation():
    with pytest.raises(ValueError):
        Rect(((2, 1),))
    with pytest.raises(ValueError):
        Rect(((0, 1), (0, 1), (0, 1)))  # three free coordinates
    r = Rect(((0, 2), (3, 3)))
    assert r.dims == (0,)
    assert r.max_corner() == (2, 3)
    assert l1_interval(r) == (3, 5)
    assert r.contains((1, 3)) and not r.contains((1, 2))


def test_rect_corners_from_runs():
    v = RleString([(0, 3), (1, 2), (0, 1)])
    r = rect(v, 1, 3)
    assert r.intervals == ((0, 4), (2, 2))
    assert rect(v, 2, 2).intervals == ((0, 0), (0, 2))
    with pytest.raises(IndexError):
        rect(v, 2, 4)


def test_min_cover_index():
    v = RleString([(0, 3), (1, 2), (0, 1)])
    assert min_cover_index(v, 1, 0) == 1
    assert min_cover_index(v, 1, 4) == 2
    assert min_cover_index(v, 2, 3) == 3
    assert min_cover_index(v, 2, 9) == 4  # not coverable -> m+1
    assert min_cover_index(v, 4, 1) == 4


def test_rects_at_norm_example():
    v = RleString([(0, 3), (1, 2), (0, 1)])
    provs = {(r.i, r.j) for r in rects_at_norm(v, 3)}
    assert provs == {(1, 1), (1, 2), (1, 3), (2, 3)}


def test_rects_at_norm_size_bound():
    rng = random.Random(12)
    for _ in range(60):
        v = random_rle(rng, rng.randint(1, 10), rng.choice([2, 3, 4]))
        for l in range(v.n + 1):
            assert len(rects_at_norm(v, l)) <= 2 * v.m


def test_delta_stream_two_run_example():
    v = RleString([(0, 2), (1, 1)])
    deltas = {d.l: d for d in rect_delta_stream(v)}
    assert {(r.i, r.j) for r in deltas[2].removed} == {(2, 2)}
    assert deltas[2].added == ()
    assert {(r.i, r.j) for r in deltas[3].removed} == {(1, 1)}
    assert max(deltas) <= v.n


def test_delta_stream_replay_matches_slices():
    rng = random.Random(13)
    for _ in range(80):
        v = random_rle(rng, rng.randint(1, 9), rng.choice([2, 3]))
        cur = {r.provenance for r in rects_at_norm(v, 0)}
        stream = {d.l: d for d in rect_delta_stream(v)}
        for l in range(v.n + 1):
            if l in stream:
                for r in stream[l].removed:
                    cur.remove(r.provenance)
                for r in stream[l].added:
                    assert r.provenance not in cur
                    cur.add(r.provenance)
            assert cur == {r.provenance for r in rects_at_norm(v, l)}


def test_find_occurrence_on_all_factor_vectors():
    rng = random.Random(14)
    for _ in range(40):
        v = random_rle(rng, rng.randint(1, 7), rng.choice([2, 3]))
        u = [c for sym, l in v.runs for c in [sym] * l]
        for point in rect_points_oracle(v):
            occ = find_occurrence(v, point)
            assert occ is not None
            lo, hi = occ
            counts = [0] * v.sigma
            for c in u[lo:hi]:
                counts[c] += 1
            assert tuple(counts) == point


def test_find_occurrence_rejects_non_factors():
    v = RleString([(0, 2), (1, 1)])
    assert find_occurrence(v, (0, 0)) == (0, 0)
    assert find_occurrence(v, (3, 0)) is None  # norm fits but no such factor
    assert find_occurrence(v, (4, 0)) is None  # norm exceeds the string

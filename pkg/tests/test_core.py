import random

import pytest
from hypothesis import given, strategies as st

from lcaf.core import (
    InvalidInputError,
    LcafResult,
    ParikhVector,
    PlainString,
    RleString,
    parikh,
    renumber_alphabet,
    rle_decode,
    rle_encode,
)


def test_parikh_vector_basics():
    p = ParikhVector((2, 0, 3))
    assert p.norm == 5
    assert p.sigma == 3
    assert p[2] == 3
    assert (p + ParikhVector((1, 1, 1))).counts == (3, 1, 4)


def test_parikh_vector_rejects_negative():
    with pytest.raises(InvalidInputError):
        ParikhVector((1, -1))


def test_plain_string_from_text():
    u = PlainString.from_text("abcba")
    assert u.symbols == (0, 1, 2, 1, 0)
    assert u.sigma == 3
    assert parikh(u).counts == (2, 2, 1)


def test_plain_string_rejects_symbol_outside_alphabet():
    with pytest.raises(InvalidInputError):
        PlainString([0, 2], sigma=2)
    with pytest.raises(InvalidInputError):
        PlainString.from_text("abc", alphabet="ab")


def test_rle_string_validation():
    with pytest.raises(InvalidInputError):
        RleString([(0, 2), (0, 1)])  # adjacent equal runs
    with pytest.raises(InvalidInputError):
        RleString([(0, 0)])  # empty run


def test_rle_prefix_tables():
    v = RleString([(0, 3), (1, 2), (0, 1)])
    assert v.m == 3 and v.n == 6
    assert list(v.prefix_len) == [0, 3, 5, 6]
    assert tuple(v.prefix_parikh[2]) == (3, 2)
    assert v.run_block_parikh(2, 3) == (1, 2)
    assert v.run_block_len(1, 3) == 6


def test_encode_decode_round_trip_examples():
    u = PlainString.from_text("aabbbcb")
    v = rle_encode(u)
    assert v.runs == ((0, 2), (1, 3), (2, 1), (1, 1))
    assert rle_decode(v) == u


@given(st.lists(st.integers(0, 3), max_size=40))
def test_encode_decode_round_trip(symbols):
    u = PlainString(symbols, 4)
    assert rle_decode(rle_encode(u)) == u


@given(
    st.lists(st.integers(0, 2), max_size=25),
    st.lists(st.integers(0, 2), max_size=25),
)
def test_parikh_is_additive_under_concatenation(a, b):
    u = PlainString(a, 3)
    w = PlainString(b, 3)
    both = PlainString(list(a) + list(b), 3)
    assert parikh(both).counts == (parikh(u) + parikh(w)).counts


def test_renumber_alphabet_is_order_preserving():
    s = RleString([(7, 2), (3, 1)], sigma=8)
    t = RleString([(5, 4)], sigma=8)
    s2, t2, mapping = renumber_alphabet(s, t)
    assert mapping == {3: 0, 5: 1, 7: 2}
    assert s2.runs == ((2, 2), (0, 1))
    assert t2.runs == ((1, 4),)
    assert s2.sigma == t2.sigma == 3


def test_renumber_random_sweep():
    rng = random.Random(11)
    for _ in range(50):
        sigma = rng.randint(2, 10)
        def rand(m):
            runs, prev = [], -1
            for _ in range(m):
                sym = rng.randrange(sigma)
                while sym == prev:
                    sym = rng.randrange(sigma)
                runs.append((sym, rng.randint(1, 4)))
                prev = sym
            return RleString(runs, sigma=sigma)
        s, t = rand(rng.randint(1, 6)), rand(rng.randint(1, 6))
        s2, t2, mapping = renumber_alphabet(s, t)
        # decoded contents agree up to the relabeling
        assert [mapping[c] for c, _ in s.runs] == [c for c, _ in s2.runs]
        assert [l for _, l in t.runs] == [l for _, l in t2.runs]
        assert sorted(mapping.values()) == list(range(len(mapping)))


def test_lcaf_result_checks_witness_norm():
    LcafResult(3, ParikhVector((1, 2)))
    with pytest.raises(ValueError):
        LcafResult(4, ParikhVector((1, 2)))

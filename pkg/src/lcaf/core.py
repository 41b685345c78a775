"""Strings, Parikh vectors and run-length encodings shared by all solvers.

Symbols are integer ranks in [0, sigma).  All types are immutable after
construction, so they can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

# Run lengths and total string lengths must fit in a signed 64-bit word.
MAX_LENGTH = 2**63 - 1


class InvalidInputError(ValueError):
    """Raised when a string or RLE representation violates its invariants."""


@dataclass(frozen=True)
class ParikhVector:
    """Per-symbol occurrence counts; the l1 norm equals the factor length."""

    counts: tuple

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(self.counts))
        if any(c < 0 for c in self.counts):
            raise InvalidInputError("negative count in Parikh vector")

    @property
    def sigma(self) -> int:
        return len(self.counts)

    @property
    def norm(self) -> int:
        return sum(self.counts)

    def __add__(self, other: "ParikhVector") -> "ParikhVector":
        return ParikhVector(tuple(a + b for a, b in zip(self.counts, other.counts)))

    def __iter__(self):
        return iter(self.counts)

    def __getitem__(self, c: int) -> int:
        return self.counts[c]


class PlainString:
    """An uncompressed string: a sequence of symbol ranks plus alphabet size."""

    __slots__ = ("symbols", "sigma")

    def __init__(self, symbols: Sequence[int], sigma: int):
        symbols = tuple(symbols)
        if sigma < 0:
            raise InvalidInputError("sigma must be non-negative")
        if len(symbols) > MAX_LENGTH:
            raise InvalidInputError("string too long")
        for s in symbols:
            if not 0 <= s < sigma:
                raise InvalidInputError(f"symbol {s} outside alphabet of size {sigma}")
        self.symbols = symbols
        self.sigma = sigma

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PlainString)
            and self.symbols == other.symbols
            and self.sigma == other.sigma
        )

    def __hash__(self):
        return hash((self.symbols, self.sigma))

    def __repr__(self):
        return f"PlainString({list(self.symbols)!r}, sigma={self.sigma})"

    @classmethod
    def from_text(cls, text: str, alphabet: Optional[str] = None) -> "PlainString":
        """Build from characters; alphabet defaults to the sorted distinct chars."""
        if alphabet is None:
            alphabet = "".join(sorted(set(text)))
        ranks = {ch: i for i, ch in enumerate(alphabet)}
        try:
            return cls([ranks[ch] for ch in text], len(alphabet))
        except KeyError as e:
            raise InvalidInputError(f"character {e.args[0]!r} not in alphabet") from None


def parikh(u: PlainString) -> ParikhVector:
    """Count symbol occurrences of the whole string."""
    counts = [0] * u.sigma
    for s in u.symbols:
        counts[s] += 1
    return ParikhVector(tuple(counts))


class RleString:
    """A run-length encoded string with eagerly materialized prefix tables.

    prefix_len[i] is the decoded length of the first i runs, and
    prefix_parikh[i] the Parikh vector of the first i runs, so the Parikh
    vector of any run block V_i..V_j is an O(sigma) subtraction.
    """

    __slots__ = ("runs", "sigma", "m", "n", "prefix_len", "prefix_parikh")

    def __init__(self, runs: Sequence[tuple], sigma: Optional[int] = None):
        runs = tuple((int(s), int(l)) for s, l in runs)
        if sigma is None:
            sigma = max((s for s, _ in runs), default=-1) + 1
        prev = -1
        total = 0
        for s, l in runs:
            if l < 1:
                raise InvalidInputError("run length must be positive")
            if not 0 <= s < sigma:
                raise InvalidInputError(f"symbol {s} outside alphabet of size {sigma}")
            if s == prev:
                raise InvalidInputError("adjacent runs carry equal symbols")
            prev = s
            total += l
            if total > MAX_LENGTH:
                raise InvalidInputError("decoded length exceeds 64-bit budget")
        self.runs = runs
        self.sigma = sigma
        self.m = len(runs)
        self.n = total
        plen = [0]
        pvec = [(0,) * sigma]
        acc = [0] * sigma
        for s, l in runs:
            acc[s] += l
            plen.append(plen[-1] + l)
            pvec.append(tuple(acc))
        self.prefix_len = plen
        self.prefix_parikh = pvec

    def run_block_len(self, i: int, j: int) -> int:
        """Decoded length of runs i..j (1-based, inclusive; empty when j < i)."""
        if j < i:
            return 0
        return self.prefix_len[j] - self.prefix_len[i - 1]

    def run_block_parikh(self, i: int, j: int) -> tuple:
        """Parikh vector (as a tuple) of runs i..j (1-based, inclusive)."""
        if j < i:
            return (0,) * self.sigma
        hi = self.prefix_parikh[j]
        lo = self.prefix_parikh[i - 1]
        return tuple(h - l for h, l in zip(hi, lo))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RleString)
            and self.runs == other.runs
            and self.sigma == other.sigma
        )

    def __hash__(self):
        return hash((self.runs, self.sigma))

    def __repr__(self):
        return f"RleString({list(self.runs)!r}, sigma={self.sigma})"


def rle_encode(u: PlainString) -> RleString:
    """Group maximal single-symbol runs; linear in the string length."""
    runs = []
    for s in u.symbols:
        if runs and runs[-1][0] == s:
            runs[-1][1] += 1
        else:
            runs.append([s, 1])
    return RleString([tuple(r) for r in runs], sigma=u.sigma)


def rle_decode(v: RleString) -> PlainString:
    symbols = []
    for s, l in v.runs:
        symbols.extend([s] * l)
    return PlainString(symbols, v.sigma)


def renumber_alphabet(s: RleString, t: RleString):
    """Remap both strings onto the dense alphabet {0..k-1}.

    Symbols are ranked by value, so the map is order-preserving and
    injective.  Returns (s', t', mapping) with mapping[old] = new.
    """
    distinct = sorted({sym for sym, _ in s.runs} | {sym for sym, _ in t.runs})
    mapping = {old: new for new, old in enumerate(distinct)}
    k = len(distinct)
    s2 = RleString([(mapping[sym], l) for sym, l in s.runs], sigma=k)
    t2 = RleString([(mapping[sym], l) for sym, l in t.runs], sigma=k)
    return s2, t2, mapping


@dataclass(frozen=True)
class LcafResult:
    """Answer to an LCAF query: length, witness vector, optional occurrences.

    occurrences, when present, is a pair of half-open (start, end) index
    ranges, one per input string, each decoding to a factor whose Parikh
    vector equals the witness.
    """

    length: int
    witness: ParikhVector
    occurrences: Optional[tuple] = field(default=None)

    def __post_init__(self):
        if self.witness.norm != self.length:
            raise ValueError("witness norm does not match reported length")

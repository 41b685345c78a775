"""Command line front end: solve, generate, verify and benchmark.

File formats:
  plain  one string per file; bytes are the symbols, the alphabet is the
         set of distinct bytes of both inputs ranked by byte value, and
         one trailing newline is ignored.  --sigma may widen the
         alphabet but never shrink it.
  rle    one run per line as "<symbol-token> <decimal-count>"; '#'
         starts a comment, blank lines are skipped.  Tokens are
         arbitrary non-space strings and are renumbered internally in
         lexicographic order.

Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import string
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple

from .bucketed import WordBudgetError, lcaf_bucketed, select_b
from .core import (
    InvalidInputError,
    PlainString,
    RleString,
    renumber_alphabet,
    rle_decode,
    rle_encode,
)
from .oracle import lcaf_oracle
from .rle_cubic import lcaf_rle_cubic
from .rle_geom import lcaf_rle_binary, lcaf_rle_geometric


class CliError(Exception):
    """Usage or input problem; reported on stderr with exit status 2."""


# name -> (input kind, solver); the verify command looks solvers up here
# so tests can swap in a deliberately broken one
SOLVERS = {
    "oracle": ("plain", lcaf_oracle),
    "bucketed": ("plain", lcaf_bucketed),
    "cubic": ("rle", lcaf_rle_cubic),
    "geometric": ("rle", lcaf_rle_geometric),
    "binary": ("rle", lcaf_rle_binary),
}


def read_plain_pair(path_s: str, path_t: str, sigma: Optional[int]):
    try:
        with open(path_s, "rb") as f:
            raw_s = f.read()
        with open(path_t, "rb") as f:
            raw_t = f.read()
    except OSError as e:
        raise CliError(str(e)) from None
    raw_s = raw_s[:-1] if raw_s.endswith(b"\n") else raw_s
    raw_t = raw_t[:-1] if raw_t.endswith(b"\n") else raw_t
    alphabet = sorted(set(raw_s) | set(raw_t))
    if sigma is not None:
        if sigma < len(alphabet):
            raise CliError(
                f"--sigma {sigma} is smaller than the {len(alphabet)} distinct symbols"
            )
        width = sigma
    else:
        width = len(alphabet)
    rank = {byte: k for k, byte in enumerate(alphabet)}
    s = PlainString([rank[b] for b in raw_s], width)
    t = PlainString([rank[b] for b in raw_t], width)
    return s, t


def parse_rle_file(path: str) -> List[Tuple[str, int]]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.readlines()
    except OSError as e:
        raise CliError(str(e)) from None
    runs = []
    for lineno, line in enumerate(lines, start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 2:
            raise CliError(f"{path}:{lineno}: expected '<token> <count>'")
        token, count_text = parts
        try:
            count = int(count_text)
        except ValueError:
            raise CliError(f"{path}:{lineno}: bad count {count_text!r}") from None
        if count <= 0:
            raise CliError(f"{path}:{lineno}: count must be positive")
        runs.append((token, count))
    return runs


def read_rle_pair(path_s: str, path_t: str):
    raw_s = parse_rle_file(path_s)
    raw_t = parse_rle_file(path_t)
    tokens = sorted({tok for tok, _ in raw_s} | {tok for tok, _ in raw_t})
    rank = {tok: k for k, tok in enumerate(tokens)}
    try:
        s = RleString([(rank[tok], c) for tok, c in raw_s], sigma=len(tokens))
        t = RleString([(rank[tok], c) for tok, c in raw_t], sigma=len(tokens))
    except InvalidInputError as e:
        raise CliError(str(e)) from None
    s, t, _ = renumber_alphabet(s, t)
    return s, t


def _report(result, algo: str, elapsed_ns: int, args) -> None:
    time_ns = 0 if args.fixed_time else elapsed_ns
    if args.json:
        doc = {"length": result.length, "parikh": list(result.witness.counts)}
        if args.witness:
            doc["occurrences"] = [list(occ) for occ in result.occurrences]
        doc["algorithm"] = algo
        doc["time_ns"] = time_ns
        print(json.dumps(doc))
    else:
        print(result.length)
        if args.witness:
            print("parikh:", " ".join(str(c) for c in result.witness.counts))
            occ_s, occ_t = result.occurrences
            print(f"occurrences: {occ_s[0]}:{occ_s[1]} {occ_t[0]}:{occ_t[1]}")


def cmd_lcaf(args) -> int:
    s, t = read_plain_pair(args.file_s, args.file_t, args.sigma)
    algo = args.algo
    if algo == "auto":
        algo = "bucketed" if select_b(s.sigma) is not None else "oracle"
    started = time.perf_counter_ns()
    if algo == "bucketed":
        try:
            result = lcaf_bucketed(s, t)
        except WordBudgetError:
            raise CliError("word budget exceeded; use oracle") from None
    else:
        result = lcaf_oracle(s, t)
    _report(result, algo, time.perf_counter_ns() - started, args)
    return 0


def cmd_rle_lcaf(args) -> int:
    s, t = read_rle_pair(args.file_s, args.file_t)
    algo = args.algo
    if algo == "auto":
        if s.sigma == 2:
            algo = "binary"
        elif s.sigma == 3:
            algo = "geometric"
        else:
            algo = "cubic"
    started = time.perf_counter_ns()
    try:
        if algo == "binary":
            result = lcaf_rle_binary(s, t)
        elif algo == "geometric":
            result = lcaf_rle_geometric(s, t)
        else:
            result = lcaf_rle_cubic(s, t)
    except (InvalidInputError, ValueError) as e:
        raise CliError(str(e)) from None
    _report(result, algo, time.perf_counter_ns() - started, args)
    return 0


def random_plain(rng: random.Random, n: int, sigma: int) -> PlainString:
    return PlainString([rng.randrange(sigma) for _ in range(n)], sigma)


def random_rle(rng: random.Random, m: int, sigma: int, max_run: int) -> RleString:
    runs = []
    prev = -1
    for _ in range(m):
        if prev < 0 or sigma == 1:
            sym = rng.randrange(sigma)
        else:
            sym = rng.randrange(sigma - 1)
            if sym >= prev:
                sym += 1
        runs.append((sym, rng.randint(1, max_run)))
        prev = sym
    return RleString(runs, sigma=sigma)


def cmd_gen(args) -> int:
    if args.sigma <= 0:
        raise CliError("--sigma must be positive")
    if args.sigma > 26:
        raise CliError("--sigma is capped at 26 (letter symbols)")
    if (args.n is None) == (args.m_runs is None):
        raise CliError("give exactly one of --n or --m-runs")
    rng = random.Random(args.seed)
    letters = string.ascii_lowercase
    if args.n is not None:
        u = random_plain(rng, args.n, args.sigma)
        text = "".join(letters[c] for c in u.symbols) + "\n"
    else:
        if args.m_runs > 1 and args.sigma < 2:
            raise CliError("several runs need at least two symbols")
        v = random_rle(rng, args.m_runs, args.sigma, args.max_run)
        text = "".join(f"{letters[sym]} {count}\n" for sym, count in v.runs)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    return 0


def _algo_sigmas(name: str, sigma_set) -> List[int]:
    if name == "binary":
        allowed = [s for s in sigma_set if s == 2]
    elif name == "geometric":
        allowed = [s for s in sigma_set if s <= 3]
    elif name == "bucketed":
        allowed = [s for s in sigma_set if select_b(s) is not None]
    else:
        allowed = list(sigma_set)
    return allowed


def _verify_trial(task):
    """One random instance for one solver; returns None or a mismatch report."""
    name, sigma, n_max, m_max, max_run, seed = task
    kind, solver = SOLVERS[name]
    rng = random.Random(seed)
    if kind == "plain":
        s = random_plain(rng, rng.randint(0, n_max), sigma)
        t = random_plain(rng, rng.randint(0, n_max), sigma)
        ps, pt = s, t
        shown = (list(s.symbols), list(t.symbols))
    else:
        s = random_rle(rng, rng.randint(1, m_max), sigma, max_run)
        t = random_rle(rng, rng.randint(1, m_max), sigma, max_run)
        ps, pt = rle_decode(s), rle_decode(t)
        shown = (list(s.runs), list(t.runs))
    expected = lcaf_oracle(ps, pt).length
    got = solver(s, t).length
    if got != expected:
        return (name, sigma, seed, shown, expected, got)
    return None


def cmd_verify(args) -> int:
    sigma_set = [int(x) for x in args.sigma_set.split(",") if x]
    names = [x for x in args.algos.split(",") if x]
    for name in names:
        if name not in SOLVERS:
            raise CliError(f"unknown solver {name!r}")
    tasks = []
    counter = 0
    for name in names:
        sigmas = _algo_sigmas(name, sigma_set)
        if not sigmas:
            continue
        for k in range(args.trials):
            sigma = sigmas[k % len(sigmas)]
            tasks.append(
                (name, sigma, args.n_max, args.m_max, args.max_run, args.seed + counter)
            )
            counter += 1
    if args.parallel:
        with ProcessPoolExecutor() as pool:
            outcomes = list(pool.map(_verify_trial, tasks, chunksize=16))
    else:
        outcomes = [_verify_trial(t) for t in tasks]
    for outcome in outcomes:
        if outcome is not None:
            name, sigma, seed, shown, expected, got = outcome
            print(f"mismatch: solver={name} sigma={sigma} seed={seed}", file=sys.stderr)
            print(f"  s={shown[0]}", file=sys.stderr)
            print(f"  t={shown[1]}", file=sys.stderr)
            print(f"  oracle={expected} {name}={got}", file=sys.stderr)
            return 1
    print(f"ok: {len(tasks)} trials, 0 mismatches")
    return 0


def _bench_task(task):
    name, size, sigma, seed, reps, max_run, fixed_time = task
    kind, solver = SOLVERS[name]
    rng = random.Random(seed)
    if kind == "plain":
        s = random_plain(rng, size, sigma)
        t = random_plain(rng, size, sigma)
        n, m = size, rle_encode(s).m
        a, b = s, t
    else:
        s = random_rle(rng, size, sigma, max_run)
        t = random_rle(rng, size, sigma, max_run)
        n, m = s.n, size
        a, b = s, t
    solver(a, b)  # warm-up, excluded from the rows
    rows = []
    answers = set()
    for rep in range(reps):
        started = time.perf_counter_ns()
        result = solver(a, b)
        elapsed = 0 if fixed_time else time.perf_counter_ns() - started
        answers.add(result.length)
        rows.append(f"{name},{n},{m},{sigma},{seed},{rep},{elapsed},{result.length}")
    assert len(answers) == 1
    return rows


def cmd_bench(args) -> int:
    if args.reps <= 0:
        raise CliError("--reps must be positive")
    if args.algo not in SOLVERS:
        raise CliError(f"unknown solver {args.algo!r}")
    sizes = [int(x) for x in args.sizes.split(",") if x]
    tasks = [
        (args.algo, size, args.sigma, args.seed, args.reps, args.max_run, args.fixed_time)
        for size in sizes
    ]
    if args.parallel:
        with ProcessPoolExecutor() as pool:
            groups = list(pool.map(_bench_task, tasks))
    else:
        groups = [_bench_task(t) for t in tasks]
    print("algo,n,m,sigma,seed,rep,time_ns,answer")
    for rows in groups:
        for row in rows:
            print(row)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcaf", description="longest common Abelian factor toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lcaf", help="solve on two plain string files")
    p.add_argument("file_s")
    p.add_argument("file_t")
    p.add_argument("--algo", choices=("oracle", "bucketed", "auto"), default="auto")
    p.add_argument("--sigma", type=int, default=None)
    p.add_argument("--format", choices=("plain",), default="plain")
    p.add_argument("--json", action="store_true")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--fixed-time", action="store_true", help="report time_ns as 0")
    p.set_defaults(func=cmd_lcaf)

    p = sub.add_parser("rle-lcaf", help="solve on two RLE files")
    p.add_argument("file_s")
    p.add_argument("file_t")
    p.add_argument(
        "--algo", choices=("cubic", "geometric", "binary", "auto"), default="auto"
    )
    p.add_argument("--json", action="store_true")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--fixed-time", action="store_true", help="report time_ns as 0")
    p.set_defaults(func=cmd_rle_lcaf)

    p = sub.add_parser("gen", help="generate a random input file")
    p.add_argument("--n", type=int, default=None, help="plain string length")
    p.add_argument("--m-runs", type=int, default=None, help="RLE run count")
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-run", type=int, default=6)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="cross-check solvers against the oracle")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--n-max", type=int, default=40)
    p.add_argument("--m-max", type=int, default=10)
    p.add_argument("--max-run", type=int, default=6)
    p.add_argument("--sigma-set", default="2,3,4")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algos", default="bucketed,cubic")
    p.add_argument("--parallel", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time a solver over a size sweep")
    p.add_argument("--algo", required=True)
    p.add_argument("--sizes", required=True, help="comma separated n (plain) or m (RLE)")
    p.add_argument("--sigma", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--max-run", type=int, default=6)
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--fixed-time", action="store_true", help="report time_ns as 0")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except InvalidInputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

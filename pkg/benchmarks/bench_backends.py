"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_backends.py --n 200000 --queries 50
"""

import argparse
import random
import time

import numpy as np

from msidx import _backend, suffix
from msidx.index import build_index
from msidx.types import validate_text


def repetitive(rng, n, alphabet=b"ACGT", copies=16, mutation=0.005):
    base = bytes(rng.choice(alphabet) for _ in range(n // copies + 1))
    out = bytearray()
    while len(out) < n:
        out += bytes(rng.choice(alphabet) if rng.random() < mutation else b for b in base)
    return bytes(out[:n])


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--queries", type=int, default=20)
    ap.add_argument("--m", type=int, default=1000, help="query length")
    ap.add_argument("--lce-pairs", type=int, default=20_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    s = repetitive(rng, args.n)
    t = validate_text(s)
    t0 = time.perf_counter()
    idx = build_index(t)
    print(f"n={t.n} r={idx.r} rules={idx.rule_count} build={time.perf_counter() - t0:.2f}s")

    queries = []
    for _ in range(args.queries):
        a = rng.randrange(t.n - args.m)
        q = bytearray(s[a:a + args.m])
        for k in range(len(q)):
            if rng.random() < 0.02:
                q[k] = rng.choice(b"ACGT")
        queries.append(bytes(q))
    pairs = [(rng.randrange(t.n), rng.randrange(t.n)) for _ in range(args.lce_pairs)]
    arr = np.frombuffer(t.data, dtype=np.uint8)
    sa = suffix.suffix_array(t.data)
    isa = np.empty_like(sa)
    isa[sa] = np.arange(len(sa))

    rows = []
    for name in _backend.available():
        core = _backend.load(name)
        kernel = idx.make_kernel(core)
        g = idx.slp.make_kernel(core)
        res = {"kasai": timed(lambda: core.kasai_lcp(arr, sa, isa), args.repeat),
               "lce": timed(lambda: [g.lce(i, j, t.n, True) for i, j in pairs], args.repeat)}
        for vname, v in (("ms_std", 0), ("ms_naive", 1), ("ms_heur", 2)):
            res[vname] = timed(lambda: [kernel.ms(q, v) for q in queries], args.repeat)
        rows.append((name, res))

    keys = list(rows[0][1])
    print(f"{'kernel':<10}" + "".join(f"{name:>12}" for name, _ in rows)
          + ("     speedup" if len(rows) > 1 else ""))
    for k in keys:
        line = f"{k:<10}" + "".join(f"{res[k] * 1e3:>10.1f}ms" for _, res in rows)
        if len(rows) > 1:
            line += f"{rows[1][1][k] / rows[0][1][k]:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()

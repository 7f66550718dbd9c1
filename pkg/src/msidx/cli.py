"""Command-line interface: build, ms, stream, locate, mems, stats, bench."""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import engine
from .engine import MsStats, extract_mems, ms_one_pass, ms_two_pass
from .grammar import DEFAULT_P, DEFAULT_W
from .index import FormatError, MsIndex, build_index
from .types import ValidationError, validate_pattern, validate_text

EXIT_OK, EXIT_INPUT, EXIT_FORMAT, EXIT_IO = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str) -> bytes:
    try:
        if path == "-":
            return sys.stdin.buffer.read()
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as e:
        raise CliError(EXIT_IO, f"cannot read {path}: {e.strerror}") from None


def _load(path: str) -> MsIndex:
    data = _read(path)
    try:
        return MsIndex.from_bytes(data)
    except FormatError as e:
        raise CliError(EXIT_FORMAT, f"{path}: {e}") from None


def _patterns(path: str) -> list[bytes]:
    lines = _read(path).splitlines()
    return [validate_pattern(line) for line in lines if line]


def _ms(index: MsIndex, pattern: bytes, variant: str, stats: MsStats | None = None):
    if variant == "twopass":
        return ms_two_pass(index, pattern, stats)
    return ms_one_pass(index, pattern, variant, stats)


# -- commands ---------------------------------------------------------------

def cmd_build(args) -> int:
    text = validate_text(_read(args.input), args.mode)
    index = build_index(text, args.w, args.p, reversed=args.reversed,
                        with_locate=args.with_locate, with_thresholds=args.with_thresholds)
    try:
        index.save(args.output)
    except OSError as e:
        raise CliError(EXIT_IO, f"cannot write {args.output}: {e.strerror}") from None
    print(f"n\t{index.n}\nr\t{index.r}\nrules\t{index.rule_count}")
    return EXIT_OK


def _format_block(k: int, ms, fmt: str) -> str:
    if fmt == "lens":
        return " ".join(str(e.len) for e in ms) + "\n"
    rows = [f">{k}\n"]
    rows += [f"{i}\t{'' if e.pos is None else e.pos}\t{e.len}\n" for i, e in enumerate(ms)]
    return "".join(rows)


def cmd_ms(args) -> int:
    index = _load(args.index)
    if args.variant == "twopass" and index.thresholds is None:
        raise CliError(EXIT_INPUT, "twopass needs an index built with --with-thresholds")
    patterns = _patterns(args.patterns)

    def work(item):
        k, pat = item
        return _format_block(k, _ms(index, pat, args.variant), args.format)

    if args.threads > 1:
        # each pattern gets its own cursor; results merged in input order
        with ThreadPoolExecutor(args.threads) as pool:
            blocks = list(pool.map(work, enumerate(patterns)))
    else:
        blocks = map(work, enumerate(patterns))
    out = sys.stdout
    for block in blocks:
        out.write(block)
    out.flush()
    return EXIT_OK


def cmd_stream(args) -> int:
    index = _load(args.index)
    if not index.reversed:
        raise CliError(EXIT_INPUT, "streaming needs an index built with --reversed")
    session = engine.stream_open(index, args.variant)
    out = sys.stdout
    fd = sys.stdin.fileno()
    while True:
        b = os.read(fd, 1)
        if not b:
            break
        c = b[0]
        if c in (0x0A, 0x0D):
            session.reset()
            continue
        e = session.push(c)
        out.write(f"{'' if e.pos is None else e.pos}\t{e.len}\n")
        out.flush()
    return EXIT_OK


def cmd_locate(args) -> int:
    index = _load(args.index)
    pattern = validate_pattern(args.pattern.encode())
    i, j = args.i, args.j if args.j is not None else len(pattern) - 1
    if not 0 <= i <= j < len(pattern):
        raise CliError(EXIT_INPUT, f"need 0 <= i <= j < {len(pattern)}")
    try:
        loc = index.locator()
    except ValueError as e:
        raise CliError(EXIT_INPUT, str(e)) from None
    ms = ms_one_pass(index, pattern)
    for p in sorted(loc.locate(ms, i, j)):
        print(p)
    return EXIT_OK


def cmd_mems(args) -> int:
    index = _load(args.index)
    for k, pat in enumerate(_patterns(args.patterns)):
        for i, pos, ln in extract_mems(ms_one_pass(index, pat), args.min_len):
            print(f"{k}\t{i}\t{pos}\t{ln}")
    return EXIT_OK


def cmd_stats(args) -> int:
    index = _load(args.index)
    print(f"n\t{index.n}")
    print(f"r\t{index.r}")
    print(f"rules\t{index.rule_count}")
    print(f"w\t{index.w}\np\t{index.p}")
    print(f"sigma\t{int((index.histogram > 0).sum())}")
    print(f"reversed\t{int(index.reversed)}")
    if args.with_query:
        stats = MsStats()
        lens = []
        for pat in _patterns(args.with_query):
            ms = ms_one_pass(index, pat, args.variant, stats)
            lens += [e.len for e in ms]
        print(f"lf_percent\t{100.0 * stats.lf_fraction:.2f}")
        print(f"mean_len\t{sum(lens) / len(lens) if lens else 0.0:.2f}")
        print(f"max_len\t{max(lens, default=0)}")
    return EXIT_OK


def cmd_bench(args) -> int:
    index = _load(args.index)
    patterns = _patterns(args.patterns)
    variants = args.variants.split(",")
    for v in variants:
        if v not in engine.VARIANTS and v != "twopass":
            raise CliError(EXIT_INPUT, f"unknown variant {v!r}")
    if "twopass" in variants and index.thresholds is None:
        raise CliError(EXIT_INPUT, "twopass needs an index built with --with-thresholds")
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["variant", "pattern_id", "micros", "lce_calls", "lce_skips", "lf_hits",
                "char_compares", "accesses"])
    for v in variants:
        for k, pat in enumerate(patterns):
            for _ in range(args.repeat):
                st = MsStats()
                t0 = time.perf_counter()
                _ms(index, pat, v, st)
                us = (time.perf_counter() - t0) * 1e6
                w.writerow([v, k, f"{us:.1f}", st.lce_calls, st.lce_skips, st.lf_hits,
                            st.char_compares, st.accesses])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="msidx", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="index a text file")
    b.add_argument("input")
    b.add_argument("-o", "--output", required=True)
    b.add_argument("--mode", choices=["raw", "fasta"], default="raw")
    b.add_argument("--w", type=int, default=DEFAULT_W, help="PFP window length")
    b.add_argument("--p", type=int, default=DEFAULT_P, help="PFP trigger modulus")
    b.add_argument("--reversed", action="store_true", help="index the reversed text (for stream)")
    b.add_argument("--with-locate", action="store_true")
    b.add_argument("--with-thresholds", action="store_true")
    b.set_defaults(func=cmd_build)

    m = sub.add_parser("ms", help="matching statistics, one pattern per line")
    m.add_argument("index")
    m.add_argument("patterns", help="file or '-'")
    m.add_argument("--variant", choices=["std", "naive", "heur", "twopass"], default="std")
    m.add_argument("--format", choices=["tsv", "lens"], default="tsv")
    m.add_argument("--threads", type=int, default=1)
    m.set_defaults(func=cmd_ms)

    s = sub.add_parser("stream", help="one entry per stdin byte; newline starts a new read")
    s.add_argument("index")
    s.add_argument("--variant", choices=["std", "naive", "heur"], default="std")
    s.set_defaults(func=cmd_stream)

    lo = sub.add_parser("locate", help="all occurrences of pattern[i..j]")
    lo.add_argument("index")
    lo.add_argument("pattern")
    lo.add_argument("i", type=int, nargs="?", default=0)
    lo.add_argument("j", type=int, nargs="?")
    lo.set_defaults(func=cmd_locate)

    me = sub.add_parser("mems", help="maximal exact matches")
    me.add_argument("index")
    me.add_argument("patterns")
    me.add_argument("--min-len", type=int, default=25)
    me.set_defaults(func=cmd_mems)

    st = sub.add_parser("stats", help="index summary, optionally with query statistics")
    st.add_argument("index")
    st.add_argument("--with-query", metavar="PATTERNS")
    st.add_argument("--variant", choices=["std", "naive", "heur"], default="std")
    st.set_defaults(func=cmd_stats)

    be = sub.add_parser("bench", help="per-variant timing and counters as CSV")
    be.add_argument("index")
    be.add_argument("patterns")
    be.add_argument("--variants", default="std,naive,heur")
    be.add_argument("--repeat", type=int, default=1)
    be.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"msidx: {e}", file=sys.stderr)
        return e.code
    except ValidationError as e:
        print(f"msidx: invalid input: {e}", file=sys.stderr)
        return EXIT_INPUT
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

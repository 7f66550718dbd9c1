"""The index bundle and its single-file serialization.

Layout (all integers little-endian 64-bit)::

    magic "MSIDX001" | flags | w p n r rule_count | histogram[256]
    | len + RlBwt | len + Slp | len + LocateSamples | len + ThresholdTable

Absent optional sections have length 0. Nothing may follow the last section.
"""

from __future__ import annotations

import io
import struct
from typing import BinaryIO, Optional

import numpy as np

from . import _backend, suffix
from .grammar import DEFAULT_P, DEFAULT_W, Slp, build_slp
from .locator import LocateSamples, Locator
from .rlbwt import RlBwt
from .thresholds import ThresholdTable, build_thresholds
from .types import Text

MAGIC = b"MSIDX001"
MAGIC_FAMILY = b"MSIDX"
F_REVERSED, F_LOCATE, F_THRESHOLDS = 1, 2, 4


class FormatError(ValueError):
    pass


class VersionMismatch(FormatError):
    pass


class MsIndex:
    def __init__(self, rlbwt: RlBwt, slp: Slp, *, w: int, p: int, histogram,
                 reversed: bool = False, locate: Optional[LocateSamples] = None,
                 thresholds: Optional[ThresholdTable] = None):
        if rlbwt.n != slp.n:
            raise FormatError(f"BWT length {rlbwt.n} != grammar length {slp.n}")
        self.rlbwt = rlbwt
        self.slp = slp
        self.w = w
        self.p = p
        self.histogram = np.asarray(histogram, dtype=np.int64)
        self.reversed = reversed
        self.locate_samples = locate
        self.thresholds = thresholds
        self._kernel = None

    @property
    def n(self) -> int:
        return self.rlbwt.n

    @property
    def r(self) -> int:
        return self.rlbwt.r

    @property
    def rule_count(self) -> int:
        return self.slp.rule_count

    @property
    def kernel(self):
        if self._kernel is None:
            self._kernel = self.make_kernel()
        return self._kernel

    def make_kernel(self, core=None):
        core = core or _backend.core
        rl = self.rlbwt
        return core.MsKernel(self.slp.make_kernel(core), rl.run_heads, rl.run_chars,
                             rl.run_lens, rl.sa_start, rl.sa_end, rl.C, rl.char_ptr,
                             rl.crun_run, rl.crun_cum)

    def locator(self) -> Locator:
        if self.locate_samples is None:
            raise ValueError("index was built without locate samples")
        return Locator(self.locate_samples, self.slp)

    # -- serialization -----------------------------------------------------

    def dump(self, fh: BinaryIO) -> None:
        flags = ((F_REVERSED if self.reversed else 0)
                 | (F_LOCATE if self.locate_samples is not None else 0)
                 | (F_THRESHOLDS if self.thresholds is not None else 0))
        fh.write(MAGIC)
        fh.write(struct.pack("<6Q", flags, self.w, self.p, self.n, self.r, self.rule_count))
        fh.write(self.histogram.astype("<i8").tobytes())
        rl = self.rlbwt
        sections = [
            _blob(rl.run_chars, rl.run_lens, rl.sa_start, rl.sa_end),
            _blob([self.slp.root], self.slp.left[256:], self.slp.right[256:]),
            b"",
            b"",
        ]
        if self.locate_samples is not None:
            ls = self.locate_samples
            sections[2] = _blob(ls.pred_points, ls.pred_targets, ls.succ_points, ls.succ_targets)
        if self.thresholds is not None:
            sections[3] = _blob(self.thresholds.positions)
        for s in sections:
            fh.write(struct.pack("<Q", len(s)))
            fh.write(s)

    def to_bytes(self) -> bytes:
        buf = io.BytesIO()
        self.dump(buf)
        return buf.getvalue()

    def save(self, path) -> None:
        with open(path, "wb") as fh:
            self.dump(fh)

    @classmethod
    def from_bytes(cls, data: bytes) -> MsIndex:
        if data[:5] != MAGIC_FAMILY:
            raise FormatError("not an index file")
        if data[:8] != MAGIC:
            raise VersionMismatch(f"unsupported index version {data[5:8]!r}")
        off = 8
        try:
            flags, w, p, n, r, rule_count = struct.unpack_from("<6Q", data, off)
            off += 48
            hist = np.frombuffer(data, dtype="<i8", count=256, offset=off).astype(np.int64)
            off += 256 * 8
            sections = []
            for _ in range(4):
                (size,) = struct.unpack_from("<Q", data, off)
                off += 8
                if off + size > len(data):
                    raise FormatError("truncated section")
                sections.append(data[off:off + size])
                off += size
        except struct.error as e:
            raise FormatError(f"truncated header: {e}") from None
        if off != len(data):
            raise FormatError(f"{len(data) - off} unexpected trailing bytes")
        if flags & ~(F_REVERSED | F_LOCATE | F_THRESHOLDS):
            raise FormatError(f"unknown flags {flags:#x}")
        chars, lens, s_start, s_end = _unblob(sections[0], 4)
        rl = RlBwt(chars.astype(np.uint8), lens, s_start, s_end)
        (root,), left, right = _unblob(sections[1], 3)
        term = np.full(256, -1, dtype=np.int64)
        slp = Slp(np.r_[term, left], np.r_[term, right], int(root))
        if rl.n != n or rl.r != r or slp.rule_count != rule_count:
            raise FormatError("header does not match section contents")
        locate = thresholds = None
        if flags & F_LOCATE:
            locate = LocateSamples(*_unblob(sections[2], 4))
        elif sections[2]:
            raise FormatError("locate section present but not flagged")
        if flags & F_THRESHOLDS:
            (pos,) = _unblob(sections[3], 1)
            thresholds = ThresholdTable(pos)
        elif sections[3]:
            raise FormatError("threshold section present but not flagged")
        return cls(rl, slp, w=int(w), p=int(p), histogram=hist,
                   reversed=bool(flags & F_REVERSED), locate=locate, thresholds=thresholds)

    @classmethod
    def load(cls, path) -> MsIndex:
        with open(path, "rb") as fh:
            return cls.from_bytes(fh.read())


def _blob(*arrays) -> bytes:
    out = bytearray()
    for a in arrays:
        a = np.asarray(a, dtype="<i8")
        out += struct.pack("<Q", len(a))
        out += a.tobytes()
    return bytes(out)


def _unblob(data: bytes, count: int) -> list[np.ndarray]:
    off = 0
    out = []
    try:
        for _ in range(count):
            (k,) = struct.unpack_from("<Q", data, off)
            off += 8
            if off + 8 * k > len(data):
                raise FormatError("truncated array")
            out.append(np.frombuffer(data, dtype="<i8", count=k, offset=off).astype(np.int64))
            off += 8 * k
    except struct.error as e:
        raise FormatError(f"truncated section: {e}") from None
    if off != len(data):
        raise FormatError("trailing bytes inside section")
    return out


def build_index(text: Text, w: int = DEFAULT_W, p: int = DEFAULT_P, *, reversed: bool = False,
                with_locate: bool = False, with_thresholds: bool = False) -> MsIndex:
    if reversed:
        text = text.reversed()
    ss = suffix.build(text)
    rl = RlBwt.from_bwt(ss.bwt, ss.sa)
    slp = build_slp(text, w, p)
    hist = np.bincount(np.frombuffer(text.data, dtype=np.uint8), minlength=256)
    return MsIndex(
        rl, slp, w=w, p=p, histogram=hist, reversed=reversed,
        locate=LocateSamples.from_rlbwt(rl) if with_locate else None,
        thresholds=build_thresholds(ss, rl) if with_thresholds else None,
    )

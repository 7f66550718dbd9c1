"""Texts, patterns and matching-statistics entries."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

SENTINEL = 0x00
SEPARATOR = 0x01


class ValidationError(ValueError):
    """Input bytes do not form a valid text or pattern."""


class EmptyInput(ValidationError):
    pass


class ForbiddenByte(ValidationError):
    def __init__(self, position: int, value: int):
        super().__init__(f"forbidden byte 0x{value:02x} at offset {position}")
        self.position = position
        self.value = value


class MalformedFasta(ValidationError):
    pass


@dataclass(frozen=True)
class Text:
    """A sentinel-terminated byte sequence; ``data[-1] == 0``."""

    data: bytes

    def __post_init__(self):
        d = self.data
        if len(d) < 2:
            raise EmptyInput("text needs at least one character plus the sentinel")
        if d[-1] != SENTINEL or d.count(SENTINEL) != 1:
            raise ValidationError("text must end with exactly one 0x00 sentinel")

    @property
    def n(self) -> int:
        return len(self.data)

    @property
    def alphabet_size(self) -> int:
        return len(set(self.data))

    def body(self) -> bytes:
        """The text without its sentinel."""
        return self.data[:-1]

    def reversed(self) -> Text:
        return Text(self.data[-2::-1] + bytes([SENTINEL]))


class MsEntry(NamedTuple):
    """One matching-statistics pair. ``pos`` is None iff ``len == 0``."""

    pos: Optional[int]
    len: int


def _check_forbidden(raw: bytes, forbidden: bytes, base: int = 0) -> None:
    for b in forbidden:
        k = raw.find(bytes([b]))
        if k >= 0:
            raise ForbiddenByte(base + k, b)


def _parse_fasta(raw: bytes) -> bytes:
    records: list[bytes] = []
    current: Optional[list[bytes]] = None
    offset = 0
    for line in raw.splitlines(keepends=True):
        stripped = line.rstrip(b"\r\n")
        if stripped.startswith(b">"):
            if current is not None:
                records.append(b"".join(current))
            current = []
        elif stripped:
            if current is None:
                raise MalformedFasta("sequence data before the first '>' header")
            _check_forbidden(stripped, b"\x00\x01", offset)
            current.append(stripped)
        offset += len(line)
    if current is None:
        raise MalformedFasta("no '>' header found")
    records.append(b"".join(current))
    if any(not r for r in records):
        raise MalformedFasta("empty FASTA record")
    return bytes([SEPARATOR]).join(records)


def validate_text(raw: bytes, mode: str = "raw") -> Text:
    """Turn raw input bytes into a :class:`Text`.

    In ``fasta`` mode headers and line breaks are dropped and records are
    joined with 0x01. Both modes append the 0x00 sentinel.
    """
    if not raw:
        raise EmptyInput("empty input")
    if mode == "raw":
        _check_forbidden(raw, b"\x00\x01")
        body = raw
    elif mode == "fasta":
        body = _parse_fasta(raw)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return Text(bytes(body) + bytes([SENTINEL]))


def validate_pattern(raw: bytes) -> bytes:
    if not raw:
        raise EmptyInput("empty pattern")
    _check_forbidden(raw, b"\x00\x01")
    return bytes(raw)

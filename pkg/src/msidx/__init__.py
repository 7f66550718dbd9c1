"""Run-length BWT + grammar index with one-pass streamed matching statistics."""

from ._backend import NAME as BACKEND
from .engine import (MsStats, StreamSession, extract_mems, ms_one_pass, ms_restart,
                     ms_two_pass, stream_open, stream_push)
from .grammar import Slp, build_slp, pfp_parse, repair_compress
from .index import FormatError, MsIndex, VersionMismatch, build_index
from .locator import LocateSamples, Locator
from .rlbwt import RlBwt
from .types import MsEntry, Text, ValidationError, validate_pattern, validate_text

__all__ = [
    "BACKEND", "FormatError", "LocateSamples", "Locator", "MsEntry", "MsIndex", "MsStats",
    "RlBwt", "Slp", "StreamSession", "Text", "ValidationError", "VersionMismatch",
    "build_index", "build_slp", "extract_mems", "ms_one_pass", "ms_restart", "ms_two_pass",
    "pfp_parse", "repair_compress", "stream_open", "stream_push", "validate_pattern",
    "validate_text",
]

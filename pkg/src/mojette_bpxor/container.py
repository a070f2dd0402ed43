"""``.ambx`` projection containers: one projection per file.

Layout (little-endian)::

    magic        4s   b"AMBX"
    version      u8   1
    construction u8   0 = C33, 1 = C35, 2 = custom
    n, k, b      u32 x3
    q_e          u16  (0 for C33)
    width        u16  symbol width in bytes
    payload_len  u64  original byte count
    index        u32  projection ordinal
    p, q         i32 x2
    bin_count    u32
    header_crc   u32  CRC-32 of all preceding header bytes
    body         bin_count * width bytes
"""
from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass

import numpy as np

from .encoder import Projection, projection_length
from .errors import CorruptionError, StructuralError
from .symbols import Construction, Direction

MAGIC = b"AMBX"
VERSION = 1
_FIELDS = struct.Struct("<4sBBIIIHHQIiiI")
_CRC = struct.Struct("<I")
HEADER_SIZE = _FIELDS.size + _CRC.size


class UnsupportedVersion(CorruptionError):
    pass


@dataclass(frozen=True)
class ContainerHeader:
    construction: Construction
    n: int
    k: int
    b: int
    q_e: int
    width: int
    payload_len: int
    index: int
    p: int
    q: int
    bin_count: int
    version: int = VERSION

    @property
    def direction(self) -> Direction:
        return Direction(self.p, self.q)

    def code_key(self) -> tuple:
        """Fields shared by every container of one code instance."""
        return (self.version, self.construction, self.n, self.k, self.b, self.q_e, self.width, self.payload_len)

    def pack(self) -> bytes:
        raw = _FIELDS.pack(
            MAGIC, self.version, int(self.construction), self.n, self.k, self.b,
            self.q_e, self.width, self.payload_len, self.index, self.p, self.q, self.bin_count,
        )
        return raw + _CRC.pack(zlib.crc32(raw))


def serialize(header: ContainerHeader, projection: Projection) -> bytes:
    if projection.bins.shape != (header.bin_count, header.width):
        raise StructuralError(f"projection shape {projection.bins.shape} does not match header")
    return header.pack() + np.ascontiguousarray(projection.bins, dtype=np.uint8).tobytes()


def body_crc(data: bytes) -> int:
    return zlib.crc32(data[HEADER_SIZE:])


def parse(data: bytes, expected_body_crc: int | None = None) -> tuple[ContainerHeader, Projection]:
    """Parse one container, raising :class:`CorruptionError` on any inconsistency."""
    if len(data) < HEADER_SIZE:
        raise CorruptionError(f"container too short ({len(data)} bytes)")
    fields = _FIELDS.unpack_from(data)
    (stored_crc,) = _CRC.unpack_from(data, _FIELDS.size)
    if fields[0] != MAGIC:
        raise CorruptionError("bad magic")
    if zlib.crc32(data[: _FIELDS.size]) != stored_crc:
        raise CorruptionError("header CRC mismatch")
    _, version, construction, n, k, b, q_e, width, payload_len, index, p, q, bin_count = fields
    if version != VERSION:
        raise UnsupportedVersion(f"container version {version} is not supported (expected {VERSION})")
    try:
        header = ContainerHeader(
            Construction(construction), n, k, b, q_e, width, payload_len, index, p, q, bin_count
        )
        direction = header.direction
    except ValueError as exc:
        raise CorruptionError(f"invalid header field: {exc}") from None
    if min(k, b, width) < 1 or index >= n:
        raise CorruptionError("header describes an impossible code")
    if bin_count != projection_length(direction, b, k):
        raise CorruptionError(f"bin_count {bin_count} does not match direction {direction} on a {b}x{k} grid")
    if len(data) != HEADER_SIZE + bin_count * width:
        raise CorruptionError(f"body is {len(data) - HEADER_SIZE} bytes, expected {bin_count * width}")
    if expected_body_crc is not None and body_crc(data) != expected_body_crc:
        raise CorruptionError(f"body CRC mismatch for projection {index}")
    bins = np.frombuffer(data, dtype=np.uint8, offset=HEADER_SIZE).reshape(bin_count, width).copy()
    return header, Projection(index, direction, bins)

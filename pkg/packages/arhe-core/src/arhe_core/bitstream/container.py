"""
The `.arhe` container: a fixed 21-byte big-endian header followed by
`frame_count` frames of `tile_cols * tile_rows` tile records in raster order.
"""

import struct
from dataclasses import dataclass, field
from typing import List

from arhe_core.constants import (
    FORMAT_VERSION,
    HEADER_SIZE,
    MACROBLOCK,
    MAGIC,
    MAX_QP,
)
from arhe_core.errors import (
    BadMagic,
    DimensionMismatch,
    InvalidHeader,
    MalformedPayload,
    TruncatedStream,
    UnsupportedVersion,
)

_HEADER = struct.Struct(">4sBHHBBBBII")
_TILE = struct.Struct(">BI")

CLASS_IDS = (0, 1, 2, 3)


@dataclass(frozen=True)
class ContainerHeader:
    width: int
    height: int
    fps: int
    qp: int
    tile_cols: int
    tile_rows: int
    frame_count: int
    salt: int
    version: int = FORMAT_VERSION

    @property
    def tile_count(self) -> int:
        return self.tile_cols * self.tile_rows

    def validate(self) -> None:
        """Check every header invariant, raising InvalidHeader on the first violation."""
        if self.width <= 0 or self.width % MACROBLOCK or self.width > 0xFFFF:
            raise InvalidHeader(
                f"width {self.width} must be a positive multiple of {MACROBLOCK}"
            )
        if self.height <= 0 or self.height % MACROBLOCK or self.height > 0xFFFF:
            raise InvalidHeader(
                f"height {self.height} must be a positive multiple of {MACROBLOCK}"
            )
        if not 0 <= self.qp <= MAX_QP:
            raise InvalidHeader(f"qp {self.qp} outside [0, {MAX_QP}]")
        if not 0 <= self.fps <= 0xFF:
            raise InvalidHeader(f"fps {self.fps} does not fit in 8 bits")
        if not 1 <= self.tile_cols <= self.width // MACROBLOCK:
            raise InvalidHeader(
                f"tile_cols {self.tile_cols} must be in [1, {self.width // MACROBLOCK}]"
            )
        if not 1 <= self.tile_rows <= self.height // MACROBLOCK:
            raise InvalidHeader(
                f"tile_rows {self.tile_rows} must be in [1, {self.height // MACROBLOCK}]"
            )
        if not 0 <= self.frame_count <= 0xFFFFFFFF:
            raise InvalidHeader(f"frame_count {self.frame_count} does not fit in 32 bits")
        if not 0 <= self.salt <= 0xFFFFFFFF:
            raise InvalidHeader(f"salt {self.salt} does not fit in 32 bits")


@dataclass(frozen=True)
class TileRecord:
    class_id: int
    payload_bit_length: int
    payload: bytes = b""

    def validate(self) -> None:
        if self.class_id not in CLASS_IDS:
            raise MalformedPayload(f"tile class id {self.class_id} not in {CLASS_IDS}")
        if len(self.payload) != (self.payload_bit_length + 7) // 8:
            raise DimensionMismatch(
                f"payload holds {len(self.payload)} bytes for {self.payload_bit_length} bits"
            )


@dataclass
class Container:
    header: ContainerHeader
    frames: List[List[TileRecord]] = field(default_factory=list)

    def to_bytes(self) -> bytes:
        return serialize_container(self.header, self.frames)

    @classmethod
    def from_bytes(cls, data: bytes) -> "Container":
        return parse_container(data)


def serialize_container(
    header: ContainerHeader, frames: List[List[TileRecord]]
) -> bytes:
    header.validate()
    if len(frames) != header.frame_count:
        raise DimensionMismatch(
            f"header declares {header.frame_count} frames, got {len(frames)}"
        )
    out = bytearray(
        _HEADER.pack(
            MAGIC,
            header.version,
            header.width,
            header.height,
            header.fps,
            header.qp,
            header.tile_cols,
            header.tile_rows,
            header.frame_count,
            header.salt,
        )
    )
    for index, records in enumerate(frames):
        if len(records) != header.tile_count:
            raise DimensionMismatch(
                f"frame {index} has {len(records)} tiles, header declares {header.tile_count}"
            )
        for record in records:
            record.validate()
            out += _TILE.pack(record.class_id, record.payload_bit_length)
            out += record.payload
    return bytes(out)


def parse_container(data: bytes) -> Container:
    view = memoryview(data)
    if bytes(view[:4]) != MAGIC:
        raise BadMagic(f"expected {MAGIC!r}, got {bytes(view[:4])!r}")
    if len(view) < HEADER_SIZE:
        raise TruncatedStream(f"container header needs {HEADER_SIZE} bytes, got {len(view)}")
    (
        _,
        version,
        width,
        height,
        fps,
        qp,
        tile_cols,
        tile_rows,
        frame_count,
        salt,
    ) = _HEADER.unpack_from(view, 0)
    if version != FORMAT_VERSION:
        raise UnsupportedVersion(f"container version {version} (supported: {FORMAT_VERSION})")
    header = ContainerHeader(
        width=width,
        height=height,
        fps=fps,
        qp=qp,
        tile_cols=tile_cols,
        tile_rows=tile_rows,
        frame_count=frame_count,
        salt=salt,
        version=version,
    )
    header.validate()

    offset = HEADER_SIZE
    frames: List[List[TileRecord]] = []
    for frame_index in range(frame_count):
        records: List[TileRecord] = []
        for tile_index in range(header.tile_count):
            if offset + _TILE.size > len(view):
                raise TruncatedStream(
                    f"frame {frame_index} tile {tile_index}: record header cut at byte {offset}"
                )
            class_id, bit_length = _TILE.unpack_from(view, offset)
            offset += _TILE.size
            size = (bit_length + 7) // 8
            if offset + size > len(view):
                raise TruncatedStream(
                    f"frame {frame_index} tile {tile_index}: payload needs {size} bytes, {len(view) - offset} left"
                )
            record = TileRecord(class_id, bit_length, bytes(view[offset : offset + size]))
            record.validate()
            records.append(record)
            offset += size
        frames.append(records)
    if offset != len(view):
        raise MalformedPayload(f"{len(view) - offset} trailing bytes after the last frame")
    return Container(header=header, frames=frames)

import os
from dataclasses import dataclass
from typing import List, Sequence, Union

import numpy as np

from arhe_core.bitstream import ContainerHeader, TileRecord
from arhe_core.errors import DimensionMismatch, TruncatedInput
from .grid import TileGrid, make_tile_grid
from .quant import QuantParams
from .tile import Plane, TilePlanes, decode_tile, encode_tile


@dataclass(frozen=True)
class FrameYUV:
    """One planar 4:2:0 8-bit frame."""

    y: Plane
    u: Plane
    v: Plane

    def __post_init__(self) -> None:
        height, width = self.y.shape
        for name, plane in (("u", self.u), ("v", self.v)):
            if plane.shape != (height // 2, width // 2):
                raise DimensionMismatch(
                    f"{name} plane is {plane.shape}, expected {(height // 2, width // 2)}"
                )

    @property
    def width(self) -> int:
        return int(self.y.shape[1])

    @property
    def height(self) -> int:
        return int(self.y.shape[0])

    @classmethod
    def flat(cls, width: int, height: int, value: int = 128) -> "FrameYUV":
        return cls(
            np.full((height, width), value, dtype=np.uint8),
            np.full((height // 2, width // 2), value, dtype=np.uint8),
            np.full((height // 2, width // 2), value, dtype=np.uint8),
        )

    def to_bytes(self) -> bytes:
        return self.y.tobytes() + self.u.tobytes() + self.v.tobytes()

    @classmethod
    def from_bytes(cls, data: bytes, width: int, height: int) -> "FrameYUV":
        luma = width * height
        chroma = luma // 4
        if len(data) != luma + 2 * chroma:
            raise DimensionMismatch(
                f"{len(data)} bytes do not hold a {width}x{height} 4:2:0 frame"
            )
        raw = np.frombuffer(data, dtype=np.uint8)
        return cls(
            raw[:luma].reshape(height, width).copy(),
            raw[luma : luma + chroma].reshape(height // 2, width // 2).copy(),
            raw[luma + chroma :].reshape(height // 2, width // 2).copy(),
        )


def frame_size(width: int, height: int) -> int:
    return width * height * 3 // 2


def tile_planes(frame: FrameYUV, grid: TileGrid, index: int) -> TilePlanes:
    x0, y0, x1, y1 = grid.tile_rect(index)
    return TilePlanes(
        frame.y[y0:y1, x0:x1],
        frame.u[y0 // 2 : y1 // 2, x0 // 2 : x1 // 2],
        frame.v[y0 // 2 : y1 // 2, x0 // 2 : x1 // 2],
    )


def encode_tile_at(
    frame: FrameYUV, grid: TileGrid, index: int, q: QuantParams, class_id: int
) -> TileRecord:
    (payload, bit_length), _ = encode_tile(tile_planes(frame, grid, index), q)
    return TileRecord(class_id, bit_length, payload)


def decode_tile_at(
    record: TileRecord, grid: TileGrid, index: int, q: QuantParams
) -> TilePlanes:
    x0, y0, x1, y1 = grid.tile_rect(index)
    return decode_tile(record.payload, record.payload_bit_length, x1 - x0, y1 - y0, q)


def paste_tiles(grid: TileGrid, tiles: Sequence[TilePlanes]) -> FrameYUV:
    y = np.empty((grid.height, grid.width), dtype=np.uint8)
    u = np.empty((grid.height // 2, grid.width // 2), dtype=np.uint8)
    v = np.empty_like(u)
    for index, planes in enumerate(tiles):
        x0, y0, x1, y1 = grid.tile_rect(index)
        y[y0:y1, x0:x1] = planes.y
        u[y0 // 2 : y1 // 2, x0 // 2 : x1 // 2] = planes.u
        v[y0 // 2 : y1 // 2, x0 // 2 : x1 // 2] = planes.v
    return FrameYUV(y, u, v)


def encode_frame(
    frame: FrameYUV, grid: TileGrid, q: QuantParams, tile_classes: Sequence[int]
) -> List[TileRecord]:
    if (frame.width, frame.height) != (grid.width, grid.height):
        raise DimensionMismatch(
            f"frame {frame.width}x{frame.height} does not match grid {grid.width}x{grid.height}"
        )
    if len(tile_classes) != grid.tile_count:
        raise DimensionMismatch(
            f"{len(tile_classes)} tile labels for {grid.tile_count} tiles"
        )
    return [
        encode_tile_at(frame, grid, index, q, tile_classes[index])
        for index in range(grid.tile_count)
    ]


def grid_for(header: ContainerHeader) -> TileGrid:
    return make_tile_grid(header.width, header.height, header.tile_cols, header.tile_rows)


def decode_frame(records: Sequence[TileRecord], header: ContainerHeader) -> FrameYUV:
    grid = grid_for(header)
    if len(records) != grid.tile_count:
        raise DimensionMismatch(f"{len(records)} tile records for {grid.tile_count} tiles")
    q = QuantParams(header.qp)
    return paste_tiles(
        grid, [decode_tile_at(record, grid, i, q) for i, record in enumerate(records)]
    )


def read_yuv(
    path: Union[str, os.PathLike[str]], width: int, height: int, frames: int
) -> List[FrameYUV]:
    """
    Read `frames` concatenated 4:2:0 frames from a raw YUV file.

    Raises:
        TruncatedInput: The file holds fewer than `frames` complete frames.
    """
    size = frame_size(width, height)
    with open(path, "rb") as f:
        data = f.read(size * frames)
    if len(data) < size * frames:
        raise TruncatedInput(
            f"{path} holds {len(data) // size} complete {width}x{height} frames, {frames} requested"
        )
    return [
        FrameYUV.from_bytes(data[i * size : (i + 1) * size], width, height)
        for i in range(frames)
    ]


def write_yuv(path: Union[str, os.PathLike[str]], frames: Sequence[FrameYUV]) -> None:
    with open(path, "wb") as w:
        for frame in frames:
            w.write(frame.to_bytes())

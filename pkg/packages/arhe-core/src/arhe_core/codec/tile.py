"""
Per-tile coding.

Every plane of a tile is split into 8x8 blocks, coded in raster order, luma
first, then U, then V. Each block row starts from a flat predictor of 128 and a
DC baseline of 0; later blocks predict from the rounded mean of the previous
block's reconstruction and code their DC level differentially. Block syntax:

    se(dc_delta) ue(nonzero_ac_count) { ue(zero_run) se(level) }*

Nothing crosses a tile boundary, so every tile decodes on its own.
"""

from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Tuple

import numpy as np
import numpy.typing as npt

from arhe_core.bitstream import BitCursor, read_se, read_ue, write_se, write_ue
from arhe_core.constants import BLOCK, NEUTRAL_SAMPLE
from arhe_core.errors import DimensionMismatch, MalformedPayload
from .quant import QuantParams, dequantize, quantize
from .transform import fwht8_forward, fwht8_inverse, inverse_zigzag, zigzag_scan

Plane = npt.NDArray[np.uint8]
AC_COUNT = BLOCK * BLOCK - 1


@dataclass(frozen=True)
class CoeffBlock:
    """Quantized levels of one 8x8 block: differential DC plus 63 AC levels in zigzag order."""

    dc_delta: int
    ac: Tuple[int, ...]

    @property
    def nonzero_ac(self) -> int:
        return sum(1 for level in self.ac if level)


class TilePlanes(NamedTuple):
    y: Plane
    u: Plane
    v: Plane


class TilePayload(NamedTuple):
    payload: bytes
    bit_length: int


def block_count(width: int, height: int) -> int:
    """Coded blocks in a tile with the given luma size (4:2:0)."""
    luma = (width // BLOCK) * (height // BLOCK)
    return luma + luma // 2


def _reconstruct(levels: npt.NDArray[np.int64], predictor: int, q: QuantParams) -> Plane:
    residual = fwht8_inverse(inverse_zigzag(dequantize(levels, q)))
    return np.clip(residual + predictor, 0, 255).astype(np.uint8)


def _block_origins(plane_shape: Tuple[int, int]) -> Iterator[Tuple[int, int]]:
    height, width = plane_shape
    for by in range(0, height, BLOCK):
        for bx in range(0, width, BLOCK):
            yield by, bx


def _encode_plane(plane: Plane, q: QuantParams, blocks: List[CoeffBlock]) -> Plane:
    recon = np.empty_like(plane)
    predictor, prev_dc = NEUTRAL_SAMPLE, 0
    for by, bx in _block_origins(plane.shape):
        if bx == 0:
            predictor, prev_dc = NEUTRAL_SAMPLE, 0
        residual = plane[by : by + BLOCK, bx : bx + BLOCK].astype(np.int64) - predictor
        levels = zigzag_scan(quantize(fwht8_forward(residual), q))
        dc = int(levels[0])
        blocks.append(CoeffBlock(dc - prev_dc, tuple(int(v) for v in levels[1:])))
        prev_dc = dc
        block = _reconstruct(levels, predictor, q)
        recon[by : by + BLOCK, bx : bx + BLOCK] = block
        predictor = (int(block.sum(dtype=np.int64)) + 32) // 64
    return recon


def _decode_plane(
    shape: Tuple[int, int], q: QuantParams, blocks: Iterator[CoeffBlock]
) -> Plane:
    recon = np.empty(shape, dtype=np.uint8)
    predictor, prev_dc = NEUTRAL_SAMPLE, 0
    for by, bx in _block_origins(shape):
        if bx == 0:
            predictor, prev_dc = NEUTRAL_SAMPLE, 0
        coded = next(blocks)
        dc = prev_dc + coded.dc_delta
        prev_dc = dc
        levels = np.array((dc, *coded.ac), dtype=np.int64)
        block = _reconstruct(levels, predictor, q)
        recon[by : by + BLOCK, bx : bx + BLOCK] = block
        predictor = (int(block.sum(dtype=np.int64)) + 32) // 64
    return recon


def _check_planes(planes: TilePlanes) -> None:
    height, width = planes.y.shape
    if height % (2 * BLOCK) or width % (2 * BLOCK):
        raise DimensionMismatch(f"tile {width}x{height} is not a multiple of 16")
    for name, chroma in (("u", planes.u), ("v", planes.v)):
        if chroma.shape != (height // 2, width // 2):
            raise DimensionMismatch(
                f"{name} plane {chroma.shape} does not match luma {planes.y.shape} for 4:2:0"
            )


def write_tile_payload(blocks: List[CoeffBlock]) -> TilePayload:
    cursor = BitCursor()
    for block in blocks:
        write_se(cursor, block.dc_delta)
        write_ue(cursor, block.nonzero_ac)
        run = 0
        for level in block.ac:
            if level == 0:
                run += 1
                continue
            write_ue(cursor, run)
            write_se(cursor, level)
            run = 0
    return TilePayload(cursor.to_bytes(), cursor.limit)


def parse_tile_payload(
    payload: bytes, bit_length: int, width: int, height: int
) -> List[CoeffBlock]:
    """
    Entropy-decode a tile payload into its coefficient blocks.

    Args:
        payload (bytes): Tile payload, zero-padded to a byte boundary.
        bit_length (int): Number of meaningful bits in the payload.
        width (int): Tile luma width in pixels.
        height (int): Tile luma height in pixels.

    Raises:
        TruncatedStream: The payload ends inside a block.
        MalformedPayload: A block addresses coefficients past position 63, codes a zero AC level, or bits are left over.
    """
    cursor = BitCursor(payload, bit_length)
    blocks: List[CoeffBlock] = []
    for index in range(block_count(width, height)):
        dc_delta = read_se(cursor)
        count = read_ue(cursor)
        if count > AC_COUNT:
            raise MalformedPayload(f"block {index} declares {count} nonzero AC levels")
        ac = [0] * AC_COUNT
        position = 0
        for _ in range(count):
            position += read_ue(cursor)
            if position >= AC_COUNT:
                raise MalformedPayload(f"block {index} runs past coefficient 63")
            level = read_se(cursor)
            if level == 0:
                raise MalformedPayload(f"block {index} codes a zero level as nonzero")
            ac[position] = level
            position += 1
        blocks.append(CoeffBlock(dc_delta, tuple(ac)))
    if cursor.remaining:
        raise MalformedPayload(f"{cursor.remaining} bits left after the last block")
    return blocks


def encode_tile_blocks(
    planes: TilePlanes, q: QuantParams
) -> Tuple[List[CoeffBlock], TilePlanes]:
    _check_planes(planes)
    blocks: List[CoeffBlock] = []
    recon = TilePlanes(*(_encode_plane(plane, q, blocks) for plane in planes))
    return blocks, recon


def encode_tile(planes: TilePlanes, q: QuantParams) -> Tuple[TilePayload, TilePlanes]:
    """
    Encode one tile.

    Returns:
        The entropy-coded payload and the reconstruction a decoder will produce from it.
    """
    blocks, recon = encode_tile_blocks(planes, q)
    return write_tile_payload(blocks), recon


def reconstruct_tile(
    blocks: List[CoeffBlock], width: int, height: int, q: QuantParams
) -> TilePlanes:
    if len(blocks) != block_count(width, height):
        raise DimensionMismatch(
            f"{len(blocks)} blocks for a {width}x{height} tile (expected {block_count(width, height)})"
        )
    stream = iter(blocks)
    return TilePlanes(
        _decode_plane((height, width), q, stream),
        _decode_plane((height // 2, width // 2), q, stream),
        _decode_plane((height // 2, width // 2), q, stream),
    )


def decode_tile(
    payload: bytes, bit_length: int, width: int, height: int, q: QuantParams
) -> TilePlanes:
    return reconstruct_tile(
        parse_tile_payload(payload, bit_length, width, height), width, height, q
    )

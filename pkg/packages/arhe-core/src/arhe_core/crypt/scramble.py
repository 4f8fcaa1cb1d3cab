"""
Format-compliant scrambling of quantized syntax elements.

Elements are visited in coding order (blocks in tile order, DC first, then the
nonzero AC levels in zigzag order) and each takes the next two keystream bytes
as a big-endian 16-bit mask:

    DC:  cn' = cn ^ k16
    AC:  cn' = ((cn - 1) ^ k16) + 1      (cn >= 1, so the level stays nonzero)

where cn is the exp-Golomb code number of the signed value. Runs and nonzero
counts are never touched, so any keystream yields a decodable tile, and
applying the same keystream twice restores the input.
"""

import struct
from typing import List, Sequence

from arhe_core.bitstream import BitCursor, code_to_se, se_to_code
from arhe_core.codec import AC_COUNT, CoeffBlock, TilePayload
from arhe_core.constants import SCRAMBLE_MASK_BYTES
from arhe_core.errors import KeystreamExhausted, MalformedPayload

_MASK = struct.Struct(">H")


def element_count(blocks: Sequence[CoeffBlock]) -> int:
    """Encryptable elements: one DC per block plus every nonzero AC level."""
    return sum(1 + block.nonzero_ac for block in blocks)


def keystream_budget(blocks: int) -> int:
    """Keystream bytes that cover any tile of `blocks` blocks: every coefficient nonzero."""
    return SCRAMBLE_MASK_BYTES * (AC_COUNT + 1) * blocks


def scramble_tile(blocks: Sequence[CoeffBlock], ks: bytes) -> List[CoeffBlock]:
    needed = SCRAMBLE_MASK_BYTES * element_count(blocks)
    if len(ks) < needed:
        raise KeystreamExhausted(f"{len(ks)} keystream bytes for {needed} needed")
    offset = 0
    out: List[CoeffBlock] = []
    for block in blocks:
        mask = int.from_bytes(ks[offset : offset + SCRAMBLE_MASK_BYTES], "big")
        offset += SCRAMBLE_MASK_BYTES
        dc_delta = code_to_se(se_to_code(block.dc_delta) ^ mask)
        ac = list(block.ac)
        for position, level in enumerate(ac):
            if not level:
                continue
            mask = int.from_bytes(ks[offset : offset + SCRAMBLE_MASK_BYTES], "big")
            offset += SCRAMBLE_MASK_BYTES
            ac[position] = code_to_se(((se_to_code(level) - 1) ^ mask) + 1)
        out.append(CoeffBlock(dc_delta, tuple(ac)))
    return out


def _mask_at(ks: bytes, offset: int) -> int:
    if offset + SCRAMBLE_MASK_BYTES > len(ks):
        raise KeystreamExhausted(
            f"{len(ks)} keystream bytes, element at byte {offset} needs {SCRAMBLE_MASK_BYTES} more"
        )
    return int(_MASK.unpack_from(ks, offset)[0])


def scramble_payload(
    payload: bytes, bit_length: int, blocks: int, ks: bytes
) -> TilePayload:
    """
    Scramble an entropy-coded tile codeword by codeword.

    Code numbers are rewritten as they are read, without rebuilding coefficient
    blocks. The output is the payload `write_tile_payload(scramble_tile(...))`
    produces for the parsed tile, and the same syntax checks apply.

    Args:
        payload (bytes): Tile payload, zero-padded to a byte boundary.
        bit_length (int): Number of meaningful bits in the payload.
        blocks (int): Coded blocks in the tile, see `block_count`.
        ks (bytes): Keystream; at least two bytes per element actually present.

    Raises:
        TruncatedStream: The payload ends inside a block.
        MalformedPayload: The payload breaks the block syntax or has bits left over.
        KeystreamExhausted: `ks` runs out before the last element.
    """
    reader = BitCursor(payload, bit_length)
    writer = BitCursor()
    offset = 0
    for index in range(blocks):
        writer.write_code(reader.read_code() ^ _mask_at(ks, offset))
        offset += SCRAMBLE_MASK_BYTES
        count = reader.read_code()
        if count > AC_COUNT:
            raise MalformedPayload(f"block {index} declares {count} nonzero AC levels")
        writer.write_code(count)
        position = 0
        for _ in range(count):
            run = reader.read_code()
            position += run
            if position >= AC_COUNT:
                raise MalformedPayload(f"block {index} runs past coefficient 63")
            writer.write_code(run)
            code = reader.read_code()
            if code == 0:
                raise MalformedPayload(f"block {index} codes a zero level as nonzero")
            writer.write_code(((code - 1) ^ _mask_at(ks, offset)) + 1)
            offset += SCRAMBLE_MASK_BYTES
            position += 1
    if reader.remaining:
        raise MalformedPayload(f"{reader.remaining} bits left after the last block")
    return TilePayload(writer.to_bytes(), writer.limit)

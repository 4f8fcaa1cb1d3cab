from .transform import (
    HADAMARD,
    ZIGZAG,
    fwht8_forward,
    fwht8_inverse,
    inverse_zigzag,
    zigzag_scan,
)
from .quant import QuantParams, dequantize, quantize
from .grid import TileGrid, default_grid_dims, make_tile_grid
from .tile import (
    AC_COUNT,
    CoeffBlock,
    TilePayload,
    TilePlanes,
    block_count,
    decode_tile,
    encode_tile,
    encode_tile_blocks,
    parse_tile_payload,
    reconstruct_tile,
    write_tile_payload,
)
from .frame import (
    FrameYUV,
    decode_frame,
    decode_tile_at,
    encode_frame,
    encode_tile_at,
    frame_size,
    grid_for,
    paste_tiles,
    read_yuv,
    tile_planes,
    write_yuv,
)

__all__ = [
    "AC_COUNT",
    "HADAMARD",
    "ZIGZAG",
    "CoeffBlock",
    "FrameYUV",
    "QuantParams",
    "TileGrid",
    "TilePayload",
    "TilePlanes",
    "block_count",
    "decode_frame",
    "decode_tile",
    "decode_tile_at",
    "default_grid_dims",
    "dequantize",
    "encode_frame",
    "encode_tile",
    "encode_tile_at",
    "encode_tile_blocks",
    "frame_size",
    "fwht8_forward",
    "fwht8_inverse",
    "grid_for",
    "inverse_zigzag",
    "make_tile_grid",
    "parse_tile_payload",
    "paste_tiles",
    "quantize",
    "read_yuv",
    "reconstruct_tile",
    "tile_planes",
    "write_tile_payload",
    "write_yuv",
    "zigzag_scan",
]

from pathlib import Path
from typing import List

import numpy as np
import pytest

from arhe_core.bitstream import BitCursor, ContainerHeader, TileRecord, write_se, write_ue
from arhe_core.codec import (
    HADAMARD,
    ZIGZAG,
    CoeffBlock,
    FrameYUV,
    QuantParams,
    TilePlanes,
    decode_frame,
    decode_tile,
    default_grid_dims,
    dequantize,
    encode_frame,
    encode_tile,
    fwht8_forward,
    fwht8_inverse,
    inverse_zigzag,
    make_tile_grid,
    parse_tile_payload,
    quantize,
    read_yuv,
    write_tile_payload,
    write_yuv,
    zigzag_scan,
)
from arhe_core.errors import (
    DimensionMismatch,
    InvalidGrid,
    InvalidHeader,
    MalformedPayload,
    TruncatedInput,
    TruncatedStream,
)
from arhe_core.metrics import psnr
from .conftest import textured_frame


def _gradient(width: int, height: int) -> FrameYUV:
    x = np.arange(width)[None, :]
    y = np.arange(height)[:, None]
    luma = (96 + (40 * x) // width + (24 * y) // height).astype(np.uint8)
    chroma = np.full((height // 2, width // 2), 128, dtype=np.uint8)
    return FrameYUV(luma, chroma, chroma.copy())


def _header(width: int, height: int, cols: int, rows: int, qp: int) -> ContainerHeader:
    return ContainerHeader(
        width=width, height=height, fps=30, qp=qp, tile_cols=cols, tile_rows=rows, frame_count=1, salt=0
    )


def _encode(frame: FrameYUV, cols: int, rows: int, qp: int) -> List[TileRecord]:
    grid = make_tile_grid(frame.width, frame.height, cols, rows)
    return encode_frame(frame, grid, QuantParams(qp), [0] * grid.tile_count)


def _planes(rng: np.random.Generator, width: int, height: int) -> TilePlanes:
    frame = textured_frame(rng, width, height)
    return TilePlanes(frame.y, frame.u, frame.v)


def test_grid_bounds() -> None:
    grid = make_tile_grid(96, 64, 3, 2)
    assert grid.col_bounds == (0, 32, 64, 96)
    assert grid.row_bounds == (0, 32, 64)
    identity = make_tile_grid(96, 64, 1, 1)
    assert identity.col_bounds == (0, 96) and identity.row_bounds == (0, 64)
    uneven = make_tile_grid(160, 96, 3, 2)
    assert uneven.col_bounds == (0, 48, 96, 160)
    assert uneven.tile_rect(5) == (96, 48, 160, 96)


def test_grid_errors() -> None:
    with pytest.raises(InvalidGrid):
        make_tile_grid(96, 64, 7, 1)
    with pytest.raises(InvalidGrid):
        make_tile_grid(96, 64, 1, 0)
    with pytest.raises(InvalidGrid):
        make_tile_grid(100, 64, 1, 1)


def test_default_grid_dims() -> None:
    assert default_grid_dims(96, 64) == (6, 4)
    assert default_grid_dims(1920, 1088) == (16, 12)


def test_hadamard_shape() -> None:
    assert (HADAMARD @ HADAMARD.T == 8 * np.eye(8, dtype=np.int64)).all()
    assert (HADAMARD[0] == 1).all()
    changes = (np.diff(HADAMARD, axis=1) != 0).sum(axis=1)
    assert list(changes) == list(range(8))


def test_constant_block_transform() -> None:
    coeffs = fwht8_forward(np.full((8, 8), 128))
    assert coeffs[0, 0] == 8192
    assert np.count_nonzero(coeffs) == 1


def test_transform_roundtrip(rng: np.random.Generator) -> None:
    for _ in range(1000):
        block = rng.integers(-255, 256, size=(8, 8))
        assert (fwht8_inverse(fwht8_forward(block)) == block).all()


def test_zigzag() -> None:
    assert ZIGZAG[0] == (0, 0)
    assert ZIGZAG[1] == (0, 1)
    assert ZIGZAG[2] == (1, 0)
    assert ZIGZAG[3] == (2, 0)
    assert ZIGZAG[63] == (7, 7)
    assert len(set(ZIGZAG)) == 64


def test_zigzag_roundtrip(rng: np.random.Generator) -> None:
    for _ in range(50):
        block = rng.integers(-1000, 1000, size=(8, 8))
        assert (inverse_zigzag(zigzag_scan(block)) == block).all()


def test_quantizer_examples() -> None:
    q = QuantParams(32)
    assert q.qstep == 40
    assert quantize(100, q) == 2
    assert dequantize(2, q) == 100
    assert quantize(-30, q) == 0
    assert dequantize(0, q) == 0
    assert quantize(-100, q) == -2
    assert QuantParams(24).qstep == 16
    assert QuantParams(0).qstep == 1
    with pytest.raises(InvalidHeader):
        QuantParams(52)


def test_quantizer_error_bound(rng: np.random.Generator) -> None:
    coeffs = rng.integers(-20000, 20000, size=5000)
    for qp in (0, 12, 22, 32, 40, 51):
        q = QuantParams(qp)
        error = np.abs(dequantize(quantize(coeffs, q), q) - coeffs)
        assert error.max() <= q.qstep


def test_flat_tile() -> None:
    flat = np.full((32, 32), 128, dtype=np.uint8)
    chroma = np.full((16, 16), 128, dtype=np.uint8)
    for qp in (0, 32, 51):
        (payload, bits), recon = encode_tile(TilePlanes(flat, chroma, chroma), QuantParams(qp))
        # 24 blocks, each se(0) ue(0) = "1" "1"
        assert bits == 48
        assert payload == b"\xff" * 6
        assert all((plane == 128).all() for plane in recon)
        decoded = decode_tile(payload, bits, 32, 32, QuantParams(qp))
        assert all((plane == 128).all() for plane in decoded)


def test_encoder_decoder_agree(rng: np.random.Generator) -> None:
    for qp in (0, 22, 32, 51):
        planes = _planes(rng, 32, 16)
        (payload, bits), recon = encode_tile(planes, QuantParams(qp))
        decoded = decode_tile(payload, bits, 32, 16, QuantParams(qp))
        for a, b in zip(recon, decoded):
            assert (a == b).all()


def test_lossless_at_qp0(rng: np.random.Generator) -> None:
    planes = _planes(rng, 48, 32)
    _, recon = encode_tile(planes, QuantParams(0))
    for src, out in zip(planes, recon):
        assert np.abs(src.astype(int) - out.astype(int)).max() <= 1


def test_dc_only_blocks() -> None:
    blocks = [CoeffBlock(2 if i % 2 else -1, (0,) * 63) for i in range(6)]
    payload, bits = write_tile_payload(blocks)
    assert parse_tile_payload(payload, bits, 16, 16) == blocks
    planes = decode_tile(payload, bits, 16, 16, QuantParams(32))
    for plane in planes:
        for by in range(0, plane.shape[0], 8):
            for bx in range(0, plane.shape[1], 8):
                assert np.unique(plane[by : by + 8, bx : bx + 8]).size == 1


def test_parse_malformed() -> None:
    ac = [0] * 63
    ac[62] = 5
    payload, bits = write_tile_payload([CoeffBlock(0, tuple(ac))] + [CoeffBlock(0, (0,) * 63)] * 5)
    assert parse_tile_payload(payload, bits, 16, 16)[0].ac[62] == 5
    with pytest.raises(TruncatedStream):
        parse_tile_payload(payload, bits - 1, 16, 16)
    with pytest.raises(MalformedPayload):
        parse_tile_payload(payload + b"\xff", bits + 8, 16, 16)
    # second run steps from position 61 to 66
    cursor = BitCursor()
    write_se(cursor, 0)
    write_ue(cursor, 2)
    write_ue(cursor, 60)
    write_se(cursor, 1)
    write_ue(cursor, 5)
    write_se(cursor, 1)
    with pytest.raises(MalformedPayload):
        parse_tile_payload(cursor.to_bytes(), cursor.limit, 16, 16)


def test_zero_level_is_malformed() -> None:
    cursor = BitCursor()
    write_se(cursor, 0)
    write_ue(cursor, 1)
    write_ue(cursor, 0)
    write_se(cursor, 0)
    with pytest.raises(MalformedPayload):
        parse_tile_payload(cursor.to_bytes(), cursor.limit, 16, 16)


def test_flat_frame_roundtrip() -> None:
    frame = FrameYUV.flat(96, 64)
    records = _encode(frame, 3, 2, 32)
    assert len(records) == 6
    decoded = decode_frame(records, _header(96, 64, 3, 2, 32))
    assert decoded.to_bytes() == frame.to_bytes()


def test_frame_dimension_checks(rng: np.random.Generator) -> None:
    frame = textured_frame(rng, 96, 64)
    grid = make_tile_grid(96, 64, 3, 2)
    with pytest.raises(DimensionMismatch):
        encode_frame(frame, grid, QuantParams(32), [0] * 5)
    with pytest.raises(DimensionMismatch):
        encode_frame(frame, make_tile_grid(64, 64, 1, 1), QuantParams(32), [0])
    with pytest.raises(DimensionMismatch):
        FrameYUV(frame.y, frame.u[:8], frame.v)


def test_tile_independence(rng: np.random.Generator) -> None:
    frame = textured_frame(rng, 96, 64)
    header = _header(96, 64, 3, 2, 32)
    grid = make_tile_grid(96, 64, 3, 2)
    records = _encode(frame, 3, 2, 32)
    clean = decode_frame(records, header)
    target = 4
    x0, y0, x1, y1 = grid.tile_rect(target)
    blocks = parse_tile_payload(records[target].payload, records[target].payload_bit_length, x1 - x0, y1 - y0)
    corrupted = [CoeffBlock(b.dc_delta + 7, b.ac) for b in blocks]
    payload, bits = write_tile_payload(corrupted)
    records[target] = TileRecord(0, bits, payload)
    damaged = decode_frame(records, header)
    outside = np.ones((64, 96), dtype=bool)
    outside[y0:y1, x0:x1] = False
    assert (damaged.y[outside] == clean.y[outside]).all()
    assert not (damaged.y[~outside] == clean.y[~outside]).all()


def test_grid_changes_reconstruction_within_bounds() -> None:
    frame = _gradient(256, 192)
    coarse = decode_frame(_encode(frame, 1, 1, 32), _header(256, 192, 1, 1, 32))
    fine = decode_frame(_encode(frame, 16, 12, 32), _header(256, 192, 16, 12, 32))
    assert psnr(frame.y, coarse.y) > 30
    assert psnr(frame.y, fine.y) > 30


def test_tile_overhead_monotone() -> None:
    frame = _gradient(256, 192)
    sizes = []
    for cols, rows in ((1, 1), (2, 2), (4, 4), (16, 12)):
        records = _encode(frame, cols, rows, 32)
        sizes.append(sum(5 * 8 + 8 * len(r.payload) for r in records))
    assert sizes == sorted(sizes)
    assert sizes[-1] > sizes[0]


def test_rate_distortion(rng: np.random.Generator) -> None:
    frame = _gradient(96, 64)
    noisy = FrameYUV(
        np.clip(frame.y.astype(int) + rng.integers(-20, 21, size=frame.y.shape), 0, 255).astype(np.uint8),
        frame.u,
        frame.v,
    )
    header22, header40 = _header(96, 64, 3, 2, 22), _header(96, 64, 3, 2, 40)
    low = decode_frame(_encode(noisy, 3, 2, 22), header22)
    high = decode_frame(_encode(noisy, 3, 2, 40), header40)
    assert psnr(noisy.y, low.y) >= 30
    assert psnr(noisy.y, low.y) > psnr(noisy.y, high.y)


def test_yuv_io(tmp_path: Path, rng: np.random.Generator) -> None:
    frames = [textured_frame(rng, 32, 16) for _ in range(3)]
    path = tmp_path / "clip.yuv"
    write_yuv(path, frames)
    assert path.stat().st_size == 3 * 32 * 16 * 3 // 2
    loaded = read_yuv(path, 32, 16, 3)
    assert [f.to_bytes() for f in loaded] == [f.to_bytes() for f in frames]
    with pytest.raises(TruncatedInput):
        read_yuv(path, 32, 16, 4)

import json
import math
from typing import List

import numpy as np
import pytest

from arhe_core.codec import FrameYUV, make_tile_grid
from arhe_core.crypt import MasterKey, encrypt_stream
from arhe_core.errors import ConfigurationError, DimensionMismatch, NoRegion
from arhe_core.metrics import (
    MetricsReport,
    bench,
    encode_clip,
    measure_quality,
    psnr,
    psnr_region,
    tile_sweep,
)
from arhe_core.policy import default_policy
from arhe_core.roi import ALL_CLASSES, RoiTimeline, SensitivityClass, tile_class_schedule


def _timeline(frames: int) -> RoiTimeline:
    return RoiTimeline.model_validate(
        {
            "frame_count": frames,
            "tracks": [
                {"object_id": "f", "class": "face", "keyframes": [{"frame": 0, "x": 2, "y": 2, "w": 12, "h": 12}]},
                {"object_id": "d", "class": "display_content", "keyframes": [{"frame": 0, "x": 50, "y": 4, "w": 10, "h": 8}]},
                {"object_id": "i", "class": "id_card", "keyframes": [{"frame": 0, "x": 20, "y": 40, "w": 8, "h": 8}]},
            ],
        }
    )


def test_psnr_values() -> None:
    a = np.zeros((16, 16), dtype=np.uint8)
    b = np.full((16, 16), 255, dtype=np.uint8)
    assert psnr(a, a) == math.inf
    assert psnr(a, b) == pytest.approx(0.0)
    c = np.full((16, 16), 10, dtype=np.uint8)
    assert psnr(a, c) == pytest.approx(10 * math.log10(255**2 / 100))
    assert psnr(a, c) == psnr(c, a)
    with pytest.raises(DimensionMismatch):
        psnr(a, np.zeros((8, 8), dtype=np.uint8))


def test_psnr_region() -> None:
    grid = make_tile_grid(96, 64, 3, 2)
    ref = FrameYUV.flat(96, 64, 100)
    test = FrameYUV.flat(96, 64, 100)
    test.y[0:32, 32:64] = 110
    labels = [0, 1, 0, 0, 0, 2]
    assert psnr_region(ref, test, labels, grid, {SensitivityClass.FACE}) == pytest.approx(
        10 * math.log10(255**2 / 100)
    )
    assert psnr_region(ref, test, labels, grid, {SensitivityClass.DISPLAY_CONTENT}) == math.inf
    with pytest.raises(NoRegion):
        psnr_region(ref, test, labels, grid, set())
    with pytest.raises(NoRegion):
        psnr_region(ref, test, labels, grid, {SensitivityClass.ID_CARD})
    with pytest.raises(DimensionMismatch):
        psnr_region(ref, test, labels[:5], grid, ALL_CLASSES)


def test_report_serializes_inf() -> None:
    report = MetricsReport.model_validate(
        {
            "psnr_y_global": {"per_frame": [math.inf, 40.0], "mean": math.inf},
            "psnr_y_roi": None,
            "compressed_bits": 8,
            "cipher_bits_bitstream": 0,
            "cipher_bits_pixel": 0,
            "encode_ms_per_frame": 1.0,
            "encrypt_ms_per_frame": 0.0,
            "decode_ms_per_frame": 1.0,
        }
    )
    data = json.loads(report.to_json())
    assert data["psnr_y_global"] == {"per_frame": ["inf", 40.0], "mean": "inf"}
    assert data["psnr_y_roi"] is None
    assert "encode_ms_per_frame" not in report.non_timing()
    assert report.encrypt_overhead() == 0.0
    assert report.within_encrypt_budget()
    slow = report.model_copy(update={"encode_ms_per_frame": 4.0, "encrypt_ms_per_frame": 2.0})
    assert slow.encrypt_overhead() == 0.5
    assert not slow.within_encrypt_budget()
    assert slow.within_encrypt_budget(budget=0.5)


def test_bench(textured_frames: List[FrameYUV]) -> None:
    grid = make_tile_grid(96, 64, 6, 4)
    timeline = _timeline(len(textured_frames))
    policy = default_policy()
    report = bench(textured_frames, 32, grid, timeline, policy, "projector", repetitions=2)
    assert report.compressed_bits > 0
    assert len(report.psnr_y_global.per_frame) == len(textured_frames)
    assert report.psnr_y_roi is not None and report.psnr_y_roi < 25
    assert report.cipher_bits_pixel == 12 * (144 + 80 + 64) * len(textured_frames)
    assert report.cipher_bits_bitstream > 0
    again = bench(textured_frames, 32, grid, timeline, policy, "projector", repetitions=1)
    assert again.non_timing() == report.non_timing()

    nothing = bench(textured_frames, 32, grid, timeline, policy, None, repetitions=1)
    assert nothing.cipher_bits_bitstream == 0 and nothing.cipher_bits_pixel == 0
    assert nothing.psnr_y_roi is not None and nothing.psnr_y_roi > report.psnr_y_roi


def test_bench_monotone_in_classes(textured_frames: List[FrameYUV]) -> None:
    grid = make_tile_grid(96, 64, 6, 4)
    timeline = _timeline(len(textured_frames))
    policy = default_policy()
    reports = [
        bench(textured_frames, 32, grid, timeline, policy, tier, repetitions=1)
        for tier in ("glasses", "smartphone", "projector")
    ]
    bits = [r.cipher_bits_bitstream for r in reports]
    roi = [r.psnr_y_roi for r in reports]
    assert bits[0] < bits[1] < bits[2]
    assert roi[0] >= roi[1] >= roi[2]


def test_bench_without_roi(textured_frames: List[FrameYUV]) -> None:
    grid = make_tile_grid(96, 64, 3, 2)
    report = bench(textured_frames, 32, grid, None, default_policy(), "projector", repetitions=1)
    assert report.psnr_y_roi is None
    assert report.cipher_bits_bitstream == 0
    with pytest.raises(ConfigurationError):
        bench(textured_frames, 32, grid, None, default_policy(), None, repetitions=0)


def test_tile_sweep(textured_frames: List[FrameYUV]) -> None:
    rows = tile_sweep(textured_frames[:1], 32, [(1, 1), (3, 2), (6, 4)])
    assert [(r.cols, r.rows) for r in rows] == [(1, 1), (3, 2), (6, 4)]
    assert all(r.compressed_bits > 0 and r.mean_psnr_y > 0 for r in rows)
    with pytest.raises(ConfigurationError):
        tile_sweep(textured_frames[:1], 32, [(1, 1)], repetitions=0)


def test_measure_quality(textured_frames: List[FrameYUV]) -> None:
    grid = make_tile_grid(96, 64, 6, 4)
    labels = tile_class_schedule(_timeline(len(textured_frames)), grid, len(textured_frames))
    container = encode_clip(textured_frames, 32, grid, labels)
    plain = measure_quality(textured_frames, container)
    scrambled = measure_quality(textured_frames, encrypt_stream(container, {SensitivityClass.FACE}, MasterKey(bytes(32))))
    assert scrambled.psnr_y.mean < plain.psnr_y.mean
    assert scrambled.psnr_y_roi < plain.psnr_y_roi
    assert measure_quality(textured_frames, container, {SensitivityClass.ID_CARD}).psnr_y_roi is not None
    with pytest.raises(DimensionMismatch):
        measure_quality(textured_frames[:2], container)

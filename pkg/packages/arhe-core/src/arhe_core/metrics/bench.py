import statistics
import time
from typing import AbstractSet, List, Optional, Sequence, Tuple

from arhe_core.bitstream import Container, ContainerHeader
from arhe_core.codec import (
    FrameYUV,
    QuantParams,
    TileGrid,
    decode_frame,
    encode_frame,
    grid_for,
    make_tile_grid,
)
from arhe_core.crypt import MasterKey, cipher_cost, encrypt_stream
from arhe_core.errors import ConfigurationError, DimensionMismatch
from arhe_core.policy import PolicyMatrix, Tier, encrypt_set
from arhe_core.roi import ALL_CLASSES, RoiTimeline, SensitivityClass, tile_class_schedule
from .psnr import psnr, psnr_from_mse, region_mask, squared_error
from .report import MetricsReport, PsnrSeries, QualityReport, SweepRow

BENCH_MASTER = MasterKey(bytes(32))


def encode_clip(
    frames: Sequence[FrameYUV],
    qp: int,
    grid: TileGrid,
    labels: Sequence[Sequence[int]],
    fps: int = 30,
    salt: int = 0,
) -> Container:
    header = ContainerHeader(
        width=grid.width,
        height=grid.height,
        fps=fps,
        qp=qp,
        tile_cols=grid.cols,
        tile_rows=grid.rows,
        frame_count=len(frames),
        salt=salt,
    )
    q = QuantParams(qp)
    return Container(
        header=header,
        frames=[encode_frame(f, grid, q, labels[i]) for i, f in enumerate(frames)],
    )


def _mean_db(values: Sequence[float]) -> float:
    return statistics.fmean(values) if values else 0.0


def pooled_region_psnr(
    sources: Sequence[FrameYUV],
    decoded: Sequence[FrameYUV],
    labels: Sequence[Sequence[int]],
    grid: TileGrid,
    classes: AbstractSet[SensitivityClass],
) -> Optional[float]:
    """Luma PSNR over the labeled tiles of every frame pooled into one MSE; None if no tile qualifies."""
    sse, count = 0, 0
    for index, (src, out) in enumerate(zip(sources, decoded)):
        frame_sse, frame_count = squared_error(
            src.y, out.y, region_mask(labels[index], grid, classes)
        )
        sse, count = sse + frame_sse, count + frame_count
    return psnr_from_mse(sse / count) if count else None


def _ms_per_frame(seconds: List[float], frame_count: int) -> float:
    return 1000.0 * statistics.median(seconds) / max(frame_count, 1)


def bench(
    frames: Sequence[FrameYUV],
    qp: int,
    grid: TileGrid,
    timeline: Optional[RoiTimeline],
    policy: PolicyMatrix,
    tier: Optional[Tier],
    repetitions: int = 3,
    classes: Optional[AbstractSet[SensitivityClass]] = None,
    master: MasterKey = BENCH_MASTER,
) -> MetricsReport:
    """
    Run encode, encrypt and decode `repetitions` times and measure the result.

    Args:
        frames (Sequence[FrameYUV]): Source clip.
        qp (int): Quantization parameter.
        grid (TileGrid): Tile grid matching the frame size.
        timeline (Optional[RoiTimeline]): ROI boxes; None labels no tile.
        policy (PolicyMatrix): Policy the tier is looked up in.
        tier (Optional[Tier]): Target device; None encrypts nothing unless `classes` is given.
        repetitions (int): Timed runs; timings report the median.
        classes (Optional[AbstractSet[SensitivityClass]]): Explicit encrypt set, overriding the tier.
        master (MasterKey): Master key used for the encryption stage.

    Returns:
        A MetricsReport whose non-timing fields are deterministic.
    """
    if repetitions < 1:
        raise ConfigurationError(f"repetitions must be at least 1, got {repetitions}")
    if classes is None:
        classes = encrypt_set(policy, tier) if tier is not None else frozenset()
    labels = tile_class_schedule(timeline, grid, len(frames))

    encode_s: List[float] = []
    encrypt_s: List[float] = []
    decode_s: List[float] = []
    for _ in range(repetitions):
        start = time.perf_counter()
        container = encode_clip(frames, qp, grid, labels)
        encode_s.append(time.perf_counter() - start)

        start = time.perf_counter()
        encrypted = encrypt_stream(container, classes, master)
        encrypt_s.append(time.perf_counter() - start)

        start = time.perf_counter()
        keyless = [decode_frame(records, encrypted.header) for records in encrypted.frames]
        decode_s.append(time.perf_counter() - start)

    plain = [decode_frame(records, container.header) for records in container.frames]
    per_frame = [psnr(src.y, out.y) for src, out in zip(frames, plain)]

    roi_db = pooled_region_psnr(frames, keyless, labels, grid, ALL_CLASSES)

    cost_timeline = timeline or RoiTimeline(frame_count=len(frames))
    return MetricsReport(
        psnr_y_global=PsnrSeries(per_frame=per_frame, mean=_mean_db(per_frame)),
        psnr_y_roi=roi_db,
        compressed_bits=8 * len(container.to_bytes()),
        cipher_bits_bitstream=cipher_cost(container, cost_timeline, "bitstream_level", classes),
        cipher_bits_pixel=cipher_cost(container, cost_timeline, "pixel_level", classes),
        encode_ms_per_frame=_ms_per_frame(encode_s, len(frames)),
        encrypt_ms_per_frame=_ms_per_frame(encrypt_s, len(frames)),
        decode_ms_per_frame=_ms_per_frame(decode_s, len(frames)),
    )


def tile_sweep(
    frames: Sequence[FrameYUV],
    qp: int,
    grids: Sequence[Tuple[int, int]],
    repetitions: int = 1,
) -> List[SweepRow]:
    """Compressed size, encode speed and quality of the same clip under each (cols, rows) grid."""
    if repetitions < 1:
        raise ConfigurationError(f"repetitions must be at least 1, got {repetitions}")
    rows: List[SweepRow] = []
    width, height = frames[0].width, frames[0].height
    for cols, tile_rows in grids:
        grid = make_tile_grid(width, height, cols, tile_rows)
        labels = tile_class_schedule(None, grid, len(frames))
        timings: List[float] = []
        for _ in range(repetitions):
            start = time.perf_counter()
            container = encode_clip(frames, qp, grid, labels)
            timings.append(time.perf_counter() - start)
        decoded = [decode_frame(records, container.header) for records in container.frames]
        rows.append(
            SweepRow(
                cols=cols,
                rows=tile_rows,
                compressed_bits=8 * len(container.to_bytes()),
                encode_ms_per_frame=_ms_per_frame(timings, len(frames)),
                mean_psnr_y=_mean_db([psnr(s.y, d.y) for s, d in zip(frames, decoded)]),
            )
        )
    return rows


def measure_quality(
    frames: Sequence[FrameYUV],
    container: Container,
    classes: AbstractSet[SensitivityClass] = ALL_CLASSES,
) -> QualityReport:
    """
    Decode `container` without keys and compare it with the source frames.

    The ROI figure uses the tile labels carried by the container itself.

    Raises:
        DimensionMismatch: The container and the source clip disagree in size or length.
    """
    header = container.header
    if len(frames) != header.frame_count:
        raise DimensionMismatch(
            f"container holds {header.frame_count} frames, source has {len(frames)}"
        )
    grid = grid_for(header)
    decoded = [decode_frame(records, header) for records in container.frames]
    per_frame = [psnr(src.y, out.y) for src, out in zip(frames, decoded)]
    labels = [[record.class_id for record in records] for records in container.frames]
    return QualityReport(
        psnr_y=PsnrSeries(per_frame=per_frame, mean=_mean_db(per_frame)),
        psnr_y_roi=pooled_region_psnr(frames, decoded, labels, grid, classes),
    )

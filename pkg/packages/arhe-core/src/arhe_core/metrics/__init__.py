from .psnr import psnr, psnr_from_mse, psnr_region, region_mask, squared_error
from .report import TIMING_FIELDS, Decibels, MetricsReport, PsnrSeries, QualityReport, SweepRow
from .bench import (
    BENCH_MASTER,
    bench,
    encode_clip,
    measure_quality,
    pooled_region_psnr,
    tile_sweep,
)

__all__ = [
    "BENCH_MASTER",
    "Decibels",
    "MetricsReport",
    "PsnrSeries",
    "QualityReport",
    "SweepRow",
    "TIMING_FIELDS",
    "bench",
    "encode_clip",
    "measure_quality",
    "pooled_region_psnr",
    "psnr",
    "psnr_from_mse",
    "psnr_region",
    "region_mask",
    "squared_error",
    "tile_sweep",
]

import math
from typing import Optional, Sequence

from rich.table import Table

from arhe_core.metrics import MetricsReport, QualityReport, SweepRow


def _db(value: Optional[float]) -> str:
    if value is None:
        return "-"
    return "inf" if math.isinf(value) else f"{value:.2f}"


def render_report(report: MetricsReport) -> Table:
    table = Table(title="arhe bench")
    table.add_column("metric")
    table.add_column("value", justify="right")
    table.add_row("psnr_y_global (mean dB)", _db(report.psnr_y_global.mean))
    table.add_row("psnr_y_roi (dB)", _db(report.psnr_y_roi))
    table.add_row("compressed_bits", str(report.compressed_bits))
    table.add_row("cipher_bits_bitstream", str(report.cipher_bits_bitstream))
    table.add_row("cipher_bits_pixel", str(report.cipher_bits_pixel))
    if report.cipher_bits_bitstream:
        ratio = report.cipher_bits_pixel / report.cipher_bits_bitstream
        table.add_row("pixel / bitstream", f"{ratio:.2f}x")
    table.add_row("encode_ms_per_frame", f"{report.encode_ms_per_frame:.3f}")
    table.add_row("encrypt_ms_per_frame", f"{report.encrypt_ms_per_frame:.3f}")
    table.add_row("decode_ms_per_frame", f"{report.decode_ms_per_frame:.3f}")
    overhead = f"{report.encrypt_overhead():.1%}"
    if not report.within_encrypt_budget():
        overhead += " (over budget)"
    table.add_row("encrypt / encode", overhead)
    return table


def render_quality(report: QualityReport) -> Table:
    table = Table(title="arhe metrics")
    table.add_column("frame", justify="right")
    table.add_column("psnr_y (dB)", justify="right")
    for index, value in enumerate(report.psnr_y.per_frame):
        table.add_row(str(index), _db(value))
    table.add_row("mean", _db(report.psnr_y.mean))
    table.add_row("roi", _db(report.psnr_y_roi))
    return table


def render_sweep(rows: Sequence[SweepRow]) -> Table:
    table = Table(title="arhe sweep")
    for name in ("grid", "compressed_bits", "encode_ms_per_frame", "mean_psnr_y"):
        table.add_column(name, justify="right")
    for row in rows:
        table.add_row(
            f"{row.cols}x{row.rows}",
            str(row.compressed_bits),
            f"{row.encode_ms_per_frame:.3f}",
            _db(row.mean_psnr_y),
        )
    return table

import asyncio
import warnings
from pathlib import Path
from typing import FrozenSet, List, Optional, Sequence, Tuple

from rich.console import Console

from arhe_core.bitstream import Container
from arhe_core.codec import (
    FrameYUV,
    default_grid_dims,
    make_tile_grid,
    read_yuv,
    write_yuv,
)
from arhe_core.constants import ENCRYPT_OVERHEAD_BUDGET
from arhe_core.crypt import (
    KeyBundle,
    MasterKey,
    derive_class_key,
    format_key_file,
    load_key_file,
)
from arhe_core.metrics import (
    BENCH_MASTER,
    MetricsReport,
    QualityReport,
    SweepRow,
    bench,
    measure_quality,
    tile_sweep,
)
from arhe_core.policy import (
    DeviceTier,
    PolicyMatrix,
    check_policy,
    default_policy,
    encrypt_set,
    key_bundle_for,
    load_policy,
)
from arhe_core.roi import (
    ALL_CLASSES,
    RoiBox,
    RoiTimeline,
    SensitivityClass,
    load_timeline,
    save_timeline,
    tile_class_schedule,
    track_box,
)
from .fixture import gradient_frames, synthetic_clip
from .sdk import (
    ArhePipeline,
    NoDeviceSelectedError,
    parse_classes,
)

# tier label written into key files that hold every class key
FULL_BUNDLE_TIER = "all"

SWEEP_GRIDS: Tuple[Tuple[int, int], ...] = ((1, 1), (2, 2), (4, 4), (16, 12))


def log_step(console: Console, tag: str, detail: str, verbose: bool) -> None:
    if verbose:
        console.log(f"[bold cyan]{tag}[/]\t{detail}")


def log_done(console: Console, detail: str) -> None:
    console.log(f"[bold green]DONE✅[/]\t{detail}")


def log_warning(console: Console, detail: str) -> None:
    console.log(f"[bold yellow]WARNING[/]\t{detail}")


def resolve_policy(
    console: Console, path: Optional[str], strict: bool = False
) -> PolicyMatrix:
    """Load (or default) the policy and report nesting violations as warnings."""
    matrix = load_policy(path) if path else default_policy()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        check_policy(matrix, strict=strict)
    for warning in caught:
        log_warning(console, str(warning.message))
    return matrix


def resolve_tier(
    device: Optional[str], interactive: bool, policy: PolicyMatrix
) -> DeviceTier:
    if interactive:
        from .picker import run_device_picker

        tier = asyncio.run(run_device_picker(policy))
        if tier is None:
            raise NoDeviceSelectedError("no device selected")
        return tier
    if device is None:
        raise NoDeviceSelectedError("no device given")
    return DeviceTier.parse(device)


def _read_container(path: str) -> Container:
    with open(path, "rb") as f:
        return Container.from_bytes(f.read())


def _write_container(container: Container, path: str) -> None:
    data = container.to_bytes()
    with open(path, "wb") as w:
        w.write(data)


def _grid_dims(
    tiles: Optional[Tuple[int, int]], width: int, height: int
) -> Tuple[int, int]:
    return tiles if tiles is not None else default_grid_dims(width, height)


def _load_roi(
    console: Console, path: Optional[str], frames: int
) -> Optional[RoiTimeline]:
    if not path:
        return None
    timeline = load_timeline(path)
    if timeline.frame_count != frames:
        log_warning(console, f"ROI timeline covers {timeline.frame_count} frames, clip has {frames}")
    return timeline


def _clip(
    input_path: Optional[str],
    width: int,
    height: int,
    frames: int,
    seed: int,
) -> Tuple[List[FrameYUV], Optional[RoiTimeline]]:
    if input_path:
        return read_yuv(input_path, width, height, frames), None
    return synthetic_clip(width, height, frames, seed)


def cmd_encode(
    console: Console,
    pipeline: ArhePipeline,
    input_path: str,
    width: int,
    height: int,
    frames: int,
    out: str,
    qp: int = 32,
    tiles: Optional[Tuple[int, int]] = None,
    roi: Optional[str] = None,
    fps: int = 30,
    salt: int = 0,
) -> Container:
    grid = make_tile_grid(width, height, *_grid_dims(tiles, width, height))
    clip = read_yuv(input_path, width, height, frames)
    timeline = _load_roi(console, roi, frames)
    labels = tile_class_schedule(timeline, grid, frames)
    log_step(
        console,
        "ENCODING",
        f"{frames} frames {width}x{height}, qp {qp}, {grid.cols}x{grid.rows} tiles",
        pipeline.verbose,
    )
    container = asyncio.run(pipeline.encode(clip, qp, grid, labels, fps, salt))
    _write_container(container, out)
    log_done(console, f"wrote {out}")
    return container


def cmd_encrypt(
    console: Console,
    pipeline: ArhePipeline,
    input_path: str,
    master_key: str,
    out: str,
    device: Optional[str] = None,
    classes: Optional[str] = None,
    interactive: bool = False,
    policy_path: Optional[str] = None,
    strict: bool = False,
) -> FrozenSet[SensitivityClass]:
    """
    Per-device mode (`device` or `interactive`) encrypts the tier's encrypt set under the
    active policy; per-class mode (`classes`) encrypts exactly the listed classes.
    """
    master = MasterKey.from_hex(master_key)
    if classes is not None:
        selected = parse_classes(classes)
    else:
        policy = resolve_policy(console, policy_path, strict)
        tier = resolve_tier(device, interactive, policy)
        selected = encrypt_set(policy, tier)
        log_step(console, "POLICY", f"{tier.label} encrypts {_labels(selected)}", pipeline.verbose)
    container = _read_container(input_path)
    log_step(console, "ENCRYPTING", _labels(selected), pipeline.verbose)
    encrypted = asyncio.run(pipeline.encrypt(container, selected, master))
    _write_container(encrypted, out)
    log_done(console, f"wrote {out}")
    return selected


def cmd_decrypt(
    console: Console, pipeline: ArhePipeline, input_path: str, keys: str, out: str
) -> None:
    _, bundle = load_key_file(keys)
    container = _read_container(input_path)
    log_step(console, "DECRYPTING", _labels(bundle.classes), pipeline.verbose)
    _write_container(asyncio.run(pipeline.decrypt(container, bundle)), out)
    log_done(console, f"wrote {out}")


def cmd_decode(
    console: Console, pipeline: ArhePipeline, input_path: str, out: str
) -> List[FrameYUV]:
    container = _read_container(input_path)
    log_step(
        console,
        "DECODING",
        f"{container.header.frame_count} frames {container.header.width}x{container.header.height}",
        pipeline.verbose,
    )
    frames = asyncio.run(pipeline.decode(container))
    write_yuv(out, frames)
    log_done(console, f"wrote {out}")
    return frames


def cmd_keys(
    console: Console,
    master_key: str,
    device: Optional[str] = None,
    all_classes: bool = False,
    interactive: bool = False,
    policy_path: Optional[str] = None,
) -> str:
    """Key file text for a device tier: keys for exactly the classes it may view."""
    master = MasterKey.from_hex(master_key)
    if all_classes:
        bundle = KeyBundle.of(derive_class_key(master, c) for c in sorted(ALL_CLASSES))
        return format_key_file(bundle, tier=FULL_BUNDLE_TIER)
    policy = resolve_policy(console, policy_path)
    tier = resolve_tier(device, interactive, policy)
    return format_key_file(key_bundle_for(policy, tier, master), tier=tier.label)


def cmd_track(
    console: Console,
    input_path: str,
    width: int,
    height: int,
    frames: int,
    box: Tuple[int, int, int, int],
    start: int = 0,
    end: Optional[int] = None,
    sensitivity: str = "face",
    object_id: str = "tracked",
    verbose: bool = False,
) -> RoiTimeline:
    clip = read_yuv(input_path, width, height, frames)
    last = frames - 1 if end is None else end
    x, y, w, h = box
    log_step(console, "TRACKING", f"box {box} over frames {start}..{last}", verbose)
    track = track_box(
        [frame.y for frame in clip],
        start,
        RoiBox(x=x, y=y, w=w, h=h),
        last,
        object_id=object_id,
        sensitivity=SensitivityClass.parse(sensitivity).label,
    )
    return RoiTimeline(frame_count=frames, tracks=[track])


def cmd_metrics(
    source: str,
    input_path: str,
    classes: Optional[str] = None,
) -> QualityReport:
    container = _read_container(input_path)
    header = container.header
    clip = read_yuv(source, header.width, header.height, header.frame_count)
    selected = parse_classes(classes) if classes is not None else ALL_CLASSES
    return measure_quality(clip, container, selected)


def cmd_bench(
    console: Console,
    input_path: Optional[str] = None,
    width: int = 96,
    height: int = 64,
    frames: int = 30,
    qp: int = 32,
    tiles: Optional[Tuple[int, int]] = None,
    roi: Optional[str] = None,
    policy_path: Optional[str] = None,
    device: Optional[str] = None,
    classes: Optional[str] = None,
    repetitions: int = 3,
    master_key: Optional[str] = None,
    seed: int = 0,
    verbose: bool = False,
) -> MetricsReport:
    """Benchmark a raw clip, or the synthetic fixture when no input is given."""
    policy = resolve_policy(console, policy_path)
    selected = parse_classes(classes) if classes is not None else None
    tier = DeviceTier.parse(device) if device is not None else None
    clip, timeline = _clip(input_path, width, height, frames, seed)
    if roi:
        timeline = _load_roi(console, roi, frames)
    grid = make_tile_grid(width, height, *_grid_dims(tiles, width, height))
    log_step(
        console,
        "BENCH",
        f"{frames} frames, {grid.cols}x{grid.rows} tiles, {repetitions} repetitions",
        verbose,
    )
    master = MasterKey.from_hex(master_key) if master_key else BENCH_MASTER
    report = bench(
        clip,
        qp,
        grid,
        timeline,
        policy,
        tier,
        repetitions=repetitions,
        classes=selected,
        master=master,
    )
    if not report.within_encrypt_budget():
        log_warning(
            console,
            f"encryption took {report.encrypt_overhead():.0%} of encode time, budget is {ENCRYPT_OVERHEAD_BUDGET:.0%}",
        )
    return report


def cmd_fixture(
    console: Console,
    out: str,
    roi_out: Optional[str] = None,
    width: int = 96,
    height: int = 64,
    frames: int = 30,
    seed: int = 0,
    motion: Tuple[int, int] = (1, 0),
) -> str:
    clip, timeline = synthetic_clip(width, height, frames, seed, motion)
    write_yuv(out, clip)
    roi_path = roi_out or str(Path(out).with_suffix(".roi.json"))
    save_timeline(timeline, roi_path)
    log_done(console, f"wrote {out} and {roi_path}")
    return roi_path


def cmd_sweep(
    console: Console,
    input_path: Optional[str] = None,
    width: int = 256,
    height: int = 192,
    frames: int = 3,
    qp: int = 32,
    grids: Sequence[Tuple[int, int]] = SWEEP_GRIDS,
    repetitions: int = 1,
    verbose: bool = False,
) -> List[SweepRow]:
    """Tile-count sweep on a raw clip, or on smooth gradient frames when no input is given."""
    clip = (
        read_yuv(input_path, width, height, frames)
        if input_path
        else gradient_frames(width, height, frames)
    )
    for cols, rows in grids:
        make_tile_grid(width, height, cols, rows)
    log_step(console, "SWEEP", ", ".join(f"{c}x{r}" for c, r in grids), verbose)
    return tile_sweep(clip, qp, grids, repetitions)


def cmd_policy(
    console: Console, policy_path: Optional[str] = None, strict: bool = False
) -> PolicyMatrix:
    matrix = resolve_policy(console, policy_path, strict)
    return matrix


def _labels(classes: FrozenSet[SensitivityClass]) -> str:
    return ", ".join(c.label for c in sorted(classes)) or "no classes"

from typing import AbstractSet, List, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from arhe_core.codec import TileGrid
from arhe_core.errors import EmptyTrack
from .data import RoiBox, RoiTimeline, RoiTrack, SensitivityClass

ClassedBox = Tuple[RoiBox, SensitivityClass]


def _lerp(a: int, b: int, t: int, span: int) -> int:
    # a + (b - a) * t / span, rounded half up
    numerator = a * span + (b - a) * t
    return (2 * numerator + span) // (2 * span)


def interpolate_box(track: RoiTrack, frame: int) -> RoiBox:
    """
    Box of `track` at `frame`: linear between the bracketing keyframes, clamped outside them.

    Raises:
        EmptyTrack: The track has no keyframes.
    """
    keyframes = track.keyframes
    if not keyframes:
        raise EmptyTrack(f"track {track.object_id!r} has no keyframes")
    if frame <= keyframes[0].frame:
        return keyframes[0].box
    if frame >= keyframes[-1].frame:
        return keyframes[-1].box
    for before, after in zip(keyframes, keyframes[1:]):
        if before.frame <= frame <= after.frame:
            span, t = after.frame - before.frame, frame - before.frame
            return RoiBox(
                x=_lerp(before.x, after.x, t, span),
                y=_lerp(before.y, after.y, t, span),
                w=max(1, _lerp(before.w, after.w, t, span)),
                h=max(1, _lerp(before.h, after.h, t, span)),
            )
    raise AssertionError("unreachable: keyframes are sorted")


def boxes_at(
    timeline: RoiTimeline,
    frame: int,
    classes: Optional[AbstractSet[SensitivityClass]] = None,
) -> List[ClassedBox]:
    """Every track's box at `frame`, optionally restricted to `classes`. Tracks without keyframes are skipped."""
    out: List[ClassedBox] = []
    for track in timeline.tracks:
        if not track.keyframes:
            continue
        sensitivity = track.sensitivity_class
        if classes is not None and sensitivity not in classes:
            continue
        out.append((interpolate_box(track, frame), sensitivity))
    return out


def boxes_to_tile_classes(boxes: Sequence[ClassedBox], grid: TileGrid) -> List[int]:
    """
    Label every tile with the most important class whose (clipped) box overlaps it by at least one pixel; 0 if none does.
    """
    best_rank = [0] * grid.tile_count
    labels = [0] * grid.tile_count
    for box, sensitivity in boxes:
        clipped = box.clip(grid.width, grid.height)
        if clipped is None:
            continue
        x0, y0 = clipped.x, clipped.y
        x1, y1 = x0 + clipped.w, y0 + clipped.h
        for index in range(grid.tile_count):
            tx0, ty0, tx1, ty1 = grid.tile_rect(index)
            if x0 < tx1 and tx0 < x1 and y0 < ty1 and ty0 < y1:
                if sensitivity.importance_rank > best_rank[index]:
                    best_rank[index] = sensitivity.importance_rank
                    labels[index] = int(sensitivity)
    return labels


def tile_class_schedule(
    timeline: Optional[RoiTimeline], grid: TileGrid, frame_count: Optional[int] = None
) -> List[List[int]]:
    """Per-frame tile labels for `frame_count` frames (default: the timeline's). No timeline labels nothing."""
    if timeline is None:
        return [[0] * grid.tile_count for _ in range(frame_count or 0)]
    count = timeline.frame_count if frame_count is None else frame_count
    return [boxes_to_tile_classes(boxes_at(timeline, frame), grid) for frame in range(count)]


def roi_mask(
    boxes: Sequence[ClassedBox], width: int, height: int
) -> npt.NDArray[np.bool_]:
    """Union of the clipped boxes as a luma-sized boolean mask."""
    mask = np.zeros((height, width), dtype=bool)
    for box, _ in boxes:
        clipped = box.clip(width, height)
        if clipped is not None:
            mask[clipped.y : clipped.y + clipped.h, clipped.x : clipped.x + clipped.w] = True
    return mask

from typing import List, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from arhe_core.constants import TRACK_SEARCH_RADIUS
from arhe_core.errors import OutOfBounds
from .data import ClassName, Keyframe, RoiBox, RoiTrack

LumaPlane = npt.NDArray[np.uint8]

# ties resolve to smaller |dy|, then smaller |dx|, then negative displacement first
_CANDIDATES: Tuple[Tuple[int, int], ...] = tuple(
    sorted(
        (
            (dx, dy)
            for dy in range(-TRACK_SEARCH_RADIUS, TRACK_SEARCH_RADIUS + 1)
            for dx in range(-TRACK_SEARCH_RADIUS, TRACK_SEARCH_RADIUS + 1)
        ),
        key=lambda d: (abs(d[1]), abs(d[0]), d[1], d[0]),
    )
)


def _fits(box: RoiBox, plane: LumaPlane) -> bool:
    height, width = plane.shape
    return box.x >= 0 and box.y >= 0 and box.x + box.w <= width and box.y + box.h <= height


def _best_displacement(
    template: npt.NDArray[np.int32], plane: LumaPlane, box: RoiBox
) -> Tuple[int, int]:
    height, width = plane.shape
    best, best_sad = (0, 0), None
    for dx, dy in _CANDIDATES:
        x, y = box.x + dx, box.y + dy
        if x < 0 or y < 0 or x + box.w > width or y + box.h > height:
            continue
        window = plane[y : y + box.h, x : x + box.w].astype(np.int32)
        sad = int(np.abs(window - template).sum())
        if best_sad is None or sad < best_sad:
            best, best_sad = (dx, dy), sad
    return best


def track_box(
    frames: Sequence[LumaPlane],
    start_frame: int,
    init: RoiBox,
    end_frame: int,
    object_id: str = "tracked",
    sensitivity: ClassName = "face",
) -> RoiTrack:
    """
    Follow `init` from `start_frame` to `end_frame` (inclusive) by exhaustive SAD block matching.

    Each step compares the luma under the box in the previous frame against every
    displacement within +/-8 pixels in the next frame; the box keeps its size.

    Returns:
        A track with one keyframe per frame in [start_frame, end_frame].

    Raises:
        OutOfBounds: The initial box does not fit the frame, or the frame range is invalid.
    """
    if not 0 <= start_frame < end_frame < len(frames):
        raise OutOfBounds(
            f"frame range [{start_frame}, {end_frame}] invalid for {len(frames)} frames"
        )
    if not _fits(init, frames[start_frame]):
        raise OutOfBounds(f"initial box {init} exceeds the frame")
    box = init
    keyframes: List[Keyframe] = [Keyframe.at(start_frame, box)]
    for index in range(start_frame + 1, end_frame + 1):
        previous = frames[index - 1]
        template = previous[box.y : box.y + box.h, box.x : box.x + box.w].astype(np.int32)
        dx, dy = _best_displacement(template, frames[index], box)
        box = RoiBox(x=box.x + dx, y=box.y + dy, w=box.w, h=box.h)
        keyframes.append(Keyframe.at(index, box))
    return RoiTrack(object_id=object_id, sensitivity=sensitivity, keyframes=keyframes)

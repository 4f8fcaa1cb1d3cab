"""
Deterministic synthetic clips.

A smooth gradient background carries three textured objects: a moving "face"
and two static patches labeled display content and id card. The face bounces
off the frame edges, so consecutive positions are never more than one step
apart. The matching ROI timeline is returned with the frames, so every
sensitivity class has a non-empty region.
"""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
import numpy.typing as npt

from arhe_core.codec import FrameYUV
from arhe_core.errors import InvalidGrid
from arhe_core.roi import ClassName, Keyframe, RoiTimeline, RoiTrack

Plane = npt.NDArray[np.uint8]

# texture amplitude around the local background, plus a little grain so no two offsets look alike
TEXTURE_SPREAD = 24
TEXTURE_GRAIN = 2


@dataclass(frozen=True)
class FixtureObject:
    object_id: str
    sensitivity: ClassName
    x: int
    y: int
    w: int
    h: int
    moving: bool = False


def default_objects(width: int, height: int) -> Tuple[FixtureObject, ...]:
    """Object layout scaled from the 96x64 reference frame."""
    sx, sy = width / 96, height / 64
    return (
        FixtureObject("face-0", "face", round(8 * sx), round(8 * sy), round(16 * sx), round(16 * sy), moving=True),
        FixtureObject("screen-0", "display_content", round(56 * sx), round(36 * sy), round(16 * sx), round(12 * sy)),
        FixtureObject("card-0", "id_card", round(24 * sx), round(44 * sy), round(12 * sx), round(8 * sy)),
    )


def _gradient(width: int, height: int) -> Tuple[Plane, Plane, Plane]:
    x = np.arange(width)[None, :]
    y = np.arange(height)[:, None]
    luma = 96 + (40 * x) // width + (24 * y) // height
    shape = (height // 2, width // 2)
    u = np.broadcast_to(112 + (32 * np.arange(shape[1])) // shape[1], shape)
    v = np.broadcast_to((144 - (32 * np.arange(shape[0])) // shape[0])[:, None], shape)
    return luma.astype(np.uint8), u.astype(np.uint8), v.astype(np.uint8)


def gradient_frames(width: int, height: int, frames: int) -> List[FrameYUV]:
    """Smooth content only; identical frames."""
    y, u, v = _gradient(width, height)
    return [FrameYUV(y.copy(), u.copy(), v.copy()) for _ in range(frames)]


def _texture(rng: np.random.Generator, h: int, w: int, center: int) -> Plane:
    """Half a period of a cosine product with seeded phases around `center`: smooth, cheap to code, never flat."""
    phase_x, phase_y = rng.uniform(0.0, np.pi, size=2)
    x = np.cos(np.pi * (np.arange(w) + 0.5) / w + phase_x)[None, :]
    y = np.cos(np.pi * (np.arange(h) + 0.5) / h + phase_y)[:, None]
    grain = rng.integers(-TEXTURE_GRAIN, TEXTURE_GRAIN + 1, size=(h, w))
    return np.clip(np.rint(center + TEXTURE_SPREAD * x * y) + grain, 0, 255).astype(np.uint8)


def _bounce(start: int, step: int, index: int, span: int) -> int:
    """Coordinate after `index` steps, reflecting off 0 and `span`."""
    if span == 0:
        return 0
    offset = (start + step * index) % (2 * span)
    return offset if offset <= span else 2 * span - offset


def _position(obj: FixtureObject, index: int, motion: Tuple[int, int], width: int, height: int) -> Tuple[int, int]:
    if not obj.moving:
        return obj.x, obj.y
    dx, dy = motion
    return (
        _bounce(obj.x, dx, index, width - obj.w),
        _bounce(obj.y, dy, index, height - obj.h),
    )


def synthetic_clip(
    width: int = 96,
    height: int = 64,
    frames: int = 30,
    seed: int = 0,
    motion: Tuple[int, int] = (1, 0),
) -> Tuple[List[FrameYUV], RoiTimeline]:
    """
    Generate a textured clip and its ROI timeline.

    Args:
        width (int): Frame width; a positive multiple of 16.
        height (int): Frame height; a positive multiple of 16.
        frames (int): Number of frames.
        seed (int): Seed of the texture generator. Same seed, same bytes.
        motion (Tuple[int, int]): Per-frame displacement of the moving object.

    Returns:
        The frames and a timeline with one keyframe per frame for the moving object and a single keyframe for static ones.
    """
    if width <= 0 or height <= 0 or width % 16 or height % 16:
        raise InvalidGrid(f"fixture size {width}x{height} must be positive multiples of 16")
    rng = np.random.default_rng(seed)
    objects = default_objects(width, height)
    base_y, base_u, base_v = _gradient(width, height)
    # objects are drawn in luma only; chroma keeps the background gradient
    textures = [
        _texture(rng, o.h, o.w, int(base_y[o.y : o.y + o.h, o.x : o.x + o.w].mean().round()))
        for o in objects
    ]

    clip: List[FrameYUV] = []
    keyframes: List[List[Keyframe]] = [[] for _ in objects]
    # static objects first so the moving one is drawn on top
    order = sorted(range(len(objects)), key=lambda i: objects[i].moving)
    for index in range(frames):
        y = base_y.copy()
        for i in order:
            obj = objects[i]
            x0, y0 = _position(obj, index, motion, width, height)
            y[y0 : y0 + obj.h, x0 : x0 + obj.w] = textures[i]
            if obj.moving or index == 0:
                keyframes[i].append(Keyframe(frame=index, x=x0, y=y0, w=obj.w, h=obj.h))
        clip.append(FrameYUV(y, base_u.copy(), base_v.copy()))

    timeline = RoiTimeline(
        frame_count=frames,
        tracks=[
            RoiTrack(object_id=obj.object_id, sensitivity=obj.sensitivity, keyframes=keyframes[i])
            for i, obj in enumerate(objects)
        ],
    )
    return clip, timeline

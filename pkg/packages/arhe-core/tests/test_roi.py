from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

from arhe_core.codec import make_tile_grid
from arhe_core.errors import EmptyTrack, OutOfBounds, UnknownClass
from arhe_core.roi import (
    Keyframe,
    RoiBox,
    RoiTimeline,
    RoiTrack,
    SensitivityClass,
    boxes_at,
    boxes_to_tile_classes,
    interpolate_box,
    load_timeline,
    roi_mask,
    save_timeline,
    tile_class_schedule,
    track_box,
)


def _track(*keyframes: tuple, sensitivity: str = "face") -> RoiTrack:
    return RoiTrack(
        object_id="obj",
        sensitivity=sensitivity,
        keyframes=[Keyframe(frame=f, x=x, y=y, w=w, h=h) for f, x, y, w, h in keyframes],
    )


def test_sensitivity_class_parse() -> None:
    assert SensitivityClass.parse("face") is SensitivityClass.FACE
    assert SensitivityClass.parse("2") is SensitivityClass.DISPLAY_CONTENT
    assert SensitivityClass.parse(3) is SensitivityClass.ID_CARD
    assert SensitivityClass.ID_CARD.label == "id_card"
    assert SensitivityClass.FACE.importance_rank > SensitivityClass.DISPLAY_CONTENT.importance_rank
    assert SensitivityClass.DISPLAY_CONTENT.importance_rank > SensitivityClass.ID_CARD.importance_rank
    with pytest.raises(UnknownClass):
        SensitivityClass.parse("passport")
    with pytest.raises(UnknownClass):
        SensitivityClass.parse("0")


def test_interpolate_midpoint() -> None:
    track = _track((0, 10, 10, 20, 20), (10, 30, 10, 20, 20))
    assert interpolate_box(track, 5) == RoiBox(x=20, y=10, w=20, h=20)


def test_interpolate_rounds_half_up() -> None:
    track = _track((0, 0, 0, 10, 10), (3, 5, 0, 10, 10))
    assert interpolate_box(track, 1).x == 2
    assert interpolate_box(track, 2).x == 3


def test_interpolate_clamps() -> None:
    track = _track((4, 10, 10, 8, 8), (8, 20, 10, 8, 8))
    assert interpolate_box(track, 0) == RoiBox(x=10, y=10, w=8, h=8)
    assert interpolate_box(track, 50) == RoiBox(x=20, y=10, w=8, h=8)


def test_interpolate_empty_track() -> None:
    with pytest.raises(EmptyTrack):
        interpolate_box(_track(), 0)


def test_keyframes_must_increase() -> None:
    with pytest.raises(ValidationError):
        _track((3, 0, 0, 4, 4), (3, 1, 0, 4, 4))
    with pytest.raises(ValidationError):
        RoiTimeline(frame_count=3, tracks=[_track((3, 0, 0, 4, 4))])
    with pytest.raises(ValidationError):
        _track((0, 0, 0, 0, 4))


def test_box_to_tiles() -> None:
    grid = make_tile_grid(96, 64, 3, 2)
    face = SensitivityClass.FACE
    assert boxes_to_tile_classes([(RoiBox(x=30, y=10, w=10, h=10), face)], grid) == [1, 1, 0, 0, 0, 0]
    assert boxes_to_tile_classes([], grid) == [0] * 6
    overlapping = [
        (RoiBox(x=0, y=0, w=8, h=8), SensitivityClass.ID_CARD),
        (RoiBox(x=10, y=10, w=4, h=4), face),
        (RoiBox(x=40, y=40, w=4, h=4), SensitivityClass.ID_CARD),
        (RoiBox(x=44, y=40, w=4, h=4), SensitivityClass.DISPLAY_CONTENT),
    ]
    assert boxes_to_tile_classes(overlapping, grid) == [1, 0, 0, 0, 2, 0]


def test_box_outside_frame_is_ignored() -> None:
    grid = make_tile_grid(96, 64, 3, 2)
    outside = [(RoiBox(x=200, y=0, w=10, h=10), SensitivityClass.FACE)]
    assert boxes_to_tile_classes(outside, grid) == [0] * 6
    partial = [(RoiBox(x=-5, y=-5, w=10, h=10), SensitivityClass.FACE)]
    assert boxes_to_tile_classes(partial, grid) == [1, 0, 0, 0, 0, 0]
    assert RoiBox(x=-5, y=-5, w=10, h=10).clip(96, 64) == RoiBox(x=0, y=0, w=5, h=5)


def test_roi_mask_is_union() -> None:
    boxes = [
        (RoiBox(x=0, y=0, w=10, h=10), SensitivityClass.FACE),
        (RoiBox(x=5, y=5, w=10, h=10), SensitivityClass.ID_CARD),
    ]
    assert int(roi_mask(boxes, 32, 32).sum()) == 175


def test_boxes_at_and_schedule() -> None:
    timeline = RoiTimeline(
        frame_count=4,
        tracks=[
            _track((0, 0, 0, 16, 16), (3, 48, 0, 16, 16)),
            _track((0, 80, 48, 8, 8), sensitivity="id_card"),
            RoiTrack(object_id="empty", sensitivity="display_content"),
        ],
    )
    assert len(boxes_at(timeline, 0)) == 2
    assert boxes_at(timeline, 0, {SensitivityClass.ID_CARD}) == [
        (RoiBox(x=80, y=48, w=8, h=8), SensitivityClass.ID_CARD)
    ]
    grid = make_tile_grid(96, 64, 3, 2)
    schedule = tile_class_schedule(timeline, grid)
    assert len(schedule) == 4
    assert schedule[0] == [1, 0, 0, 0, 0, 3]
    assert schedule[3] == [0, 1, 0, 0, 0, 3]
    assert len(tile_class_schedule(timeline, grid, 6)) == 6
    assert tile_class_schedule(None, grid, 2) == [[0] * 6, [0] * 6]


def test_timeline_json(tmp_path: Path) -> None:
    timeline = RoiTimeline(frame_count=2, tracks=[_track((0, 1, 2, 3, 4), sensitivity="display_content")])
    assert '"class": "display_content"' in timeline.to_json()
    path = tmp_path / "roi.json"
    save_timeline(timeline, path)
    assert load_timeline(path) == timeline
    path.write_text('{"frame_count": 1, "tracks": [{"object_id": "a", "class": "hat", "keyframes": []}]}')
    with pytest.raises(ValidationError):
        load_timeline(path)


def _texture(rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, 256, size=(64, 96), dtype=np.uint8)


def test_track_static(rng: np.random.Generator) -> None:
    frame = _texture(rng)
    track = track_box([frame] * 5, 0, RoiBox(x=30, y=20, w=16, h=16), 4)
    assert [k.box for k in track.keyframes] == [RoiBox(x=30, y=20, w=16, h=16)] * 5
    assert [k.frame for k in track.keyframes] == [0, 1, 2, 3, 4]


def test_track_translation(rng: np.random.Generator) -> None:
    base = _texture(rng)
    frames = [np.roll(base, 3 * i, axis=1) for i in range(6)]
    track = track_box(frames, 0, RoiBox(x=20, y=24, w=16, h=16), 5, sensitivity="id_card")
    assert [k.x for k in track.keyframes] == [20 + 3 * i for i in range(6)]
    assert all(k.y == 24 for k in track.keyframes)
    assert track.sensitivity_class is SensitivityClass.ID_CARD


def test_track_flat_ties() -> None:
    flat = np.full((64, 96), 90, dtype=np.uint8)
    track = track_box([flat] * 3, 0, RoiBox(x=40, y=30, w=8, h=8), 2)
    assert all(k.box == RoiBox(x=40, y=30, w=8, h=8) for k in track.keyframes)


def test_track_out_of_bounds(rng: np.random.Generator) -> None:
    frames = [_texture(rng)] * 3
    with pytest.raises(OutOfBounds):
        track_box(frames, 0, RoiBox(x=90, y=0, w=16, h=16), 2)
    with pytest.raises(OutOfBounds):
        track_box(frames, 0, RoiBox(x=0, y=0, w=16, h=16), 3)

from .data import (
    ALL_CLASSES,
    CLASS_NAMES,
    ClassName,
    Keyframe,
    RoiBox,
    RoiTimeline,
    RoiTrack,
    SensitivityClass,
    load_timeline,
    save_timeline,
)
from .utils import (
    ClassedBox,
    boxes_at,
    boxes_to_tile_classes,
    interpolate_box,
    roi_mask,
    tile_class_schedule,
)
from .tracker import track_box

__all__ = [
    "ALL_CLASSES",
    "CLASS_NAMES",
    "ClassName",
    "ClassedBox",
    "Keyframe",
    "RoiBox",
    "RoiTimeline",
    "RoiTrack",
    "SensitivityClass",
    "boxes_at",
    "boxes_to_tile_classes",
    "interpolate_box",
    "load_timeline",
    "roi_mask",
    "save_timeline",
    "tile_class_schedule",
    "track_box",
]

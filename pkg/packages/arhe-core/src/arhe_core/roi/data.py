import json
import os
from enum import IntEnum
from typing import List, Literal, Optional, Tuple, Union, cast, get_args

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from arhe_core.errors import UnknownClass

# enum-like type for sensitivity class names as they appear in JSON files and on the command line
ClassName = Literal["face", "display_content", "id_card"]

CLASS_NAMES: Tuple[ClassName, ...] = cast(Tuple[ClassName, ...], get_args(ClassName))


class SensitivityClass(IntEnum):
    """Sensitive object categories. Values are the wire ids used in containers and key derivation."""

    FACE = 1
    DISPLAY_CONTENT = 2
    ID_CARD = 3

    @property
    def label(self) -> ClassName:
        return cast(ClassName, self.name.lower())

    @property
    def importance_rank(self) -> int:
        return _IMPORTANCE[self]

    @classmethod
    def parse(cls, value: Union[str, int, "SensitivityClass"]) -> "SensitivityClass":
        """Accept a class name ("face"), a wire id (1) or its decimal string ("1")."""
        if isinstance(value, SensitivityClass):
            return value
        if isinstance(value, str) and not value.isdigit():
            if value not in CLASS_NAMES:
                raise UnknownClass(
                    f"unknown sensitivity class {value!r} (expected one of {', '.join(CLASS_NAMES)})"
                )
            return cls[value.upper()]
        try:
            return cls(int(value))
        except ValueError:
            raise UnknownClass(f"unknown sensitivity class id {value!r}") from None


_IMPORTANCE = {
    SensitivityClass.FACE: 3,
    SensitivityClass.DISPLAY_CONTENT: 2,
    SensitivityClass.ID_CARD: 1,
}

ALL_CLASSES = frozenset(SensitivityClass)


class RoiBox(BaseModel):
    """Axis-aligned box in luma pixels."""

    model_config = ConfigDict(frozen=True)

    x: int = Field(description="Left edge")
    y: int = Field(description="Top edge")
    w: int = Field(ge=1, description="Width")
    h: int = Field(ge=1, description="Height")

    def clip(self, width: int, height: int) -> Optional["RoiBox"]:
        """Intersection with the frame, or None when the box lies outside it."""
        x0, y0 = max(self.x, 0), max(self.y, 0)
        x1, y1 = min(self.x + self.w, width), min(self.y + self.h, height)
        if x1 <= x0 or y1 <= y0:
            return None
        return RoiBox(x=x0, y=y0, w=x1 - x0, h=y1 - y0)


class Keyframe(BaseModel):
    frame: int = Field(ge=0, description="Frame index")
    x: int
    y: int
    w: int = Field(ge=1)
    h: int = Field(ge=1)

    @property
    def box(self) -> RoiBox:
        return RoiBox(x=self.x, y=self.y, w=self.w, h=self.h)

    @classmethod
    def at(cls, frame: int, box: RoiBox) -> "Keyframe":
        return cls(frame=frame, x=box.x, y=box.y, w=box.w, h=box.h)


class RoiTrack(BaseModel):
    """One object: its sensitivity class and keyframed boxes."""

    model_config = ConfigDict(populate_by_name=True)

    object_id: str
    sensitivity: ClassName = Field(alias="class")
    keyframes: List[Keyframe] = Field(default_factory=list)

    @field_validator("keyframes")
    @classmethod
    def _strictly_increasing(cls, keyframes: List[Keyframe]) -> List[Keyframe]:
        for before, after in zip(keyframes, keyframes[1:]):
            if after.frame <= before.frame:
                raise ValueError(
                    f"keyframe indices must be strictly increasing ({before.frame} then {after.frame})"
                )
        return keyframes

    @property
    def sensitivity_class(self) -> SensitivityClass:
        return SensitivityClass.parse(self.sensitivity)


class RoiTimeline(BaseModel):
    frame_count: int = Field(ge=0)
    tracks: List[RoiTrack] = Field(default_factory=list)

    @model_validator(mode="after")
    def _keyframes_in_range(self) -> "RoiTimeline":
        for track in self.tracks:
            for keyframe in track.keyframes:
                if keyframe.frame >= self.frame_count:
                    raise ValueError(
                        f"track {track.object_id!r} has keyframe {keyframe.frame} beyond frame_count {self.frame_count}"
                    )
        return self

    def to_json(self) -> str:
        return json.dumps(self.model_dump(by_alias=True), indent=2)


def load_timeline(path: Union[str, os.PathLike[str]]) -> RoiTimeline:
    with open(path) as f:
        return RoiTimeline.model_validate_json(f.read())


def save_timeline(timeline: RoiTimeline, path: Union[str, os.PathLike[str]]) -> None:
    with open(path, "w") as w:
        w.write(timeline.to_json() + "\n")

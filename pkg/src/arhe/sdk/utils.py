import sys
from typing import FrozenSet, Tuple

from arhe_core.roi import SensitivityClass


def print_verbose(content: str, verbose: bool) -> None:
    if verbose:
        print(content, file=sys.stderr)


def parse_pair(text: str, separator: str = "x") -> Tuple[int, int]:
    """'16x12' -> (16, 12); '3,0' -> (3, 0) with separator ','."""
    parts = text.split(separator)
    if len(parts) != 2:
        raise ValueError(f"expected two integers separated by {separator!r}, got {text!r}")
    return int(parts[0]), int(parts[1])


def parse_box(text: str) -> Tuple[int, int, int, int]:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError(f"expected x,y,w,h, got {text!r}")
    x, y, w, h = (int(p) for p in parts)
    return x, y, w, h


def parse_classes(text: str) -> FrozenSet[SensitivityClass]:
    """Comma-separated class names or ids; an empty string selects no class."""
    return frozenset(
        SensitivityClass.parse(item.strip()) for item in text.split(",") if item.strip()
    )

import math
from typing import AbstractSet, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from arhe_core.codec import FrameYUV, TileGrid
from arhe_core.errors import DimensionMismatch, NoRegion
from arhe_core.roi import SensitivityClass

PEAK = 255.0


def psnr_from_mse(mse: float) -> float:
    if mse == 0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / mse)


def squared_error(
    ref_plane: npt.ArrayLike,
    test_plane: npt.ArrayLike,
    mask: "npt.NDArray[np.bool_] | None" = None,
) -> Tuple[int, int]:
    """(sum of squared differences, sample count), optionally restricted to `mask`."""
    ref = np.asarray(ref_plane, dtype=np.int64)
    test = np.asarray(test_plane, dtype=np.int64)
    if ref.shape != test.shape:
        raise DimensionMismatch(f"planes differ in shape: {ref.shape} vs {test.shape}")
    diff = ref - test
    if mask is not None:
        if mask.shape != ref.shape:
            raise DimensionMismatch(f"mask {mask.shape} does not match planes {ref.shape}")
        diff = diff[mask]
    return int((diff * diff).sum()), int(diff.size)


def psnr(ref_plane: npt.ArrayLike, test_plane: npt.ArrayLike) -> float:
    """10 * log10(255^2 / MSE); math.inf for identical planes."""
    sse, count = squared_error(ref_plane, test_plane)
    return psnr_from_mse(sse / count) if count else math.inf


def region_mask(
    tile_labels: Sequence[int], grid: TileGrid, classes: AbstractSet[SensitivityClass]
) -> npt.NDArray[np.bool_]:
    """Luma mask of the tiles whose label is one of `classes`."""
    if len(tile_labels) != grid.tile_count:
        raise DimensionMismatch(f"{len(tile_labels)} labels for {grid.tile_count} tiles")
    wanted = {int(c) for c in classes}
    mask = np.zeros((grid.height, grid.width), dtype=bool)
    for index, label in enumerate(tile_labels):
        if label in wanted:
            x0, y0, x1, y1 = grid.tile_rect(index)
            mask[y0:y1, x0:x1] = True
    return mask


def psnr_region(
    ref_frame: FrameYUV,
    test_frame: FrameYUV,
    tile_labels: Sequence[int],
    grid: TileGrid,
    classes: AbstractSet[SensitivityClass],
) -> float:
    """
    Luma PSNR over the tiles labeled with one of `classes`.

    Raises:
        NoRegion: No tile carries one of the requested labels.
        DimensionMismatch: Frames or labels do not match the grid.
    """
    mask = region_mask(tile_labels, grid, classes)
    if not mask.any():
        raise NoRegion("no tile is labeled with the requested classes")
    sse, count = squared_error(ref_frame.y, test_frame.y, mask)
    return psnr_from_mse(sse / count)

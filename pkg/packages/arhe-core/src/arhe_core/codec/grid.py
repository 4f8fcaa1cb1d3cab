from dataclasses import dataclass
from typing import Tuple

from arhe_core.constants import DEFAULT_TILE_COLS, DEFAULT_TILE_ROWS, MACROBLOCK
from arhe_core.errors import InvalidGrid


@dataclass(frozen=True)
class TileGrid:
    """
    Uniform tile partition of a frame, in luma pixels.

    Attributes:
        cols (int): Number of tile columns.
        rows (int): Number of tile rows.
        col_bounds (Tuple[int, ...]): cols + 1 x-offsets, multiples of 16, from 0 to width.
        row_bounds (Tuple[int, ...]): rows + 1 y-offsets, multiples of 16, from 0 to height.
    """

    cols: int
    rows: int
    col_bounds: Tuple[int, ...]
    row_bounds: Tuple[int, ...]

    @property
    def width(self) -> int:
        return self.col_bounds[-1]

    @property
    def height(self) -> int:
        return self.row_bounds[-1]

    @property
    def tile_count(self) -> int:
        return self.cols * self.rows

    def tile_rect(self, index: int) -> Tuple[int, int, int, int]:
        """(x0, y0, x1, y1) of tile `index` in raster order."""
        row, col = divmod(index, self.cols)
        return (
            self.col_bounds[col],
            self.row_bounds[row],
            self.col_bounds[col + 1],
            self.row_bounds[row + 1],
        )


def _bounds(extent: int, parts: int) -> Tuple[int, ...]:
    units = extent // MACROBLOCK
    return tuple((i * units) // parts * MACROBLOCK for i in range(parts + 1))


def make_tile_grid(width: int, height: int, cols: int, rows: int) -> TileGrid:
    if width <= 0 or height <= 0 or width % MACROBLOCK or height % MACROBLOCK:
        raise InvalidGrid(
            f"frame {width}x{height} must have dimensions that are positive multiples of {MACROBLOCK}"
        )
    if not 1 <= cols <= width // MACROBLOCK:
        raise InvalidGrid(f"{cols} tile columns do not fit {width} pixels (max {width // MACROBLOCK})")
    if not 1 <= rows <= height // MACROBLOCK:
        raise InvalidGrid(f"{rows} tile rows do not fit {height} pixels (max {height // MACROBLOCK})")
    return TileGrid(cols, rows, _bounds(width, cols), _bounds(height, rows))


def default_grid_dims(width: int, height: int) -> Tuple[int, int]:
    """The 16x12 operating point, capped to what the frame admits."""
    return (
        max(1, min(DEFAULT_TILE_COLS, width // MACROBLOCK)),
        max(1, min(DEFAULT_TILE_ROWS, height // MACROBLOCK)),
    )

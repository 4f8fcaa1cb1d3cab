from typing import List

import numpy as np
import pytest

from arhe_core.bitstream import Container, ContainerHeader
from arhe_core.codec import FrameYUV, QuantParams, encode_frame, make_tile_grid


def textured_frame(rng: np.random.Generator, width: int, height: int) -> FrameYUV:
    return FrameYUV(
        rng.integers(0, 256, size=(height, width), dtype=np.uint8),
        rng.integers(0, 256, size=(height // 2, width // 2), dtype=np.uint8),
        rng.integers(0, 256, size=(height // 2, width // 2), dtype=np.uint8),
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def textured_frames(rng: np.random.Generator) -> List[FrameYUV]:
    return [textured_frame(rng, 96, 64) for _ in range(3)]


@pytest.fixture
def labeled_container(textured_frames: List[FrameYUV]) -> Container:
    """96x64 clip on a 6x4 grid: tile 0 face, tiles 1 and 7 display content, tile 2 id card."""
    grid = make_tile_grid(96, 64, 6, 4)
    labels = [0] * grid.tile_count
    labels[0], labels[1], labels[7], labels[2] = 1, 2, 2, 3
    header = ContainerHeader(
        width=96,
        height=64,
        fps=30,
        qp=32,
        tile_cols=6,
        tile_rows=4,
        frame_count=len(textured_frames),
        salt=7,
    )
    q = QuantParams(32)
    return Container(
        header=header,
        frames=[encode_frame(frame, grid, q, labels) for frame in textured_frames],
    )

import asyncio
import os
from typing import (
    AbstractSet,
    Any,
    Awaitable,
    Callable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    TypeVar,
)

from arhe_core.bitstream import Container, ContainerHeader, TileRecord
from arhe_core.codec import (
    FrameYUV,
    QuantParams,
    TileGrid,
    TilePlanes,
    decode_tile_at,
    encode_tile_at,
    grid_for,
    paste_tiles,
)
from arhe_core.crypt import (
    ClassKey,
    KeyBundle,
    MasterKey,
    encryption_keys,
    key_for_record,
    scramble_record,
)
from arhe_core.errors import DimensionMismatch
from arhe_core.roi import SensitivityClass
from .errors import InvalidThreadCountError
from .utils import print_verbose

T = TypeVar("T")


class ArhePipeline:
    """
    ArhePipeline runs the encode, encrypt, decrypt and decode stages with per-tile work fanned out to worker threads.

    Tiles never share state, so results are gathered back in raster order and every
    output is byte-identical to a sequential run, whatever the thread count.

    Attributes:
        threads (int): Maximum number of tiles processed at once.
        verbose (bool): Print progress lines to stderr.
    """

    def __init__(self, threads: Optional[int] = None, verbose: bool = False) -> None:
        """
        Initialize ArhePipeline.

        Args:
            threads (Optional[int]): Worker cap. Defaults to the number of CPUs.
            verbose (bool): Print progress lines to stderr.
        """
        if threads is not None and threads < 1:
            raise InvalidThreadCountError(f"threads must be a positive integer, got {threads}")
        self.threads = threads or os.cpu_count() or 1
        self.verbose = verbose

    async def _map(self, fn: Callable[..., T], jobs: Sequence[Tuple[Any, ...]]) -> List[T]:
        semaphore = asyncio.Semaphore(self.threads)

        async def run(job: Tuple[Any, ...]) -> T:
            async with semaphore:
                return await asyncio.to_thread(fn, *job)

        tasks: List[Awaitable[T]] = [run(job) for job in jobs]
        return list(await asyncio.gather(*tasks))

    async def encode(
        self,
        frames: Sequence[FrameYUV],
        qp: int,
        grid: TileGrid,
        labels: Optional[Sequence[Sequence[int]]] = None,
        fps: int = 30,
        salt: int = 0,
    ) -> Container:
        """
        Encode a clip into a container.

        Args:
            frames (Sequence[FrameYUV]): Source frames, all matching the grid size.
            qp (int): Quantization parameter in [0, 51].
            grid (TileGrid): Tile partition used for every frame.
            labels (Optional[Sequence[Sequence[int]]]): Per-frame tile class ids. Defaults to no labels.
            fps (int): Frame rate stored in the header.
            salt (int): Nonce salt stored in the header.
        """
        header = ContainerHeader(
            width=grid.width,
            height=grid.height,
            fps=fps,
            qp=qp,
            tile_cols=grid.cols,
            tile_rows=grid.rows,
            frame_count=len(frames),
            salt=salt,
        )
        header.validate()
        if labels is None:
            labels = [[0] * grid.tile_count for _ in frames]
        if len(labels) != len(frames):
            raise DimensionMismatch(f"{len(labels)} label rows for {len(frames)} frames")
        q = QuantParams(qp)
        jobs: List[Tuple[Any, ...]] = []
        for frame_index, frame in enumerate(frames):
            if (frame.width, frame.height) != (grid.width, grid.height):
                raise DimensionMismatch(
                    f"frame {frame_index} is {frame.width}x{frame.height}, grid is {grid.width}x{grid.height}"
                )
            if len(labels[frame_index]) != grid.tile_count:
                raise DimensionMismatch(
                    f"frame {frame_index} has {len(labels[frame_index])} labels for {grid.tile_count} tiles"
                )
            jobs.extend(
                (frame, grid, tile, q, labels[frame_index][tile])
                for tile in range(grid.tile_count)
            )
        print_verbose(
            f"Encoding {len(frames)} frames x {grid.tile_count} tiles on {self.threads} threads",
            self.verbose,
        )
        records: List[TileRecord] = await self._map(encode_tile_at, jobs)
        return Container(header=header, frames=self._split(records, grid.tile_count))

    async def encrypt(
        self,
        container: Container,
        classes_to_encrypt: AbstractSet[SensitivityClass],
        master: MasterKey,
    ) -> Container:
        """Scramble every tile labeled with one of `classes_to_encrypt` under its class key."""
        return await self._apply(container, encryption_keys(classes_to_encrypt, master))

    async def decrypt(self, container: Container, bundle: KeyBundle) -> Container:
        """Unscramble the tiles whose class key is in `bundle`; others pass through unchanged."""
        return await self._apply(container, bundle.keys)

    async def decode(self, container: Container) -> List[FrameYUV]:
        header = container.header
        grid = grid_for(header)
        q = QuantParams(header.qp)
        jobs = [
            (record, grid, tile, q)
            for records in container.frames
            for tile, record in enumerate(records)
        ]
        print_verbose(f"Decoding {len(container.frames)} frames", self.verbose)
        tiles: List[TilePlanes] = await self._map(decode_tile_at, jobs)
        return [paste_tiles(grid, frame) for frame in self._split(tiles, grid.tile_count)]

    async def _apply(
        self, container: Container, keys: Mapping[SensitivityClass, ClassKey]
    ) -> Container:
        header = container.header
        grid = grid_for(header)
        jobs: List[Tuple[Any, ...]] = []
        for frame_index, records in enumerate(container.frames):
            for tile_index, record in enumerate(records):
                jobs.append((record, header, grid, frame_index, tile_index, keys))
        print_verbose(
            f"Scrambling tiles of classes {sorted(int(c) for c in keys)}", self.verbose
        )
        out: List[TileRecord] = await self._map(_scramble_if_keyed, jobs)
        return Container(header=header, frames=self._split(out, grid.tile_count))

    @staticmethod
    def _split(items: List[T], size: int) -> List[List[T]]:
        return [items[i : i + size] for i in range(0, len(items), size)]


def _scramble_if_keyed(
    record: TileRecord,
    header: ContainerHeader,
    grid: TileGrid,
    frame_index: int,
    tile_index: int,
    keys: Mapping[SensitivityClass, ClassKey],
) -> TileRecord:
    key = key_for_record(record, keys)
    if key is None:
        return record
    return scramble_record(record, header, grid, frame_index, tile_index, key)

from typing import AbstractSet, Callable, List, Mapping, Optional

from arhe_core.bitstream import Container, ContainerHeader, TileRecord
from arhe_core.codec import TileGrid, block_count, grid_for
from arhe_core.roi import SensitivityClass
from .keys import ClassKey, KeyBundle, MasterKey, derive_class_key
from .keystream import NonceLayout, keystream
from .scramble import keystream_budget, scramble_payload

KeyLookup = Callable[[SensitivityClass], Optional[ClassKey]]


def tile_nonce(header: ContainerHeader, frame_index: int, tile_index: int) -> NonceLayout:
    return NonceLayout(header.salt, frame_index, tile_index)


def scramble_record(
    record: TileRecord,
    header: ContainerHeader,
    grid: TileGrid,
    frame_index: int,
    tile_index: int,
    key: ClassKey,
) -> TileRecord:
    """Scramble the levels of one tile under `key` and this tile's nonce."""
    x0, y0, x1, y1 = grid.tile_rect(tile_index)
    blocks = block_count(x1 - x0, y1 - y0)
    # ChaCha20 output is prefix-stable, so the worst-case length yields the same masks
    ks = keystream(key, tile_nonce(header, frame_index, tile_index), keystream_budget(blocks))
    payload, bit_length = scramble_payload(
        record.payload, record.payload_bit_length, blocks, ks
    )
    return TileRecord(record.class_id, bit_length, payload)


def key_for_record(record: TileRecord, keys: Mapping[SensitivityClass, ClassKey]) -> Optional[ClassKey]:
    if record.class_id == 0:
        return None
    return keys.get(SensitivityClass(record.class_id))


def apply_keys(container: Container, keys: Mapping[SensitivityClass, ClassKey]) -> Container:
    """Scramble (or, being an involution, unscramble) every tile whose class has a key in `keys`."""
    grid = grid_for(container.header)
    frames: List[List[TileRecord]] = []
    for frame_index, records in enumerate(container.frames):
        out: List[TileRecord] = []
        for tile_index, record in enumerate(records):
            key = key_for_record(record, keys)
            if key is None:
                out.append(record)
            else:
                out.append(
                    scramble_record(record, container.header, grid, frame_index, tile_index, key)
                )
        frames.append(out)
    return Container(header=container.header, frames=frames)


def encryption_keys(
    classes_to_encrypt: AbstractSet[SensitivityClass], master: MasterKey
) -> Mapping[SensitivityClass, ClassKey]:
    return {
        sensitivity: derive_class_key(master, sensitivity)
        for sensitivity in sorted(classes_to_encrypt)
    }


def encrypt_stream(
    container: Container,
    classes_to_encrypt: AbstractSet[SensitivityClass],
    master: MasterKey,
) -> Container:
    return apply_keys(container, encryption_keys(classes_to_encrypt, master))


def decrypt_stream(container: Container, bundle: KeyBundle) -> Container:
    """Unscramble the tiles the bundle has keys for; other tiles pass through unchanged."""
    return apply_keys(container, bundle.keys)

import struct
from dataclasses import dataclass

from cryptography.hazmat.primitives.ciphers import Cipher, algorithms

from .keys import ClassKey

_NONCE = struct.Struct(">III")


@dataclass(frozen=True)
class NonceLayout:
    """Per-tile nonce: big-endian salt || frame index || tile index (12 bytes)."""

    salt: int
    frame_index: int
    tile_index: int

    def to_bytes(self) -> bytes:
        return _NONCE.pack(self.salt, self.frame_index, self.tile_index)


def chacha20_keystream(key: bytes, nonce: bytes, length: int, counter: int = 0) -> bytes:
    """RFC 8439 ChaCha20 keystream for a 32-byte key, 12-byte nonce and initial block counter."""
    if length == 0:
        return b""
    # the backend takes the 32-bit little-endian block counter followed by the nonce
    full_nonce = struct.pack("<I", counter) + nonce
    encryptor = Cipher(algorithms.ChaCha20(key, full_nonce), mode=None).encryptor()
    return encryptor.update(bytes(length))


def keystream(key: ClassKey, nonce: NonceLayout, length: int) -> bytes:
    return chacha20_keystream(key.key, nonce.to_bytes(), length)

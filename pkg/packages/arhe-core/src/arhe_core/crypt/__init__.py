from .keys import (
    KEY_SIZE,
    ClassKey,
    KeyBundle,
    MasterKey,
    derive_class_key,
    format_key_file,
    hkdf_sha256,
    load_key_file,
    parse_hex_key,
    parse_key_file,
)
from .keystream import NonceLayout, chacha20_keystream, keystream
from .scramble import element_count, keystream_budget, scramble_payload, scramble_tile
from .stream import (
    apply_keys,
    decrypt_stream,
    encrypt_stream,
    encryption_keys,
    key_for_record,
    scramble_record,
    tile_nonce,
)
from .cost import CostMode, cipher_cost

__all__ = [
    "KEY_SIZE",
    "ClassKey",
    "CostMode",
    "KeyBundle",
    "MasterKey",
    "NonceLayout",
    "apply_keys",
    "chacha20_keystream",
    "cipher_cost",
    "decrypt_stream",
    "derive_class_key",
    "element_count",
    "encrypt_stream",
    "encryption_keys",
    "format_key_file",
    "hkdf_sha256",
    "key_for_record",
    "keystream_budget",
    "keystream",
    "load_key_file",
    "parse_hex_key",
    "parse_key_file",
    "scramble_payload",
    "scramble_record",
    "scramble_tile",
    "tile_nonce",
]

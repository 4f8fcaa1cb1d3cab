import os
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from cryptography.hazmat.primitives import hashes
from cryptography.hazmat.primitives.kdf.hkdf import HKDF

from arhe_core.constants import KDF_INFO_PREFIX, KEY_FILE_HEADER
from arhe_core.errors import InvalidKey, InvalidKeyFile, UnknownClass
from arhe_core.roi import SensitivityClass

KEY_SIZE = 32
_HEX_KEY = re.compile(r"[0-9a-f]{64}")


def _check_key(material: bytes) -> bytes:
    if len(material) != KEY_SIZE:
        raise InvalidKey(f"keys are {KEY_SIZE} bytes, got {len(material)}")
    return bytes(material)


def parse_hex_key(text: str) -> bytes:
    if not _HEX_KEY.fullmatch(text):
        raise InvalidKey("keys must be exactly 64 lowercase hex characters")
    return bytes.fromhex(text)


@dataclass(frozen=True)
class MasterKey:
    key: bytes

    def __post_init__(self) -> None:
        _check_key(self.key)

    @classmethod
    def from_hex(cls, text: str) -> "MasterKey":
        return cls(parse_hex_key(text))

    def hex(self) -> str:
        return self.key.hex()


@dataclass(frozen=True)
class ClassKey:
    sensitivity: SensitivityClass
    key: bytes

    def __post_init__(self) -> None:
        _check_key(self.key)

    def hex(self) -> str:
        return self.key.hex()


@dataclass(frozen=True)
class KeyBundle:
    """The class keys a device holds; at most one per class."""

    keys: Mapping[SensitivityClass, ClassKey] = field(default_factory=dict)

    @classmethod
    def of(cls, keys: Iterable[ClassKey]) -> "KeyBundle":
        collected: Dict[SensitivityClass, ClassKey] = {}
        for class_key in keys:
            if class_key.sensitivity in collected:
                raise InvalidKey(f"two keys for class {class_key.sensitivity.label}")
            collected[class_key.sensitivity] = class_key
        return cls(collected)

    @property
    def classes(self) -> frozenset[SensitivityClass]:
        return frozenset(self.keys)

    def get(self, sensitivity: SensitivityClass) -> Optional[ClassKey]:
        return self.keys.get(sensitivity)


def hkdf_sha256(ikm: bytes, salt: Optional[bytes], info: bytes, length: int) -> bytes:
    """RFC 5869 HKDF with SHA-256. A missing salt means HashLen zero bytes."""
    return HKDF(algorithm=hashes.SHA256(), length=length, salt=salt, info=info).derive(ikm)


def derive_class_key(master: MasterKey, sensitivity: SensitivityClass) -> ClassKey:
    info = f"{KDF_INFO_PREFIX}{int(sensitivity)}".encode("ascii")
    return ClassKey(sensitivity, hkdf_sha256(master.key, None, info, KEY_SIZE))


def format_key_file(
    bundle: KeyBundle, master: Optional[MasterKey] = None, tier: Optional[str] = None
) -> str:
    """
    Render keys in the key file grammar:

        # arhe keys v1[ tier=<name>]
        [master:<64 hex>]
        class:<id>:<64 hex>     (ascending class id)
    """
    lines = [KEY_FILE_HEADER + (f" tier={tier}" if tier else "")]
    if master is not None:
        lines.append(f"master:{master.hex()}")
    for sensitivity in sorted(bundle.keys):
        lines.append(f"class:{int(sensitivity)}:{bundle.keys[sensitivity].hex()}")
    return "\n".join(lines) + "\n"


def parse_key_file(text: str) -> Tuple[Optional[MasterKey], KeyBundle]:
    master: Optional[MasterKey] = None
    class_keys: List[ClassKey] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(":")
        try:
            if parts[0] == "master" and len(parts) == 2:
                if master is not None:
                    raise InvalidKeyFile(f"line {number}: second master key")
                master = MasterKey.from_hex(parts[1])
            elif parts[0] == "class" and len(parts) == 3:
                sensitivity = SensitivityClass.parse(parts[1])
                class_keys.append(ClassKey(sensitivity, parse_hex_key(parts[2])))
            else:
                raise InvalidKeyFile(f"line {number}: expected 'master:<hex>' or 'class:<id>:<hex>'")
        except (InvalidKey, UnknownClass) as e:
            raise InvalidKeyFile(f"line {number}: {e}") from e
    try:
        bundle = KeyBundle.of(class_keys)
    except InvalidKey as e:
        raise InvalidKeyFile(str(e)) from e
    return master, bundle


def load_key_file(
    path: Union[str, os.PathLike[str]],
) -> Tuple[Optional[MasterKey], KeyBundle]:
    with open(path) as f:
        return parse_key_file(f.read())

from .cursor import (
    BitCursor,
    code_to_se,
    read_se,
    read_ue,
    se_to_code,
    write_se,
    write_ue,
)
from .container import (
    CLASS_IDS,
    Container,
    ContainerHeader,
    TileRecord,
    parse_container,
    serialize_container,
)

__all__ = [
    "BitCursor",
    "CLASS_IDS",
    "Container",
    "ContainerHeader",
    "TileRecord",
    "code_to_se",
    "parse_container",
    "read_se",
    "read_ue",
    "se_to_code",
    "serialize_container",
    "write_se",
    "write_ue",
]

from .base import ArhePipeline
from .errors import InvalidThreadCountError, NoDeviceSelectedError
from .utils import parse_box, parse_classes, parse_pair, print_verbose

__all__ = [
    "ArhePipeline",
    "InvalidThreadCountError",
    "NoDeviceSelectedError",
    "parse_box",
    "parse_classes",
    "parse_pair",
    "print_verbose",
]

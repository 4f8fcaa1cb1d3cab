import math
from dataclasses import dataclass
from typing import Union

import numpy as np
import numpy.typing as npt

from arhe_core.constants import MAX_QP
from arhe_core.errors import InvalidHeader

Levels = Union[int, npt.NDArray[np.int64]]


@dataclass(frozen=True)
class QuantParams:
    qp: int

    def __post_init__(self) -> None:
        if not 0 <= self.qp <= MAX_QP:
            raise InvalidHeader(f"qp {self.qp} outside [0, {MAX_QP}]")

    @property
    def qstep(self) -> int:
        # step doubles every 6 qp, rounded half up
        return max(1, math.floor(2 ** (self.qp / 6) + 0.5))


def quantize(coeff: Levels, q: QuantParams) -> Levels:
    """Dead-zone quantizer: sign(c) * floor(|c| / qstep)."""
    if isinstance(coeff, np.ndarray):
        return np.sign(coeff) * (np.abs(coeff) // q.qstep)
    return (1 if coeff > 0 else -1) * (abs(coeff) // q.qstep)


def dequantize(level: Levels, q: QuantParams) -> Levels:
    """Bin-center reconstruction: 0 -> 0, else sign(l) * (|l| * qstep + qstep // 2)."""
    half = q.qstep // 2
    if isinstance(level, np.ndarray):
        return np.where(
            level == 0, 0, np.sign(level) * (np.abs(level) * q.qstep + half)
        ).astype(np.int64)
    if level == 0:
        return 0
    return (1 if level > 0 else -1) * (abs(level) * q.qstep + half)

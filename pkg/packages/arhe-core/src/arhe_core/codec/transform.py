from typing import List, Tuple

import numpy as np
import numpy.typing as npt

from arhe_core.constants import BLOCK

IntBlock = npt.NDArray[np.int64]


def _sequency_hadamard(size: int = BLOCK) -> IntBlock:
    """Sylvester Hadamard matrix with rows sorted by number of sign changes."""
    h = np.array([[1]], dtype=np.int64)
    while h.shape[0] < size:
        h = np.block([[h, h], [h, -h]])
    sign_changes = (np.diff(h, axis=1) != 0).sum(axis=1)
    return np.ascontiguousarray(h[np.argsort(sign_changes, kind="stable")])


def _zigzag_order(size: int = BLOCK) -> List[Tuple[int, int]]:
    order: List[Tuple[int, int]] = []
    for diagonal in range(2 * size - 1):
        rows = list(range(max(0, diagonal - size + 1), min(diagonal, size - 1) + 1))
        if diagonal % 2 == 0:
            rows.reverse()
        order.extend((row, diagonal - row) for row in rows)
    return order


HADAMARD = _sequency_hadamard()
ZIGZAG: Tuple[Tuple[int, int], ...] = tuple(_zigzag_order())
_ZIGZAG_FLAT = np.array([row * BLOCK + col for row, col in ZIGZAG], dtype=np.intp)


def fwht8_forward(block: npt.ArrayLike) -> IntBlock:
    """H * X * H^T over an 8x8 residual block."""
    x = np.asarray(block, dtype=np.int64)
    return HADAMARD @ x @ HADAMARD.T


def fwht8_inverse(coeffs: npt.ArrayLike) -> IntBlock:
    """
    H^T * Y * H / 64, rounding half up.

    The division is exact for anything fwht8_forward produced; dequantized or
    scrambled coefficients are rounded so decoding never fails.
    """
    y = np.asarray(coeffs, dtype=np.int64)
    return (HADAMARD.T @ y @ HADAMARD + 32) // 64


def zigzag_scan(block: npt.ArrayLike) -> npt.NDArray[np.int64]:
    return np.asarray(block, dtype=np.int64).reshape(BLOCK * BLOCK)[_ZIGZAG_FLAT]


def inverse_zigzag(vector: npt.ArrayLike) -> IntBlock:
    out = np.zeros(BLOCK * BLOCK, dtype=np.int64)
    out[_ZIGZAG_FLAT] = np.asarray(vector, dtype=np.int64)
    return out.reshape(BLOCK, BLOCK)

from typing import Optional, Union

from bitarray import bitarray
from bitarray.util import ba2int, int2ba

from arhe_core.errors import TruncatedStream

ENDIANNESS = "big"


class BitCursor:
    """
    MSB-first bit cursor over a bitarray, used both for writing and for reading exp-Golomb coded syntax.

    Attributes:
        bits (bitarray): Valid bits of the stream. `to_bytes` zero-pads the final partial byte.
        position (int): Number of bits consumed (reading) or emitted (writing).
    """

    def __init__(
        self,
        data: Union[bytes, bytearray, None] = None,
        bit_length: Optional[int] = None,
    ) -> None:
        self.bits = bitarray(endian=ENDIANNESS)
        self.bits.frombytes(bytes(data or b""))
        self.position = 0
        if bit_length is not None:
            if bit_length > len(self.bits):
                raise TruncatedStream(
                    f"declared {bit_length} bits but only {len(self.bits)} are present"
                )
            del self.bits[bit_length:]

    @property
    def limit(self) -> int:
        """Number of valid bits. Reads past it raise TruncatedStream."""
        return len(self.bits)

    @property
    def remaining(self) -> int:
        return len(self.bits) - self.position

    def write_bit(self, bit: int) -> None:
        self.write_bits(1 if bit else 0, 1)

    def write_bits(self, value: int, count: int) -> None:
        if count == 0:
            return
        end = self.position + count
        self.bits[self.position : end] = int2ba(value, length=count, endian=ENDIANNESS)
        self.position = end

    def read_bit(self) -> int:
        if self.position >= len(self.bits):
            raise TruncatedStream(f"bit {self.position} requested, stream ends at {len(self.bits)}")
        bit = self.bits[self.position]
        self.position += 1
        return bit

    def read_bits(self, count: int) -> int:
        if count == 0:
            return 0
        end = self.position + count
        if end > len(self.bits):
            raise TruncatedStream(
                f"bits {self.position}..{end} requested, stream ends at {len(self.bits)}"
            )
        value = ba2int(self.bits[self.position : end])
        self.position = end
        return value

    def write_code(self, code_number: int) -> None:
        """Emit the exp-Golomb codeword of a non-negative code number."""
        code = code_number + 1
        self.write_bits(code, 2 * code.bit_length() - 1)

    def read_code(self) -> int:
        """Consume one exp-Golomb codeword and return its code number."""
        try:
            first_one = self.bits.index(1, self.position)
        except ValueError:
            raise TruncatedStream(
                f"exp-Golomb prefix starting at bit {self.position} never terminates"
            ) from None
        end = 2 * first_one - self.position + 1
        if end > len(self.bits):
            raise TruncatedStream(
                f"exp-Golomb codeword at bit {self.position} runs past bit {len(self.bits)}"
            )
        value = ba2int(self.bits[first_one:end]) - 1
        self.position = end
        return value

    def to_bytes(self) -> bytes:
        return self.bits.tobytes()

    def to_bitstring(self) -> str:
        """Render the valid bits as a '0'/'1' string (debugging and tests)."""
        return self.bits.to01()


def se_to_code(value: int) -> int:
    """Signed value to exp-Golomb code number: k>0 -> 2k-1, k<=0 -> -2k."""
    return 2 * value - 1 if value > 0 else -2 * value


def code_to_se(code: int) -> int:
    return (code + 1) // 2 if code & 1 else -(code // 2)


def write_ue(cursor: BitCursor, value: int) -> None:
    if value < 0:
        raise ValueError(f"ue(v) cannot code negative value {value}")
    cursor.write_code(value)


def write_se(cursor: BitCursor, value: int) -> None:
    cursor.write_code(se_to_code(value))


def read_ue(cursor: BitCursor) -> int:
    return cursor.read_code()


def read_se(cursor: BitCursor) -> int:
    return code_to_se(cursor.read_code())

import json
import math
from typing import Annotated, Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field, PlainSerializer

from arhe_core.constants import ENCRYPT_OVERHEAD_BUDGET


def _db(value: float) -> Union[float, str]:
    return "inf" if math.isinf(value) else value


# PSNR in dB; +infinity serializes as the string "inf"
Decibels = Annotated[float, PlainSerializer(_db, return_type=Union[float, str])]

TIMING_FIELDS = ("encode_ms_per_frame", "encrypt_ms_per_frame", "decode_ms_per_frame")


class PsnrSeries(BaseModel):
    per_frame: List[Decibels] = Field(default_factory=list, description="Luma PSNR of every frame")
    mean: Decibels = Field(description="Mean of the per-frame values")


class MetricsReport(BaseModel):
    """Quality, size and timing of one encode -> encrypt -> decode run."""

    psnr_y_global: PsnrSeries = Field(
        description="Plaintext decode vs source, luma"
    )
    psnr_y_roi: Optional[Decibels] = Field(
        None,
        description="Keyless decode of the encrypted stream vs source over labeled-tile luma",
    )
    compressed_bits: int = Field(ge=0, description="Size of the plaintext container")
    cipher_bits_bitstream: int = Field(ge=0, description="Bits encrypted by syntax-element scrambling")
    cipher_bits_pixel: int = Field(ge=0, description="Bits a pixel-level scheme would encrypt")
    encode_ms_per_frame: float = Field(ge=0)
    encrypt_ms_per_frame: float = Field(ge=0)
    decode_ms_per_frame: float = Field(ge=0)

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=2)

    def non_timing(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude=set(TIMING_FIELDS))

    def encrypt_overhead(self) -> float:
        """Encrypt time as a share of encode time."""
        if self.encode_ms_per_frame == 0:
            return 0.0
        return self.encrypt_ms_per_frame / self.encode_ms_per_frame

    def within_encrypt_budget(self, budget: float = ENCRYPT_OVERHEAD_BUDGET) -> bool:
        return self.encrypt_overhead() <= budget


class SweepRow(BaseModel):
    cols: int
    rows: int
    compressed_bits: int = Field(ge=0)
    encode_ms_per_frame: float = Field(ge=0)
    mean_psnr_y: Decibels


class QualityReport(BaseModel):
    """Luma PSNR of a decoded container against its source."""

    psnr_y: PsnrSeries
    psnr_y_roi: Optional[Decibels] = Field(
        None, description="Over the tiles labeled with the requested classes; null when none is"
    )

from typing import AbstractSet, Literal, Optional

from arhe_core.bitstream import Container
from arhe_core.codec import grid_for, parse_tile_payload
from arhe_core.constants import BITSTREAM_BITS_PER_ELEMENT, PIXEL_BITS_PER_SAMPLE
from arhe_core.roi import RoiTimeline, SensitivityClass, boxes_at, roi_mask
from .scramble import element_count

CostMode = Literal["bitstream_level", "pixel_level"]


def cipher_cost(
    container: Container,
    timeline: RoiTimeline,
    mode: CostMode,
    classes: Optional[AbstractSet[SensitivityClass]] = None,
) -> int:
    """
    Number of bits a scheme has to encrypt for this clip.

    Args:
        container (Container): Plaintext (or encrypted; structure is the same) stream.
        timeline (RoiTimeline): ROI boxes driving the pixel-level count.
        mode (CostMode): `bitstream_level` counts 16 bits per DC and nonzero AC level in labeled tiles; `pixel_level` counts 12 bits per pixel of the ROI union, frame by frame.
        classes (Optional[AbstractSet[SensitivityClass]]): Restrict both counts to these classes. Defaults to every class.
    """
    header = container.header
    if mode == "pixel_level":
        total = 0
        for frame_index in range(header.frame_count):
            boxes = boxes_at(timeline, frame_index, classes)
            area = int(roi_mask(boxes, header.width, header.height).sum())
            total += PIXEL_BITS_PER_SAMPLE * area
        return total
    grid = grid_for(header)
    elements = 0
    for records in container.frames:
        for tile_index, record in enumerate(records):
            if record.class_id == 0:
                continue
            if classes is not None and SensitivityClass(record.class_id) not in classes:
                continue
            x0, y0, x1, y1 = grid.tile_rect(tile_index)
            elements += element_count(
                parse_tile_payload(record.payload, record.payload_bit_length, x1 - x0, y1 - y0)
            )
    return BITSTREAM_BITS_PER_ELEMENT * elements

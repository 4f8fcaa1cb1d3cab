MAGIC = b"ARHE"
FORMAT_VERSION = 1
HEADER_SIZE = 21
# class_id (u8) + payload_bit_length (u32)
TILE_RECORD_OVERHEAD = 5

MACROBLOCK = 16
BLOCK = 8
MAX_QP = 51
NEUTRAL_SAMPLE = 128

# default operating point: qp 32, 16 columns x 12 rows of tiles
DEFAULT_QP = 32
DEFAULT_TILE_COLS = 16
DEFAULT_TILE_ROWS = 12

SCRAMBLE_MASK_BYTES = 2
BITSTREAM_BITS_PER_ELEMENT = 8 * SCRAMBLE_MASK_BYTES
PIXEL_BITS_PER_SAMPLE = 12
# scrambling may take at most this share of the encode time
ENCRYPT_OVERHEAD_BUDGET = 0.25

TRACK_SEARCH_RADIUS = 8

KDF_INFO_PREFIX = "arhe/v1/class/"
KEY_FILE_HEADER = "# arhe keys v1"

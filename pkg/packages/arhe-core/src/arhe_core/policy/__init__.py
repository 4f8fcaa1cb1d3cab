from .data import (
    TIER_NAMES,
    DeviceTier,
    PolicyMatrix,
    PolicyReport,
    PolicyViolation,
    TierName,
)
from .utils import (
    Tier,
    check_policy,
    default_policy,
    encrypt_set,
    key_bundle_for,
    load_policy,
    validate_policy,
)

__all__ = [
    "TIER_NAMES",
    "DeviceTier",
    "PolicyMatrix",
    "PolicyReport",
    "PolicyViolation",
    "Tier",
    "TierName",
    "check_policy",
    "default_policy",
    "encrypt_set",
    "key_bundle_for",
    "load_policy",
    "validate_policy",
]

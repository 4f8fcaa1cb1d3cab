import os
import warnings
from typing import FrozenSet, List, Union

from arhe_core.crypt import KeyBundle, MasterKey, derive_class_key
from arhe_core.errors import PolicyViolationError, PolicyViolationWarning
from arhe_core.roi import ALL_CLASSES, SensitivityClass
from .data import (
    DeviceTier,
    PolicyMatrix,
    PolicyReport,
    PolicyViolation,
    TierName,
)

Tier = Union[DeviceTier, TierName]


def default_policy() -> PolicyMatrix:
    """Projector encrypts everything, smartphone faces and display content, glasses faces only."""
    return PolicyMatrix.from_sets(
        {
            DeviceTier.PROJECTOR: frozenset(
                {
                    SensitivityClass.FACE,
                    SensitivityClass.DISPLAY_CONTENT,
                    SensitivityClass.ID_CARD,
                }
            ),
            DeviceTier.SMARTPHONE: frozenset(
                {SensitivityClass.FACE, SensitivityClass.DISPLAY_CONTENT}
            ),
            DeviceTier.GLASSES: frozenset({SensitivityClass.FACE}),
        }
    )


def encrypt_set(matrix: PolicyMatrix, tier: Tier) -> FrozenSet[SensitivityClass]:
    return matrix.classes_for(DeviceTier.parse(tier))


def key_bundle_for(matrix: PolicyMatrix, tier: Tier, master: MasterKey) -> KeyBundle:
    """Keys for exactly the classes the tier may view: the complement of its encrypt set."""
    viewable = ALL_CLASSES - encrypt_set(matrix, tier)
    return KeyBundle.of(derive_class_key(master, c) for c in sorted(viewable))


def validate_policy(matrix: PolicyMatrix) -> PolicyReport:
    """Report every (exposed tier, safer tier, class) triple that breaks monotone nesting."""
    tiers = matrix.defined_tiers()
    violations: List[PolicyViolation] = []
    for exposed in tiers:
        for safer in tiers:
            if exposed.privacy_safety_rank >= safer.privacy_safety_rank:
                continue
            missing = matrix.classes_for(safer) - matrix.classes_for(exposed)
            violations.extend(
                PolicyViolation(exposed, safer, sensitivity) for sensitivity in sorted(missing)
            )
    return PolicyReport(tuple(violations))


def check_policy(matrix: PolicyMatrix, strict: bool = False) -> PolicyReport:
    """
    Validate a policy, warning about violations (or raising in strict mode).

    Raises:
        PolicyViolationError: `strict` is set and the policy breaks monotone nesting.
    """
    report = validate_policy(matrix)
    if not report.ok:
        message = "policy breaks monotone nesting: " + "; ".join(
            str(v) for v in report.violations
        )
        if strict:
            raise PolicyViolationError(message)
        warnings.warn(PolicyViolationWarning(message))
    return report


def load_policy(path: Union[str, os.PathLike[str]]) -> PolicyMatrix:
    """Read a policy file; tiers it omits keep their default encrypt sets."""
    with open(path) as f:
        custom = PolicyMatrix.model_validate_json(f.read())
    merged = dict(default_policy().tiers)
    merged.update(custom.tiers)
    return PolicyMatrix(tiers=merged)

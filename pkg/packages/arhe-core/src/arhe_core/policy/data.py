import json
from dataclasses import dataclass
from enum import IntEnum
from typing import Dict, FrozenSet, List, Literal, Mapping, Tuple, Union, cast, get_args

from pydantic import BaseModel, ConfigDict, Field

from arhe_core.errors import UnknownTier
from arhe_core.roi import ClassName, SensitivityClass

# enum-like type for device tier names
TierName = Literal["projector", "smartphone", "glasses"]

TIER_NAMES: Tuple[TierName, ...] = cast(Tuple[TierName, ...], get_args(TierName))


class DeviceTier(IntEnum):
    """AR display categories, ordered by privacy safety (projector is the most exposed)."""

    PROJECTOR = 0
    SMARTPHONE = 1
    GLASSES = 2

    @property
    def label(self) -> TierName:
        return cast(TierName, self.name.lower())

    @property
    def privacy_safety_rank(self) -> int:
        return int(self)

    @classmethod
    def parse(cls, value: Union[str, int, "DeviceTier"]) -> "DeviceTier":
        if isinstance(value, DeviceTier):
            return value
        if isinstance(value, str):
            if value not in TIER_NAMES:
                raise UnknownTier(
                    f"unknown device tier {value!r} (expected one of {', '.join(TIER_NAMES)})"
                )
            return cls[value.upper()]
        try:
            return cls(value)
        except ValueError:
            raise UnknownTier(f"unknown device tier id {value!r}") from None


class PolicyMatrix(BaseModel):
    """
    Device tier -> sensitivity classes encrypted for it.

    Attributes:
        tiers (Dict[TierName, List[ClassName]]): Classes encrypted per tier, as written in policy files.
    """

    model_config = ConfigDict(frozen=True)

    tiers: Dict[TierName, List[ClassName]] = Field(default_factory=dict)

    @classmethod
    def from_sets(
        cls, tiers: Mapping[DeviceTier, FrozenSet[SensitivityClass]]
    ) -> "PolicyMatrix":
        return cls(
            tiers={
                tier.label: [c.label for c in sorted(classes)]
                for tier, classes in sorted(tiers.items())
            }
        )

    def defined_tiers(self) -> List[DeviceTier]:
        return sorted(DeviceTier.parse(name) for name in self.tiers)

    def classes_for(self, tier: DeviceTier) -> FrozenSet[SensitivityClass]:
        if tier.label not in self.tiers:
            raise UnknownTier(f"device tier {tier.label!r} is not defined in this policy")
        return frozenset(SensitivityClass.parse(name) for name in self.tiers[tier.label])

    def to_json(self) -> str:
        ordered = {
            tier.label: [c.label for c in sorted(self.classes_for(tier))]
            for tier in self.defined_tiers()
        }
        return json.dumps({"tiers": ordered}, indent=2)


@dataclass(frozen=True)
class PolicyViolation:
    """`sensitivity` is encrypted for the safer `safer_tier` but not for the more exposed `exposed_tier`."""

    exposed_tier: DeviceTier
    safer_tier: DeviceTier
    sensitivity: SensitivityClass

    def __str__(self) -> str:
        return (
            f"{self.sensitivity.label} is encrypted for {self.safer_tier.label} "
            f"but not for the more exposed {self.exposed_tier.label}"
        )


@dataclass(frozen=True)
class PolicyReport:
    violations: Tuple[PolicyViolation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

from typing import Optional

from prompt_toolkit.application import Application
from prompt_toolkit.formatted_text import HTML
from prompt_toolkit.shortcuts import radiolist_dialog
from prompt_toolkit.styles import Style

from arhe_core.policy import TIER_NAMES, DeviceTier, PolicyMatrix, TierName, encrypt_set

style = Style.from_dict(
    {
        "dialog": "bg:#F8E9D8",
        "dialog.body": "bg:#45DFF8",
        "dialog shadow": "bg:#a6a2ab",
        "button.focused": "bg:#FFA6EA",
    }
)


def _describe(policy: PolicyMatrix, tier: TierName) -> str:
    hidden = ", ".join(
        c.label.replace("_", " ") for c in sorted(encrypt_set(policy, tier))
    )
    return f"{tier.capitalize()} (encrypts {hidden or 'nothing'})"


def device_dialog(policy: PolicyMatrix) -> Application[Optional[TierName]]:
    defined = {tier.label for tier in policy.defined_tiers()}
    return radiolist_dialog(
        title=HTML("<style fg='black'>AR Device</style>"),
        text="Which device will display this stream? More exposed devices get more content encrypted.",
        values=[(tier, _describe(policy, tier)) for tier in TIER_NAMES if tier in defined],
        style=style,
    )


async def run_device_picker(policy: PolicyMatrix) -> Optional[DeviceTier]:
    tier = await device_dialog(policy).run_async()
    if not tier:
        return None
    return DeviceTier.parse(tier)

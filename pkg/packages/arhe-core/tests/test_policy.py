import warnings
from pathlib import Path

import pytest

from arhe_core.bitstream import Container
from arhe_core.crypt import MasterKey, decrypt_stream, encrypt_stream
from arhe_core.errors import PolicyViolationError, PolicyViolationWarning, UnknownTier
from arhe_core.policy import (
    TIER_NAMES,
    DeviceTier,
    PolicyMatrix,
    check_policy,
    default_policy,
    encrypt_set,
    key_bundle_for,
    load_policy,
    validate_policy,
)
from arhe_core.roi import ALL_CLASSES, SensitivityClass

FACE, DISPLAY, ID_CARD = SensitivityClass.FACE, SensitivityClass.DISPLAY_CONTENT, SensitivityClass.ID_CARD
MASTER = MasterKey(bytes.fromhex("42" * 32))


def test_tiers() -> None:
    assert TIER_NAMES == ("projector", "smartphone", "glasses")
    ranks = [DeviceTier.parse(name).privacy_safety_rank for name in TIER_NAMES]
    assert ranks == [0, 1, 2]
    with pytest.raises(UnknownTier):
        DeviceTier.parse("headset")


def test_default_policy() -> None:
    policy = default_policy()
    assert ID_CARD in encrypt_set(policy, "projector")
    assert ID_CARD not in encrypt_set(policy, "glasses")
    assert FACE in encrypt_set(policy, "smartphone")
    assert encrypt_set(policy, DeviceTier.PROJECTOR) == {FACE, DISPLAY, ID_CARD}
    assert encrypt_set(policy, "glasses") == {FACE}


def test_missing_tier() -> None:
    custom = PolicyMatrix(tiers={"projector": ["face"]})
    with pytest.raises(UnknownTier):
        encrypt_set(custom, "glasses")


def test_key_bundles() -> None:
    policy = default_policy()
    assert key_bundle_for(policy, "projector", MASTER).classes == frozenset()
    assert key_bundle_for(policy, "glasses", MASTER).classes == {DISPLAY, ID_CARD}
    assert key_bundle_for(policy, "smartphone", MASTER).classes == {ID_CARD}


def test_hierarchy() -> None:
    policy = default_policy()
    assert validate_policy(policy).ok
    glasses, phone, projector = (encrypt_set(policy, t) for t in ("glasses", "smartphone", "projector"))
    assert glasses < phone < projector
    bundles = [key_bundle_for(policy, t, MASTER).classes for t in ("projector", "smartphone", "glasses")]
    assert bundles[0] < bundles[1] < bundles[2]
    for tier in TIER_NAMES:
        encrypted, viewable = encrypt_set(policy, tier), key_bundle_for(policy, tier, MASTER).classes
        assert encrypted | viewable == ALL_CLASSES
        assert not encrypted & viewable


def test_violation_report() -> None:
    broken = PolicyMatrix(tiers={"smartphone": ["face"], "glasses": ["face", "id_card"]})
    report = validate_policy(broken)
    assert not report.ok
    assert len(report.violations) == 1
    violation = report.violations[0]
    assert violation.exposed_tier is DeviceTier.SMARTPHONE
    assert violation.safer_tier is DeviceTier.GLASSES
    assert violation.sensitivity is ID_CARD
    assert "id_card" in str(violation)
    assert validate_policy(PolicyMatrix(tiers={"glasses": ["id_card"]})).ok


def test_check_policy_warns_or_raises() -> None:
    broken = PolicyMatrix(tiers={"smartphone": [], "glasses": ["face"]})
    with pytest.warns(PolicyViolationWarning):
        check_policy(broken)
    with pytest.raises(PolicyViolationError):
        check_policy(broken, strict=True)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert check_policy(default_policy(), strict=True).ok


def test_load_policy_merges_defaults(tmp_path: Path) -> None:
    path = tmp_path / "policy.json"
    path.write_text('{"tiers": {"glasses": []}}')
    policy = load_policy(path)
    assert encrypt_set(policy, "glasses") == frozenset()
    assert encrypt_set(policy, "projector") == ALL_CLASSES
    assert '"glasses": []' in policy.to_json()


def test_policy_soundness(labeled_container: Container) -> None:
    policy = default_policy()
    encrypted = encrypt_stream(labeled_container, ALL_CLASSES, MASTER)
    for tier in TIER_NAMES:
        scrambled = {int(c) for c in encrypt_set(policy, tier)}
        viewed = decrypt_stream(encrypted, key_bundle_for(policy, tier, MASTER))
        for original, restored in zip(labeled_container.frames, viewed.frames):
            for a, b in zip(original, restored):
                if a.class_id in scrambled:
                    assert a != b
                else:
                    assert a == b

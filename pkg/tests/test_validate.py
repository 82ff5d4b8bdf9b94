import pytest

import slowvortex.propagation
from slowvortex.validate import check_names, report, run_check, run_validate


def test_registry_is_rich_and_unique():
    names = check_names()
    assert len(names) >= 20
    assert len(set(names)) == len(names)
    prefixes = {n.split(".")[0] for n in names}
    assert prefixes == {"bloch", "propagation", "response", "polarization"}


def test_unknown_check_rejected():
    with pytest.raises(ValueError):
        run_check("propagation.not-a-check")


def test_check_results_carry_registered_names():
    for name in ("propagation.q-reference", "propagation.coupling-projector"):
        result = run_check(name)
        assert result.name == name
        assert result.passed


def test_full_suite_passes():
    results = run_validate()
    assert [r.name for r in results] == check_names()
    failed = [r.name for r in results if not r.passed]
    assert failed == []


def test_report_lists_every_check():
    results = [run_check("propagation.q-reference"),
               run_check("bloch.first-order-reference")]
    text = report(results)
    assert "propagation.q-reference" in text
    assert "PASS" in text
    assert "2/2 checks passed" in text


def test_sign_error_localizes_to_bright_mode(monkeypatch):
    """An injected sign flip in the response factor must break the bright-mode
    decay law while leaving the dark-mode invariance untouched."""
    orig = slowvortex.propagation.q_factor

    def mutated(*args, **kwargs):
        return -orig(*args, **kwargs)

    monkeypatch.setattr(slowvortex.propagation, "q_factor", mutated)
    assert run_check("propagation.dark-invariance").passed
    assert not run_check("propagation.bright-decay").passed


def test_mutation_does_not_leak_between_runs():
    # after the monkeypatched test above, the pristine suite still holds
    assert run_check("propagation.bright-decay").passed

"""The twelve acceptance criteria, one test each.  Each prints a single
PASS/FAIL line, shown in the pytest summary."""
import pytest

from koszulkit import acceptance


@pytest.mark.parametrize("number", [c[0] for c in acceptance.CRITERIA])
def test_criterion(number):
    outcome = acceptance.run_one(number, seed=0)
    print(outcome.line())
    assert outcome.passed, outcome.line()


def test_unknown_criterion():
    with pytest.raises(KeyError):
        acceptance.run_one(99)


def test_parallel_run_matches_serial():
    serial = [o.to_json() for o in acceptance.run_all(0, [1, 2, 3], workers=1)]
    parallel = [o.to_json() for o in acceptance.run_all(0, [1, 2, 3], workers=2)]
    assert serial == parallel


def test_failures_are_reported_not_raised(monkeypatch):
    def boom():
        raise RuntimeError("broken")

    crit = [(1, "tau0 law", 1.0, boom)] + acceptance.CRITERIA[1:]
    monkeypatch.setattr(acceptance, "CRITERIA", crit)
    outcome = acceptance.run_one(1)
    assert not outcome.passed and "broken" in outcome.detail
    assert outcome.line().startswith("[FAIL] criterion  1")

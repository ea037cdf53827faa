import json
from fractions import Fraction

import pytest

from stabkit import chow, verify


def test_all_checks_pass():
    rep = verify.run_checks()
    bad = [c.id for c in rep.checks if not c.passed]
    assert bad == []
    assert rep.failures == 0


def test_check_ids_are_unique_and_stable():
    ids = [c.id for c in verify.run_checks().checks]
    assert len(ids) == len(set(ids))
    for must in ("chow.gram.clifford3", "walls.lemma", "pick.suite", "serre.gepner", "chow.chi.oy1"):
        assert must in ids


def test_report_schema_and_determinism():
    a, b = verify.run_checks().dumps(), verify.run_checks().dumps()
    assert a == b
    js = json.loads(a)
    assert set(js) == {"checks", "failures"}
    assert all(set(c) == {"id", "desc", "expected", "computed", "pass"} for c in js["checks"])


def _run_with_bump(monkeypatch, degree):
    real = chow.todd

    def perturbed(X):
        t = real(X)
        if X != chow.Y5:
            return t
        bump = [0] * (X.dim + 1)
        bump[degree] = Fraction(1, 7)
        return t + chow.ChernVector(X, bump)

    monkeypatch.setattr(chow, "todd", perturbed)
    rep = verify.run_checks()
    failed = {c.id for c in rep.checks if not c.passed}
    tagged = {c.id for c in rep.checks if verify.HRR_Y in c.tags}
    return failed, tagged


def test_perturbed_todd_fails_exactly_the_hrr_checks(monkeypatch):
    failed, tagged = _run_with_bump(monkeypatch, 2)
    assert failed == tagged
    assert len(tagged) == 8


@pytest.mark.parametrize("degree", [1, 3, 4, 5])
def test_todd_perturbations_only_touch_hrr_checks(monkeypatch, degree):
    failed, tagged = _run_with_bump(monkeypatch, degree)
    assert failed and failed <= tagged


def test_crashing_check_is_reported_not_raised():
    s = verify._Suite()
    s.eq("x", "boom", 1, lambda: 1 // 0)
    s.true("y", "boom", lambda: [][0])
    assert [c.passed for c in s.checks] == [False, False]
    assert s.checks[0].computed.startswith("error: ZeroDivisionError")


def test_samplers_are_seeded():
    assert verify.sample_params(5, 3) == verify.sample_params(5, 3)
    from stabkit.tilt import in_region_v
    assert all(in_region_v(p) for p in verify.sample_region_v(25, 11))

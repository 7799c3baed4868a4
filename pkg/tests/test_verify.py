import json

import pytest

from feynman_checkers import lattice
from feynman_checkers.verify import CONJECTURE, THEOREM, VerifyConfig, check_names, run_checks

SMALL = VerifyConfig(t_exact=30, t_float=200, t_long=2000, t_bruteforce=8, t_huygens=12, n_legendre=100)


def test_default_run_passes_all_theorem_checks():
    report = run_checks()
    failed = [r.name for r in report.results if r.gating and not r.passed]
    assert report.ok, failed
    assert {r.kind for r in report.results} >= {THEOREM, CONJECTURE}


def test_every_check_has_a_reference():
    report = run_checks(SMALL)
    assert [r.name for r in report.results] == check_names()
    payload = json.loads(report.to_json())
    assert all(c["reference"] for c in payload["checks"])
    assert len(payload["checks"]) == len(check_names())


def test_json_report_is_stable():
    names = ["anchor", "symmetry", "diamonds"]
    assert run_checks(SMALL, names).to_json() == run_checks(SMALL, names).to_json()


def test_sign_error_fails_conservation(monkeypatch):
    original = lattice.step_arrays

    def broken(a1, a2, diag, off, scale, sign1, sign2, exact):
        n1 = original(a1, a2, diag, off, scale, sign1, sign2, exact)[0]
        # a2' = q a2 + p a1 instead of q a2 - p a1, up to an overall sign
        n2 = original(a1, -a2, diag, off, scale, sign1, sign2, exact)[1]
        return n1, n2

    monkeypatch.setattr(lattice, "step_arrays", broken)
    report = run_checks(SMALL, ["conservation-exact", "conservation-float"])
    assert not report.ok
    assert all(not r.passed for r in report.results)


def test_conjecture_miss_does_not_gate():
    report = run_checks(SMALL, ["q-left-limit", "anchor"])
    q = next(r for r in report.results if r.name == "q-left-limit")
    assert q.kind == CONJECTURE and not q.gating
    assert report.ok
    if not q.passed:
        assert "[MISS]" in report.to_text()


def test_crashing_check_is_a_failure(monkeypatch):
    def boom(*args, **kwargs):
        raise RuntimeError("boom")

    monkeypatch.setattr(lattice, "step_arrays", boom)
    report = run_checks(SMALL, ["anchor"])
    assert not report.ok
    assert "RuntimeError" in report.results[0].detail["error"]

import json

import pytest

from dm4.verify import (
    REGISTRY, STATUSES, CheckResult, Options, SuiteResult, UnknownSuite, checks_of, exit_code,
    run_suite,
)

SUITES = [
    "identities", "lemmas", "harmonious-clones", "positive-persistent", "positive-clones",
    "subalgebra-clones", "persistent-clones", "nonpreserving", "covers",
    "discriminator-lattice", "figure1-lattice", "protoimplications", "classification",
    "cross-oracle",
]


def test_registry_names():
    assert sorted(REGISTRY) == sorted(SUITES)


def test_check_ids_are_unique():
    for sid in REGISTRY:
        ids = [c.id for c in checks_of(sid)]
        assert len(ids) == len(set(ids)), sid


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        checks_of("nope")


def test_result_schema():
    r = run_suite("nonpreserving", Options(timing=False))
    data = json.loads(r.to_json())
    assert data["suite"] == "nonpreserving"
    assert set(data["summary"]) == set(STATUSES)
    for c in data["checks"]:
        assert set(c) == {"id", "status", "paper_ref", "detail", "runtime_ms"}
        assert c["status"] in STATUSES and c["runtime_ms"] == 0 and c["paper_ref"]


def test_output_is_deterministic_across_thread_counts():
    a = run_suite("lemmas", Options(threads=1, timing=False)).to_json()
    b = run_suite("lemmas", Options(threads=4, timing=False)).to_json()
    assert a == b


def test_seed_changes_samples_not_verdicts():
    a = run_suite("lemmas", Options(seed=1, timing=False))
    assert all(c.status == "pass" for c in a.checks)


def _suite(*statuses):
    return SuiteResult("s", [CheckResult(str(i), s, "r", "") for i, s in enumerate(statuses)])


def test_exit_codes():
    assert exit_code([_suite("pass", "skip")]) == 0
    assert exit_code([_suite("pass", "inconclusive")]) == 3
    assert exit_code([_suite("inconclusive"), _suite("fail")]) == 1


def test_exceptions_become_fail(monkeypatch):
    from dm4 import verify

    def boom(ctx):
        raise RuntimeError("broken")

    monkeypatch.setitem(REGISTRY, "boom", lambda: [verify.Check("x", "ref", boom)])
    r = run_suite("boom", Options(timing=False))
    assert r.checks[0].status == "fail" and "broken" in r.checks[0].detail

import json
import math

import numpy as np
import pytest

from dsrange import verify as vf
from dsrange.special import DomainError


def test_empty_suite_list_gives_empty_report():
    rep = vf.run_all(vf.VerifyConfig(suites=()))
    assert rep.checks == ()
    assert rep.summary == {s: 0 for s in vf.STATUSES}
    assert rep.exit_code == 0
    assert json.loads(rep.dumps())["checks"] == []


@pytest.mark.slow
@pytest.mark.parametrize("suite", sorted(vf.SUITES))
def test_each_default_suite_passes(suite):
    rep = vf.run_all(vf.VerifyConfig(suites=(suite,)))
    assert rep.checks
    assert all(c.id.startswith(_prefix(suite)) for c in rep.checks)
    assert [c.id for c in rep.failed] == []


def _prefix(suite):
    return {"discs": "disc.", "ellipses": "ellipse.", "rank-one": "rank-one"}.get(suite, suite + ".")


def test_under_truncated_structure_run_reports_tail_failures():
    rep = vf.run_all(vf.VerifyConfig(N=8, suites=("structure",)))
    failed = rep.failed
    assert failed and rep.exit_code == 1
    assert {c.id for c in failed} == {"structure.matrix-berezin-agreement"}
    assert all("truncation order 16" in c.note for c in failed)


def test_checks_carry_tolerance_and_status():
    rep = vf.run_all(vf.VerifyConfig(suites=("ellipses", "discs")))
    for c in rep.checks:
        d = c.to_json()
        assert d["tolerance"] not in (None, {}, "")
        assert d["status"] in vf.STATUSES
    cfg = json.loads(rep.dumps())["config"]
    assert cfg["interior_margin"] == 1e-6 and cfg["containment_margin"] == 1e-8
    assert "margin_rationale" in cfg


def test_zero_suite_statuses():
    rep = vf.run_all(vf.VerifyConfig(suites=("zero",)))
    by_id = {}
    for c in rep.checks:
        by_id.setdefault(c.id, set()).add(c.status)
    assert by_id["zero.cited-lemma"] == {vf.EXTERNAL}
    assert by_id["zero.closed-range-annotation"] == {vf.INFO}
    assert by_id["zero.non-identity-closure"] == {vf.INFO}
    assert by_id["zero.origin-fixing-symbol"] == {vf.PASS}
    assert by_id["zero.constant-weight-segment"] == {vf.PASS}


def test_seed_changes_random_instances_only():
    a = vf.run_all(vf.VerifyConfig(seed=1, suites=("weyl",)))
    b = vf.run_all(vf.VerifyConfig(seed=2, suites=("weyl",)))
    assert [c.id for c in a.checks] == [c.id for c in b.checks]
    assert a.dumps() != b.dumps()
    assert not a.failed and not b.failed


def test_jsonable():
    out = vf.jsonable({"z": 1 + 2j, "a": np.array([1.5, 2.0]), "n": np.int64(3), "b": np.bool_(True),
                       "inf": math.inf, "t": (np.float32(0.5), None)})
    assert out == {"z": [1.0, 2.0], "a": [1.5, 2.0], "n": 3, "b": True, "inf": "inf", "t": [0.5, None]}
    json.dumps(out)


@pytest.mark.parametrize("kw", [{"N": 7}, {"angles": 15}, {"radial": 3}, {"angular": 7},
                                {"suites": ("bogus",)}])
def test_config_validation(kw):
    with pytest.raises(DomainError):
        vf.VerifyConfig(**kw)


def test_unknown_status_rejected():
    with pytest.raises(ValueError):
        vf.TheoremCheck("x", {}, None, None, None, "maybe")

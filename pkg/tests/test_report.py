import json
import math

import pytest

from indefkk.report import CheckReport, report_payload, timed_check, write_json_atomic


def test_pass_flag():
    assert CheckReport("a", "x", 1e-13, 1e-12).passed
    assert not CheckReport("a", "x", 2e-12, 1e-12).passed
    assert not CheckReport("a", "x", math.nan, 1e-12).passed
    with pytest.raises(ValueError):
        CheckReport("a", "x", 0.0, 0.0)


def test_timed_check_details():
    rep = timed_check("id", "anchor", 1.0, lambda: (0.5, {"k": 0.25, "name": "v"}))
    assert rep.passed and rep.details == {"k": 0.25, "name": "v"}
    assert rep.wall_time >= 0
    d = rep.to_dict(timing=False)
    assert "wall_time" not in d and d["details"]["k"] == 0.25


def test_payload_and_atomic_write(tmp_path):
    reports = [CheckReport("a", "x", 0.0, 1.0), CheckReport("b", "y", math.inf, 1.0)]
    payload = report_payload("demo", reports, {"k": 1}, 7)
    assert payload["schema"] == 1 and payload["n_failed"] == 1 and not payload["passed"]
    path = write_json_atomic(payload, tmp_path / "sub" / "r.json")
    data = json.loads(path.read_text())
    assert data["checks"][1]["residual"] == "inf"
    assert list(tmp_path.joinpath("sub").iterdir()) == [path]

import io
import json
import pathlib
from contextlib import redirect_stdout

import pytest

from equijet.cli import main

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"


def run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def machine_run(argv):
    return run(list(argv) + ["--machine"])


def test_tower_cusp_report():
    code, out = machine_run(["tower", "x2^2 - x1^3", "--vars", "x1,x2", "--order", "16"])
    assert code == 0
    rep = json.loads(out)
    assert rep["result"]["degrees"] == [2, 3]
    assert rep["result"]["indices"] == [1, 3]
    assert rep["result"]["terminal_unit"]["text"] == "3"
    assert rep["result"]["levels"][1]["unit"]["text"] == "4"


def test_check_family_negative_report():
    code, out = machine_run(["check-family", "x2^2 - x1^3 - t*x1^2",
                             "--vars", "x1,x2", "--params", "t"])
    assert code == 0
    rep = json.loads(out)
    assert rep["result"]["verdict"] == "not-equisingular"
    assert rep["result"]["witness"]["text"] == "2*t^2"


def test_mero_analyze_report():
    code, out = machine_run(["mero-analyze", "--f", "(x1)*(x2)", "--g", "(x1+x2)^2"])
    assert code == 0
    rep = json.loads(out)
    assert rep["result"]["e"] == 1
    assert rep["result"]["records"][0]["c"] == "1/4"


def test_usage_error_is_exit_1():
    code, _ = run(["tower"])
    assert code == 1


def test_parse_error_is_exit_1():
    code, _ = run(["gendisc", "x2^^2", "--var", "x2", "--vars", "x2"])
    assert code == 1


def test_precondition_error_is_exit_2():
    code, _ = run(["prepare", "0", "--var", "x2", "--vars", "x1,x2"])
    assert code == 2
    code, _ = run(["divide", "x1", "x1*x2", "--var", "x2", "--vars", "x1,x2"])
    assert code == 2


def test_inconclusive_is_exit_3_and_says_so():
    import sys
    from io import StringIO
    err = StringIO()
    old = sys.stderr
    sys.stderr = err
    try:
        code, _ = run(["tower", "x2^2 - x1^20", "--vars", "x1,x2", "--order", "8"])
    finally:
        sys.stderr = old
    assert code == 3
    assert "certified only modulo" in err.getvalue()
    assert "identically" not in err.getvalue()


def test_check_family_inconclusive_exit_3():
    code, out = machine_run(["check-family", "x2^2 - x1^20", "--vars", "x1,x2",
                             "--params", "t", "--order", "8"])
    assert code == 3
    rep = json.loads(out)
    assert rep["result"]["verdict"] == "inconclusive"


def test_determinism_byte_identical_reports():
    for argv in (
        ["tower", "x1*x2*(x1+x2)", "--vars", "x1,x2", "--seed", "7"],
        ["check-family", "x2^2 - (1+t)*x1^3", "--vars", "x1,x2", "--params", "t"],
        ["mero-analyze", "--f", "(x2)^2", "--g", "(x1)"],
        ["prepare", "x1*x2", "--var", "x2", "--vars", "x1,x2", "--seed", "3"],
    ):
        code1, out1 = machine_run(argv)
        code2, out2 = machine_run(argv)
        assert code1 == code2 == 0
        assert out1 == out2


def test_order_env_default(monkeypatch):
    monkeypatch.setenv("EQUIJET_ORDER", "9")
    code, out = machine_run(["tower", "x2^2 - x1^3", "--vars", "x1,x2"])
    assert code == 0
    assert json.loads(out)["order"] == 9


@pytest.mark.parametrize("fixture", sorted(CORPUS.glob("*.args")),
                         ids=lambda p: p.stem)
def test_corpus_matches_committed_reports(fixture):
    argv = fixture.read_text().splitlines()
    code, out = run(argv)
    assert code == 0
    expected = (CORPUS / "expected" / (fixture.stem + ".json")).read_text()
    assert out == expected

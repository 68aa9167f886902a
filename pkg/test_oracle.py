"""
测试截断 oracle 工作流
"""
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from src.errors import ArgumentError
from src.formats.library import example1, example3, named_arc
from src.oracle import nodes
from src.oracle.graph import run_oracle, should_save
from src.utils.file_manager import FileManager
from test_properties import ordinary_arcs_on

T1 = example1()
T3 = example3()


def name(text):
    return named_arc(T1, text)


def test_case_1_limit_arc_passes():
    report = run_oracle(T1, [name("gamma")], truncate=8)
    assert report.passed, report.divergence
    assert report.truncate >= 8
    assert report.divergence == ""
    assert all(c["ok"] for c in report.checks)
    assert "# Truncation oracle" in report.report
    print("[PASS] oracle on gamma")


def test_case_2_exchange_pair_passes():
    for arc in ("eta", "alpha3"):
        report = run_oracle(T1, [name(arc)], truncate=6)
        assert report.passed, f"{arc}: {report.divergence}"
    print("[PASS] oracle on eta and alpha3")


def test_case_3_perturbed_closure_fails():
    def never_forced(t, u, v, origin):
        return False

    report = run_oracle(T1, [name("gamma")], truncate=6, closure=never_forced)
    assert report.verdict == "FAIL"
    assert report.divergence
    assert any(c["name"] == "submodules" and not c["ok"] for c in report.checks)
    print("[PASS] a wrong closure relation is caught")


def test_case_4_truncation_too_small():
    with pytest.raises(ArgumentError):
        run_oracle(T1, [name("gamma")], truncate=3)
    print("[PASS] L below the minimum is rejected")


def test_case_5_should_save():
    assert should_save({"save": True}) == "save"
    assert should_save({}) == "end"
    print("[PASS] should_save routing")


def test_case_6_saved_report(tmp_path, monkeypatch):
    monkeypatch.setattr(nodes, "get_file_manager", lambda: FileManager(str(tmp_path)))
    report = run_oracle(T1, [name("alpha2")], truncate=5, save=True)
    assert report.passed
    path = Path(report.output_path)
    assert path.parent == tmp_path
    assert path.name.startswith("oracle_r1_")
    assert "# Truncation oracle" in path.read_text(encoding="utf-8")
    print("[PASS] oracle report saved")


def test_case_7_golden_inputs_at_eight():
    golden = [(T1, n) for n in ("gamma", "eta", "alpha3", "alpha2", "zeta", "beta1")]
    golden.append((T3, "gamma2"))
    for t, arc in golden:
        report = run_oracle(t, [named_arc(t, arc)], truncate=8)
        assert report.passed, f"{arc}: {report.divergence}"
        names = {c["name"] for c in report.checks}
        assert {"submodules", "index", "coindex", "character"} <= names
    print("[PASS] oracle on the golden inputs")


@st.composite
def oracle_cases(draw):
    t = draw(st.sampled_from((T1, T3)))
    return t, draw(ordinary_arcs_on(t.surface, -4, 4))


@settings(max_examples=50, deadline=None)
@given(oracle_cases())
def test_case_8_random_ordinary_arcs(case):
    t, arc = case
    report = run_oracle(t, [arc], truncate=8)
    assert report.passed, f"{arc}: {report.divergence}"


if __name__ == "__main__":
    import tempfile

    print("\n[TEST] Truncation oracle\n")
    print("=" * 60)
    test_case_1_limit_arc_passes()
    test_case_2_exchange_pair_passes()
    test_case_3_perturbed_closure_fails()
    test_case_4_truncation_too_small()
    test_case_5_should_save()
    with tempfile.TemporaryDirectory() as tmp, pytest.MonkeyPatch.context() as mp:
        test_case_6_saved_report(Path(tmp), mp)
    test_case_7_golden_inputs_at_eight()
    test_case_8_random_ordinary_arcs()
    print("=" * 60)
    print("\n[SUCCESS] All oracle tests passed!\n")

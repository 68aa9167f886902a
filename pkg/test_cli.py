"""
测试命令行入口：输出内容与退出码
"""
import json

from cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main

GAMMA_TEXT = "1*x(1)^-1*x(z) + 1*x(z)^-1 + 1*x(z)*sum{n in [1,inf)} x(f0L(n))^-1*x(f0L(n+1))^-1"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err


def test_case_1_ext_and_hom(capsys):
    code, out, _ = run(capsys, "ext", "-s", "fixtures/disk1.json", "p0:0-p0:2", "p0:1-p0:3")
    assert code == EXIT_OK and out == "1"
    code, out, _ = run(capsys, "hom", "-s", "example1", "p0:0-p0:5", "p0:3-p0:-2")
    assert code == EXIT_OK and out == "1"
    code, out, _ = run(capsys, "-v", "ext", "-s", "example1", "p0:0-a0", "p0:1-a0")
    assert code == EXIT_OK
    assert out.splitlines()[0].startswith("1 (case:")
    print("[PASS] ext / hom")


def test_case_2_triangles(capsys):
    code, out, _ = run(capsys, "triangles", "-s", "example1", "p0:0-p0:5", "p0:10-p0:20")
    assert code == EXIT_FAIL
    code, out, _ = run(capsys, "--json", "triangles", "-s", "example1", "p0:3-p0:-2", "p0:0-p0:4")
    assert code == EXIT_OK
    assert len(json.loads(out)["triangles"]) == 2
    print("[PASS] triangles")


def test_case_3_check_ct(capsys):
    code, out, _ = run(capsys, "check-ct", "-t", "example1")
    assert code == EXIT_OK and out == "accepted"
    code, out, _ = run(capsys, "check-ct", "-t", "fixtures/bad_quadrilateral.json")
    assert code == EXIT_FAIL
    assert out.startswith("rejected")
    assert "p0:0-p0:2" in out
    code, out, _ = run(capsys, "--json", "check-ct", "-t", "fixtures/bad_two_limits.json")
    payload = json.loads(out)
    assert code == EXIT_FAIL and payload["accepted"] is False
    print("[PASS] check-ct")


def test_case_4_character(capsys):
    code, out, _ = run(capsys, "character", "-t", "example1", "gamma")
    assert code == EXIT_OK and out == GAMMA_TEXT
    code, out, _ = run(capsys, "--json", "character", "-t", "example1", "gamma", "--expand", "1,2,3,z")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert len(payload["window 1,2,3,z"]) == 4
    code, out, _ = run(capsys, "character", "-t", "example1", "gamma[1]")
    assert code == EXIT_OK and out == "1*x(z)"
    print("[PASS] character")


def test_case_5_index_coindex(capsys):
    code, out, _ = run(capsys, "index", "-t", "example1", "alpha3")
    assert code == EXIT_OK and out == "[P_3]"
    code, out, _ = run(capsys, "coindex", "-t", "example1", "gamma")
    assert code == EXIT_OK and out == "[P_1] - [P_z]"
    code, out, _ = run(capsys, "--json", "index", "-t", "example3", "gamma2")
    assert code == EXIT_OK
    assert json.loads(out)["index"] == {"z0": -1, "z1": 1}
    code, out, _ = run(capsys, "index", "-t", "example1", "gamma", "--triangle")
    assert out.splitlines() == ["[P_z]", "0 -> a0-p0:0 -> a0-p0:0 -> 0[1]"]
    print("[PASS] index / coindex")


def test_case_6_module_and_submodules(capsys):
    code, out, _ = run(capsys, "module", "-t", "example1", "gamma")
    assert code == EXIT_OK
    assert out == "a0-p0:0: {z:1 | tails: L=1, R=0}"
    code, out, _ = run(capsys, "submodules", "-t", "example1", "gamma")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "a0-p0:0: 3 families"
    print("[PASS] module / submodules")


def test_case_7_checks(capsys):
    code, out, _ = run(capsys, "check-exchange", "-t", "example1", "eta", "alpha3", "--window", "8")
    assert code == EXIT_OK
    code, out, _ = run(capsys, "check-exchange", "-t", "example3", "gamma2", "gamma2", "--window", "4")
    assert code == EXIT_FAIL
    code, out, _ = run(capsys, "check-mult", "-t", "example1", "alpha2", "gamma", "--window", "6")
    assert code == EXIT_OK and out == "radius 6: holds"
    print("[PASS] check-exchange / check-mult")


def test_case_8_errors(capsys):
    code, _, err = run(capsys, "check-ct", "-t", "fixtures/bad_malformed.json")
    assert code == EXIT_USAGE and "left_from" in err
    code, _, _ = run(capsys, "check-ct", "-t", "fixtures/missing.json")
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "ext", "-s", "example1", "p0:0-p0:1", "p0:0-a0")
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "character", "-t", "example1", "gamma", "--window", "0")
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "module", "-t", "example1", "alpha1[1]")
    assert code == EXIT_FAIL
    code, _, _ = run(capsys, "no-such-command")
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "oracle", "-t", "example1", "gamma", "--truncate", "2")
    assert code == EXIT_USAGE
    print("[PASS] error exit codes")


if __name__ == "__main__":
    import pytest

    raise SystemExit(pytest.main([__file__, "-v"]))

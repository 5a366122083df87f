import json

import pytest

from infdilog import cli


def run(argv):
    return cli.main(argv)


def test_named_four_term_passes(capsys):
    assert run(["check", "named", "four_term", "--p", "5"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "four_term" in out


def test_theta_output(capsys):
    assert run(["theta", "--pattern", "B2"]) == 0
    assert capsys.readouterr().out.strip() == "(1, 2)"


def test_invalid_modulus_weight_is_config_error():
    with pytest.raises(SystemExit) as err:
        run(["check", "cluster", "--pattern", "A2", "--m", "2", "--w", "4"])
    assert err.value.code == 2


def test_fp_requires_prime():
    with pytest.raises(SystemExit) as err:
        run(["check", "pentagon", "--field", "fp"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        run(["check", "pentagon", "--field", "fp", "--p", "4"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        run(["check", "pentagon", "--p", "5", "--m", "2", "--w", "3"])
    assert err.value.code == 2


def test_unknown_pattern_is_config_error():
    with pytest.raises(SystemExit) as err:
        run(["theta", "--pattern", "E8"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        run(["check", "lemma"])
    assert err.value.code == 2


def test_pattern_file_validation(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps(
        {"name": "mirror-A2", "B": [[0, 1], [-1, 0]], "sequence": [0, 1, 0, 1, 0],
         "nu": [1, 0]}
    ))
    assert run(["periodicity", "--pattern-file", str(good), "--trials", "10"]) == 0

    bad_matrix = tmp_path / "bad_matrix.json"
    bad_matrix.write_text(json.dumps(
        {"B": [[0, 1], [1, 0]], "sequence": [0], "nu": [0, 1]}
    ))
    with pytest.raises(SystemExit) as err:
        run(["theta", "--pattern-file", str(bad_matrix)])
    assert err.value.code == 2

    bad_nu = tmp_path / "bad_nu.json"
    bad_nu.write_text(json.dumps(
        {"B": [[0, -1], [1, 0]], "sequence": [0], "nu": [0, 0]}
    ))
    with pytest.raises(SystemExit) as err:
        run(["periodicity", "--pattern-file", str(bad_nu)])
    assert err.value.code == 2


def test_pentagon_check_runs(capsys):
    assert run(["check", "pentagon", "--m", "2", "--w", "3", "--trials", "10"]) == 0
    assert "pentagon[q,m=2,w=3]" in capsys.readouterr().out


def test_charp_pentagon_via_field_flag(capsys):
    assert run(["check", "pentagon", "--field", "fp", "--p", "5", "--trials", "10"]) == 0
    assert "pentagon[p=5]" in capsys.readouterr().out


def test_insufficient_samples_exit_one(capsys):
    # A2 over GF(3) has no valid points, so random sampling cannot succeed
    code = run(["check", "cluster-p", "--pattern", "A2", "--p", "3", "--trials", "2"])
    assert code == 1
    assert "insufficient" in capsys.readouterr().out.lower()


def test_json_report_is_replayable(tmp_path, capsys):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    for out in (out1, out2):
        assert run(["check", "lemma", "--pattern", "A2", "--trials", "5",
                    "--format", "json", "--out", str(out)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()
    doc = json.loads(out1.read_text())
    assert doc["summary"]["all_pass"] is True
    assert doc["config"]["check"] == "lemma"
    assert doc["checks"][0]["name"].startswith("lemma[A2,q,N=6")


def test_mutate_prints_trajectory(capsys):
    assert run(["mutate", "--pattern", "A2", "--point", "2,3"]) == 0
    out = capsys.readouterr().out
    assert "direction 1" in out and "value 2" in out
    assert "final y_1: 3" in out
    # rationals and explicit coefficient lists parse too
    assert run(["mutate", "--pattern", "A2", "--point", "[[\"3/4\", 1], [2]]"]) == 0
    capsys.readouterr()


def test_mutate_invalid_point(capsys):
    assert run(["mutate", "--pattern", "A2", "--point", "0,3"]) == 1
    assert "invalid point" in capsys.readouterr().err


def test_mutate_rank_mismatch():
    with pytest.raises(SystemExit) as err:
        run(["mutate", "--pattern", "A2", "--point", "2,3,4"])
    assert err.value.code == 2


def test_welldef_command(capsys):
    assert run(["check", "welldef", "--m", "2", "--w", "3", "--trials", "5",
                "--perturbations", "3"]) == 0
    assert "welldef" in capsys.readouterr().out


def test_periodicity_exit_codes(tmp_path):
    assert run(["periodicity", "--pattern", "A2", "--trials", "10"]) == 0
    aperiodic = tmp_path / "aperiodic.json"
    aperiodic.write_text(json.dumps(
        {"B": [[0, -1], [1, 0]], "sequence": [0, 1, 0], "nu": [0, 1]}
    ))
    assert run(["periodicity", "--pattern-file", str(aperiodic), "--trials", "5"]) == 1

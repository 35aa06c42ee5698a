import json

import pytest

from grigorchuk.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("GRIGORCHUK_CACHE_DIR", str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve(capsys):
    assert run(capsys, "solve", "adadadad") == (EXIT_OK, "identity\n", "")
    assert run(capsys, "solve", "a")[1] == "nontrivial\n"
    assert run(capsys, "solve", "")[1] == "identity\n"


def test_parse_error_exit_code(capsys):
    code, out, err = run(capsys, "solve", "abxd")
    assert code == EXIT_USAGE
    assert "position 2" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["--budget-secs", "0", "solve", "a"])
    assert exc.value.code == EXIT_USAGE


def test_order(capsys):
    code, out, _ = run(capsys, "order", "ab")
    assert code == EXIT_OK and out.split()[0] == "16"
    code, out, _ = run(capsys, "order", "ab", "--k-max", "3")
    assert code == EXIT_BUDGET and "exceeded" in out


def test_reduce_and_equal_json(capsys):
    code, out, _ = run(capsys, "--json", "reduce", "abca")
    assert code == EXIT_OK
    assert json.loads(out)["reduced"] == "ada"
    code, out, _ = run(capsys, "--json", "equal", "adad", "dada")
    assert json.loads(out)["equal"] is True
    assert run(capsys, "equal", "ab", "ba")[1] == "different\n"


def test_portrait(capsys):
    assert run(capsys, "portrait", "a", "--depth", "2")[1] == "1|00\n"
    code, _, err = run(capsys, "portrait", "a", "--depth", "40")
    assert code == EXIT_USAGE and "cap" in err


def test_growth_writes_series(capsys, tmp_path, cache_dir):
    out_path = tmp_path / "g.json"
    code, out, _ = run(capsys, "growth", "--radius", "6", "--out", str(out_path))
    assert code == EXIT_OK
    assert "108" in out
    assert json.loads(out_path.read_text())["values"][-1] == "108"
    assert list(cache_dir.glob("ball_r6_*.ggb"))


def test_growth_budget(capsys):
    code, out, _ = run(capsys, "--budget-secs", "1e-9", "growth", "--radius", "10")
    assert code == EXIT_BUDGET and "PARTIAL" in out


def test_growth_cap(capsys):
    code, _, err = run(capsys, "growth", "--radius", "30")
    assert code == EXIT_USAGE and "cap" in err


def test_verify_writes_json(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "relations", "--report", str(report))
    assert code == EXIT_OK
    assert out.startswith("PASS  relations")
    data = json.loads(report.read_text())
    assert data["passed"] and data["results"][0]["name"] == "relations"


def test_verify_default_report_location(capsys, cache_dir):
    assert run(capsys, "verify", "constants")[0] == EXIT_OK
    assert (cache_dir / "verify-constants.json").exists()


def test_verify_cancellation_radius_12(capsys):
    code, out, _ = run(capsys, "verify", "cancellation", "--radius", "12")
    assert code == EXIT_OK and "PASS" in out


def test_verify_budget(capsys):
    code, out, _ = run(capsys, "--budget-secs", "1e-9", "verify", "lemma7", "--radius", "12")
    assert code == EXIT_BUDGET
    assert "grigorchuk growth --radius 12" in out


def test_verify_fail_exit_code(capsys, monkeypatch):
    from grigorchuk import verify
    from grigorchuk.verify import CheckResult

    monkeypatch.setattr(verify, "check_relations", lambda: CheckResult("relations", False, "forced"))
    code, out, _ = run(capsys, "verify", "relations")
    assert code == EXIT_FAIL and out.startswith("FAIL")


def test_bench_small(capsys, tmp_path):
    csv_path = tmp_path / "b.csv"
    code, out, _ = run(capsys, "bench", "--max-len", "4096", "--reps", "2", "--out", str(csv_path))
    assert code == EXIT_OK
    assert "log-log slope" in out
    lines = csv_path.read_text().splitlines()
    assert lines[0].startswith("# family=random seed=0")
    assert lines[1] == "n,cpu_seconds,wall_seconds,cpu_seconds_per_letter"
    assert len(lines) == 2 + 9  # 16 .. 4096


def test_bench_cap(capsys):
    assert run(capsys, "bench", "--max-len", str(2**25))[0] == EXIT_USAGE


def test_export(capsys, tmp_path):
    target = tmp_path / "cosets.json"
    assert run(capsys, "export", "cosets", "--level", "2", "--out", str(target))[0] == EXIT_OK
    assert json.loads(target.read_text())["index"] == 8
    target = tmp_path / "series.csv"
    assert run(capsys, "export", "series", "--radius", "4", "--out", str(target))[0] == EXIT_OK
    assert "40" in target.read_text()


def test_help_mentions_everything(capsys):
    with pytest.raises(SystemExit):
        main(["--help"])
    text = capsys.readouterr().out
    for word in ("reduce", "solve", "equal", "order", "growth", "portrait", "verify", "bench", "export",
                 "--cache-dir", "--budget-secs", "--json", "GRIGORCHUK_CACHE_DIR"):
        assert word in text

import json
import subprocess
import sys

from semidlog.cli import main

ZMOD2 = '{"type":"zmod","modulus":100,"value":2}'
ZMOD68 = '{"type":"zmod","modulus":100,"value":68}'


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cycle_text_output(capsys):
    code, out, _ = run_cli(["cycle", ZMOD2], capsys)
    assert code == 0
    assert "cycle_start=2 cycle_length=20 order=21" in out


def test_cycle_brute_monogenic(capsys):
    code, out, _ = run_cli(
        ["cycle", "--alg", "brute", '{"type":"monogenic","s":5,"L":12,"e":1}'],
        capsys)
    assert code == 0
    assert "cycle_start=5 cycle_length=12" in out


def test_cycle_monico_json_reproducible(capsys):
    args = ["cycle", "--alg", "monico", "--bound", "100", "--B", "100",
            "--seed", "1", "--json-output", ZMOD2]
    code, out1, _ = run_cli(args, capsys)
    assert code == 0
    doc = json.loads(out1)
    assert doc["cycle"] == {"cycle_start": 2, "cycle_length": 20, "order": 21}
    assert doc["verified"] is True
    code, out2, _ = run_cli(args, capsys)
    assert out1 == out2  # byte identical


def test_cycle_banin_reproducible(capsys):
    args = ["cycle", "--alg", "banin-tsaban", "--bound", "64", "--rounds",
            "3,2", "--seed", "4", "--json-output", ZMOD2]
    code, out1, _ = run_cli(args, capsys)
    assert code == 0
    code, out2, _ = run_cli(args, capsys)
    assert out1 == out2
    assert json.loads(out1)["cycle"]["cycle_length"] == 20


def test_cycle_deterministic_trace_in_json(capsys):
    code, out, _ = run_cli(["cycle", "--json-output", ZMOD2], capsys)
    doc = json.loads(out)
    assert doc["trace"]["rounds"][-1]["giant_hit"] == [4, 4]
    assert doc["multiplications"] > 0


def test_cycle_verification_failure_exit_3(capsys):
    # divisor bound 2 cannot strip the factor 3 from 165 = 3 * 55
    spec = '{"type":"monogenic","s":151,"L":55,"e":1}'
    code, out, err = run_cli(
        ["cycle", "--alg", "monico", "--bound", "206", "--B", "2", spec],
        capsys)
    assert code == 3
    assert "verification failed" in err
    code, out, _ = run_cli(
        ["cycle", "--alg", "monico", "--bound", "206", "--B", "2",
         "--no-verify", spec], capsys)
    assert code == 0
    assert "cycle_length=165" in out


def test_dlog_progression(capsys):
    code, out, _ = run_cli(["dlog", ZMOD2, ZMOD68], capsys)
    assert code == 0
    assert "progression m0=15 period=20" in out


def test_dlog_unique_json(capsys):
    code, out, _ = run_cli(
        ["dlog", "--json-output", '{"type":"monogenic","s":10,"L":15,"e":1}',
         '{"type":"monogenic","s":10,"L":15,"e":5}'], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["solution"] == {"kind": "unique", "m": 5}


def test_dlog_pohlig_hellman_agrees(capsys):
    code, out_a, _ = run_cli(["dlog", "--json-output", ZMOD2, ZMOD68], capsys)
    code_b, out_b, _ = run_cli(
        ["dlog", "--alg", "pohlig-hellman", "--json-output", ZMOD2, ZMOD68],
        capsys)
    assert code == code_b == 0
    assert json.loads(out_a)["solution"] == json.loads(out_b)["solution"]


def test_dlog_no_solution_exit_4(capsys):
    code, _, err = run_cli(
        ["dlog", ZMOD2, '{"type":"zmod","modulus":100,"value":3}'], capsys)
    assert code == 4
    assert "no solution" in err


def test_dlog_mismatched_instances_exit_2(capsys):
    code, _, err = run_cli(
        ["dlog", ZMOD2, '{"type":"zmod","modulus":101,"value":3}'], capsys)
    assert code == 2


def test_parse_error_exit_2(capsys):
    code, _, err = run_cli(["cycle", "not json"], capsys)
    assert code == 2
    code, _, err = run_cli(["cycle", '{"type":"widget"}'], capsys)
    assert code == 2


def test_spec_from_file(tmp_path, capsys):
    path = tmp_path / "elem.json"
    path.write_text(ZMOD2, encoding="utf-8")
    code, out, _ = run_cli(["cycle", f"@{path}"], capsys)
    assert code == 0
    assert "cycle_length=20" in out
    code, _, err = run_cli(["cycle", "@/nonexistent/file.json"], capsys)
    assert code == 2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "result.json"
    code, out, _ = run_cli(
        ["cycle", "--json-output", "--out", str(target), ZMOD2], capsys)
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["cycle"]["cycle_length"] == 20


def test_selftest_passes(capsys):
    code, out, _ = run_cli(["selftest"], capsys)
    assert code == 0
    assert out.count("[PASS]") == 5


def test_selftest_json(capsys):
    code, out, _ = run_cli(["selftest", "--json-output", "--seed", "3"],
                           capsys)
    assert code == 0
    doc = json.loads(out)
    assert all(suite["passed"] for suite in doc["suites"])
    names = {suite["name"] for suite in doc["suites"]}
    assert "oracle-equivalence" in names


def test_bench_csv(capsys):
    code, out, _ = run_cli(
        ["bench", "--family", "monogenic", "--alg", "deterministic",
         "--sizes", "64,256", "--trials", "2", "--seed", "7"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("instance,order,algorithm")
    assert len(lines) == 5  # header + 2 sizes * 2 trials
    assert all(",True" in line for line in lines[1:])


def test_bench_jsonl_reproducible_modulo_walltime(capsys):
    args = ["bench", "--family", "zmod", "--alg", "monico", "--sizes",
            "100", "--trials", "3", "--seed", "11", "--format", "jsonl"]
    code, out1, _ = run_cli(args, capsys)
    code2, out2, _ = run_cli(args, capsys)
    assert code == code2 == 0

    def strip_time(text):
        rows = [json.loads(line) for line in text.strip().splitlines()]
        for row in rows:
            row.pop("wall_time_s")
        return rows

    assert strip_time(out1) == strip_time(out2)
    assert all(row["success"] for row in strip_time(out1))


def test_bench_empty_sweep(capsys):
    code, out, _ = run_cli(
        ["bench", "--family", "zmod", "--alg", "brute", "--sizes", ""],
        capsys)
    assert code == 0
    assert out.strip().splitlines() == ["instance,order,algorithm,trial,seed,"
                                        "multiplications,table_peak,"
                                        "wall_time_s,success"]


def test_env_seed_override(tmp_path):
    # subprocess so the environment variable is honored end to end
    script = ("import semidlog.cli as c, sys; "
              "sys.exit(c.main(['cycle', '--json-output', "
              f"'{ZMOD2}'"
              "]))")
    out1 = subprocess.run([sys.executable, "-c", script],
                          capture_output=True, text=True,
                          env={"SEMIDLOG_SEED": "99", "PATH": ""})
    doc = json.loads(out1.stdout)
    assert doc["seed"] == 99
    assert out1.returncode == 0


def test_bad_env_seed_is_parse_error(capsys, monkeypatch):
    monkeypatch.setenv("SEMIDLOG_SEED", "not-a-number")
    code, _, err = run_cli(["cycle", ZMOD2], capsys)
    assert code == 2
    assert "SEMIDLOG_SEED" in err


def test_selftest_names_injected_fault(capsys, monkeypatch):
    import semidlog.cli
    from semidlog.selftest import SuiteResult

    def broken(seed):
        return [SuiteResult("oracle-equivalence", True, "ok"),
                SuiteResult("inverse-formula", False, "injected fault")]

    monkeypatch.setattr(semidlog.cli, "run_selftests", broken)
    code, out, err = run_cli(["selftest"], capsys)
    assert code == 1
    assert "[FAIL] inverse-formula" in out
    assert "inverse-formula" in err

import json

import pytest

from binsa.cli import main


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_sample_then_analyze_round_trip(tmp_path, capsys):
    out = str(tmp_path)
    code, stdout, _ = run(
        ["sample", "--model", "toy_portfolio", "--n", "1000", "--seed", "3", "--out", out],
        capsys,
    )
    assert code == 0
    dataset = stdout.strip()
    code, stdout, _ = run(["analyze", dataset, "--out", out], capsys)
    assert code == 0
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["schema_version"] == 1
    assert set(report["first_order"]) == {"Ps", "Cs", "Pt", "Ct", "Pj", "Cj"}
    assert (tmp_path / "report_tables.csv").exists()
    assert (tmp_path / "combined_indices.svg").exists()


def test_analyze_reruns_are_byte_identical(tmp_path, capsys):
    out1, out2 = str(tmp_path / "r1"), str(tmp_path / "r2")
    args = ["analyze", "--model", "ishigami", "--n", "2000", "--seed", "5"]
    assert run(args + ["--out", out1], capsys)[0] == 0
    assert run(args + ["--out", out2], capsys)[0] == 0
    for name in ("report.json", "report_tables.csv", "combined_indices.svg"):
        a = (tmp_path / "r1" / name).read_bytes()
        b = (tmp_path / "r2" / name).read_bytes()
        assert a == b, name


def test_simdec_default_and_states_file(tmp_path, capsys):
    out = str(tmp_path)
    code, stdout, _ = run(
        ["simdec", "--model", "nested_interaction", "--n", "2000", "--out", out], capsys
    )
    assert code == 0
    table = (tmp_path / "scenarios.csv").read_text()
    assert table.splitlines()[1].startswith("color,scenario")
    assert (tmp_path / "simdec.svg").read_text().startswith("<svg")

    states = tmp_path / "states.json"
    states.write_text(
        json.dumps(
            [
                {"input": "A", "states": [
                    {"name": "low", "min": 0.0, "max": 0.34},
                    {"name": "mid", "min": 0.34, "max": 0.67},
                    {"name": "high", "min": 0.67, "max": 1.0},
                ]},
                {"input": "B", "states": [
                    {"name": "low", "min": 0.0, "max": 0.5},
                    {"name": "high", "min": 0.5, "max": 1.0},
                ]},
                {"input": "C", "states": [
                    {"name": "low", "min": 0.0, "max": 0.5},
                    {"name": "high", "min": 0.5, "max": 1.0},
                ]},
            ]
        )
    )
    code, _, _ = run(
        [
            "simdec", "--model", "nested_interaction", "--n", "2000",
            "--states", str(states), "--out", out,
        ],
        capsys,
    )
    assert code == 0
    lines = (tmp_path / "scenarios.csv").read_text().splitlines()
    assert len(lines) == 2 + 12  # meta + header + 3*2*2 scenarios


def test_compare_emits_deltas(tmp_path, capsys):
    out = str(tmp_path)
    code, _, _ = run(
        ["compare", "--model", "ishigami", "--n", "3000", "--seed", "1", "--out", out], capsys
    )
    assert code == 0
    payload = json.loads((tmp_path / "compare.json").read_text())
    assert set(payload["first_order"]) == {"x1", "x2", "x3"}
    for entry in payload["first_order"].values():
        assert entry["delta"] == pytest.approx(entry["binning"] - entry["oracle"])
    assert payload["oracle_evaluations"] == 1500 * 8


def test_sweep_dependence_csv(tmp_path, capsys):
    out = str(tmp_path)
    code, _, _ = run(
        ["sweep-dependence", "--model", "two_factor_additive", "--n", "2000", "--out", out],
        capsys,
    )
    assert code == 0
    lines = (tmp_path / "sweep.csv").read_text().splitlines()
    assert lines[1].split(",")[:3] == ["model", "dependence", "parameter"]
    data = [ln.split(",") for ln in lines[2:]]
    assert len(data) == 2 * 7  # two dependence kinds x seven grid points
    assert all(r[-1] == "ok" for r in data)  # default grid never fully couples


def test_sweep_dependence_flags_degenerate_full_coupling(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps(
            {
                "model": "two_factor_additive",
                "sampling": {"n": 2000},
                "sweep_grid": [-1.0, 0.0, 1.0],
                "out": str(tmp_path),
            }
        )
    )
    code, _, _ = run(["sweep-dependence", "--config", str(cfg)], capsys)
    assert code == 0
    lines = (tmp_path / "sweep.csv").read_text().splitlines()
    data = [ln.split(",") for ln in lines[2:]]
    degenerate = [r for r in data if r[-1] == "degenerate"]
    # additive Y = A + (lo + hi - A) is exactly constant under the full
    # negative equal portion; the copula at rho=-1 only reaches it up to
    # floating-point noise and stays analyzable
    assert ("equal_portion", "-1.0") in {(r[1], r[2]) for r in degenerate}


def test_missing_input_is_exit_2(capsys):
    code, _, err = run(["analyze"], capsys)
    assert code == 2
    assert "error:" in err


def test_bad_dataset_path_is_exit_2(capsys):
    code, _, err = run(["analyze", "/nonexistent/file.csv"], capsys)
    assert code in (1, 2)


def test_malformed_csv_is_exit_2_with_location(tmp_path, capsys):
    p = tmp_path / "bad.csv"
    rows = ["a,b,output"] + [f"{i},{i},{2 * i}" for i in range(1, 200)]
    rows[17] = "17,noise,34"
    p.write_text("\n".join(rows) + "\n")
    code, _, err = run(["analyze", str(p)], capsys)
    assert code == 2
    assert "row 18" in err and "'b'" in err


def test_json_errors_flag(tmp_path, capsys):
    p = tmp_path / "bad.csv"
    p.write_text("a,output\n1,2\nbad,4\n")
    code, _, err = run(["--json-errors", "analyze", str(p)], capsys)
    assert code == 2
    payload = json.loads(err)
    assert payload["exit_code"] == 2 and "row 3" in payload["error"]


def test_unknown_model_is_exit_2_class_error(capsys):
    code, _, err = run(["sample", "--model", "not_a_model", "--out", "/tmp"], capsys)
    assert code in (1, 2)
    assert "unknown model" in err


def test_compare_rejects_dependence_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps(
            {
                "model": "two_factor_additive",
                "dependence": [{"kind": "copula", "pair": [0, 1], "rho": 0.5}],
            }
        )
    )
    code, _, err = run(["compare", "--config", str(cfg), "--out", str(tmp_path)], capsys)
    assert code == 2
    assert "independent" in err


def test_config_file_drives_analysis(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps(
            {
                "model": "ishigami",
                "sampling": {"n": 1500, "method": "QMC"},
                "seed": 7,
                "out": str(tmp_path),
            }
        )
    )
    code, _, _ = run(["analyze", "--config", str(cfg)], capsys)
    assert code == 0
    meta = json.loads((tmp_path / "report.json").read_text())["metadata"]
    assert meta["seed"] == 7 and meta["n"] == 1500


def test_too_small_n_is_exit_2(capsys, tmp_path):
    code, _, err = run(
        ["analyze", "--model", "ishigami", "--n", "50", "--out", str(tmp_path)], capsys
    )
    assert code == 2
    assert "at least 100 rows" in err

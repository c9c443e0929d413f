import hashlib
import json

import pytest

from bitscape.cli import main


def run_cli(*argv):
    return main(list(argv))


def write_config(path, **overrides):
    config = {
        "problem": {"name": "sin2dec", "n": 6},
        "optima": True,
        "lon": {"kind": "basin_transition"},
        "stn": {
            "algorithms": ["rr_hillclimb", "simulated_annealing"],
            "runs": 2,
            "params": {"rr_hillclimb": {"restarts": 2}, "simulated_annealing": {"budget": 60}},
        },
        "plots": {"types": ["hbm"], "compose": [{"op": "superimpose", "inputs": ["lon", "hbm"]}]},
        "output_dir": str(path.parent / "out"),
        "seed": 5,
    }
    config.update(overrides)
    path.write_text(json.dumps(config), encoding="utf-8")
    return config


def manifest_entries(out_dir):
    lines = (out_dir / "manifest.tsv").read_text(encoding="utf-8").splitlines()
    return dict(line.split("\t") for line in lines)


def test_run_produces_all_artifacts(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    write_config(cfg)
    assert run_cli("run", str(cfg)) == 0
    out = tmp_path / "out"
    assert (out / "optima.csv").exists()
    assert (out / "lon.graphml").exists()
    assert (out / "stn.graphml").exists()
    assert (out / "trajectories.csv").exists()
    assert (out / "hbm.svg").exists()
    assert (out / "compose_1_superimpose_lon_hbm.svg").exists()
    assert str(out / "manifest.tsv") in capsys.readouterr().out


def test_manifest_covers_every_file_with_correct_digests(tmp_path):
    cfg = tmp_path / "cfg.json"
    write_config(cfg)
    assert run_cli("run", str(cfg)) == 0
    out = tmp_path / "out"
    entries = manifest_entries(out)
    files = {p.relative_to(out).as_posix() for p in out.rglob("*") if p.is_file()}
    assert set(entries) == files - {"manifest.tsv"}
    for rel, digest in entries.items():
        assert hashlib.sha256((out / rel).read_bytes()).hexdigest() == digest


def test_rerun_is_byte_identical(tmp_path):
    cfg = tmp_path / "cfg.json"
    write_config(cfg)
    assert run_cli("run", str(cfg)) == 0
    first = (tmp_path / "out" / "manifest.tsv").read_bytes()
    assert run_cli("run", str(cfg)) == 0
    assert (tmp_path / "out" / "manifest.tsv").read_bytes() == first


def test_adding_plots_does_not_perturb_analysis(tmp_path):
    lean = tmp_path / "lean.json"
    write_config(lean, plots={}, output_dir=str(tmp_path / "a"))
    assert run_cli("run", str(lean)) == 0
    rich = tmp_path / "rich.json"
    write_config(
        rich,
        plots={"types": ["hbm", "lon", "stn", "scatter", "hexbin"]},
        output_dir=str(tmp_path / "b"),
    )
    assert run_cli("run", str(rich)) == 0
    for name in ("optima.csv", "lon.graphml", "stn.graphml", "trajectories.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_output_dir_env_override(tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    write_config(cfg, plots={}, output_dir=str(tmp_path / "ignored"))
    monkeypatch.setenv("BITSCAPE_OUTPUT_DIR", str(tmp_path / "redirected"))
    assert run_cli("run", str(cfg)) == 0
    assert (tmp_path / "redirected" / "manifest.tsv").exists()
    assert not (tmp_path / "ignored").exists()


def test_invalid_config_names_the_field(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    write_config(cfg, lon={"kind": "escape", "D": 0})
    assert run_cli("run", str(cfg)) == 2
    assert "lon.D" in capsys.readouterr().err


def test_unknown_key_rejected(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    write_config(cfg, extra={"x": 1})
    assert run_cli("run", str(cfg)) == 2
    assert "extra" in capsys.readouterr().err


def test_bad_runner_params_exit_two(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    write_config(cfg, stn={"algorithms": ["simulated_annealing"], "runs": 1,
                           "params": {"simulated_annealing": {"budget": -5}}})
    assert run_cli("run", str(cfg)) == 2
    assert "params.budget" in capsys.readouterr().err


def test_malformed_json_exit_two(tmp_path):
    cfg = tmp_path / "broken.json"
    cfg.write_text("{not json", encoding="utf-8")
    assert run_cli("run", str(cfg)) == 2


def test_capacity_exceeded_exit_three(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    write_config(cfg, problem={"name": "onemax", "n": 30}, lon=None, stn=None, plots={})
    raw = json.loads(cfg.read_text(encoding="utf-8"))
    raw = {k: v for k, v in raw.items() if v is not None}
    cfg.write_text(json.dumps(raw), encoding="utf-8")
    assert run_cli("run", str(cfg)) == 3
    assert "cap" in capsys.readouterr().err


def test_missing_config_exit_four(tmp_path):
    assert run_cli("run", str(tmp_path / "nope.json")) == 4


def test_missing_table_exit_four(tmp_path):
    assert run_cli("optima", "--problem", "table", "--table", str(tmp_path / "no.csv"),
                   "--out", str(tmp_path / "o.csv")) == 4


def test_compose_same_color_feature_exit_five(tmp_path, capsys):
    out = tmp_path / "dup.svg"
    assert run_cli("compose", "superimpose", "hbm", "hbm", "--n", "6", "--out", str(out)) == 5
    err = capsys.readouterr().err
    assert "color" in err
    assert not out.exists()


def test_compose_lon_over_hbm_accepted(tmp_path):
    out = tmp_path / "overlay.svg"
    assert run_cli("compose", "superimpose", "lon", "hbm", "--n", "6",
                   "--highlight-optima", "--out", str(out)) == 0
    assert out.read_text(encoding="utf-8").startswith("<?xml")


def test_config_compose_conflict_exit_five(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    write_config(cfg, plots={"compose": [{"op": "superimpose", "inputs": ["hbm", "hbm"]}]})
    assert run_cli("run", str(cfg)) == 5
    assert "color" in capsys.readouterr().err


def test_optima_subcommand(tmp_path):
    out = tmp_path / "optima.csv"
    assert run_cli("optima", "--problem", "two_trap", "--n", "4", "--out", str(out)) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "bits,fitness,is_global,basin_size,avg_dist_lo,dist_to_global,degenerate"
    assert len(lines) == 3


def test_lon_subcommand_escape(tmp_path):
    out = tmp_path / "lon.dot"
    assert run_cli("lon", "--problem", "sin2dec", "--n", "6", "--edges", "escape",
                   "--D", "2", "--format", "dot", "--out", str(out)) == 0
    assert out.read_text(encoding="utf-8").startswith("digraph")


def test_stn_subcommand_writes_graph_and_csv(tmp_path):
    graph = tmp_path / "stn.graphml"
    csv = tmp_path / "traj.csv"
    assert run_cli("stn", "--problem", "two_trap", "--n", "6",
                   "--algorithms", "rr_hillclimb,genetic", "--runs", "2",
                   "--params", '{"genetic": {"pop_size": 6, "generations": 8}}',
                   "--seed", "1", "--out", str(graph), "--csv", str(csv)) == 0
    assert graph.exists()
    header = csv.read_text(encoding="utf-8").splitlines()[0]
    assert header == "algorithm,run,step,bits,fitness"


def test_plot_subcommands_render(tmp_path):
    for plot in ("hbm", "lon", "stn", "scatter", "hexbin"):
        out = tmp_path / f"{plot}.svg"
        assert run_cli("plot", plot, "--n", "6", "--out", str(out)) == 0
        assert out.exists()


def test_plot_rejects_unknown_type(capsys):
    with pytest.raises(SystemExit):
        run_cli("plot", "sunburst")


def test_export_then_reload_matches(tmp_path):
    table = tmp_path / "nk.csv"
    assert run_cli("export", "--problem", "nk", "--n", "6", "--k", "2",
                   "--problem-seed", "7", "--out", str(table)) == 0
    direct = tmp_path / "direct.csv"
    loaded = tmp_path / "loaded.csv"
    assert run_cli("optima", "--problem", "nk", "--n", "6", "--k", "2",
                   "--problem-seed", "7", "--out", str(direct)) == 0
    assert run_cli("optima", "--problem", "table", "--table", str(table),
                   "--out", str(loaded)) == 0
    assert direct.read_text(encoding="utf-8") == loaded.read_text(encoding="utf-8")


def test_transform_flags(tmp_path):
    out = tmp_path / "o.csv"
    assert run_cli("optima", "--problem", "onemax", "--n", "4", "--epsilon", "0.25",
                   "--tau", "2.0", "--lam", "1.5", "--out", str(out)) == 0
    assert out.exists()


def test_lambda_without_violation_exit_two(tmp_path, capsys):
    assert run_cli("optima", "--problem", "onemax", "--n", "4", "--lam", "2.0",
                   "--out", str(tmp_path / "o.csv")) == 2
    assert "lambda" in capsys.readouterr().err

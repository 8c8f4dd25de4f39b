import json

import pytest

from hopfdsr.cli import main, read_config, ConfigError


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_verify_twist_abelian(capsys):
    rc, out, _ = run(capsys, "verify", "twist", "--twist", "abelian", "--s", "1/2", "--order", "3")
    data = json.loads(out)
    assert rc == 0 and data["overall"] == "pass"
    ids = {c["id"] for c in data["checks"]}
    assert "abelian(1/2):cocycle" in ids
    assert "abelian(1/2):R=exp(i h D^P0)" in ids


def test_verify_twist_jordanian_csv(capsys):
    rc, out, _ = run(capsys, "verify", "twist", "--twist", "jordanian", "--r", "2", "--order", "2",
                     "--format", "csv")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "id,status,effective_order,residual_nonzero_terms"
    assert all(",pass," in ln for ln in lines[1:])


def test_verify_identity_twist(capsys):
    rc, out, _ = run(capsys, "verify", "twist", "--twist", "none", "--order", "2")
    assert rc == 0 and json.loads(out)["overall"] == "pass"


def test_verify_hopf(capsys):
    rc, out, _ = run(capsys, "verify", "hopf", "--order", "2")
    assert rc == 0 and json.loads(out)["overall"] == "pass"


@pytest.mark.parametrize("extra", [
    ["--realization", "covariant"],
    ["--realization", "noncovariant", "--psi", "1,1/2", "--gamma", "1/3,2"],
    ["--realization", "abelian", "--s", "1/4"],
    ["--realization", "jordanian", "--r", "-1"],
])
def test_verify_realization(capsys, extra):
    rc, out, _ = run(capsys, "verify", "realization", "--order", "3", *extra)
    assert rc == 0 and json.loads(out)["overall"] == "pass"


def test_verify_qanalog(capsys):
    rc, out, _ = run(capsys, "verify", "qanalog", "--kappa", "2")
    assert rc == 0 and json.loads(out)["overall"] == "pass"


def test_output_file_and_report_merge(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "twist", "--order", "2", "--out", str(a)]) == 0
    assert main(["verify", "hopf", "--order", "2", "--out", str(b)]) == 0
    merged = tmp_path / "m.json"
    assert main(["report", str(a), str(b), "--out", str(merged)]) == 0
    data = json.loads(merged.read_text())
    n = len(json.loads(a.read_text())["checks"]) + len(json.loads(b.read_text())["checks"])
    assert len(data["checks"]) == n and data["overall"] == "pass"


def test_report_propagates_failure(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"checks": [{"id": "x", "status": "fail"}]}))
    assert main(["report", str(bad)]) == 1


def test_deterministic_output(capsys):
    argv = ["verify", "realization", "--realization", "noncovariant", "--psi", "1,-1,1/3",
            "--gamma", "1/2", "--order", "3"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


# -- pheno ------------------------------------------------------------------------------

def test_pheno_dispersion_jordanian(capsys):
    rc, out, _ = run(capsys, "pheno", "dispersion", "--model", "jordanian", "--r", "1")
    data = json.loads(out)
    assert rc == 0
    assert data["b1"] == "-1" and data["b2"] == "1"
    assert data["casimir_oracle_agrees"] is True


def test_pheno_dispersion_general(capsys):
    rc, out, _ = run(capsys, "pheno", "dispersion", "--psi", "1", "--gamma", "0", "--order", "4")
    data = json.loads(out)
    assert data["abs_p_over_kappa"] == ["0", "1", "1/2", "1/6", "1/24"]


def test_pheno_timedelay(capsys, tmp_path):
    out_path = tmp_path / "delay.csv"
    rc = main(["pheno", "timedelay", "--model", "abelian", "--s", "1/4", "--energies", "1,10",
               "--out", str(out_path)])
    assert rc == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "energy_gev,kappa_gev,baseline_s,b1,b2,delta_t_s,model,params"
    assert len(lines) == 3 and lines[1].endswith("abelian,s=1/4")
    exact = json.loads(out_path.with_suffix(".json").read_text())
    assert exact[0]["b1"] == "-1/4"


def test_pheno_mass(capsys):
    rc, out, _ = run(capsys, "pheno", "mass", "--mh", "1", "--h", "1/2")
    assert rc == 0 and out.strip() == "15/16"


# -- configuration and errors ----------------------------------------------------------------

def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# jordanian run\norder = 2\ntwist = jordanian\nr = 2\n")
    assert read_config(str(cfg)) == {"order": "2", "twist": "jordanian", "r": "2"}
    rc, out, _ = run(capsys, "verify", "twist", "--config", str(cfg))
    assert rc == 0
    assert any(c["id"].startswith("jordanian(2)") for c in json.loads(out)["checks"])


@pytest.mark.parametrize("argv", [
    ["verify", "twist", "--twist", "jordanian", "--r", "0", "--order", "2"],
    ["verify", "qanalog", "--kappa", "0"],
    ["verify", "hopf", "--order", "abc"],
    ["verify", "hopf", "--order", "0"],
    ["verify", "realization", "--realization", "noncovariant", "--psi", "2", "--order", "2"],
    ["verify", "twist", "--s", "1/x", "--order", "2"],
    ["report", "/nonexistent/report.json"],
    ["pheno", "timedelay", "--kappa-gev", "-1"],
])
def test_usage_errors_exit_2(capsys, argv):
    rc, _, err = run(capsys, *argv)
    assert rc == 2
    assert "error" in err


def test_unknown_config_key(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    rc, _, err = run(capsys, "verify", "hopf", "--config", str(cfg))
    assert rc == 2 and "colour" in err


def test_malformed_config_line(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("order 3\n")
    with pytest.raises(ConfigError):
        read_config(str(cfg))


def test_malformed_report(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    rc, _, _ = run(capsys, "report", str(bad))
    assert rc == 2


def test_missing_subcommand_argument():
    with pytest.raises(SystemExit) as exc:
        main(["report"])
    assert exc.value.code == 2

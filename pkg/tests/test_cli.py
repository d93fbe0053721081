import json

import numpy as np
import pytest

from edchrom import cli
from edchrom.flux import SchemeKind
from edchrom.harness import ErrorReport


def run_main(argv):
    return cli.main(argv)


class TestParseConfig:
    def test_flags(self):
        merged = cli.parse_config(["--experiment", "1", "--scheme", "CHR-UPW",
                                   "--m", "800", "--nu", "1", "--Da", "0"])
        assert merged["experiment"] == 1
        assert merged["schemes"] == [SchemeKind.CHR_UPW]
        assert merged["ms"] == [800]
        assert merged["nu"] == 1.0
        assert merged["da"] == 0.0
        assert merged["mref"] == 25600

    def test_missing_scheme_lists_valid(self, capsys):
        with pytest.raises(SystemExit):
            cli.parse_config(["--experiment", "1"])
        err = capsys.readouterr().err
        for name in ("CHR-UPW", "COMP-UPW1", "COMP-UPW5", "COMP-GLF", "CHR-GLF", "MUSCL"):
            assert name in err

    def test_bad_scheme(self, capsys):
        with pytest.raises(SystemExit):
            cli.parse_config(["--scheme", "WENO9"])
        assert "valid schemes" in capsys.readouterr().err

    def test_k_rejected_above_one(self, capsys):
        with pytest.raises(SystemExit):
            cli.parse_config(["--scheme", "MUSCL", "--K", "1.5"])
        assert "K" in capsys.readouterr().err

    def test_ini_config(self, tmp_path):
        ini = tmp_path / "run.ini"
        ini.write_text("[harness]\nexperiment = 2\n\n[flux]\nscheme = MUSCL\n\n"
                       "[stepper]\nm = 64\nT = 0.5\n")
        merged = cli.parse_config(["--config", str(ini)])
        assert merged["experiment"] == 2
        assert merged["schemes"] == [SchemeKind.MUSCL]
        assert merged["ms"] == [64]
        assert merged["t"] == 0.5

    def test_ini_unknown_key_rejected(self, tmp_path):
        ini = tmp_path / "bad.ini"
        ini.write_text("[stepper]\nwobble = 3\nscheme = MUSCL\n")
        with pytest.raises(ValueError, match="wobble"):
            cli.parse_config(["--config", str(ini)])

    def test_flags_override_file(self, tmp_path):
        ini = tmp_path / "run.ini"
        ini.write_text("[flux]\nscheme = MUSCL\n\n[stepper]\nm = 64\n")
        merged = cli.parse_config(["--config", str(ini), "--m", "32"])
        assert merged["ms"] == [32]


class TestEmit:
    def test_profiles_shape_and_determinism(self, tmp_path):
        out1 = tmp_path / "a"
        out2 = tmp_path / "b"
        args = ["--experiment", "1", "--scheme", "MUSCL", "--m", "4",
                "--T", "0.3", "--single-thread"]
        assert run_main(args + ["--out", str(out1)]) == 0
        assert run_main(args + ["--out", str(out2)]) == 0
        csv1 = sorted(out1.glob("profile_*.csv"))
        assert csv1, "no profile written"
        text = csv1[0].read_text().splitlines()
        assert text[0] == "z,c1,c2,c3,w1,w2,w3"
        assert len(text) == 1 + 4  # header + one row per cell
        for f1 in csv1:
            f2 = out2 / f1.name
            assert f1.read_bytes() == f2.read_bytes()

    def test_manifest_contents_and_rerun(self, tmp_path):
        out1 = tmp_path / "a"
        out2 = tmp_path / "b"
        run_main(["--experiment", "1", "--scheme", "COMP-UPW1", "--m", "8",
                  "--T", "0.2", "--out", str(out1)])
        manifest = json.loads((out1 / "manifest.json").read_text())
        assert manifest["config"]["scheme"] == "COMP-UPW1"
        assert manifest["run"]["mass_ledger_max_defect"] <= 1e-12
        assert manifest["run"]["n_steps"] > 0
        # re-run from the manifest reproduces byte-identical profiles
        run_main(["--config", str(out1 / "manifest.json"), "--out", str(out2)])
        for f1 in sorted(out1.glob("profile_*.csv")):
            assert f1.read_bytes() == (out2 / f1.name).read_bytes()

    def test_emit_errors_layout(self, tmp_path):
        reports = [
            ErrorReport(scheme="MUSCL", nu=1.0, D_a=0.0, T=1.0, m=100,
                        e_m=4e-3, e_m_trimmed=3e-3, theta_m=2.0, wall_seconds=0.5),
            ErrorReport(scheme="MUSCL", nu=1.0, D_a=0.0, T=1.0, m=200,
                        e_m=1e-3, e_m_trimmed=0.8e-3, theta_m=None, wall_seconds=1.5),
        ]
        path = cli.emit_errors(tmp_path / "errors.csv", reports)
        lines = path.read_text().splitlines()
        assert lines[0] == "scheme,nu,Da,m,e_m,e_m_trimmed,theta_m,seconds"
        assert len(lines) == 3
        assert lines[2].split(",")[6] == ""  # no theta for the finest grid

    def test_emit_errors_empty(self, tmp_path):
        path = cli.emit_errors(tmp_path / "errors.csv", [])
        assert path.read_text().splitlines() == ["scheme,nu,Da,m,e_m,e_m_trimmed,theta_m,seconds"]

    def test_sweep_writes_errors_csv(self, tmp_path):
        out = tmp_path / "sweep"
        assert run_main(["--sweep", "--experiment", "4", "--scheme", "COMP-UPW1,MUSCL",
                         "--m", "25,50", "--mref", "400", "--T", "0.25",
                         "--out", str(out)]) == 0
        lines = (out / "errors.csv").read_text().splitlines()
        assert len(lines) == 1 + 4
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["n_reports"] == 4

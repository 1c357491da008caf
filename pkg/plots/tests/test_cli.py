"""Command-line entry point: exit codes, messages, and argparse wiring."""

from pathlib import Path

import pytest

from dce_plots.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


class TestSuccess:
    def test_render_reports_output_path(self, tmp_path, capsys):
        out = tmp_path / "scan.svg"
        rc = main(["resonanceScan", "--in", str(FIXTURES / "sweep.csv"),
                   "--out", str(out)])
        assert rc == 0
        assert f"wrote {out}" in capsys.readouterr().out
        assert out.stat().st_size > 5000

    def test_multiple_inputs(self, tmp_path, capsys):
        out = tmp_path / "n.svg"
        rc = main(["nGammaTime", "--in", str(FIXTURES / "evolve.csv"),
                   str(FIXTURES / "rwa.csv"), "--out", str(out)])
        assert rc == 0
        assert out.exists()

    def test_style_flags(self, tmp_path):
        out = tmp_path / "t.pdf"
        rc = main(["pulseTrain", "--in", str(FIXTURES / "pulse_train.csv"),
                   "--out", str(out), "--log-y", "--title", "train"])
        assert rc == 0
        assert out.read_bytes()[:5] == b"%PDF-"


class TestFailures:
    def test_contract_violation_names_column(self, tmp_path, capsys):
        bad = tmp_path / "sweep.csv"
        lines = (FIXTURES / "sweep.csv").read_text().splitlines()
        lines[0] = lines[0].replace("chi", "xi")
        bad.write_text("\n".join(lines) + "\n")
        out = tmp_path / "scan.svg"
        rc = main(["resonanceScan", "--in", str(bad), "--out", str(out)])
        assert rc == 1
        err = capsys.readouterr().err
        assert "error:" in err
        assert "contract violation" in err
        assert "column 5 is 'xi', expected 'chi'" in err
        assert not out.exists()

    def test_empty_input(self, tmp_path, capsys):
        empty = tmp_path / "evolve.csv"
        empty.write_text("")
        rc = main(["nGammaTime", "--in", str(empty),
                   "--out", str(tmp_path / "n.svg")])
        assert rc == 1
        err = capsys.readouterr().err
        assert "refusing to draw an empty figure" in err

    def test_missing_input(self, tmp_path, capsys):
        rc = main(["couplings", "--in", str(tmp_path / "nope.csv"),
                   "--out", str(tmp_path / "c.svg")])
        assert rc == 1
        assert "not found" in capsys.readouterr().err

    def test_raster_output(self, tmp_path, capsys):
        rc = main(["resonanceScan", "--in", str(FIXTURES / "sweep.csv"),
                   "--out", str(tmp_path / "scan.png")])
        assert rc == 1
        assert "vector" in capsys.readouterr().err


class TestArgparse:
    def test_unknown_kind_is_usage_error(self, tmp_path, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["heatmap", "--in", str(FIXTURES / "sweep.csv"),
                  "--out", str(tmp_path / "x.svg")])
        assert exc.value.code == 2
        assert "invalid choice" in capsys.readouterr().err

    def test_missing_in_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["resonanceScan", "--out", str(tmp_path / "x.svg")])
        assert exc.value.code == 2

    def test_missing_out_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["resonanceScan", "--in", str(FIXTURES / "sweep.csv")])
        assert exc.value.code == 2

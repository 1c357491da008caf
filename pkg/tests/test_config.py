"""Config layer: TOML/JSON parsing, strict key validation, round trips."""

import json

import pytest

from dcesim.config import ConfigError, parse_config, resolved_dict

SYNTH = """
[scenario]
type = "synthetic"
omega0 = 1.0
meanDeltaOmega = 0.01

[drive]
Delta = 0.0
nPulse = 25
"""

WALL = """
[scenario]
type = "wall"
length = 1.0
mass2 = 1e6

[modes]
nModes = 2

[drive]
target = "delta"
profile = "sinusoidal"
pmax = 1e-3
Omega = 6.28
nPulse = 3

[couplings]
route = "quadrature"
pair = [0, 1]
nPeriods = 2
"""

PLASMA = """
[scenario]
type = "plasma"
length = 0.1
slabLeft = 0.05
slabThickness = 1e-5

[drive]
target = "mp2"
profile = "pulseTrain"
pmax = 50.0
width = 0.05
Delta = 0.0

[numerics]
tolOde = 1e-9

[output]
directory = "out"
precision = 8

[sweep]
variable = "Omega"
lo = 1.9
hi = 2.1
nPoints = 11
"""


def write(tmp_path, text, name="run.toml"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


class TestHappyPath:
    def test_synthetic(self, tmp_path):
        cfg = parse_config(write(tmp_path, SYNTH))
        assert cfg.scenario.type == "synthetic"
        assert cfg.scenario.omega0 == 1.0
        assert cfg.scenario.mean_delta_omega == 0.01
        assert cfg.drive.Delta == 0.0
        assert cfg.drive.Omega is None
        assert cfg.drive.n_pulse == 25
        # defaults fill everything else
        assert cfg.modes.n_modes == 1
        assert cfg.numerics.tol_ode == 1e-10
        assert cfg.numerics.tol_quad == 1e-8
        assert cfg.output.directory == "."
        assert cfg.output.precision == "full"
        assert cfg.couplings.route == "closed"
        assert cfg.evolve.mode == 0
        assert cfg.evolve.multimode is False
        assert cfg.estimate.target_n == 10.0

    def test_wall(self, tmp_path):
        cfg = parse_config(write(tmp_path, WALL))
        assert cfg.scenario.type == "wall"
        assert cfg.scenario.mass2 == 1e6
        assert cfg.drive.target == "delta"
        assert cfg.drive.pmax == 1e-3
        assert cfg.drive.Omega == 6.28
        assert cfg.modes.n_modes == 2
        assert cfg.couplings.route == "quadrature"
        assert cfg.couplings.pair == (0, 1)
        assert cfg.couplings.n_periods == 2

    def test_plasma(self, tmp_path):
        cfg = parse_config(write(tmp_path, PLASMA))
        assert cfg.scenario.slab_left == 0.05
        assert cfg.scenario.slab_thickness == 1e-5
        assert cfg.drive.profile == "pulseTrain"
        assert cfg.drive.width == 0.05
        assert cfg.numerics.tol_ode == 1e-9
        assert cfg.output.directory == "out"
        assert cfg.output.precision == 8
        assert cfg.sweep.variable == "Omega"
        assert cfg.sweep.n_points == 11
        assert cfg.sweep.observable == "NGammaFinal"

    def test_drive_targets_default_per_scenario(self, tmp_path):
        wall = WALL.replace('target = "delta"\n', "")
        assert parse_config(write(tmp_path, wall)).drive.target == "delta"
        plasma = PLASMA.replace('target = "mp2"\n', "")
        assert parse_config(write(tmp_path, plasma)).drive.target == "mp2"


class TestUnknownKeys:
    def test_typo_carries_field_path(self, tmp_path):
        bad = PLASMA.replace("slabThickness", "slabThikness")
        with pytest.raises(ConfigError, match="unknown key 'scenario.slabThikness'"):
            parse_config(write(tmp_path, bad))

    def test_unknown_section(self, tmp_path):
        with pytest.raises(ConfigError, match="unknown key 'scenari'"):
            parse_config(write(tmp_path, SYNTH + "\n[scenari]\nx = 1\n"))

    def test_unknown_drive_key(self, tmp_path):
        bad = SYNTH + "\n"  # synthetic drives take Omega/Delta/nPulse only
        bad = bad.replace("[drive]", "[drive]\npmax = 1.0")
        with pytest.raises(ConfigError, match="unknown key 'drive.pmax'"):
            parse_config(write(tmp_path, bad))

    def test_scenario_keys_are_type_specific(self, tmp_path):
        bad = WALL.replace("mass2 = 1e6", "mass2 = 1e6\nslabLeft = 0.2")
        with pytest.raises(ConfigError, match="unknown key 'scenario.slabLeft'"):
            parse_config(write(tmp_path, bad))


class TestRequiredAndTypes:
    def test_missing_scenario_section(self, tmp_path):
        with pytest.raises(ConfigError, match=r"missing required section \[scenario\]"):
            parse_config(write(tmp_path, "[drive]\nDelta = 0.0\n"))

    def test_missing_required_key(self, tmp_path):
        bad = WALL.replace("mass2 = 1e6\n", "")
        with pytest.raises(ConfigError, match="missing required key scenario.mass2"):
            parse_config(write(tmp_path, bad))

    def test_missing_pmax(self, tmp_path):
        bad = WALL.replace("pmax = 1e-3\n", "")
        with pytest.raises(ConfigError, match="missing required key drive.pmax"):
            parse_config(write(tmp_path, bad))

    def test_wrong_types(self, tmp_path):
        bad = WALL.replace("length = 1.0", 'length = "big"')
        with pytest.raises(ConfigError, match="scenario.length: expected a number"):
            parse_config(write(tmp_path, bad))
        bad = WALL.replace("nModes = 2", "nModes = 2.5")
        with pytest.raises(ConfigError, match="modes.nModes: expected an integer"):
            parse_config(write(tmp_path, bad))
        bad = SYNTH + '\n[evolve]\nmultimode = "yes"\n'
        with pytest.raises(ConfigError, match="evolve.multimode: expected true/false"):
            parse_config(write(tmp_path, bad))

    def test_section_must_be_table(self, tmp_path):
        with pytest.raises(ConfigError, match="expected a section"):
            parse_config(write(tmp_path, "scenario = 3\n"))

    def test_unknown_scenario_type(self, tmp_path):
        bad = SYNTH.replace('"synthetic"', '"cavity"')
        with pytest.raises(ConfigError, match="scenario.type"):
            parse_config(write(tmp_path, bad))


class TestCrossFieldRules:
    def test_slab_must_fit(self, tmp_path):
        bad = PLASMA.replace("slabLeft = 0.05", "slabLeft = 0.0999999")
        with pytest.raises(ConfigError, match="slab must fit inside the cavity"):
            parse_config(write(tmp_path, bad))

    def test_wall_sweep_must_stay_inside(self, tmp_path):
        bad = WALL.replace("mass2 = 1e6", "mass2 = 1e6\ndeltaMax = 1.5")
        with pytest.raises(ConfigError, match="deltaMax"):
            parse_config(write(tmp_path, bad))

    def test_wall_displacement_below_length(self, tmp_path):
        bad = WALL.replace("pmax = 1e-3", "pmax = 1.0")
        with pytest.raises(ConfigError, match="drive.pmax"):
            parse_config(write(tmp_path, bad))

    def test_exactly_one_of_omega_delta(self, tmp_path):
        bad = SYNTH.replace("Delta = 0.0", "Delta = 0.0\nOmega = 2.02")
        with pytest.raises(ConfigError, match="exactly one"):
            parse_config(write(tmp_path, bad))
        bad = SYNTH.replace("Delta = 0.0\n", "")
        with pytest.raises(ConfigError, match="exactly one"):
            parse_config(write(tmp_path, bad))

    def test_target_must_suit_scenario(self, tmp_path):
        bad = WALL.replace('target = "delta"', 'target = "mp2"')
        with pytest.raises(ConfigError, match="'delta' only"):
            parse_config(write(tmp_path, bad))
        bad = PLASMA.replace('target = "mp2"', 'target = "delta"')
        with pytest.raises(ConfigError, match="'mp2' or 'eps1'"):
            parse_config(write(tmp_path, bad))

    def test_profile_requirements(self, tmp_path):
        bad = PLASMA.replace("width = 0.05\n", "")
        with pytest.raises(ConfigError, match="drive.width"):
            parse_config(write(tmp_path, bad))
        table = PLASMA.replace('profile = "pulseTrain"', 'profile = "table"')
        with pytest.raises(ConfigError, match="drive.times/drive.values"):
            parse_config(write(tmp_path, table))
        table = table.replace("pmax = 50.0",
                              "times = [0.0, 1.0, 2.0]\nvalues = [0.0, 1.0]")
        with pytest.raises(ConfigError, match="match drive.times"):
            parse_config(write(tmp_path, table))

    def test_positivity(self, tmp_path):
        bad = SYNTH.replace("omega0 = 1.0", "omega0 = -1.0")
        with pytest.raises(ConfigError, match="must be positive"):
            parse_config(write(tmp_path, bad))
        bad = PLASMA.replace("tolOde = 1e-9", "tolOde = 0")
        with pytest.raises(ConfigError, match="numerics.tolOde"):
            parse_config(write(tmp_path, bad))

    def test_enumerations(self, tmp_path):
        bad = PLASMA.replace('variable = "Omega"', 'variable = "omega"')
        with pytest.raises(ConfigError, match="sweep.variable"):
            parse_config(write(tmp_path, bad))
        bad = WALL.replace('route = "quadrature"', 'route = "exact"')
        with pytest.raises(ConfigError, match="couplings.route"):
            parse_config(write(tmp_path, bad))
        bad = WALL.replace("pair = [0, 1]", "pair = [0, -1]")
        with pytest.raises(ConfigError, match="couplings.pair"):
            parse_config(write(tmp_path, bad))
        bad = PLASMA.replace("precision = 8", "precision = 18")
        with pytest.raises(ConfigError, match="output.precision"):
            parse_config(write(tmp_path, bad))


class TestLoading:
    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            parse_config(tmp_path / "nope.toml")

    def test_toml_syntax_error_names_location(self, tmp_path):
        p = write(tmp_path, "[scenario\ntype = 'synthetic'\n")
        with pytest.raises(ConfigError, match="invalid TOML") as err:
            parse_config(p)
        assert "line" in str(err.value)

    def test_bad_json(self, tmp_path):
        p = write(tmp_path, "{not json", name="run.json")
        with pytest.raises(ConfigError, match="invalid JSON"):
            parse_config(p)
        p = write(tmp_path, "[1, 2]", name="list.json")
        with pytest.raises(ConfigError, match="must be an object"):
            parse_config(p)

    def test_manifest_config_extraction(self, tmp_path):
        cfg = parse_config(write(tmp_path, SYNTH))
        manifest = {"subcommand": "evolve", "config": resolved_dict(cfg),
                    "configHash": "abc"}
        p = tmp_path / "manifest.json"
        p.write_text(json.dumps(manifest), encoding="utf-8")
        assert parse_config(p) == cfg

    def test_plain_json_config(self, tmp_path):
        cfg = parse_config(write(tmp_path, PLASMA))
        p = tmp_path / "direct.json"
        p.write_text(json.dumps(resolved_dict(cfg)), encoding="utf-8")
        assert parse_config(p) == cfg


class TestRoundTrip:
    @pytest.mark.parametrize("text", [SYNTH, WALL, PLASMA], ids=["synth", "wall", "plasma"])
    def test_resolved_dict_round_trips(self, tmp_path, text):
        cfg = parse_config(write(tmp_path, text))
        doc = resolved_dict(cfg)
        p = tmp_path / "resolved.json"
        p.write_text(json.dumps(doc), encoding="utf-8")
        cfg2 = parse_config(p)
        assert cfg2 == cfg
        assert resolved_dict(cfg2) == doc

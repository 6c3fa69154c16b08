import json
import math

import pytest

from pupilcover import Point, Pupil, PupilConfig
from pupilcover.cli import ConfigError, main, parse_config, serialize_config


def write_config(tmp_path, payload, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


GOOD = {"objective_radius": 1.0, "pupils": [{"x": 0.0, "y": 0.0, "r": 0.5}]}
UNCOVERED = {"objective_radius": 1.0, "pupils": [{"x": 0.0, "y": 0.0, "r": 0.3}]}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_config_round_trip():
    cfg = PupilConfig(
        [Pupil(Point(0.1, -0.25), 0.125), Pupil(Point(1 / 3, 2 / 7), 0.0)], 0.875
    )
    doc = json.dumps(serialize_config(cfg)).encode()
    parsed, _ = parse_config(doc)
    assert parsed == cfg
    again, _ = parse_config(json.dumps(serialize_config(parsed)).encode())
    assert again == cfg


@pytest.mark.parametrize(
    "payload,fragment",
    [
        ({"objective_radius": 1.0}, "pupils"),
        ({"objective_radius": 1.0, "pupils": []}, "pupils"),
        ({"objective_radius": -1.0, "pupils": [{"x": 0, "y": 0, "r": 0.1}]}, "objective_radius"),
        ({"objective_radius": 1.0, "pupils": [{"x": 0, "y": 0, "r": -0.1}]}, "pupils[0].r"),
        ({"objective_radius": 1.0, "pupils": [{"x": 0, "y": 0}]}, "pupils[0].r"),
        ({"objective_radius": 1.0, "pupils": [{"x": 0, "y": 0, "r": 0.1, "w": 2}]}, "unknown"),
        ({"objective_radius": 1.0, "pupils": [{"x": 0, "y": 0, "r": 0.1}], "extra": 1}, "unknown"),
        (
            {"objective_radius": 1.0, "pupils": [{"x": 0, "y": 0, "r": 0.1}], "objective_center": [1, 0]},
            "objective_center",
        ),
        (
            {"objective_radius": 1.0, "pupils": [{"x": 0, "y": 0, "r": 0.1}], "options": {"bogus": 1}},
            "unknown",
        ),
    ],
)
def test_config_validation_errors(payload, fragment):
    with pytest.raises(ConfigError) as err:
        parse_config(json.dumps(payload).encode())
    assert fragment in str(err.value)


def test_decide_exit_codes(tmp_path, capsys):
    code, out, _ = run(capsys, "decide", write_config(tmp_path, GOOD))
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1
    assert report["result"]["covered"] is True
    assert report["result"]["witness"] is None

    code, out, _ = run(capsys, "decide", write_config(tmp_path, UNCOVERED))
    assert code == 1
    report = json.loads(out)
    assert report["result"]["covered"] is False
    wx, wy = report["result"]["witness"]
    assert math.hypot(wx, wy) == pytest.approx(1.0, abs=1e-9)

    bad = {"objective_radius": 1.0, "pupils": [{"x": 0, "y": 0, "r": -1.0}]}
    code, _, err = run(capsys, "decide", write_config(tmp_path, bad))
    assert code == 2
    assert "pupils[0].r" in err


def test_decide_missing_file(capsys):
    code, _, err = run(capsys, "decide", "/nonexistent/path.json")
    assert code == 2
    assert "cannot read" in err


def test_alpha_report(tmp_path, capsys):
    code, out, _ = run(capsys, "alpha", write_config(tmp_path, UNCOVERED))
    assert code == 0
    result = json.loads(out)["result"]
    assert result["alpha_star"] == pytest.approx(0.4, abs=1e-9)
    assert result["per_disk_alpha"]["0,0"] == pytest.approx(0.4, abs=1e-9)
    assert result["r_star"] == pytest.approx(0.6, abs=1e-9)


def test_minsum_report_and_out_file(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "minsum", write_config(tmp_path, UNCOVERED), "--out", str(out_path)
    )
    assert code == 0
    assert out == ""
    report = json.loads(out_path.read_text())
    final = report["result"]["trace"]["final_config"]
    assert final["pupils"][0]["r"] == pytest.approx(0.5, abs=1e-9)
    assert report["result"]["covered"] is True


def test_minsum_infeasible_exit_3(tmp_path, capsys):
    code, out, _ = run(
        capsys, "minsum", write_config(tmp_path, UNCOVERED), "--max-radius", "0.01"
    )
    assert code == 3
    report = json.loads(out)
    assert report["error"]["type"] == "Infeasible"


def test_minsum_iteration_limit_exit_3(tmp_path, capsys):
    cfg = {
        "objective_radius": 1.0,
        "pupils": [
            {"x": -0.4, "y": 0.1, "r": 0.25},
            {"x": 0.3, "y": -0.2, "r": 0.25},
            {"x": 0.1, "y": 0.45, "r": 0.25},
        ],
    }
    code, out, _ = run(
        capsys, "minsum", write_config(tmp_path, cfg), "--max-iterations", "3"
    )
    assert code == 3
    assert json.loads(out)["error"]["type"] == "IterationLimit"


def test_render_empty_config_exit_2(tmp_path, capsys):
    path = write_config(tmp_path, {"objective_radius": 1.0, "pupils": []})
    code, _, err = run(capsys, "render", path, "--out", str(tmp_path / "x.svg"))
    assert code == 2
    assert "pupils" in err


def test_move_and_exhaustive_and_maxobj(tmp_path, capsys):
    cfg = {
        "objective_radius": 1.0,
        "pupils": [
            {"x": -0.4, "y": 0.0, "r": 0.2},
            {"x": 0.0, "y": 0.05, "r": 0.2},
            {"x": 0.4, "y": 0.0, "r": 0.2},
        ],
    }
    path = write_config(tmp_path, cfg)
    code, out, _ = run(capsys, "move", path, "--iterations", "3")
    assert code == 0
    assert len(json.loads(out)["result"]["trace"]["iterations"]) == 4

    code, out, _ = run(capsys, "exhaustive", path, "--theta", "0.25")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["sum_of_radii"] <= 0.5 + 3 * 0.25 + 1e-9

    code, out, _ = run(capsys, "maxobj", path)
    assert code == 0
    assert json.loads(out)["result"]["r_star"] > 0


def test_design_three_cli(capsys):
    code, out, _ = run(capsys, "design-three", "--objective-radius", "2.0")
    assert code == 0
    design = json.loads(out)["result"]["design"]
    assert sorted(p["r"] for p in design["pupils"]) == [0.0, 0.0, 1.0]


def test_design_prime_cli(capsys):
    code, out, _ = run(
        capsys,
        "design-prime",
        "--objective-radius", "4",
        "--pupil-radius", "0.7071067811865476",
    )
    assert code == 0
    result = json.loads(out)["result"]
    assert result["count"] == 64
    assert result["p"] == 2
    assert len(result["design"]["pupils"]) == 64


def test_design_prime_invalid_radius_exit_2(capsys):
    code, _, err = run(
        capsys, "design-prime", "--objective-radius", "1", "--pupil-radius", "0.9"
    )
    assert code == 2
    assert "radius" in err


def test_render_deterministic_and_counts(tmp_path, capsys):
    cfg = {
        "objective_radius": 1.0,
        "pupils": [
            {"x": 0.0, "y": 0.0, "r": 0.5},
            {"x": 1.0, "y": 0.0, "r": 0.0},
            {"x": -1.0, "y": 0.0, "r": 0.0},
        ],
    }
    path = write_config(tmp_path, cfg)
    out1 = tmp_path / "a.svg"
    out2 = tmp_path / "b.svg"
    assert run(capsys, "render", path, "--out", str(out1))[0] == 0
    assert run(capsys, "render", path, "--out", str(out2))[0] == 0
    doc1 = out1.read_bytes()
    assert doc1 == out2.read_bytes()
    text = doc1.decode()
    assert text.count('class="objective"') == 1
    assert text.count('class="pupil"') == 3
    assert text.count('class="acs"') >= 3


def test_render_layer_subset(tmp_path, capsys):
    path = write_config(tmp_path, GOOD)
    out = tmp_path / "o.svg"
    assert run(capsys, "render", path, "--out", str(out), "--layers", "objective,pupils")[0] == 0
    text = out.read_text()
    assert 'class="acs"' not in text
    assert 'class="objective"' in text


def test_render_unwritable_path(tmp_path, capsys):
    path = write_config(tmp_path, GOOD)
    code, _, err = run(capsys, "render", path, "--out", "/nonexistent/dir/x.svg")
    assert code == 2


def test_render_bad_layer(tmp_path, capsys):
    path = write_config(tmp_path, GOOD)
    code, _, err = run(capsys, "render", path, "--out", str(tmp_path / "x.svg"), "--layers", "pupls")
    assert code == 2
    assert "unknown layers" in err


def test_report_floats_round_trip(tmp_path, capsys):
    cfg = {
        "objective_radius": 0.875,
        "pupils": [{"x": 1 / 3, "y": -2 / 7, "r": 0.1234567890123456}],
    }
    path = write_config(tmp_path, cfg)
    code, out, _ = run(capsys, "alpha", path)
    assert code == 0
    result = json.loads(out)["result"]
    assert isinstance(result["alpha_star"], float)
    # full double precision survives the JSON round trip
    assert json.loads(json.dumps(result)) == result

import json

import numpy as np
import pytest

from lambdavar import GridFunction
from lambdavar.cli import main


def test_varcalc_grid_file(tmp_path, capsys):
    ax = np.array([0.0, 0.5, 1.0])
    g = tmp_path / "g.json"
    GridFunction((ax, ax), np.outer(ax, ax)).dump(g)
    out = tmp_path / "v.json"
    assert main(["varcalc", "--grid", str(g), "--functional", "total", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["lower"] == doc["upper"] == 3.0 and doc["exact"] is True
    assert len(doc["parts"]) == 3
    capsys.readouterr()
    for fn, expect in (("sharp", 2.0), ("star", 1.0), ("index", 1.0)):
        assert main(["varcalc", "--grid", str(g), "--functional", fn]) == 0
        assert json.loads(capsys.readouterr().out)["lower"] == expect


def test_varcalc_source(capsys):
    assert main(["varcalc", "--source", "square", "--dim", "1", "--points", "8",
                 "--lambda", "paper:d=2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["exact"] and doc["lambda"] == "paper:d=2"


def test_fourier_command(tmp_path, capsys):
    cpath = tmp_path / "c.json"
    assert main(["fourier", "--source", "quadrant_jump", "--N", "32", "--x", "0,0",
                 "--coeffs-out", str(cpath)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["f_star"] == 0.25 and doc["regular"]
    assert abs(doc["partial_sum"] - 0.25) < 5e-2
    assert json.loads(cpath.read_text())["N"] == [32, 32]


def test_study_command(tmp_path, capsys):
    assert main(["study", "inclusion", "--seed", "3", "--count", "6", "--out", str(tmp_path)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines and all(l.startswith("[PASS]") for l in lines)
    assert (tmp_path / "inclusion.csv").exists()


def test_study_requires_seed(capsys):
    assert main(["study", "vn"]) == 2
    assert "seed" in capsys.readouterr().err


def test_study_config_file(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"study": "embedding", "shape": [3, 3], "count": 3, "seed": 1,
                               "lam": "harmonic"}))
    assert main(["study", "embedding", "--config", str(cfg), "--out", str(tmp_path)]) == 0
    assert len((tmp_path / "embedding.csv").read_text().splitlines()) == 4


def test_bad_arguments():
    with pytest.raises(SystemExit):
        main(["varcalc", "--functional", "sharp"])
    assert main(["varcalc", "--source", "nope"]) == 2

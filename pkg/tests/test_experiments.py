import json

import numpy as np
import pytest

from lambdavar.experiments import (KINDS, StudyConfig, corpus, default_config, random_grid, run_study,
                                   to_csv)
from lambdavar.experiments.studies import nonincreasing


def test_random_grid_is_deterministic():
    for kind in KINDS:
        a = random_grid(kind, 3, (4, 4))
        b = random_grid(kind, 3, (4, 4))
        np.testing.assert_array_equal(a.values, b.values)
        assert not np.array_equal(a.values, random_grid(kind, 4, (4, 4)).values)


def test_corpus_cycles_kinds():
    specs = corpus(range(6), (3, 3))
    assert [s.kind for s in specs] == list(KINDS) * 2
    with pytest.raises(ValueError):
        random_grid("nope", 0, (2, 2))


def test_config_round_trip_and_overrides(tmp_path):
    cfg = default_config("inclusion", seed=5, count=4)
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(cfg.to_json()))
    back = StudyConfig.load(p, count=2)
    assert back.count == 2 and back.seed == 5 and back.shape == (4, 4)
    with pytest.raises(ValueError):
        StudyConfig.from_json({"study": "vn", "bogus": 1})
    with pytest.raises(ValueError):
        StudyConfig("unknown")


def test_random_studies_need_a_seed():
    for study in ("embedding", "vn", "inclusion"):
        with pytest.raises(ValueError):
            run_study(default_config(study, count=2))


def test_nonincreasing_helper():
    assert nonincreasing([1.0, 0.9, 0.92, 0.5], slack=0.05, floor=0.0)
    assert not nonincreasing([1.0, 1.2], slack=0.05, floor=0.0)
    assert nonincreasing([1e-14, 5e-13], slack=0.05, floor=1e-12)


def test_small_embedding_study(tmp_path):
    rep = run_study(default_config("embedding", seed=11, count=12))
    assert rep.ok
    assert rep.summary["used"] + rep.summary["skipped_constant"] + rep.summary["skipped_inexact"] == 12
    assert rep.summary["max_ratio"] == max(r["ratio"] for r in rep.rows)
    files = rep.write(tmp_path, svg=True)
    assert {f.name for f in files} == {"embedding.csv", "embedding_summary.json", "embedding.svg"}
    assert json.loads((tmp_path / "embedding_summary.json").read_text())["ok"] is True


def test_studies_are_byte_identical_on_rerun(tmp_path):
    cfg = default_config("inclusion", seed=2, count=9)
    a, b = run_study(cfg), run_study(cfg)
    assert a.csv_text() == b.csv_text()
    a.write(tmp_path / "a", svg=True)
    b.write(tmp_path / "b", svg=True)
    for name in ("inclusion.csv", "inclusion_summary.json", "inclusion.svg"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_csv_format():
    text = to_csv([{"a": 1, "b": 0.1, "c": True, "d": float("inf")}])
    assert text == "a,b,c,d\n1,0.1,true,inf\n"
    assert to_csv([]) == ""

import json

import pytest

from psc import protocol
from psc.errors import BackendDivergence, ScenarioError, ValidationFailed
from psc.protocol import DATA_DIR, execute, load_scenario, parse_scenario, record_json, run


def scn(text):
    return parse_scenario(text, DATA_DIR)


@pytest.mark.parametrize(
    "name", ["single_moves", "double_braid", "composite_control", "create_fuse", "single_braid", "ghz_12", "ghz_13"]
)
def test_backends_agree(name):
    sc = load_scenario(f"{DATA_DIR}/{name}.scn")
    a = record_json(run(sc, "engine", seed=5))
    b = record_json(run(sc, "oracle", seed=5))
    assert a == b
    run(sc, "both", seed=5)


def test_single_moves_keep_tracked_line():
    rec = run(load_scenario(f"{DATA_DIR}/single_moves.scn"), "engine")
    outs = [r["outcome"] for r in rec["instructions"] if r["op"].startswith("measure")]
    assert outs == [1, 1, 1]
    for r in rec["instructions"]:
        assert set(r["stabilizer_signs"].values()) <= {1}


def test_create_fuse_vacuum():
    rec = run(load_scenario(f"{DATA_DIR}/create_fuse.scn"), "both")
    assert rec["instructions"][-1]["outcome"] == 1


def test_record_shape():
    rec = run(load_scenario(f"{DATA_DIR}/create_fuse.scn"), seed=3)
    assert rec["seed"] == 3 and len(rec["final_graph_hash"]) == 16
    again = json.loads(record_json(rec))
    assert again == rec


def test_validation_catches_late_errors():
    text = "load patch_2x5.psc\ninit\ncreate a b edge 1.S 6.N\nmove a to 0.E\n"
    with pytest.raises(ValidationFailed) as ei:
        run(scn(text))
    assert ei.value.index == 3
    assert ei.value.line().startswith("ERR ValidationFailed")


@pytest.mark.parametrize(
    "text",
    [
        "load patch_2x5.psc\nbogus\n",
        "load patch_2x5.psc\ninit\ncreate a b 1.S 6.N\n",
        "load patch_2x5.psc\ncreate a b edge 1.S 6.N\nmeasure tracked a b\n",
        "load patch_2x5.psc\ncreate a b edge 1.S 6.N\nmove a to 2.S\n",
        "load patch_2x5.psc\ninit\nfuse x y\n",
        "load nowhere.psc\n",
    ],
)
def test_bad_scenarios(text):
    with pytest.raises(ValidationFailed):
        run(scn(text))


def test_seed_directive():
    with pytest.raises(ScenarioError):
        scn("seed 1 2\n")
    assert scn("seed 0x10\n").seed == 16


def test_unknown_backend():
    with pytest.raises(ScenarioError):
        protocol.Runner(backend="gpu")


def test_divergence_detected(monkeypatch):
    sc = load_scenario(f"{DATA_DIR}/create_fuse.scn")
    orig = protocol.OracleBackend.measure
    monkeypatch.setattr(protocol.OracleBackend, "measure", lambda self, p: -orig(self, p))
    with pytest.raises(BackendDivergence):
        run(sc, "both")


def test_on_move_hook():
    seen = []
    execute(load_scenario(f"{DATA_DIR}/single_moves.scn"), on_move=lambda r, mv: seen.append(mv.sign))
    assert len(seen) == 3


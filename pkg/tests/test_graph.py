import random

import pytest

from graphgen import random_psc_graph
from psc import errors
from psc.graph import build_graph, load_graph, parse_graph
from psc.protocol import resolve_data


def load(name):
    return load_graph(resolve_data(name)).decorated


@pytest.mark.parametrize(
    "name, nq, ns, nsig",
    [("square4.psc", 4, 1, 8), ("patch_2x5.psc", 10, 9, 4), ("patch_5x5.psc", 25, 24, 4), ("patch_10x10.psc", 100, 99, 4)],
)
def test_shipped_graphs(name, nq, ns, nsig):
    dg = load(name)
    assert (dg.n_qubits, dg.n_stabilizers, dg.n_sigma) == (nq, ns, nsig)
    assert dg.check_euler()


def test_vertex_numbering():
    dg = load("square4.psc")
    # corners are 4*i + slot with slots E, N, W, S
    assert [dg.corner_name(v) for v in range(4)] == ["0.E", "0.N", "0.W", "0.S"]
    assert dg.parse_corner("3.S") == 15
    assert dg.unpaired == (1, 2, 4, 5, 10, 11, 12, 15)


def test_text_roundtrip():
    g = load_graph(resolve_data("patch_2x5.psc"))
    again = parse_graph(g.to_text())
    assert again.decorated.structure_hash() == g.decorated.structure_hash()


@pytest.mark.parametrize(
    "text, exc",
    [
        ("qubit 0 0 0\nqubit 1 1 0\nedge 0 1\n", errors.BadDegree),
        ("qubit 0 0 0\nqubit 1 1 1\nedge 0 1\n", errors.AngleTie),
        ("qubit 0 0 0\nqubit 0 1 0\n", errors.ParseError),
        ("qubit 0 0 0\nbogus\n", errors.ParseError),
        ("qubit 0 0 0\nqubit 1 1 0\nedge 0 2\n", errors.GraphError),
        ("qubit 0 0 0\nqubit 1 1 0\nedge 0.Q 1.W\n", errors.ParseError),
    ],
)
def test_invalid_graphs(text, exc):
    with pytest.raises(exc):
        parse_graph(text)


def test_crossing_edges_rejected():
    pos = {0: (0, 0), 1: (2, 0), 2: (1, 1), 3: (1, -1), 4: (0, 2), 5: (2, 2), 6: (0, -2), 7: (2, -2)}
    with pytest.raises(errors.GraphError):
        build_graph(pos, [(0, 1), (2, 3), (0, 4), (4, 5), (5, 1), (0, 6), (6, 7), (7, 1)])


def test_disconnected_rejected():
    sq = [(0, 1), (0, 2), (1, 3), (2, 3)]
    pos = {0: (0, 1), 1: (1, 1), 2: (0, 0), 3: (1, 0), 4: (5, 1), 5: (6, 1), 6: (5, 0), 7: (6, 0)}
    with pytest.raises(errors.Disconnected):
        build_graph(pos, sq + [(a + 4, b + 4) for a, b in sq])


def test_delete_and_add_link():
    dg = load("patch_2x5.psc")
    u = dg.parse_corner("1.S")
    v = dg.partner[u]
    g, upd = dg.delete_L_link(u, v)
    assert g.n_sigma == dg.n_sigma + 2 and g.check_euler()
    assert len(upd.removed) == 2 and len(upd.added) == 1
    back, _, readout = g.add_L_link(u, v)
    assert back.structure_hash() == dg.structure_hash()
    assert readout in back.plaquettes
    with pytest.raises(errors.LinkAbsent):
        g.delete_L_link(u, v)
    with pytest.raises(errors.CornersPaired):
        dg.add_L_link(u, v)


def test_elementary_move_keeps_invariants():
    rnd = random.Random(3)
    for _ in range(40):
        dg = random_psc_graph(rnd, 30).decorated
        for _ in range(5):
            cands = [(a, t) for a in dg.unpaired for t in dg.move_targets(a)]
            if not cands:
                break
            a, t = rnd.choice(cands)
            new, path, _ = dg.elementary_move(a, t)
            assert path[0] == a and path[-1] == t
            assert new.partner[a] >= 0 and new.partner[t] < 0
            assert new.n_sigma == dg.n_sigma and new.check_euler()
            dg = new


def test_move_errors():
    dg = load("patch_2x5.psc")
    paired = dg.parse_corner("1.S")
    with pytest.raises(errors.NotUnpaired):
        dg.move_path(paired, dg.parse_corner("2.S"))
    outer = dg.unpaired[0]
    assert dg.move_targets(outer) == []


def test_interning_returns_same_object():
    dg = load("patch_2x5.psc")
    u = dg.parse_corner("1.S")
    a, _ = dg.delete_L_link(u, dg.partner[u])
    b, _ = dg.delete_L_link(u, dg.partner[u])
    assert a is b

import random

import numpy as np
import pytest

from psc import compiler, kasteleyn
from psc.errors import InvalidPath, NotALoop
from psc.graph import load_graph
from psc.oracle import fidelity_error
from psc.pauli import PauliRotation, PauliString
from psc.paths import DirectedPath
from psc.protocol import resolve_data


@pytest.fixture(scope="module")
def patch():
    return load_graph(resolve_data("patch_2x5.psc")).decorated


def test_stabilizers_commute_and_are_hermitian(patch):
    stabs = compiler.stabilizers(patch)
    assert len(stabs) == patch.n_stabilizers
    vals = list(stabs.values())
    for a in vals:
        assert a.is_hermitian()
        assert all(a.commutes(b) for b in vals)


def test_stabilizer_memo_is_a_copy(patch):
    s1 = compiler.stabilizers(patch)
    s1.clear()
    assert compiler.stabilizers(patch)


def test_plaquette_letters_on_square():
    dg = load_graph(resolve_data("square4.psc")).decorated
    b = compiler.compile_stabilizer(dg, dg.plaquettes[0])
    assert b.weight == 4 and b.is_hermitian()


def test_line_commutes_with_stabilizers_off_ends(patch):
    line = kasteleyn.lift_canonical(patch, ["0.W", "1", "2", "3", "4.N"])
    w = compiler.compile_line(patch, line)
    assert w.is_hermitian()
    assert all(w.commutes(b) for b in compiler.stabilizers(patch).values())


def test_compile_line_rejects_invalid(patch):
    bad = DirectedPath.on(patch, (0, 1))  # one l-edge is a valid open line
    compiler.compile_line(patch, bad)
    cyc = patch.faces[patch.plaquettes[0]]
    with pytest.raises(InvalidPath):
        compiler.compile_line(patch, DirectedPath.on(patch, cyc + (cyc[0],)))
    with pytest.raises(NotALoop):
        compiler.open_loop(bad)


def test_move_rotation_signs(patch):
    u = patch.parse_corner("1.S")
    g, _ = patch.delete_L_link(u, patch.partner[u])
    for t in g.move_targets(u):
        mv = compiler.elementary_move(g, u, t)
        if mv.ccw:
            assert mv.sign == -1
        else:
            assert mv.sign == (-1 if mv.path.n_ll % 2 else 1)
        assert compiler.elementary_move(g, u, t, composite=True).sign == -mv.sign


def test_decompose_matches_rotation():
    rnd = random.Random(9)
    for _ in range(60):
        n = rnd.randint(1, 5)
        letters = "".join(rnd.choice("IXYZ") for _ in range(n))
        axis = PauliString.from_letters(letters).scaled(rnd.choice((0, 2)))
        for s in (1, -1):
            gates, k = compiler.decompose(PauliRotation(axis, s))
            U = compiler.gate_matrix(gates, n) * np.exp(1j * np.pi * k / 4)
            P = axis.to_matrix()
            want = (np.eye(1 << n) - 1j * s * P) / np.sqrt(2)
            assert np.abs(U - want).max() < 1e-12
            assert fidelity_error(U[:, 0], want[:, 0]) < 1e-12


def test_gates_text():
    gates, _ = compiler.decompose(PauliRotation(PauliString.from_letters("XZ"), 1))
    text = compiler.gates_text(gates, ["a", "b"])
    assert text.splitlines()[0] == "H a"
    assert "CNOT a b" in text

import random

import numpy as np
import pytest

from psc.errors import NonHermitianAxis, PauliError
from psc.pauli import PauliRotation, PauliString


def rand_pauli(rnd, n):
    return PauliString.from_letters("".join(rnd.choice("IXYZ") for _ in range(n)), rnd.randrange(4))


def test_parse_roundtrip():
    for text in ["+1|XYZI", "-1|YY", "+i|Z", "-i|IXI"]:
        assert str(PauliString.parse(text)) == text
    assert PauliString.parse("XZ") == PauliString.parse("+1|XZ")


def test_bad_letter():
    with pytest.raises(PauliError):
        PauliString.from_letters("XQ")
    with pytest.raises(PauliError):
        PauliString.parse("2|XX")


def test_product_matches_matrices():
    rnd = random.Random(1)
    for _ in range(200):
        n = rnd.randint(1, 4)
        a, b = rand_pauli(rnd, n), rand_pauli(rnd, n)
        assert np.allclose((a * b).to_matrix(), a.to_matrix() @ b.to_matrix())
        assert a.commutes(b) == np.allclose(a.to_matrix() @ b.to_matrix(), b.to_matrix() @ a.to_matrix())
        assert np.allclose(a.dagger().to_matrix(), a.to_matrix().conj().T)


def test_y_is_ixz():
    y = PauliString.from_letters("Y")
    assert y == PauliString.from_letters("X") * PauliString.from_letters("Z").scaled(1)
    assert y.sign == 1


def test_rotation_conjugation():
    rnd = random.Random(2)
    for _ in range(100):
        n = rnd.randint(1, 3)
        axis = rand_pauli(rnd, n)
        if not axis.is_hermitian():
            axis = axis.scaled(1)
        p = rand_pauli(rnd, n)
        for s in (1, -1):
            P = axis.to_matrix()
            U = (np.eye(len(P)) - 1j * s * P) / np.sqrt(2)  # exp(-i s pi/4 P), P^2 = 1
            rot = PauliRotation(axis, s)
            assert np.allclose(rot.conjugate(p).to_matrix(), U @ p.to_matrix() @ U.conj().T)
            assert rot.inverse().conjugate(rot.conjugate(p)) == p


def test_u_plus_maps_x_to_y_under_z():
    rot = PauliRotation(PauliString.from_letters("Z"), 1)
    assert str(rot.conjugate(PauliString.from_letters("X"))) == "+1|Y"


def test_non_hermitian_axis_rejected():
    with pytest.raises(NonHermitianAxis):
        PauliRotation(PauliString.from_letters("X", 1), 1)
    with pytest.raises(NonHermitianAxis):
        PauliString.from_letters("Z", 1).sign


def test_ratio():
    a = PauliString.parse("-1|XY")
    assert a.ratio(PauliString.parse("XY")) == 2
    with pytest.raises(PauliError):
        a.ratio(PauliString.parse("XX"))

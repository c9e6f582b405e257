"""Brute-force reference backends.

``DenseState`` is a plain statevector (qubit ``j`` is bit ``j`` of the basis
index) that consumes random bits in exactly the same order as the tableau
engine.  ``diamond_check`` builds the four Majoranas of one diamond as 4x4
matrices and checks the gauge-embedding identities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonHermitianObservable, RankDeficient, TooManyQubits
from .pauli import PauliRotation, PauliString

MAX_QUBITS = 14
TOL = 1e-9


class DenseState:
    def __init__(self, n: int, psi: np.ndarray):
        if n > MAX_QUBITS:
            raise TooManyQubits(f"{n} qubits exceeds the dense limit of {MAX_QUBITS}")
        self.n = n
        self.psi = psi
        self._idx = np.arange(1 << n, dtype=np.uint64)

    @classmethod
    def zero(cls, n: int) -> "DenseState":
        if n > MAX_QUBITS:
            raise TooManyQubits(f"{n} qubits exceeds the dense limit of {MAX_QUBITS}")
        psi = np.zeros(1 << n, dtype=complex)
        psi[0] = 1
        return cls(n, psi)

    @classmethod
    def from_stabilizers(cls, gens) -> "DenseState":
        """Project basis states onto the joint +1 eigenspace until one survives."""
        n = gens[0].n
        st = cls.zero(n)
        for b in range(1 << n):
            psi = np.zeros(1 << n, dtype=complex)
            psi[b] = 1
            st.psi = psi
            for g in gens:
                st.psi = 0.5 * (st.psi + st.pauli_vec(g))
            nrm = np.linalg.norm(st.psi)
            if nrm > 1e-6:
                st.psi /= nrm
                return st
        raise RankDeficient("stabilizers admit no common +1 eigenvector")

    def copy(self) -> "DenseState":
        return DenseState(self.n, self.psi.copy())

    def pauli_vec(self, p: PauliString) -> np.ndarray:
        """``P |psi>`` for ``P = i**e X**x Z**z``."""
        idx = self._idx
        src = idx ^ np.uint64(p.x)
        sgn = 1 - 2 * (np.bitwise_count(src & np.uint64(p.z)) & 1).astype(np.int64)
        return (1j) ** p.e * sgn * self.psi[src]

    def apply_pauli(self, p: PauliString) -> "DenseState":
        self.psi = self.pauli_vec(p)
        return self

    def apply_rotation(self, rot: PauliRotation) -> "DenseState":
        c = math.cos(math.pi / 4)
        self.psi = c * self.psi - 1j * rot.sign * c * self.pauli_vec(rot.axis)
        return self

    def apply_gates(self, gates, phase8: int = 0) -> "DenseState":
        """Apply a gate list in order, then the global phase ``exp(i*pi*phase8/4)``."""
        psi, idx = self.psi, self._idx
        for g in gates:
            if g.name == "CNOT":
                c, t = g.qubits
                ctl = ((idx >> np.uint64(c)) & np.uint64(1)).astype(bool)
                psi = np.where(ctl, psi[idx ^ np.uint64(1 << t)], psi)
                continue
            (q,) = g.qubits
            bit = ((idx >> np.uint64(q)) & np.uint64(1)).astype(bool)
            if g.name == "H":
                flip = psi[idx ^ np.uint64(1 << q)]
                psi = (flip + np.where(bit, -psi, psi)) / math.sqrt(2)
            elif g.name in ("S", "SDG", "Z"):
                ph = {"S": 1j, "SDG": -1j, "Z": -1}[g.name]
                psi = np.where(bit, ph * psi, psi)
            elif g.name == "X":
                psi = psi[idx ^ np.uint64(1 << q)]
            else:
                raise ValueError(f"unknown gate {g.name}")
        self.psi = psi * np.exp(1j * math.pi * phase8 / 4)
        return self

    def expectation_value(self, p: PauliString) -> float:
        if not p.is_hermitian():
            raise NonHermitianObservable(str(p))
        return float(np.vdot(self.psi, self.pauli_vec(p)).real)

    def expectation(self, p: PauliString) -> int:
        v = self.expectation_value(p)
        if abs(v - 1) < TOL:
            return 1
        if abs(v + 1) < TOL:
            return -1
        return 0

    def measure(self, p: PauliString, rng) -> int:
        v = self.expectation_value(p)
        prob = (1 + v) / 2
        if prob > 1 - TOL:
            outcome = 1
        elif prob < TOL:
            outcome = -1
        else:
            outcome = rng.outcome()
        pv = self.pauli_vec(p)
        self.psi = 0.5 * (self.psi + outcome * pv)
        self.psi /= np.linalg.norm(self.psi)
        return outcome


def fidelity_error(a: np.ndarray, b: np.ndarray) -> float:
    """Max amplitude difference after removing the relative global phase."""
    k = int(np.argmax(np.abs(b)))
    if abs(b[k]) < 1e-15:
        return float(np.max(np.abs(a)))
    ph = a[k] / b[k]
    ph /= abs(ph) if abs(ph) > 0 else 1
    return float(np.max(np.abs(a - ph * b)))


# ---------------------------------------------------------------------------
# single-diamond Majorana model


@dataclass
class DiamondModel:
    """Four Majoranas ``alpha[s]`` at the E, N, W, S corners of one diamond.

    Fock modes ``c1 = (a1 + i a2)/2`` and ``c2 = (a3 + i a4)/2`` with a
    Jordan-Wigner string on the second mode.  The l-edge arrows are
    ``0->1, 1->2, 2->3, 0->3``, one clockwise edge about the face.
    """

    alpha: list
    arrows: tuple = ((0, 1), (1, 2), (2, 3), (0, 3))

    @classmethod
    def build(cls) -> "DiamondModel":
        a = np.array([[0, 1], [0, 0]], dtype=complex)
        z = np.diag([1.0, -1.0]).astype(complex)
        eye = np.eye(2, dtype=complex)
        c1 = np.kron(a, eye)
        c2 = np.kron(z, a)
        out = []
        for c in (c1, c2):
            out.append(c + c.conj().T)
            out.append(-1j * (c - c.conj().T))
        return cls(out)

    def parity(self, s: int) -> np.ndarray:
        """``(-1)**n_l = i alpha_k alpha_j`` for the l-edge ``s`` oriented j->k."""
        j, k = self.arrows[s]
        return 1j * self.alpha[k] @ self.alpha[j]

    def gamma(self, pair: int = 0) -> np.ndarray:
        return self.parity(pair) @ self.parity(pair + 2)


def diamond_check(tol: float = 1e-12) -> dict:
    """Verify the diamond identities; returns name -> max matrix error."""
    m = DiamondModel.build()
    al = m.alpha
    eye = np.eye(4)
    err = {}

    def rec(name, val):
        err[name] = max(err.get(name, 0.0), float(val))

    for j in range(4):
        for k in range(4):
            rec("clifford", np.abs(al[j] @ al[k] + al[k] @ al[j] - 2 * (j == k) * eye).max())
            rec("hermitian", np.abs(al[j] - al[j].conj().T).max())
    t1, t1p, t2, t2p = m.parity(0), m.parity(2), m.parity(1), m.parity(3)
    for t in (t1, t1p, t2, t2p):
        rec("parity_square", np.abs(t @ t - eye).max())
        rec("parity_hermitian", np.abs(t - t.conj().T).max())
    rec("opposite_commute", np.abs(t1 @ t1p - t1p @ t1).max())
    rec("opposite_commute", np.abs(t2 @ t2p - t2p @ t2).max())
    # a parity is not a multiple of the identity: its trace vanishes
    for t in (t1, t1p, t2, t2p):
        rec("not_scalar", abs(np.trace(t)) / 4)
    g = m.gamma(0)
    rec("gamma_square", np.abs(g @ g - eye).max())
    rec("gamma_pair_independent", np.abs(g - m.gamma(1)).max())
    for j in range(4):
        rec("gamma_charge", np.abs(g @ al[j] @ g + al[j]).max())
    # physical subspace Gamma = +1
    w, v = np.linalg.eigh(g)
    basis = v[:, w > 0]
    rec("physical_dim", abs(basis.shape[1] - 2))
    proj = lambda op: basis.conj().T @ op @ basis  # noqa: E731
    rec("tau1_equal", np.abs(proj(t1) - proj(t1p)).max())
    rec("tau2_equal", np.abs(proj(t2) - proj(t2p)).max())
    T1, T2 = proj(t1), proj(t2)
    rec("tau_anticommute", np.abs(T1 @ T2 + T2 @ T1).max())
    # rotate into the eigenbasis of tau1, then fix the relative phase so tau2 -> X
    ew, ev = np.linalg.eigh(T1)
    ev = ev[:, ::-1]  # +1 eigenvector first
    x01 = (ev.conj().T @ T2 @ ev)[0, 1]
    ev[:, 1] *= x01 / abs(x01)
    Zp = ev.conj().T @ T1 @ ev
    Xp = ev.conj().T @ T2 @ ev
    rec("tau1_is_Z", np.abs(Zp - np.diag([1, -1])).max())
    rec("tau2_is_X", np.abs(Xp - np.array([[0, 1], [1, 0]])).max())
    err["ok"] = all(v < tol for k, v in err.items() if k != "ok")
    return err

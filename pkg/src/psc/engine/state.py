"""Generators-only stabilizer tableau."""

from __future__ import annotations

import numpy as np

from ..errors import Inconsistent, NonCommuting, NonHermitianAxis, NonHermitianObservable, RankDeficient
from ..pauli import PauliRotation, PauliString


def _words(n: int) -> int:
    return max(1, (n + 63) >> 6)


def _pack(v: int, w: int) -> np.ndarray:
    return np.array([(v >> (64 * k)) & 0xFFFFFFFFFFFFFFFF for k in range(w)], dtype=np.uint64)


def _unpack(row) -> int:
    out = 0
    for k, word in enumerate(row):
        out |= int(word) << (64 * k)
    return out


class StabilizerState:
    """A pure stabilizer state held as ``n`` commuting Hermitian generators."""

    def __init__(self, n: int, X: np.ndarray, Z: np.ndarray, E: np.ndarray):
        from . import core

        self._core = core
        self.n = n
        self.X = X
        self.Z = Z
        self.E = E
        self._piv = None

    # construction -------------------------------------------------------
    @classmethod
    def from_generators(cls, n: int, gens) -> "StabilizerState":
        w = _words(n)
        X = np.zeros((len(gens), w), dtype=np.uint64)
        Z = np.zeros((len(gens), w), dtype=np.uint64)
        E = np.zeros(len(gens), dtype=np.uint8)
        for r, g in enumerate(gens):
            X[r] = _pack(g.x, w)
            Z[r] = _pack(g.z, w)
            E[r] = g.e
        return cls(n, X, Z, E)

    @classmethod
    def init_code_state(cls, stabilizers, fixings=()) -> "StabilizerState":
        """The +1 eigenstate of every supplied string."""
        gens = list(stabilizers) + list(fixings)
        if not gens:
            raise RankDeficient("no stabilizers given")
        n = gens[0].n
        for g in gens:
            if not g.is_hermitian():
                raise NonHermitianObservable(str(g))
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if not gens[i].commutes(gens[j]):
                    raise NonCommuting(f"{gens[i]} and {gens[j]} anticommute")
        st = cls.from_generators(n, gens)
        piv = st._reduced()
        live = piv >= 0
        for r in np.flatnonzero(~live):
            if st.E[r] % 4 != 0:
                raise Inconsistent("a product of the given strings is -identity")
        rank = int(live.sum())
        if rank < n:
            raise RankDeficient(f"rank {rank} < {n} qubits")
        keep = np.flatnonzero(live)
        st.X, st.Z, st.E = st.X[keep].copy(), st.Z[keep].copy(), st.E[keep].copy()
        st._piv = piv[keep].copy()
        return st

    @classmethod
    def zero(cls, n: int) -> "StabilizerState":
        return cls.from_generators(n, [PauliString.single(n, j, "Z") for j in range(n)])

    def copy(self) -> "StabilizerState":
        st = StabilizerState(self.n, self.X.copy(), self.Z.copy(), self.E.copy())
        st._piv = None if self._piv is None else self._piv.copy()
        return st

    # views ----------------------------------------------------------------
    def generators(self) -> list[PauliString]:
        return [
            PauliString(self.n, _unpack(self.X[r]), _unpack(self.Z[r]), int(self.E[r]))
            for r in range(self.X.shape[0])
        ]

    def _vec(self, p: PauliString):
        w = self.X.shape[1]
        return _pack(p.x, w), _pack(p.z, w)

    def _reduced(self):
        if self._piv is None:
            self._piv = self._core.rref(self.X, self.Z, self.E, self.n)
        return self._piv

    def check(self) -> None:
        """Debug check: generators commute pairwise and are independent."""
        gens = self.generators()
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                assert gens[i].commutes(gens[j]), "generators anticommute"
        tmp = self.copy()
        tmp._piv = None
        assert int((tmp._reduced() >= 0).sum()) == self.n, "tableau lost rank"

    # dynamics -------------------------------------------------------------
    def apply_rotation(self, rot: PauliRotation) -> "StabilizerState":
        """Conjugate the state by ``exp(-i*sign*pi/4*axis)``."""
        q = rot.axis
        if not q.is_hermitian():
            raise NonHermitianAxis(str(q))
        qx, qz = self._vec(q)
        mask = self._core.anticommuting(self.X, self.Z, qx, qz)
        if mask.any():
            # U P U^dag = -i*sign * Q P for anticommuting P
            self._core.left_multiply(self.X, self.Z, self.E, mask, qx, qz, (q.e - rot.sign) % 4)
            self._piv = None
        return self

    def apply_pauli(self, p: PauliString) -> "StabilizerState":
        qx, qz = self._vec(p)
        mask = self._core.anticommuting(self.X, self.Z, qx, qz)
        if mask.any():
            self.E[mask] = (self.E[mask] + 2) % 4
        return self

    def _deterministic(self, p: PauliString, qx, qz) -> int:
        piv = self._reduced()
        found, e = self._core.reduce(self.X, self.Z, self.E, piv, self.n, qx, qz)
        if not found:
            raise RuntimeError("full-rank tableau failed to express a commuting observable")
        d = (p.e - e) % 4
        return 1 if d == 0 else -1

    def expectation(self, p: PauliString) -> int:
        if not p.is_hermitian():
            raise NonHermitianObservable(str(p))
        qx, qz = self._vec(p)
        if self._core.anticommuting(self.X, self.Z, qx, qz).any():
            return 0
        return self._deterministic(p, qx, qz)

    def measure(self, p: PauliString, rng) -> int:
        """Projective measurement; random outcomes draw one bit from ``rng``."""
        if not p.is_hermitian():
            raise NonHermitianObservable(str(p))
        qx, qz = self._vec(p)
        mask = self._core.anticommuting(self.X, self.Z, qx, qz)
        hits = np.flatnonzero(mask)
        if hits.size == 0:
            return self._deterministic(p, qx, qz)
        outcome = rng.outcome()
        first = int(hits[0])
        self._core.right_multiply(self.X, self.Z, self.E, hits[1:], first)
        self.X[first] = qx
        self.Z[first] = qz
        self.E[first] = (p.e + (0 if outcome == 1 else 2)) % 4
        self._piv = None
        return outcome

"""Pauli strings with exact phases in Z4.

Internally a string is stored in "xz-form": ``i**e * X**x * Z**z`` where ``x``
and ``z`` are bitmasks over qubit positions (bit ``j`` is qubit ``j``).  The
letter-form phase (the one printed next to ``I/X/Y/Z`` letters) differs from
``e`` by the number of ``Y`` sites because ``XZ = -iY``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonHermitianAxis, PauliError

_PHASE_TEXT = ("+1", "+i", "-1", "-i")
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


def _popcount(v: int) -> int:
    return v.bit_count()


@dataclass(frozen=True)
class PauliString:
    """An n-qubit Pauli operator ``i**e X**x Z**z``."""

    n: int
    x: int = 0
    z: int = 0
    e: int = 0

    def __post_init__(self):
        object.__setattr__(self, "e", self.e % 4)

    # construction -----------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n)

    @classmethod
    def from_letters(cls, letters: str, phase: int = 0) -> "PauliString":
        """Build from a letter string; ``phase`` is the letter-form power of i."""
        x = z = 0
        ys = 0
        for j, ch in enumerate(letters):
            try:
                bx, bz = _LETTER_BITS[ch]
            except KeyError:
                raise PauliError(f"bad Pauli letter {ch!r}") from None
            x |= bx << j
            z |= bz << j
            ys += bx & bz
        return cls(len(letters), x, z, phase + ys)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliString":
        bx, bz = _LETTER_BITS[letter]
        return cls(n, bx << qubit, bz << qubit, bx & bz)

    @classmethod
    def parse(cls, text: str) -> "PauliString":
        """Parse ``<phase>|<letters>`` (the phase part is optional)."""
        text = text.strip()
        if "|" in text:
            ph, letters = text.split("|", 1)
            try:
                phase = _PHASE_TEXT.index(ph.strip())
            except ValueError:
                raise PauliError(f"bad phase {ph!r}") from None
        else:
            phase, letters = 0, text
        return cls.from_letters(letters.strip(), phase)

    # views ---------------------------------------------------------------
    @property
    def letter_phase(self) -> int:
        return (self.e - _popcount(self.x & self.z)) % 4

    def letters(self) -> str:
        out = []
        for j in range(self.n):
            bx = (self.x >> j) & 1
            bz = (self.z >> j) & 1
            out.append("IZXY"[bx * 2 + bz])
        return "".join(out)

    def letter(self, j: int) -> str:
        return "IZXY"[((self.x >> j) & 1) * 2 + ((self.z >> j) & 1)]

    def __str__(self) -> str:
        return f"{_PHASE_TEXT[self.letter_phase]}|{self.letters()}"

    def __repr__(self) -> str:
        return f"PauliString({str(self)!r})"

    @property
    def support(self) -> list[int]:
        m = self.x | self.z
        return [j for j in range(self.n) if (m >> j) & 1]

    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    def is_hermitian(self) -> bool:
        return self.letter_phase % 2 == 0

    def is_identity_letters(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def sign(self) -> int:
        """+1 or -1 for Hermitian strings."""
        if not self.is_hermitian():
            raise NonHermitianAxis(str(self))
        return 1 if self.letter_phase == 0 else -1

    # algebra -------------------------------------------------------------
    def __mul__(self, other: "PauliString") -> "PauliString":
        if not isinstance(other, PauliString):
            return NotImplemented
        if other.n != self.n:
            raise PauliError("qubit count mismatch")
        e = self.e + other.e + 2 * _popcount(self.z & other.x)
        return PauliString(self.n, self.x ^ other.x, self.z ^ other.z, e)

    def scaled(self, k: int) -> "PauliString":
        """Multiply by ``i**k``."""
        return PauliString(self.n, self.x, self.z, self.e + k)

    def __neg__(self) -> "PauliString":
        return self.scaled(2)

    def dagger(self) -> "PauliString":
        # (i^e X^x Z^z)^dag = i^-e Z^z X^x = i^-e (-1)^{|x&z|} X^x Z^z
        return PauliString(self.n, self.x, self.z, -self.e + 2 * _popcount(self.x & self.z))

    def commutes(self, other: "PauliString") -> bool:
        return (_popcount(self.x & other.z) + _popcount(self.z & other.x)) % 2 == 0

    def same_letters(self, other: "PauliString") -> bool:
        return self.x == other.x and self.z == other.z

    def ratio(self, other: "PauliString") -> int:
        """Power of i relating two strings with equal letters: self = i**k other."""
        if not self.same_letters(other):
            raise PauliError("strings differ in letters")
        return (self.e - other.e) % 4

    def to_matrix(self):
        import numpy as np

        mats = {
            "I": np.eye(2, dtype=complex),
            "X": np.array([[0, 1], [1, 0]], dtype=complex),
            "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
            "Z": np.array([[1, 0], [0, -1]], dtype=complex),
        }
        out = np.array([[1.0 + 0j]])
        # qubit j is bit j of the basis index: highest qubit is the leftmost factor
        for j in reversed(range(self.n)):
            out = np.kron(out, mats[self.letter(j)])
        return (1j) ** self.letter_phase * out


@dataclass(frozen=True)
class PauliRotation:
    """``U_+ = exp(-i pi/4 axis)`` (sign=+1) or ``U_- = exp(+i pi/4 axis)`` (sign=-1)."""

    axis: PauliString
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if not self.axis.is_hermitian():
            raise NonHermitianAxis(str(self.axis))

    def inverse(self) -> "PauliRotation":
        return PauliRotation(self.axis, -self.sign)

    def conjugate(self, p: PauliString) -> PauliString:
        """Heisenberg image ``U p U^dag``."""
        if p.commutes(self.axis):
            return p
        # U_s p U_s^dag = exp(-i s pi/2 Q) p = -i s Q p
        return (self.axis * p).scaled(-self.sign)


def make_rotation(ps: PauliString, sign: int) -> PauliRotation:
    return PauliRotation(ps, sign)

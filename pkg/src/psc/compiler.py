"""Compile decorated-graph paths into phased Pauli strings and gate lists.

The static assignment puts ``Z`` on l-edges E-N and W-S and ``X`` on N-W and
S-E.  A valid open path compiles to ``(-i)**N_ll`` times the ordered product
of its l-edge letters, the earliest letter standing rightmost.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidPath, NotALoop, OddOpenPath, PathError
from .graph import DecoratedGraph, edge_key, l_edge_index, pred, succ
from .paths import DirectedPath
from .pauli import PauliRotation, PauliString

TAU = "ZX"  # letter for l-edge slot parity 0 / 1


def tau(dg: DecoratedGraph, u: int, v: int) -> PauliString:
    s = l_edge_index(u, v)
    if s is None:
        raise InvalidPath(f"{dg.corner_name(u)}-{dg.corner_name(v)} is not an l-edge")
    return PauliString.single(dg.n_qubits, u >> 2, TAU[s & 1])


def compile_line(dg: DecoratedGraph, path: DirectedPath) -> PauliString:
    if not path.is_valid:
        raise InvalidPath("a line must start and end on l-edges and not close")
    return _compile_open(dg, path)


def _compile_open(dg: DecoratedGraph, path: DirectedPath) -> PauliString:
    return _letters(dg.n_qubits, path.vertices, path.kinds, path.n_ll)


@lru_cache(maxsize=65536)
def _letters(n: int, vertices: tuple, kinds: tuple, n_ll: int) -> PauliString:
    out = PauliString.identity(n)
    for k, kind in enumerate(kinds):
        if kind == "l":
            u, v = vertices[k], vertices[k + 1]
            s = l_edge_index(u, v)
            if s is None:
                raise InvalidPath("not an l-edge")
            out = PauliString.single(n, u >> 2, TAU[s & 1]) * out
    return out.scaled(-n_ll)


def open_loop(path: DirectedPath) -> DirectedPath:
    """Cut a loop at its smallest L-link, giving the open path that gets compiled."""
    if not path.is_loop:
        raise NotALoop("path is not closed")
    links = [(edge_key(u, v), i) for i, ((u, v), k) in enumerate(zip(path.edges, path.kinds)) if k == "L"]
    if not links:
        raise NotALoop("loop has no L-link to cut")
    _, i = min(links)
    body = path.vertices[:-1]
    m = len(body)
    vs = [body[(i + 1 + k) % m] for k in range(m)]
    return DirectedPath(tuple(vs), tuple(path.kinds[(i + 1 + k) % m] for k in range(m - 1)))


def compile_loop(dg: DecoratedGraph, loop: DirectedPath) -> PauliString:
    return _compile_open(dg, open_loop(loop))


def compile_stabilizer(dg: DecoratedGraph, f: int) -> PauliString:
    """``B(P)``: the counter-clockwise loop around plaquette ``f``."""
    if f not in dg.plaquettes:
        raise NotALoop(f"face {f} is not a stabilizer plaquette")
    cyc = dg.faces[f]
    return compile_loop(dg, DirectedPath.on(dg, cyc + (cyc[0],)))


def stabilizers(dg: DecoratedGraph) -> dict:
    """Map plaquette label -> B(P)."""
    memo = dg.__dict__.get("_stabilizers")
    if memo is None:
        memo = {dg.plaquette_label(f): compile_stabilizer(dg, f) for f in dg.plaquettes}
        dg.__dict__["_stabilizers"] = memo
    return dict(memo)


# ---------------------------------------------------------------------------
# movement


@dataclass(frozen=True)
class Move:
    """An executed elementary move and the rotation that realises it."""

    before: DecoratedGraph
    after: DecoratedGraph
    anyon: int  # corner the anyon left
    target: int  # corner the anyon now occupies
    path: DirectedPath
    ccw: bool
    rotation: PauliRotation

    @property
    def sign(self) -> int:
        return self.rotation.sign


def move_sign(path: DirectedPath, ccw: bool, composite: bool = False) -> int:
    """``-`` for counter-clockwise paths, ``(-1)**N_ll`` otherwise; flipped for composites."""
    z = -1 if ccw else (-1 if path.n_ll % 2 else 1)
    return -z if composite else z


def elementary_move(dg: DecoratedGraph, anyon: int, target: int, composite: bool = False) -> Move:
    new, verts, ccw = dg.elementary_move(anyon, target)
    path = DirectedPath.on(dg, verts)
    axis = compile_line(dg, path)
    rot = PauliRotation(axis, move_sign(path, ccw, composite))
    return Move(dg, new, anyon, target, path, ccw, rot)


# ---------------------------------------------------------------------------
# 't Hooft lines


def thooft_crossings(dg: DecoratedGraph, faces) -> list[tuple[int, int]]:
    """Resolve a face sequence into crossed L-link darts (tail, head), head in the entered face."""
    out = []
    for f, g in zip(faces, faces[1:]):
        hits = []
        for u, v in dg.links:
            for a, b in ((u, v), (v, u)):
                if dg.face_of_dart(a, b) == g and dg.face_of_dart(b, a) == f:
                    hits.append((a, b))
        if not hits:
            raise InvalidPath(f"faces {dg.plaquette_label(f)} and {dg.plaquette_label(g)} share no L-link")
        if len(hits) > 1:
            hits.sort()
        out.append(hits[0])
    return out


def _face_segment(dg: DecoratedGraph, f: int, a: int, b: int) -> DirectedPath:
    cyc = dg.faces[f]
    n = len(cyc)
    i = cyc.index(a)
    vs = [a]
    k = i
    while vs[-1] != b:
        k = (k + 1) % n
        vs.append(cyc[k])
        if len(vs) > n + 1:
            raise InvalidPath("segment endpoint not on face")
    return DirectedPath.on(dg, vs)


def thooft_segments(dg: DecoratedGraph, faces, anyon: int | None = None) -> list[DirectedPath]:
    """Wilson segments whose product is the 't Hooft line through ``faces``.

    Crossings pair up as (1,2), (3,4), ...; each segment joins the right-hand
    Majoranas of its pair along the face between them.  An odd crossing count
    needs ``anyon``: the last segment then runs to that unpaired corner.
    """
    cross = thooft_crossings(dg, faces)
    rights = [h for _, h in cross]
    segs = []
    for j in range(0, len(rights) - 1, 2):
        segs.append(_face_segment(dg, faces[j + 1], rights[j], rights[j + 1]))
    if len(rights) % 2:
        if anyon is None:
            raise OddOpenPath("odd 't Hooft line needs a terminating anyon")
        f = faces[-1]
        if anyon not in dg.faces[f] or dg.partner[anyon] >= 0:
            raise OddOpenPath(f"anyon {dg.corner_name(anyon)} is not on the final face")
        segs.append(_face_segment(dg, f, rights[-1], anyon))
    for s in segs:
        if not s.is_valid:
            raise PathError("'t Hooft segment is not a valid Wilson line")
    return segs


def compile_thooft(dg: DecoratedGraph, faces, anyon: int | None = None) -> PauliString:
    out = PauliString.identity(dg.n_qubits)
    for seg in thooft_segments(dg, faces, anyon):
        out = compile_line(dg, seg) * out
    return out


def link_parity(dg: DecoratedGraph, u: int, v: int) -> PauliString:
    """Letters of the L-link parity operator up to phase (for crossing checks)."""
    # i*alpha_u*alpha_v restricted to qubit space is the length-1 L path closed
    # by the two adjacent l-edges; only its commutation pattern is needed.
    a = DirectedPath.on(dg, (pred(u), u, v, succ(v)))
    return _compile_open(dg, a)


# ---------------------------------------------------------------------------
# gate decomposition


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple

    def text(self, labels) -> str:
        return " ".join([self.name] + [str(labels[q]) for q in self.qubits])


def decompose(rot: PauliRotation) -> tuple[list[Gate], int]:
    """Gates for ``exp(-i*sign*pi/4*axis)``.

    Returns ``(gates, k)`` with the rotation equal to ``exp(i*pi*k/4)`` times
    the gate product (gates applied in list order).
    """
    axis = rot.axis
    s = rot.sign * axis.sign
    sup = axis.support
    if not sup:
        return [], (-s) % 8
    pre = []
    for q in sup:
        letter = axis.letter(q)
        if letter == "X":
            pre.append(Gate("H", (q,)))
        elif letter == "Y":
            pre += [Gate("SDG", (q,)), Gate("H", (q,))]
    chain = [Gate("CNOT", (sup[k], sup[k + 1])) for k in range(len(sup) - 1)]
    last = sup[-1]
    core = [Gate("S" if s == 1 else "SDG", (last,))]
    post = []
    for g in reversed(pre):
        post.append(Gate({"H": "H", "SDG": "S"}[g.name], g.qubits))
    gates = pre + chain + core + chain[::-1] + post
    return gates, (-s) % 8


def gates_text(gates, labels) -> str:
    return "".join(g.text(labels) + "\n" for g in gates)


def gate_matrix(gates, n: int):
    """Dense unitary of a gate list (qubit j is bit j)."""
    import numpy as np

    dim = 1 << n
    u = np.eye(dim, dtype=complex)
    idx = np.arange(dim)
    for g in gates:
        if g.name == "CNOT":
            c, t = g.qubits
            perm = np.where((idx >> c) & 1, idx ^ (1 << t), idx)
            u = u[perm]
        else:
            (q,) = g.qubits
            bit = (idx >> q) & 1
            if g.name == "H":
                flip = idx ^ (1 << q)
                u = (u[flip] + np.where(bit, -1, 1)[:, None] * u) / np.sqrt(2)
            else:
                ph = {"S": 1j, "SDG": -1j, "Z": -1, "X": None}[g.name]
                if ph is None:
                    u = u[idx ^ (1 << q)]
                else:
                    u = np.where(bit[:, None], ph * u, u)
    return u

"""Surface graphs, their Majorana-diamond decoration, and code deformations.

A qubit ``q`` owns four Majorana corners, one per compass slot, in
counter-clockwise order ``E, N, W, S`` (slot indices 0..3).  Corner ``s`` of
qubit number ``i`` (position of ``q`` in the sorted id list) is the decorated
vertex ``4*i + s``.  The intra-diamond l-edge ``s`` joins corners ``s`` and
``s+1``; L-links join corners of different diamonds.

The rotation system of the decorated graph is fixed by construction: around
every corner the counter-clockwise order is (L-link, l-edge to s+1, l-edge to
s-1).  Faces are traced with the face on the left of each dart, so bounded
faces come out counter-clockwise and the diamond faces read ``0,1,2,3``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import (
    AngleTie,
    BadDegree,
    CornersPaired,
    Disconnected,
    GraphError,
    LinkAbsent,
    NoSharedPlaquette,
    NonPlanarEmbedding,
    NotAdjacent,
    NotUnpaired,
    ParseError,
    SlotCollision,
)

SLOTS = "ENWS"
SLOT_DIRS = ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))
CORNER_RADIUS = 0.22

# ---------------------------------------------------------------------------
# qubit-level graph


@dataclass(frozen=True)
class SurfaceGraph:
    """Qubits with positions plus slot-resolved edges.

    ``edges`` holds ``((qa, slot_a), (qb, slot_b))`` pairs.  Edges written
    without explicit slots take the compass slot nearest to their direction.
    """

    positions: dict
    edges: tuple
    explicit: frozenset = field(default_factory=frozenset)

    @property
    def qubit_ids(self) -> list[int]:
        return sorted(self.positions)

    @property
    def n_qubits(self) -> int:
        return len(self.positions)

    def degree(self, q: int) -> int:
        return sum((a[0] == q) + (b[0] == q) for a, b in self.edges)

    def rotation(self, q: int) -> list[tuple[int, int]]:
        """Counter-clockwise incident edges of ``q`` as (slot, neighbour)."""
        out = []
        for a, b in self.edges:
            if a[0] == q:
                out.append((a[1], b[0]))
            if b[0] == q:
                out.append((b[1], a[0]))
        return sorted(out)

    @cached_property
    def decorated(self) -> "DecoratedGraph":
        return decorate(self)

    def faces(self) -> list[list[int]]:
        """Qubit cycles of the stabilizer plaquettes (outer face excluded)."""
        dg = self.decorated
        return [dg.face_qubits(f) for f in dg.plaquettes]

    def to_text(self) -> str:
        lines = []
        for q in self.qubit_ids:
            x, y = self.positions[q]
            lines.append(f"qubit {q} {_fmt(x)} {_fmt(y)}")
        for a, b in sorted(tuple(sorted(e)) for e in self.edges):
            if (a, b) in self.explicit or (b, a) in self.explicit:
                lines.append(f"edge {a[0]}.{SLOTS[a[1]]} {b[0]}.{SLOTS[b[1]]}")
            else:
                lines.append(f"edge {a[0]} {b[0]}")
        return "\n".join(lines) + "\n"


def _fmt(v: float) -> str:
    return repr(int(v)) if float(v).is_integer() else repr(float(v))


def _slot_of(dx: float, dy: float) -> int | None:
    ang = math.degrees(math.atan2(dy, dx)) % 360.0
    k = round(ang / 90.0)
    if abs(abs(ang - 90.0 * k) - 45.0) < 1e-9:
        return None
    return k % 4


def parse_graph(text: str) -> SurfaceGraph:
    """Parse the line-oriented graph format and build a validated graph."""
    positions: dict[int, tuple[float, float]] = {}
    raw_edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "qubit" and len(parts) == 4:
                q = int(parts[1])
                if q in positions:
                    raise ParseError(f"line {lineno}: duplicate qubit {q}")
                positions[q] = (float(parts[2]), float(parts[3]))
            elif parts[0] == "edge" and len(parts) == 3:
                raw_edges.append((_parse_end(parts[1]), _parse_end(parts[2])))
            else:
                raise ParseError(f"line {lineno}: cannot parse {line!r}")
        except ValueError:
            raise ParseError(f"line {lineno}: cannot parse {line!r}") from None
    return build_graph(positions, raw_edges)


def _parse_end(tok: str):
    if "." in tok:
        q, s = tok.split(".", 1)
        if s not in SLOTS or len(s) != 1:
            raise ParseError(f"bad slot in {tok!r}")
        return int(q), SLOTS.index(s)
    return int(tok), None


def load_graph(path) -> SurfaceGraph:
    with open(path) as fh:
        return parse_graph(fh.read())


def build_graph(positions, edges: Iterable) -> SurfaceGraph:
    """Validate and slot-resolve a qubit graph.

    ``edges`` items are ``(a, b)`` qubit ids or ``((a, slot|None), (b, slot|None))``.
    """
    positions = {int(q): (float(x), float(y)) for q, (x, y) in positions.items()}
    pts = list(positions.values())
    if len(set(pts)) != len(pts):
        raise GraphError("qubit positions must be pairwise distinct")
    resolved = []
    explicit = set()
    straight = []
    used: dict[tuple[int, int], tuple] = {}
    for e in edges:
        (a, sa), (b, sb) = [(t, None) if not isinstance(t, tuple) else t for t in e]
        if a not in positions or b not in positions:
            raise GraphError(f"edge {a}-{b} references unknown qubit")
        if a == b:
            raise GraphError(f"self-loop at qubit {a}")
        (xa, ya), (xb, yb) = positions[a], positions[b]
        if sa is None and sb is None:
            sa = _slot_of(xb - xa, yb - ya)
            sb = _slot_of(xa - xb, ya - yb)
            if sa is None or sb is None:
                raise AngleTie(f"edge {a}-{b} is diagonal; slot is ambiguous")
            straight.append((a, b))
        elif sa is None or sb is None:
            raise GraphError(f"edge {a}-{b}: give slots on both ends or neither")
        else:
            explicit.add(((a, sa), (b, sb)))
        for end, other in (((a, sa), b), ((b, sb), a)):
            if end in used:
                prev = used[end]
                if prev == other:
                    raise AngleTie(f"qubit {end[0]}: two edges to {other} at the same angle")
                raise SlotCollision(
                    f"qubit {end[0]}: edges to {prev} and {other} share slot {SLOTS[end[1]]}"
                )
            used[end] = other
        resolved.append(((a, sa), (b, sb)))
    g = SurfaceGraph(positions, tuple(resolved), frozenset(explicit))
    for q in positions:
        d = g.degree(q)
        if d not in (2, 3, 4):
            raise BadDegree(f"qubit {q} has degree {d}")
    _check_crossings(positions, straight)
    # decorating validates connectivity and genus
    g.decorated
    return g


def _check_crossings(positions, straight):
    def orient(p, q, r):
        v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
        return 0 if abs(v) < 1e-12 else (1 if v > 0 else -1)

    def on_seg(p, q, r):
        return min(p[0], r[0]) - 1e-12 <= q[0] <= max(p[0], r[0]) + 1e-12 and min(
            p[1], r[1]
        ) - 1e-12 <= q[1] <= max(p[1], r[1]) + 1e-12

    segs = [(a, b, positions[a], positions[b]) for a, b in straight]
    for i in range(len(segs)):
        a1, b1, p1, q1 = segs[i]
        for j in range(i + 1, len(segs)):
            a2, b2, p2, q2 = segs[j]
            shared = {a1, b1} & {a2, b2}
            o1, o2 = orient(p1, q1, p2), orient(p1, q1, q2)
            o3, o4 = orient(p2, q2, p1), orient(p2, q2, q1)
            if shared:
                if o1 == 0 and o2 == 0:
                    # collinear edges sharing a vertex overlap iff they point the same way
                    c = positions[shared.pop()]
                    u = [v for v in (p1, q1) if v != c][0]
                    w = [v for v in (p2, q2) if v != c][0]
                    if (u[0] - c[0]) * (w[0] - c[0]) + (u[1] - c[1]) * (w[1] - c[1]) > 0:
                        raise NonPlanarEmbedding(f"edges {a1}-{b1} and {a2}-{b2} overlap")
                continue
            if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
                raise NonPlanarEmbedding(f"edges {a1}-{b1} and {a2}-{b2} cross")
            for o, p, q, r in ((o1, p1, p2, q1), (o2, p1, q2, q1), (o3, p2, p1, q2), (o4, p2, q1, q2)):
                if o == 0 and on_seg(p, q, r):
                    raise NonPlanarEmbedding(f"edges {a1}-{b1} and {a2}-{b2} touch")


# ---------------------------------------------------------------------------
# decorated graph


def qubit_of(v: int) -> int:
    return v >> 2


def slot_of(v: int) -> int:
    return v & 3


def succ(v: int) -> int:
    return (v & ~3) | ((v + 1) & 3)


def pred(v: int) -> int:
    return (v & ~3) | ((v - 1) & 3)


def l_edge_index(u: int, v: int) -> int | None:
    """Slot index ``s`` of the l-edge joining ``u`` and ``v`` (s, s+1), else None."""
    if u >> 2 != v >> 2:
        return None
    if succ(u) == v:
        return u & 3
    if succ(v) == u:
        return v & 3
    return None


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class FaceUpdate:
    """Bookkeeping returned by a deformation."""

    removed: tuple  # faces (vertex cycles) that disappeared
    added: tuple  # faces created
    dropped_stabilizer: tuple | None = None  # boundary-link deletion


# deformed graphs are immutable, so repeated protocols share them
_INTERN: dict = {}


class DecoratedGraph:
    """Immutable decorated graph: diamonds, l-edges, L-links and faces."""

    __slots__ = ("qubit_ids", "positions", "partner", "outer_dart", "__dict__")

    def __init__(self, qubit_ids, positions, partner, outer_dart=None):
        self.qubit_ids = tuple(qubit_ids)
        self.positions = tuple(positions)
        self.partner = tuple(partner)
        self.outer_dart = outer_dart
        self._validate()

    # identity -----------------------------------------------------------
    def key(self):
        return (self.qubit_ids, self.partner)

    def __eq__(self, other):
        return isinstance(other, DecoratedGraph) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def structure_hash(self) -> str:
        import hashlib

        h = hashlib.sha256()
        for link in self.links:
            h.update(f"{self.corner_name(link[0])}-{self.corner_name(link[1])};".encode())
        return h.hexdigest()[:16]

    # basic lookups ------------------------------------------------------
    @property
    def n_qubits(self) -> int:
        return len(self.qubit_ids)

    @property
    def n_vertices(self) -> int:
        return 4 * len(self.qubit_ids)

    @cached_property
    def index_of(self) -> dict:
        return {q: i for i, q in enumerate(self.qubit_ids)}

    def vertex(self, qubit: int, slot: int) -> int:
        return 4 * self.index_of[qubit] + slot

    def corner(self, v: int) -> tuple[int, int]:
        return self.qubit_ids[v >> 2], v & 3

    def corner_name(self, v: int) -> str:
        q, s = self.corner(v)
        return f"{q}.{SLOTS[s]}"

    def parse_corner(self, text: str) -> int:
        q, _, s = text.partition(".")
        if s not in SLOTS or len(s) != 1:
            raise GraphError(f"bad corner {text!r}")
        q = int(q)
        if q not in self.index_of:
            raise GraphError(f"unknown qubit {q}")
        return self.vertex(q, SLOTS.index(s))

    def corner_position(self, v: int) -> tuple[float, float]:
        x, y = self.positions[v >> 2]
        dx, dy = SLOT_DIRS[v & 3]
        return x + self.radius * dx, y + self.radius * dy

    @cached_property
    def radius(self) -> float:
        best = math.inf
        pts = self.positions
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                best = min(best, math.dist(pts[i], pts[j]))
        return CORNER_RADIUS * (best if best < math.inf else 1.0)

    def is_unpaired(self, v: int) -> bool:
        return self.partner[v] < 0

    @cached_property
    def unpaired(self) -> tuple[int, ...]:
        return tuple(v for v, p in enumerate(self.partner) if p < 0)

    @cached_property
    def links(self) -> tuple[tuple[int, int], ...]:
        return tuple((v, p) for v, p in enumerate(self.partner) if p > v)

    @cached_property
    def l_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((v, succ(v)) for v in range(self.n_vertices))

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(edge_key(u, v) for u, v in self.l_edges + self.links))

    def neighbours(self, v: int) -> list[int]:
        out = [succ(v), pred(v)]
        if self.partner[v] >= 0:
            out.append(self.partner[v])
        return out

    def is_edge(self, u: int, v: int) -> bool:
        return l_edge_index(u, v) is not None or (self.partner[u] == v and u != v)

    def qubit_degree(self, q: int) -> int:
        i = self.index_of[q]
        return sum(self.partner[4 * i + s] >= 0 for s in range(4))

    # faces --------------------------------------------------------------
    def next_dart(self, u: int, v: int) -> int:
        """Successor vertex along the face to the left of dart u->v."""
        p = self.partner[v]
        if u == p:
            return pred(v)
        if u == succ(v):
            return p if p >= 0 else pred(v)
        return succ(v)

    @cached_property
    def _face_data(self):
        # next_dart inlined: this runs for every deformed graph
        partner = self.partner
        faces = []
        dart_face = {}
        for u in range(4 * len(self.qubit_ids)):
            base = u & ~3
            nbrs = (base | ((u + 1) & 3), base | ((u - 1) & 3), partner[u])
            for v in nbrs:
                if v < 0 or (u, v) in dart_face:
                    continue
                cyc = []
                a, b = u, v
                f = len(faces)
                while (a, b) not in dart_face:
                    dart_face[(a, b)] = f
                    cyc.append(a)
                    bb = b & ~3
                    sb = bb | ((b + 1) & 3)
                    p = partner[b]
                    if a == p:
                        nxt = bb | ((b - 1) & 3)
                    elif a == sb:
                        nxt = p if p >= 0 else bb | ((b - 1) & 3)
                    else:
                        nxt = sb
                    a, b = b, nxt
                faces.append(tuple(cyc))
        return faces, dart_face

    @property
    def faces(self) -> list[tuple[int, ...]]:
        return self._face_data[0]

    def face_of_dart(self, u: int, v: int) -> int:
        return self._face_data[1][(u, v)]

    def is_diamond_face(self, f: int) -> bool:
        cyc = self.faces[f]
        return len(cyc) == 4 and len({c >> 2 for c in cyc}) == 1 and all(
            succ(cyc[k]) == cyc[(k + 1) % 4] for k in range(4)
        )

    @cached_property
    def outer_face(self) -> int:
        return self.face_of_dart(*self.outer_dart)

    @cached_property
    def plaquettes(self) -> tuple[int, ...]:
        """Face indices of stabilizer plaquettes (non-diamond, non-outer)."""
        return tuple(
            f for f in range(len(self.faces)) if f != self.outer_face and not self.is_diamond_face(f)
        )

    @cached_property
    def interior_faces(self) -> tuple[int, ...]:
        return tuple(f for f in range(len(self.faces)) if f != self.outer_face)

    def plaquette_cycle(self, f: int) -> tuple[int, ...]:
        return self.faces[f]

    def face_qubits(self, f: int) -> list[int]:
        out = []
        for v in self.faces[f]:
            q = self.qubit_ids[v >> 2]
            if not out or out[-1] != q:
                out.append(q)
        if len(out) > 1 and out[0] == out[-1]:
            out.pop()
        return out

    def face_containing_corner(self, v: int) -> int:
        """The non-diamond face holding the outer angle of an unpaired corner."""
        return self.face_of_dart(v, pred(v))

    def plaquette_label(self, f: int) -> str:
        """Stable name: the smallest corner leaving the face along an L-link.

        Every L-dart bounds exactly one face, so labels never collide.
        """
        cyc = self.faces[f]
        n = len(cyc)
        names = [self.corner_name(cyc[k]) for k in range(n) if self.partner[cyc[k]] == cyc[(k + 1) % n]]
        if not names:
            names = [self.corner_name(v) for v in cyc]
        return min(names, key=_corner_sort_key)

    def plaquette_by_label(self, label: str) -> int:
        for f in self.plaquettes:
            if self.plaquette_label(f) == label:
                return f
        if label == "outer":
            return self.outer_face
        raise GraphError(f"no plaquette labelled {label}")

    @cached_property
    def face_adjacency(self):
        """Map face -> list of (neighbour face, shared edge key)."""
        adj = {f: [] for f in range(len(self.faces))}
        for (u, v), f in self._face_data[1].items():
            g = self._face_data[1][(v, u)]
            adj[f].append((g, edge_key(u, v)))
        return adj

    # counts ---------------------------------------------------------------
    @property
    def n_sigma(self) -> int:
        return len(self.unpaired)

    @property
    def n_stabilizers(self) -> int:
        return len(self.plaquettes)

    def euler_balance(self) -> tuple[int, int]:
        """(N_Q - N_S, N_sigma/2 - chi) with chi = 1 for the disk."""
        return self.n_qubits - self.n_stabilizers, self.n_sigma // 2 - 1

    def check_euler(self) -> bool:
        lhs, rhs = self.euler_balance()
        return self.n_sigma % 2 == 0 and lhs == rhs

    # validation -----------------------------------------------------------
    def _validate(self):
        n = self.n_vertices
        for v, p in enumerate(self.partner):
            if p >= 0:
                if p >= n or self.partner[p] != v:
                    raise GraphError("partner table is not an involution")
                if p >> 2 == v >> 2:
                    raise GraphError(f"L-link {self.corner_name(v)} joins a diamond to itself")
        partner = self.partner
        for i, q in enumerate(self.qubit_ids):
            if max(partner[4 * i : 4 * i + 4]) < 0:
                raise Disconnected(f"qubit {q} is isolated")
        # diamonds are internally connected, so walk qubits
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for p in partner[4 * i : 4 * i + 4]:
                if p >= 0 and p >> 2 not in seen:
                    seen.add(p >> 2)
                    stack.append(p >> 2)
        if len(seen) != len(self.qubit_ids):
            raise Disconnected("decorated graph is not connected")
        V, E, F = n, n + len(self.links), len(self.faces)
        if V - E + F != 2:
            raise NonPlanarEmbedding(f"rotation system has Euler characteristic {V - E + F}")
        if self.outer_dart is None:
            self.outer_dart = self._pick_outer_dart()
        for u, v in self.links:
            if self.face_of_dart(u, v) == self.face_of_dart(v, u):
                raise GraphError(f"L-link {self.corner_name(u)}-{self.corner_name(v)} is a bridge")

    def _pick_outer_dart(self):
        best, best_len = None, -1.0
        for f, cyc in enumerate(self.faces):
            if len(cyc) == 4 and len({c >> 2 for c in cyc}) == 1:
                continue
            per = 0.0
            for k in range(len(cyc)):
                per += math.dist(self.corner_position(cyc[k]), self.corner_position(cyc[(k + 1) % len(cyc)]))
            if per > best_len + 1e-9:
                best, best_len = f, per
        cyc = self.faces[best]
        # anchor on the l-dart of the extremal (top, then right) qubit on that face
        cands = [
            (self.positions[cyc[k] >> 2][1], self.positions[cyc[k] >> 2][0], cyc[k], cyc[(k + 1) % len(cyc)])
            for k in range(len(cyc))
            if l_edge_index(cyc[k], cyc[(k + 1) % len(cyc)]) is not None
        ]
        _, _, u, v = max(cands)
        return (u, v)

    # deformations ---------------------------------------------------------
    def _with_partner(self, partner) -> "DecoratedGraph":
        key = (self.qubit_ids, self.positions, tuple(partner), self.outer_dart)
        hit = _INTERN.get(key)
        if hit is None:
            hit = DecoratedGraph(*key)
            if len(_INTERN) > 4096:
                _INTERN.clear()
            _INTERN[key] = hit
        return hit

    def delete_L_link(self, u: int, v: int):
        """Remove the L-link u-v.  Returns (new graph, FaceUpdate)."""
        if self.partner[u] != v or v < 0:
            raise LinkAbsent(f"no L-link {self.corner_name(u)}-{self.corner_name(v)}")
        fp, fq = self.face_of_dart(u, v), self.face_of_dart(v, u)
        partner = list(self.partner)
        partner[u] = partner[v] = -1
        new = self._with_partner(partner)
        nf = new.face_containing_corner(u)
        removed = tuple(self.faces[f] for f in (fp, fq))
        dropped = None
        if self.outer_face in (fp, fq):
            dropped = self.faces[fq if fp == self.outer_face else fp]
        return new, FaceUpdate(removed, (new.faces[nf],), dropped)

    def add_L_link(self, u: int, v: int):
        """Join two unpaired corners lying on a common face.

        Returns (new graph, FaceUpdate, face index in the new graph whose
        stabilizer reads out the fusion channel).
        """
        for c in (u, v):
            if self.partner[c] >= 0:
                raise CornersPaired(f"corner {self.corner_name(c)} is paired")
        if u >> 2 == v >> 2:
            raise NotAdjacent("corners lie on the same diamond")
        fu, fv = self.face_containing_corner(u), self.face_containing_corner(v)
        if fu != fv:
            raise NotAdjacent(f"{self.corner_name(u)} and {self.corner_name(v)} share no face")
        partner = list(self.partner)
        partner[u], partner[v] = v, u
        new = self._with_partner(partner)
        a, b = new.face_of_dart(u, v), new.face_of_dart(v, u)
        readout = b if a == new.outer_face else a
        return new, FaceUpdate((self.faces[fu],), (new.faces[a], new.faces[b])), readout

    def move_path(self, c1: int, c2: int) -> tuple[list[int], bool]:
        """The in-plaquette path from anyon ``c1`` to target ``c2``.

        Returns (vertex list, counter_clockwise) where counter_clockwise
        refers to the traversal direction about the shared plaquette.
        """
        if self.partner[c1] >= 0:
            raise NotUnpaired(f"corner {self.corner_name(c1)} is paired")
        c3 = self.partner[c2]
        if c3 < 0:
            raise GraphError(f"target {self.corner_name(c2)} is not an L-link endpoint")
        f = self.face_containing_corner(c1)
        if f == self.outer_face:
            raise NoSharedPlaquette(f"anyon {self.corner_name(c1)} sits on the outer face")
        cyc = self.faces[f]
        if c2 not in cyc:
            raise NoSharedPlaquette(
                f"{self.corner_name(c1)} and {self.corner_name(c2)} share no stabilizer plaquette"
            )
        n = len(cyc)
        i1, i2 = cyc.index(c1), cyc.index(c2)
        if cyc[(i2 - 1) % n] != c3:
            path = [cyc[(i1 + k) % n] for k in range((i2 - i1) % n + 1)]
            return path, True
        path = [cyc[(i1 - k) % n] for k in range((i1 - i2) % n + 1)]
        return path, False

    def elementary_move(self, c1: int, c2: int):
        """Relink the partner of ``c2`` onto anyon ``c1``.

        Returns (new graph, path, counter_clockwise).  The sign choice lives
        with the compiler since it needs the wedge count.
        """
        path, ccw = self.move_path(c1, c2)
        c3 = self.partner[c2]
        if c3 >> 2 == c1 >> 2:
            raise GraphError("move would link a diamond to itself")
        partner = list(self.partner)
        partner[c2] = -1
        partner[c1], partner[c3] = c3, c1
        return self._with_partner(partner), path, ccw

    def move_targets(self, c1: int) -> list[int]:
        """All legal targets for anyon ``c1``."""
        f = self.face_containing_corner(c1)
        if self.partner[c1] >= 0 or f == self.outer_face:
            return []
        out = []
        for c in self.faces[f]:
            p = self.partner[c]
            if p >= 0 and p >> 2 != c1 >> 2:
                try:
                    self.elementary_move(c1, c)
                except GraphError:
                    continue  # would leave a bridge or an isolated qubit
                out.append(c)
        return out

    def to_surface_graph(self) -> SurfaceGraph:
        positions = {q: self.positions[i] for i, q in enumerate(self.qubit_ids)}
        edges = tuple(
            ((self.qubit_ids[u >> 2], u & 3), (self.qubit_ids[v >> 2], v & 3)) for u, v in self.links
        )
        return SurfaceGraph(positions, edges, frozenset(edges))


def _corner_sort_key(name: str):
    q, s = name.split(".")
    return int(q), SLOTS.index(s)


def decorate(g: SurfaceGraph) -> DecoratedGraph:
    ids = g.qubit_ids
    index = {q: i for i, q in enumerate(ids)}
    partner = [-1] * (4 * len(ids))
    for (a, sa), (b, sb) in g.edges:
        u, v = 4 * index[a] + sa, 4 * index[b] + sb
        partner[u], partner[v] = v, u
    return DecoratedGraph(ids, [g.positions[q] for q in ids], partner)


def count_sigma(g) -> int:
    if isinstance(g, SurfaceGraph):
        return sum({2: 2, 3: 1}.get(g.degree(q), 0) for q in g.positions)
    return g.n_sigma


def check_euler(g) -> bool:
    dg = g.decorated if isinstance(g, SurfaceGraph) else g
    return dg.check_euler()

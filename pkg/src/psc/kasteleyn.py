"""Kasteleyn orientations and the sign calculus of directed paths.

An orientation assigns an arrow to every edge of the decorated graph.  The
Kasteleyn condition asks for an odd number of clockwise arrows on every
bounded face when the face is walked counter-clockwise; the outer face is
left unconstrained.
"""

from __future__ import annotations

from collections import deque

from .errors import (
    EndpointMismatch,
    InvalidPath,
    NonSimpleLoop,
    NotALoop,
    SegmentNotOnFace,
    SlotMissing,
)
from .graph import SLOTS, DecoratedGraph, edge_key, succ
from .paths import DirectedPath


class Orientation:
    """Arrow per edge, stored as ``edge_key -> head vertex``."""

    __slots__ = ("head",)

    def __init__(self, head: dict):
        self.head = dict(head)

    def points(self, u: int, v: int) -> bool:
        """True when the arrow on edge u-v runs from u to v."""
        return self.head[edge_key(u, v)] == v

    def flipped(self, edges) -> "Orientation":
        head = dict(self.head)
        for e in edges:
            a, b = e
            head[e] = a if head[e] == b else b
        return Orientation(head)

    def __eq__(self, other):
        return isinstance(other, Orientation) and self.head == other.head

    def to_text(self, dg: DecoratedGraph) -> str:
        lines = []
        for e in sorted(self.head):
            h = self.head[e]
            t = e[0] if h == e[1] else e[1]
            lines.append(f"arrow {dg.corner_name(t)} {dg.corner_name(h)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, dg: DecoratedGraph, text: str) -> "Orientation":
        head = {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].split()
            if not line:
                continue
            if line[0] != "arrow" or len(line) != 3:
                raise InvalidPath(f"bad orientation line {raw!r}")
            t, h = dg.parse_corner(line[1]), dg.parse_corner(line[2])
            if not dg.is_edge(t, h):
                raise InvalidPath(f"{line[1]}-{line[2]} is not an edge")
            head[edge_key(t, h)] = h
        return cls(head)


def clockwise_count(dg: DecoratedGraph, o: Orientation, f: int) -> int:
    cyc = dg.faces[f]
    n = len(cyc)
    return sum(not o.points(cyc[k], cyc[(k + 1) % n]) for k in range(n))


def verify_kasteleyn(dg: DecoratedGraph, o: Orientation) -> bool:
    if len(o.head) != len(dg.edges):
        return False
    return all(clockwise_count(dg, o, f) % 2 == 1 for f in dg.interior_faces)


def find_kasteleyn(dg: DecoratedGraph) -> Orientation:
    """Spanning-tree construction.

    Tree edges point from lower to higher vertex; the remaining edges form a
    spanning tree of the dual rooted at the outer face, and each face fixes
    the arrow on the edge towards its parent once all its other edges are set.
    """
    n = dg.n_vertices
    head = {}
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in sorted(dg.neighbours(u)):
            if not seen[w]:
                seen[w] = True
                head[edge_key(u, w)] = max(u, w)
                queue.append(w)

    root = dg.outer_face
    parent_edge = {root: None}
    order = [root]
    queue = deque([root])
    adj = dg.face_adjacency
    while queue:
        f = queue.popleft()
        for g, e in sorted(adj[f], key=lambda t: t[1]):
            if e in head or g in parent_edge:
                continue
            parent_edge[g] = e
            order.append(g)
            queue.append(g)

    for f in reversed(order[1:]):
        e = parent_edge[f]
        cyc = dg.faces[f]
        m = len(cyc)
        cw = 0
        for k in range(m):
            a, b = cyc[k], cyc[(k + 1) % m]
            if edge_key(a, b) == e:
                fwd = (a, b)
            elif head[edge_key(a, b)] == a:
                cw += 1
        # cw is the count without e; choose e's arrow to make the total odd
        head[e] = fwd[1] if cw % 2 == 1 else fwd[0]
    return Orientation(head)


def gauge_K(o: Orientation, vertex: int, dg: DecoratedGraph) -> Orientation:
    """Flip every arrow touching ``vertex``."""
    return o.flipped(edge_key(vertex, w) for w in dg.neighbours(vertex))


def wk(path: DirectedPath, o: Orientation) -> int:
    """Kasteleyn sign: -1 per edge walked against its arrow."""
    against = sum(not o.points(u, v) for u, v in path.edges)
    return -1 if against % 2 else 1


# ---------------------------------------------------------------------------
# lifting qubit paths


def _exit_corner(dg: DecoratedGraph, entry: int, token, nxt) -> int:
    """First corner counter-clockwise from ``entry`` linked to the next qubit."""
    q, slot = token
    base = entry if entry is not None else dg.vertex(q, 0)
    if slot is not None:
        v = dg.vertex(q, slot)
        if dg.partner[v] < 0 or dg.qubit_ids[dg.partner[v] >> 2] != nxt:
            raise SlotMissing(f"corner {dg.corner_name(v)} has no link to qubit {nxt}")
        return v
    v = succ(base) if entry is not None else base
    for _ in range(4):
        p = dg.partner[v]
        if v != entry and p >= 0 and dg.qubit_ids[p >> 2] == nxt:
            return v
        v = succ(v)
    raise SlotMissing(f"qubit {q} has no link to qubit {nxt}")


def _ccw_run(a: int, b: int) -> list[int]:
    out = [a]
    while out[-1] != b:
        out.append(succ(out[-1]))
    return out


def parse_steps(tokens) -> list[tuple[int, int | None]]:
    """Tokens are qubit ids or ``q.S`` corner names pinning a slot."""
    out = []
    for t in tokens:
        if isinstance(t, tuple):
            out.append(t)
            continue
        t = str(t)
        if "." in t:
            q, s = t.split(".")
            if s not in SLOTS:
                raise SlotMissing(f"bad slot in {t!r}")
            out.append((int(q), SLOTS.index(s)))
        else:
            out.append((int(t), None))
    return out


def lift_canonical(dg: DecoratedGraph, steps, loop: bool = False) -> DirectedPath:
    """Canonical lift of a qubit path or loop.

    For open paths the first and last tokens may pin the start and end
    corners (``q.S``); otherwise the qubit's unique unpaired corner is used.
    Inner tokens with a slot pin the exit corner from that qubit.
    """
    st = parse_steps(steps)
    for q, _ in st:
        if q not in dg.index_of:
            raise InvalidPath(f"unknown qubit {q}")
    if loop:
        if len(st) > 1 and st[0][0] == st[-1][0]:
            st = st[:-1]
        if len(st) < 2:
            raise NotALoop("a loop needs at least two qubits")
        m = len(st)
        # resolve the closing link first so the loop starts at a definite corner
        exit_last = _exit_corner(dg, None, st[-1], st[0][0])
        entry = dg.partner[exit_last]
        start = entry
        verts = []
        for k in range(m):
            q, _ = st[k]
            nxt = st[(k + 1) % m][0]
            if k == m - 1:
                x = exit_last
                if x == entry:
                    raise SlotMissing(f"qubit {q} enters and leaves through one corner")
            else:
                x = _exit_corner(dg, entry, st[k], nxt)
            verts.extend(_ccw_run(entry, x))
            entry = dg.partner[x]
        verts.append(start)
        if entry != start:
            raise SlotMissing("loop does not close on its starting corner")
        return DirectedPath.on(dg, verts)

    if len(st) < 2:
        raise InvalidPath("an open path needs two qubits")
    q0, s0 = st[0]
    if s0 is None:
        un = [v for v in range(4 * dg.index_of[q0], 4 * dg.index_of[q0] + 4) if dg.partner[v] < 0]
        if len(un) != 1:
            raise SlotMissing(f"start corner on qubit {q0} is ambiguous")
        start = un[0]
    else:
        start = dg.vertex(q0, s0)
    verts = []
    entry = start
    for k in range(len(st) - 1):
        tok = st[k] if k > 0 else (q0, None)
        x = _exit_corner(dg, entry if k > 0 else start, tok, st[k + 1][0])
        if x == entry:
            raise SlotMissing(f"qubit {tok[0]} enters and leaves through one corner")
        verts.extend(_ccw_run(entry, x))
        entry = dg.partner[x]
    qn, sn = st[-1]
    if sn is None:
        i = dg.index_of[qn]
        un = [v for v in range(4 * i, 4 * i + 4) if dg.partner[v] < 0]
        if len(un) != 1:
            raise SlotMissing(f"end corner on qubit {qn} is ambiguous")
        end = un[0]
    else:
        end = dg.vertex(qn, sn)
    if end == entry:
        raise SlotMissing(f"path ends on its entry corner {dg.corner_name(end)}")
    verts.extend(_ccw_run(entry, end))
    return DirectedPath.on(dg, verts)


# ---------------------------------------------------------------------------
# reversal and deformation


def flip_wedges(path: DirectedPath) -> DirectedPath:
    """Take every two-edge diamond traversal the other way round."""
    vs = list(path.vertices)
    for i, j, length, _ in path.diamond_runs():
        if length == 2:
            cur = vs[i + 1]
            vs[i + 1] = (cur & ~3) | ((cur + 2) & 3)
    return DirectedPath(tuple(vs), path.kinds)


def reverse(path: DirectedPath):
    """Naive and canonical reversals with predicted Kasteleyn ratios.

    Returns ``(rhat, r, s_hat, s_r)`` with ``wk(rhat) = s_hat * wk(path)`` and
    ``wk(r) = s_r * wk(path)`` for every orientation.
    """
    rhat = path.reversed()
    r = flip_wedges(rhat)
    s_hat = -1 if len(path) % 2 else 1
    wedges = sum(1 for run in path.diamond_runs() if run[2] == 2)
    s_r = s_hat * (-1 if wedges % 2 else 1)
    return rhat, r, s_hat, s_r


def _find_segment(cyc, seg):
    """Locate ``seg`` on the cyclic boundary; returns (start, +1|-1) or None."""
    n = len(cyc)
    if len(seg) > n:
        return None
    for i in range(n):
        if cyc[i] != seg[0]:
            continue
        for d in (1, -1):
            if all(cyc[(i + d * k) % n] == seg[k] for k in range(len(seg))):
                return i, d
    return None


def deform_face(dg: DecoratedGraph, path: DirectedPath, start: int, stop: int, face: int):
    """Push ``path[start:stop+1]`` across ``face``.

    Returns ``(new_path, sign)`` with ``wk(path) = sign * wk(new_path)``.
    """
    if face == dg.outer_face:
        raise SegmentNotOnFace("cannot deform across the outer face")
    if not 0 <= start < stop < len(path.vertices):
        raise SegmentNotOnFace("empty segment")
    seg = path.vertices[start : stop + 1]
    cyc = dg.faces[face]
    hit = _find_segment(cyc, seg)
    if hit is None:
        raise SegmentNotOnFace("segment is not a run of the face boundary")
    i, d = hit
    n = len(cyc)
    a = len(seg) - 1
    b = n - a
    if b < 1:
        raise SegmentNotOnFace("segment covers the whole face")
    # complement from seg[0] to seg[-1] going the other way round
    comp = [cyc[(i - d * k) % n] for k in range(b + 1)]
    new_vs = path.vertices[:start] + tuple(comp) + path.vertices[stop + 1 :]
    new = DirectedPath.on(dg, new_vs)
    cw_len = b if d == 1 else a
    sign = 1 if cw_len % 2 else -1
    return new, sign


# ---------------------------------------------------------------------------
# enclosed anyons and line ratios


def _fill(dg: DecoratedGraph, cut, seeds):
    adj = dg.face_adjacency
    seen = set(seeds)
    stack = list(seeds)
    while stack:
        f = stack.pop()
        for g, e in adj[f]:
            if e not in cut and g not in seen:
                seen.add(g)
                stack.append(g)
    return seen


def loop_interior(dg: DecoratedGraph, loop: DirectedPath):
    """(counter_clockwise, set of vertices strictly inside) for a simple loop."""
    if not loop.is_loop:
        raise NotALoop("path is not closed")
    if not loop.is_simple() or len(loop) < 3:
        raise NonSimpleLoop("loop revisits a vertex")
    cut = {edge_key(u, v) for u, v in loop.edges}
    right_seeds = {dg.face_of_dart(v, u) for u, v in loop.edges}
    left = _fill(dg, cut, {dg.face_of_dart(u, v) for u, v in loop.edges})
    if left & right_seeds:
        raise NonSimpleLoop("loop does not separate the plane")
    ccw = dg.outer_face not in left
    inside = left if ccw else _fill(dg, cut, right_seeds)
    verts = {v for f in inside for v in dg.faces[f]}
    return ccw, verts - set(loop.vertices)


def enclosed_sigma(dg: DecoratedGraph, loop: DirectedPath) -> int:
    _, inside = loop_interior(dg, loop)
    return sum(1 for v in inside if dg.partner[v] < 0)


def simple_loop_wk(dg: DecoratedGraph, loop: DirectedPath) -> int:
    """Orientation-free Kasteleyn sign of a simple loop."""
    ccw, inside = loop_interior(dg, loop)
    val = -1 if len(inside) % 2 == 0 else 1
    if not ccw:
        val *= -1 if len(loop) % 2 else 1
    return val


def split_cycles(vertices) -> list[list[int]]:
    """Break a closed walk into simple cycles (two-vertex back-and-forths included)."""
    stack: list[int] = []
    where: dict[int, int] = {}
    out = []
    for v in vertices:
        if v in where:
            k = where[v]
            cyc = stack[k:] + [v]
            out.append(cyc)
            for u in stack[k + 1 :]:
                del where[u]
            del stack[k + 1 :]
        else:
            where[v] = len(stack)
            stack.append(v)
    return out


def closed_walk_wk(dg: DecoratedGraph, vertices) -> int:
    sign = 1
    for cyc in split_cycles(vertices):
        if len(cyc) == 3:
            sign = -sign  # out and back along one edge
        elif len(cyc) > 3:
            sign *= simple_loop_wk(dg, DirectedPath.on(dg, cyc))
    return sign


def line_ratio(dg: DecoratedGraph, g1: DirectedPath, g2: DirectedPath) -> int:
    """``(-1)**N_sigma(g1, g2)``: the Kasteleyn ratio of two lines with common ends."""
    if g1.vertices[0] != g2.vertices[0] or g1.vertices[-1] != g2.vertices[-1]:
        raise EndpointMismatch("lines do not share endpoints")
    walk = g1.vertices + g2.vertices[::-1][1:]
    sign = closed_walk_wk(dg, walk)
    return sign * (-1 if len(g2) % 2 else 1)


def face_loop(dg: DecoratedGraph, f: int) -> DirectedPath:
    cyc = dg.faces[f]
    return DirectedPath.on(dg, cyc + (cyc[0],))

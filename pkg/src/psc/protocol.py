"""Scenario scripts: anyon bookkeeping, braids, measurements and fusion.

A scenario is a line-oriented text file::

    load patch_2x5.psc
    seed 7
    init
    create a b edge 1.S 6.N
    move a to 7/N
    braid b c
    measure wilson a b
    fuse a b

Every unitary runs as a Pauli rotation on the tableau engine and as its gate
list on the dense oracle, so ``backend both`` checks the compiler too.
"""

from __future__ import annotations

import json
import math
import os
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .compiler import (
    _face_segment,
    compile_line,
    compile_stabilizer,
    compile_thooft,
    decompose,
    elementary_move,
    stabilizers,
)
from .engine import StabilizerState
from .errors import (
    BackendDivergence,
    EndpointMismatch,
    Inconsistent,
    PSCError,
    ScenarioError,
    UnsupportedGeometry,
    ValidationFailed,
)
from .graph import DecoratedGraph, SLOTS, load_graph, pred, succ
from .kasteleyn import lift_canonical
from .oracle import DenseState
from .paths import DirectedPath, canonicalize
from .pauli import PauliString
from .rng import XorShift64Star

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


# ---------------------------------------------------------------------------
# anyons and lines


@dataclass
class Anyon:
    name: str
    corner: int
    composite: bool = False


@dataclass(frozen=True)
class TrackedLine:
    """Canonical Wilson line between a created pair, extended as they move.

    ``operator`` is the exact Heisenberg image of the line created with the
    pair.  It equals ``sign`` times the compiled ``path``; ``sign`` is 0 when
    the spliced path no longer carries the same letters, which only happens
    after a move swept over a second anyon.
    """

    pair: tuple
    path: DirectedPath
    history: tuple = ()
    sign: int = 1
    operator: PauliString | None = None


def creation_line(dg: DecoratedGraph, u: int, v: int) -> DirectedPath:
    """Canonical line from ``u`` to ``v`` around their common face.

    Walking the face clockwise crosses every diamond counter-clockwise.
    """
    f = dg.face_containing_corner(u)
    if f != dg.face_containing_corner(v):
        raise UnsupportedGeometry(f"{dg.corner_name(u)} and {dg.corner_name(v)} share no face")
    return _face_segment(dg, f, v, u).reversed()


def shortest_line(dg: DecoratedGraph, u: int, v: int) -> DirectedPath:
    """Canonical line along a shortest qubit route between two unpaired corners."""
    qa, qb = u >> 2, v >> 2
    if qa == qb:
        raise UnsupportedGeometry("both corners sit on one qubit")
    prev = {qa: None}
    todo = deque([qa])
    while todo:
        d = todo.popleft()
        if d == qb:
            break
        for s in range(4):
            p = dg.partner[4 * d + s]
            if p >= 0 and p >> 2 not in prev:
                prev[p >> 2] = d
                todo.append(p >> 2)
    route = [qb]
    while route[-1] != qa:
        route.append(prev[route[-1]])
    route.reverse()
    steps = [dg.corner_name(u)] + [dg.qubit_ids[d] for d in route[1:-1]] + [dg.corner_name(v)]
    return lift_canonical(dg, steps)


def extend_line(tl: TrackedLine, move) -> TrackedLine:
    """Grow a tracked line through the region swept by ``move``.

    The in-plaquette path of the move replaces the endpoint (or the relinked
    L-link where the line crosses it) and the result is re-canonicalised on
    the new graph.  The operator identity holds whenever both the old and
    the new path are simple.
    """
    dg = move.before
    c1, c2 = move.anyon, move.target
    c3 = dg.partner[c2]
    vs = list(tl.path.vertices)
    touches_end = c1 in (vs[0], vs[-1])
    crosses = any(e in ((c3, c2), (c2, c3)) for e in tl.path.edges)
    if not (touches_end or crosses):
        raise EndpointMismatch("move neither starts at an endpoint nor crosses the line")
    mu = list(move.path.vertices)
    out = [vs[0]]
    for u, v in zip(vs, vs[1:]):
        if (u, v) == (c3, c2):
            out += [c1] + mu[1:]
        elif (u, v) == (c2, c3):
            out += mu[::-1][1:] + [c3]
        else:
            out.append(v)
    if out[-1] == c1:
        out += mu[1:]
    if out[0] == c1:
        out = mu[::-1] + out[1:]
    path = canonicalize(move.after, out)
    rec = (dg.corner_name(c1), dg.corner_name(c2))
    return TrackedLine(tl.pair, path, tl.history + (rec,), tl.sign)


def follow_line(tl: TrackedLine, move) -> TrackedLine:
    """Extend a line and carry its exact operator through the move's rotation."""
    op = tl.operator if tl.operator is not None else compile_line(move.before, tl.path)
    exact = move.rotation.conjugate(op)
    new = extend_line(tl, move)
    got = compile_line(move.after, new.path)
    sign = 0
    if exact.same_letters(got):
        k = exact.ratio(got)
        sign = 1 - k if k % 2 == 0 else 0
    return TrackedLine(new.pair, new.path, new.history, sign, exact)


# ---------------------------------------------------------------------------
# braid planning on the bare partner table


def _next(partner, u: int, v: int) -> int:
    p = partner[v]
    if u == p:
        return pred(v)
    if u == succ(v):
        return p if p >= 0 else pred(v)
    return succ(v)


def _face_walk(partner, u: int, v: int) -> list:
    cyc = [u]
    a, b = u, v
    while True:
        a, b = b, _next(partner, a, b)
        if (a, b) == (u, v):
            return cyc
        cyc.append(a)
        if len(cyc) > 4 * len(partner):
            raise RuntimeError("face walk did not close")


class _Planner:
    def __init__(self, dg: DecoratedGraph):
        self.dg = dg
        self.outer = dg.outer_dart

    def _face(self, partner, c):
        return _face_walk(partner, c, pred(c))

    def _is_outer(self, partner, cyc) -> bool:
        u, v = self.outer
        n = len(cyc)
        return any(cyc[k] == u and cyc[(k + 1) % n] == v for k in range(n))

    def moves(self, partner, c1):
        """Legal (target, new partner, vertex path) triples for anyon ``c1``.

        Paths that pass another unpaired corner are skipped: the swept region
        must hold a single anyon for tracked lines to extend.
        """
        cyc = self._face(partner, c1)
        if self._is_outer(partner, cyc):
            return []
        n = len(cyc)
        i1 = cyc.index(c1)
        out = []
        for k, c2 in enumerate(cyc):
            c3 = partner[c2]
            if c3 < 0 or c3 >> 2 == c1 >> 2:
                continue
            if cyc[(k - 1) % n] != c3:
                path = [cyc[(i1 + t) % n] for t in range((k - i1) % n + 1)]
            else:
                path = [cyc[(i1 - t) % n] for t in range((i1 - k) % n + 1)]
            if any(partner[w] < 0 for w in path[1:-1]):
                continue  # the sweep would pass over another anyon
            new = list(partner)
            new[c2] = -1
            new[c1], new[c3] = c3, c1
            d = c2 >> 2
            if all(new[4 * d + s] < 0 for s in range(4)):
                continue
            side = _face_walk(new, c1, c3)
            m = len(side)
            if any(side[t] == c3 and side[(t + 1) % m] == c1 for t in range(m)):
                continue  # bridge
            out.append((c2, tuple(new), path))
        return out

    def winding(self, pa, pb, seq) -> float:
        """Total turning of the a->b separation vector along ``seq``."""
        pos = self.dg.corner_position

        def ang(x, y):
            (xa, ya), (xb, yb) = pos(x), pos(y)
            return math.atan2(yb - ya, xb - xa)

        total = 0.0
        cur = ang(pa, pb)
        for who, path in seq:
            for v in path[1:]:
                if who == 0:
                    pa = v
                else:
                    pb = v
                nxt = ang(pa, pb)
                d = (nxt - cur + math.pi) % (2 * math.pi) - math.pi
                total += d
                cur = nxt
        return total

    def transport(self, partner, ca, cb, limit=20000):
        """Shortest run of moves of ``ca`` onto a face holding ``cb``."""
        start = (partner, ca)
        prev = {start: None}
        todo = deque([start])
        while todo:
            node = todo.popleft()
            part, a = node
            if cb in self._face(part, a):
                seq = []
                while prev[node] is not None:
                    node, step = prev[node]
                    seq.append(step)
                return seq[::-1], part, a
            for c2, new, path in self.moves(part, a):
                nxt = (new, c2)
                if nxt not in prev:
                    prev[nxt] = (node, (a, c2, path))
                    todo.append(nxt)
                    if len(prev) > limit:
                        raise UnsupportedGeometry("transport search exhausted")
        raise UnsupportedGeometry("anyons cannot be brought onto one face")

    def swaps(self, partner, ca, cb, depth):
        """Yield move sequences of length ``depth`` exchanging ``ca`` and ``cb``."""
        memo = {}

        def moves(part, c):
            key = (part, c)
            if key not in memo:
                memo[key] = self.moves(part, c)
            return memo[key]

        def rec(part, a, b, seq, diff):
            left = depth - len(seq)
            if left == 0:
                if a == cb and b == ca and diff == 0:
                    yield list(seq)
                return
            if diff > 3 * left:
                return  # each move rewrites three partner entries
            for who, c in ((0, a), (1, b)):
                for c2, new, path in moves(part, c):
                    touched = (c, c2, part[c2])
                    d = diff + sum((new[t] != partner[t]) - (part[t] != partner[t]) for t in touched)
                    seq.append((who, c, c2, path))
                    if who == 0:
                        yield from rec(new, c2, b, seq, d)
                    else:
                        yield from rec(new, a, c2, seq, d)
                    seq.pop()

        yield from rec(partner, ca, cb, [], 0)

    def plan(self, ca, cb, ccw=True, max_depth=5):
        partner = tuple(self.dg.partner)
        route, part, a1 = self.transport(partner, ca, cb)
        back = []
        for x, y, path in reversed(route):
            back.append((1, y, x, path[::-1]))
        goal = math.pi if ccw else -math.pi
        for depth in range(2, max_depth + 1):
            for sw in self.swaps(part, a1, cb, depth):
                seq = [(0, x, y, p) for x, y, p in route] + sw + back
                w = self.winding(ca, cb, [(who, p) for who, _, _, p in seq])
                if abs(w - goal) < 1e-6:
                    return [(who, x, y) for who, x, y, _ in seq]
        raise UnsupportedGeometry("no exchange found within the search depth")


def plan_braid(dg: DecoratedGraph, ca: int, cb: int, ccw: bool = True, max_depth: int = 5):
    """Elementary moves exchanging the anyons at ``ca`` and ``cb``.

    The first anyon walks to the face of the second, the two swap places
    along a short cycle of moves that restores every L-link, and the second
    retraces the first one's route.  Returns ``(who, from, to)`` triples with
    ``who`` 0 for the anyon that started at ``ca``.  The separation vector
    turns by ``+pi`` for a counter-clockwise exchange.
    """
    return list(_plan_cached(dg, ca, cb, ccw, max_depth))


@lru_cache(maxsize=256)
def _plan_cached(dg, ca, cb, ccw, max_depth):
    return tuple(_Planner(dg).plan(ca, cb, ccw, max_depth))


# ---------------------------------------------------------------------------
# backends


class EngineBackend:
    name = "engine"

    def __init__(self, seed: int):
        self.rng = XorShift64Star(seed)
        self.state = None

    def init(self, stabs, fixings):
        self.state = StabilizerState.init_code_state(stabs, fixings)

    def rotate(self, rot, gates, k):
        self.state.apply_rotation(rot)

    def pauli(self, p):
        self.state.apply_pauli(p)

    def measure(self, p):
        return self.state.measure(p, self.rng)

    def expect(self, p):
        return self.state.expectation(p)


class OracleBackend:
    name = "oracle"

    def __init__(self, seed: int):
        self.rng = XorShift64Star(seed)
        self.state = None

    def init(self, stabs, fixings):
        # validate exactly as the engine does before projecting
        StabilizerState.init_code_state(stabs, fixings)
        self.state = DenseState.from_stabilizers(list(stabs) + list(fixings))

    def rotate(self, rot, gates, k):
        self.state.apply_gates(gates, k)

    def pauli(self, p):
        self.state.apply_pauli(p)

    def measure(self, p):
        return self.state.measure(p, self.rng)

    def expect(self, p):
        return self.state.expectation(p)


BACKENDS = {"engine": EngineBackend, "oracle": OracleBackend}


# ---------------------------------------------------------------------------
# scenario parsing


@dataclass
class Instruction:
    op: str
    args: list
    text: str
    lineno: int = 0


@dataclass
class Scenario:
    instructions: list
    seed: int | None = None
    base_dir: str = "."
    graph: DecoratedGraph | None = None
    backend: str = "engine"


def parse_scenario(text: str, base_dir: str = ".") -> Scenario:
    out = []
    seed = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "seed":
            if len(parts) != 2:
                raise ScenarioError(f"line {lineno}: seed takes one integer")
            seed = int(parts[1], 0)
        out.append(Instruction(parts[0], parts[1:], line, lineno))
    return Scenario(out, seed, base_dir)


def load_scenario(path) -> Scenario:
    with open(path) as fh:
        return parse_scenario(fh.read(), os.path.dirname(os.path.abspath(path)))


def resolve_data(name: str, base_dir: str = ".") -> str:
    for cand in (os.path.join(base_dir, name), name, os.path.join(DATA_DIR, name)):
        if os.path.exists(cand):
            return cand
    raise ScenarioError(f"cannot find {name}")


def _parse_target(dg: DecoratedGraph, tok: str) -> int:
    return dg.parse_corner(tok.replace("/", "."))


# ---------------------------------------------------------------------------
# runner


@dataclass
class Runner:
    """Executes instructions against zero, one or two backends in lockstep."""

    seed: int = 0
    backend: str = "engine"
    base_dir: str = "."
    dg: DecoratedGraph | None = None
    anyons: dict = field(default_factory=dict)
    lines: dict = field(default_factory=dict)
    reference: dict = field(default_factory=dict)
    gates: list = field(default_factory=list)
    on_move: object = None  # callback(runner, move) after every elementary move
    records: list = field(default_factory=list)
    dry: bool = False

    def __post_init__(self):
        names = [] if self.dry else (["engine", "oracle"] if self.backend == "both" else [self.backend])
        for nm in names:
            if nm not in BACKENDS:
                raise ScenarioError(f"unknown backend {nm}")
        self.backs = [BACKENDS[nm](self.seed) for nm in names]
        self.initialised = False
        self.max_weight = 0

    # helpers ------------------------------------------------------------
    def _all(self, fn):
        vals = [fn(b) for b in self.backs]
        if len(set(vals)) > 1:
            raise BackendDivergence(f"backends disagree: {vals}")
        return vals[0] if vals else None

    def _need_init(self):
        if not self.initialised:
            raise ScenarioError("quantum instruction before init")

    def anyon(self, name: str) -> Anyon:
        if name not in self.anyons:
            raise ScenarioError(f"unknown anyon {name}")
        return self.anyons[name]

    def stabilizer_signs(self) -> dict:
        if self.dry or not self.initialised:
            return {}
        out = {}
        for label, b in stabilizers(self.dg).items():
            self.max_weight = max(self.max_weight, b.weight)
            out[label] = self._all(lambda be, b=b: be.expect(b))
        return dict(sorted(out.items(), key=lambda kv: _label_key(kv[0])))

    def apply_rotation(self, rot):
        self._need_init()
        gates, k = decompose(rot)
        self.gates.extend(gates)
        for be in self.backs:
            be.rotate(rot, gates, k)

    def apply_pauli(self, p: PauliString):
        self._need_init()
        for be in self.backs:
            be.pauli(p)

    def measure(self, p: PauliString) -> int | None:
        self._need_init()
        if self.dry:
            return None
        return self._all(lambda be: be.measure(p))

    def expect(self, p: PauliString) -> int | None:
        self._need_init()
        if self.dry:
            return None
        return self._all(lambda be: be.expect(p))

    def _pair_key(self, a: str, b: str):
        return (a, b) if (a, b) in self.lines else (b, a)

    # instructions -----------------------------------------------------------
    def load(self, dg: DecoratedGraph):
        self.dg = dg
        self.anyons, self.lines, self.reference = {}, {}, {}
        self.initialised = False

    def default_fixings(self) -> list:
        """Wilson lines between consecutive free corners until the code space is one state."""
        dg = self.dg
        stabs = list(stabilizers(dg).values())
        need = dg.n_qubits - _rank(stabs)
        free = list(dg.unpaired)
        chosen = []
        for i in range(len(free)):
            if need == 0:
                break
            for j in range(i + 1, len(free)):
                try:
                    cand = compile_line(dg, shortest_line(dg, free[i], free[j]))
                except PSCError:
                    continue
                if not all(cand.commutes(g) for g in stabs + chosen):
                    continue
                if _rank(stabs + chosen + [cand]) == dg.n_qubits - need + 1:
                    chosen.append(cand)
                    need -= 1
                    break
        return chosen

    def init(self, fixings=None):
        stabs = list(stabilizers(self.dg).values())
        fix = self.default_fixings() if fixings is None else list(fixings)
        for be in self.backs:
            be.init(stabs, fix)
        self.initialised = True

    def create(self, a: str, b: str, ca: int, cb: int):
        for nm in (a, b):
            if nm in self.anyons:
                raise ScenarioError(f"anyon {nm} already exists")
        new, _ = self.dg.delete_L_link(ca, cb)
        self.dg = new
        self.anyons[a] = Anyon(a, ca)
        self.anyons[b] = Anyon(b, cb)
        line = creation_line(new, ca, cb)
        self.lines[(a, b)] = TrackedLine((a, b), line, operator=compile_line(new, line))
        self.reference[(a, b)] = (new, line)

    def move(self, name: str, target: int):
        self._need_init()
        an = self.anyon(name)
        mv = elementary_move(self.dg, an.corner, target, composite=an.composite)
        if not self.dry:
            self.apply_rotation(mv.rotation)
        c3 = self.dg.partner[target]
        for key, tl in list(self.lines.items()):
            vs = tl.path.vertices
            if an.corner in (vs[0], vs[-1]) or any(
                e in ((c3, target), (target, c3)) for e in tl.path.edges
            ):
                self.lines[key] = follow_line(tl, mv)
            elif tl.operator is not None:
                rot = mv.rotation
                self.lines[key] = TrackedLine(tl.pair, tl.path, tl.history, tl.sign, rot.conjugate(tl.operator))
        an.corner = target
        self.dg = mv.after
        if self.on_move is not None and not self.dry:
            self.on_move(self, mv)
        return mv

    def braid(self, a: str, b: str, ccw: bool = True):
        A, B = self.anyon(a), self.anyon(b)
        plan = plan_braid(self.dg, A.corner, B.corner, ccw)
        for who, _, target in plan:
            self.move(a if who == 0 else b, target)
        return plan

    def wilson_path(self, a: str, b: str, via=None) -> DirectedPath:
        A, B = self.anyon(a), self.anyon(b)
        if via:
            steps = [self.dg.corner_name(A.corner)] + [int(q) for q in via] + [self.dg.corner_name(B.corner)]
            return lift_canonical(self.dg, steps)
        for key, flip in (((a, b), False), ((b, a), True)):
            if key in self.reference:
                g0, path = self.reference[key]
                ends = (path.vertices[0], path.vertices[-1])
                if ends == (A.corner, B.corner)[:: -1 if flip else 1] and _valid_on(self.dg, path):
                    return path.reversed() if flip else path
        return shortest_line(self.dg, A.corner, B.corner)

    def tracked(self, a: str, b: str) -> TrackedLine:
        for key in ((a, b), (b, a)):
            if key in self.lines:
                return self.lines[key]
        raise ScenarioError(f"no tracked line between {a} and {b}")

    def tracked_operator(self, a: str, b: str) -> PauliString:
        tl = self.tracked(a, b)
        if tl.operator is not None:
            return tl.operator
        return compile_line(self.dg, tl.path)

    def fuse(self, a: str, b: str) -> int | None:
        A, B = self.anyon(a), self.anyon(b)
        new, _, readout = self.dg.add_L_link(A.corner, B.corner)
        self.dg = new
        out = self.measure(compile_stabilizer(new, readout))
        for nm in (a, b):
            del self.anyons[nm]
        for key in [k for k in self.lines if a in k or b in k]:
            del self.lines[key]
            self.reference.pop(key, None)
        return out

    def attach_flux(self, name: str, faces):
        """Flip links along an open 't Hooft line ending at the anyon's face and mark it composite."""
        an = self.anyon(name)
        fs = [self.dg.plaquette_by_label(f) for f in faces]
        if fs[-1] != self.dg.face_containing_corner(an.corner):
            raise ScenarioError(f"'t Hooft line must end on the face of {name}")
        p = compile_thooft(self.dg, fs, an.corner)
        if not self.dry:
            self.apply_pauli(p)
        an.composite = not an.composite

    # dispatch ---------------------------------------------------------------
    def execute(self, ins: Instruction):
        op, args = ins.op, ins.args
        outcome = None
        if op == "load":
            self.load(load_graph(resolve_data(args[0], self.base_dir)).decorated)
        elif op == "seed":
            pass
        elif op == "init":
            self.init(self._parse_logicals(args))
        elif op == "create":
            if len(args) != 5 or args[2] != "edge":
                raise ScenarioError("usage: create <a> <b> edge <q1> <q2>")
            ca, cb = self._link_ends(args[3], args[4])
            self.create(args[0], args[1], ca, cb)
        elif op == "move":
            if len(args) != 3 or args[1] != "to":
                raise ScenarioError("usage: move <anyon> to <qubit>/<slot>")
            self.move(args[0], _parse_target(self.dg, args[2]))
        elif op == "braid":
            if len(args) not in (2, 3):
                raise ScenarioError("usage: braid <a> <b> [cw]")
            self.braid(args[0], args[1], ccw=not (len(args) == 3 and args[2] == "cw"))
        elif op == "measure":
            outcome = self._measure(args)
        elif op == "fuse":
            outcome = self.fuse(args[0], args[1])
        elif op == "expect":
            outcome = self.expect(PauliString.parse(args[0]))
        elif op == "flux":
            if len(args) < 3 or args[1] != "via":
                raise ScenarioError("usage: flux <anyon> via <plaquette list>")
            self.attach_flux(args[0], args[2:])
        else:
            raise ScenarioError(f"unknown directive {op}")
        rec = {"op": ins.text, "outcome": outcome, "stabilizer_signs": self.stabilizer_signs()}
        self.records.append(rec)
        return rec

    def _measure(self, args):
        kind = args[0] if args else ""
        if kind == "wilson":
            via = args[4:] if len(args) > 3 and args[3] == "via" else None
            return self.measure(compile_line(self.dg, self.wilson_path(args[1], args[2], via)))
        if kind == "tracked":
            return self.measure(self.tracked_operator(args[1], args[2]))
        if kind == "thooft":
            toks = args[1:]
            anyon = None
            if "anyon" in toks:
                k = toks.index("anyon")
                anyon = self.anyon(toks[k + 1]).corner
                toks = toks[:k]
            fs = [self.dg.plaquette_by_label(t) for t in toks]
            return self.measure(compile_thooft(self.dg, fs, anyon))
        if kind == "stabilizer":
            return self.measure(compile_stabilizer(self.dg, self.dg.plaquette_by_label(args[1])))
        raise ScenarioError("usage: measure wilson|tracked|thooft|stabilizer ...")

    def _link_ends(self, t1: str, t2: str):
        dg = self.dg
        if "." in t1 or "/" in t1:
            ca, cb = _parse_target(dg, t1), _parse_target(dg, t2)
            if dg.partner[ca] != cb:
                raise ScenarioError(f"{t1} and {t2} are not linked")
            return ca, cb
        ia, ib = dg.index_of[int(t1)], dg.index_of[int(t2)]
        hits = [(4 * ia + s, dg.partner[4 * ia + s]) for s in range(4) if dg.partner[4 * ia + s] >> 2 == ib]
        if len(hits) != 1:
            raise ScenarioError(f"qubits {t1} and {t2} share {len(hits)} links; give corners")
        return hits[0]

    def _parse_logicals(self, args):
        if not args:
            return None
        if args[0] != "logical":
            raise ScenarioError("usage: init [logical <spec> ...]")
        specs, cur = [], []
        for tok in args[1:]:
            if tok == "logical":
                specs.append(cur)
                cur = []
            else:
                cur.append(tok)
        specs.append(cur)
        out = []
        for sp in specs:
            if not sp:
                raise ScenarioError("empty logical")
            if sp[0] == "thooft":
                out.append(compile_thooft(self.dg, [self.dg.plaquette_by_label(t) for t in sp[1:]]))
            elif sp[0] == "wilson":
                u, v = self.dg.parse_corner(sp[1]), self.dg.parse_corner(sp[2])
                out.append(compile_line(self.dg, shortest_line(self.dg, u, v)))
            else:
                out.append(PauliString.parse(sp[0]))
        return out

    def record(self) -> dict:
        return {
            "seed": self.seed,
            "instructions": self.records,
            "final_graph_hash": self.dg.structure_hash() if self.dg is not None else None,
        }


def _valid_on(dg: DecoratedGraph, path: DirectedPath) -> bool:
    try:
        DirectedPath.on(dg, path.vertices)
    except PSCError:
        return False
    return True


def _label_key(label: str):
    q, _, s = label.partition(".")
    return (int(q), SLOTS.index(s)) if s else (10**9, 0)


def _rank(gens) -> int:
    st = StabilizerState.from_generators(gens[0].n, gens)
    piv = st._reduced()
    for r in range(len(piv)):
        if piv[r] < 0 and st.E[r] % 4:
            raise Inconsistent("fixings contradict the stabilizers")
    return int((piv >= 0).sum())


def run(scenario: Scenario, backend: str | None = None, seed: int | None = None) -> dict:
    """Validate by a dry run, then execute and return the measurement record."""
    return execute(scenario, backend, seed).record()


def execute(scenario: Scenario, backend: str | None = None, seed: int | None = None, on_move=None) -> Runner:
    seed = seed if seed is not None else (scenario.seed if scenario.seed is not None else 0)
    backend = backend or scenario.backend
    for dry in (True, False):
        r = Runner(seed=seed, backend=backend, base_dir=scenario.base_dir, dry=dry, on_move=on_move)
        if scenario.graph is not None:
            r.load(scenario.graph)
        for i, ins in enumerate(scenario.instructions):
            try:
                r.execute(ins)
            except BackendDivergence:
                raise
            except (PSCError, KeyError, ValueError, IndexError) as exc:
                if dry:
                    raise ValidationFailed(i, f"{ins.text}: {exc}") from exc
                raise
    return r


def record_json(rec: dict) -> str:
    return json.dumps(rec, indent=1, sort_keys=True) + "\n"

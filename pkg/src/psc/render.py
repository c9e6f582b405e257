"""Static SVG drawings of decorated graphs, anyons and line operators."""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .errors import GraphError
from .graph import DecoratedGraph, qubit_of
from .kasteleyn import Orientation
from .paths import DirectedPath

WILSON_STYLE = 'stroke="#c0392b" stroke-width="3" fill="none" stroke-linecap="round"'
THOOFT_STYLE = 'stroke="#2471a3" stroke-width="3" fill="none" stroke-dasharray="7 4"'


@dataclass
class RenderSpec:
    graph: DecoratedGraph
    orientation: Orientation | None = None
    anyons: dict = field(default_factory=dict)  # name -> corner
    wilson: list = field(default_factory=list)  # DirectedPath
    thooft: list = field(default_factory=list)  # face index sequences
    width: int = 640
    height: int = 640

    def check(self):
        dg = self.graph
        nv = dg.n_vertices
        for name, c in self.anyons.items():
            if not 0 <= c < nv:
                raise GraphError(f"anyon {name} at unknown corner {c}")
        for p in self.wilson:
            DirectedPath.on(dg, p.vertices)
        nf = len(dg.faces)
        for faces in self.thooft:
            if any(not 0 <= f < nf for f in faces):
                raise GraphError("'t Hooft line names an unknown face")


class _Frame:
    def __init__(self, points, width, height, pad=40):
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        self.x0, self.y1 = min(xs), max(ys)
        span = max(max(xs) - self.x0, self.y1 - min(ys), 1e-9)
        self.k = min(width, height) - 2 * pad
        self.k /= span
        self.pad = pad

    def __call__(self, p):
        return (self.pad + (p[0] - self.x0) * self.k, self.pad + (self.y1 - p[1]) * self.k)


def _centroid(pts):
    return (sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts))


def render_svg(spec: RenderSpec) -> str:
    spec.check()
    dg = spec.graph
    pos = [dg.corner_position(v) for v in range(dg.n_vertices)]
    fr = _Frame(pos, spec.width, spec.height)
    P = [fr(p) for p in pos]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]

    for f in dg.plaquettes:
        pts = " ".join(f"{P[v][0]:.2f},{P[v][1]:.2f}" for v in dg.faces[f])
        out.append(f'<polygon points="{pts}" fill="#f4f1e8" stroke="none"/>')
        cx, cy = _centroid([P[v] for v in dg.faces[f]])
        out.append(
            f'<text x="{cx:.2f}" y="{cy:.2f}" font-size="8" fill="#999" text-anchor="middle">'
            f"{escape(dg.plaquette_label(f))}</text>"
        )

    for u, v in dg.edges:
        same = qubit_of(u) == qubit_of(v)
        style = 'stroke="#bbb" stroke-width="1"' if same else 'stroke="#333" stroke-width="1.5"'
        out.append(f'<line x1="{P[u][0]:.2f}" y1="{P[u][1]:.2f}" x2="{P[v][0]:.2f}" y2="{P[v][1]:.2f}" {style}/>')
        if spec.orientation is not None:
            a, b = (u, v) if spec.orientation.points(u, v) else (v, u)
            mx, my = (P[a][0] + P[b][0]) / 2, (P[a][1] + P[b][1]) / 2
            dx, dy = P[b][0] - P[a][0], P[b][1] - P[a][1]
            n = max((dx * dx + dy * dy) ** 0.5, 1e-9)
            dx, dy = 4 * dx / n, 4 * dy / n
            tri = f"{mx + dx:.2f},{my + dy:.2f} {mx - dx - dy:.2f},{my - dy + dx:.2f} {mx - dx + dy:.2f},{my - dy - dx:.2f}"
            out.append(f'<polygon points="{tri}" fill="#555"/>')

    for faces in spec.thooft:
        pts = [fr(_centroid([pos[v] for v in dg.faces[f]])) if f != dg.outer_face else None for f in faces]
        pts = [p for p in pts if p is not None]
        if len(pts) > 1:
            d = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
            out.append(f'<polyline points="{d}" {THOOFT_STYLE}/>')

    for path in spec.wilson:
        d = " ".join(f"{P[v][0]:.2f},{P[v][1]:.2f}" for v in path.vertices)
        out.append(f'<polyline points="{d}" {WILSON_STYLE}/>')

    for v in dg.unpaired:
        out.append(f'<circle cx="{P[v][0]:.2f}" cy="{P[v][1]:.2f}" r="4" fill="#888"/>')
    for name, v in sorted(spec.anyons.items()):
        x, y = P[v]
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="7" fill="#e67e22" stroke="black"/>')
        out.append(f'<text x="{x + 9:.2f}" y="{y - 9:.2f}" font-size="12">{escape(str(name))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def parse_pathset(dg: DecoratedGraph, text: str) -> RenderSpec:
    """Overlay file: ``wilson <tokens>``, ``loop <tokens>``, ``thooft <faces>``,
    ``anyon <name> <corner>`` and ``orientation`` lines, ``#`` comments."""
    from .kasteleyn import find_kasteleyn, lift_canonical, parse_steps

    spec = RenderSpec(dg)
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        kind, args = line[0], line[1:]
        if kind == "wilson":
            spec.wilson.append(lift_canonical(dg, parse_steps(args)))
        elif kind == "loop":
            spec.wilson.append(lift_canonical(dg, parse_steps(args), loop=True))
        elif kind == "thooft":
            spec.thooft.append([dg.plaquette_by_label(t) for t in args])
        elif kind == "anyon":
            spec.anyons[args[0]] = dg.parse_corner(args[1])
        elif kind == "orientation":
            spec.orientation = find_kasteleyn(dg)
        else:
            raise GraphError(f"unknown overlay line {raw.strip()!r}")
    return spec

"""Ready-made qubit graphs used by the experiments and tests."""

from __future__ import annotations

from .graph import SurfaceGraph, build_graph


def qid(r: int, c: int, cols: int) -> int:
    return r * cols + c


def grid(rows: int, cols: int, extra=()) -> SurfaceGraph:
    """Square grid, row 0 on top; qubit ``r*cols + c`` sits at ``(c, rows-1-r)``."""
    pos = {qid(r, c, cols): (c, rows - 1 - r) for r in range(rows) for c in range(cols)}
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((qid(r, c, cols), qid(r, c + 1, cols)))
            if r + 1 < rows:
                edges.append((qid(r, c, cols), qid(r + 1, c, cols)))
    return build_graph(pos, list(edges) + list(extra))


def perimeter(rows: int, cols: int) -> list[tuple[int, int]]:
    cyc = [(0, c) for c in range(cols)]
    cyc += [(r, cols - 1) for r in range(1, rows)]
    cyc += [(rows - 1, c) for c in range(cols - 2, -1, -1)]
    cyc += [(r, 0) for r in range(rows - 2, 0, -1)]
    return cyc


def boundary_digons(rows: int, cols: int, offset: int = 0) -> list:
    """Perfect matching of the perimeter into weight-2 boundary plaquettes."""
    cyc = perimeter(rows, cols)
    n = len(cyc)
    out = []
    for k in range(offset, offset + n, 2):
        (r1, c1), (r2, c2) = cyc[k % n], cyc[(k + 1) % n]
        if r1 == r2 == 0:
            slot = 1
        elif r1 == r2 == rows - 1:
            slot = 3
        elif c1 == c2 == cols - 1:
            slot = 0
        else:
            slot = 2
        out.append(((qid(r1, c1, cols), slot), (qid(r2, c2, cols), slot)))
    return out


def surface_patch(rows: int, cols: int, offset: int = 0) -> SurfaceGraph:
    """Surface-code patch: square bulk plus weight-2 boundary plaquettes.

    Every perimeter qubit gains one boundary edge, so the four corners are
    degree-3 and host the only unpaired corners.
    """
    if rows < 2 or cols < 2:
        raise ValueError("patch needs at least 2x2 qubits")
    return grid(rows, cols, boundary_digons(rows, cols, offset))


def square4() -> SurfaceGraph:
    return grid(2, 2)

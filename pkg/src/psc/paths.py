"""Directed paths on the decorated graph."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidPath
from .graph import DecoratedGraph, l_edge_index, succ


@dataclass(frozen=True)
class DirectedPath:
    """A walk through decorated vertices.  A loop repeats its first vertex at the end."""

    vertices: tuple
    kinds: tuple  # 'l' or 'L' per edge

    @classmethod
    def on(cls, dg: DecoratedGraph, vertices) -> "DirectedPath":
        vertices = tuple(vertices)
        if len(vertices) < 2:
            raise InvalidPath("a path needs at least one edge")
        kinds = []
        for u, v in zip(vertices, vertices[1:]):
            if l_edge_index(u, v) is not None:
                kinds.append("l")
            elif dg.partner[u] == v:
                kinds.append("L")
            else:
                raise InvalidPath(f"{dg.corner_name(u)} -> {dg.corner_name(v)} is not an edge")
        return cls(vertices, tuple(kinds))

    def __len__(self) -> int:
        return len(self.kinds)

    @property
    def is_loop(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    @property
    def is_valid(self) -> bool:
        return not self.is_loop and self.kinds[0] == "l" and self.kinds[-1] == "l"

    @property
    def edges(self):
        return list(zip(self.vertices, self.vertices[1:]))

    @property
    def n_ll(self) -> int:
        k = self.kinds
        n = sum(1 for i in range(1, len(k)) if k[i - 1] == "l" and k[i] == "l")
        if self.is_loop and len(k) > 1 and k[0] == "l" and k[-1] == "l":
            n += 1
        return n

    @property
    def is_canonical(self) -> bool:
        """Every diamond traversal runs counter-clockwise."""
        return all(k != "l" or succ(u) == v for (u, v), k in zip(self.edges, self.kinds))

    @property
    def wedges_right(self) -> bool:
        """Refined canonicity: every two-edge diamond traversal turns right."""
        return all(run[2] != 2 or run[3] for run in self.diamond_runs())

    def diamond_runs(self):
        """Maximal l-edge runs as (start index, end index, length, ccw)."""
        runs = []
        i, k = 0, self.kinds
        while i < len(k):
            if k[i] != "l":
                i += 1
                continue
            j = i
            while j < len(k) and k[j] == "l":
                j += 1
            ccw = all(succ(self.vertices[t]) == self.vertices[t + 1] for t in range(i, j))
            runs.append((i, j, j - i, ccw))
            i = j
        return runs

    def reversed(self) -> "DirectedPath":
        return DirectedPath(self.vertices[::-1], self.kinds[::-1])

    def is_simple(self) -> bool:
        vs = self.vertices[:-1] if self.is_loop else self.vertices
        return len(set(vs)) == len(vs)

    def __add__(self, other: "DirectedPath") -> "DirectedPath":
        if self.vertices[-1] != other.vertices[0]:
            raise InvalidPath("paths do not meet")
        return DirectedPath(self.vertices + other.vertices[1:], self.kinds + other.kinds)

    def names(self, dg: DecoratedGraph) -> list[str]:
        return [dg.corner_name(v) for v in self.vertices]


def canonicalize(dg: DecoratedGraph, vertices) -> DirectedPath:
    """Cancel backtracks and take every diamond visit counter-clockwise."""
    vs = list(vertices)
    changed = True
    while changed:
        changed = False
        # collapse each maximal same-diamond stretch to its ccw run
        out = [vs[0]]
        i = 0
        while i < len(vs) - 1:
            j = i
            while j + 1 < len(vs) and vs[j + 1] >> 2 == vs[i] >> 2:
                j += 1
            if j > i:
                a, b = vs[i], vs[j]
                run = [a]
                while run[-1] != b:
                    run.append(succ(run[-1]))
                if run != vs[i : j + 1]:
                    changed = True
                out.extend(run[1:])
                i = j
            else:
                out.append(vs[i + 1])
                i += 1
        vs = out
        # drop immediate backtracks u -> v -> u
        k = 1
        while k < len(vs) - 1:
            if vs[k - 1] == vs[k + 1]:
                del vs[k : k + 2]
                changed = True
                k = max(1, k - 1)
            else:
                k += 1
    return DirectedPath.on(dg, vs)

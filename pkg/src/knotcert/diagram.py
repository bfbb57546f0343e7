"""Planar diagrams from PD codes.

A crossing is a 4-tuple of edge labels listed counterclockwise starting from
the incoming under-strand.  Positions 0 and 2 are the under-strand (in, out);
positions 1 and 3 are the over-strand, whose direction is recovered from the
rest of the diagram.

Sign table (the single place crossing signs are decided)::

    over-strand enters at position 3  ->  +1  (right-handed)
    over-strand enters at position 1  ->  -1  (left-handed)

Corner ``q`` of a crossing is the quadrant between positions ``q`` and
``q + 1`` (mod 4).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property

UNDER_POSITIONS = (0, 2)
OVER_POSITIONS = (1, 3)


class DiagramError(ValueError):
    """Invalid PD data: malformed text, bad gluing, inconsistent orientation."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Face:
    corners: tuple[tuple[int, int], ...]
    boundary_edges: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Diagram:
    """Oriented link diagram.

    ``over_in[c]`` is the position (1 or 3) where the over-strand of crossing
    ``c`` enters.  ``loops`` counts crossingless components.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    over_in: tuple[int, ...]
    loops: int = 0
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.over_in) != len(self.crossings):
            raise DiagramError("over_in must have one entry per crossing")
        if any(p not in OVER_POSITIONS for p in self.over_in):
            raise DiagramError("over_in entries must be 1 or 3")
        _check_orientation(self.crossings, self.over_in)

    # basic data -------------------------------------------------------

    @classmethod
    def unknot(cls, loops: int = 1) -> Diagram:
        return cls((), (), loops=loops, name="U" if loops == 1 else f"unlink{loops}")

    @classmethod
    def from_pd(cls, crossings, over_in=None, loops: int = 0, name: str = "", check_planar: bool = True,
                require_connected: bool = True) -> Diagram:
        cr = tuple(tuple(int(x) for x in c) for c in crossings)
        for c in cr:
            if len(c) != 4:
                raise DiagramError(f"crossing {c} does not have 4 entries")
        _check_edge_counts(cr)
        if over_in is None:
            over_in = infer_over_directions(cr)
        d = cls(cr, tuple(over_in), loops=loops, name=name)
        if cr and require_connected and not d.is_connected():
            raise DiagramError("diagram is not connected")
        if cr and check_planar and d.is_connected() and len(d.faces) != len(cr) + 2:
            raise DiagramError(
                f"non-planar gluing: {len(d.faces)} faces for {len(cr)} crossings (expected {len(cr) + 2})"
            )
        return d

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @cached_property
    def edges(self) -> tuple[int, ...]:
        return tuple(sorted({e for c in self.crossings for e in c}))

    @cached_property
    def occurrences(self) -> dict[int, tuple[tuple[int, int], tuple[int, int]]]:
        """edge -> ((crossing, position) of its tail, (crossing, position) of its head)."""
        ends: dict[int, list] = {}
        for ci, c in enumerate(self.crossings):
            for p, e in enumerate(c):
                ends.setdefault(e, []).append((ci, p))
        out = {}
        for e, occ in ends.items():
            a, b = occ
            if self.is_incoming(*a):
                a, b = b, a
            out[e] = (a, b)
        return out

    def is_incoming(self, crossing: int, position: int) -> bool:
        return position == 0 or position == self.over_in[crossing]

    def is_over(self, position: int) -> bool:
        return position % 2 == 1

    def sign(self, crossing: int) -> int:
        return 1 if self.over_in[crossing] == 3 else -1

    @cached_property
    def signs(self) -> tuple[int, ...]:
        return tuple(self.sign(i) for i in range(len(self.crossings)))

    def writhe(self) -> int:
        return sum(self.signs)

    def outgoing_of(self, crossing: int, position: int) -> int:
        """Position where the strand entering at ``position`` leaves."""
        return (position + 2) % 4

    # components -------------------------------------------------------

    @cached_property
    def component_cycles(self) -> tuple[tuple[int, ...], ...]:
        """Edge label cycles, one per component with crossings, in traversal order."""
        occ = self.occurrences
        seen: set[int] = set()
        cycles = []
        for start in self.edges:
            if start in seen:
                continue
            cyc = []
            e = start
            while e not in seen:
                seen.add(e)
                cyc.append(e)
                ci, p = occ[e][1]
                e = self.crossings[ci][(p + 2) % 4]
            cycles.append(tuple(cyc))
        return tuple(cycles)

    @property
    def components(self) -> int:
        return len(self.component_cycles) + self.loops

    def is_connected(self) -> bool:
        if not self.crossings:
            return self.loops <= 1
        if self.loops:
            return False
        parent = list(range(len(self.crossings)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (a, _), (b, _) in self.occurrences.values():
            parent[find(a)] = find(b)
        return len({find(i) for i in range(len(self.crossings))}) == 1

    # faces ------------------------------------------------------------

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        if not self.crossings:
            # a round circle has two complementary regions
            return (Face((), ()), Face((), ())) if self.loops == 1 else ()
        other = {}
        for ci, c in enumerate(self.crossings):
            for p, e in enumerate(c):
                other.setdefault(e, []).append((ci, p))
        seen = set()
        found = []
        for ci in range(len(self.crossings)):
            for q in range(4):
                if (ci, q) in seen:
                    continue
                corners, bedges = [], []
                cur = (ci, q)
                while cur not in seen:
                    seen.add(cur)
                    corners.append(cur)
                    c, p = cur
                    exit_pos = (p + 1) % 4
                    e = self.crossings[c][exit_pos]
                    bedges.append(e)
                    a, b = other[e]
                    nxt = b if a == (c, exit_pos) else a
                    cur = nxt
                if cur != (ci, q):
                    raise DiagramError("face traversal did not close")
                found.append(Face(tuple(corners), tuple(bedges)))
        return tuple(found)

    def faces_of_edge(self, edge: int) -> tuple[int, ...]:
        return tuple(i for i, f in enumerate(self.faces) if edge in f.boundary_edges)

    # edge classification ---------------------------------------------

    def classify_edges(self) -> dict[int, str]:
        out = {}
        for e, ((ca, pa), (cb, pb)) in self.occurrences.items():
            out[e] = "good" if self.is_over(pa) != self.is_over(pb) else "bad"
        return out

    def bad_domains(self) -> tuple[int, ...]:
        labels = self.classify_edges()
        return tuple(i for i, f in enumerate(self.faces) if any(labels[e] == "bad" for e in f.boundary_edges))

    def bad_domain_count(self) -> int:
        return len(self.bad_domains())

    # transformations -------------------------------------------------

    def mirror(self) -> Diagram:
        new, over = [], []
        for (i, j, k, l), oin in zip(self.crossings, self.over_in):
            if oin == 3:
                new.append((l, i, j, k))
                over.append(1)
            else:
                new.append((j, k, l, i))
                over.append(3)
        return Diagram(tuple(new), tuple(over), loops=self.loops, name=f"mirror({self.name})" if self.name else "")

    def normal_form(self) -> tuple:
        """Crossing multiset with orientation data; equal for equal diagrams."""
        return (tuple(sorted(zip(self.crossings, self.over_in))), self.loops)

    def pd_string(self) -> str:
        if not self.crossings:
            return "U" if self.loops == 1 else " ".join(["U"] * self.loops)
        return " ".join("X[{},{},{},{}]".format(*c) for c in self.crossings)

    def to_json(self) -> str:
        data = {
            "crossings": [list(c) for c in self.crossings],
            "components": self.components,
            "faces": [
                {"boundary_edges": list(f.boundary_edges), "corners": [list(x) for x in f.corners]}
                for f in self.faces
            ],
            "signs": list(self.signs),
            "writhe": self.writhe(),
        }
        return json.dumps(data, sort_keys=True)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<Diagram{label}: {self.n_crossings} crossings, {self.components} components>"

    def __eq__(self, other) -> bool:
        return isinstance(other, Diagram) and self.normal_form() == other.normal_form()

    def __hash__(self) -> int:
        return hash(self.normal_form())


@dataclass(frozen=True)
class MarkedDiagram:
    diagram: Diagram
    marked_edge: int | None = None

    def __post_init__(self):
        d = self.diagram
        if d.crossings:
            if self.marked_edge is None:
                object.__setattr__(self, "marked_edge", d.edges[0])
            if self.marked_edge not in d.edges:
                raise DiagramError(f"marked edge {self.marked_edge} not in diagram")
            if len(set(d.faces_of_edge(self.marked_edge))) != 2:
                raise DiagramError("marked edge must border exactly two faces")
            if d.components != 1:
                raise DiagramError("Kauffman states are defined for knot diagrams only")

    @cached_property
    def marked_faces(self) -> tuple[int, ...]:
        if not self.diagram.crossings:
            return (0, 1)
        return tuple(sorted(set(self.diagram.faces_of_edge(self.marked_edge))))

    @cached_property
    def unmarked_faces(self) -> tuple[int, ...]:
        marked = set(self.marked_faces)
        return tuple(i for i in range(len(self.diagram.faces)) if i not in marked)


# parsing ----------------------------------------------------------------

_TOKEN_RE = re.compile(r"X?\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")
_FILLER_RE = re.compile(r"[\s,\[\]]|PD")


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def parse_pd(text: str, name: str = "") -> Diagram:
    """Parse ``X[1,4,2,5] X[3,6,4,1] ...`` (``U`` for the crossingless unknot).

    ``PD[...]`` wrappers and nested-list forms like ``[[1,4,2,5], ...]`` are
    accepted as well.
    """
    if text.strip().upper() == "U":
        return Diagram.unknot()
    crossings = []
    pos = 0
    for m in _TOKEN_RE.finditer(text):
        _check_filler(text, pos, m.start())
        crossings.append(tuple(int(g) for g in m.groups()))
        pos = m.end()
    _check_filler(text, pos, len(text))
    if not crossings:
        raise DiagramError("no crossings found", 1, 1)
    return Diagram.from_pd(crossings, name=name)


def _check_filler(text: str, start: int, stop: int) -> None:
    pos = start
    while pos < stop:
        m = _FILLER_RE.match(text, pos)
        if m is None or m.end() > stop:
            line, col = _line_col(text, pos)
            raise DiagramError(f"malformed token {text[pos:pos + 12]!r}", line, col)
        pos = m.end()


# orientation ------------------------------------------------------------


def _check_edge_counts(crossings) -> None:
    counts: dict[int, int] = {}
    for c in crossings:
        for e in c:
            counts[e] = counts.get(e, 0) + 1
    bad = sorted(e for e, k in counts.items() if k != 2)
    if bad:
        raise DiagramError(f"edge labels {bad} do not appear exactly twice")


def infer_over_directions(crossings) -> tuple[int, ...]:
    """Recover which over-position is incoming at every crossing.

    Under-strands fix most edges.  Components that only pass over use the
    usual labelling heuristic (``l -> j`` when ``j = l + 1``).
    """
    n = len(crossings)
    where: dict[int, list[tuple[int, int]]] = {}
    for ci, c in enumerate(crossings):
        for p, e in enumerate(c):
            where.setdefault(e, []).append((ci, p))
    # direction[(c, p)] = True if incoming
    direction: dict[tuple[int, int], bool] = {}
    over_in: list[int | None] = [None] * n
    stack = []

    def assign(occ, incoming):
        if occ in direction:
            if direction[occ] != incoming:
                raise DiagramError(f"orientation inconsistency at crossing {occ[0]}, position {occ[1]}")
            return
        direction[occ] = incoming
        stack.append(occ)

    for ci in range(n):
        assign((ci, 0), True)
        assign((ci, 2), False)

    def propagate():
        while stack:
            ci, p = stack.pop()
            inc = direction[(ci, p)]
            e = crossings[ci][p]
            a, b = where[e]
            other = b if a == (ci, p) else a
            assign(other, not inc)
            if p % 2 == 1:
                assign((ci, (p + 2) % 4), not inc)
                over_in[ci] = p if inc else (p + 2) % 4

    propagate()
    for ci in range(n):
        if over_in[ci] is None:
            _, j, _, l = crossings[ci]
            assign((ci, 3), (j - l == 1) or (l - j > 1))
            propagate()
    return tuple(over_in)  # type: ignore[arg-type]


def _check_orientation(crossings, over_in) -> None:
    heads: dict[int, int] = {}
    tails: dict[int, int] = {}
    for ci, (c, oin) in enumerate(zip(crossings, over_in)):
        for p, e in enumerate(c):
            if p == 0 or p == oin:
                heads[e] = heads.get(e, 0) + 1
            else:
                tails[e] = tails.get(e, 0) + 1
    for e in set(heads) | set(tails):
        if heads.get(e, 0) != 1 or tails.get(e, 0) != 1:
            raise DiagramError(f"edge {e} does not have exactly one head and one tail")


# module-level operation names ------------------------------------------


def faces(d: Diagram) -> tuple[Face, ...]:
    return d.faces


def writhe(d: Diagram) -> int:
    return d.writhe()


def mirror(d: Diagram) -> Diagram:
    return d.mirror()


def classify_edges(d: Diagram) -> dict[int, str]:
    return d.classify_edges()


def bad_domain_count(d: Diagram) -> int:
    return d.bad_domain_count()

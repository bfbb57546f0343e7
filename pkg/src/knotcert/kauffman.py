"""Kauffman states of marked knot diagrams and the Alexander polynomial.

A state assigns every crossing one of its four corners so that each unmarked
face receives exactly one corner.  Local gradings follow the usual Kauffman
state conventions for knot Floer homology; by where a corner sits relative
to the oriented strands::

                    positive crossing      negative crossing
    corner          M       A              M       A
    ahead          -1     -1/2            +1     +1/2
    behind          0     +1/2             0     -1/2
    left, right     0       0              0       0

"ahead" lies between the two outgoing strands, "behind" between the two
incoming ones.  The table is pinned by tests against the known bigradings of
both trefoils, the figure-eight knot and the (2,5) torus knots, for every
choice of marked edge (see ``scripts/calibrate_gradings.py``).
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .diagram import Diagram, MarkedDiagram
from .laurent import LaurentPoly
from .skein import alexander_skein  # noqa: F401  (the independent oracle lives next to the state sum)

# (sign, corner) -> (M, doubled A); corners indexed as in diagram.py
_LOCAL = {}


def _build_table():
    # corner roles for a positive crossing (over-strand enters at position 3):
    # q0 between in-under and out-over, q1 between the outgoing strands,
    # q2 between out-under and in-over, q3 between the incoming strands.
    pos = {0: "right", 1: "ahead", 2: "left", 3: "behind"}
    # negative crossing (over enters at 1): q0 behind, q1 left, q2 ahead, q3 right
    neg = {0: "behind", 1: "left", 2: "ahead", 3: "right"}
    plus = {"ahead": (-1, -1), "behind": (0, 1), "left": (0, 0), "right": (0, 0)}
    minus = {"ahead": (1, 1), "behind": (0, -1), "left": (0, 0), "right": (0, 0)}
    for q, role in pos.items():
        _LOCAL[(1, q)] = plus[role]
    for q, role in neg.items():
        _LOCAL[(-1, q)] = minus[role]


_build_table()


def local_grading(sign: int, corner: int) -> tuple[int, Fraction]:
    m, a2 = _LOCAL[(sign, corner)]
    return m, Fraction(a2, 2)


@dataclass(frozen=True)
class KauffmanState:
    """``assignment[c] = (face, corner)`` for crossing ``c``."""

    assignment: tuple[tuple[int, int], ...]
    maslov: int
    alexander: Fraction

    @property
    def delta(self) -> Fraction:
        return self.maslov - self.alexander

    def to_dict(self) -> dict:
        return {
            "assignment": {str(c): {"face": f, "quadrant": q} for c, (f, q) in enumerate(self.assignment)},
            "M": self.maslov,
            "A": str(self.alexander),
            "delta": str(self.delta),
        }


@dataclass(frozen=True)
class BigradedTable:
    """Counts of Kauffman states by bigrading ``(M, A)``; the graded dimension G(s, t)."""

    dims: dict

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def evaluate_s(self, s: int) -> LaurentPoly:
        """``G(s, t)`` in ``t`` at ``s = 1`` or ``s = -1`` (the latter is the state sum)."""
        if s not in (1, -1):
            raise ValueError("G(s, t) is only specialised at s = 1 or s = -1")
        out: dict[int, int] = {}
        for (m, a), k in self.dims.items():
            key = int(a * 2)
            out[key] = out.get(key, 0) + k * (s if m % 2 else 1)
        return LaurentPoly(out)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["M", "A", "count"])
        for (m, a), k in sorted(self.dims.items()):
            w.writerow([m, str(a), k])
        return buf.getvalue()


# enumeration ------------------------------------------------------------


class _Incidence:
    def __init__(self, md: MarkedDiagram):
        d = md.diagram
        self.unmarked = md.unmarked_faces
        index = {f: i for i, f in enumerate(self.unmarked)}
        # candidates[i] = list of (crossing, corner) of unmarked face i
        self.candidates: list[list[tuple[int, int]]] = [[] for _ in self.unmarked]
        for fi, face in enumerate(d.faces):
            if fi in index:
                self.candidates[index[fi]] = list(face.corners)
        self.n = d.n_crossings

    def matrix(self) -> list[list[int]]:
        """Crossing-by-unmarked-face corner multiplicities."""
        m = [[0] * len(self.unmarked) for _ in range(self.n)]
        for fi, cands in enumerate(self.candidates):
            for c, _ in cands:
                m[c][fi] += 1
        return m


def _search(inc: _Incidence):
    """Yield assignments ``crossing -> (unmarked face index, corner)``.

    Fail-first backtracking: the open face with the fewest live corners is
    filled next, so forced faces are handled before any branching.
    """
    n = inc.n
    used = [False] * n
    assignment: list[tuple[int, int] | None] = [None] * n
    open_faces = set(range(len(inc.unmarked)))

    def live(fi):
        return [(c, q) for c, q in inc.candidates[fi] if not used[c]]

    def rec():
        if not open_faces:
            yield tuple(assignment)  # type: ignore[arg-type]
            return
        best, best_live = None, None
        for fi in open_faces:
            lv = live(fi)
            if best_live is None or len(lv) < len(best_live):
                best, best_live = fi, lv
                if not lv:
                    return
        open_faces.remove(best)
        for c, q in best_live:
            used[c] = True
            assignment[c] = (best, q)
            yield from rec()
            used[c] = False
            assignment[c] = None
        open_faces.add(best)

    yield from rec()


def grade_state(md: MarkedDiagram, assignment) -> tuple[int, Fraction]:
    d = md.diagram
    m, a = 0, Fraction(0)
    for c, (_, q) in enumerate(assignment):
        dm, da = local_grading(d.sign(c), q)
        m += dm
        a += da
    return m, a


def enumerate_states(md: MarkedDiagram) -> list[KauffmanState]:
    if not md.diagram.crossings:
        return [KauffmanState((), 0, Fraction(0))]
    inc = _Incidence(md)
    out = []
    for assignment in _search(inc):
        faces = tuple((inc.unmarked[fi], q) for fi, q in assignment)
        m, a = grade_state(md, faces)
        out.append(KauffmanState(faces, m, a))
    return out


def incidence_matrix(md: MarkedDiagram) -> list[list[int]]:
    return _Incidence(md).matrix()


def bigraded_table(md: MarkedDiagram, states=None) -> BigradedTable:
    states = enumerate_states(md) if states is None else states
    return BigradedTable(dict(Counter((s.maslov, s.alexander) for s in states)))


def raw_state_sum(md: MarkedDiagram, states=None) -> LaurentPoly:
    """``sum (-1)^M t^A`` before any normalisation."""
    states = enumerate_states(md) if states is None else states
    acc: dict[int, int] = {}
    for s in states:
        key = int(s.alexander * 2)
        acc[key] = acc.get(key, 0) + (-1 if s.maslov % 2 else 1)
    return LaurentPoly(acc)


def normalize_alexander(p: LaurentPoly) -> tuple[LaurentPoly, int, Fraction]:
    """Multiply by the unit ``sign * t^shift`` making ``p`` symmetric with ``p(1) > 0``.

    Returns ``(normalised, sign, shift)``.  The zero polynomial is returned as is.
    """
    if p.is_zero():
        return p, 1, Fraction(0)
    shift = -(p.min_exponent() + p.max_exponent()) / 2
    q = p.shift(shift)
    sign = -1 if q.eval_at_one() < 0 else 1
    return (q if sign == 1 else -q), sign, shift


@dataclass(frozen=True)
class AlexanderResult:
    polynomial: LaurentPoly
    raw: LaurentPoly
    unit_sign: int
    unit_shift: Fraction
    n_states: int


def alexander_state_sum_detailed(md: MarkedDiagram, states=None) -> AlexanderResult:
    states = enumerate_states(md) if states is None else states
    raw = raw_state_sum(md, states)
    poly, sign, shift = normalize_alexander(raw)
    return AlexanderResult(poly, raw, sign, shift, len(states))


def alexander_state_sum(md: MarkedDiagram) -> LaurentPoly:
    return alexander_state_sum_detailed(md).polynomial


def delta_spread(md: MarkedDiagram, states=None) -> int:
    """Spread of ``M - A`` over all generators, i.e. the complex thickness."""
    states = enumerate_states(md) if states is None else states
    if not states:
        raise ValueError("diagram has no Kauffman states")
    deltas = [s.delta for s in states]
    spread = max(deltas) - min(deltas)
    assert spread.denominator == 1
    return int(spread)


def states_to_json(states) -> str:
    return json.dumps([s.to_dict() for s in states], sort_keys=True)


def marked(d: Diagram, edge: int | None = None) -> MarkedDiagram:
    return MarkedDiagram(d, edge)


class StateCache:
    """Enumerate once, reuse for every derived quantity of one marked diagram."""

    def __init__(self, md: MarkedDiagram):
        self.md = md

    @cached_property
    def states(self) -> list[KauffmanState]:
        return enumerate_states(self.md)

    @cached_property
    def table(self) -> BigradedTable:
        return bigraded_table(self.md, self.states)

    @cached_property
    def alexander(self) -> AlexanderResult:
        return alexander_state_sum_detailed(self.md, self.states)

    @cached_property
    def delta_spread(self) -> int:
        return delta_spread(self.md, self.states)

"""Diagram generators for the Kinoshita-Terasaka, Conway and pretzel families.

Diagrams are assembled from vertical twist boxes.  A box of ``m`` half-twists
has four ends named by compass points (NW, NE at the top, SW, SE at the
bottom); inside the box, consecutive crossings are joined SW-to-NW and
SE-to-NE.  Every crossing is either ``/`` (the SW-NE strand is on top) or
``\\``.

Two presentations are provided for each family.

``"clasp"``
    The four-box pretzel diagram ``P(r+1, -r, r, -r-1)`` for KT (and
    ``P(r+1, -r, -r-1, r)`` for its Conway mutant, obtained by rotating the
    last two boxes) with a clasp of ``2|n|`` half-twists letting the arc
    between the middle boxes hook the outer arc.  Smoothing a clasp crossing
    gives the pretzel link and switching one gives the ``n - 1`` member, which
    is the skein triple used for ``KT(2, n)``.

``"reduced"``
    An isotopic diagram with only four bad domains for every nontrivial
    member with ``r > 0, n > 0`` (one crossing fewer than the clasp diagram
    for KT, the same number for Conway).  Other parameters are
    reduced to that range with ``K(r, n) = K(-r-1, n)`` and
    ``K(r, -n) = mirror K(r, n)``.  The templates were found by randomised
    Reidemeister search on the clasp presentation at ``r = 4, n = 1``; the
    twist-box lengths were then made symbolic and the result checked against
    the clasp presentation (Jones polynomial, Alexander polynomial and
    complement isometry) across a parameter grid.  See
    ``scripts/search_templates.py``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .diagram import Diagram
from .laurent import LaurentPoly
from .skein import smooth_crossing, switch_crossing

KT = "KT"
CONWAY = "Conway"
PRETZEL = "Pretzel"
FAMILIES = (KT, CONWAY, PRETZEL)
PRESENTATIONS = ("reduced", "clasp")

TRIVIAL_R = frozenset({0, 1, -1, -2})

# ports in counterclockwise order around a crossing
_CCW = ("SW", "SE", "NE", "NW")
_THROUGH = {"SW": "NE", "NE": "SW", "SE": "NW", "NW": "SE"}
SLASH = "/"
BACKSLASH = "\\"
_FLIP = {SLASH: BACKSLASH, BACKSLASH: SLASH}

# Jones polynomial of the pretzel link P(3,-2,2,-3), in q
PRETZEL_3_M2_2_M3_JONES = LaurentPoly.parse(
    "-q^9 + q^7 - q^5 + q^3 + q + q^-1 + q^-3 - q^-5 + q^-7 - q^-9"
)


# identifiers and parameter bookkeeping -----------------------------------


@dataclass(frozen=True)
class FamilyId:
    family: str
    params: tuple[int, ...]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family in (KT, CONWAY) and len(self.params) != 2:
            raise ValueError(f"{self.family} takes exactly two parameters (r, n)")
        if self.family == PRETZEL and not self.params:
            raise ValueError("a pretzel needs at least one coefficient")

    @property
    def r(self) -> int:
        return self.params[0]

    @property
    def n(self) -> int:
        return self.params[1]

    def __str__(self) -> str:
        name = {KT: "kt", CONWAY: "conway", PRETZEL: "pretzel"}[self.family]
        return f"{name}:{','.join(map(str, self.params))}"

    def to_dict(self) -> dict:
        return {"family": self.family, "params": list(self.params)}


def parse_family(text: str) -> FamilyId:
    """Parse ``kt:r,n``, ``conway:r,n`` or ``pretzel:a,b,...``."""
    name, sep, rest = text.partition(":")
    families = {"kt": KT, "conway": CONWAY, "c": CONWAY, "pretzel": PRETZEL}
    key = name.strip().lower()
    if not sep or key not in families:
        raise ValueError(f"bad family spec {text!r}; expected e.g. 'kt:2,1'")
    try:
        params = tuple(int(x) for x in rest.split(","))
    except ValueError:
        raise ValueError(f"bad family parameters in {text!r}") from None
    return FamilyId(families[key], params)


def normalize_params(family: str, r: int, n: int, mirror: bool = False) -> tuple[int, int, bool]:
    """Canonical representative ``(r', n', mirrored)`` of a KT or Conway member.

    ``r <= -2`` is sent to ``-r - 1 >= 1``.  With ``mirror=True`` a negative
    ``n`` is also flipped, and ``mirrored`` reports that the representative is
    the reflection of the requested knot.
    """
    if family not in (KT, CONWAY):
        raise ValueError(f"{family!r} has no (r, n) normalisation")
    rr = -r - 1 if r <= -2 else r
    if mirror and n < 0:
        return rr, -n, True
    return rr, n, False


def is_trivial(family: str, r: int, n: int) -> bool:
    """KT and Conway members are unknots exactly for these parameters."""
    if family not in (KT, CONWAY):
        raise ValueError(f"{family!r} has no triviality rule")
    return r in TRIVIAL_R or n == 0


def genus(family: str, r: int, n: int) -> int:
    """Seifert genus of a nontrivial member: ``r`` for KT, ``2r - 1`` for Conway, after normalisation."""
    if is_trivial(family, r, n):
        raise ValueError(f"{family}({r},{n}) is an unknot; the genus formulas need a nontrivial member")
    rr, _, _ = normalize_params(family, r, n)
    return rr if family == KT else 2 * rr - 1


# planar builder ----------------------------------------------------------


class _Builder:
    """Crossings with compass ports joined by wires.

    Wires may pass through named string nodes of degree two, which is how a
    box with no crossings is represented; closed chains of such nodes become
    free unknotted components.
    """

    def __init__(self):
        self.over: list[str] = []
        self.wires: list[tuple] = []
        self._names = itertools.count()

    def crossing(self, over: str) -> int:
        self.over.append(over)
        return len(self.over) - 1

    def connect(self, a, b) -> None:
        self.wires.append((a, b))

    def box(self, m: int, style: str = SLASH):
        """Twist box of ``|m|`` crossings, flipped style if ``m < 0``; returns (NW, NE, SW, SE)."""
        if m == 0:
            nw, ne, sw, se = (f"v{next(self._names)}" for _ in range(4))
            self.connect(nw, sw)
            self.connect(ne, se)
            return nw, ne, sw, se
        if m < 0:
            style = _FLIP[style]
        cs = [self.crossing(style) for _ in range(abs(m))]
        for a, b in zip(cs, cs[1:]):
            self.connect((a, "SW"), (b, "NW"))
            self.connect((a, "SE"), (b, "NE"))
        return (cs[0], "NW"), (cs[0], "NE"), (cs[-1], "SW"), (cs[-1], "SE")

    def _pairs(self):
        adj: dict = {}
        for a, b in self.wires:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        pairs = {}
        seen = set()
        for term, nbrs in adj.items():
            if isinstance(term, str):
                continue
            if len(nbrs) != 1:
                raise ValueError(f"port {term} is wired {len(nbrs)} times")
            prev, cur = term, nbrs[0]
            while isinstance(cur, str):
                seen.add(cur)
                a, b = adj[cur]
                prev, cur = cur, (b if a == prev else a)
            pairs[term] = cur
        loops = 0
        for v in adj:
            if isinstance(v, str) and v not in seen:
                loops += 1
                stack = [v]
                while stack:
                    x = stack.pop()
                    if x not in seen:
                        seen.add(x)
                        stack.extend(adj[x])
        missing = [(c, p) for c in range(len(self.over)) for p in _CCW if (c, p) not in pairs]
        if missing:
            raise ValueError(f"unwired ports: {missing[:4]}")
        return pairs, loops

    def _components(self):
        pairs, loops = self._pairs()
        done = set()
        comps = []
        for c in range(len(self.over)):
            for p in _CCW:
                if (c, p) in done:
                    continue
                cyc = []
                out = (c, p)
                while out not in done:
                    inn = pairs[out]
                    done.update((out, inn))
                    cyc.append((out, inn))
                    out = (inn[0], _THROUGH[inn[1]])
                comps.append(cyc)
        return comps, loops

    def build(self, reverse: Sequence[int] = (), name: str = "") -> Diagram:
        """Orient, label edges consecutively along each component, emit PD."""
        comps, loops = self._components()
        entry: dict[tuple, bool] = {}
        label: dict[tuple, int] = {}
        counter = itertools.count(1)
        for idx, cyc in enumerate(comps):
            if idx in reverse:
                cyc = [(inn, out) for out, inn in reversed(cyc)]
            for out, inn in cyc:
                e = next(counter)
                entry[out], entry[inn] = False, True
                label[out] = label[inn] = e
        crossings, over_in = [], []
        for c, style in enumerate(self.over):
            under = ("SE", "NW") if style == SLASH else ("SW", "NE")
            start = under[0] if entry[(c, under[0])] else under[1]
            k = _CCW.index(start)
            ports = [_CCW[(k + t) % 4] for t in range(4)]
            crossings.append(tuple(label[(c, p)] for p in ports))
            over_in.append(1 if entry[(c, ports[1])] else 3)
        return Diagram.from_pd(crossings, over_in=over_in, loops=loops, name=name)


# pretzel and clasp presentations -----------------------------------------


def _pretzel_frame(b: _Builder, coeffs: Sequence[int], clasp: int | None = None, clasp_style: str = SLASH):
    """Boxes side by side, closed by top, bottom and outer arcs.

    With ``clasp`` set, a vertical box of that many crossings sits above the
    boxes: its bottom ends cut the arc between boxes 2 and 3 and its top ends
    cut the outer top arc.
    """
    boxes = [b.box(a) for a in coeffs]
    if clasp is not None:
        c_nw, c_ne, c_sw, c_se = b.box(clasp, clasp_style)
    for t in range(len(boxes) - 1):
        ne, nw_next = boxes[t][1], boxes[t + 1][0]
        if clasp is not None and t == 1:
            b.connect(ne, c_sw)
            b.connect(c_se, nw_next)
        else:
            b.connect(ne, nw_next)
        b.connect(boxes[t][3], boxes[t + 1][2])
    if clasp is not None:
        b.connect(boxes[-1][1], c_ne)
        b.connect(c_nw, boxes[0][0])
    else:
        b.connect(boxes[-1][1], boxes[0][0])
    b.connect(boxes[-1][3], boxes[0][2])


def pretzel_diagram(*coeffs: int, reverse: Sequence[int] = ()) -> Diagram:
    """Standard pretzel diagram; ``reverse`` flips the listed components."""
    if len(coeffs) == 1 and not isinstance(coeffs[0], int):
        coeffs = tuple(coeffs[0])
    if not coeffs:
        raise ValueError("a pretzel needs at least one coefficient")
    b = _Builder()
    _pretzel_frame(b, coeffs)
    return b.build(reverse=reverse, name=f"P({','.join(map(str, coeffs))})")


def kt_coefficients(r: int) -> tuple[int, int, int, int]:
    return (r + 1, -r, r, -r - 1)


def conway_coefficients(r: int) -> tuple[int, int, int, int]:
    return (r + 1, -r, -r - 1, r)


def clasped_pretzel(coeffs: Sequence[int], n: int, name: str = "") -> Diagram:
    """Pretzel boxes plus a clasp of ``2|n|`` crossings, all of sign ``sign(n)``."""
    def make(style):
        b = _Builder()
        _pretzel_frame(b, coeffs, clasp=2 * n, clasp_style=style)
        return b.build(name=name)

    d = make(SLASH)
    if n:
        signs = {d.sign(c) for c in clasp_crossings(d, coeffs)}
        if len(signs) != 1:
            raise ValueError("clasp strands are not antiparallel")
        if signs != {1 if n > 0 else -1}:
            d = make(BACKSLASH)
    return d


def clasp_crossings(d: Diagram, coeffs: Sequence[int]) -> list[int]:
    """Indices of the clasp crossings of a clasp presentation (created last)."""
    return list(range(sum(abs(a) for a in coeffs), d.n_crossings))


@dataclass(frozen=True)
class SkeinTriple:
    """``(L+, L-, L0)`` at one clasp crossing, with the ``n`` of the two knots."""

    plus: Diagram
    minus: Diagram
    zero: Diagram
    plus_n: int
    minus_n: int


def clasp_skein_triple(family: str, r: int, n: int) -> SkeinTriple:
    """Skein triple at the first clasp crossing of the clasp presentation of ``K(r, n)``.

    For ``n > 0`` the crossing is positive and ``L- = K(r, n - 1)``; for
    ``n < 0`` it is negative and switching gives ``L+ = K(r, n + 1)``.  The
    smoothing is the pretzel link in both cases.
    """
    if n == 0:
        raise ValueError("K(r, 0) has no clasp crossings")
    coeffs = kt_coefficients(r) if family == KT else conway_coefficients(r)
    d = _family_diagram(family, r, n, "clasp")
    c = clasp_crossings(d, coeffs)[0]
    other = switch_crossing(d, c)
    zero = smooth_crossing(d, c)
    if d.sign(c) > 0:
        return SkeinTriple(d, other, zero, n, n - 1)
    return SkeinTriple(other, d, zero, n + 1, n)


# reduced templates -------------------------------------------------------


@dataclass(frozen=True)
class _Template:
    lengths: Callable[[int, int], tuple[int, ...]]
    styles: str
    wires: tuple[tuple[tuple[int, str], tuple[int, str]], ...]

    def build(self, r: int, n: int, name: str) -> Diagram:
        b = _Builder()
        ends = []
        for m, style in zip(self.lengths(r, n), self.styles):
            nw, ne, sw, se = b.box(m, style)
            ends.append({"NW": nw, "NE": ne, "SW": sw, "SE": se})
        for (ba, pa), (bb, pb) in self.wires:
            b.connect(ends[ba][pa], ends[bb][pb])
        return b.build(name=name)


_KT_REDUCED = _Template(
    lengths=lambda r, n: (r + 1, r, r - 1, r - 1, 2 * n - 1, 1, 1, 1),
    styles="/\\\\/\\\\\\\\",
    wires=(
        ((0, "NE"), (7, "SW")), ((0, "NW"), (6, "SW")), ((0, "SE"), (2, "SE")), ((0, "SW"), (1, "SE")),
        ((1, "NE"), (6, "NW")), ((1, "NW"), (4, "NE")), ((1, "SW"), (5, "NW")), ((2, "NE"), (5, "NE")),
        ((2, "NW"), (7, "NE")), ((2, "SW"), (7, "SE")), ((3, "NE"), (4, "SW")), ((3, "NW"), (6, "SE")),
        ((3, "SE"), (5, "SE")), ((3, "SW"), (7, "NW")), ((4, "NW"), (6, "NE")), ((4, "SE"), (5, "SW")),
    ),
)

_CONWAY_REDUCED = _Template(
    lengths=lambda r, n: (r + 1, r, r, r - 1, 1, 2 * n - 1, 1, 1),
    styles="\\//\\\\\\\\\\",
    wires=(
        ((0, "NE"), (2, "NW")), ((0, "NW"), (7, "NE")), ((0, "SE"), (2, "SW")), ((0, "SW"), (3, "SE")),
        ((1, "NE"), (5, "NE")), ((1, "NW"), (7, "NW")), ((1, "SE"), (4, "NW")), ((1, "SW"), (6, "NW")),
        ((2, "NE"), (6, "SW")), ((2, "SE"), (6, "SE")), ((3, "NE"), (7, "SE")), ((3, "NW"), (5, "SW")),
        ((3, "SW"), (4, "SE")), ((4, "NE"), (5, "NW")), ((4, "SW"), (6, "NE")), ((5, "SE"), (7, "SW")),
    ),
)


def _family_diagram(family: str, r: int, n: int, presentation: str) -> Diagram:
    label = "KT" if family == KT else "C"
    name = f"{label}({r},{n})"
    if presentation == "clasp":
        coeffs = kt_coefficients(r) if family == KT else conway_coefficients(r)
        return clasped_pretzel(coeffs, n, name=name)
    if presentation != "reduced":
        raise ValueError(f"unknown presentation {presentation!r}; use one of {PRESENTATIONS}")
    template = _KT_REDUCED if family == KT else _CONWAY_REDUCED
    rr = r if r >= 0 else -r - 1
    if n >= 0:
        return template.build(rr, n, name)
    d = template.build(rr, -n, name).mirror()
    return Diagram(d.crossings, d.over_in, d.loops, name=name)


def kt_diagram(r: int, n: int, presentation: str = "reduced") -> Diagram:
    """Diagram of the Kinoshita-Terasaka knot ``KT(r, n)``."""
    return _family_diagram(KT, r, n, presentation)


def conway_diagram(r: int, n: int, presentation: str = "reduced") -> Diagram:
    """Diagram of the Conway knot ``C(r, n)``, the mutant of ``KT(r, n)``."""
    return _family_diagram(CONWAY, r, n, presentation)


def family_diagram(fid: FamilyId, presentation: str = "reduced") -> Diagram:
    if fid.family == PRETZEL:
        return pretzel_diagram(*fid.params)
    return _family_diagram(fid.family, fid.r, fid.n, presentation)


# closed form for KT(2, n) ------------------------------------------------

_Q = LaurentPoly.monomial(1)


def kt2n_p(n: int) -> LaurentPoly:
    """``sum_{k=1..n} (q^(4k-3) - q^(4k-1))``, which equals ``(1 - q^(4n)) / (q + q^-1)``."""
    if n < 0:
        raise ValueError("the sum is defined for n >= 0")
    return sum((_Q ** (4 * k - 3) - _Q ** (4 * k - 1) for k in range(1, n + 1)), LaurentPoly())


def kt2n_closed_form(n: int, pretzel_jones: LaurentPoly = PRETZEL_3_M2_2_M3_JONES) -> LaurentPoly:
    """Jones polynomial of ``KT(2, n)``.

    For ``n >= 0`` this solves ``V_n - q^4 V_(n-1) = (q - q^3) V`` with
    ``V_0 = 1``, giving ``q^(4n) + V * P_n``.  Negative ``n`` goes through the
    mirror: ``V_(-n)(q) = V_n(q^-1)``.
    """
    if n < 0:
        return kt2n_closed_form(-n, pretzel_jones).substitute_inverse()
    return _Q ** (4 * n) + pretzel_jones * kt2n_p(n)

"""Upper bounds on knot Floer thickness from a single diagram.

Two bounds are combined.  The spread of ``delta = M - A`` over all Kauffman
states bounds the thickness of the knot from above, and so does half the
number of bad domains (a domain is bad when one of its boundary edges runs
over-over or under-under).  Thickness is an integer, so the second bound is
rounded down.  The bad-domain bound is credited to Stipsicz and Szabó and, at
the time of writing, unpublished; certificates that use it say so.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable

from .diagram import Diagram, MarkedDiagram
from .kauffman import StateCache


@dataclass(frozen=True)
class ThicknessBound:
    complex_thickness: int
    bad_domains: int
    bound: int
    diagram_id: str

    def __post_init__(self):
        if min(self.complex_thickness, self.bad_domains, self.bound) < 0:
            raise ValueError("thickness data must be nonnegative")
        if self.bound > self.complex_thickness or 2 * self.bound > self.bad_domains:
            raise ValueError("bound exceeds one of its ingredients")

    @property
    def uses_bad_domain_theorem(self) -> bool:
        """True when the half-bad-domain count is what makes the bound this small."""
        return self.bad_domains // 2 < self.complex_thickness

    def to_dict(self) -> dict:
        return asdict(self)


def _diagram_id(d: Diagram) -> str:
    return d.name or d.pd_string()


def thickness_bound(md: MarkedDiagram | Diagram, extra_markings: Iterable[int] = ()) -> ThicknessBound:
    """Certified upper bound on ``th(K)`` from ``md`` and any additional marked edges.

    The state spread is taken as the minimum over the default marking and
    ``extra_markings``, so supplying more markings can only lower it.
    """
    if isinstance(md, Diagram):
        md = MarkedDiagram(md)
    d = md.diagram
    if not d.crossings:
        return ThicknessBound(0, 0, 0, _diagram_id(d))
    spread = StateCache(md).delta_spread
    for edge in extra_markings:
        spread = min(spread, StateCache(MarkedDiagram(d, edge)).delta_spread)
    bad = d.bad_domain_count()
    return ThicknessBound(spread, bad, min(spread, bad // 2), _diagram_id(d))

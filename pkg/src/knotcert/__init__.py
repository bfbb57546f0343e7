"""Exact knot invariants and purely-cosmetic-surgery certificates for the
Kinoshita-Terasaka and Conway knot families."""

from .diagram import Diagram, DiagramError, MarkedDiagram, parse_pd
from .laurent import LaurentPoly

__all__ = ["Diagram", "DiagramError", "LaurentPoly", "MarkedDiagram", "parse_pd"]

import pytest

from corpus import knot
from knotcert.diagram import MarkedDiagram, parse_pd
from knotcert.families import conway_diagram, kt_diagram
from knotcert.kauffman import delta_spread
from knotcert.thickness import ThicknessBound, thickness_bound


def test_alternating_knots_get_bound_zero():
    for name in ("3_1", "4_1", "6_3"):
        tb = thickness_bound(knot(name))
        assert tb == ThicknessBound(0, 0, 0, name)
        assert not tb.uses_bad_domain_theorem


def test_unknot():
    assert thickness_bound(parse_pd("U")).bound == 0


def test_bound_is_min_of_both_ingredients():
    d = knot("8_19")
    tb = thickness_bound(d)
    assert tb.bound == min(tb.complex_thickness, tb.bad_domains // 2)
    assert tb.complex_thickness == delta_spread(MarkedDiagram(d))
    assert tb.bad_domains == d.bad_domain_count()


def test_extra_markings_never_raise_the_spread():
    d = knot("9_42")
    base = thickness_bound(d)
    more = thickness_bound(MarkedDiagram(d), extra_markings=d.edges)
    spreads = {delta_spread(MarkedDiagram(d, e)) for e in d.edges}
    assert more.complex_thickness == min(spreads) <= base.complex_thickness


@pytest.mark.parametrize("r, n", [(2, 1), (3, -2), (-4, 1), (5, 3)])
def test_family_diagrams_are_thin(r, n):
    for d in (kt_diagram(r, n), conway_diagram(r, n)):
        tb = thickness_bound(d)
        assert tb.bad_domains == 4
        assert tb.complex_thickness == 1
        assert tb.bound == 1
        assert not tb.uses_bad_domain_theorem


def test_bad_domain_theorem_flag():
    # clasp diagrams have B(D) = 7 / 6; the bound then still comes from the state spread
    tb = thickness_bound(kt_diagram(2, 1, presentation="clasp"))
    assert tb.bad_domains == 7 and tb.bound == min(tb.complex_thickness, 3)
    synthetic = ThicknessBound(complex_thickness=4, bad_domains=6, bound=3, diagram_id="x")
    assert synthetic.uses_bad_domain_theorem


@pytest.mark.parametrize("args", [(-1, 0, 0, "x"), (1, 2, 2, "x"), (3, 2, 2, "x")])
def test_thickness_bound_validation(args):
    with pytest.raises(ValueError):
        ThicknessBound(*args)


def test_to_dict():
    assert ThicknessBound(1, 4, 1, "KT(2,1)").to_dict() == {
        "complex_thickness": 1, "bad_domains": 4, "bound": 1, "diagram_id": "KT(2,1)"}

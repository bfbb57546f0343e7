import pytest

from knotcert.diagram import MarkedDiagram
from knotcert.families import (
    CONWAY,
    KT,
    PRETZEL,
    PRETZEL_3_M2_2_M3_JONES,
    FamilyId,
    clasp_skein_triple,
    conway_diagram,
    family_diagram,
    genus,
    is_trivial,
    kt2n_closed_form,
    kt2n_p,
    kt_diagram,
    normalize_params,
    parse_family,
    pretzel_diagram,
)
from knotcert.jones import jones, verify_skein_triple
from knotcert.kauffman import alexander_state_sum
from knotcert.laurent import LaurentPoly

q = LaurentPoly.monomial(1)
BUILDERS = {KT: kt_diagram, CONWAY: conway_diagram}


def test_parse_family():
    assert parse_family("kt:2,1") == FamilyId(KT, (2, 1))
    assert parse_family("Conway:-3,2") == FamilyId(CONWAY, (-3, 2))
    assert parse_family("pretzel:3,-2,2,-3") == FamilyId(PRETZEL, (3, -2, 2, -3))
    assert str(parse_family("c:4,1")) == "conway:4,1"


@pytest.mark.parametrize("text", ["kt", "kt:2", "kt:a,b", "torus:2,3", "pretzel:", "kt:1,2,3"])
def test_parse_family_rejects(text):
    with pytest.raises(ValueError):
        parse_family(text)


def test_normalisation():
    assert normalize_params(KT, -3, 2) == (2, 2, False)
    assert normalize_params(KT, -4, -1, mirror=True) == (3, 1, True)
    assert normalize_params(CONWAY, 5, 1) == (5, 1, False)
    with pytest.raises(ValueError):
        normalize_params(PRETZEL, 1, 1)


def test_trivial_members_and_genus():
    for r in (0, 1, -1, -2):
        assert is_trivial(KT, r, 3) and is_trivial(CONWAY, r, -1)
    assert is_trivial(KT, 4, 0)
    assert not is_trivial(KT, 2, 1)
    assert genus(KT, 3, 2) == 3 and genus(KT, -4, 1) == 3
    assert genus(CONWAY, -4, 1) == 5
    with pytest.raises(ValueError):
        genus(KT, 1, 1)


@pytest.mark.parametrize("family", [KT, CONWAY])
@pytest.mark.parametrize("presentation", ["reduced", "clasp"])
@pytest.mark.parametrize("r, n", [(2, 1), (3, -1), (-3, 2), (0, 1), (4, 0)])
def test_every_member_has_trivial_alexander_polynomial(family, presentation, r, n):
    d = BUILDERS[family](r, n, presentation)
    assert d.components == 1
    assert alexander_state_sum(MarkedDiagram(d)) == 1


def test_trivial_parameters_give_unknots():
    for d in (kt_diagram(1, 2), conway_diagram(-2, 1), kt_diagram(3, 0)):
        assert jones(d) == 1


@pytest.mark.parametrize("r, n", [(2, 1), (2, -2), (3, 1), (-3, 1)])
def test_mutants_share_jones(r, n):
    assert jones(kt_diagram(r, n)) == jones(conway_diagram(r, n))


@pytest.mark.parametrize("family", [KT, CONWAY])
@pytest.mark.parametrize("r, n", [(2, 1), (3, 2)])
def test_reduced_and_clasp_presentations_agree(family, r, n):
    build = BUILDERS[family]
    reduced, clasp = build(r, n), build(r, n, "clasp")
    assert jones(reduced) == jones(clasp)
    assert reduced.n_crossings == clasp.n_crossings - (1 if family == KT else 0)


@pytest.mark.parametrize("r, n", [(2, 1), (3, 1), (2, 2)])
def test_r_symmetry(r, n):
    assert jones(kt_diagram(r, n, "clasp")) == jones(kt_diagram(-r - 1, n, "clasp"))


@pytest.mark.parametrize("r, n", [(2, 1), (3, 2)])
def test_negative_n_is_the_mirror(r, n):
    assert jones(kt_diagram(r, -n)) == jones(kt_diagram(r, n)).substitute_inverse()
    assert jones(kt_diagram(r, -n, "clasp")) == jones(kt_diagram(r, n, "clasp")).substitute_inverse()


def test_pretzel_link_constant_matches_its_bracket():
    p = pretzel_diagram(3, -2, 2, -3)
    assert p.components == 2
    assert jones(p) == PRETZEL_3_M2_2_M3_JONES
    assert jones(family_diagram(parse_family("pretzel:3,-2,2,-3"))) == PRETZEL_3_M2_2_M3_JONES


@pytest.mark.parametrize("n", [1, 2, 3, -1, -2, -3, 0])
def test_closed_form_matches_direct_bracket(n):
    assert kt2n_closed_form(n) == jones(kt_diagram(2, n))


def test_kt21_closed_form_explicit():
    v = kt2n_closed_form(1)
    assert v == q ** 4 + PRETZEL_3_M2_2_M3_JONES * (q - q ** 3)


@pytest.mark.parametrize("n", range(0, 7))
def test_geometric_sum(n):
    assert kt2n_p(n) * (q + q ** -1) == 1 - q ** (4 * n)


def test_geometric_sum_domain():
    with pytest.raises(ValueError):
        kt2n_p(-1)


@pytest.mark.parametrize("family", [KT, CONWAY])
@pytest.mark.parametrize("r, n", [(2, 1), (2, 2), (3, -1), (-3, 2), (2, -2)])
def test_clasp_skein_triple(family, r, n):
    t = clasp_skein_triple(family, r, n)
    assert verify_skein_triple(t.plus, t.minus, t.zero)
    assert t.plus_n - t.minus_n == 1
    build = BUILDERS[family]
    assert jones(t.plus) == jones(build(r, t.plus_n))
    assert jones(t.minus) == jones(build(r, t.minus_n))
    assert t.zero.components == 2
    if r in (2, -3):
        assert jones(t.zero) == PRETZEL_3_M2_2_M3_JONES


def test_skein_triple_needs_a_clasp():
    with pytest.raises(ValueError):
        clasp_skein_triple(KT, 2, 0)


def test_unknown_presentation():
    with pytest.raises(ValueError):
        kt_diagram(2, 1, "twisted")


@pytest.mark.parametrize("n", range(1, 6))
def test_closed_form_recurrence(n):
    v = PRETZEL_3_M2_2_M3_JONES
    assert kt2n_closed_form(n) - q ** 4 * kt2n_closed_form(n - 1) == (q - q ** 3) * v

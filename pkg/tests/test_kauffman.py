from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import assume, given

from braids import braid_words, closure
from corpus import KNOTS, alexander, diagrams, knot
from oracles import face_incidence, permanent
from knotcert.diagram import MarkedDiagram, parse_pd
from knotcert.families import conway_diagram, kt_diagram
from knotcert.kauffman import (
    StateCache,
    alexander_state_sum,
    bigraded_table,
    delta_spread,
    enumerate_states,
    grade_state,
    local_grading,
    normalize_alexander,
    raw_state_sum,
    states_to_json,
)
from knotcert.laurent import LaurentPoly
from knotcert.skein import alexander_skein

H = Fraction(1, 2)


def hfk(*pairs):
    return Counter((m, Fraction(a)) for m, a in pairs)


# known knot Floer bigradings (M, A) of thin knots, one generator per entry
KNOWN_HFK = {
    "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]": hfk((0, -1), (1, 0), (2, 1)),
    "X[1,6,2,7] X[3,8,4,9] X[5,10,6,1] X[7,2,8,3] X[9,4,10,5]": hfk((0, -2), (1, -1), (2, 0), (3, 1), (4, 2)),
    "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]": hfk((1, 1), (0, 0), (0, 0), (0, 0), (-1, -1)),
}


@pytest.mark.parametrize("pd", sorted(KNOWN_HFK))
def test_bigradings_match_knot_floer_homology_for_every_marking(pd):
    want = KNOWN_HFK[pd]
    mirrored = Counter({(-m, -a): k for (m, a), k in want.items()})
    d = parse_pd(pd)
    for diagram, expected in ((d, want), (d.mirror(), mirrored)):
        for e in diagram.edges:
            assert Counter(bigraded_table(MarkedDiagram(diagram, e)).dims) == expected, e


@pytest.mark.parametrize("d", [dd for dd in diagrams() if dd.n_crossings <= 12] + [kt_diagram(2, 1), conway_diagram(2, 1)],
                         ids=lambda d: d.name)
def test_state_count_equals_permanent(d):
    md = MarkedDiagram(d)
    assert len(enumerate_states(md)) == permanent(face_incidence(md))


@given(braid_words(max_length=8))
def test_state_count_equals_permanent_on_braid_closures(sw):
    strands, word = sw
    d = closure(word, strands)
    assume(d.components == 1)
    md = MarkedDiagram(d)
    assert len(enumerate_states(md)) == permanent(face_incidence(md))


def test_each_state_is_a_bijection():
    md = MarkedDiagram(knot("6_2"))
    states = enumerate_states(md)
    for s in states:
        faces = [f for f, _ in s.assignment]
        assert sorted(faces) == sorted(md.unmarked_faces)
        for c, (f, q) in enumerate(s.assignment):
            assert (c, q) in md.diagram.faces[f].corners
    assert len({s.assignment for s in states}) == len(states)


@pytest.mark.parametrize("name", sorted(KNOTS))
def test_alexander_state_sum_matches_tables(name):
    assert alexander_state_sum(MarkedDiagram(knot(name))) == alexander(name)


@pytest.mark.parametrize("name", ["3_1", "4_1", "6_2", "8_19"])
def test_alexander_is_independent_of_marking(name):
    d = knot(name)
    values = {alexander_state_sum(MarkedDiagram(d, e)) for e in d.edges}
    assert values == {alexander(name)}


@given(braid_words(max_length=8))
def test_state_sum_agrees_with_skein_oracle(sw):
    strands, word = sw
    d = closure(word, strands)
    assume(d.components == 1)
    delta = alexander_state_sum(MarkedDiagram(d))
    assert delta == alexander_skein(d)
    assert delta == delta.substitute_inverse()
    assert delta.eval_at_one() == 1


@given(braid_words(max_length=7))
def test_raw_state_sums_differ_by_a_unit_between_markings(sw):
    strands, word = sw
    d = closure(word, strands)
    assume(d.components == 1)
    sums = [raw_state_sum(MarkedDiagram(d, e)) for e in d.edges]
    normal = {normalize_alexander(s)[0] for s in sums}
    assert len(normal) == 1


def test_raw_sum_is_g_at_minus_one():
    md = MarkedDiagram(knot("5_2"))
    table = bigraded_table(md)
    assert table.evaluate_s(-1) == raw_state_sum(md)
    assert table.evaluate_s(1).eval_at_one() == table.total == len(enumerate_states(md))
    with pytest.raises(ValueError):
        table.evaluate_s(2)


def test_local_table_is_symmetric_under_mirroring():
    for q in range(4):
        m_pos, a_pos = local_grading(1, q)
        assert abs(m_pos) <= 1 and abs(a_pos) <= H
    ahead_pos = {local_grading(1, q) for q in range(4)}
    ahead_neg = {(-m, -a) for m, a in (local_grading(-1, q) for q in range(4))}
    assert ahead_pos == ahead_neg


def test_grade_state_sums_local_contributions():
    md = MarkedDiagram(knot("3_1"))
    for s in enumerate_states(md):
        assert grade_state(md, s.assignment) == (s.maslov, s.alexander)


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_1", "5_2", "6_1", "6_3", "7_4"])
def test_alternating_diagrams_are_thin(name):
    assert delta_spread(MarkedDiagram(knot(name))) == 0


def test_nonalternating_spread_is_positive():
    # 8_19 = T(3,4) has thickness 1; any diagram's complex is at least that thick
    assert delta_spread(MarkedDiagram(knot("8_19"))) >= 1


def test_state_cache_and_serialisation():
    md = MarkedDiagram(knot("4_1"))
    cache = StateCache(md)
    assert cache.states is cache.states
    assert cache.alexander.polynomial == alexander("4_1")
    assert cache.alexander.n_states == 5
    assert cache.delta_spread == 0
    assert cache.table.to_csv().splitlines()[0] == "M,A,count"
    text = states_to_json(cache.states)
    assert text == states_to_json(enumerate_states(md))


def test_normalize_alexander():
    t = LaurentPoly.monomial(1)
    p, sign, shift = normalize_alexander(-(t ** 3) * (t - 1 + t ** -1))
    assert p == t - 1 + t ** -1 and sign == -1 and shift == -3
    assert normalize_alexander(LaurentPoly())[0].is_zero()


def test_unknot_has_one_empty_state():
    md = MarkedDiagram(parse_pd("U"))
    states = enumerate_states(md)
    assert len(states) == 1 and states[0].maslov == 0
    assert alexander_state_sum(md) == 1

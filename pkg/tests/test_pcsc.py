import dataclasses
import json

import pytest

from corpus import knot
from knotcert.families import CONWAY, KT, FamilyId, kt_diagram
from knotcert.jones import jones
from knotcert.laurent import LaurentPoly
from knotcert.pcsc import (
    HANSELMAN,
    INCONCLUSIVE,
    IW_V2,
    IW_V3,
    NONE,
    PCSC_HOLDS,
    SUMMARY_COLUMNS,
    TRIVIAL_KNOT,
    Certificate,
    Evidence,
    hanselman,
    ichihara_wu,
    verify_grid,
    verify_grids,
    verify_member,
)


def test_kt_3_2_via_hanselman():
    c = verify_member(KT, 3, 2)
    assert (c.verdict, c.criterion) == (PCSC_HOLDS, HANSELMAN)
    assert c.evidence.th_bound <= 2 and c.evidence.genus == 3
    assert c.recheck()


def test_kt_2_minus_4_via_third_derivative():
    c = verify_member(KT, 2, -4)
    assert (c.verdict, c.criterion) == (PCSC_HOLDS, IW_V3)
    assert c.evidence.V3_at_1 == -2304
    assert c.evidence.V2_at_1 == 0
    # |n| > 2: no direct bracket cross-check is attempted
    assert c.evidence.closed_form_agrees is None


def test_conway_minus_4_1_normalises():
    c = verify_member(CONWAY, -4, 1)
    assert c.knot == FamilyId(CONWAY, (3, 1))
    assert c.requested == FamilyId(CONWAY, (-4, 1))
    assert (c.verdict, c.criterion) == (PCSC_HOLDS, HANSELMAN)
    assert c.evidence.genus == 5


@pytest.mark.parametrize("n", [1, 2, -1, -2])
def test_kt2n_small_n_is_cross_checked_by_the_bracket(n):
    c = verify_member(KT, 2, n)
    assert c.evidence.closed_form_agrees is True
    assert c.evidence.V3_at_1 == 576 * n
    assert c.evidence.genus == 2


def test_trivial_members():
    for r, n in [(0, 3), (1, -1), (-1, 2), (-2, 1), (4, 0)]:
        c = verify_member(KT, r, n)
        assert (c.verdict, c.criterion) == (TRIVIAL_KNOT, NONE)


def test_hanselman_cases():
    assert hanselman(2, 3).fired
    assert not hanselman(2, 2).fired
    assert not hanselman(6, 7).fired
    assert hanselman(5, 1).fired


def test_ichihara_wu_cases():
    assert not ichihara_wu(LaurentPoly.constant(1)).fired
    r = ichihara_wu(jones(kt_diagram(2, 1)))
    assert (r.fired, r.criterion) == (True, IW_V3)
    assert r.witness == {"V2_at_1": 0, "V3_at_1": 576}
    tre = ichihara_wu(jones(knot("3_1")))
    assert tre.criterion == IW_V2
    # -6 in t is -24 in q = -t^(1/2)
    assert tre.witness["V2_at_1"] == -24


def test_certificates_reject_unsupported_evidence():
    good = verify_member(KT, 3, 1)
    with pytest.raises(ValueError):
        dataclasses.replace(good, evidence=dataclasses.replace(good.evidence, genus=2))
    with pytest.raises(ValueError):
        Certificate(FamilyId(KT, (2, 1)), PCSC_HOLDS, IW_V3, Evidence(V3_at_1=0))
    with pytest.raises(ValueError):
        Certificate(FamilyId(KT, (2, 1)), PCSC_HOLDS, NONE, Evidence(V3_at_1=576))
    with pytest.raises(ValueError):
        Certificate(FamilyId(KT, (2, 1)), TRIVIAL_KNOT, NONE, Evidence())


def test_certificate_json_fields():
    data = json.loads(verify_member(KT, 2, 1).to_json())
    assert set(data) == {"knot", "verdict", "criterion", "evidence", "provenance_notes", "requested"}
    assert set(data["evidence"]) == {"th_bound", "complex_thickness", "B_D", "genus", "V2_at_1", "V3_at_1",
                                     "closed_form_agrees", "n_crossings"}
    assert all(isinstance(v, (int, bool, type(None))) for v in data["evidence"].values())


def test_symmetric_parameters_give_identical_certificates():
    for fam in (KT, CONWAY):
        for r, n in [(2, 1), (3, -2)]:
            assert verify_member(fam, r, n) == verify_member(fam, -r - 1, n)


def test_grid_order_and_summary():
    g = verify_grid(KT, range(-3, 4), range(-1, 2))
    keys = [(row["r"], row["n"]) for row in g.rows()]
    assert keys == sorted(keys) and len(keys) == 21
    s = g.summary
    assert s["total"] == 21 and s["verdicts"][INCONCLUSIVE] == 0
    assert g.ok
    assert g.to_csv().splitlines()[0] == ",".join(SUMMARY_COLUMNS)


def test_empty_grid():
    g = verify_grid(KT, [], range(3))
    assert g.certificates == ()
    assert g.summary == {"total": 0, "verdicts": {PCSC_HOLDS: 0, TRIVIAL_KNOT: 0, INCONCLUSIVE: 0}, "criteria": {}}


def test_parallel_output_is_identical():
    serial = verify_grids([KT, CONWAY], range(2, 4), range(-1, 2), workers=1)
    parallel = verify_grids([KT, CONWAY], range(2, 4), range(-1, 2), workers=2)
    assert serial.to_json() == parallel.to_json()
    assert serial.to_csv() == parallel.to_csv()


def test_conway_never_needs_the_derivative_test():
    g = verify_grid(CONWAY, range(-4, 5), range(-2, 3))
    assert {c.criterion for c in g.certificates if c.verdict == PCSC_HOLDS} == {HANSELMAN}


def test_verify_member_rejects_pretzels():
    with pytest.raises(ValueError):
        verify_member("Pretzel", 1, 1)

"""Search local Kauffman-state grading tables against known knot Floer bigradings.

Every table assigning (M, A) in {-1,0,1} x {-1/2,0,1/2} to the four corners of
a crossing is tried; a table survives if, for every marked edge, the state
bigradings of the test diagrams equal the known HFK bigradings.  Positive and
negative crossings are calibrated on positive/negative diagrams separately,
then the survivors are combined and checked on the figure-eight knot.
"""

import itertools
from collections import Counter
from fractions import Fraction

from knotcert.diagram import MarkedDiagram, parse_pd
from knotcert.kauffman import _Incidence, _search

LH_TREFOIL = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"
LH_T25 = "X[1,6,2,7] X[3,8,4,9] X[5,10,6,1] X[7,2,8,3] X[9,4,10,5]"
FIG8 = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"

H = Fraction(1, 2)


def hfk(pairs):
    return Counter((m, Fraction(a)) for m, a in pairs)


def cases(sign):
    lh3 = parse_pd(LH_TREFOIL)
    lh5 = parse_pd(LH_T25)
    kink = parse_pd("X[1,1,2,2]") if sign > 0 else parse_pd("X[1,1,2,2]").mirror()
    if sign < 0:
        return [
            (lh3, hfk([(0, -1), (1, 0), (2, 1)])),
            (lh5, hfk([(0, -2), (1, -1), (2, 0), (3, 1), (4, 2)])),
            (kink, hfk([(0, 0)])),
        ]
    return [
        (lh3.mirror(), hfk([(0, 1), (-1, 0), (-2, -1)])),
        (lh5.mirror(), hfk([(0, 2), (-1, 1), (-2, 0), (-3, -1), (-4, -2)])),
        (kink, hfk([(0, 0)])),
    ]


def all_states(d):
    out = []
    for e in d.edges:
        md = MarkedDiagram(d, e)
        inc = _Incidence(md)
        out.append([tuple(q for _, q in a) for a in _search(inc)])
    return out


def grades(d, corner_lists, table):
    res = []
    for states in corner_lists:
        c = Counter()
        for qs in states:
            m = a = 0
            for ci, q in enumerate(qs):
                dm, da = table[(d.sign(ci), q)]
                m += dm
                a += da
            c[(m, Fraction(a, 2))] += 1
        res.append(c)
    return res


def survivors(sign):
    data = [(d, all_states(d), want) for d, want in cases(sign)]
    found = []
    for ms in itertools.product((-1, 0, 1), repeat=4):
        for As in itertools.product((-1, 0, 1), repeat=4):
            table = {(sign, q): (ms[q], As[q]) for q in range(4)}
            if all(all(g == want for g in grades(d, sl, table)) for d, sl, want in data):
                found.append(table)
    return found


def main():
    pos, neg = survivors(1), survivors(-1)
    print(f"positive-crossing tables: {len(pos)}")
    for t in pos:
        print("  ", {q: t[(1, q)] for q in range(4)})
    print(f"negative-crossing tables: {len(neg)}")
    for t in neg:
        print("  ", {q: t[(-1, q)] for q in range(4)})
    f8 = parse_pd(FIG8)
    sl = all_states(f8)
    want = hfk([(1, 1), (0, 0), (0, 0), (0, 0), (-1, -1)])
    for tp, tn in itertools.product(pos, neg):
        table = {**tp, **tn}
        ok = all(g == want for g in grades(f8, sl, table))
        print("combined", ok, {k: v for k, v in sorted(table.items())})


if __name__ == "__main__":
    main()

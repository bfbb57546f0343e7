"""Pin down the Jones variable convention against published values.

The bracket gives V in t.  Four substitutions q = +-t^(+-1/2) are candidates,
and for a two-component link the relative orientation matters too.  For each
candidate we report:

* whether the pretzel link P(3,-2,2,-3), in either orientation, matches the
  published 10-term polynomial;
* which skein relation of the form q^a V+ - q^b V- = (q^c - q^d) V0 holds on
  the triple from a clasp crossing of KT(2, 1);
* the value of the two-component unlink, which follows from the skein
  relation applied to the kink triple.

The published pretzel polynomial is palindromic, so it only fixes the sign:
q = -t^(1/2) and q = -t^(-1/2) both reproduce it.  The recurrence used for
KT(2, n), V_n - q^4 V_(n-1) = (q - q^3) V, is the skein relation
q^-2 V+ - q^2 V- = (q^-1 - q) V0, which holds only for q = -t^(1/2).  With
that relation the kink triple forces the unlink value q + q^-1.
"""

from __future__ import annotations

from knotcert.diagram import Diagram
from knotcert.families import KT, PRETZEL_3_M2_2_M3_JONES, clasp_skein_triple, pretzel_diagram
from knotcert.jones import jones, q_to_t
from knotcert.laurent import LaurentPoly

CANDIDATES = {
    "q = -t^(1/2)": (1, -1),
    "q = +t^(1/2)": (1, 1),
    "q = -t^(-1/2)": (-1, -1),
    "q = +t^(-1/2)": (-1, 1),
}
Q = LaurentPoly.monomial(1)


def substitute(v_q: LaurentPoly, power: int, sign: int) -> LaurentPoly:
    """Re-express a q-polynomial (built with q = -t^(1/2)) under another convention."""
    v_t = q_to_t(v_q)
    # t^(k/2) = (sign * q^power)^k
    out = {}
    for k2, c in v_t.items():  # doubled t-exponent is the half-integer count k
        out[2 * power * k2] = c * (sign ** (k2 % 2))
    return LaurentPoly(out)


def skein_forms():
    for a in (-4, -2, 2, 4):
        for b in (-4, -2, 2, 4):
            for c, d in ((-1, 1), (1, -1)):
                yield a, b, c, d


def main():
    pretzels = {"parallel": pretzel_diagram(3, -2, 2, -3), "reversed": pretzel_diagram(3, -2, 2, -3, reverse=(1,))}
    triple = clasp_skein_triple(KT, 2, 1)
    print("published:", PRETZEL_3_M2_2_M3_JONES.to_str("q", descending=True))
    for label, (power, sign) in CANDIDATES.items():
        print(f"\n{label}")
        for orient, d in pretzels.items():
            v = substitute(jones(d), power, sign)
            print(f"  P(3,-2,2,-3) {orient:8s} match={v == PRETZEL_3_M2_2_M3_JONES}  {v.to_str('q', descending=True)}")
        vp, vm, v0 = (substitute(jones(x, 40), power, sign) for x in (triple.plus, triple.minus, triple.zero))
        forms = [f for f in skein_forms() if (vp.shift(f[0]) - vm.shift(f[1]) - (Q ** f[2] - Q ** f[3]) * v0).is_zero()]
        for a, b, c, d in forms:
            # on a kink V+ = V- = 1 and V0 is the unlink, so (q^a - q^b) = (q^c - q^d) * unlink
            unlink = next(u for u in (Q + Q ** -1, -(Q + Q ** -1)) if u * (Q ** c - Q ** d) == Q ** a - Q ** b)
            print(f"  skein: q^{a} V+ - q^{b} V- = (q^{c} - q^{d}) V0   unlink = {unlink.to_str('q')}")
        if not forms:
            print("  skein: no relation of the tested shape")
    unlink = jones(Diagram.unknot(2))
    print(f"\nunlink under q = -t^(1/2): {unlink.to_str('q')}")


if __name__ == "__main__":
    main()

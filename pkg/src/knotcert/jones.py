"""Kauffman bracket and Jones polynomial.

The bracket uses ``<X[i,j,k,l]> = A <i-j, k-l> + A^-1 <i-l, j-k>`` with loop
value ``d = -A^2 - A^-2`` and ``<unknot> = 1``.  The standard Jones polynomial
is ``V(t) = (-A^3)^(-w) <D>`` at ``A = t^(-1/4)``.

Results are reported in the variable ``q = -t^(1/2)``.  In that variable the
Jones polynomial satisfies

    q^-2 V(L+) - q^2 V(L-) = (q^-1 - q) V(L0),   V(unknot) = 1,

and the two-component unlink has ``V = q + q^-1``.  This is the substitution
that reproduces the published value of the pretzel link P(3,-2,2,-3) (see
``scripts/calibrate_jones.py``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import Diagram
from .laurent import LaurentPoly

DEFAULT_CROSSING_CAP = 24
CONVENTION = "q=-t^(1/2)"

# loop value in the A variable, as {exponent: coeff}
_LOOP = {2: -1, -2: -1}


class CrossingCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class JonesResult:
    polynomial: LaurentPoly
    bracket_states_visited: int
    convention_tag: str = CONVENTION


def _poly_mul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            out[k] = out.get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def _poly_add_into(acc: dict[int, int], p: dict[int, int], shift: int) -> None:
    for k, c in p.items():
        kk = k + shift
        v = acc.get(kk, 0) + c
        if v:
            acc[kk] = v
        else:
            acc.pop(kk, None)


def _join(m: dict[int, int], x: int, y: int) -> bool:
    """Connect open ends ``x`` and ``y`` through a smoothing; True if a loop closes."""
    if x == y:
        return True
    xin, yin = x in m, y in m
    if xin and yin:
        a = m.pop(x)
        b = m.pop(y)
        if a == y:
            return True
        m[a] = b
        m[b] = a
    elif xin:
        a = m.pop(x)
        m[a] = y
        m[y] = a
    elif yin:
        b = m.pop(y)
        m[b] = x
        m[x] = b
    else:
        m[x] = y
        m[y] = x
    return False


def _crossing_order(crossings) -> list[int]:
    """Greedy order keeping the set of half-processed edges small."""
    n = len(crossings)
    remaining = set(range(n))
    open_edges: set[int] = set()
    order = []
    while remaining:
        best = min(remaining, key=lambda c: (-sum(e in open_edges for e in crossings[c]), c))
        remaining.remove(best)
        order.append(best)
        for e in crossings[best]:
            if e in open_edges:
                open_edges.remove(e)
            else:
                open_edges.add(e)
    return order


def _bracket_terms(d: Diagram, cap: int) -> tuple[dict[int, int], int]:
    n = d.n_crossings
    if n > cap:
        raise CrossingCapExceeded(f"{n} crossings exceeds the bracket cap of {cap}")
    loop = _LOOP
    if n == 0:
        out = {0: 1}
        for _ in range(d.loops - 1):
            out = _poly_mul(out, loop)
        return out, 1
    # partial state: (sorted matching items, closed_any) -> polynomial in A
    states: dict[tuple, dict[int, int]] = {((), False): {0: 1}}
    visited = 0
    for ci in _crossing_order(d.crossings):
        i, j, k, l = d.crossings[ci]
        nxt: dict[tuple, dict[int, int]] = {}
        for (items, closed_any), poly in states.items():
            visited += 1
            for (p1, p2), weight in ((((i, j), (k, l)), 1), (((i, l), (j, k)), -1)):
                m = dict(items)
                loops = _join(m, *p1) + _join(m, *p2)
                term = poly
                closed = closed_any
                for _ in range(loops):
                    if closed:
                        term = _poly_mul(term, loop)
                    closed = True
                key = (tuple(sorted(m.items())), closed)
                acc = nxt.setdefault(key, {})
                _poly_add_into(acc, term, weight)
        states = {k: v for k, v in nxt.items() if v}
    total: dict[int, int] = {}
    for (items, closed), poly in states.items():
        assert not items and closed
        _poly_add_into(total, poly, 0)
    for _ in range(d.loops):
        total = _poly_mul(total, loop)
    return total, visited


def kauffman_bracket(d: Diagram, cap: int = DEFAULT_CROSSING_CAP) -> LaurentPoly:
    """Bracket polynomial in ``A`` (integer exponents), normalised so the unknot is 1."""
    terms, _ = _bracket_terms(d, cap)
    return LaurentPoly({2 * k: c for k, c in terms.items()})


def _bracket_to_q(terms: dict[int, int], writhe: int) -> LaurentPoly:
    # (-A^3)^(-w) <D>, then A^k -> t^(-k/4) -> (-q)^(-k/2)
    sign = -1 if writhe % 2 else 1
    out = {}
    for k, c in terms.items():
        kk = k - 3 * writhe
        if kk % 2:
            raise ValueError("odd A-exponent after writhe normalisation")
        e = -kk // 2
        out[2 * e] = c * sign * (-1 if e % 2 else 1)
    return LaurentPoly(out)


def jones_polynomial(d: Diagram, cap: int = DEFAULT_CROSSING_CAP) -> JonesResult:
    terms, visited = _bracket_terms(d, cap)
    return JonesResult(_bracket_to_q(terms, d.writhe()), visited)


def jones(d: Diagram, cap: int = DEFAULT_CROSSING_CAP) -> LaurentPoly:
    return jones_polynomial(d, cap).polynomial


def q_to_t(v: LaurentPoly) -> LaurentPoly:
    """Rewrite a Jones polynomial in ``q`` as a polynomial in ``t`` (``t^(1/2) = -q``)."""
    if not v.has_integer_exponents():
        raise ValueError("Jones polynomials in q have integer exponents")
    # q^e = (-1)^e t^(e/2); doubled t-exponent is e
    return LaurentPoly({k // 2: c * (-1 if (k // 2) % 2 else 1) for k, c in v.items()})


def t_to_q(v: LaurentPoly) -> LaurentPoly:
    return LaurentPoly({2 * k: c * (-1 if k % 2 else 1) for k, c in v.items()})


_Q = LaurentPoly.monomial(1)


def skein_defect(vp: LaurentPoly, vm: LaurentPoly, v0: LaurentPoly) -> LaurentPoly:
    """``q^-2 V+ - q^2 V- - (q^-1 - q) V0``; zero exactly when the skein relation holds."""
    return vp.shift(-2) - vm.shift(2) - (_Q ** -1 - _Q) * v0


def verify_skein_triple(lp: Diagram, lm: Diagram, l0: Diagram, cap: int = DEFAULT_CROSSING_CAP) -> bool:
    return skein_defect(jones(lp, cap), jones(lm, cap), jones(l0, cap)).is_zero()


def derivatives_at_one(v: LaurentPoly, order: int = 3) -> tuple[int, ...]:
    """``(V(1), V'(1), ..., V^(order)(1))`` as exact integers."""
    out = []
    p = v
    for k in range(order + 1):
        out.append(p.eval_at_one())
        if k < order:
            p = p.derivative(1)
    return tuple(out)

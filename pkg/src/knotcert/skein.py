"""Alexander polynomial by skein recursion, independent of Kauffman states.

Uses ``D(L+) - D(L-) = (t^(1/2) - t^(-1/2)) D(L0)`` with ``D(unknot) = 1`` and
``D = 0`` on split links.  Each step walks the components from fixed base
points (the smallest edge label of each component, components taken in order
of that label) and resolves the first crossing met first as an underpass;
switching it keeps the walk's good prefix, smoothing drops a crossing.  A
diagram without such a crossing is descending and thus an unlink.

Kinks are removed before every step.  Results are memoised on the sorted
crossing list; labels are kept stable by always merging onto the smaller label,
so equal subdiagrams reached along different branches share one key.
"""

from __future__ import annotations

import sys

from .diagram import Diagram
from .laurent import LaurentPoly

DEFAULT_CALL_BUDGET = 2_000_000

# (i, j, k, l, over_in)
Crossing = tuple[int, int, int, int, int]

_Z = LaurentPoly({1: 1, -1: -1})
_ONE = LaurentPoly.constant(1)
_ZERO = LaurentPoly()


class SkeinBudgetExceeded(RuntimeError):
    pass


def switch(c: Crossing) -> Crossing:
    i, j, k, l, oin = c
    if oin == 3:
        return (l, i, j, k, 1)
    return (j, k, l, i, 3)


def smoothing_pairs(c: Crossing) -> tuple[tuple[int, int], tuple[int, int]]:
    """Edge pairs joined by the oriented smoothing (incoming to adjacent outgoing)."""
    i, j, k, l, oin = c
    if oin == 3:
        return (i, j), (l, k)
    return (i, l), (j, k)


def _merge(crossings: list[Crossing], pairs) -> tuple[list[Crossing], int]:
    """Identify edge labels pairwise (onto the smaller label); count closed loops."""
    parent: dict[int, int] = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    loops = 0
    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra == rb:
            loops += 1
        elif ra < rb:
            parent[rb] = ra
        else:
            parent[ra] = rb
    if not parent:
        return crossings, loops
    out = [(find(i), find(j), find(k), find(l), o) for i, j, k, l, o in crossings]
    return out, loops


def smooth(crossings: list[Crossing], index: int) -> tuple[list[Crossing], int]:
    rest = crossings[:index] + crossings[index + 1:]
    return _merge(rest, smoothing_pairs(crossings[index]))


def remove_kinks(crossings: list[Crossing]) -> tuple[list[Crossing], int]:
    """Undo Reidemeister-I loops; returns the reduced list and new free loops."""
    loops = 0
    changed = True
    while changed:
        changed = False
        for idx, c in enumerate(crossings):
            labels = c[:4]
            for p in range(4):
                if labels[p] == labels[(p + 1) % 4]:
                    a, b = labels[(p + 2) % 4], labels[(p + 3) % 4]
                    rest = crossings[:idx] + crossings[idx + 1:]
                    if a == b:
                        # both edges start and end here: a crossingless circle
                        crossings, extra = rest, 1
                    else:
                        crossings, extra = _merge(rest, [(a, b)])
                    loops += extra
                    changed = True
                    break
            if changed:
                break
    return crossings, loops


def _is_connected(crossings: list[Crossing]) -> bool:
    where: dict[int, list[int]] = {}
    for ci, c in enumerate(crossings):
        for e in c[:4]:
            where.setdefault(e, []).append(ci)
    seen = {0}
    stack = [0]
    while stack:
        ci = stack.pop()
        for e in crossings[ci][:4]:
            for cj in where[e]:
                if cj not in seen:
                    seen.add(cj)
                    stack.append(cj)
    return len(seen) == len(crossings)


def first_overpass_violation(crossings: list[Crossing]) -> tuple[int | None, int]:
    """Index of the first crossing first met as an underpass, and the component count."""
    entry: dict[int, tuple[int, int]] = {}
    for ci, (i, j, k, l, oin) in enumerate(crossings):
        entry[i] = (ci, 0)
        entry[(i, j, k, l)[oin]] = (ci, oin)
    seen_edges: set[int] = set()
    visited: set[int] = set()
    labels = sorted(entry)
    components = 0
    bad = None
    for start in labels:
        if start in seen_edges:
            continue
        components += 1
        e = start
        while e not in seen_edges:
            seen_edges.add(e)
            ci, p = entry[e]
            if bad is None and ci not in visited:
                if p == 0:
                    bad = ci
                visited.add(ci)
            e = crossings[ci][(p + 2) % 4]
    return bad, components


class _Solver:
    def __init__(self, budget: int):
        self.memo: dict[tuple, LaurentPoly] = {}
        self.calls = 0
        self.budget = budget

    def solve(self, crossings: list[Crossing], loops: int) -> LaurentPoly:
        self.calls += 1
        if self.calls > self.budget:
            raise SkeinBudgetExceeded(f"skein recursion exceeded {self.budget} calls")
        crossings, extra = remove_kinks(list(crossings))
        loops += extra
        if not crossings:
            return _ONE if loops == 1 else _ZERO
        if loops or not _is_connected(crossings):
            return _ZERO
        key = tuple(sorted(crossings))
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        bad, comps = first_overpass_violation(crossings)
        if bad is None:
            result = _ONE if comps == 1 else _ZERO
        else:
            sign = 1 if crossings[bad][4] == 3 else -1
            switched = crossings[:bad] + [switch(crossings[bad])] + crossings[bad + 1:]
            smoothed, new_loops = smooth(crossings, bad)
            rest = self.solve(switched, 0)
            zero = self.solve(smoothed, new_loops)
            result = rest + _Z * zero if sign == 1 else rest - _Z * zero
        self.memo[key] = result
        return result


def _as_diagram(crossings: list[Crossing], loops: int, name: str) -> Diagram:
    return Diagram.from_pd([c[:4] for c in crossings], over_in=[c[4] for c in crossings], loops=loops,
                           name=name, require_connected=False)


def _crossing_list(d: Diagram) -> list[Crossing]:
    return [(*c, o) for c, o in zip(d.crossings, d.over_in)]


def switch_crossing(d: Diagram, index: int) -> Diagram:
    """The diagram with crossing ``index`` changed (over and under swapped)."""
    cs = _crossing_list(d)
    cs[index] = switch(cs[index])
    return _as_diagram(cs, d.loops, f"switch({d.name},{index})" if d.name else "")


def smooth_crossing(d: Diagram, index: int) -> Diagram:
    """The diagram with crossing ``index`` replaced by its oriented smoothing."""
    cs, loops = smooth(_crossing_list(d), index)
    return _as_diagram(cs, d.loops + loops, f"smooth({d.name},{index})" if d.name else "")


def alexander_skein(d: Diagram, budget: int = DEFAULT_CALL_BUDGET) -> LaurentPoly:
    """Conway-normalised Alexander polynomial of an oriented link diagram."""
    crossings = _crossing_list(d)
    if not crossings:
        return _ONE if d.loops == 1 else _ZERO
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20000))
    try:
        return _Solver(budget).solve(crossings, d.loops)
    finally:
        sys.setrecursionlimit(limit)

"""Brute-force nested set enumeration: face numbers and the reference gamma.

This path never uses flagness, so it serves as the ground truth for the
incremental engine.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterator

from .buildset import BuildingSet, DomainError, contraction, fmt, restriction
from .poly import IntPolynomial, f_to_h, h_to_gamma

INSTANCE_CAP = 1 << 20


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class FaceCensus:
    """``counts_by_size[k]`` = number of nested sets with k members."""

    counts_by_size: tuple[int, ...]
    dimension: int

    def to_json(self) -> str:
        return json.dumps(list(self.counts_by_size))

    @property
    def vertex_count(self) -> int:
        return self.counts_by_size[self.dimension]


def _candidates(b: BuildingSet, override_cap: bool) -> list[int]:
    top = set(b.b_max)
    cands = [e for e in b.elements if e not in top]
    if len(cands) > INSTANCE_CAP and not override_cap:
        raise InstanceTooLarge(f"{len(cands)} candidate members exceed the cap of {INSTANCE_CAP}")
    return cands


def _walk(b: BuildingSet, visit: Callable[[list[int]], None], override_cap: bool) -> None:
    cands = _candidates(b, override_cap)
    members = b.members
    chosen: list[int] = []
    roots: list[int] = []  # currently maximal members of the partial nested set

    def admissible(x: int) -> tuple[bool, list[int]]:
        # candidates arrive in nondecreasing size, so x is never inside a chosen set
        absorbed = []
        free = []
        for r in roots:
            if r & x:
                if r & ~x:
                    return False, []
                absorbed.append(r)
            else:
                free.append(r)
        # forbidden union: x together with any nonempty family of free roots;
        # deeper members lift to their roots by union-closure
        unions = [x]
        for r in free:
            grown = []
            for u in unions:
                v = u | r
                if v in members:
                    return False, []
                grown.append(v)
            unions += grown
        return True, absorbed

    def rec(start: int) -> None:
        visit(chosen)
        for idx in range(start, len(cands)):
            x = cands[idx]
            ok, absorbed = admissible(x)
            if not ok:
                continue
            saved = roots[:]
            for r in absorbed:
                roots.remove(r)
            roots.append(x)
            chosen.append(x)
            rec(idx + 1)
            chosen.pop()
            roots[:] = saved

    rec(0)


def iter_nested_sets(b: BuildingSet, *, override_cap: bool = False) -> Iterator[tuple[int, ...]]:
    """Materialise every nested set (small instances only)."""
    out: list[tuple[int, ...]] = []
    _walk(b, lambda ch: out.append(tuple(ch)), override_cap)
    return iter(out)


def enumerate_nested_sets(b: BuildingSet, *, override_cap: bool = False) -> FaceCensus:
    d = b.dimension
    counts = [0] * (d + 1)

    def visit(ch: list[int]) -> None:
        counts[len(ch)] += 1

    _walk(b, visit, override_cap)
    return FaceCensus(tuple(counts), d)


def is_nested(b: BuildingSet, family) -> bool:
    """Direct check of both nested-set conditions over all subfamilies."""
    family = list(family)
    top = set(b.b_max)
    if any(x not in b.members or x in top for x in family):
        return False
    for i, x in enumerate(family):
        for y in family[i + 1:]:
            if x & y and (x & ~y) and (y & ~x):
                return False
    k = len(family)
    for sel in range(1, 1 << k):
        if sel & (sel - 1) == 0:
            continue
        picked = [family[j] for j in range(k) if sel >> j & 1]
        u = 0
        disjoint = True
        for p in picked:
            if u & p:
                disjoint = False
                break
            u |= p
        if disjoint and u in b.members:
            return False
    return True


def f_polynomial(b: BuildingSet, *, override_cap: bool = False) -> tuple[IntPolynomial, int]:
    census = enumerate_nested_sets(b, override_cap=override_cap)
    d = census.dimension
    return IntPolynomial(census.counts_by_size[d - k] for k in range(d + 1)), d


def h_polynomial(b: BuildingSet) -> tuple[IntPolynomial, int]:
    f, d = f_polynomial(b)
    return f_to_h(f, d), d


def gamma_oracle(b: BuildingSet) -> IntPolynomial:
    h, d = h_polynomial(b)
    return h_to_gamma(h, d)


def convolve(a, c) -> list[int]:
    out = [0] * (len(a) + len(c) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(c):
            out[i + j] += x * y
    return out


def facet_f_identity_check(b: BuildingSet, i: int) -> bool:
    """Nested sets containing ``i`` are counted by the product of the
    censuses of the restriction to ``i`` and the contraction by ``i``."""
    if i not in b.members or i in b.b_max:
        raise DomainError(f"{fmt(i)} must be a non-maximal member")
    containing = [0] * (b.dimension + 1)

    def visit(ch: list[int]) -> None:
        if i in ch:
            containing[len(ch)] += 1

    _walk(b, visit, False)
    left = enumerate_nested_sets(restriction(b, i)).counts_by_size
    right = enumerate_nested_sets(contraction(b, i)).counts_by_size
    expected = [0] + convolve(left, right)
    n = max(len(expected), len(containing))
    expected += [0] * (n - len(expected))
    containing += [0] * (n - len(containing))
    return expected == containing


def facet_f_identity_all(b: BuildingSet) -> dict[int, bool]:
    """``facet_f_identity_check`` for every non-maximal member, in one walk."""
    top = set(b.b_max)
    inner = [e for e in b.elements if e not in top]
    containing = {i: [0] * (b.dimension + 1) for i in inner}

    def visit(ch: list[int]) -> None:
        k = len(ch)
        for x in ch:
            containing[x][k] += 1

    _walk(b, visit, False)
    out = {}
    for i in inner:
        left = enumerate_nested_sets(restriction(b, i)).counts_by_size
        right = enumerate_nested_sets(contraction(b, i)).counts_by_size
        expected = [0] + convolve(left, right)
        got = containing[i]
        n = max(len(expected), len(got))
        out[i] = expected + [0] * (n - len(expected)) == got + [0] * (n - len(got))
    return out

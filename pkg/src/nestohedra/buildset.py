"""Building sets over ground sets of at most 64 labels.

A subset is a plain ``int`` bitmask: label ``i`` lives at bit ``i - 1``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .graph import LabeledGraph

MAX_LABELS = 64


class BuildingSetError(ValueError):
    """The family violates a building-set axiom."""


class GroundSetTooLarge(ValueError):
    pass


class DomainError(ValueError):
    """An operation's precondition on its arguments does not hold."""


class NotFlagError(ValueError):
    pass


# -- subset helpers ---------------------------------------------------------

def mask(labels: Iterable[int]) -> int:
    m = 0
    for i in labels:
        if not 1 <= i <= MAX_LABELS:
            raise GroundSetTooLarge(f"label {i} outside 1..{MAX_LABELS}")
        m |= 1 << (i - 1)
    return m


def labels(m: int) -> list[int]:
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


def popcount(m: int) -> int:
    return bin(m).count("1")


def lowbit(m: int) -> int:
    return m & -m


def iter_bits(m: int):
    while m:
        b = m & -m
        yield b
        m ^= b


def subset_key(m: int) -> tuple[int, int]:
    """Canonical element order: by cardinality, then bit pattern."""
    return (popcount(m), m)


def fmt(m: int) -> str:
    return "{" + ",".join(map(str, labels(m))) + "}"


def compressor(ground: int):
    """Return a function relabelling subsets of ``ground`` onto 1..|ground| in order."""
    table = {b: 1 << k for k, b in enumerate(iter_bits(ground))}

    def compress(m: int) -> int:
        out = 0
        while m:
            b = m & -m
            out |= table[b]
            m ^= b
        return out

    return compress


# -- building sets -----------------------------------------------------------

class BuildingSet:
    """An immutable building set.

    ``elements`` are stored sorted by (cardinality, bits). Construction
    validates both axioms unless ``check=False`` (used internally for
    families that are building sets by construction).
    """

    def __init__(self, elements: Iterable[int], ground: int | None = None, *, check: bool = True):
        members = frozenset(elements)
        if ground is None:
            ground = 0
            for e in members:
                ground |= e
        if ground >> MAX_LABELS:
            raise GroundSetTooLarge(f"ground set exceeds {MAX_LABELS} labels")
        self.ground = ground
        self.members = members
        self.elements = tuple(sorted(members, key=subset_key))
        if check:
            problem = _axiom_violation(members, ground)
            if problem:
                raise BuildingSetError(problem)

    @classmethod
    def from_labels(cls, elements: Iterable[Iterable[int]], ground: Iterable[int] | None = None,
                    *, check: bool = True) -> BuildingSet:
        g = None if ground is None else mask(ground)
        return cls((mask(e) for e in elements), g, check=check)

    def __contains__(self, m: int) -> bool:
        return m in self.members

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BuildingSet):
            return NotImplemented
        return self.ground == other.ground and self.members == other.members

    def __hash__(self) -> int:
        return hash((self.ground, self.members))

    def __repr__(self) -> str:
        return f"BuildingSet(ground={fmt(self.ground)}, {', '.join(map(fmt, self.elements))})"

    @property
    def n(self) -> int:
        return popcount(self.ground)

    @cached_property
    def b_max(self) -> tuple[int, ...]:
        top = []
        for e in reversed(self.elements):
            if not any(e & t for t in top):
                top.append(e)
        return tuple(sorted(top, key=subset_key))

    @property
    def is_connected(self) -> bool:
        return self.ground in self.members

    @property
    def dimension(self) -> int:
        return self.n - len(self.b_max)

    @cached_property
    def is_flag(self) -> bool:
        return all(find_split(self, e) is not None for e in self.elements if e & (e - 1))

    def is_minimal_flag(self) -> bool:
        return self.is_connected and len(self.elements) == 2 * self.n - 1 and self.is_flag

    def label_sets(self) -> list[list[int]]:
        return [labels(e) for e in self.elements]

    def compact_key(self) -> tuple[int, tuple[int, ...]]:
        """Elements relabelled onto 1..n preserving label order; used as a memo key."""
        c = compressor(self.ground)
        return (self.n, tuple(sorted((c(e) for e in self.elements), key=subset_key)))

    def to_dict(self) -> dict:
        return {"ground": labels(self.ground), "elements": self.label_sets()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> BuildingSet:
        try:
            ground = data["ground"]
            elements = data["elements"]
        except (KeyError, TypeError) as exc:
            raise BuildingSetError("expected an object with 'ground' and 'elements'") from exc
        for e in [ground, *elements]:
            if not all(isinstance(x, int) and x > 0 for x in e):
                raise BuildingSetError("labels must be positive integers")
        return cls.from_labels(elements, ground)

    @classmethod
    def from_json(cls, text: str) -> BuildingSet:
        return cls.from_dict(json.loads(text))


def _axiom_violation(members: frozenset, ground: int) -> str | None:
    for e in members:
        if e == 0:
            return "empty set is not allowed"
        if e & ~ground:
            return f"{fmt(e)} is not inside the ground set {fmt(ground)}"
    for b in iter_bits(ground):
        if b not in members:
            return f"missing singleton {fmt(b)}"
    elems = sorted(members, key=subset_key)
    for i, a in enumerate(elems):
        for b in elems[i + 1:]:
            if a & b and (a | b) not in members:
                return f"{fmt(a)} and {fmt(b)} intersect but their union is missing"
    return None


def is_building_set(candidate: Iterable[int], ground: int) -> bool:
    return _axiom_violation(frozenset(candidate), ground) is None


def find_split(b: BuildingSet, i: int) -> tuple[int, int] | None:
    """Some pair of disjoint members with union ``i``, or None."""
    k = popcount(i)
    for d in b.elements:
        if popcount(d) >= k:
            break
        if d & ~i == 0 and (i ^ d) in b.members:
            return (d, i ^ d)
    return None


# -- constructions -----------------------------------------------------------

def graphical_building_set(g: LabeledGraph) -> BuildingSet:
    """All vertex subsets inducing connected subgraphs of ``g``."""
    if g.n > MAX_LABELS:
        raise GroundSetTooLarge(f"{g.n} vertices exceed {MAX_LABELS}")
    adj = g.adj_mask
    found = set()
    for v in range(1, g.n + 1):
        start = 1 << (v - 1)
        above = ~((start << 1) - 1)  # labels > v
        seen = {start}
        stack = [start]
        while stack:
            s = stack.pop()
            nb = 0
            for b in iter_bits(s):
                nb |= adj[b.bit_length()]
            nb &= above & ~s
            for b in iter_bits(nb):
                t = s | b
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        found |= seen
    ground = (1 << g.n) - 1
    return BuildingSet(found, ground, check=False)


def restriction(b: BuildingSet, i: int) -> BuildingSet:
    if i & ~b.ground or i == 0:
        raise DomainError(f"{fmt(i)} is not a nonempty subset of the ground set")
    return BuildingSet((e for e in b.elements if e & ~i == 0), i, check=False)


def contraction(b: BuildingSet, i: int) -> BuildingSet:
    if i not in b.members:
        raise DomainError(f"can only contract by a member, {fmt(i)} is not one")
    keep = ~i
    return BuildingSet({e & keep for e in b.elements if e & keep}, b.ground & keep, check=False)


def product_building_set(b: BuildingSet, parts: Sequence[BuildingSet]) -> BuildingSet:
    """Substitute the connected building set ``parts[k]`` for the k-th ground label of ``b``.

    Blocks are laid out consecutively starting at label 1.
    """
    base_labels = labels(b.ground)
    if len(parts) != len(base_labels):
        raise DomainError(f"need {len(base_labels)} parts, got {len(parts)}")
    total = sum(p.n for p in parts)
    if total > MAX_LABELS:
        raise GroundSetTooLarge(f"product ground set has {total} labels")
    blocks = {}
    elements = set()
    offset = 0
    for lab, part in zip(base_labels, parts):
        if not part.is_connected:
            raise DomainError("every part must be a connected building set")
        c = compressor(part.ground)
        for e in part.elements:
            elements.add(c(e) << offset)
        blocks[1 << (lab - 1)] = ((1 << part.n) - 1) << offset
        offset += part.n
    for e in b.elements:
        u = 0
        for bit in iter_bits(e):
            u |= blocks[bit]
        elements.add(u)
    return BuildingSet(elements, (1 << total) - 1, check=False)


# -- binary decompositions ---------------------------------------------------

@dataclass
class DecompositionTree:
    """A binary decomposition: every non-singleton node maps to its two children."""

    root: int
    children: dict = field(default_factory=dict)

    @property
    def nodes(self) -> set[int]:
        out = {self.root}
        for d1, d2 in self.children.values():
            out.add(d1)
            out.add(d2)
        return out

    def validate(self, b: BuildingSet | None = None) -> None:
        stack = [self.root]
        seen = set()
        while stack:
            node = stack.pop()
            if node in seen:
                raise AssertionError(f"node {fmt(node)} appears twice")
            seen.add(node)
            if b is not None and node not in b.members:
                raise AssertionError(f"node {fmt(node)} is not a member")
            if popcount(node) == 1:
                if node in self.children:
                    raise AssertionError("singleton with children")
                continue
            d1, d2 = self.children[node]
            if d1 & d2 or (d1 | d2) != node or not d1 or not d2:
                raise AssertionError(f"bad split of {fmt(node)}")
            stack += [d1, d2]
        if seen != self.nodes:
            raise AssertionError("unreachable nodes in decomposition")
        if len(seen) != 2 * popcount(self.root) - 1:
            raise AssertionError("decomposition is not a binary tree on its root")

    def as_building_set(self) -> BuildingSet:
        return BuildingSet(self.nodes, self.root)


def _split_rank(i: int, d: int) -> tuple:
    # part holding the smallest label of i comes first; prefer it large, then lexicographically least
    d1 = d if d & lowbit(i) else i ^ d
    return (-popcount(d1), labels(d1)), d1, i ^ d1


def _best_split(b: BuildingSet, i: int) -> tuple[int, int] | None:
    k = popcount(i)
    best = None
    for d in b.elements:
        if popcount(d) >= k:
            break
        if d & ~i == 0 and (i ^ d) in b.members:
            cand = _split_rank(i, d)
            if best is None or cand[0] < best[0]:
                best = cand
    return None if best is None else (best[1], best[2])


def binary_decomposition(b: BuildingSet, i: int) -> DecompositionTree:
    if i not in b.members:
        raise DomainError(f"{fmt(i)} is not a member")
    tree = DecompositionTree(i)
    stack = [i]
    while stack:
        node = stack.pop()
        if popcount(node) == 1:
            continue
        split = _best_split(b, node)
        if split is None:
            raise NotFlagError(f"{fmt(node)} has no split into two disjoint members")
        tree.children[node] = split
        stack += list(split)
    return tree


def decomposition_containing(b: BuildingSet, i: int, j: int) -> DecompositionTree:
    """A decomposition of ``i`` having ``j`` as a node.

    Start from the parts {j} + singletons of i - j and repeatedly regroup a
    family of disjoint parts into two groups whose unions are members.
    """
    if i not in b.members or j not in b.members:
        raise DomainError("both sets must be members")
    if j & ~i or j == i:
        raise DomainError(f"{fmt(j)} is not a proper subset of {fmt(i)}")
    if not b.is_flag:
        raise DomainError("building set is not flag")
    tree = DecompositionTree(i)
    sub = binary_decomposition(b, j)
    tree.children.update(sub.children)
    stack = [[j] + list(iter_bits(i & ~j))]
    while stack:
        parts = stack.pop()
        if len(parts) == 1:
            continue
        union = 0
        for p in parts:
            union |= p
        groups = _regroup(b, parts)
        if groups is None:
            raise NotFlagError(f"parts of {fmt(union)} admit no two-member regrouping")
        left, right = groups
        ul = ur = 0
        for p in left:
            ul |= p
        for p in right:
            ur |= p
        tree.children[union] = (ul, ur)
        stack += [left, right]
    return tree


def _regroup(b: BuildingSet, parts: list[int]):
    # the first part always goes left; enumerate the rest in a fixed order
    rest = parts[1:]
    for size in range(len(rest), -1, -1):
        for combo in itertools.combinations(range(len(rest)), size):
            left = [parts[0]] + [rest[k] for k in combo]
            right = [rest[k] for k in range(len(rest)) if k not in combo]
            if not right:
                continue
            ul = 0
            for p in left:
                ul |= p
            ur = 0
            for p in right:
                ur |= p
            if ul in b.members and ur in b.members:
                return left, right
    return None


"""Incremental gamma for flag building sets.

Start from a minimal flag building set inside ``b`` (gamma = 1), add the
remaining members one at a time keeping every intermediate family a flag
building set, and accumulate ``t * gamma(B|_I) * gamma(B/I)`` per added
member ``I``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .buildset import (
    BuildingSet,
    binary_decomposition,
    contraction,
    fmt,
    iter_bits,
    popcount,
    restriction,
    subset_key,
)
from .nested import gamma_oracle
from .poly import IntPolynomial, product


class ChainError(RuntimeError):
    """No admissible next member; cannot happen for flag input."""


class NegativeIncrement(RuntimeError):
    pass


@dataclass
class FlagChain:
    base: BuildingSet
    additions: list[int]
    target: BuildingSet

    def prefixes(self):
        """Yield (family before, added member, family after) along the chain."""
        ground = self.base.ground
        before = self.base
        current = set(self.base.members)
        for x in self.additions:
            current.add(x)
            after = BuildingSet(current, ground, check=False)
            yield before, x, after
            before = after


class GammaMemo:
    """Compact-key -> gamma cache; insert-if-absent so concurrent writers agree."""

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key):
        value = self._data.get(key)
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def put(self, key, value: IntPolynomial) -> IntPolynomial:
        with self._lock:
            return self._data.setdefault(key, value)

    def __len__(self) -> int:
        return len(self._data)

    def items(self):
        return list(self._data.items())


def initial_comb(b: BuildingSet) -> BuildingSet:
    """A minimal flag building set inside connected flag ``b``.

    Grows a prefix from the smallest label, always adding the smallest label
    that keeps the prefix a member. If that stalls (possible for non-graphical
    ``b``), falls back to a binary decomposition of the ground set.
    """
    if not b.is_connected:
        raise ValueError("initial_comb needs a connected building set")
    ground = b.ground
    prefix = ground & -ground
    chosen = {prefix}
    while prefix != ground:
        for bit in iter_bits(ground & ~prefix):
            if prefix | bit in b.members:
                prefix |= bit
                chosen.add(prefix)
                break
        else:
            break
    if prefix == ground:
        return BuildingSet(chosen | set(iter_bits(ground)), ground, check=False)
    tree = binary_decomposition(b, ground)
    return BuildingSet(tree.nodes, ground, check=False)


def _acceptable(current: set, x: int) -> bool:
    for y in current:
        if y & x and (y | x) not in current and (y | x) != x:
            return False
    k = popcount(x)
    for d in current:
        if popcount(d) < k and d & ~x == 0 and (x ^ d) in current:
            return True
    return False


def flag_chain(base: BuildingSet, target: BuildingSet, *, reverse: bool = False) -> FlagChain:
    """Order ``target - base`` so that every prefix is a flag building set.

    Greedy: take the first acceptable candidate in (cardinality, bits)
    order, or in the reverse of that order when ``reverse`` is set.
    """
    if base.ground != target.ground or not base.members <= target.members:
        raise ValueError("base must be a subfamily of target on the same ground set")
    current = set(base.members)
    pending = sorted(target.members - base.members, key=subset_key, reverse=reverse)
    additions = []
    while pending:
        for idx, x in enumerate(pending):
            if _acceptable(current, x):
                break
        else:
            raise ChainError(f"no acceptable member among {[fmt(p) for p in pending]}")
        pending.pop(idx)
        current.add(x)
        additions.append(x)
    return FlagChain(base, additions, target)


@dataclass
class GammaEngine:
    """Incremental gamma with a shared memo. ``reverse`` flips the chain scan order."""

    memo: GammaMemo = field(default_factory=GammaMemo)
    reverse: bool = False
    check_increments: bool = True

    def gamma(self, b: BuildingSet) -> IntPolynomial:
        if not b.is_connected:
            return product(self.gamma(restriction(b, block)) for block in b.b_max)
        key = b.compact_key()
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if not b.is_flag:
            value = gamma_oracle(b)
        else:
            value = self._connected_flag(b)
        return self.memo.put(key, value)

    def _connected_flag(self, b: BuildingSet) -> IntPolynomial:
        if len(b) == 2 * b.n - 1:
            return IntPolynomial.one()
        chain = flag_chain(initial_comb(b), b, reverse=self.reverse)
        total = IntPolynomial.one()
        for before, x, after in chain.prefixes():
            # B|_I from the family without I; B/I is the same with or without I
            inc = (self.gamma(restriction(before, x)) * self.gamma(contraction(after, x))).shift(1)
            if self.check_increments and not inc.is_nonnegative():
                raise NegativeIncrement(f"adding {fmt(x)} gives increment {inc.to_list()}")
            total = total + inc
        return total


_default = GammaEngine()


def gamma_incremental(b: BuildingSet, memo: GammaMemo | None = None) -> IntPolynomial:
    if memo is None:
        return _default.gamma(b)
    return GammaEngine(memo=memo).gamma(b)

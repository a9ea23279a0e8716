"""Exact integer polynomials and the f -> h -> gamma pipeline.

Coefficients are Python ints, so arithmetic never overflows.
"""

from __future__ import annotations

import json
from typing import Iterable, Sequence


class PolynomialError(ValueError):
    """Base class for malformed polynomial input."""


class MalformedFPolynomial(PolynomialError):
    pass


class SymmetryViolation(PolynomialError):
    """Raised when an h-polynomial is not palindromic or gamma leaves a remainder."""


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class IntPolynomial:
    """Dense integer polynomial, coefficient ``i`` multiplies ``t**i``.

    Trailing zeros are trimmed on construction; the zero polynomial has no
    coefficients. Instances are immutable and hashable.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "_c", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    def __reduce__(self):
        return (IntPolynomial, (self._c,))

    @classmethod
    def one(cls) -> IntPolynomial:
        return cls((1,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPolynomial:
        return cls((0,) * degree + (coeff,))

    @classmethod
    def binomial_power(cls, k: int) -> IntPolynomial:
        """(1 + t)**k."""
        row = [1]
        for _ in range(k):
            row = [a + b for a, b in zip([0] + row, row + [0])]
        return cls(row)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError(i)
        return self._c[i] if i < len(self._c) else 0

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            return self._c == other._c
        if isinstance(other, (list, tuple)):
            return self._c == _trim(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self._c)})"

    def __str__(self) -> str:
        return str(self.to_list())

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self._c), len(other._c))
        return IntPolynomial(self[i] + other[i] for i in range(n))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self._c), len(other._c))
        return IntPolynomial(self[i] - other[i] for i in range(n))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self._c)

    def __mul__(self, other) -> IntPolynomial:
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self._c)
        if not self._c or not other._c:
            return IntPolynomial()
        out = [0] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def shift(self, k: int = 1) -> IntPolynomial:
        """Multiply by ``t**k``."""
        if not self._c:
            return self
        return IntPolynomial((0,) * k + self._c)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._c)

    def is_symmetric(self, d: int) -> bool:
        if self.degree > d:
            return False
        return all(self[i] == self[d - i] for i in range(d + 1))

    def taylor_shift(self, a: int) -> IntPolynomial:
        """Return p(t + a) by repeated synthetic division, O(deg**2)."""
        c = list(self._c)
        n = len(c)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                c[j] += a * c[j + 1]
        return IntPolynomial(c)

    def to_list(self) -> list[int]:
        return list(self._c) if self._c else [0]

    def to_json(self) -> str:
        return json.dumps(self.to_list())

    @classmethod
    def from_json(cls, text: str) -> IntPolynomial:
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(x, int) for x in data):
            raise PolynomialError("polynomial JSON must be an integer array")
        return cls(data)


def as_poly(p: IntPolynomial | Sequence[int]) -> IntPolynomial:
    return p if isinstance(p, IntPolynomial) else IntPolynomial(p)


def f_to_h(f: IntPolynomial | Sequence[int], d: int) -> IntPolynomial:
    """h-polynomial of a simple d-polytope from its f-polynomial: h(s) = f(s - 1)."""
    f = as_poly(f)
    if f.degree != d:
        raise MalformedFPolynomial(f"f-polynomial {f.to_list()} does not have degree {d}")
    if not f.is_nonnegative():
        raise MalformedFPolynomial(f"f-polynomial {f.to_list()} has a negative coefficient")
    return f.taylor_shift(-1)


def h_to_gamma(h: IntPolynomial | Sequence[int], d: int) -> IntPolynomial:
    """Expand a palindromic h in the basis t^i (1+t)^(d-2i) and return the gamma coefficients."""
    h = as_poly(h)
    if not h.is_symmetric(d):
        raise SymmetryViolation(f"h-polynomial {h.to_list()} is not symmetric of degree {d}")
    rem = h
    gamma = []
    for i in range(d // 2 + 1):
        g = rem[i]
        gamma.append(g)
        if g:
            rem = rem - IntPolynomial.binomial_power(d - 2 * i).shift(i) * g
    if not rem.is_zero():
        raise SymmetryViolation(f"nonzero remainder {rem.to_list()} expanding {h.to_list()}")
    return IntPolynomial(gamma)


def gamma_to_h(gamma: IntPolynomial | Sequence[int], d: int) -> IntPolynomial:
    gamma = as_poly(gamma)
    out = IntPolynomial()
    for i, g in enumerate(gamma):
        if g:
            out = out + IntPolynomial.binomial_power(d - 2 * i).shift(i) * g
    return out


def gamma_le(a: IntPolynomial | Sequence[int], b: IntPolynomial | Sequence[int]) -> bool:
    """Coefficient-wise comparison; missing coefficients read as zero."""
    a, b = as_poly(a), as_poly(b)
    n = max(len(a), len(b))
    return all(a[i] <= b[i] for i in range(n))


def product(polys: Iterable[IntPolynomial]) -> IntPolynomial:
    out = IntPolynomial.one()
    for p in polys:
        out = out * p
    return out

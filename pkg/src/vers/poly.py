"""Univariate polynomials over GF(p).

Coefficients are stored ascending (constant term first).  The zero
polynomial has no coefficients and degree -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import DuplicatePoint, InvalidConfig
from .field import PrimeField


def _normalize(coeffs, p: int) -> tuple:
    c = [x % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Poly:
    field: PrimeField
    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _normalize(self.coeffs, self.field.p))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, z: int) -> int:
        return evaluate(self, z)

    def __add__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(self.field, tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other):
        p = self.field.p
        if isinstance(other, int):
            return Poly(self.field, tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return Poly(self.field)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(self.field, tuple(x % p for x in out))

    __rmul__ = __mul__

    def descending(self, length: int | None = None) -> list[int]:
        """Coefficients highest power first, left-padded with zeros to ``length``."""
        c = list(self.coeffs[::-1])
        if length is not None:
            if len(c) > length:
                raise ValueError(f"degree {self.degree} does not fit in {length} slots")
            c = [0] * (length - len(c)) + c
        return c

    def to_json(self) -> list[int]:
        return list(self.coeffs)


def evaluate(poly: Poly, z: int) -> int:
    """Horner evaluation."""
    p = poly.field.p
    acc = 0
    for c in reversed(poly.coeffs):
        acc = (acc * z + c) % p
    return acc


@lru_cache(maxsize=4096)
def lagrange_weights(p: int, xs: tuple, z: int) -> tuple:
    """Weights ``w_k`` with ``g(z) = sum_k w_k g(xs[k])`` for every ``deg g < len(xs)``.

    ``w_k = prod_{j != k} (z - x_j) / (x_k - x_j)``.
    """
    if len(set(xs)) != len(xs):
        raise DuplicatePoint(f"interpolation points must be distinct: {xs}")
    out = []
    for k, xk in enumerate(xs):
        num = den = 1
        for j, xj in enumerate(xs):
            if j != k:
                num = num * (z - xj) % p
                den = den * (xk - xj) % p
        out.append(num * pow(den, -1, p) % p)
    return tuple(out)


def lagrange_interpolate(field: PrimeField, points: Sequence[tuple[int, int]]) -> Poly:
    """The unique polynomial of degree < len(points) through ``points``."""
    p = field.p
    xs = [x % p for x, _ in points]
    if len(set(xs)) != len(xs):
        raise DuplicatePoint(f"interpolation points must be distinct: {xs}")
    total = [0] * len(xs)
    for k, (xk, yk) in enumerate(points):
        basis = [1]
        den = 1
        for j, xj in enumerate(xs):
            if j == k:
                continue
            # basis *= (z - xj)
            basis = [(a - xj * b) % p for a, b in zip([0] + basis, basis + [0])]
            den = den * (xk - xj) % p
        scale = yk * pow(den, -1, p) % p
        for i, b in enumerate(basis):
            total[i] = (total[i] + scale * b) % p
    return Poly(field, tuple(total))


@dataclass(frozen=True)
class TargetFunction:
    """The polynomial ``f`` workers apply (coordinate-wise) to their encoded data."""

    poly: Poly

    def __post_init__(self):
        if self.poly.degree < 1:
            raise InvalidConfig("target function must have degree >= 1")

    @classmethod
    def from_coeffs(cls, field: PrimeField, coeffs: Sequence[int]) -> TargetFunction:
        """``coeffs`` ascending: ``[c0, c1, ..., cd]``."""
        return cls(Poly(field, tuple(coeffs)))

    @classmethod
    def power(cls, field: PrimeField, d: int) -> TargetFunction:
        """``f(x) = x**d``."""
        return cls(Poly(field, (0,) * d + (1,)))

    @property
    def field(self) -> PrimeField:
        return self.poly.field

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def degree_set(self) -> tuple:
        return tuple(i for i, c in enumerate(self.poly.coeffs) if c)

    def __call__(self, x: int) -> int:
        return evaluate(self.poly, x)


def compose_expand(f: TargetFunction, q: Poly) -> Poly:
    """Coefficients of ``f(q(z))``, via Horner in the polynomial ring."""
    field = q.field
    acc = Poly(field)
    for c in reversed(f.poly.coeffs):
        acc = acc * q + Poly(field, (c,))
    return acc

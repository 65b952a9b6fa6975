"""Prime-field arithmetic and dense linear algebra over GF(p).

Elements are stored as plain Python ints in ``[0, p)``; :class:`FieldElement`
is a thin operator-overloading wrapper for interactive use, while the
algorithms here work on ints directly for speed.

All matrices are immutable.  Column conventions for Vandermonde matrices are
descending powers (``z**D`` first).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from sympy import isprime

from .errors import DivisionByZero, DuplicatePoint

MERSENNE_31 = 2**31 - 1


@dataclass(frozen=True)
class PrimeField:
    """GF(p) for a prime ``p``."""

    p: int = MERSENNE_31

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or not isprime(self.p):
            raise ValueError(f"modulus {self.p!r} is not prime")

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.p, self)

    def __repr__(self):
        return f"GF({self.p})"

    # int-level operations
    def reduce(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in GF({self.p})")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def frac(self, num: int, den: int = 1) -> int:
        """The field image of the rational ``num/den``."""
        return num % self.p * self.inv(den) % self.p

    def random(self, rng, nonzero: bool = False) -> int:
        lo = 1 if nonzero else 0
        return rng.randrange(lo, self.p)

    def signed(self, a: int) -> int:
        """Representative of ``a`` in ``(-p/2, p/2]``, handy for display."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a


class FieldElement:
    """An element of a :class:`PrimeField`, always reduced."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        self.value = value % field.p
        self.field = field

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field.p != self.field.p:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def _wrap(self, v: int) -> FieldElement:
        return FieldElement(v, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(-self.value)

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inv(self) -> FieldElement:
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.value == other.value and self.field.p == other.field.p
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"


Scalar = Union[int, FieldElement]


def _as_int(x: Scalar) -> int:
    return x.value if isinstance(x, FieldElement) else int(x)


@dataclass(frozen=True)
class FieldMatrix:
    """Dense ``rows x cols`` matrix over GF(p), entries stored row-major."""

    field: PrimeField
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, field: PrimeField, rows: Sequence[Sequence[Scalar]], cols: int | None = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        p = field.p
        entries = tuple(_as_int(x) % p for r in rows for x in r)
        return cls(field, len(rows), cols, entries)

    @classmethod
    def zeros(cls, field: PrimeField, rows: int, cols: int):
        return cls(field, rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, field: PrimeField, n: int):
        return cls(field, n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> FieldMatrix:
        return FieldMatrix.from_rows(self.field, [self.column(j) for j in range(self.cols)], self.rows)

    def submatrix(self, rows: Iterable[int] | None = None, cols: Iterable[int] | None = None) -> FieldMatrix:
        ri = range(self.rows) if rows is None else list(rows)
        ci = range(self.cols) if cols is None else list(cols)
        ci = list(ci)
        return FieldMatrix.from_rows(self.field, [[self[i, j] for j in ci] for i in ri], len(ci))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __matmul__(self, other):
        if isinstance(other, FieldMatrix):
            return matmul(self, other)
        return NotImplemented

    def matvec(self, x: Sequence[Scalar]) -> list[int]:
        if len(x) != self.cols:
            raise ValueError("dimension mismatch")
        p = self.field.p
        xs = [_as_int(v) for v in x]
        return [sum(a * b for a, b in zip(self.row(i), xs)) % p for i in range(self.rows)]

    def to_json(self) -> dict:
        return {"p": self.field.p, "rows": self.rows, "cols": self.cols, "entries": list(self.entries)}

    @classmethod
    def from_json(cls, data: dict) -> FieldMatrix:
        field = PrimeField(int(data["p"]))
        return cls(field, int(data["rows"]), int(data["cols"]), tuple(int(e) % field.p for e in data["entries"]))


def matmul(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    if a.cols != b.rows:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    p = a.field.p
    bcols = [b.column(j) for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        r = a.row(i)
        out.extend(sum(x * y for x, y in zip(r, c)) % p for c in bcols)
    return FieldMatrix(a.field, a.rows, b.cols, tuple(out))


def vstack(field: PrimeField, blocks: Sequence[FieldMatrix], cols: int | None = None) -> FieldMatrix:
    if cols is None:
        cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise ValueError("column counts differ")
    entries = tuple(e for b in blocks for e in b.entries)
    return FieldMatrix(field, sum(b.rows for b in blocks), cols, entries)


def hstack(field: PrimeField, blocks: Sequence[FieldMatrix], rows: int | None = None) -> FieldMatrix:
    if rows is None:
        rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise ValueError("row counts differ")
    out = []
    for i in range(rows):
        for b in blocks:
            out.extend(b.row(i))
    return FieldMatrix(field, rows, sum(b.cols for b in blocks), tuple(out))


def vandermonde(field: PrimeField, points: Sequence[Scalar], degree: int) -> FieldMatrix:
    """``len(points) x (degree+1)`` Vandermonde matrix, columns ``z**degree .. z**0``."""
    p = field.p
    pts = [_as_int(x) % p for x in points]
    if len(set(pts)) != len(pts):
        raise DuplicatePoint(f"points must be distinct: {pts}")
    rows = []
    for x in pts:
        powers = [1]
        for _ in range(degree):
            powers.append(powers[-1] * x % p)
        rows.append(powers[::-1])
    return FieldMatrix.from_rows(field, rows, degree + 1)


def rref(a: FieldMatrix) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    p = a.field.p
    m = a.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(a.cols):
        if r == a.rows:
            break
        piv = next((i for i in range(r, a.rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        pr = m[r]
        for i in range(a.rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], pr)]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: FieldMatrix) -> int:
    return len(rref(a)[1])


def null_space(a: FieldMatrix) -> FieldMatrix:
    """Basis of ``{x : A x = 0}`` as the rows of the returned matrix.

    The basis is the canonical one read off the RREF: one vector per free
    column, carrying 1 at that column and 0 at every other free column.
    """
    p = a.field.p
    m, pivots = rref(a)
    free = [c for c in range(a.cols) if c not in set(pivots)]
    basis = []
    for fc in free:
        x = [0] * a.cols
        x[fc] = 1
        for r, pc in enumerate(pivots):
            x[pc] = -m[r][fc] % p
        basis.append(x)
    return FieldMatrix.from_rows(a.field, basis, a.cols)


def left_null_space(a: FieldMatrix) -> FieldMatrix:
    """Basis ``B`` with ``B @ A == 0`` and ``rows(B) == rows(A) - rank(A)``."""
    return null_space(a.transpose())


@dataclass(frozen=True)
class Unique:
    x: tuple


@dataclass(frozen=True)
class Underdetermined:
    particular: tuple
    null_basis: FieldMatrix

    @property
    def dimension(self) -> int:
        return self.null_basis.rows


@dataclass(frozen=True)
class Inconsistent:
    pass


SolutionSet = Union[Unique, Underdetermined, Inconsistent]


def solve(a: FieldMatrix, y: Sequence[Scalar]) -> SolutionSet:
    """Solve ``A x = y``; inconsistency is a return value, not an exception."""
    if len(y) != a.rows:
        raise ValueError("rows(A) != len(y)")
    p = a.field.p
    aug = FieldMatrix.from_rows(
        a.field, [list(a.row(i)) + [_as_int(y[i])] for i in range(a.rows)], a.cols + 1
    )
    m, pivots = rref(aug)
    if a.cols in pivots:
        return Inconsistent()
    x = [0] * a.cols
    for r, pc in enumerate(pivots):
        x[pc] = m[r][a.cols] % p
    if len(pivots) == a.cols:
        return Unique(tuple(x))
    return Underdetermined(tuple(x), null_space(a))

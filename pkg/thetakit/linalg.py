"""Exact matrices over GF(p) and the rationals."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Final, Union

from propcache.api import cached_property
from sympy import isprime

from .exceptions import ArgumentError, FormatError

_LOGGER = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


def is_prime(p: int) -> bool:
    return p >= 2 and bool(isprime(p))


def require_prime(p: int) -> None:
    if not is_prime(p):
        raise ArgumentError(f"{p} is not a prime")


@dataclass(frozen=True)
class Field:
    """GF(p) when ``p`` is set, otherwise the rationals."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None:
            require_prime(self.p)

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def tag(self) -> str:
        return "qq" if self.p is None else f"gf:{self.p}"

    def normalize(self, value: Scalar) -> Scalar:
        if self.p is None:
            return value if isinstance(value, Fraction) and value.denominator != 1 else int(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ArgumentError(f"{value} has no image in GF({self.p})")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return value % self.p

    def __str__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"


QQ: Final = Field()


def GF(p: int) -> Field:
    return Field(p)


def parse_field(tag: str) -> Field:
    if tag == "qq":
        return QQ
    prefix, _, value = tag.partition(":")
    if prefix != "gf" or not value.isdigit():
        raise FormatError(f"unknown field tag {tag!r}")
    return Field(int(value))


def rank_gf2_masks(masks: Iterable[int]) -> int:
    """Rank over GF(2) of rows given as bitmasks."""
    basis: list[int] = []
    for vector in masks:
        for b in basis:
            vector = min(vector, vector ^ b)
        if vector:
            basis.append(vector)
    return len(basis)


def _rank_gf2(rows: Sequence[Sequence[Scalar]]) -> int:
    return rank_gf2_masks(
        sum(1 << c for c, entry in enumerate(row) if entry % 2) for row in rows
    )


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank over GF(p) by modular Gaussian elimination."""
    if p == 2:
        return _rank_gf2(rows)
    m = [[entry % p for entry in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inverse = pow(m[rank][col], -1, p)
        pivot_row = m[rank]
        for r in range(rank + 1, nrows):
            factor = m[r][col] * inverse % p
            if factor:
                row = m[r]
                for c in range(col, ncols):
                    row[c] = (row[c] - factor * pivot_row[c]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_integer(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(row) for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    previous = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pivot_value = m[rank][col]
        for r in range(rank + 1, nrows):
            lead = m[r][col]
            for c in range(col + 1, ncols):
                m[r][c] = (pivot_value * m[r][c] - lead * m[rank][c]) // previous
            m[r][col] = 0
        previous = pivot_value
        rank += 1
        if rank == nrows:
            break
    return rank


def _clear_denominators(rows: Sequence[Sequence[Scalar]]) -> list[list[int]]:
    cleared = []
    for row in rows:
        scale = lcm(*(Fraction(entry).denominator for entry in row)) if row else 1
        cleared.append([int(Fraction(entry) * scale) for entry in row])
    return cleared


class ExactMatrix:
    """An immutable ``nrows x ncols`` matrix with entries in ``field``."""

    def __init__(
        self,
        rows: Iterable[Iterable[Scalar]],
        field: Field = QQ,
        *,
        ncols: int | None = None,
    ) -> None:
        data = tuple(tuple(field.normalize(entry) for entry in row) for row in rows)
        width = ncols if ncols is not None else (len(data[0]) if data else 0)
        for i, row in enumerate(data):
            if len(row) != width:
                raise ArgumentError(f"row {i} has {len(row)} entries, expected {width}")
        self._rows = data
        self._ncols = width
        self._field = field

    @classmethod
    def from_function(
        cls, nrows: int, ncols: int, entry: Callable[[int, int], Scalar], field: Field = QQ
    ) -> ExactMatrix:
        return cls(
            ([entry(i, j) for j in range(ncols)] for i in range(nrows)), field, ncols=ncols
        )

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field = QQ) -> ExactMatrix:
        return cls.from_function(nrows, ncols, lambda i, j: 0, field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> ExactMatrix:
        return cls.from_function(n, n, lambda i, j: int(i == j), field)

    @property
    def rows(self) -> tuple[tuple[Scalar, ...], ...]:
        return self._rows

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self._rows), self._ncols)

    @property
    def field(self) -> Field:
        return self._field

    def __getitem__(self, index: tuple[int, int]) -> Scalar:
        i, j = index
        return self._rows[i][j]

    @cached_property
    def rank(self) -> int:
        if not self._rows or not self._ncols:
            return 0
        if self._field.p is not None:
            return rank_mod_p(self._rows, self._field.p)  # type: ignore[arg-type]
        return rank_integer(_clear_denominators(self._rows))

    @property
    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and all(
            self._rows[i][j] == self._rows[j][i]
            for i in range(self.nrows)
            for j in range(i + 1, self.ncols)
        )

    def nonzero_pattern(self) -> tuple[int, ...]:
        """Bitmask of the nonzero columns of every row."""
        return tuple(
            sum(1 << j for j, entry in enumerate(row) if entry) for row in self._rows
        )

    def transpose(self) -> ExactMatrix:
        return ExactMatrix.from_function(
            self._ncols, self.nrows, lambda i, j: self._rows[j][i], self._field
        )

    def _require_same_field(self, other: ExactMatrix) -> None:
        if other.field != self._field:
            raise ArgumentError(f"field mismatch: {self._field} and {other.field}")

    def matmul(self, other: ExactMatrix) -> ExactMatrix:
        self._require_same_field(other)
        if self._ncols != other.nrows:
            raise ArgumentError(f"cannot multiply {self.shape} by {other.shape}")
        columns = list(zip(*other.rows, strict=True)) if other.nrows else []
        return ExactMatrix.from_function(
            self.nrows,
            other.ncols,
            lambda i, j: sum(a * b for a, b in zip(self._rows[i], columns[j], strict=True)),
            self._field,
        )

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        return self.matmul(other)

    def add(self, other: ExactMatrix) -> ExactMatrix:
        self._require_same_field(other)
        if self.shape != other.shape:
            raise ArgumentError(f"cannot add {self.shape} and {other.shape}")
        return ExactMatrix.from_function(
            self.nrows, self._ncols, lambda i, j: self._rows[i][j] + other.rows[i][j], self._field
        )

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        return self.add(other)

    def scale(self, factor: Scalar) -> ExactMatrix:
        return ExactMatrix.from_function(
            self.nrows, self._ncols, lambda i, j: factor * self._rows[i][j], self._field
        )

    def to_field(self, field: Field) -> ExactMatrix:
        """Reduce a rational matrix into ``field``."""
        return ExactMatrix(self._rows, field, ncols=self._ncols)

    def to_text(self) -> str:
        lines = [f"{self._field.tag} {self.nrows} {self._ncols}"]
        lines.extend(" ".join(str(entry) for entry in row) for row in self._rows)
        return "\n".join(lines)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self._field, self.shape, self._rows) == (other.field, other.shape, other.rows)

    def __hash__(self) -> int:
        return hash((self._field, self.shape, self._rows))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.nrows}x{self._ncols} over {self._field})"


def rank(matrix: ExactMatrix) -> int:
    return matrix.rank


def parse_matrix_text(text: str) -> ExactMatrix:
    """Inverse of :meth:`ExactMatrix.to_text`."""
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise FormatError("empty matrix text")
    header = lines[0].split()
    if len(header) != 3 or not header[1].isdigit() or not header[2].isdigit():
        raise FormatError(f"expected '<field> <rows> <cols>', got {lines[0]!r}", 1)
    field = parse_field(header[0])
    nrows, ncols = int(header[1]), int(header[2])
    if len(lines) - 1 != nrows:
        raise FormatError(f"expected {nrows} rows, got {len(lines) - 1}", 1)
    rows = []
    for line_no, line in enumerate(lines[1:], start=2):
        try:
            rows.append([Fraction(token) for token in line.split()])
        except ValueError as err:
            raise FormatError(f"invalid entry in {line!r}", line_no) from err
    try:
        return ExactMatrix(rows, field, ncols=ncols)
    except ArgumentError as err:
        raise FormatError(str(err)) from err


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0; zero when k > n."""
    if n < 0 or k < 0:
        raise ArgumentError(f"binomial({n}, {k}) needs n >= 0 and k >= 0")
    return comb(n, k)


def binomial_sum(x: int, low: int, high: int) -> int:
    """Sum of C(x, t) for t in [max(low, 0), high]."""
    return sum(binomial(x, t) for t in range(max(low, 0), high + 1))


@dataclass(frozen=True)
class CoeffVector:
    """Coefficients of a polynomial in the binomial basis over GF(p).

    ``coeffs[t]`` multiplies ``C(x, t)``.
    """

    p: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x: int) -> int:
        return sum(a * binomial(x, t) for t, a in enumerate(self.coeffs)) % self.p

    def __str__(self) -> str:
        return " ".join(str(a) for a in self.coeffs)


def finite_differences(f: Callable[[int], int], degree: int, p: int) -> tuple[int, ...]:
    """Forward differences of ``f`` at zero, reduced mod ``p``."""
    values = [f(j) for j in range(degree + 1)]
    return tuple(
        sum((-1) ** (t - j) * comb(t, j) * values[j] for j in range(t + 1)) % p
        for t in range(degree + 1)
    )


def binomial_basis_coeffs(residues: Iterable[int], p: int) -> CoeffVector:
    """Binomial-basis coefficients of ``prod_{r in R} (x - r)`` over GF(p)."""
    require_prime(p)
    values = sorted(set(residues))
    if not values:
        raise ArgumentError("residue set must be nonempty")
    if values[0] < 0 or values[-1] >= p:
        raise ArgumentError(f"residues {values} must lie in 0..{p - 1}")

    def product_at(x: int) -> int:
        result = 1
        for r in values:
            result *= x - r
        return result % p

    return CoeffVector(p, finite_differences(product_at, len(values), p))


def fermat_basis_coeffs(r: int, p: int) -> CoeffVector:
    """Binomial-basis coefficients of ``1 - (x - r)^(p-1)`` over GF(p)."""
    require_prime(p)
    if not 0 <= r < p:
        raise ArgumentError(f"residue {r} must lie in 0..{p - 1}")
    return CoeffVector(p, finite_differences(lambda x: (1 - (x - r) ** (p - 1)) % p, p - 1, p))

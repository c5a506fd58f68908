"""Set families over ``[l]`` and the matrices built from them."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations

from .const import EMPTY_SET_TOKEN, WitnessVariant
from .exceptions import ArgumentError, FormatError, PreconditionError
from .graph import iter_bits
from .linalg import (
    GF,
    QQ,
    ExactMatrix,
    Field,
    binomial,
    binomial_basis_coeffs,
    binomial_sum,
    fermat_basis_coeffs,
    require_prime,
)

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class SetFamily:
    """An ordered list of subsets of ``{1, ..., l}``.

    Each set is a bitmask where bit ``e - 1`` stands for element ``e``.
    Repeated sets are allowed.
    """

    l: int  # noqa: E741
    sets: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.l < 0:
            raise ArgumentError(f"universe size must be >= 0, got {self.l}")
        bound = 1 << self.l
        for index, mask in enumerate(self.sets):
            if not 0 <= mask < bound:
                raise ArgumentError(f"set {index} is not a subset of [{self.l}]")

    @classmethod
    def from_lists(cls, l: int, members: Iterable[Iterable[int]]) -> SetFamily:  # noqa: E741
        sets = []
        for index, elements in enumerate(members):
            mask = 0
            for e in elements:
                if not 1 <= e <= l:
                    raise ArgumentError(f"element {e} of set {index} is outside [{l}]")
                mask |= 1 << (e - 1)
            sets.append(mask)
        return cls(l, tuple(sets))

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sets)

    def __getitem__(self, index: int) -> int:
        return self.sets[index]

    def members(self, index: int) -> tuple[int, ...]:
        return tuple(e + 1 for e in iter_bits(self.sets[index]))

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(mask.bit_count() for mask in self.sets)

    def is_uniform(self, k: int | None = None) -> bool:
        sizes = set(self.sizes)
        if k is None:
            return len(sizes) <= 1
        return sizes <= {k}

    def slice(self, start: int, stop: int) -> SetFamily:
        return SetFamily(self.l, self.sets[start:stop])

    def to_text(self) -> str:
        lines = [f"{self.l} {len(self.sets)}"]
        for index in range(len(self.sets)):
            members = self.members(index)
            lines.append(" ".join(map(str, members)) if members else EMPTY_SET_TOKEN)
        return "\n".join(lines)


def parse_family_text(text: str) -> SetFamily:
    """Inverse of :meth:`SetFamily.to_text`; ``#`` lines are ignored."""
    lines = [
        (line_no, raw.strip())
        for line_no, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.strip().startswith("#")
    ]
    if not lines:
        raise FormatError("empty family text")
    header_line, header = lines[0]
    try:
        l, count = (int(token) for token in header.split())  # noqa: E741
    except ValueError as err:
        raise FormatError(f"expected 'l count', got {header!r}", header_line) from err
    body = lines[1:]
    if len(body) != count:
        raise FormatError(f"expected {count} sets, got {len(body)}", header_line)
    members: list[list[int]] = []
    for line_no, line in body:
        if line == EMPTY_SET_TOKEN:
            members.append([])
            continue
        try:
            members.append([int(token) for token in line.split()])
        except ValueError as err:
            raise FormatError(f"invalid set {line!r}", line_no) from err
    try:
        return SetFamily.from_lists(l, members)
    except ArgumentError as err:
        raise FormatError(str(err)) from err


def parse_inline_family(l: int, text: str) -> SetFamily:  # noqa: E741
    """Parse ``1,2;2,3;-`` style families from the command line."""
    members: list[list[int]] = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk == EMPTY_SET_TOKEN:
            members.append([])
            continue
        try:
            members.append([int(token) for token in chunk.split(",") if token.strip()])
        except ValueError as err:
            raise FormatError(f"invalid set {chunk!r}") from err
    return SetFamily.from_lists(l, members)


def _check_t(l: int, t: int) -> None:  # noqa: E741
    if not 0 <= t <= l:
        raise ArgumentError(f"t must lie in 0..{l}, got {t}")


def t_subsets(l: int, t: int) -> tuple[int, ...]:  # noqa: E741
    """All ``t``-subsets of ``[l]`` as bitmasks in lexicographic order."""
    _check_t(l, t)
    return tuple(
        sum(1 << (e - 1) for e in combo) for combo in combinations(range(1, l + 1), t)
    )


def all_k_subsets(l: int, k: int) -> SetFamily:  # noqa: E741
    return SetFamily(l, t_subsets(l, k))


def _require_same_universe(family: SetFamily, other: SetFamily) -> None:
    if family.l != other.l:
        raise ArgumentError(f"universe sizes differ: {family.l} != {other.l}")


def inclusion_matrix(family: SetFamily, columns: SetFamily, field: Field = QQ) -> ExactMatrix:
    """Entry ``(i, j)`` is 1 iff ``columns[j]`` is a subset of ``family[i]``."""
    _require_same_universe(family, columns)
    return ExactMatrix.from_function(
        len(family),
        len(columns),
        lambda i, j: int(columns[j] & ~family[i] == 0),
        field,
    )


def t_inclusion_matrix(family: SetFamily, t: int, field: Field = QQ) -> ExactMatrix:
    """Inclusion matrix against every ``t``-subset of the universe."""
    _check_t(family.l, t)
    return inclusion_matrix(family, all_k_subsets(family.l, t), field)


def t_intersection_matrix(
    family: SetFamily, columns: SetFamily, t: int, field: Field = QQ
) -> ExactMatrix:
    """Entry ``(i, j)`` is ``C(|F_i & T_j|, t)``."""
    _require_same_universe(family, columns)
    _check_t(family.l, t)
    return ExactMatrix.from_function(
        len(family),
        len(columns),
        lambda i, j: binomial((family[i] & columns[j]).bit_count(), t),
        field,
    )


def _check_identity_args(family: SetFamily, k: int, i: int, t: int) -> None:
    if not 0 <= t <= i <= k <= family.l:
        raise ArgumentError(f"need 0 <= t <= i <= k <= l, got t={t} i={i} k={k} l={family.l}")
    if not family.is_uniform(k):
        raise PreconditionError(f"family is not {k}-uniform")


def inclusion_identity_defect(family: SetFamily, k: int, i: int, t: int) -> int:
    """Number of entries where ``I(F,i) I(i,t)`` differs from ``C(k-t, i-t) I(F,t)``."""
    _check_identity_args(family, k, i, t)
    left = inclusion_matrix(family, all_k_subsets(family.l, i)) @ inclusion_matrix(
        all_k_subsets(family.l, i), all_k_subsets(family.l, t)
    )
    right = t_inclusion_matrix(family, t).scale(binomial(k - t, i - t))
    return sum(
        a != b
        for row_a, row_b in zip(left.rows, right.rows, strict=True)
        for a, b in zip(row_a, row_b, strict=True)
    )


def check_inclusion_identity(family: SetFamily, k: int, i: int, t: int) -> bool:
    return inclusion_identity_defect(family, k, i, t) == 0


def _product_at(residues: Sequence[int], x: int, p: int) -> int:
    result = 1
    for r in residues:
        result = result * (x - r) % p
    return result


def _fermat_at(residues: Sequence[int], x: int, p: int) -> int:
    return sum(1 - pow(x - r, p - 1, p) for r in residues) % p


def witness_matrix_modular(
    family: SetFamily,
    columns: SetFamily,
    residues: Iterable[int],
    p: int,
    variant: WitnessVariant = WitnessVariant.PRODUCT,
) -> ExactMatrix:
    """Evaluate the witness polynomial on every pairwise intersection size.

    ``PRODUCT`` uses ``prod_{r in R} (x - r)``; ``FERMAT`` uses
    ``sum_{r in R} 1 - (x - r)^(p-1)``. Both are computed directly mod ``p``.
    """
    require_prime(p)
    values = sorted(set(residues))
    if not values or values[0] < 0 or values[-1] >= p:
        raise ArgumentError(f"residues {values} must be a nonempty subset of 0..{p - 1}")
    _require_same_universe(family, columns)
    evaluate = _product_at if variant is WitnessVariant.PRODUCT else _fermat_at
    return ExactMatrix.from_function(
        len(family),
        len(columns),
        lambda i, j: evaluate(values, (family[i] & columns[j]).bit_count(), p),
        GF(p),
    )


def witness_matrix_from_intersection_sums(
    family: SetFamily,
    columns: SetFamily,
    residues: Iterable[int],
    p: int,
    variant: WitnessVariant = WitnessVariant.PRODUCT,
) -> ExactMatrix:
    """Same matrix as :func:`witness_matrix_modular`, as a combination of ``M_t``.

    Builds ``sum_t a_t M_t`` from the binomial-basis coefficients.
    """
    values = sorted(set(residues))
    if variant is WitnessVariant.PRODUCT:
        combined = list(binomial_basis_coeffs(values, p).coeffs)
    else:
        combined = [0] * p
        for r in values:
            for t, b in enumerate(fermat_basis_coeffs(r, p).coeffs):
                combined[t] = (combined[t] + b) % p
    field = GF(p)
    result = ExactMatrix.zeros(len(family), len(columns), field)
    for t, coefficient in enumerate(combined):
        if coefficient and t <= family.l:
            result = result + t_intersection_matrix(family, columns, t, field).scale(coefficient)
    return result


def witness_matrix_real(
    family: SetFamily, columns: SetFamily, values: Iterable[int]
) -> ExactMatrix:
    """Entry ``(i, j)`` is ``prod_{v in L} (|F_i & T_j| - v)`` over the rationals."""
    _require_same_universe(family, columns)
    allowed = sorted(set(values))

    def entry(i: int, j: int) -> int:
        x = (family[i] & columns[j]).bit_count()
        result = 1
        for v in allowed:
            result *= x - v
        return result

    return ExactMatrix.from_function(len(family), len(columns), entry, QQ)


def product_rank_cap(l: int, s: int) -> int:  # noqa: E741
    """Rank cap for the product witness: sum of C(l, t) for t <= s."""
    return binomial_sum(l, 0, s)


def fermat_rank_cap(l: int, p: int) -> int:  # noqa: E741
    return binomial_sum(l, 0, p - 1)


def uniform_rank_cap(l: int, s: int) -> int:  # noqa: E741
    """Rank cap when every set has the same size ``k >= s``."""
    return binomial(l, s)


def restricted_rank_cap(l: int, s: int, r: int) -> int:  # noqa: E741
    """Rank cap when set sizes take ``r`` values, all above ``s - r``."""
    return r * binomial_sum(l, s - r + 1, s)

"""Sets ``L`` of allowed intersection sizes."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass

from .exceptions import ArgumentError, FormatError
from .linalg import require_prime


class LSpec(ABC):
    """A set of non-negative integers with a finite description."""

    @abstractmethod
    def contains(self, x: int) -> bool:
        """Membership for ``x >= 0``."""

    @property
    @abstractmethod
    def descriptor(self) -> str:
        """Text form accepted by :func:`parse_lspec`."""

    @property
    def max_finite(self) -> int:
        """Largest value that needs to be listed explicitly (0 if none)."""
        return 0

    def table(self, size: int) -> tuple[bool, ...]:
        """Membership of ``0..size``."""
        return tuple(self.contains(x) for x in range(size + 1))

    def __str__(self) -> str:
        return self.descriptor


def _join(values: frozenset[int]) -> str:
    return ",".join(str(v) for v in sorted(values))


@dataclass(frozen=True)
class FiniteL(LSpec):
    values: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", frozenset(self.values))
        if not self.values:
            raise ArgumentError("a finite L must be nonempty")
        if min(self.values) < 0:
            raise ArgumentError(f"L must contain non-negative integers, got {_join(self.values)}")

    @property
    def s(self) -> int:
        return len(self.values)

    def contains(self, x: int) -> bool:
        return x in self.values

    @property
    def descriptor(self) -> str:
        return f"finite:{_join(self.values)}"

    @property
    def max_finite(self) -> int:
        return max(self.values)


@dataclass(frozen=True)
class ModularL(LSpec):
    """Integers whose residue mod ``p`` lies in ``residues``."""

    p: int
    residues: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "residues", frozenset(self.residues))
        require_prime(self.p)
        if not self.residues:
            raise ArgumentError("residue set must be nonempty")
        if min(self.residues) < 0 or max(self.residues) >= self.p:
            raise ArgumentError(f"residues {_join(self.residues)} must lie in 0..{self.p - 1}")

    @property
    def s(self) -> int:
        return len(self.residues)

    def contains(self, x: int) -> bool:
        return x % self.p in self.residues

    @property
    def descriptor(self) -> str:
        return f"mod:{self.p}:{_join(self.residues)}"


@dataclass(frozen=True)
class ThresholdL(LSpec):
    """All ``x >= 1``: adjacency means the sets intersect."""

    def contains(self, x: int) -> bool:
        return x >= 1

    @property
    def descriptor(self) -> str:
        return "threshold"


@dataclass(frozen=True)
class CofiniteL(LSpec):
    """All non-negative integers except ``excluded``."""

    excluded: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "excluded", frozenset(self.excluded))
        if self.excluded and min(self.excluded) < 0:
            raise ArgumentError("excluded values must be non-negative")

    def contains(self, x: int) -> bool:
        return x not in self.excluded

    @property
    def descriptor(self) -> str:
        return f"cofinite-excl:{_join(self.excluded)}"

    @property
    def max_finite(self) -> int:
        return max(self.excluded, default=0)


def member(lspec: LSpec, x: int) -> bool:
    if x < 0:
        raise ArgumentError(f"intersection sizes are non-negative, got {x}")
    return lspec.contains(x)


def odd_numbers() -> ModularL:
    return ModularL(2, frozenset({1}))


def below(k: int) -> FiniteL:
    """``{0, ..., k-1}``."""
    if k < 1:
        raise ArgumentError(f"k must be at least 1, got {k}")
    return FiniteL(frozenset(range(k)))


def _parse_values(text: str, descriptor: str, *, allow_empty: bool = False) -> frozenset[int]:
    if not text:
        if allow_empty:
            return frozenset()
        raise FormatError(f"no values in L descriptor {descriptor!r}")
    try:
        return frozenset(int(token) for token in text.split(","))
    except ValueError as err:
        raise FormatError(f"invalid values in L descriptor {descriptor!r}") from err


def parse_lspec(text: str) -> LSpec:
    """Parse ``finite:0,1``, ``mod:3:1,2``, ``threshold`` or ``cofinite-excl:0``."""
    descriptor = text.strip()
    kind, _, rest = descriptor.partition(":")
    if kind == "threshold" and not rest:
        return ThresholdL()
    if kind == "finite":
        return FiniteL(_parse_values(rest, descriptor))
    if kind == "cofinite-excl":
        return CofiniteL(_parse_values(rest, descriptor, allow_empty=True))
    if kind == "mod":
        modulus, _, residues = rest.partition(":")
        if not modulus.isdigit():
            raise FormatError(f"invalid modulus in L descriptor {descriptor!r}")
        return ModularL(int(modulus), _parse_values(residues, descriptor))
    raise FormatError(f"unknown L descriptor {descriptor!r}")

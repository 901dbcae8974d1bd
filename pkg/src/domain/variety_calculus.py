"""Variety and entropy measures.

Variety is the number of distinguishable states of a set, reported both as an
exact count and in bits (log2 of the count). Counts are Python integers so that
sequence spaces of any length are counted without overflow; bits are derived
from the count on demand.
"""

import itertools
import logging
import math
from collections.abc import Callable, Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from domain.exceptions import DomainError, EnumerationLimitError, ValidationError

log = logging.getLogger(__name__)

PROBABILITY_TOLERANCE = 1e-9
BRUTE_FORCE_LIMIT = 10**7

# Exact float conversion is safe up to the 53-bit mantissa.
_MANTISSA_BITS = 53


def log2_exact(count: int) -> float:
    """log2 of an arbitrarily large positive integer.

    The integer is shifted down to its top 53 bits, which convert to a float
    without loss, and the shift is added back as an integer exponent.
    """
    if count < 1:
        raise DomainError(f"log2 is undefined for count {count}")
    shift = count.bit_length() - _MANTISSA_BITS
    if shift <= 0:
        return math.log2(count)
    return math.log2(count >> shift) + shift


@dataclass(frozen=True)
class VarietyMeasure:
    """Exact count of distinguishable states plus its logarithmic form."""

    count: int

    def __post_init__(self) -> None:
        if self.count < 0:
            raise ValidationError(f"Variety count must be non-negative, got {self.count}")

    @property
    def bits(self) -> float:
        if self.count == 0:
            return -math.inf
        return log2_exact(self.count)


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[Hashable, ...]

    def __post_init__(self) -> None:
        if not self.symbols:
            raise ValidationError("Alphabet must contain at least one symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValidationError("Alphabet symbols must be distinct")

    @classmethod
    def of(cls, symbols: Iterable[Hashable]) -> "Alphabet":
        return cls(tuple(symbols))

    def __len__(self) -> int:
        return len(self.symbols)

    def index(self, symbol: Hashable) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError as e:
            raise ValidationError(f"Symbol {symbol!r} is not in the alphabet") from e


@dataclass(frozen=True)
class SuccessorConstraint:
    """Boolean relation allowed[predecessor][successor] over alphabet indices."""

    allowed: tuple[tuple[bool, ...], ...]

    def __post_init__(self) -> None:
        size = len(self.allowed)
        if size == 0 or any(len(row) != size for row in self.allowed):
            raise ValidationError("Successor relation must be a non-empty square matrix")

    @property
    def size(self) -> int:
        return len(self.allowed)

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int | bool]]) -> "SuccessorConstraint":
        return cls(tuple(tuple(bool(cell) for cell in row) for row in matrix))

    @classmethod
    def from_predicate(cls, size: int, predicate: Callable[[int, int], bool]) -> "SuccessorConstraint":
        return cls(tuple(tuple(bool(predicate(i, j)) for j in range(size)) for i in range(size)))

    @classmethod
    def max_step(cls, size: int, step: int = 1) -> "SuccessorConstraint":
        """Adjacent indices may differ by at most ``step``."""
        return cls.from_predicate(size, lambda i, j: abs(i - j) <= step)

    def permits(self, predecessor: int, successor: int) -> bool:
        return self.allowed[predecessor][successor]

    def transfer_matrix(self) -> np.ndarray:
        """0/1 transfer matrix holding Python ints, so products stay exact."""
        return np.array([[int(cell) for cell in row] for row in self.allowed], dtype=object)


@dataclass(frozen=True)
class SequenceSpace:
    alphabet: Alphabet
    length: int
    constraint: Optional[SuccessorConstraint] = None
    initial_allowed: Optional[frozenset[Hashable]] = None

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValidationError(f"Sequence length must be at least 1, got {self.length}")
        if self.constraint is not None and self.constraint.size != len(self.alphabet):
            raise ValidationError(
                f"Constraint is {self.constraint.size}x{self.constraint.size} "
                f"but the alphabet has {len(self.alphabet)} symbols"
            )
        if self.initial_allowed is not None:
            for symbol in self.initial_allowed:
                self.alphabet.index(symbol)

    def initial_indices(self) -> list[int]:
        if self.initial_allowed is None:
            return list(range(len(self.alphabet)))
        return [i for i, symbol in enumerate(self.alphabet.symbols) if symbol in self.initial_allowed]

    def unconstrained(self) -> "SequenceSpace":
        return SequenceSpace(self.alphabet, self.length, None, self.initial_allowed)


@dataclass(frozen=True)
class Distribution:
    probabilities: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.probabilities:
            raise ValidationError("Distribution must have at least one outcome")
        if any(p < 0 or math.isnan(p) for p in self.probabilities):
            raise ValidationError("Probabilities must be non-negative")
        total = math.fsum(self.probabilities)
        if abs(total - 1.0) > PROBABILITY_TOLERANCE:
            raise ValidationError(f"Probabilities must sum to 1, got {total!r}")

    @classmethod
    def of(cls, probabilities: Iterable[float]) -> "Distribution":
        return cls(tuple(float(p) for p in probabilities))

    @classmethod
    def uniform(cls, outcomes: int) -> "Distribution":
        if outcomes < 1:
            raise ValidationError("Uniform distribution needs at least one outcome")
        return cls(tuple([1.0 / outcomes] * outcomes))

    def __len__(self) -> int:
        return len(self.probabilities)


@dataclass(frozen=True)
class CodingTransform:
    """A coding of states: a mapping from source states to coded states."""

    mapping: Mapping[Hashable, Hashable] = field(default_factory=dict)

    def __call__(self, state: Hashable) -> Hashable:
        return self.mapping[state]

    def is_one_to_one(self) -> bool:
        return len(set(self.mapping.values())) == len(self.mapping)

    def then(self, other: "CodingTransform") -> "CodingTransform":
        """Apply this coding, then ``other`` (codes in succession)."""
        return CodingTransform({state: other(coded) for state, coded in self.mapping.items()})

    def inverse(self) -> "CodingTransform":
        if not self.is_one_to_one():
            raise DomainError("Only a one-to-one coding has an inverse")
        return CodingTransform({coded: state for state, coded in self.mapping.items()})


def entropy_bits(dist: Distribution) -> float:
    """Shannon entropy in bits, -sum(p * log2 p), with 0 * log2(0) = 0.

    The sign is the non-negative convention so that entropy compares directly
    with variety measured in bits; a uniform distribution over k outcomes gives
    log2(k).
    """
    p = np.asarray(dist.probabilities, dtype=float)
    nonzero = p[p > 0]
    h = float(-np.sum(nonzero * np.log2(nonzero)))
    return max(h, 0.0)


def variety_bits(count: int) -> float:
    if count < 1:
        raise DomainError("A set with no distinguishable states has no variety in bits")
    return log2_exact(count)


def combined_variety(component_counts: Sequence[int]) -> VarietyMeasure:
    """Variety of independently varying components: the product of their counts."""
    if not component_counts:
        raise DomainError("At least one component is required")
    if any(count < 1 for count in component_counts):
        raise DomainError("Every component must have at least one state")
    return VarietyMeasure(math.prod(component_counts))


def variety_count(space: SequenceSpace) -> VarietyMeasure:
    """Count admissible sequences by advancing per-symbol counts through the transfer matrix."""
    size = len(space.alphabet)
    counts = np.zeros(size, dtype=object)
    for index in space.initial_indices():
        counts[index] = 1
    if space.constraint is None:
        total = int(sum(counts)) * size ** (space.length - 1)
        return VarietyMeasure(total)
    transfer = space.constraint.transfer_matrix()
    for _ in range(space.length - 1):
        counts = counts.dot(transfer)
    return VarietyMeasure(int(sum(counts)))


def brute_force_count(space: SequenceSpace, limit: int = BRUTE_FORCE_LIMIT) -> int:
    """Count admissible sequences by generating and checking every sequence."""
    size = len(space.alphabet)
    total = size**space.length
    if total > limit:
        raise EnumerationLimitError(total, limit)
    initial = set(space.initial_indices())
    constraint = space.constraint
    found = 0
    for sequence in itertools.product(range(size), repeat=space.length):
        if sequence[0] not in initial:
            continue
        if constraint is not None and not all(
            constraint.permits(a, b) for a, b in zip(sequence, sequence[1:])
        ):
            continue
        found += 1
    return found


def fibonacci(n: int) -> int:
    """F(n) with F(1) = F(2) = 1."""
    if n < 0:
        raise DomainError("Fibonacci index must be non-negative")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def paper_closed_form(n: int) -> int:
    """Closed form 2 * F(2n + 1) for four symbols with adjacent values differing by at most one."""
    if n < 1:
        raise DomainError(f"Sequence length must be at least 1, got {n}")
    return 2 * fibonacci(2 * n + 1)


def constraint_reduction_bits(space: SequenceSpace) -> float:
    """Bits of variety removed by the successor constraint."""
    free = variety_count(space.unconstrained())
    constrained = variety_count(space)
    if constrained.count == 0:
        raise DomainError("The constraint admits no sequence at all")
    return free.bits - constrained.bits


def coded_variety(states: Iterable[Hashable], transform: CodingTransform) -> VarietyMeasure:
    """Variety of the coded image of ``states``; equal to the input variety iff the code is one-to-one on them."""
    return VarietyMeasure(len({transform(state) for state in states}))

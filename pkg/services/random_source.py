"""
Seeded Random Source
64-bit linear congruential generator used by every randomized constructor,
so sequences are reproducible across implementations (see docs/RANDOM_SOURCE.md).
"""

from typing import List, Sequence, TypeVar

T = TypeVar("T")

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
MASK64 = (1 << 64) - 1


class LinearGenerator:
    """state <- state * MULTIPLIER + INCREMENT (mod 2^64); outputs are the high 32 bits."""

    def __init__(self, seed: int = 1):
        self.state = seed & MASK64
        self.next_u32()

    def next_u32(self) -> int:
        self.state = (self.state * MULTIPLIER + INCREMENT) & MASK64
        return self.state >> 32

    def next_below(self, bound: int) -> int:
        """Uniform-ish integer in [0, bound) by multiply-shift."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        return (self.next_u32() * bound) >> 32

    def choice(self, items: Sequence[T]) -> T:
        return items[self.next_below(len(items))]

    def bits(self, count: int) -> List[int]:
        return [self.next_below(2) for _ in range(count)]

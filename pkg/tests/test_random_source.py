"""
Seeded Random Source Tests
"""

import pytest

from services.random_source import INCREMENT, MASK64, MULTIPLIER, LinearGenerator


def test_seeding_advances_once():
    rng = LinearGenerator(0)
    assert rng.state == INCREMENT
    rng = LinearGenerator(5)
    assert rng.state == (5 * MULTIPLIER + INCREMENT) & MASK64


def test_outputs_are_high_32_bits():
    rng = LinearGenerator(3)
    expected_state = (rng.state * MULTIPLIER + INCREMENT) & MASK64
    assert rng.next_u32() == expected_state >> 32
    assert rng.state == expected_state


def test_same_seed_same_sequence():
    a, b = LinearGenerator(42), LinearGenerator(42)
    assert [a.next_u32() for _ in range(10)] == [b.next_u32() for _ in range(10)]
    assert LinearGenerator(42).bits(16) != LinearGenerator(43).bits(16)


def test_next_below_stays_in_range():
    rng = LinearGenerator(7)
    draws = [rng.next_below(3) for _ in range(200)]
    assert set(draws) == {0, 1, 2}
    with pytest.raises(ValueError):
        rng.next_below(0)


def test_choice_uses_next_below():
    items = ["a", "b", "c", "d"]
    rng, mirror = LinearGenerator(9), LinearGenerator(9)
    assert rng.choice(items) == items[(mirror.next_u32() * 4) >> 32]


if __name__ == "__main__":
    pytest.main([__file__])

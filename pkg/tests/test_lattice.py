import math
import random
from collections import Counter

import pytest

from fractaloid import (
    LatticePath,
    LimitError,
    ParameterError,
    balanced_tuple_classes,
    closed_form_count,
    count_axis_paths_bruteforce,
    count_axis_paths_recurrence,
    has_axis_property,
    tuple_coefficient,
)


def test_axis_property_examples():
    assert has_axis_property(LatticePath((1, -1), 1))
    assert not has_axis_property(LatticePath((1, -2), 2))
    assert has_axis_property(LatticePath((2, 1, -1, -2), 2))


def test_axis_property_needs_per_exponent_balance():
    # A plain zero sum is not enough: heights e^1 and e^3 cannot cancel.
    assert not has_axis_property(LatticePath((-3, 1, 1, 1), 3))


def test_path_validation():
    with pytest.raises(ParameterError):
        LatticePath((0,), 2)
    with pytest.raises(ParameterError):
        LatticePath((3,), 2)


def test_bruteforce_small_values():
    assert count_axis_paths_bruteforce(1, 2) == 2
    assert count_axis_paths_bruteforce(1, 3) == 0
    assert count_axis_paths_bruteforce(3, 2) == 6
    assert count_axis_paths_bruteforce(2, 0) == 1


def test_bruteforce_budget():
    with pytest.raises(LimitError):
        count_axis_paths_bruteforce(3, 12)
    assert count_axis_paths_bruteforce(1, 4, max_paths=16) == 6
    with pytest.raises(LimitError):
        count_axis_paths_bruteforce(1, 4, max_paths=15)


def test_recurrence_small_values():
    assert count_axis_paths_recurrence(1, 4) == 6
    assert count_axis_paths_recurrence(2, 2) == 4
    assert count_axis_paths_recurrence(2, 4) == 36
    assert count_axis_paths_recurrence(2, 0) == 1
    assert count_axis_paths_recurrence(4, 7) == 0


def test_recurrence_coefficients():
    assert tuple_coefficient((-1, -1, 1, 1)) == math.comb(4, 2)
    assert tuple_coefficient((-2, -1, 1, 2)) == 24
    assert tuple_coefficient((2, 2, 2)) == 1
    assert tuple_coefficient(()) == 1
    # The mixed eight-step class: 8!/(2! * 2!) realizations.
    assert tuple_coefficient((-3, -2, -2, -1, 1, 2, 2, 3)) == 10080


def test_coefficient_equals_multinomial():
    for n_bound in (1, 2, 3):
        for length in range(0, 9, 2):
            for cls in balanced_tuple_classes(n_bound, length):
                runs = Counter(cls.values)
                expected = math.factorial(length)
                for run in runs.values():
                    expected //= math.factorial(run)
                assert cls.coefficient == expected


def test_balanced_tuples_are_balanced_and_sorted():
    for cls in balanced_tuple_classes(3, 6):
        assert list(cls.values) == sorted(cls.values)
        counts = Counter(cls.values)
        for k in (1, 2, 3):
            assert counts[k] == counts[-k]


def test_recurrence_matches_bruteforce():
    for n_bound in (1, 2, 3):
        for length in range(0, 7):
            assert count_axis_paths_recurrence(
                n_bound, length
            ) == count_axis_paths_bruteforce(n_bound, length)


def test_closed_forms():
    assert closed_form_count(1, 6) == 20
    assert closed_form_count(2, 6) == 400
    assert closed_form_count(1, 0) == 1
    with pytest.raises(ParameterError):
        closed_form_count(3, 4)


def test_closed_form_matches_recurrence():
    for n_bound in (1, 2):
        for length in range(0, 13):
            assert closed_form_count(n_bound, length) == count_axis_paths_recurrence(
                n_bound, length
            )


def test_counts_monotone_in_step_bound():
    for length in (2, 4, 6):
        values = [count_axis_paths_recurrence(nb, length) for nb in (1, 2, 3, 4)]
        assert values == sorted(values)


def test_odd_lengths_vanish():
    for n_bound in (1, 2, 3):
        for length in (1, 3, 5, 7):
            assert count_axis_paths_recurrence(n_bound, length) == 0
            assert count_axis_paths_bruteforce(n_bound, length) == 0


def test_reversal_and_sign_flip_preserve_axis_property():
    rng = random.Random(23)
    for _ in range(200):
        n_bound = rng.randint(1, 3)
        steps = tuple(
            rng.choice([k for k in range(-n_bound, n_bound + 1) if k != 0])
            for _ in range(rng.randint(0, 8))
        )
        path = LatticePath(steps, n_bound)
        reversed_path = LatticePath(tuple(reversed(steps)), n_bound)
        flipped = LatticePath(tuple(-s for s in steps), n_bound)
        assert has_axis_property(path) == has_axis_property(reversed_path)
        assert has_axis_property(path) == has_axis_property(flipped)


def test_counts_are_exact_big_integers():
    # C(40, 20) exceeds 64-bit signed range well before n = 40; stay exact.
    assert closed_form_count(2, 40) == math.comb(40, 20) * sum(
        math.comb(20, j) ** 2 for j in range(21)
    )
    assert count_axis_paths_recurrence(1, 40) == math.comb(40, 20)

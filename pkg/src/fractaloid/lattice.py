"""Lattice paths over the steps (1, +-e^k), the axis property, and the count
of axis paths of a given length by three routes: exhaustive enumeration, the
stripping recurrence over balanced step multisets, and closed forms for step
bounds 1 and 2.

Steps are kept symbolic as nonzero integers k with 1 <= |k| <= N; because the
heights e^1, ..., e^N are rationally independent, a path returns to the axis
exactly when every exponent is used equally often upward and downward. No
floating-point height arithmetic appears anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import LimitError, ParameterError

DEFAULT_MAX_PATHS = 10_000_000


@dataclass(frozen=True)
class LatticePath:
    """A finite sequence of steps +-k with 1 <= |k| <= step_bound."""

    steps: tuple[int, ...]
    step_bound: int

    def __post_init__(self) -> None:
        if self.step_bound < 0:
            raise ParameterError(f"step bound must be >= 0, got {self.step_bound}")
        for s in self.steps:
            if not isinstance(s, int) or s == 0 or abs(s) > self.step_bound:
                raise ParameterError(
                    f"step {s!r} outside the range +-1..+-{self.step_bound}"
                )

    def __len__(self) -> int:
        return len(self.steps)


def has_axis_property(path: LatticePath) -> bool:
    """True iff the path ends on the horizontal axis: per exponent k, the
    steps +k and -k occur equally often."""
    balance = [0] * (path.step_bound + 1)
    for s in path.steps:
        balance[abs(s)] += 1 if s > 0 else -1
    return all(b == 0 for b in balance[1:])


def count_axis_paths_bruteforce(
    n_bound: int, length: int, *, max_paths: int = DEFAULT_MAX_PATHS
) -> int:
    """Count axis paths by enumerating all (2N)^n step sequences.

    The enumeration is the independent oracle for the recurrence and the
    closed forms; it visits every sequence and prunes nothing.
    """
    if n_bound < 1:
        raise ParameterError(f"step bound must be >= 1, got {n_bound}")
    if length < 0:
        raise ParameterError(f"path length must be >= 0, got {length}")
    total = (2 * n_bound) ** length
    if total > max_paths:
        raise LimitError(
            f"brute-force enumeration of {total} paths exceeds the "
            f"{max_paths}-path budget"
        )
    moves = [(k, +1) for k in range(1, n_bound + 1)] + [
        (k, -1) for k in range(1, n_bound + 1)
    ]
    balance = [0] * (n_bound + 1)
    off_axis = 0

    def walk(remaining: int) -> int:
        nonlocal off_axis
        if remaining == 0:
            return 0 if off_axis else 1
        count = 0
        for k, delta in moves:
            before = balance[k]
            balance[k] = before + delta
            if before == 0:
                off_axis += 1
            elif balance[k] == 0:
                off_axis -= 1
            count += walk(remaining - 1)
            if balance[k] == 0:
                off_axis += 1
            elif before == 0:
                off_axis -= 1
            balance[k] = before
        return count

    return walk(length)


def tuple_coefficient(values: tuple[int, ...]) -> int:
    """Number of paths realizing a sorted step multiset, via the stripping
    recurrence: remove the trailing run of m equal values and multiply by
    C(current length, m); a constant tuple counts 1.

    The binomial's top index is the tuple length at the moment of stripping,
    which makes the result the multinomial of the run lengths.
    """
    values = tuple(values)
    coefficient = 1
    while values and any(v != values[-1] for v in values):
        run = 1
        while run < len(values) and values[-run - 1] == values[-1]:
            run += 1
        coefficient *= comb(len(values), run)
        values = values[:-run]
    return coefficient


@dataclass(frozen=True)
class BalancedTupleClass:
    """A sorted step multiset with per-exponent balance, together with the
    number of axis paths spelling it in some order."""

    values: tuple[int, ...]
    coefficient: int


def balanced_tuple_classes(n_bound: int, length: int) -> list[BalancedTupleClass]:
    """All per-exponent-balanced sorted tuples of the given length.

    Balance means #(+k) = #(-k) for every k; a plain zero integer sum is not
    enough, since e.g. (-3, 1, 1, 1) sums to zero but can never return to the
    axis.
    """
    if n_bound < 1:
        raise ParameterError(f"step bound must be >= 1, got {n_bound}")
    if length < 0 or length % 2:
        return []
    half = length // 2
    classes: list[BalancedTupleClass] = []

    def compositions(k: int, remaining: int, acc: list[int]) -> None:
        if k == n_bound:
            acc = acc + [remaining]
            values: list[int] = []
            for exp in range(n_bound, 0, -1):
                values.extend([-exp] * acc[exp - 1])
            for exp in range(1, n_bound + 1):
                values.extend([exp] * acc[exp - 1])
            tup = tuple(values)
            classes.append(BalancedTupleClass(tup, tuple_coefficient(tup)))
            return
        for m in range(remaining + 1):
            compositions(k + 1, remaining - m, acc + [m])

    compositions(1, half, [])
    return classes


def count_axis_paths_recurrence(n_bound: int, length: int) -> int:
    """Sum the recurrence coefficient over all balanced step multisets.

    Zero for odd lengths; 1 for length zero (the empty path)."""
    if n_bound < 1:
        raise ParameterError(f"step bound must be >= 1, got {n_bound}")
    if length < 0:
        raise ParameterError(f"path length must be >= 0, got {length}")
    if length % 2:
        return 0
    return sum(c.coefficient for c in balanced_tuple_classes(n_bound, length))


def closed_form_count(n_bound: int, length: int) -> int:
    """Exact binomial closed forms, available for step bounds 1 and 2."""
    if n_bound not in (1, 2):
        raise ParameterError(
            f"closed forms exist only for step bounds 1 and 2, got {n_bound}"
        )
    if length < 0:
        raise ParameterError(f"path length must be >= 0, got {length}")
    if length % 2:
        return 0
    half = length // 2
    central = comb(length, half)
    if n_bound == 1:
        return central
    return central * sum(comb(half, j) ** 2 for j in range(half + 1))

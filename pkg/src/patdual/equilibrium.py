"""Stationary-rate route to win probabilities and expected duration.

Imagine the race replayed forever and let y_i be the long-run per-trial
probability that pattern i wins a game.  Expanding the probability of
pattern j's symbol string occupying the last k trials by which pattern won
inside that window gives one linear equation per pattern, over plain
rationals:

    P(string j) = sum_i y_i * sum_l P(tail of j after l),

l running over the shifts where pattern i overlaps into pattern j.  Win
probabilities and expected duration follow from the solved rates:
win_j = y_j / sum(y), duration = 1 / sum(y).  This is an independent
cross-check of the generating-function route; it cannot produce higher
moments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import solve_linear_system
from .patterns import PatternSet, overlap_shifts, string_probability

__all__ = ["EquilibriumSolution", "build_equilibrium_system", "solve_equilibrium"]


@dataclass(frozen=True)
class EquilibriumSolution:
    y: tuple[Fraction, ...]
    win_probs: tuple[Fraction, ...]
    expected_duration: Fraction


def build_equilibrium_system(
    ps: PatternSet,
) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Matrix and right-hand side of the stationary-rate equations.

    Row j: A[j][i] = sum over shifts l in (i overlaps into j) of the
    probability of pattern j's tail after position l; rhs[j] is pattern j's
    full string probability.
    """
    alphabet = ps.alphabet
    matrix: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for pat_j in ps.patterns:
        row = []
        for pat_i in ps.patterns:
            acc = Fraction(0)
            for shift in overlap_shifts(pat_i.symbols, pat_j.symbols):
                acc += string_probability(pat_j.symbols[shift:], alphabet)
            row.append(acc)
        matrix.append(row)
        rhs.append(string_probability(pat_j.symbols, alphabet))
    return matrix, rhs


def solve_equilibrium(ps: PatternSet) -> EquilibriumSolution:
    """Solve the stationary rates and derive win probabilities and duration."""
    matrix, rhs = build_equilibrium_system(ps)
    y = solve_linear_system(matrix, rhs)
    if any(yi <= 0 for yi in y):
        raise ArithmeticError("stationary rates must be strictly positive")
    total = sum(y)
    return EquilibriumSolution(
        y=tuple(y),
        win_probs=tuple(yi / total for yi in y),
        expected_duration=1 / total,
    )

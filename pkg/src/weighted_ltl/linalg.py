"""Exact Gaussian elimination over ``Fraction``."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class SingularSystem(ArithmeticError):
    def __init__(self, column: int):
        super().__init__(f"singular system: no pivot in column {column}")
        self.column = column


def solve(a: Sequence[Sequence], b: Sequence) -> list:
    """Solve ``a x = b`` exactly.  Raises :class:`SingularSystem` if ``a`` is singular."""
    n = len(a)
    if any(len(row) != n for row in a) or len(b) != n:
        raise ValueError("solve needs a square matrix and a matching right-hand side")
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise SingularSystem(col)
        m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        row = [x / p for x in m[col]]
        m[col] = row
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], row)]
    return [m[r][n] for r in range(n)]

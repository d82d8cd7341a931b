"""Sparse Gaussian elimination over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence

Row = Dict[int, Fraction]


def solve_sparse(rows: Sequence[Row], rhs: Sequence[Fraction]) -> Dict[int, Fraction] | None:
    """Solve ``rows * x = rhs``; free unknowns are set to zero.

    Returns a sparse solution or ``None`` if the system is inconsistent.
    """
    pivots: Dict[int, tuple] = {}  # pivot column -> (row, rhs), row normalized to 1 at pivot
    order: List[int] = []
    for row, b in zip(rows, rhs):
        r = {c: Fraction(v) for c, v in row.items() if v}
        b = Fraction(b)
        # reduce against existing pivots until the leading column is new
        while r:
            c = min(r)
            if c not in pivots:
                break
            prow, pb = pivots[c]
            f = r[c]
            for cc, v in prow.items():
                nv = r.get(cc, 0) - f * v
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
            b -= f * pb
        if not r:
            if b:
                return None
            continue
        c = min(r)
        inv = 1 / r[c]
        r = {cc: v * inv for cc, v in r.items()}
        pivots[c] = (r, b * inv)
        order.append(c)
    # back substitution, latest pivots have the largest leading columns only
    # within their own reduction chain, so sort descending
    x: Dict[int, Fraction] = {}
    for c in sorted(pivots, reverse=True):
        r, b = pivots[c]
        val = b
        for cc, v in r.items():
            if cc != c:
                val -= v * x.get(cc, 0)
        if val:
            x[c] = val
    return x


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    rows = [{j: Fraction(v) for j, v in enumerate(row) if v} for row in matrix]
    pivots: Dict[int, Row] = {}
    for r in rows:
        while r:
            c = min(r)
            if c not in pivots:
                break
            p = pivots[c]
            f = r[c] / p[c]
            for cc, v in p.items():
                nv = r.get(cc, 0) - f * v
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
        if r:
            pivots[min(r)] = r
    return len(pivots)

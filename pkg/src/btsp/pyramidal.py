"""Shortest bipartite pyramidal tour for the even-odd BTSP in O(n^2).

E(i, j), for i < j, is the cheapest pair of vertex-disjoint increasing paths
starting at city 1, one ending at i and one at j, that together cover
{1, ..., j}.  Same-colour edges are masked before the recurrence runs, so
only bipartite tours are ever built.  Ties in the minimisation go to the
largest predecessor, i.e. the one closing the longest run of consecutive
cities.

Only the diagonal D(j) = E(j-1, j) has to be tabulated: off-diagonal entries
follow from a prefix sum of the consecutive edges c_{t,t+1}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import FORBIDDEN, Coloring, ColoringError, DistanceMatrix, Tour


@dataclass(frozen=True, eq=False)
class DpState:
    """Filled DP table (1-based pairs) with the predecessor chosen for each diagonal cell.

    ``table[i-1, j-1]`` holds E(i, j) for i < j; ``valid`` is false where the
    entry is FORBIDDEN.  ``predecessor[j]`` is the l minimising E(l, j-1) + c_lj.
    """

    table: np.ndarray
    valid: np.ndarray
    predecessor: dict[int, int]
    kind: str

    def value(self, i: int, j: int):
        if not i < j:
            raise ValueError("E(i, j) is defined for i < j")
        if not self.valid[i - 1, j - 1]:
            return FORBIDDEN
        x = self.table[i - 1, j - 1]
        return int(x) if self.kind == "integer" else float(x)

    @property
    def n(self) -> int:
        return self.table.shape[0]


def _checked_inputs(C: DistanceMatrix, col: Coloring):
    if col.n != C.n:
        raise ColoringError(f"coloring covers {col.n} cities, matrix has {C.n}")
    if C.n % 2:
        raise ValueError(f"n must be even, got {C.n}")
    if C.n < 4:
        raise ValueError(f"solver needs n >= 4, got {C.n}")
    if not col.is_even_odd:
        raise ColoringError("solver requires even-odd coloring")
    parity = np.arange(C.n) % 2
    masked = C.masked(parity[:, None] == parity[None, :])
    return masked.values, ~masked.forbidden


class _DP:
    """Diagonal pass shared by the solver and the trace."""

    def __init__(self, c: np.ndarray, allowed: np.ndarray):
        n = c.shape[0]
        self.n = n
        self.c = c
        step = np.array([c[t, t + 1] for t in range(n - 1)], dtype=c.dtype)
        step_ok = np.array([allowed[t, t + 1] for t in range(n - 1)], dtype=bool)
        # prefix[t] = sum of c_{s,s+1} for s < t (0-based); broken[t] counts masked ones
        self.prefix = np.concatenate([np.zeros(1, dtype=c.dtype), np.cumsum(np.where(step_ok, step, 0))])
        self.broken = np.concatenate([[0], np.cumsum(~step_ok)])
        diag = np.zeros(n, dtype=c.dtype)
        diag_ok = np.zeros(n, dtype=bool)
        pred = np.full(n, -1, dtype=int)
        diag[1] = c[0, 1]
        diag_ok[1] = allowed[0, 1]
        # 0-based: diag[j] = E(j-1, j); candidate l in 0..j-2 uses E(l, j-1) + c[l, j]
        for j in range(2, n):
            l = np.arange(0, j - 1)
            ok = diag_ok[l + 1] & (self.broken[j - 1] == self.broken[l + 1]) & allowed[l, j]
            if not ok.any():
                continue
            l = l[ok]
            cand = diag[l + 1] + (self.prefix[j - 1] - self.prefix[l + 1]) + c[l, j]
            best = int(np.flatnonzero(cand == cand.min())[-1])  # ties: largest l
            diag[j] = cand[best]
            diag_ok[j] = True
            pred[j] = int(l[best])
        self.diag = diag
        self.diag_ok = diag_ok
        self.pred = pred

    def off_diagonal(self, i: int, j: int):
        """E(i, j) for 0-based i < j-1, as (value, ok)."""
        ok = self.diag_ok[i + 1] and self.broken[j] == self.broken[i + 1]
        return self.diag[i + 1] + (self.prefix[j] - self.prefix[i + 1]), ok

    def answer(self, allowed: np.ndarray):
        n = self.n
        if not (self.diag_ok[n - 1] and allowed[n - 2, n - 1]):
            return None
        return self.diag[n - 1] + self.c[n - 2, n - 1]

    def reconstruct(self) -> Tour:
        n = self.n
        side = np.zeros(n, dtype=int)
        cur, other = 1, 2
        j = n - 1
        side[j] = cur
        while j > 1:
            l = int(self.pred[j])
            side[l + 1:j] = other
            if l > 0:
                side[l] = cur
            cur, other = other, cur
            j = l + 1
        up = [int(v) + 1 for v in range(1, n) if side[v] == side[n - 2]]
        down = [int(v) + 1 for v in range(1, n) if side[v] != side[n - 2]]
        return Tour(tuple([1] + up + down[::-1]))


def solve_pyramidal_btsp(C: DistanceMatrix, col: Coloring):
    """Return ``(tour, length)`` of a shortest bipartite pyramidal tour.

    The tour is in canonical form.  Requires the even-odd coloring; on
    (relaxed) Van der Veen matrices the result is a global BTSP optimum.

    Raises:
        ColoringError: if ``col`` is not the even-odd coloring.
        ValueError: if n is odd or less than 4, or no feasible pyramidal tour
            exists because of FORBIDDEN entries.
    """
    c, allowed = _checked_inputs(C, col)
    dp = _DP(c, allowed)
    length = dp.answer(allowed)
    if length is None:
        raise ValueError("no feasible bipartite pyramidal tour (masked entries)")
    length = int(length) if C.is_integer else float(length)
    return dp.reconstruct(), length


def dp_trace(C: DistanceMatrix, col: Coloring) -> DpState:
    """The full E table, for inspection.  Uses O(n^2) memory."""
    c, allowed = _checked_inputs(C, col)
    dp = _DP(c, allowed)
    n = C.n
    table = np.zeros((n, n), dtype=c.dtype)
    valid = np.zeros((n, n), dtype=bool)
    for j in range(1, n):
        table[j - 1, j] = dp.diag[j]
        valid[j - 1, j] = dp.diag_ok[j]
        for i in range(0, j - 1):
            table[i, j], valid[i, j] = dp.off_diagonal(i, j)
    pred = {j + 1: int(dp.pred[j]) + 1 for j in range(2, n) if dp.diag_ok[j]}
    return DpState(table, valid, pred, C.kind)

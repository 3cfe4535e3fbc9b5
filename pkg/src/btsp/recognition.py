"""Recognise reduced matrices that satisfy the A-system after reordering.

Given A (k x k), look for a row order gamma and a column order delta such
that the matrix (a_{gamma(i), delta(j)}) passes :func:`check_a_system`.
Each candidate for gamma(1) is tried in turn; the remaining positions are
filled greedily, alternating columns and rows:

    delta(1), gamma(2), delta(2), gamma(3), ..., delta(k)

A column c qualifies after row r when, once row r is subtracted from every
row, each remaining row takes its maximum in column c.  Rows are chosen the
same way with the roles of rows and columns exchanged.  Qualifying lines are
equal up to an additive constant, so the smallest index is taken.  Every
result is verified with the checker before it is returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .conditions import ReducedMatrix, check_a_system, extract_a
from .core import DEFAULT_TOLERANCE, DistanceMatrix, Tour


@dataclass(frozen=True)
class SelectionStep:
    axis: str        # "row" or "column"
    position: int    # 1-based position being filled in gamma / delta
    chosen: int      # 1-based original index placed there
    ties: int        # how many indices qualified


@dataclass(frozen=True)
class CandidateTrace:
    first_row: int
    steps: tuple[SelectionStep, ...]
    success: bool


@dataclass(frozen=True)
class RecognitionResult:
    gamma: tuple[int, ...]
    delta: tuple[int, ...]
    trace: tuple[CandidateTrace, ...] = field(default=(), compare=False)


@dataclass(frozen=True, eq=False)
class NormalizedMatrix:
    """Residuals after subtracting one fixed row (axis="row") or column from A."""

    entries: np.ndarray
    axis: str
    line: int  # 1-based index of the subtracted row/column


def _entries(A) -> np.ndarray:
    return A.entries if isinstance(A, ReducedMatrix) else np.asarray(A)


def _tol(A, tol: float) -> float:
    return 0 if _entries(A).dtype.kind in "iuO" else tol


def normalize_rows(A, r: int) -> NormalizedMatrix:
    """a'_st = a_st - a_rt, so row r becomes zero."""
    a = _entries(A)
    return NormalizedMatrix(a - a[r - 1][None, :], "row", r)


def normalize_columns(A, c: int) -> NormalizedMatrix:
    """a'_st = a_st - a_sc, so column c becomes zero."""
    a = _entries(A)
    return NormalizedMatrix(a - a[:, c - 1][:, None], "column", c)


def _qualifying_columns(a: np.ndarray, r: int, rows: np.ndarray, cols: np.ndarray, tol) -> np.ndarray:
    # 0-based arguments; returns qualifying entries of ``cols``
    if len(rows) == 0:
        return cols
    res = a[np.ix_(rows, cols)] - a[r, cols][None, :]
    ok = np.all(res >= res.max(axis=1, keepdims=True) - tol, axis=0)
    return cols[ok]


def _qualifying_rows(a: np.ndarray, c: int, rows: np.ndarray, cols: np.ndarray, tol) -> np.ndarray:
    if len(cols) == 0:
        return rows
    res = a[np.ix_(rows, cols)] - a[rows, c][:, None]
    ok = np.all(res >= res.max(axis=0, keepdims=True) - tol, axis=1)
    return rows[ok]


def _zero_based(idx: Sequence[int]) -> np.ndarray:
    return np.array(sorted(int(i) - 1 for i in idx), dtype=int)


def select_next_column(A, fixed_row: int, remaining_rows, remaining_cols,
                       tol: float = DEFAULT_TOLERANCE) -> int | None:
    """Smallest column in ``remaining_cols`` at which every remaining row of the
    row-normalised matrix attains its maximum, or None.  All indices 1-based."""
    a = _entries(A)
    q = _qualifying_columns(a, fixed_row - 1, _zero_based(remaining_rows),
                            _zero_based(remaining_cols), _tol(A, tol))
    return int(q[0]) + 1 if len(q) else None


def select_next_row(A, fixed_col: int, remaining_rows, remaining_cols,
                    tol: float = DEFAULT_TOLERANCE) -> int | None:
    """Smallest row in ``remaining_rows`` attaining the column-wise maximum of
    the column-normalised matrix in every remaining column, or None."""
    a = _entries(A)
    q = _qualifying_rows(a, fixed_col - 1, _zero_based(remaining_rows),
                         _zero_based(remaining_cols), _tol(A, tol))
    return int(q[0]) + 1 if len(q) else None


def _greedy(a: np.ndarray, g: int, tol) -> tuple[list[int] | None, list[int] | None, list[SelectionStep]]:
    """Fill gamma/delta starting from gamma(1) = g (0-based).  Returns 0-based orders."""
    k = a.shape[0]
    row_left = np.ones(k, dtype=bool)
    col_left = np.ones(k, dtype=bool)
    gamma, delta = [g], []
    row_left[g] = False
    steps = [SelectionStep("row", 1, g + 1, 1)]
    for i in range(k):
        rows = np.flatnonzero(row_left)
        cols = np.flatnonzero(col_left)
        q = _qualifying_columns(a, gamma[-1], rows, cols, tol)
        if not len(q):
            return None, None, steps
        c = int(q[0])
        delta.append(c)
        col_left[c] = False
        steps.append(SelectionStep("column", i + 1, c + 1, len(q)))
        if i == k - 1:
            break
        cols = np.flatnonzero(col_left)
        q = _qualifying_rows(a, c, rows, cols, tol)
        if not len(q):
            return None, None, steps
        r = int(q[0])
        gamma.append(r)
        row_left[r] = False
        steps.append(SelectionStep("row", i + 2, r + 1, len(q)))
    return gamma, delta, steps


def apply_permutations(A, gamma: Sequence[int], delta: Sequence[int]) -> ReducedMatrix:
    """Matrix with entry (i, j) = a_{gamma(i), delta(j)} (1-based permutations)."""
    if not isinstance(A, ReducedMatrix):
        A = ReducedMatrix.from_rows(A)
    k = A.k
    for name, p in (("gamma", gamma), ("delta", delta)):
        if sorted(int(x) for x in p) != list(range(1, k + 1)):
            raise ValueError(f"{name} is not a permutation of 1..{k}")
    g = np.asarray(gamma, dtype=int) - 1
    d = np.asarray(delta, dtype=int) - 1
    return ReducedMatrix(A.entries[np.ix_(g, d)], A.kind)


def recognize(A, tol: float = DEFAULT_TOLERANCE) -> RecognitionResult | None:
    """Find (gamma, delta) making A satisfy the A-system, or None.

    Candidates for gamma(1) are tried in increasing order and the first one
    whose greedy completion passes the checker wins.  O(k^4) overall.
    """
    if not isinstance(A, ReducedMatrix):
        A = ReducedMatrix.from_rows(A)
    tol = A.effective_tolerance(tol)
    a = A.entries
    traces = []
    for g in range(A.k):
        gamma, delta, steps = _greedy(a, g, tol)
        ok = False
        if gamma is not None:
            gamma1 = tuple(x + 1 for x in gamma)
            delta1 = tuple(x + 1 for x in delta)
            ok = check_a_system(apply_permutations(A, gamma1, delta1), tol).ok
        traces.append(CandidateTrace(g + 1, tuple(steps), ok))
        if ok:
            return RecognitionResult(gamma1, delta1, tuple(traces))
    return None


def recognize_exhaustive(A, tol: float = DEFAULT_TOLERANCE, max_k: int = 6) -> RecognitionResult | None:
    """Brute-force search over all k!^2 permutation pairs (test oracle only)."""
    if not isinstance(A, ReducedMatrix):
        A = ReducedMatrix.from_rows(A)
    if A.k > max_k:
        raise ValueError(f"exhaustive recognition limited to k <= {max_k}")
    perms = list(itertools.permutations(range(1, A.k + 1)))
    for g in perms:
        for d in perms:
            if check_a_system(apply_permutations(A, g, d), tol).ok:
                return RecognitionResult(g, d)
    return None


@dataclass(frozen=True, eq=False)
class FullRecognition:
    matrix: DistanceMatrix
    relabeling: tuple[int, ...]  # relabeling[u-1] = original city shown as u
    result: RecognitionResult

    def original_tour(self, t) -> Tour:
        """Map a tour of the relabelled instance back to the original city numbers."""
        seq = t.sequence if isinstance(t, Tour) else tuple(t)
        return Tour(tuple(self.relabeling[u - 1] for u in seq))


def city_relabeling(gamma: Sequence[int], delta: Sequence[int]) -> tuple[int, ...]:
    """Lift row/column orders to cities: new 2i-1 is old 2gamma(i)-1, new 2j is old 2delta(j)."""
    k = len(gamma)
    perm = [0] * (2 * k)
    for i in range(k):
        perm[2 * i] = 2 * gamma[i] - 1
        perm[2 * i + 1] = 2 * delta[i]
    return tuple(perm)


def recognize_full(C: DistanceMatrix, tol: float = DEFAULT_TOLERANCE) -> FullRecognition | None:
    """Renumber blue and red cities of an even-odd instance so that its
    blue-to-red block passes the A-system; None if no renumbering exists."""
    if C.n % 2:
        raise ValueError(f"recognition needs even n, got {C.n}")
    res = recognize(extract_a(C), tol)
    if res is None:
        return None
    perm = city_relabeling(res.gamma, res.delta)
    return FullRecognition(C.relabeled(perm), perm, res)

"""Turn any even-odd bipartite tour into a pyramidal one by eliminating valleys.

Each step takes the smallest valley j+1 > 1, orients the tour so that the
successor l of j is larger than j, and with m the successor of j+1 replaces
the edges (j, l), (j+1, m) by (j, j+1), (l, m), reversing the path between
them.  The length changes by exactly Δ(j+1, l, j, m), which is non-positive
when the relaxed Van der Veen conditions hold.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (Coloring, ColoringError, DistanceMatrix, Tour, TourError,
                   delta, is_feasible_bipartite, tour_length, valleys)


@dataclass(frozen=True)
class ImproveStepRecord:
    j: int
    l: int
    m: int
    length_before: float | int
    length_after: float | int
    delta: float | int

    @property
    def valley(self) -> int:
        return self.j + 1


def minimal_valley_above_one(t) -> int | None:
    """Smallest valley other than city 1, or None for a pyramidal tour."""
    vs = [v for v in valleys(t) if v > 1]
    return vs[0] if vs else None


def _require(col: Coloring, t: Tour, C: DistanceMatrix):
    if not col.is_even_odd:
        raise ColoringError("valley elimination requires even-odd coloring")
    if t.n != C.n or col.n != C.n:
        raise TourError("tour, coloring and matrix sizes differ")
    if not is_feasible_bipartite(t, col):
        raise TourError(f"tour {t} is not a feasible bipartite tour")


def _eliminate(seq: list[int], valley: int) -> tuple[list[int], int, int, int]:
    """One move on a raw cyclic sequence; returns (new_seq, j, l, m)."""
    j = valley - 1
    n = len(seq)
    p = seq.index(j)
    pred, succ = seq[p - 1], seq[(p + 1) % n]
    if pred < j and succ < j:
        # j would be a peak; impossible while j+1 is the smallest valley above 1
        raise AssertionError(f"both neighbours of {j} are smaller; tour {seq} breaks the valley invariant")
    if succ < j:
        seq = seq[::-1]
        p = seq.index(j)
    seq = seq[p:] + seq[:p]  # j, l, ..., j+1, m, ...
    l = seq[1]
    q = seq.index(valley)
    m = seq[(q + 1) % n]
    new = [j] + seq[1:q + 1][::-1] + seq[q + 1:]
    return new, j, l, m


def improve_step(C: DistanceMatrix, col: Coloring, t):
    """Apply one valley-elimination move.

    Returns the new (canonical) tour and its :class:`ImproveStepRecord`.
    Raises TourError if ``t`` is infeasible or already pyramidal.
    """
    t = t if isinstance(t, Tour) else Tour(tuple(t))
    _require(col, t, C)
    valley = minimal_valley_above_one(t)
    if valley is None:
        raise TourError(f"tour {t} is already pyramidal")
    new, j, l, m = _eliminate(list(t.sequence), valley)
    out = Tour(tuple(new))
    before = tour_length(C, t)
    after = tour_length(C, out)
    d = delta(C, j + 1, l, j, m).value
    return out, ImproveStepRecord(j, l, m, before, after, d)


def improve_to_pyramidal(C: DistanceMatrix, col: Coloring, t):
    """Repeat :func:`improve_step` until the tour is pyramidal.

    Returns ``(tour, records)``.  At most n - 2 moves are needed because the
    smallest valley above 1 grows with every move.
    """
    t = t if isinstance(t, Tour) else Tour(tuple(t))
    _require(col, t, C)
    records: list[ImproveStepRecord] = []
    last = 1
    while True:
        v = minimal_valley_above_one(t)
        if v is None:
            return t, records
        if v <= last:
            raise AssertionError(f"minimal valley did not increase ({last} -> {v})")
        last = v
        t, rec = improve_step(C, col, t)
        records.append(rec)

"""Domain types shared by the whole package.

Cities are numbered 1..n in every public function; internally arrays are
0-based.  Distance matrices are always symmetric.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

DEFAULT_TOLERANCE = 1e-9

# Integers beyond this magnitude are kept as Python ints (object arrays)
# so that sums along a tour cannot overflow int64.
_INT64_SAFE = 2**40


class _Forbidden(enum.Enum):
    FORBIDDEN = "FORBIDDEN"

    def __repr__(self) -> str:
        return "FORBIDDEN"


FORBIDDEN = _Forbidden.FORBIDDEN
"""Marker for a masked matrix entry (an edge that may not be used)."""


class MaskedEntryError(ValueError):
    """A computation needed a matrix entry that is FORBIDDEN."""


class ColoringError(ValueError):
    """The coloring is invalid or unsuitable for the requested operation."""


class TourError(ValueError):
    """A sequence is not a valid tour, or a tour is not bipartite."""


@dataclass(frozen=True)
class PointSet:
    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        pts = tuple((p[0], p[1]) for p in self.points)
        for x, y in pts:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValueError(f"non-finite coordinate ({x}, {y})")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def is_integral(self) -> bool:
        return all(float(c).is_integer() for p in self.points for c in p)


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric n x n table of distances.

    ``values`` holds the numbers (0 where masked), ``forbidden`` marks
    entries that are FORBIDDEN.  ``kind`` is ``"integer"`` for exact
    integer data and ``"float"`` otherwise.
    """

    values: np.ndarray
    forbidden: np.ndarray
    kind: str

    def __post_init__(self):
        v = np.asarray(self.values)
        f = np.asarray(self.forbidden, dtype=bool)
        if v.ndim != 2 or v.shape[0] != v.shape[1] or f.shape != v.shape:
            raise ValueError("distance matrix must be square")
        if self.kind not in ("integer", "float"):
            raise ValueError(f"unknown matrix kind {self.kind!r}")
        n = v.shape[0]
        off = ~np.eye(n, dtype=bool)
        if not np.array_equal(f, f.T):
            raise ValueError("distance matrix must be symmetric (masks differ)")
        both = off & ~f & ~f.T
        if not np.array_equal(np.where(both, v, 0), np.where(both, v.T, 0)):
            raise ValueError("distance matrix must be symmetric")
        v = v.copy()
        v[f] = 0
        object.__setattr__(self, "values", _freeze(v))
        object.__setattr__(self, "forbidden", _freeze(f.copy()))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float | int | None]]) -> DistanceMatrix:
        """Build from nested lists; ``None`` or FORBIDDEN marks a masked entry."""
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("distance matrix must be square")
        forbidden = np.zeros((n, n), dtype=bool)
        cells: list[list] = []
        integral = True
        for a, row in enumerate(rows):
            out = []
            for b, x in enumerate(row):
                if x is None or x is FORBIDDEN:
                    if a != b:
                        forbidden[a, b] = True
                    out.append(0)
                    continue
                if isinstance(x, bool):
                    raise TypeError("boolean matrix entry")
                if isinstance(x, (int, np.integer)):
                    out.append(int(x))
                else:
                    x = float(x)
                    if not math.isfinite(x):
                        raise ValueError("matrix entries must be finite (use None to mask)")
                    integral = False
                    out.append(x)
            cells.append(out)
        if integral:
            return cls(_int_array(cells, n), forbidden, "integer")
        return cls(np.array(cells, dtype=float).reshape(n, n), forbidden, "float")

    @classmethod
    def from_array(cls, arr, forbidden=None) -> DistanceMatrix:
        arr = np.asarray(arr)
        if forbidden is None:
            forbidden = np.zeros(arr.shape, dtype=bool)
        if arr.dtype.kind in "iu" or arr.dtype == object:
            return cls(_int_array(arr.tolist(), arr.shape[0]), forbidden, "integer")
        return cls(arr.astype(float), forbidden, "float")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def is_integer(self) -> bool:
        return self.kind == "integer"

    def effective_tolerance(self, tol: float) -> float:
        """Comparisons on exact-integer data are always exact."""
        return 0 if self.is_integer else tol

    def entry(self, i: int, j: int):
        """Entry c_ij (1-based) as a Python number, or FORBIDDEN."""
        if self.forbidden[i - 1, j - 1]:
            return FORBIDDEN
        x = self.values[i - 1, j - 1]
        return int(x) if self.is_integer else float(x)

    def to_rows(self) -> list[list]:
        out = []
        for a in range(self.n):
            out.append([None if self.forbidden[a, b] else self.entry(a + 1, b + 1)
                        for b in range(self.n)])
        return out

    def masked(self, mask: np.ndarray) -> DistanceMatrix:
        """Copy with additional FORBIDDEN entries wherever ``mask`` is true."""
        mask = np.asarray(mask, dtype=bool) | self.forbidden
        np.fill_diagonal(mask, False)
        return DistanceMatrix(self.values, mask, self.kind)

    def relabeled(self, perm: Sequence[int]) -> DistanceMatrix:
        """Matrix c'_{uv} = c_{perm(u) perm(v)}; ``perm[u-1]`` is the old label of new city u."""
        p = np.asarray(perm, dtype=int) - 1
        if sorted(p.tolist()) != list(range(self.n)):
            raise ValueError("relabeling must be a permutation of 1..n")
        idx = np.ix_(p, p)
        return DistanceMatrix(self.values[idx], self.forbidden[idx], self.kind)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return (self.kind == other.kind
                and np.array_equal(self.forbidden, other.forbidden)
                and np.array_equal(self.values, other.values))

    __hash__ = None


def _int_array(cells, n: int) -> np.ndarray:
    flat = [int(x) for row in cells for x in row]
    if flat and max(abs(x) for x in flat) > _INT64_SAFE:
        arr = np.empty(n * n, dtype=object)
        arr[:] = flat
        return arr.reshape(n, n)
    return np.array(flat, dtype=np.int64).reshape(n, n)


def build_matrix(points: PointSet | Iterable, metric: str = "euclidean") -> DistanceMatrix:
    """Distance matrix of planar points under ``"euclidean"`` or ``"rectilinear"``."""
    if not isinstance(points, PointSet):
        points = PointSet(tuple(points))
    xy = np.array(points.points, dtype=float).reshape(-1, 2)
    diff = xy[:, None, :] - xy[None, :, :]
    if metric == "rectilinear":
        d = np.abs(diff).sum(axis=-1)
        if points.is_integral:
            return DistanceMatrix(np.rint(d).astype(np.int64),
                                  np.zeros(d.shape, dtype=bool), "integer")
        return DistanceMatrix(d, np.zeros(d.shape, dtype=bool), "float")
    if metric == "euclidean":
        d = np.sqrt((diff**2).sum(axis=-1))
        d = (d + d.T) / 2  # guard against asymmetric rounding
        return DistanceMatrix(d, np.zeros(d.shape, dtype=bool), "float")
    raise ValueError(f"unknown metric {metric!r}")


@dataclass(frozen=True)
class Coloring:
    """Partition of the cities into blue (K1) and red (K2), equal halves."""

    blue: tuple[int, ...]
    red: tuple[int, ...]

    def __post_init__(self):
        blue = tuple(sorted(int(c) for c in self.blue))
        red = tuple(sorted(int(c) for c in self.red))
        n = len(blue) + len(red)
        if len(blue) != len(red):
            raise ColoringError("blue and red sets must have equal size")
        if sorted(blue + red) != list(range(1, n + 1)):
            raise ColoringError("coloring must partition the cities 1..n")
        object.__setattr__(self, "blue", blue)
        object.__setattr__(self, "red", red)

    @classmethod
    def even_odd(cls, n: int) -> Coloring:
        if n % 2:
            raise ColoringError(f"n must be even, got {n}")
        return cls(tuple(range(1, n + 1, 2)), tuple(range(2, n + 1, 2)))

    @classmethod
    def halves(cls, n: int) -> Coloring:
        """Blue = 1..k, red = k+1..2k."""
        if n % 2:
            raise ColoringError(f"n must be even, got {n}")
        k = n // 2
        return cls(tuple(range(1, k + 1)), tuple(range(k + 1, n + 1)))

    @property
    def n(self) -> int:
        return 2 * len(self.blue)

    @property
    def k(self) -> int:
        return len(self.blue)

    @property
    def is_even_odd(self) -> bool:
        return all(c % 2 == 1 for c in self.blue)

    def labels(self) -> np.ndarray:
        """Array ``lab`` of length n+1 with lab[c] = 0 for blue, 1 for red (lab[0] unused)."""
        lab = np.zeros(self.n + 1, dtype=np.int8)
        lab[list(self.red)] = 1
        return lab

    def is_blue(self, city: int) -> bool:
        return city in set(self.blue)


def canonical_sequence(seq: Sequence[int]) -> tuple[int, ...]:
    """Rotate to start at city 1 and orient so that seq[1] < seq[-1]."""
    seq = [int(c) for c in seq]
    if not seq:
        raise TourError("empty tour")
    n = len(seq)
    if sorted(seq) != list(range(1, n + 1)):
        raise TourError(f"not a permutation of 1..{n}: {seq}")
    p = seq.index(1)
    seq = seq[p:] + seq[:p]
    if n > 2 and seq[1] > seq[-1]:
        seq = [seq[0]] + seq[:0:-1]
    return tuple(seq)


@dataclass(frozen=True)
class Tour:
    """A cyclic tour, stored canonically.  Any rotation or reversal may be passed in."""

    sequence: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sequence", canonical_sequence(self.sequence))

    @property
    def n(self) -> int:
        return len(self.sequence)

    def __iter__(self):
        return iter(self.sequence)

    def __len__(self) -> int:
        return len(self.sequence)

    def edges(self) -> list[tuple[int, int]]:
        s = self.sequence
        return [(s[t], s[(t + 1) % len(s)]) for t in range(len(s))]

    def neighbors(self) -> dict[int, tuple[int, int]]:
        """city -> (predecessor, successor) in the stored orientation."""
        s = self.sequence
        n = len(s)
        return {s[t]: (s[t - 1], s[(t + 1) % n]) for t in range(n)}

    def __str__(self) -> str:
        return "<" + ",".join(map(str, self.sequence)) + ">"


def _as_sequence(t) -> tuple[int, ...]:
    return t.sequence if isinstance(t, Tour) else tuple(int(c) for c in t)


def tour_length(C: DistanceMatrix, t):
    """Sum of the edge lengths around the cycle, or FORBIDDEN if any edge is masked."""
    s = np.asarray(_as_sequence(t), dtype=int) - 1
    if len(s) != C.n:
        raise TourError(f"tour has {len(s)} cities, matrix has {C.n}")
    nxt = np.roll(s, -1)
    if C.forbidden[s, nxt].any():
        return FORBIDDEN
    if C.is_integer:
        return int(sum(int(x) for x in C.values[s, nxt]))
    return float(C.values[s, nxt].sum())


@dataclass(frozen=True)
class DeltaValue:
    value: float | int
    i: int
    l: int
    j: int
    m: int

    def __float__(self) -> float:
        return float(self.value)


def delta(C: DistanceMatrix, i: int, l: int, j: int, m: int) -> DeltaValue:
    """Δ(i,l,j,m) = c_ij + c_lm - c_im - c_jl."""
    if len({i, l, j, m}) != 4:
        raise ValueError(f"Δ needs four distinct cities, got {(i, l, j, m)}")
    terms = [C.entry(i, j), C.entry(l, m), C.entry(i, m), C.entry(j, l)]
    if any(x is FORBIDDEN for x in terms):
        raise MaskedEntryError(f"masked entry in Δ{(i, l, j, m)}")
    return DeltaValue(terms[0] + terms[1] - terms[2] - terms[3], i, l, j, m)


def is_feasible_bipartite(t, col: Coloring) -> bool:
    """True iff every tour edge joins a blue and a red city."""
    s = _as_sequence(t)
    if len(s) != col.n:
        return False
    lab = col.labels()
    arr = lab[np.asarray(s)]
    return bool(np.all(arr != np.roll(arr, -1)))


def valleys(t) -> list[int]:
    """Cities whose two cyclic neighbours are both larger."""
    s = _as_sequence(t)
    n = len(s)
    return sorted(s[p] for p in range(n) if s[p - 1] > s[p] < s[(p + 1) % n])


def is_pyramidal(t) -> bool:
    return valleys(t) == [1]

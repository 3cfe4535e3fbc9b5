"""Exhaustive checkers for the Van der Veen inequality families.

Every inequality is written as ``lhs <= rhs`` and reported through its
slack ``lhs - rhs``; it is violated iff the slack exceeds the tolerance.
All reports list every violation, sorted by index tuple.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .core import DEFAULT_TOLERANCE, DistanceMatrix, MaskedEntryError

VAN_DER_VEEN = "van-der-veen"
RELAXED = "relaxed-van-der-veen"
A_SYSTEM = "a-system"

# Families of the reduced-matrix system.  "diagonal" is
#   a_ii + a_lm <= a_im + a_li,            i = 1..k-1; l, m = i+1..k
# and "subdiagonal" is
#   a_{i,i-1} + a_lm <= a_im + a_{l,i-1},  i = 2..k-1; l = i+1..k; m = i..k
DIAGONAL = "diagonal"
SUBDIAGONAL = "subdiagonal"


class Violation(NamedTuple):
    indices: tuple
    slack: float | int


@dataclass(frozen=True)
class ViolationReport:
    family: str
    total_checked: int
    violations: list[Violation] = field(default_factory=list)
    tolerance: float = DEFAULT_TOLERANCE

    @property
    def violated_count(self) -> int:
        return len(self.violations)

    @property
    def ok(self) -> bool:
        return not self.violations

    def violated_indices(self) -> list[tuple]:
        return [v.indices for v in self.violations]


@dataclass(frozen=True, eq=False)
class ReducedMatrix:
    """The k x k blue-to-red block, entry (i, j) = c_{2i-1, 2j}."""

    entries: np.ndarray
    kind: str = "float"

    def __post_init__(self):
        a = np.array(self.entries)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("reduced matrix must be square")
        if self.kind == "integer" and a.dtype.kind not in "iuO":
            a = a.astype(np.int64)
        elif self.kind == "float":
            a = a.astype(float)
            if not np.all(np.isfinite(a)):
                raise ValueError("reduced matrix entries must be finite")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @classmethod
    def from_rows(cls, rows) -> ReducedMatrix:
        arr = np.array(rows)
        if arr.dtype.kind in "iu":
            return cls(arr.astype(np.int64), "integer")
        return cls(arr.astype(float), "float")

    @property
    def k(self) -> int:
        return self.entries.shape[0]

    @property
    def is_integer(self) -> bool:
        return self.kind == "integer"

    def effective_tolerance(self, tol: float) -> float:
        return 0 if self.is_integer else tol

    def to_rows(self) -> list[list]:
        cast = int if self.is_integer else float
        return [[cast(x) for x in row] for row in self.entries]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ReducedMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    __hash__ = None


def van_der_veen_count(n: int) -> int:
    """Number of triples 1 <= i < j < j+1 < m <= n."""
    return sum((j - 1) * (n - j - 1) for j in range(2, n - 1))


def _cast(kind: str):
    return int if kind == "integer" else float


def _collect(slack: np.ndarray, tol, make_index, cast) -> list[Violation]:
    out = []
    for a, b in zip(*np.nonzero(slack > tol)):
        out.append(Violation(make_index(int(a), int(b)), cast(slack[a, b])))
    return out


def check_van_der_veen(C: DistanceMatrix, tol: float = DEFAULT_TOLERANCE) -> ViolationReport:
    """Check c_ij + c_{j+1,m} <= c_im + c_{j+1,j} for all 1 <= i < j < j+1 < m <= n.

    Violations are indexed by the triple (i, j, m).
    """
    n = C.n
    if n < 4:
        raise ValueError("Van der Veen conditions need n >= 4")
    tol = C.effective_tolerance(tol)
    off = ~np.eye(n, dtype=bool)
    if (C.forbidden & off).any():
        raise MaskedEntryError("Van der Veen check on a matrix with FORBIDDEN entries")
    c = C.values
    cast = _cast(C.kind)
    found: list[Violation] = []
    total = 0
    # 0-based: j in 1..n-3, i in 0..j-1, m in j+2..n-1
    for j in range(1, n - 2):
        ii = np.arange(0, j)
        mm = np.arange(j + 2, n)
        total += len(ii) * len(mm)
        slack = c[ii, j][:, None] + c[j + 1, mm][None, :] - c[np.ix_(ii, mm)] - c[j + 1, j]
        found += _collect(slack, tol,
                          lambda a, b, j=j, ii=ii, mm=mm: (int(ii[a]) + 1, j + 1, int(mm[b]) + 1),
                          cast)
    found.sort()
    return ViolationReport(VAN_DER_VEEN, total, found, tol)


def check_relaxed_van_der_veen(C: DistanceMatrix, tol: float = DEFAULT_TOLERANCE) -> ViolationReport:
    """Check c_{j+1,j} + c_lm - c_jl - c_{j+1,m} <= 0 for j+1 < l, m <= n,
    with m of the same parity as j and l of the same parity as j+1.

    Violations are indexed by the triple (j, l, m).
    """
    n = C.n
    if n % 2:
        raise ValueError("relaxed Van der Veen conditions need even n")
    tol = C.effective_tolerance(tol)
    c = C.values
    fb = C.forbidden
    cast = _cast(C.kind)
    found: list[Violation] = []
    total = 0
    # 1-based j runs 1..n-2; 0-based jj = j-1.  l ≡ j+1, m ≡ j (mod 2), both > j+1.
    for j in range(1, n - 1):
        ll = np.arange(j + 3, n + 1, 2) - 1
        mm = np.arange(j + 2, n + 1, 2) - 1
        if not len(ll) or not len(mm):
            continue
        jj = j - 1
        total += len(ll) * len(mm)
        blk = np.ix_(ll, mm)
        if (fb[jj + 1, jj] or fb[blk].any() or fb[jj, ll].any() or fb[jj + 1, mm].any()):
            raise MaskedEntryError("relaxed check touches a FORBIDDEN entry")
        slack = c[jj + 1, jj] + c[blk] - c[jj, ll][:, None] - c[jj + 1, mm][None, :]
        found += _collect(slack, tol,
                          lambda a, b, j=j, ll=ll, mm=mm: (j, int(ll[a]) + 1, int(mm[b]) + 1),
                          cast)
    found.sort()
    return ViolationReport(RELAXED, total, found, tol)


def extract_a(C: DistanceMatrix) -> ReducedMatrix:
    """The k x k matrix with a_ij = c_{2i-1, 2j} (blue rows, red columns)."""
    if C.n % 2:
        raise ValueError(f"extract_a needs even n, got {C.n}")
    blk = np.ix_(np.arange(0, C.n, 2), np.arange(1, C.n, 2))
    if C.forbidden[blk].any():
        raise MaskedEntryError("blue-to-red block contains FORBIDDEN entries")
    return ReducedMatrix(C.values[blk].copy(), C.kind)


def a_system_count(k: int) -> int:
    diag = sum((k - i) ** 2 for i in range(1, k))
    sub = sum((k - i) * (k - i + 1) for i in range(2, k))
    return diag + sub


def check_a_system(A: ReducedMatrix, tol: float = DEFAULT_TOLERANCE) -> ViolationReport:
    """Check the reduced-matrix system on A.

    Violations are indexed by ``(family, i, l, m)`` where ``l`` is a row and
    ``m`` a column of A (1-based).
    """
    if not isinstance(A, ReducedMatrix):
        A = ReducedMatrix.from_rows(A)
    a = A.entries
    k = A.k
    tol = A.effective_tolerance(tol)
    cast = int if A.is_integer else float
    found: list[Violation] = []
    total = 0
    for i in range(1, k):  # 1-based i
        x = i - 1
        rows = np.arange(i, k)  # 0-based rows l = i+1..k
        cols = np.arange(i, k)
        total += len(rows) * len(cols)
        slack = a[x, x] + a[np.ix_(rows, cols)] - a[x, cols][None, :] - a[rows, x][:, None]
        found += _collect(slack, tol,
                          lambda r, s, i=i, rows=rows, cols=cols:
                              (DIAGONAL, i, int(rows[r]) + 1, int(cols[s]) + 1),
                          cast)
        if i >= 2:
            cols = np.arange(i - 1, k)  # m = i..k
            total += len(rows) * len(cols)
            slack = (a[x, x - 1] + a[np.ix_(rows, cols)]
                     - a[x, cols][None, :] - a[rows, x - 1][:, None])
            found += _collect(slack, tol,
                              lambda r, s, i=i, rows=rows, cols=cols:
                                  (SUBDIAGONAL, i, int(rows[r]) + 1, int(cols[s]) + 1),
                              cast)
    found.sort()
    return ViolationReport(A_SYSTEM, total, found, tol)


def relaxed_to_a_index(j: int, l: int, m: int) -> tuple:
    """Translate a relaxed triple (j, l, m) on C to its inequality on A = extract_a(C)."""
    if j % 2:
        return (DIAGONAL, (j + 1) // 2, (m + 1) // 2, l // 2)
    return (SUBDIAGONAL, j // 2 + 1, (l + 1) // 2, m // 2)

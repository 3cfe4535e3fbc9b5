"""Hardness-reduction instances and exhaustive ground-truth oracles."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import (Coloring, ColoringError, DistanceMatrix, MaskedEntryError,
                   Tour)

DEFAULT_BRUTE_FORCE_CAP = 7
DEFAULT_HAMILTON_CAP = 12


class InstanceTooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph between K1 = {1..k} and K2 = {k+1..2k}.

    ``adjacency[i][j]`` is true when blue city i+1 is joined to red city k+j+1.
    """

    k: int
    adjacency: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        adj = tuple(tuple(bool(x) for x in row) for row in self.adjacency)
        if len(adj) != self.k or any(len(r) != self.k for r in adj):
            raise ValueError(f"adjacency must be {self.k} x {self.k}")
        object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_edges(cls, k: int, edges: Iterable[tuple[int, int]]) -> BipartiteGraph:
        """Edges as (i, j) with i in 1..k and j in k+1..2k."""
        adj = [[False] * k for _ in range(k)]
        for i, j in edges:
            if not (1 <= i <= k and k + 1 <= j <= 2 * k):
                raise ValueError(f"edge ({i}, {j}) does not join K1 = 1..{k} to K2 = {k + 1}..{2 * k}")
            adj[i - 1][j - k - 1] = True
        return cls(k, tuple(map(tuple, adj)))

    @classmethod
    def from_mask(cls, k: int, mask: int) -> BipartiteGraph:
        """Graph whose adjacency bit i*k + j is bit number i*k+j of ``mask``."""
        return cls(k, tuple(tuple(bool(mask >> (i * k + j) & 1) for j in range(k)) for i in range(k)))

    @classmethod
    def complete(cls, k: int) -> BipartiteGraph:
        return cls(k, tuple((True,) * k for _ in range(k)))

    def edges(self) -> list[tuple[int, int]]:
        return [(i + 1, self.k + j + 1) for i in range(self.k) for j in range(self.k)
                if self.adjacency[i][j]]


def reduce_graph(G: BipartiteGraph):
    """Van der Veen matrix whose BTSP optimum is 0 iff G is Hamiltonian.

    Cross entries are 0 for edges and 1 otherwise; the blue block uses
    c_ij = j - (k+1) and the red block c_{k+i,k+j} = -i for i < j.
    Returns ``(matrix, coloring)`` with blue = 1..k, red = k+1..2k.
    """
    k = G.k
    if k < 2:
        raise ValueError("reduction needs k >= 2")
    n = 2 * k
    c = np.zeros((n, n), dtype=np.int64)
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            c[i - 1, j - 1] = c[j - 1, i - 1] = -(k + 1) + j
            c[k + i - 1, k + j - 1] = c[k + j - 1, k + i - 1] = -i
        for j in range(k):
            c[i - 1, k + j] = c[k + j, i - 1] = 0 if G.adjacency[i - 1][j] else 1
    return DistanceMatrix(c, np.zeros((n, n), dtype=bool), "integer"), Coloring.halves(n)


def canonical_tour_count(k: int) -> int:
    return 1 if k == 1 else math.factorial(k - 1) * math.factorial(k) // 2


def _tour_blocks(col: Coloring):
    """Yield arrays of canonical bipartite tours (0-based cities), one block per
    ordering of the colour class that contains city 1."""
    own = col.blue if 1 in col.blue else col.red
    other = col.red if own is col.blue else col.blue
    rest = [c - 1 for c in own if c != 1]
    others = np.array(list(itertools.permutations([c - 1 for c in other])), dtype=np.int16)
    n = col.n
    for same in itertools.permutations(rest):
        block = np.empty((len(others), n), dtype=np.int16)
        block[:, 0] = 0
        block[:, 2::2] = same
        block[:, 1::2] = others
        if n > 2:
            block = block[block[:, 1] < block[:, -1]]
        yield block


def bipartite_tours(col: Coloring) -> np.ndarray:
    """All canonical bipartite tours as a (count, n) array of 1-based cities."""
    return np.concatenate(list(_tour_blocks(col))).astype(int) + 1


def brute_force_btsp(C: DistanceMatrix, col: Coloring, cap: int = DEFAULT_BRUTE_FORCE_CAP):
    """Exhaustive BTSP optimum ``(tour, length)`` for any equal-halves coloring.

    Ties go to the lexicographically smallest canonical sequence.
    """
    if col.n != C.n:
        raise ColoringError(f"coloring covers {col.n} cities, matrix has {C.n}")
    if col.k > cap:
        raise InstanceTooLargeError(f"instance too large for brute force (k={col.k} > {cap})")
    lab = col.labels()[1:]
    cross = lab[:, None] != lab[None, :]
    if (C.forbidden & cross).any():
        raise MaskedEntryError("brute force needs every blue-red entry to be finite")
    c = C.values
    best_len, best_seq = None, None
    for block in _tour_blocks(col):
        b = block.astype(np.intp)
        lengths = c[b, np.roll(b, -1, axis=1)].sum(axis=1)
        low = lengths.min()
        if best_len is not None and low > best_len:
            continue
        hits = b[lengths == low]
        top = hits[np.lexsort(hits.T[::-1])[0]]
        if best_len is None or low < best_len or tuple(top) < best_seq:
            best_len, best_seq = low, tuple(int(x) for x in top)
    length = int(best_len) if C.is_integer else float(best_len)
    return Tour(tuple(x + 1 for x in best_seq)), length


def has_hamiltonian_cycle(G: BipartiteGraph, cap: int = DEFAULT_HAMILTON_CAP) -> bool:
    """Backtracking search for a cycle through all 2k vertices."""
    k = G.k
    if k > cap:
        raise InstanceTooLargeError(f"graph too large for exhaustive search (k={k} > {cap})")
    if k < 2:
        return False
    # vertices 0..k-1 blue, k..2k-1 red
    nbrs = [[k + j for j in range(k) if G.adjacency[i][j]] for i in range(k)]
    nbrs += [[i for i in range(k) if G.adjacency[i][j]] for j in range(k)]
    if any(len(x) < 2 for x in nbrs):
        return False
    n = 2 * k
    seen = [False] * n
    seen[0] = True

    def extend(v: int, depth: int) -> bool:
        if depth == n:
            return 0 in nbrs[v]
        for w in nbrs[v]:
            if not seen[w]:
                seen[w] = True
                if extend(w, depth + 1):
                    return True
                seen[w] = False
        return False

    return extend(0, 1)


def line_points(k: int, seed: int | None = None, spread: int = 10) -> list[int]:
    """2k sorted integer positions; coincident points are allowed."""
    rng = np.random.default_rng(seed)
    return sorted(int(x) for x in rng.integers(0, spread * 2 * k, size=2 * k))


def generate_line_instance(k: int, seed: int | None = None):
    """Van der Veen instance from sorted points on a line, c_ij = |p_i - p_j|.

    Returns ``(matrix, coloring)`` with the even-odd coloring.
    """
    if k < 2:
        raise ValueError("line instances need k >= 2")
    p = np.array(line_points(k, seed), dtype=np.int64)
    c = np.abs(p[:, None] - p[None, :])
    return DistanceMatrix(c, np.zeros(c.shape, dtype=bool), "integer"), Coloring.even_odd(2 * k)


def random_bipartite_tour(col: Coloring, rng: np.random.Generator) -> Tour:
    """Uniformly random feasible bipartite tour."""
    blue = list(rng.permutation(col.blue))
    red = list(rng.permutation(col.red))
    seq = [int(x) for pair in zip(blue, red) for x in pair]
    return Tour(tuple(seq))

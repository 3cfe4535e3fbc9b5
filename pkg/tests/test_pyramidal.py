import itertools
import time

import numpy as np
import pytest

from btsp import (FORBIDDEN, Coloring, ColoringError, DistanceMatrix, Tour,
                  brute_force_btsp, check_relaxed_van_der_veen, dp_trace,
                  generate_line_instance, is_feasible_bipartite, is_pyramidal,
                  solve_pyramidal_btsp, tour_length)

from conftest import FIG4_TOUR, slow_btsp_optimum


def pyramidal_optimum(C, col):
    """Oracle: enumerate all 2^(n-2) pyramidal tours by their ascending set."""
    n = C.n
    inner = list(range(2, n))
    best = None
    for r in range(len(inner) + 1):
        for up in itertools.combinations(inner, r):
            down = [x for x in inner if x not in up]
            seq = [1, *up, n, *reversed(down)]
            if not is_feasible_bipartite(seq, col):
                continue
            L = tour_length(C, seq)
            if L is FORBIDDEN:
                continue
            best = L if best is None else min(best, L)
    return best


def random_symmetric(n, rng, integer=True):
    a = rng.integers(0, 40, size=(n, n)) if integer else rng.uniform(0, 40, size=(n, n))
    a = np.triu(a, 1)
    return DistanceMatrix.from_array(a + a.T)


class TestSolve:
    def test_fig4(self, fig4):
        tour, length = solve_pyramidal_btsp(fig4.matrix, fig4.coloring)
        assert tour == Tour(FIG4_TOUR)
        assert tour.sequence == FIG4_TOUR
        assert length == 276

    def test_fig4_brute_force_agrees(self, fig4):
        assert brute_force_btsp(fig4.matrix, fig4.coloring)[1] == 276

    def test_n4_unique_tour(self):
        C = DistanceMatrix.from_rows([[0, 1, 9, 1], [1, 0, 1, 9], [9, 1, 0, 1], [1, 9, 1, 0]])
        tour, length = solve_pyramidal_btsp(C, Coloring.even_odd(4))
        assert tour.sequence == (1, 2, 3, 4) and length == 4

    def test_instance_a_matches_oracle(self, instance_a):
        _, length = solve_pyramidal_btsp(instance_a.matrix, instance_a.coloring)
        oracle = slow_btsp_optimum(instance_a.matrix.to_rows(), instance_a.coloring.blue)
        assert length == pytest.approx(oracle, abs=1e-9)

    @pytest.mark.parametrize("seed", range(25))
    def test_any_matrix_gives_best_pyramidal(self, seed):
        rng = np.random.default_rng(seed)
        n = 2 * int(rng.integers(2, 6))
        C = random_symmetric(n, rng, integer=bool(seed % 2))
        col = Coloring.even_odd(n)
        tour, length = solve_pyramidal_btsp(C, col)
        assert is_pyramidal(tour) and is_feasible_bipartite(tour, col)
        assert tour_length(C, tour) == pytest.approx(length, abs=1e-9)
        assert length == pytest.approx(pyramidal_optimum(C, col), abs=1e-9)
        # sandwich: exhaustive optimum is never larger
        assert brute_force_btsp(C, col)[1] <= length + 1e-9

    @pytest.mark.parametrize("seed", range(15))
    def test_line_instances_optimal(self, seed):
        rng = np.random.default_rng(seed)
        C, col = generate_line_instance(int(rng.integers(2, 6)), seed=seed)
        assert check_relaxed_van_der_veen(C).ok
        _, length = solve_pyramidal_btsp(C, col)
        assert length == slow_btsp_optimum(C.to_rows(), col.blue)

    def test_rejects_other_colorings(self, fig4):
        with pytest.raises(ColoringError, match="solver requires even-odd coloring"):
            solve_pyramidal_btsp(fig4.matrix, Coloring.halves(12))

    def test_rejects_odd_n(self):
        C = DistanceMatrix.from_array(np.ones((5, 5), dtype=int))
        with pytest.raises((ValueError, ColoringError)):
            solve_pyramidal_btsp(C, Coloring((1, 3), (2, 4)))

    def test_user_forbidden_entries(self):
        rng = np.random.default_rng(3)
        C = random_symmetric(8, rng)
        rows = C.to_rows()
        rows[0][7] = rows[7][0] = None  # edge 1-8 unusable
        Cm = DistanceMatrix.from_rows(rows)
        col = Coloring.even_odd(8)
        tour, length = solve_pyramidal_btsp(Cm, col)
        assert (1, 8) not in {tuple(sorted(e)) for e in tour.edges()}
        assert length == pyramidal_optimum(Cm, col)

    def test_object_integers(self):
        # entries past int64-safe range are kept as Python ints
        big = 10**19
        rng = np.random.default_rng(0)
        a = np.triu(rng.integers(0, 40, size=(8, 8)), 1)
        a = (a + a.T).tolist()
        shifted = [[0 if i == j else a[i][j] + big for j in range(8)] for i in range(8)]
        col = Coloring.even_odd(8)
        _, ref = solve_pyramidal_btsp(DistanceMatrix.from_rows(a), col)
        _, length = solve_pyramidal_btsp(DistanceMatrix.from_rows(shifted), col)
        assert length == ref + 8 * big


class TestTrace:
    def test_base_case(self, fig4):
        st = dp_trace(fig4.matrix, fig4.coloring)
        assert st.value(1, 2) == fig4.matrix.entry(1, 2)

    def test_closing_value(self, fig4):
        st = dp_trace(fig4.matrix, fig4.coloring)
        assert st.value(11, 12) + fig4.matrix.entry(11, 12) == 276

    def test_masked_diagonal(self, fig4):
        # E(2, 3) needs paths 1-2 and 1-3; edge 1-3 joins two blue cities
        st = dp_trace(fig4.matrix, fig4.coloring)
        assert st.value(2, 3) is FORBIDDEN

    def test_off_diagonal_recurrence(self, fig4):
        st = dp_trace(fig4.matrix, fig4.coloring)
        C = fig4.matrix
        for j in range(3, 13):
            for i in range(1, j - 1):
                prev = st.value(i, j - 1)
                cur = st.value(i, j)
                if prev is FORBIDDEN:
                    assert cur is FORBIDDEN
                else:
                    assert cur == prev + C.entry(j - 1, j)

    def test_diagonal_matches_bruteforce_definition(self):
        # E(j-1, j) equals the cheapest pair of increasing paths covering 1..j
        rng = np.random.default_rng(8)
        C = random_symmetric(8, rng)
        col = Coloring.even_odd(8)
        st = dp_trace(C, col)
        for j in range(3, 9):
            best = None
            inner = list(range(2, j - 1))
            for r in range(len(inner) + 1):
                for a in itertools.combinations(inner, r):
                    b = [x for x in inner if x not in a]
                    p1 = [1, *a, j - 1]
                    p2 = [1, *b, j]
                    edges = list(zip(p1, p1[1:])) + list(zip(p2, p2[1:]))
                    if any((u - v) % 2 == 0 for u, v in edges):
                        continue
                    L = sum(C.entry(u, v) for u, v in edges)
                    best = L if best is None else min(best, L)
            got = st.value(j - 1, j)
            assert (got is FORBIDDEN and best is None) or got == best


def _time_best(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def test_quadratic_scaling():
    times = {}
    for n in (500, 1000, 2000):
        C, col = generate_line_instance(n // 2, seed=n)
        times[n] = _time_best(lambda: solve_pyramidal_btsp(C, col))
    assert times[2000] < 2.0
    assert times[1000] / times[500] <= 4.5
    assert times[2000] / times[1000] <= 4.5

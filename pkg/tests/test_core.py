import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from btsp import (FORBIDDEN, Coloring, ColoringError, DistanceMatrix,
                  MaskedEntryError, PointSet, Tour, TourError, build_matrix,
                  delta, is_feasible_bipartite, is_pyramidal, tour_length,
                  valleys)
from btsp.core import canonical_sequence

from conftest import FIG4_TOUR, FIG4_X, FIG4_Y


def fig4_points():
    return PointSet(tuple(zip(FIG4_X, FIG4_Y)))


def random_symmetric(n, rng, integer=True):
    a = rng.integers(-50, 50, size=(n, n)) if integer else rng.normal(size=(n, n))
    a = np.triu(a, 1)
    a = a + a.T
    return DistanceMatrix.from_array(a)


class TestBuildMatrix:
    def test_fig4_entries(self):
        C = build_matrix(fig4_points(), "rectilinear")
        assert C.kind == "integer"
        assert C.entry(1, 2) == 17
        assert C.entry(1, 4) == 39

    def test_repeated_point(self):
        C = build_matrix(PointSet(((3.5, 1.0), (3.5, 1.0), (0, 0), (1, 1))), "euclidean")
        assert C.entry(1, 2) == 0

    def test_euclidean_is_float_and_symmetric(self):
        C = build_matrix(fig4_points(), "euclidean")
        assert C.kind == "float"
        assert np.array_equal(C.values, C.values.T)
        assert C.entry(1, 2) == pytest.approx(math.hypot(10, 7))

    def test_rectilinear_noninteger_points(self):
        C = build_matrix(PointSet(((0.5, 0), (0, 0))), "rectilinear")
        assert C.kind == "float" and C.entry(1, 2) == 0.5

    def test_unknown_metric(self):
        with pytest.raises(ValueError):
            build_matrix(fig4_points(), "chebyshev")

    def test_nonfinite_point(self):
        with pytest.raises(ValueError):
            PointSet(((0, math.inf),))


class TestDistanceMatrix:
    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError):
            DistanceMatrix.from_rows([[0, 1], [2, 0]])

    def test_forbidden_roundtrip(self):
        C = DistanceMatrix.from_rows([[0, None, 1], [None, 0, 2], [1, 2, 0]])
        assert C.entry(1, 2) is FORBIDDEN
        assert C.to_rows()[0][1] is None
        assert C.entry(2, 3) == 2

    def test_one_sided_mask_rejected(self):
        with pytest.raises(ValueError):
            DistanceMatrix.from_rows([[0, None], [1, 0]])

    def test_values_read_only(self):
        C = DistanceMatrix.from_rows([[0, 1], [1, 0]])
        with pytest.raises(ValueError):
            C.values[0, 1] = 5

    def test_huge_integers_stay_exact(self):
        big = 10**20
        C = DistanceMatrix.from_rows([[0, big, 1, big], [big, 0, big, 1], [1, big, 0, big], [big, 1, big, 0]])
        assert tour_length(C, (1, 2, 3, 4)) == 4 * big

    def test_relabel(self):
        rng = np.random.default_rng(3)
        C = random_symmetric(6, rng)
        perm = (3, 1, 2, 6, 5, 4)
        D = C.relabeled(perm)
        for u in range(1, 7):
            for v in range(1, 7):
                if u != v:
                    assert D.entry(u, v) == C.entry(perm[u - 1], perm[v - 1])


class TestColoring:
    def test_even_odd(self):
        col = Coloring.even_odd(6)
        assert col.blue == (1, 3, 5) and col.red == (2, 4, 6)
        assert col.is_even_odd
        assert not Coloring.halves(6).is_even_odd

    @pytest.mark.parametrize("blue,red", [((1, 2), (3,)), ((1, 2), (2, 3)), ((1, 3), (2, 5))])
    def test_invalid(self, blue, red):
        with pytest.raises(ColoringError):
            Coloring(blue, red)

    def test_odd_n(self):
        with pytest.raises(ColoringError):
            Coloring.even_odd(5)


class TestTour:
    def test_canonical_rotation_and_reversal(self):
        assert Tour((3, 4, 1, 2)).sequence == (1, 2, 3, 4)
        assert Tour((1, 4, 3, 2)).sequence == (1, 2, 3, 4)
        assert Tour((6, 1, 2, 3, 4, 5, 8, 9, 12, 11, 10, 7)).sequence == (1, 2, 3, 4, 5, 8, 9, 12, 11, 10, 7, 6)

    def test_not_a_permutation(self):
        with pytest.raises(TourError):
            Tour((1, 2, 2, 4))

    @given(st.permutations(list(range(1, 9))))
    def test_canonical_is_idempotent_and_oriented(self, perm):
        s = canonical_sequence(perm)
        assert s[0] == 1 and s[1] < s[-1]
        assert canonical_sequence(s) == s
        assert canonical_sequence(list(reversed(perm))) == s


class TestTourLength:
    def test_fig4_from_coordinates(self, fig4):
        # oracle: rectilinear edges summed straight from the coordinate table
        pts = list(zip(FIG4_X, FIG4_Y))
        seq = FIG4_TOUR
        expected = sum(abs(pts[a - 1][0] - pts[b - 1][0]) + abs(pts[a - 1][1] - pts[b - 1][1])
                       for a, b in zip(seq, seq[1:] + seq[:1]))
        assert expected == 276
        assert tour_length(fig4.matrix, Tour(FIG4_TOUR)) == 276

    def test_zero_matrix(self):
        C = DistanceMatrix.from_array(np.zeros((6, 6), dtype=int))
        assert tour_length(C, (1, 4, 3, 2, 5, 6)) == 0

    def test_forbidden_edge(self):
        C = DistanceMatrix.from_rows([[0, 1, None, 1], [1, 0, 1, 1], [None, 1, 0, 1], [1, 1, 1, 0]])
        assert tour_length(C, (1, 3, 2, 4)) is FORBIDDEN
        assert tour_length(C, (1, 2, 3, 4)) == 4

    @settings(max_examples=50)
    @given(st.permutations(list(range(1, 11))), st.integers(0, 9), st.integers(0, 2**16))
    def test_rotation_reversal_invariance(self, perm, shift, seed):
        C = random_symmetric(10, np.random.default_rng(seed))
        base = tour_length(C, perm)
        assert tour_length(C, perm[shift:] + perm[:shift]) == base
        assert tour_length(C, list(reversed(perm))) == base


class TestDelta:
    def test_swap_identity_random(self):
        rng = np.random.default_rng(11)
        for integer in (True, False):
            C = random_symmetric(12, rng, integer)
            for _ in range(10_000):
                i, l, j, m = (int(x) for x in rng.choice(np.arange(1, 13), 4, replace=False))
                a = delta(C, i, l, j, m).value
                b = delta(C, j, m, i, l).value
                assert a == b if integer else math.isclose(a, b, abs_tol=1e-12)

    def test_constant_matrix(self):
        C = DistanceMatrix.from_array(np.full((6, 6), 7))
        assert delta(C, 1, 2, 3, 4).value == 0

    def test_telescoping_on_fig4(self, fig4):
        rng = np.random.default_rng(5)
        C = fig4.matrix
        checked = 0
        while checked < 300:
            j = int(rng.integers(1, 9))
            l, m = (int(x) for x in rng.integers(j + 4, 13, size=2))
            if len({j, j + 1, j + 3, l, m}) < 5:
                continue
            lhs = delta(C, j + 1, l, j, m).value
            rhs = delta(C, j + 1, j + 3, j, m).value + delta(C, j + 3, l, j, m).value
            assert lhs == rhs
            checked += 1

    def test_telescoping_any_intermediate(self):
        rng = np.random.default_rng(9)
        C = random_symmetric(10, rng)
        for _ in range(2000):
            p, q, l, j, m = (int(x) for x in rng.choice(np.arange(1, 11), 5, replace=False))
            assert delta(C, p, l, j, m).value == delta(C, p, q, j, m).value + delta(C, q, l, j, m).value

    def test_formula(self):
        C = DistanceMatrix.from_rows([[0, 1, 2, 3], [1, 0, 5, 7], [2, 5, 0, 11], [3, 7, 11, 0]])
        # c13 + c24 - c14 - c32
        assert delta(C, 1, 2, 3, 4).value == 2 + 7 - 3 - 5

    def test_masked(self):
        C = DistanceMatrix.from_rows([[0, None, 2, 3], [None, 0, 5, 7], [2, 5, 0, 11], [3, 7, 11, 0]])
        with pytest.raises(MaskedEntryError, match="masked entry in Δ"):
            delta(C, 1, 3, 2, 4)

    def test_distinct(self):
        C = DistanceMatrix.from_array(np.zeros((4, 4), dtype=int))
        with pytest.raises(ValueError):
            delta(C, 1, 1, 2, 3)


class TestFeasibility:
    def test_identity_even_odd(self):
        for n in (4, 8, 12):
            assert is_feasible_bipartite(tuple(range(1, n + 1)), Coloring.even_odd(n))

    def test_monochromatic_edge(self):
        assert not is_feasible_bipartite((1, 3, 2, 4), Coloring.even_odd(4))

    @pytest.mark.parametrize("seq", [
        (1, 5, 2, 7, 4, 8, 3, 6),                   # k = 4
        (1, 7, 2, 9, 4, 11, 6, 12, 5, 10, 3, 8),    # k = 6
    ])
    def test_zigzag_tour_for_halves(self, seq):
        # <1, k+1, 2, k+3, 4, ..., 5, k+4, 3, k+2> with blue = 1..k
        assert is_feasible_bipartite(seq, Coloring.halves(len(seq)))
        assert not is_feasible_bipartite(seq, Coloring.even_odd(len(seq)))


class TestValleys:
    def test_identity(self):
        assert valleys(tuple(range(1, 13))) == [1]
        assert is_pyramidal(tuple(range(1, 13)))

    def test_fig4_tour(self):
        assert valleys(FIG4_TOUR) == [1]
        assert is_pyramidal(FIG4_TOUR)

    def test_three_valleys(self):
        assert valleys((1, 4, 2, 6, 3, 5)) == [1, 2, 3]
        assert not is_pyramidal((1, 4, 2, 6, 3, 5))

    @given(st.permutations(list(range(1, 10))))
    def test_pyramidal_iff_single_valley(self, perm):
        s = canonical_sequence(perm)
        peak = s.index(max(s))
        ascends = all(s[t] < s[t + 1] for t in range(peak))
        descends = all(s[t] > s[t + 1] for t in range(peak, len(s) - 1))
        assert is_pyramidal(s) == (ascends and descends)
        assert 1 in valleys(s)

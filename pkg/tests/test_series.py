import pytest

from cacti import formulas as F
from cacti import oracle, series, stats
from cacti.series import MarkerPoly


def collapse_to_one_sort(s: series.Series, order: int) -> series.Series:
    out: dict = {}
    for e, c in s.coeffs.items():
        key = (sum(e),)
        out[key] = out.get(key, 0) + c
    return series.Series(1, order, out)


class TestPlanted:
    def test_first_coefficients(self):
        fam = series.solve_planted(2, 8)
        assert fam.series[0][(1, 0)] == 1
        assert (fam.series[0] * fam.series[1])[(3, 3)] == 20

    def test_defining_equation_residual(self):
        for m, order in [(2, 8), (3, 9)]:
            fam = series.solve_planted(m, order)
            for i in range(m):
                expected = series.geometric(fam.hat(i + 1)).shift(i)
                assert expected == fam.series[i]

    def test_weighted_residual_and_single_polygon(self):
        fam = series.solve_planted(3, 7, weighted=True)
        rooted = series.series_rooted(fam)
        marker = MarkerPoly.marker
        assert rooted[(1, 1, 1)] == marker(1, 1) * marker(2, 1) * marker(3, 1)

    def test_weighted_collapse(self):
        for m in (2, 3):
            weighted = series.solve_planted(m, 7, weighted=True)
            plain = series.solve_planted(m, 7)
            for ws, ps in zip(weighted.series, plain.series):
                collapsed = series.Series(m, 7, {
                    e: c.set_ones() if isinstance(c, MarkerPoly) else c
                    for e, c in ws.coeffs.items()})
                assert collapsed == ps

    def test_weighted_monomials_count_degree_distributions(self):
        fam = series.solve_planted(2, 9, weighted=True)
        rooted = series.series_rooted(fam)
        for spec in ("1^2 2^2; 1 2 3", "1^3 3^1; 2^3"):
            d = stats.parse_degree_spec(spec)
            poly = rooted[d.color_counts]
            key = tuple(sorted(((i + 1, j), k)
                               for i, row in enumerate(d.rows) for j, k in row))
            assert poly.terms[key] == F.count_rooted(d)


class TestRootedSeries:
    def test_published_coefficients(self):
        fam = series.solve_planted(2, 11)
        assert series.series_rooted(fam)[(5, 6)] == 5292
        fam3 = series.solve_planted(3, 13)
        rooted = series.series_rooted(fam3)
        assert rooted[(1, 1, 1)] == 1
        assert rooted[(4, 4, 5)] == 225


class TestPointedSeries:
    def test_values(self):
        fam = series.solve_planted(2, 6)
        pointed = series.series_pointed_unlabelled(fam, 1)
        assert pointed[(1, 0)] == 1
        assert pointed[(2, 2)] == 2
        fam3 = series.solve_planted(3, 9)
        assert series.series_pointed_unlabelled(fam3, 2)[(1, 2, 2)] == 1

    def test_weighted_family_rejected(self):
        fam = series.solve_planted(2, 4, weighted=True)
        with pytest.raises(AssertionError):
            series.series_pointed_unlabelled(fam, 1)


class TestUnlabelledSeries:
    def test_multivariate(self):
        u = series.series_unlabelled(3, 13)
        assert u[(4, 4, 5)] == 39
        assert u[(1, 0, 0)] == 1 and u[(0, 1, 0)] == 1

    def test_one_sort(self):
        assert series.series_unlabelled(3, 9, one_sort=True)[(9,)] == 19
        assert series.series_unlabelled(2, 7, one_sort=True)[(7,)] == 28
        assert series.series_unlabelled(4, 4, one_sort=True)[(1,)] == 1

    def test_one_sort_matches_formula_column(self):
        s = series.series_unlabelled(2, 13, one_sort=True)
        for p in range(0, 13):
            assert s[(p + 1,)] == F.count_unlabelled(stats.size_stat(2, p))


class TestOneSort:
    def test_planted_coefficients(self):
        a = series.solve_one_sort(2, 8)
        assert (a - series.variable(1, 8, 0))[(7,)] == 132
        assert a[(1,)] == 1
        a3 = series.solve_one_sort(3, 9)
        assert (a3 - series.variable(1, 9, 0))[(9,)] == 55
        assert len(oracle.generate_rooted(3, 4)) == 55

    def test_support_grading(self):
        a = series.solve_one_sort(4, 10)
        for (n,), c in a.coeffs.items():
            assert n % 3 == 1 and c > 0

    def test_collapse_of_multivariate_rooted(self):
        for m, order in [(2, 8), (3, 9)]:
            fam = series.solve_planted(m, order)
            collapsed = collapse_to_one_sort(series.series_rooted(fam), order)
            a = series.solve_one_sort(m, order)
            assert collapsed == a - series.variable(1, order, 0)


class TestChottin:
    def test_published_values(self):
        geo = series.geometric_coefficients(16)
        assert series.chottin_extract([geo, geo], [1, 1], [5, 6]) == 5292
        assert series.chottin_extract([geo] * 3, [1, 1, 1], [4, 4, 5]) == 225
        assert series.chottin_extract([geo, geo], [2, 5], [2, 5]) == 1

    def test_coherence_errors(self):
        geo = series.geometric_coefficients(8)
        with pytest.raises(series.CoherenceViolation):
            series.chottin_extract([geo] * 3, [0, 0, 0], [1, 1, 1])
        with pytest.raises(series.CoherenceViolation):
            series.chottin_extract([geo, geo], [3, 0], [2, 4])
        with pytest.raises(series.CoherenceViolation):
            series.chottin_extract([geo, geo], [1, 1], [5, 0])

    def test_negative_shift_gives_zero(self):
        geo = series.geometric_coefficients(8)
        # alpha = (0, 0): beta_i = beta - n_i goes negative for the larger n_i
        assert series.chottin_extract([geo, geo], [0, 0], [1, 3]) == 0

    def test_agreement_with_direct_extraction(self):
        m, bound = 2, 8
        fam = series.solve_planted(m, bound)
        geo = series.geometric_coefficients(bound)
        powers = {(0, 0): series.const(m, bound, 1)}
        for a1 in range(bound + 1):
            for a2 in range(bound + 1):
                if (a1, a2) == (0, 0) or a1 + a2 > bound:
                    continue
                prev = (a1 - 1, a2) if a1 else (a1, a2 - 1)
                factor = fam.series[0] if a1 else fam.series[1]
                powers[(a1, a2)] = powers[prev] * factor
        for (a1, a2), prod in powers.items():
            for n1 in range(1, bound + 1):
                for n2 in range(1, bound + 1 - n1):
                    if n1 < a1 or n2 < a2:
                        continue
                    value = series.chottin_extract([geo, geo], [a1, a2], [n1, n2])
                    assert value == prod[(n1, n2)]


class TestSeriesAgainstFormulas:
    @pytest.mark.parametrize("m,bound", [(2, 8), (3, 9), (4, 10)])
    def test_rooted_pointed_unlabelled(self, m, bound):
        fam = series.solve_planted(m, bound)
        rooted = series.series_rooted(fam)
        unlabelled = series.series_unlabelled(m, bound)
        pointed = [series.series_pointed_unlabelled(fam, c)
                   for c in range(1, m + 1)]
        for p in range(1, (bound - 1) // (m - 1) + 1):
            for counts in _color_vectors(m, p):
                c = stats.color_stat(m, counts)
                assert rooted[counts] == F.count_rooted(c)
                assert unlabelled[counts] == F.count_unlabelled(c)
                for color in range(1, m + 1):
                    assert pointed[color - 1][counts] == F.count_pointed(c, color)


def _color_vectors(m, p):
    def rec(remaining, slots):
        if slots == 1:
            return [(remaining,)] if 1 <= remaining <= p else []
        return [(h,) + rest for h in range(1, p + 1)
                for rest in rec(remaining - h, slots - 1)]

    return rec((m - 1) * p + 1, m)

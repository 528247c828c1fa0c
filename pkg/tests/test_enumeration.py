import io
from fractions import Fraction
from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import line_parameters, read_golden
from designlines.enumeration import (
    DEFAULT_FILTER,
    INTEGRAL_ONLY,
    STRICT_FISHER,
    UNCATALOGED,
    AdmissibilityFilter,
    CatalogError,
    Status,
    annotate,
    bundled_catalog,
    integer_points,
    integral_progression,
    load_catalog,
)
from designlines.lines import TWO_PARAMETER, Line
from designlines.sieve import sieve_point
from designlines.variety import DesignPoint, on_variety
from oracles import integral_params_brute

P = DesignPoint
F = Fraction
HEADER = "v,b,r,k,lambda,status,source\n"

_tiny = st.builds(F, st.integers(-6, 6), st.integers(1, 4)).filter(bool)


def _golden_points(name):
    return [P(*(int(row[c]) for c in ("v", "b", "r", "k", "lambda"))) for row in read_golden(name)]


class TestIntegerPoints:
    def test_quasi_residual_f0_line_short(self):
        got = integer_points(Line.F0(F(3, 2), F(1, 2)), 12)
        assert got == [P(4, 6, 3, 2, 1), P(10, 15, 6, 4, 2), P(16, 24, 9, 6, 3), P(22, 33, 12, 8, 4)]

    def test_quasi_residual_f0_line_full(self):
        assert integer_points(Line.F0(F(3, 2), F(1, 2)), 39) == _golden_points("f0_three_halves_one_half.csv")

    def test_p_line(self):
        line = Line.P(F(3, 2), F(1, 2))
        assert integer_points(line, 7) == [P(9, 12, 4, 3, 1), P(15, 21, 7, 5, 2)]
        # the Q = 1 point has lambda = 0 and only survives without the positivity filter
        assert P(3, 3, 1, 1, 0) in integer_points(line, 7, INTEGRAL_ONLY)

    def test_metis_line(self):
        assert integer_points(Line.F1(2, F(2, 3)), 38) == _golden_points("metis_f1_two_two_thirds.csv")

    def test_replicate_line_bounded_by_r(self):
        got = integer_points(Line.replicate(P(13, 13, 4, 4, 1)), 12)
        assert got == [P(13, 13, 4, 4, 1), P(13, 26, 8, 4, 2), P(13, 39, 12, 4, 3)]

    def test_bound_by_v(self):
        got = integer_points(Line.F0(F(3, 2), F(1, 2)), 16, by="v")
        assert got == [P(4, 6, 3, 2, 1), P(10, 15, 6, 4, 2), P(16, 24, 9, 6, 3)]

    def test_fisher_filter(self):
        line = Line.F0(F(1, 2), 2)  # b = v/2: Fisher fails everywhere
        assert integer_points(line, 60, STRICT_FISHER) == []

    def test_no_integral_points(self):
        # v = 2r - 2 + 1/2 is never integral
        line = Line.P(F(1, 3), F(1, 6))
        prog = integral_progression(line)
        brute = integral_params_brute(line.point_at, 36, (-20, 20))
        assert (prog is None) == (brute == [])

    @settings(max_examples=40, deadline=None)
    @given(st.tuples(_tiny, _tiny).filter(lambda fp: fp[0] != fp[1]), st.sampled_from(TWO_PARAMETER))
    def test_progression_matches_brute_force(self, fp, fam):
        """The arithmetic progression of integral parameters equals a direct scan."""
        line = Line.of(fam, *fp)
        origin, direction = line.parametrization()
        den = lcm(*(x.denominator for x in (*origin, *direction)))
        brute = integral_params_brute(line.point_at, den, (-6, 6))
        prog = integral_progression(line)
        if prog is None:
            assert brute == []
            return
        t0, step = prog
        expected = [t for t in brute if ((t - t0) / step).denominator == 1]
        assert brute == expected
        # and every progression member in the window was found by the scan
        n_lo = -((t0 + 6) // step) - 1
        members = [t0 + n * step for n in range(int(n_lo), int(n_lo) + int(12 / step) + 3)]
        assert [t for t in members if -6 <= t <= 6] == brute

    @given(line_parameters(), st.sampled_from(TWO_PARAMETER))
    @settings(max_examples=40, deadline=None)
    def test_output_is_admissible_and_sorted(self, fp, fam):
        line = Line.of(fam, *fp)
        pts = integer_points(line, 60)
        ts = [line.parameter_of(p) for p in pts]
        assert ts == sorted(ts)
        for p in pts:
            assert on_variety(p) and p.is_integral() and DEFAULT_FILTER.accepts(p)

    def test_filter_flags(self):
        f = AdmissibilityFilter(require_integral=False, require_positive=False, require_proper=False)
        assert f.accepts(P(F(1, 2), 0, 0, 0, 0))
        assert not DEFAULT_FILTER.accepts(P(7, 7, 3, 7, 1))


class TestCatalog:
    def test_rows(self):
        cat = load_catalog(HEADER + "22,33,12,8,4,nonexistent,BLT\n4,6,3,2,1,exists,affine plane order 2\n")
        assert [(e.point, e.status) for e in cat] == [(P(22, 33, 12, 8, 4), Status.NONEXISTENT),
                                                      (P(4, 6, 3, 2, 1), Status.EXISTS)]
        assert cat[1].source == "affine plane order 2"

    def test_bytes_and_streams(self):
        data = (HEADER + "7,7,3,3,1,exists,Fano\n").encode()
        assert load_catalog(data) == load_catalog(io.BytesIO(data)) == load_catalog(io.StringIO(data.decode()))

    def test_comments(self):
        assert len(load_catalog("# hello\n" + HEADER + "# mid\n7,7,3,3,1,exists,Fano\n")) == 1

    @pytest.mark.parametrize("body,line", [
        ("4,6,3,2,2,exists,x\n", 2),
        ("4,6,3,2,1,maybe,x\n", 2),
        ("4,6,3,2.5,1,exists,x\n", 2),
        ("7,7,3,3,1,exists,a\n7,7,3,3,1,open,b\n", 3),
        ("7,7,3\n", 2),
    ])
    def test_malformed_rows(self, body, line):
        with pytest.raises(CatalogError) as exc:
            load_catalog(HEADER + body)
        assert exc.value.line == line

    def test_missing_header(self):
        with pytest.raises(CatalogError):
            load_catalog("7,7,3,3,1,exists,Fano\n")

    def test_annotate(self):
        cat = load_catalog(HEADER + "22,33,12,8,4,nonexistent,BLT\n40,60,21,14,7,open,\n")
        assert annotate([P(22, 33, 12, 8, 4)], cat) == [(P(22, 33, 12, 8, 4), "nonexistent")]
        assert annotate([P(40, 60, 21, 14, 7)], cat) == [(P(40, 60, 21, 14, 7), "open")]
        assert annotate([P(7, 7, 3, 3, 1)], cat) == [(P(7, 7, 3, 3, 1), UNCATALOGED)]
        assert annotate([], cat) == []

    def test_bundled_statuses_on_quasi_residual_line(self):
        rows = read_golden("f0_three_halves_one_half.csv")
        got = annotate(integer_points(Line.F0(F(3, 2), F(1, 2)), 39), bundled_catalog())
        assert [s for _, s in got] == [row["status"] for row in rows]

    def test_bundled_catalog_is_consistent_with_the_sieve(self):
        cat = bundled_catalog()
        assert len(cat) > 40
        for entry in cat:
            sieve_point(entry.point, cat)  # raises on contradiction

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from designlines.pseudo import (
    MAX_COLUMNS,
    EchelonLattice,
    MultiplicityFunction,
    balance_report,
    cyclic_orbits,
    gj_conditions,
    solve,
    solve_integer_system,
    target_point,
    verify,
)
from designlines.variety import DesignError, DesignPoint, on_variety
from oracles import integer_solvable, pair_sums

P = DesignPoint
FANO = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]

SMALL_CASES = [
    (v, k, lam)
    for v in range(2, 11)
    for k in range(2, min(v, 4) + 1)
    for lam in range(1, 4)
    if gj_conditions(v, k, lam)
]


class TestMultiplicityFunction:
    def test_normalizes(self):
        mf = MultiplicityFunction(5, 2, {(3, 1): 2, (0, 4): 0})
        assert mf.entries == {(1, 3): 2}

    @pytest.mark.parametrize("entries", [{(0, 1, 2): 1}, {(0, 5): 1}, {(0, 0): 1}, {(0, 1): 1.5}])
    def test_rejects(self, entries):
        with pytest.raises(DesignError):
            MultiplicityFunction(5, 2, entries)

    def test_bad_sizes(self):
        with pytest.raises(DesignError):
            MultiplicityFunction(3, 4)

    def test_text_round_trip(self):
        mf = MultiplicityFunction(7, 3, {(0, 1, 2): -2, (2, 4, 5): 3})
        text = mf.to_text()
        assert text.splitlines() == ["7 3", "-2: 0 1 2", "3: 2 4 5"]
        assert MultiplicityFunction.from_text("# comment\n" + text) == mf

    @pytest.mark.parametrize("text", ["", "7\n", "7 3\n1 0 1 2\n", "7 3\n1: 0 1 2\n2: 2 1 0\n"])
    def test_text_errors(self, text):
        with pytest.raises(DesignError):
            MultiplicityFunction.from_text(text)

    def test_difference(self):
        a = MultiplicityFunction.from_blocks(7, 3, FANO, 2)
        b = MultiplicityFunction.from_blocks(7, 3, FANO)
        assert verify(a - b) == P(7, 7, 3, 3, 1)


class TestVerify:
    def test_fano(self):
        assert verify(MultiplicityFunction.from_blocks(7, 3, FANO)) == P(7, 7, 3, 3, 1)

    def test_complete_design(self):
        mf = MultiplicityFunction.from_blocks(5, 2, combinations(range(5), 2))
        assert verify(mf) == P(5, 10, 4, 2, 1)

    def test_flipped_entry(self):
        mf = MultiplicityFunction(7, 3, {b: (2 if b == FANO[0] else 1) for b in FANO})
        assert verify(mf) is None
        report = balance_report(mf)
        assert not report and report.offending[0] in combinations(range(7), 2)

    def test_k_one_point_sums(self):
        assert verify(MultiplicityFunction(3, 1, {(0,): 2, (1,): 2, (2,): 2})) == P(3, 6, 2, 1, 0)
        report = balance_report(MultiplicityFunction(3, 1, {(0,): 2, (1,): 1}))
        assert report.offending[0] == (1,)

    @settings(max_examples=60)
    @given(st.integers(3, 7).flatmap(lambda v: st.tuples(
        st.just(v), st.integers(2, v),
    )).flatmap(lambda vk: st.tuples(
        st.just(vk),
        st.dictionaries(st.sets(st.integers(0, vk[0] - 1), min_size=vk[1], max_size=vk[1]).map(lambda s: tuple(sorted(s))),
                        st.integers(-3, 3), max_size=10),
    )))
    def test_against_direct_pair_sums(self, data):
        """verify agrees with an independent summation over all pairs."""
        (v, k), entries = data
        mf = MultiplicityFunction(v, k, entries)
        sums = pair_sums(v, mf.entries)
        balanced = len(set(sums.values())) == 1
        got = verify(mf)
        assert (got is not None) == balanced
        if got is not None:
            assert on_variety(got) and got.lam == next(iter(sums.values()))


class TestConditions:
    @pytest.mark.parametrize("vkl,ok", [((15, 5, 2), True), ((7, 3, 1), True), ((8, 3, 1), False)])
    def test_examples(self, vkl, ok):
        assert gj_conditions(*vkl) is ok

    @pytest.mark.parametrize("vkl", [(3, 4, 1), (5, 1, 1), (5, 2, 0)])
    def test_domain(self, vkl):
        with pytest.raises(DesignError):
            gj_conditions(*vkl)

    def test_target(self):
        assert target_point(15, 5, 2) == P(15, 21, 7, 5, 2)


class TestLattice:
    def test_simple(self):
        lat = EchelonLattice()
        assert lat.add({0: 4, 1: 2}, "a")
        assert lat.add({0: 6, 1: 1}, "b")
        assert not lat.add({0: 8, 1: 4}, "c")
        combo = lat.express({0: 2, 1: 3})
        assert combo is not None
        got = {i: sum(c * vec.get(i, 0) for c, vec in zip(
            (combo.get("a", 0), combo.get("b", 0), combo.get("c", 0)),
            ({0: 4, 1: 2}, {0: 6, 1: 1}, {0: 8, 1: 4}))) for i in (0, 1)}
        assert got == {0: 2, 1: 3}
        assert lat.rank == 2

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 3).flatmap(lambda n: st.tuples(
        st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=1, max_size=4),
        st.lists(st.integers(-6, 6), min_size=n, max_size=n),
    )))
    def test_against_minor_criterion(self, data):
        """Solvability matches the determinantal-divisor criterion; solutions check."""
        cols, b = data
        n = len(b)
        rows = [[c[i] for c in cols] for i in range(n)]
        sparse = [(j, {i: x for i, x in enumerate(c) if x}) for j, c in enumerate(cols)]
        combo = solve_integer_system(sparse, {i: x for i, x in enumerate(b) if x})
        assert (combo is not None) == integer_solvable(rows, b)
        if combo is not None:
            assert [sum(combo.get(j, 0) * cols[j][i] for j in range(len(cols))) for i in range(n)] == b


class TestSolve:
    def test_small_examples(self):
        assert verify(solve(7, 3, 1)) == P(7, 7, 3, 3, 1)
        assert verify(solve(15, 5, 2)) == P(15, 21, 7, 5, 2)

    @pytest.mark.parametrize("vkl", [(8, 3, 1), (20, 10, 1)])
    def test_errors(self, vkl):
        with pytest.raises(DesignError):
            solve(*vkl)

    def test_scale_bound(self):
        # C(25, 8) is far past the bound while the divisibility conditions hold
        assert gj_conditions(25, 9, 3)
        with pytest.raises(DesignError, match="bound"):
            solve(25, 9, 3)
        assert MAX_COLUMNS == 100_000

    def test_unknown_method(self):
        with pytest.raises(DesignError):
            solve(7, 3, 1, method="magic")

    @pytest.mark.parametrize("vkl", SMALL_CASES)
    @pytest.mark.parametrize("method", ["auto", "full"])
    def test_all_small_parameters(self, vkl, method):
        mf = solve(*vkl, method=method)
        got = verify(mf)
        assert got == target_point(*vkl) and on_variety(got)

    def test_case_count(self):
        assert len(SMALL_CASES) == 48

    def test_deterministic(self):
        assert solve(15, 5, 2) == solve(15, 5, 2)
        assert solve(9, 3, 1, method="full") == solve(9, 3, 1, method="full")

    @pytest.mark.parametrize("lam", [2, 4])
    def test_six_three_pair_sums(self, lam):
        mf = solve(6, 3, lam)
        sums = pair_sums(6, mf.entries)
        assert len(sums) == 15 and set(sums.values()) == {lam}

    def test_orbits_partition(self):
        for v, k in [(7, 3), (8, 4), (9, 3)]:
            orbits = cyclic_orbits(v, k)
            flat = [b for o in orbits for b in o]
            assert sorted(flat) == list(combinations(range(v), k))

    def test_orbit_method_may_decline(self):
        """When no cyclic solution exists the orbit method refuses and auto falls back."""
        declined = []
        for vkl in SMALL_CASES:
            try:
                solve(*vkl, method="orbit")
            except DesignError:
                declined.append(vkl)
                assert verify(solve(*vkl)) == target_point(*vkl)
        assert all(gj_conditions(*c) for c in declined)

import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from tightham.localstruct import (
    FACT_TRIPLES,
    SIGMA_MAX,
    SIGMA_MIN,
    LocalConfig,
    SigmaFrame,
    check_pair_weight,
    check_fact,
    check_monotonicity,
    config_sup,
    config_value,
    f_spt,
    format_config,
    max_on_range,
    max_weight_lp,
    parse_config,
    steadiness_witness,
    validate_config,
)
from tightham.localstruct.config import CROSS_PAIRS, CROSS_TRIPLES, TripleSystem, mask_of
from tightham.localstruct.fact import grid_max, lipschitz_bound, rational_sigma_grid
from tightham.localstruct.verify import (
    R2_OPTIONS,
    enumerate_keys,
    forbidden_from,
    pair_bound,
    tables,
)
from tightham.localstruct.weights import WeightProblem, frontier_points, solve_weights

F = Fraction
Q = F(1, 4)


def cfg(**parts):
    return LocalConfig(**parts)


class TestCubic:
    def test_quarter_values(self):
        assert f_spt(Q, 6, 10, 23) == F(5, 8)
        assert f_spt(Q, 9, 9, 17) == F(9, 16)

    def test_third(self):
        for s, p, t in FACT_TRIPLES:
            assert f_spt(F(1, 3), s, p, t) == F(t, 27)

    def test_nonpositive(self):
        with pytest.raises(ValueError):
            f_spt(0, 1, 1, 1)

    def test_fact_report(self):
        rep = check_fact()
        assert rep.passed and not rep.failures()
        lines = {line.triple: line for line in rep.lines}
        for tr in ((6, 10, 23), (6, 11, 22), (6, 12, 21)):
            assert lines[tr].at_quarter == F(5, 8)
            assert abs(lines[tr].max_value - 0.625) <= 1e-9
            assert abs(lines[tr].argmax - 0.25) <= 1e-9
        assert lines[(9, 1, 27)].max_value < 0.625

    def test_fact_detects_violation(self):
        rep = check_fact([(6, 10, 24)])
        assert not rep.passed and rep.failures() == [(6, 10, 24)]

    @given(st.integers(0, 12), st.integers(0, 30), st.integers(0, 30))
    def test_exact_max_dominates_grid(self, s, p, t):
        mx, arg = max_on_range(s, p, t)
        gv, _ = grid_max(s, p, t, 1e-3)
        assert gv <= mx + 1e-12
        assert SIGMA_MIN - 1e-12 <= arg <= float(SIGMA_MAX) + 1e-12
        # grid error stays within the Lipschitz estimate
        assert mx - gv <= lipschitz_bound(s, p, t) * 1e-3

    def test_monotonicity_examples(self):
        assert check_monotonicity(6, 10, 23, [0]).passed
        assert f_spt(Q, 6, 11, 23) == f_spt(Q, 7, 10, 23)
        s = F(21, 100)
        assert f_spt(s, 6, 11, 23) < f_spt(s, 7, 10, 23)

    def test_monotonicity_grid_is_exact(self):
        grid = rational_sigma_grid(50)
        assert grid[-1] == Q and all(isinstance(x, Fraction) for x in grid)
        rep = check_monotonicity(6, 10, 23, [F(1, 2), 1, 3], grid)
        assert rep.passed and rep.checked == 150

    def test_monotonicity_flags_violations(self):
        # beyond sigma = 1/4 we have beta < 1 and the inequality reverses
        rep = check_monotonicity(6, 10, 23, [1], [F(3, 10)])
        assert rep.violations == ((1, F(3, 10)),)
        with pytest.raises(ValueError):
            check_monotonicity(6, 10, 23, [-1])

    @given(st.fractions(0, 12), st.fractions(0, 30), st.fractions(0, 30), st.fractions(0, 10))
    def test_monotonicity_matches_direct_evaluation(self, s, p, t, x):
        grid = rational_sigma_grid(40) + [F(3, 10), F(1, 3)]
        direct = tuple((x, g) for g in grid if f_spt(g, s, p + x, t) > f_spt(g, s + x, p, t))
        assert check_monotonicity(s, p, t, [x], grid).violations == direct

    def test_frame(self):
        fr = SigmaFrame(Q, F(6), F(10))
        assert fr.beta == 1 and fr.value(23) == F(5, 8)
        with pytest.raises(ValueError):
            SigmaFrame(F(1, 3))


class TestConfig:
    def test_names_roundtrip(self):
        c = cfg(R1=["i1"], R2=["i1 i2"], R3=["i1 i2 i3"], B1=["k1"], B2=["k1 k2"])
        assert parse_config(format_config(c)) == c

    def test_empty_valid(self):
        assert validate_config(cfg()) == (True, [])

    def test_shiftedness_violation(self):
        ok, bad = validate_config(cfg(R2=["j1 j2"]))
        assert not ok and "e" in bad
        assert validate_config(cfg(R2=["i1 i2", "i1 j2", "j1 i2", "j1 j2"]))[0]

    def test_steadiness_violation(self):
        ok, bad = validate_config(cfg(R1=["i1", "i2"], R3=["j1 j2 j3", "k1 k2 k3"]))
        assert bad == ["c"]

    def test_other_labels(self):
        # a red j-vertex also completes M2, M3 into an expanding triple
        assert validate_config(cfg(R1=["j1"]))[1] == ["c", "h"]
        assert validate_config(cfg(R2=["i1 j1"]))[1] == ["d"]
        assert validate_config(cfg(B2=["k1 k2"]))[1] == ["a"]
        c = cfg(R2=["i1 i2"], B1=["i1", "i2"], B2=["i1 i2"])
        assert "b" in validate_config(c)[1]
        # blue pair between M1 and M2 must meet k2
        c = cfg(B1=["k1", "j2"], B2=["k1 j2"])
        assert "g" in validate_config(c)[1]

    def test_red_triple_on_blue_pair(self):
        c = LocalConfig.full_blue_singletons(B2=["k1 k2"], R3=["k1 k2 k3"])
        assert "b" in validate_config(c)[1]

    def test_many_red_triples(self):
        hook = ["i1 i2", "i1 j2", "i1 k2", "j1 i2", "k1 i2"]
        r3 = [" ".join(f"{'ijk'[a]}1 {'ijk'[b]}2 {'ijk'[c]}3".split()) for a in range(3) for b in range(3) for c in range(3)]
        c = cfg(R2=hook, R3=r3[:20])
        assert "j" in validate_config(c)[1]

    def test_steadiness_witness(self):
        T = [mask_of(t) for t in TripleSystem().triples]
        assert steadiness_witness(T) is None
        assert steadiness_witness(T[:2] + [mask_of((2,)), mask_of((5,))]) is None
        # M3 with two disjoint pairs avoiding i1 and i2
        red = [mask_of((1, 4)), mask_of((2, 5))]
        assert steadiness_witness(T + red) is not None


class TestWeights:
    def test_single_constraint(self):
        opt = max_weight_lp(cfg(R1=["i1"], B1=["k1"]), 2)
        assert (opt.q1, opt.q2) == (1, 0)

    def test_full_singletons(self):
        c = LocalConfig.full_blue_singletons(R1=["i1", "i2", "i3"])
        assert max_weight_lp(c, 1).q1 == 9

    def test_disjoint_pairs_unconstrained(self):
        opt = max_weight_lp(cfg(R2=["i1 i2"], B2=["k1 k2"]), 1)
        assert opt.q2 == 2

    def test_beta_range(self):
        with pytest.raises(ValueError):
            max_weight_lp(cfg(), F(1, 2))

    def test_values(self):
        assert config_value(cfg(), Q) == F(1, 64)
        all_red = cfg(R3=CROSS_TRIPLES)
        assert config_value(all_red, Q) == F(28, 64)

    def test_self_consistency_and_monotone(self, rng):
        base = LocalConfig.full_blue_singletons(R1=["i1"], R2=["i1 i2", "i1 j2"], B2=["k1 k2"])
        for beta in (F(1), F(3, 2), F(37, 20)):
            opt = max_weight_lp(base, beta)
            assert opt.assignment.feasible()
            assert (opt.assignment.q1, opt.assignment.q2) == (opt.q1, opt.q2)
            assert all(v.denominator <= 2 for v in (opt.assignment.r | opt.assignment.b).values())
        bigger = LocalConfig.full_blue_singletons(
            R1=["i1", "i2"], R2=["i1 i2", "i1 j2", "j1 i2"], B2=["k1 k2", "j1 k2"]
        )
        for beta in (F(1), F(3, 2)):
            small = max_weight_lp(base, beta)
            big = max_weight_lp(bigger, beta)
            assert beta**2 * big.q1 + beta * big.q2 >= beta**2 * small.q1 + beta * small.q2

    def test_frontier_contains_lp_optima(self):
        c = LocalConfig.full_blue_singletons(R1=["i1", "i2"], R2=["i1 i2", "i1 j2", "j1 i2", "i1 k2"],
                                             B2=["k1 k2", "j1 k2"])
        pts = frontier_points(WeightProblem.of(c))
        for beta in (F(1), F(6, 5), F(3, 2), F(37, 20)):
            opt = max_weight_lp(c, beta)
            best = max(beta * beta * q1 + beta * q2 for q1, q2 in pts)
            assert best == beta * beta * opt.q1 + beta * opt.q2

    def test_pair_weight_examples(self):
        c = LocalConfig.full_blue_singletons(
            R1=["i1"], R2=["i1 i2", "i1 j2", "j1 i2", "j1 j2"], B2=["i1 k2", "j1 k2", "k1 k2"]
        )
        rep = check_pair_weight(c, 0, 1, beta=F(3, 2))
        assert rep.passed and rep.q_max <= 6 and rep.no_red_at_k
        assert rep.refined_k_max <= 5
        few = LocalConfig.full_blue_singletons(R2=["i1 i2"], B2=["k1 k2"])
        rep = check_pair_weight(few, 0, 1)
        assert rep.few_blue and rep.refined_single_ok


def random_red_small(rng):
    r1 = rng.randrange(8)
    r2 = tuple(rng.randrange(len(R2_OPTIONS)) for _ in range(3))
    return r1, r2


class TestVerifierPieces:
    def test_table_sizes(self):
        tab = tables()
        assert len(tab.downsets) == 980
        assert len(R2_OPTIONS) == 11
        assert len(CROSS_PAIRS) == 27 and len(CROSS_TRIPLES) == 27

    def test_forbidden_sets_agree_with_literal_search(self):
        tab = tables()
        rng = random.Random(5)
        T = [mask_of(t) for t in TripleSystem().triples]
        checked = 0
        while checked < 150:
            r1 = [(3 * a,) for a in range(3) if rng.random() < 0.5]
            pairs = [e for e in CROSS_PAIRS if rng.random() < 0.12]
            small = [mask_of(e) for e in r1 + pairs]
            if steadiness_witness(T + small) is not None:
                continue
            f1, f2 = forbidden_from(small, tab)
            bad_pairs = {tab.disjoint_pairs[n] for n in f2}
            r3 = [n for n in range(27) if rng.random() < 0.3]
            predicted = any(f1 >> n & 1 for n in r3) or any(
                (a, b) in bad_pairs for a, b in combinations(sorted(r3), 2)
            )
            literal = steadiness_witness(T + small + [tab.tri_vmask[n] for n in r3]) is not None
            assert predicted == literal
            checked += 1

    def test_keys_give_valid_configs_and_sound_bounds(self):
        tab = tables()
        rng = random.Random(9)
        for r1, o in ((0, 0), (1, 3), (5, 7), (7, 10)):
            keys, _ = enumerate_keys(r1, o)
            for k in rng.sample(keys, min(6, len(keys))):
                c = k.config(tab)
                assert validate_config(c) == (True, [])
                assert c.t == k.t
                exact = config_sup(c)
                assert exact.value <= pair_bound(k.pair_ids(tab), k.t) + 1e-12
                assert exact.value <= 0.625 + 1e-9

    def test_exhaustive_keys_not_smaller(self):
        prim, _ = enumerate_keys(1, 2)
        full, _ = enumerate_keys(1, 2, exhaustive=True)
        best = {(k.r2, k.b2): k.r3max for k in prim}
        ex = {(k.r2, k.b2): k.r3max for k in full}
        assert all(ex[key] >= v for key, v in best.items())

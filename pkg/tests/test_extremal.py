from fractions import Fraction
from math import comb

import pytest

from tightham import Hypergraph, HypergraphError, distinguishable, is_left_shifted
from tightham.constructions import gen_split_kgraph
from tightham.extremal import (
    EdgeColouring2,
    connection_partition,
    count_mono_triangles,
    emc_max_edges,
    ShiftPoset,
    iter_left_shifted,
    mono_triangle_extremum,
    mu_bruteforce,
    mu_unrestricted_table,
    partition_by_sizes,
)
from tightham.matchcycle import matching_number

from conftest import random_graph


class TestShiftedEnumeration:
    def test_counts_are_left_shifted(self):
        P = ShiftPoset(5)
        fams = list(iter_left_shifted(5))
        assert len({fam.edges for fam in fams}) == len(fams)
        for fam in fams:
            G = Hypergraph(3, 5, frozenset(P.triples[i] for i in fam.edges))
            assert is_left_shifted(G)
            assert matching_number(G) == fam.matching

    def test_matching_bound(self):
        P = ShiftPoset(6)
        for fam in iter_left_shifted(6, 1):
            G = Hypergraph(3, 6, frozenset(P.triples[i] for i in fam.edges))
            assert matching_number(G) <= 1


class TestMu:
    def test_complete(self):
        r = mu_bruteforce(6, 2, 0)
        assert r.value == 20
        R, B = r.witnesses[0]
        assert R.e == 20 and B.e == 0

    def test_empty_family(self):
        assert mu_bruteforce(6, 0, 0).empty
        assert mu_bruteforce(5, 1, 10).empty

    def test_against_oracle(self):
        T = mu_unrestricted_table(6)
        assert mu_bruteforce(6, 1, 10).value == T[(1, 10)]

    @pytest.mark.parametrize("n", [4, 5])
    def test_full_oracle_small(self, n):
        T = mu_unrestricted_table(n)
        for (s, t), v in T.items():
            if s >= 1:
                assert mu_bruteforce(n, s, t).value == v

    def test_witnesses_are_valid(self):
        r = mu_bruteforce(6, 1, 4)
        for R, B in r.witnesses:
            assert distinguishable(R, B)
            assert matching_number(R) <= 1 and R.e > 4
            assert R.e + B.e == r.value

    def test_workers_agree(self):
        assert mu_bruteforce(6, 1, 3, workers=1) == mu_bruteforce(6, 1, 3, workers=2)


class TestEMC:
    @pytest.mark.parametrize("n,s,value", [(6, 1, 10), (7, 1, 15), (9, 2, 56)])
    def test_examples(self, n, s, value):
        r = emc_max_edges(n, s)
        assert r.value == value and r.matches_formula
        assert r.witness.e == value and matching_number(r.witness) <= s

    def test_small_n_exceeds_literal_formula(self):
        # with 3s+2 > n the clique term cannot be realised and the answer is binom(n,3)
        r = emc_max_edges(6, 2)
        assert r.value == comb(6, 3) and not r.matches_formula

    def test_capped_formula(self):
        for n in range(3, 10):
            for s in range(1, n // 3 + 1):
                capped = max(comb(min(3 * s + 2, n), 3), comb(n, 3) - comb(n - s, 3))
                assert emc_max_edges(n, s).value == capped

    def test_limits(self):
        with pytest.raises(HypergraphError):
            emc_max_edges(11, 1)


class TestTriangles:
    def test_counts(self):
        K4 = [(a, b) for a in range(1, 5) for b in range(a + 1, 5)]
        assert count_mono_triangles(EdgeColouring2(4, frozenset(K4))) == (4, 0)
        red = {(1, 2), (1, 3), (2, 3)}
        blue = {(4, 5), (4, 6), (5, 6)}
        assert count_mono_triangles(EdgeColouring2(6, frozenset(red), frozenset(blue))) == (1, 1)
        assert count_mono_triangles(EdgeColouring2(6, frozenset())) == (0, 0)

    def test_overlap_rejected(self):
        with pytest.raises(HypergraphError):
            EdgeColouring2(4, frozenset({(1, 2)}), frozenset({(2, 1)}))

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
    def test_unconstrained(self, n):
        assert mono_triangle_extremum(n, 0).value == comb(n, 3)

    def test_one_each(self):
        r = mono_triangle_extremum(6, 1)
        assert r.value == 11
        assert count_mono_triangles(r.witness) == (r.red, r.blue)
        assert min(r.red, r.blue) >= 1

    def test_seven(self):
        r = mono_triangle_extremum(7, 5)
        assert r.value is not None and min(r.red, r.blue) >= 5
        assert r.value <= Fraction(5, 8) * 35

    def test_infeasible(self):
        assert mono_triangle_extremum(4, 3).value is None


class TestConnectionPartition:
    def test_giant_component(self):
        cp = connection_partition(Hypergraph.complete(7, 3), Fraction(1, 100))
        assert cp.diagnostics.hypothesis_failed
        assert cp.R.e == 0 or cp.B.e == 0

    def test_split_six(self):
        cp = connection_partition(gen_split_kgraph(3, 6, 6, 1), Fraction(1, 100))
        assert cp.diagnostics.hypothesis_failed
        assert cp.diagnostics.total == Fraction(13, 22)
        assert cp.R.e + cp.B.e == 130

    def test_sizes_hypotheses_imply_conclusions(self):
        # total 724 / 1140 lies between 0.635 and 0.645
        sizes = [242, 241, 241]
        _, diag = partition_by_sizes(sizes, 20, Fraction(1, 100))
        assert diag.hypotheses and diag.conclusions

    def test_random_graphs_distinguishable(self, rng):
        for _ in range(20):
            G = random_graph(rng, rng.randint(5, 10), p=rng.choice([0.1, 0.3, 0.6]))
            cp = connection_partition(G, Fraction(1, 50))
            assert distinguishable(cp.R, cp.B)
            assert cp.R.edges | cp.B.edges == G.edges

    def test_needs_3graph(self):
        with pytest.raises(HypergraphError):
            connection_partition(Hypergraph.complete(5, 4), Fraction(1, 10))

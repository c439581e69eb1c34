from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from torus_sumset_lab.circle import FULL, measure, sumset
from torus_sumset_lab.literals import parse_circle_set as C, parse_real_set as R
from torus_sumset_lab.real_line import (
    HypothesisError,
    NoWitnessError,
    RealInterval,
    closed,
    contains_R,
    diameter,
    doubling_structure,
    egm_interval,
    intersect_R,
    measure_R,
    normalize,
    project_mod1,
    real_set,
    scale_R,
    sigma2,
    sumset_R,
    translate_R,
    union_R,
)

from strategies import end_cluster_set, real_sets, wide_end_set

EPS = F(1, 10**4)
worked = R("[0,1/10];[19/20,1]")


class TestAlgebra:
    def test_sumset_examples(self):
        SS = sumset_R(worked, worked)
        assert SS == R("[0,1/5];[19/20,11/10];[19/10,2]")
        assert measure_R(SS) == F(9, 20)
        assert sumset_R(R("[0,1/3]"), R("[0,1/5]")) == R("[0,8/15]")
        assert sumset_R(R("[0,0]"), worked) == worked

    def test_closure_and_ops(self):
        S = R("[0,1);(1,2]")
        assert 1 not in S and 0 in S and 2 in S and len(S) == 2
        assert R("[0,1];[1,2]") == R("[0,2]")
        assert intersect_R(R("[0,1]"), R("(1/2,3]")) == R("(1/2,1]")
        assert union_R(R("[0,1)"), R("[1,2]")) == R("[0,2]")
        assert translate_R(R("[0,1]"), F(1, 2)) == R("[1/2,3/2]")
        assert scale_R(R("[1,2]"), 3) == R("[3,6]")
        assert diameter(worked) == 1
        N, lo, d = normalize(R("[2,3];[4,6]"))
        assert N == R("[0,1/4];[1/2,1]") and (lo, d) == (2, 4)

    @settings(max_examples=150, deadline=None)
    @given(real_sets(grid=6, lo=-1, hi=1, max_parts=3), real_sets(grid=6, lo=-1, hi=1, max_parts=3))
    def test_sumset_membership_oracle(self, S, T):
        SS = sumset_R(S, T)
        cand = [F(j, 24) for j in range(-24, 25)]
        for x in [F(j, 12) for j in range(-24, 25)]:
            want = any(contains_R(S, a) and contains_R(T, x - a) for a in cand)
            assert (x in SS) == want

    @given(real_sets(lo=-1, hi=2), real_sets(lo=-1, hi=2))
    def test_superadditive(self, S, T):
        assert measure_R(sumset_R(S, T)) >= measure_R(S) + measure_R(T)


class TestProjection:
    def test_examples(self):
        assert project_mod1(worked) == C("[19/20,1/10]")
        assert project_mod1(R("[0,1)")) == FULL
        assert project_mod1(R("[3/2,8/5]")) == C("[1/2,3/5]")
        assert project_mod1(R("[0,5/2]")) == FULL

    def test_sigma2_examples(self):
        assert sigma2(worked) == F(3, 20)
        SS = sumset_R(worked, worked)
        pw = project_mod1(worked)
        assert measure_R(SS) == measure(sumset(pw, pw)) + sigma2(worked)
        assert sigma2(R("[0,1]")) == 1
        assert sigma2(R("[0,1/4]")) == 0
        with pytest.raises(ValueError):
            sigma2(R("[0,2]"))

    @given(real_sets(closed=True))
    def test_wrap_identity(self, S):
        S = union_R(S, real_set(closed(0, 0), closed(1, 1)))
        P = project_mod1(S)
        assert measure_R(sumset_R(S, S)) == measure(sumset(P, P)) + sigma2(S)


class TestDoubling:
    def test_worked(self):
        st_ = doubling_structure(worked, EPS)
        assert st_.n == 1
        assert (st_.interval.start, st_.interval.length) == (F(19, 20), F(3, 20))
        dec = st_.decomposition
        assert dec.reassemble() == worked
        assert dec.alphas[0] + dec.alphas[1] <= (1 + EPS) * measure_R(worked)
        assert (dec.d0, dec.dn) == (F(1, 10), F(1, 20))

    def test_point_plus_interval(self):
        S = R("[0,0];[9/10,1]")
        st_ = doubling_structure(S, EPS)
        assert st_.n == 1
        assert (st_.interval.start, st_.interval.length) == (F(9, 10), F(1, 10))

    @pytest.mark.parametrize(
        "text,eps,name",
        [
            ("[0,1]", EPS, "measure-range"),
            ("[0,1/10];[19/20,1]", F(1, 100), "eps-window"),
            ("[0,1/10);[19/20,1]", EPS, "closed"),
            ("[0,1/10];[19/20,2]", EPS, "normalized"),
            ("[0,1/20];[1/2,11/20];[19/20,1]", EPS, "doubling"),
        ],
    )
    def test_named_errors(self, text, eps, name):
        with pytest.raises(HypothesisError) as info:
            doubling_structure(R(text), eps)
        assert info.value.name == name

    def test_random_clusters(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            S, a, b, holes = end_cluster_set(rng, EPS)
            st_ = doubling_structure(S, EPS)
            lam = measure_R(S)
            assert st_.n == 1 and st_.interval.length <= (1 + EPS) * lam
            assert st_.interval.length == a + b


class TestEgm:
    def test_worked(self):
        res = egm_interval(worked, F(3, 20), EPS)
        assert res.interval == closed(0, F(1, 10))
        assert res.density == 1 and res.branch == "both-ends"
        assert res.length_floor == F(9, 400) and res.density_floor == F(1, 2) + F(3, 80)

    @pytest.mark.parametrize("text", ["[0,1/5]", "[0,1]", "[3,7/2]"])
    def test_single_interval(self, text):
        S = R(text)
        delta = F(7, 4) * diameter(S)
        res = egm_interval(S, delta, EPS)
        assert res.branch == "single-interval" and res.density == 1
        assert res.interval == closed(S.components[0].a, S.components[0].b)

    def test_split_cover(self):
        S = R("[0,3/10];[2/5,1]")
        res = egm_interval(S, F(3, 2), EPS)
        assert res.branch == "split-cover" and res.interval == closed(F(2, 5), 1)

    def test_tail_branch(self):
        S = R("[0,0];[9/10,1]")
        res = egm_interval(S, F(1, 10), EPS)
        assert res.branch == "tail" and res.interval == closed(F(9, 10), 1)

    @pytest.mark.parametrize(
        "delta,eps,name",
        [
            (F(1, 10), EPS, "delta-floor"),
            (F(3, 20), F(1, 10), "eps-window"),
            (F(0), EPS, "delta-positive"),
            (F(1, 2), EPS, "doubling"),
        ],
    )
    def test_named_errors(self, delta, eps, name):
        with pytest.raises(HypothesisError) as info:
            egm_interval(worked, delta, eps)
        assert info.value.name == name

    def test_measure_cap(self):
        with pytest.raises(HypothesisError) as info:
            egm_interval(R("[0,2/5];[3/5,1]"), F(4, 5), EPS)
        assert info.value.name in ("measure-cap", "doubling")

    @pytest.mark.parametrize("t", [F(1, 3), F(2), F(7, 5)])
    def test_rescale_covariance(self, t):
        base = egm_interval(worked, F(3, 20), EPS)
        scaled = egm_interval(translate_R(scale_R(worked, t), 5), F(3, 20) * t, EPS)
        I = base.interval
        assert scaled.interval == closed(5 + t * I.a, 5 + t * I.b)
        assert scaled.density == base.density and scaled.branch == base.branch

    def test_random_clusters(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            S, a, b, holes = end_cluster_set(rng, EPS)
            lam = measure_R(S)
            top = min(lam, 4 * lam - measure_R(sumset_R(S, S)))
            delta = top - (top - lam * (1 - EPS)) / 3
            res = egm_interval(S, delta, EPS)
            assert res.interval.length >= min(delta / 4, delta * delta)
            assert res.density >= F(1, 2) + delta / 4

    def test_wide_sets(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            S, a, b = wide_end_set(rng)
            lam = a + b
            delta = (2 * lam - F(1, 2) + 4 * lam - 2) / 2
            res = egm_interval(S, delta, EPS)
            assert res.branch == "split-cover"
            assert res.interval.length >= min(delta / 4, delta * delta)

import warnings
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from torus_sumset_lab.circle import (
    CircleInterval,
    FULL,
    complement,
    contains,
    dilate,
    measure,
    simple_set,
    sumset,
)
from torus_sumset_lab.ksumfree import (
    BoundCase,
    EpsWindowWarning,
    KsfError,
    SearchLimitError,
    StructureCase,
    check_int_estim,
    counting_cap,
    dilation_canonical,
    dk_upper_bound,
    extremal_interval,
    is_k_sum_free_T,
    is_k_sum_free_zp,
    ksf_defect,
    max_ksf_zp,
    naive_max_ksf_zp,
    structure_or_bound,
)
from torus_sumset_lab.literals import parse_circle_set as P
from torus_sumset_lab.zp import ZpSet, dilate_zp

from golden import GOLDEN
from strategies import circle_sets



def Z(p, *el):
    return ZpSet.from_elements(p, el)


def plain_ksf(el, k, p):
    s = set(el)
    return not any((x + y - k * z) % p == 0 for x in s for y in s for z in s)


class TestCircle:
    def test_examples(self):
        assert is_k_sum_free_T(P("[2/5,3/5)"), 3).is_ksf
        assert is_k_sum_free_T(P("(1/3,2/3)"), 1).is_ksf
        rep = is_k_sum_free_T(P("[0,1/10]"), 4)
        assert not rep.is_ksf and rep.witness == (0, 0, 0)

    def test_closed_extremal_fails(self):
        rep = is_k_sum_free_T(P("[2/5,3/5]"), 3)
        x, y, z = rep.witness
        assert not rep.is_ksf
        S = P("[2/5,3/5]")
        assert x in S and y in S and z in S and (x + y - 3 * z) % 1 == 0

    @settings(max_examples=200, deadline=None)
    @given(circle_sets(max_len=8), st.integers(1, 8))
    def test_two_tests_agree_and_witness_valid(self, S, k):
        rep = is_k_sum_free_T(S, k)
        SS = sumset(S, S)
        assert rep.is_ksf == (not (SS & dilate(S, k)).components)
        if not rep.is_ksf:
            x, y, z = rep.witness
            assert contains(S, x) and contains(S, y) and contains(S, z)
            assert (x + y - k * z) % 1 == 0

    def test_defect(self):
        assert ksf_defect(P("[2/5,3/5)"), 3) == 0
        assert ksf_defect(P("[0,1/4]"), 3) == F(1, 6)
        assert ksf_defect(FULL, 3) == 1
        with pytest.raises(KsfError):
            ksf_defect(P("empty"), 3)

    def test_int_estim_examples(self):
        e = check_int_estim(P("[0,1/4]"), 3)
        assert (e.delta, e.bound, e.satisfied) == (F(2, 3), F(2, 5), True)
        e = check_int_estim(P("[2/5,3/5)"), 3)
        assert (e.delta, e.bound, e.measure, e.satisfied) == (0, F(1, 5), F(1, 5), True)
        with pytest.raises(KsfError):
            check_int_estim(FULL, 3)

    @settings(max_examples=300, deadline=None)
    @given(st.integers(0, 199), st.integers(1, 120), st.integers(3, 10), st.booleans(), st.booleans())
    def test_int_estim_property(self, a, l, k, lc, rc):
        I = CircleInterval(F(a, 200), F(l, 200), lc, rc)
        try:
            e = check_int_estim(I, k)
        except KsfError:
            return
        assert e.satisfied

    @pytest.mark.parametrize("k,lo,hi", [(3, F(2, 5), F(3, 5)), (4, F(1, 6), F(1, 3))])
    def test_extremal_examples(self, k, lo, hi):
        I = extremal_interval(k)
        assert (I.start, I.end, I.left_closed, I.right_closed) == (lo, hi, True, False)
        assert I.length == F(1, k + 2)

    def test_extremal_rejects_small_k(self):
        with pytest.raises(KsfError):
            extremal_interval(2)

    def test_extremal_oracle(self):
        # independent check: the sums of [a,b) cover [2a, 2b), k*[a,b) is [ka, kb) mod 1
        for k in range(3, 20):
            q = k * k - 4
            a, b = F(2, q), F(k, q)
            assert (2 * b - 2 * a) + (k * b - k * a) == 1
            assert (k * a) % 1 == (2 * b) % 1

    def test_dk_bound(self):
        assert dk_upper_bound(3, F(1, 10000)) == F(10000, 30001)
        assert dk_upper_bound(4, 0) == F(1, 3)
        assert dk_upper_bound(100, F(1, 10000)) == F(10000, 30001)
        with pytest.warns(EpsWindowWarning):
            assert dk_upper_bound(3, F(1, 100)) == F(100, 301)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            dk_upper_bound(5, F(1, 20000))
        with pytest.raises(KsfError):
            dk_upper_bound(2, 0)


class TestStructure:
    def test_extremal(self):
        case = structure_or_bound(P("[2/5,3/5)"), 3, F(1, 10000))
        assert isinstance(case, StructureCase)
        assert case.n == 1 and case.defect == 0 and case.defect_within
        assert (case.interval.start, case.interval.length) == (F(2, 5), F(1, 5))
        assert case.interval.left_closed and case.interval.right_closed

    @pytest.mark.parametrize("k", range(3, 11))
    def test_extremal_family(self, k):
        case = structure_or_bound(simple_set(extremal_interval(k)), k, F(1, 10000))
        assert isinstance(case, StructureCase) and case.defect == 0 and case.measure_within

    def test_generic_union_is_bound_case(self):
        S = P("[2/5,41/100];[1/2,51/100]")
        assert measure(sumset(S, S)) == 3 * measure(S)
        case = structure_or_bound(S, 3, F(1, 10000))
        assert isinstance(case, BoundCase) and case.certificate_holds
        assert case.measure <= F(10000, 30001)

    def test_errors(self):
        with pytest.raises(KsfError):
            structure_or_bound(P("[0,1/4]"), 3, 0)
        with pytest.raises(KsfError):
            structure_or_bound(P("[2/5,3/5)"), 3, F(1, 100))
        with pytest.raises(KsfError):
            structure_or_bound(P("[2/5,3/5)"), 2, 0)


class TestZp:
    def test_examples(self):
        assert is_k_sum_free_zp(Z(7, 2, 5), 3).is_ksf
        rep = is_k_sum_free_zp(Z(7, 1, 5), 3)
        assert not rep.is_ksf and rep.witness == (5, 5, 1)
        assert is_k_sum_free_zp(Z(11, 0, 4), 3).witness == (0, 0, 0)
        with pytest.raises(KsfError):
            is_k_sum_free_zp(Z(7, 1), 14)

    @pytest.mark.parametrize("p", [5, 7, 11])
    def test_exhaustive_against_plain(self, p):
        for k in (1, 3, 4):
            for m in range(1 << p):
                el = [j for j in range(p) if m >> j & 1]
                rep = is_k_sum_free_zp(ZpSet(p, m), k)
                assert rep.is_ksf == plain_ksf(el, k, p)
                if rep.witness:
                    x, y, z = rep.witness
                    assert {x, y, z} <= set(el) and (x + y - k * z) % p == 0

    @pytest.mark.parametrize("p", [5, 7, 11])
    def test_dilation_symmetry(self, p):
        for m in range(1 << p):
            A = ZpSet(p, m)
            base = is_k_sum_free_zp(A, 3).is_ksf
            for a in range(2, p):
                assert is_k_sum_free_zp(dilate_zp(A, a), 3).is_ksf == base

    def test_small_max(self):
        assert max_ksf_zp(5, 3).max_size == 1
        res = max_ksf_zp(7, 3)
        assert res.max_size == 2 and res.density == F(2, 7)
        assert Z(7, 2, 5) in res.all_maximisers()
        for w in res.all_maximisers():
            assert is_k_sum_free_zp(w, 3).is_ksf

    @pytest.mark.parametrize("p,k", sorted(GOLDEN))
    def test_golden(self, p, k):
        assert max_ksf_zp(p, k).max_size == GOLDEN[(p, k)] <= counting_cap(p)

    @pytest.mark.parametrize("p", [11, 13])
    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_matches_naive(self, p, k):
        res = max_ksf_zp(p, k)
        size, canon = naive_max_ksf_zp(p, k)
        assert res.max_size == size <= counting_cap(p)
        assert res.witnesses == canon
        for w in res.witnesses:
            assert dilation_canonical(w.bits, p) == w.bits

    def test_k_equal_two_mod_p(self):
        assert max_ksf_zp(7, 9).max_size == 0

    def test_guards(self):
        with pytest.raises(SearchLimitError):
            max_ksf_zp(37, 3)
        with pytest.raises(SearchLimitError):
            naive_max_ksf_zp(23, 3)
        with pytest.raises(KsfError):
            max_ksf_zp(5, 5)
        with pytest.raises(KsfError):
            max_ksf_zp(7, 2)

    def test_json(self):
        d = max_ksf_zp(7, 3).to_dict()
        assert set(d) == {"p", "k", "max_size", "density", "witnesses_canonical", "nodes_expanded", "wall_ms"}
        assert d["max_size"] == 2 and d["density"] == "2/7"

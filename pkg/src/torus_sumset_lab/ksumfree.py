"""Sets avoiding solutions of x + y = k z, on the circle and on Z_p."""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .circle import (
    FULL_CIRCLE,
    CircleInterval,
    SimpleSet,
    complement,
    contains,
    covering_interval,
    dilate,
    frac,
    intersect,
    measure,
    negate,
    preimage_divide,
    sample_point,
    simple_set,
    sumset,
    translate,
)
from .zp import ZpSet, _check_prime, _dilate_bits, _rotl, dilate_zp, sumset_zp

EPS_WINDOW = Fraction(1, 10**4)


class KsfError(ValueError):
    pass


@dataclass(frozen=True)
class KsfReport:
    k: int
    is_ksf: bool
    witness: Optional[tuple] = None


def _as_set(S: Union[SimpleSet, CircleInterval]) -> SimpleSet:
    return simple_set(S) if isinstance(S, CircleInterval) else S


def is_k_sum_free_T(S: Union[SimpleSet, CircleInterval], k: int) -> KsfReport:
    """Exact test of S ∩ k^{-1}(S+S) = ∅, cross-checked against (S+S) ∩ k·S = ∅."""
    if k < 1:
        raise KsfError("k must be a positive integer")
    S = _as_set(S)
    SS = sumset(S, S)
    hits = intersect(S, preimage_divide(SS, k))
    other = intersect(SS, dilate(S, k))
    if bool(hits) != bool(other):
        raise AssertionError("the two k-sum-free tests disagree")
    if not hits:
        return KsfReport(k, True)
    if contains(S, 0):
        return KsfReport(k, False, (Fraction(0), Fraction(0), Fraction(0)))
    z = sample_point(hits)
    target = (k * z) % 1
    x = sample_point(intersect(S, translate(negate(S), target)))
    y = (target - x) % 1
    return KsfReport(k, False, (x, y, z))


def ksf_defect(I: Union[SimpleSet, CircleInterval], k: int) -> Fraction:
    """mu(I ∩ k^{-1}(I+I))."""
    I = _as_set(I)
    if not I:
        raise KsfError("interval must be non-empty")
    return measure(intersect(I, preimage_divide(sumset(I, I), k)))


@dataclass(frozen=True)
class IntervalEstimate:
    measure: Fraction
    delta: Fraction
    bound: Fraction
    satisfied: bool


def check_int_estim(I: Union[SimpleSet, CircleInterval], k: int) -> IntervalEstimate:
    """Compare mu(I) with (1 + k delta/2)/(k + 2), delta the relative defect of I."""
    I = _as_set(I)
    m = measure(I)
    if m == 0:
        raise KsfError("interval must have positive measure")
    delta = ksf_defect(I, k) / m
    if delta >= 1:
        raise KsfError(f"relative defect {delta} is not below 1")
    bound = (1 + Fraction(k) * delta / 2) / (k + 2)
    return IntervalEstimate(m, delta, bound, m <= bound)


def extremal_interval(k: int) -> CircleInterval:
    """[2/(k^2-4), k/(k^2-4)), a k-sum-free interval of measure 1/(k+2)."""
    if k < 3:
        raise KsfError("extremal interval needs k >= 3")
    q = k * k - 4
    I = CircleInterval(Fraction(2, q), Fraction(k - 2, q), True, False)
    S = simple_set(I)
    if complement(sumset(S, S)) != dilate(S, k):
        raise AssertionError(f"(I+I)^c != k*I for k = {k}")
    return I


class EpsWindowWarning(UserWarning):
    pass


def dk_upper_bound(k: int, eps) -> Fraction:
    """max(1/(3+eps), (1+k eps)/(k+2)); warns when eps is outside [0, 1/10^4]."""
    if k < 3:
        raise KsfError("the bound is stated for k >= 3")
    eps = frac(eps)
    if not 0 <= eps <= EPS_WINDOW:
        warnings.warn(f"eps = {eps} lies outside [0, 1/10000]", EpsWindowWarning, stacklevel=2)
    return max(1 / (3 + eps), (1 + k * eps) / (k + 2))


def is_k_sum_free_zp(A: ZpSet, k: int) -> KsfReport:
    p = A.p
    if k % p == 0:
        raise KsfError("k must be non-zero mod p")
    AA = sumset_zp(A, A)
    kA = dilate_zp(A, k)
    if not (AA.bits & kA.bits):
        return KsfReport(k, True)
    el = A.elements()
    for z in el:
        t = k * z % p
        if not AA.bits >> t & 1:
            continue
        for x in el:
            if (t - x) % p in A:
                return KsfReport(k, False, (x, (t - x) % p, z))
    raise AssertionError("sumset hit without a witness")


# --- maximum k-sum-free subsets of Z_p ----------------------------------------


class SearchLimitError(ValueError):
    pass


def dilation_canonical(bits: int, p: int) -> int:
    """Least bitmask among the non-zero dilates a*A."""
    return min(_dilate_bits(bits, a, p) for a in range(1, p))


def dilation_orbit(bits: int, p: int) -> set[int]:
    return {_dilate_bits(bits, a, p) for a in range(1, p)}


@dataclass
class MaxKsfResult:
    p: int
    k: int
    max_size: int
    witnesses: list[ZpSet]
    nodes_expanded: int
    wall_ms: int

    @property
    def density(self) -> Fraction:
        return Fraction(self.max_size, self.p)

    def all_maximisers(self) -> list[ZpSet]:
        """Every maximum k-sum-free set, not just one per dilation orbit."""
        out = set()
        for w in self.witnesses:
            out |= dilation_orbit(w.bits, self.p)
        return [ZpSet(self.p, b) for b in sorted(out)]

    def to_dict(self) -> dict:
        from .literals import format_zp_set

        return {
            "p": self.p,
            "k": self.k,
            "max_size": self.max_size,
            "density": str(self.density),
            "witnesses_canonical": [format_zp_set(w, hex_form=False) for w in self.witnesses],
            "nodes_expanded": self.nodes_expanded,
            "wall_ms": self.wall_ms,
        }


def counting_cap(p: int) -> int:
    return (p + 1) // 3


def max_ksf_zp(p: int, k: int, limit: int = 31) -> MaxKsfResult:
    """Exact maximum size of a k-sum-free subset of Z_p, with all maximisers up to dilation.

    Branch and bound over sets containing 1 (every non-empty set has a
    dilate containing 1), with forward checking of the candidate list.
    """
    _check_prime(p)
    if k < 3:
        raise KsfError("max_ksf_zp needs k >= 3")
    if p > limit:
        raise SearchLimitError(f"p = {p} exceeds the search limit {limit}")
    t0 = time.perf_counter()
    if k % p == 0:
        raise KsfError("k must be non-zero mod p")
    if k % p == 2:
        # x + x = 2x = kx for every x
        return MaxKsfResult(p, k, 0, [ZpSet(p, 0)], 0, _ms(t0))
    kk = k % p

    def extend(A, S, K, e):
        A2 = A | 1 << e
        S2 = S | _rotl(A2, e, p)
        K2 = K | 1 << (kk * e % p)
        return A2, S2, K2, not (S2 & K2)

    A0, S0, K0, ok = extend(0, 0, 0, 1)
    assert ok
    cand0 = [e for e in range(2, p) if extend(A0, S0, K0, e)[3]]
    cap = counting_cap(p)
    best = 1
    found: list[int] = [A0]
    nodes = 0

    def rec(A, S, K, size, cand):
        nonlocal best, found, nodes
        nodes += 1
        if size > best:
            best, found = size, [A]
        elif size == best:
            found.append(A)
        for i, e in enumerate(cand):
            if size + len(cand) - i < best:
                return
            A2, S2, K2, _ = extend(A, S, K, e)
            nxt = [c for c in cand[i + 1 :] if extend(A2, S2, K2, c)[3]]
            if size + 1 + len(nxt) >= best:
                rec(A2, S2, K2, size + 1, nxt)

    rec(A0, S0, K0, 1, cand0)
    assert best <= cap
    canon = sorted({dilation_canonical(b, p) for b in found})
    return MaxKsfResult(p, k, best, [ZpSet(p, b) for b in canon], nodes, _ms(t0))


def _ms(t0: float) -> int:
    return int(round((time.perf_counter() - t0) * 1000))


def naive_max_ksf_zp(p: int, k: int, limit: int = 19) -> tuple[int, list[ZpSet]]:
    """Brute force over all 2^p subsets; independent of :func:`max_ksf_zp`."""
    _check_prime(p)
    if p > limit:
        raise SearchLimitError(f"p = {p} exceeds the oracle limit {limit}")
    masks = np.arange(1 << p, dtype=np.uint32)
    bit = [((masks >> j) & 1).astype(bool) for j in range(p)]
    bad = np.zeros(1 << p, dtype=bool)
    for x in range(p):
        for z in range(p):
            y = (k * z - x) % p
            bad |= bit[x] & bit[y] & bit[z]
    sizes = np.zeros(1 << p, dtype=np.int64)
    for j in range(p):
        sizes += bit[j]
    sizes[bad] = -1
    top = int(sizes.max())
    winners = np.flatnonzero(sizes == top).tolist()
    canon = sorted({dilation_canonical(int(b), p) for b in winners})
    return top, [ZpSet(p, b) for b in canon]


# --- the either/or structural lemma -------------------------------------------


@dataclass(frozen=True)
class BoundCase:
    measure: Fraction
    sumset_measure: Fraction
    dilate_measure: Fraction

    @property
    def certificate_holds(self) -> bool:
        m = self.measure
        return 3 * m <= self.sumset_measure + self.dilate_measure <= 1


@dataclass(frozen=True)
class StructureCase:
    n: int
    interval: CircleInterval
    defect: Fraction
    defect_within: bool
    measure_within: bool


class NoStructureError(RuntimeError):
    pass


def structure_or_bound(S: SimpleSet, k: int, eps) -> Union[BoundCase, StructureCase]:
    """Either certify mu(S) <= 1/(3+eps) or exhibit n and I with n*S ⊂ I.

    The structural branch searches n up to 2m/mu(S), m the component count,
    for a covering interval of n*S of measure at most mu(S+S) - mu(S).
    """
    eps = frac(eps)
    if k < 3:
        raise KsfError("k must be at least 3")
    if not 0 <= eps <= EPS_WINDOW:
        raise KsfError(f"eps = {eps} outside [0, 1/10000]")
    S = _as_set(S)
    if not is_k_sum_free_T(S, k).is_ksf:
        raise KsfError("set is not k-sum-free")
    m = measure(S)
    if m == 0:
        raise KsfError("set must have positive measure")
    mss = measure(sumset(S, S))
    if mss >= (2 + eps) * m:
        case = BoundCase(m, mss, measure(dilate(S, k)))
        if not case.certificate_holds:
            raise AssertionError("counting certificate failed on a k-sum-free set")
        return case
    n_max = math.floor(2 * len(S) / m)
    for n in range(1, n_max + 1):
        cov = covering_interval(dilate(S, n))
        if cov is FULL_CIRCLE:
            continue
        I, size = cov
        if size <= mss - m:
            d = ksf_defect(I, k)
            return StructureCase(n, I, d, d <= 2 * eps * size, size <= (1 + eps) * m)
    raise NoStructureError(f"no n <= {n_max} with a covering interval of measure <= {mss - m}")

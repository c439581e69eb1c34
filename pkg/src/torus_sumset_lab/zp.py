"""Subsets of Z_p as Python-int bitsets.

Bit j of ``ZpSet.bits`` is set iff j is in the set. Small operands use
shift-OR sumsets; large dense operands switch to FFT convolution. Fourier
coefficients use the convention

    1_B^(s) = (1/p) * sum_{j in B} exp(+2 pi i s j / p)

and are evaluated run by run with the geometric-sum closed form, never
by a length-p DFT per frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np
from sympy import isprime

from .circle import SimpleSet, _merge, _segments

SLACK = 1e-9
LOWER_BOUND_FACTOR = 1 - 2 / math.pi


class PreconditionError(ValueError):
    """Raised when a bound is evaluated outside its hypotheses."""


@lru_cache(maxsize=4096)
def _check_prime(p: int) -> None:
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise ValueError(f"modulus must be prime, got {p!r}")


@dataclass(frozen=True)
class ZpSet:
    p: int
    bits: int = 0

    def __post_init__(self):
        _check_prime(self.p)
        if self.bits < 0 or self.bits >> self.p:
            raise ValueError("bitset has bits outside 0..p-1")

    @classmethod
    def from_elements(cls, p: int, elements: Iterable[int]) -> ZpSet:
        _check_prime(p)
        elements = list(elements)
        if len(elements) > 4096:
            return cls(p, _indices_to_bits(np.asarray(elements, dtype=np.int64) % p, p))
        bits = 0
        for j in elements:
            bits |= 1 << (int(j) % p)
        return cls(p, bits)

    @classmethod
    def full(cls, p: int) -> ZpSet:
        return cls(p, (1 << p) - 1)

    @classmethod
    def interval(cls, p: int, start: int, length: int) -> ZpSet:
        """The cyclic run {start, ..., start + length - 1}."""
        if not 0 <= length <= p:
            raise ValueError("interval length must lie in [0, p]")
        run = (1 << length) - 1
        return cls(p, _rotl(run, start % p, p))

    def __len__(self):
        return self.bits.bit_count()

    def __contains__(self, j: int) -> bool:
        return bool(self.bits >> (j % self.p) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def __add__(self, other: ZpSet) -> ZpSet:
        return sumset_zp(self, other)

    def __and__(self, other: ZpSet) -> ZpSet:
        _same_modulus(self, other)
        return ZpSet(self.p, self.bits & other.bits)

    def __or__(self, other: ZpSet) -> ZpSet:
        _same_modulus(self, other)
        return ZpSet(self.p, self.bits | other.bits)

    def complement(self) -> ZpSet:
        return ZpSet(self.p, ((1 << self.p) - 1) ^ self.bits)

    def translate(self, t: int) -> ZpSet:
        return ZpSet(self.p, _rotl(self.bits, t % self.p, self.p))

    def negate(self) -> ZpSet:
        return dilate_zp(self, -1)

    def elements(self) -> list[int]:
        return _elements(self.bits, self.p)

    @property
    def is_full(self) -> bool:
        return self.bits == (1 << self.p) - 1

    @property
    def interval_count(self) -> int:
        return len(runs(self))

    def __str__(self):
        from .literals import format_zp_set

        return format_zp_set(self)


def _same_modulus(A: ZpSet, B: ZpSet) -> None:
    if A.p != B.p:
        raise ValueError(f"modulus mismatch: {A.p} vs {B.p}")


# --- raw bitset helpers -----------------------------------------------------


def _rotl(x: int, s: int, p: int) -> int:
    if s == 0:
        return x
    return ((x << s) | (x >> (p - s))) & ((1 << p) - 1)


def _elements(bits: int, p: int) -> list[int]:
    if p > 2048 and bits:
        return np.flatnonzero(_bits_to_array(bits, p)).tolist()
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def _bits_to_array(bits: int, p: int) -> np.ndarray:
    raw = bits.to_bytes((p + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:p]


def _array_to_bits(arr: np.ndarray) -> int:
    packed = np.packbits(arr.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def _indices_to_bits(idx: np.ndarray, p: int) -> int:
    arr = np.zeros(p, dtype=np.uint8)
    arr[idx] = 1
    return _array_to_bits(arr)


def fft_threshold(p: int) -> float:
    return 2 * math.log2(p) * math.sqrt(p)


def _sumset_shift_or(a: int, b: int, p: int) -> int:
    if a.bit_count() < b.bit_count():
        a, b = b, a
    out = 0
    mask = (1 << p) - 1
    for j in _elements(b, p):
        out |= ((a << j) | (a >> (p - j))) & mask if j else a
    return out


def _sumset_fft(a: int, b: int, p: int) -> int:
    x = _bits_to_array(a, p).astype(np.float64)
    y = _bits_to_array(b, p).astype(np.float64)
    size = 1 << (2 * p - 1).bit_length()
    conv = np.fft.irfft(np.fft.rfft(x, size) * np.fft.rfft(y, size), size)[: 2 * p - 1]
    hit = conv > 0.5
    folded = hit[:p].copy()
    folded[: p - 1] |= hit[p:]
    return _array_to_bits(folded)


def _sumset_bits(a: int, b: int, p: int) -> int:
    if not a or not b:
        return 0
    if min(a.bit_count(), b.bit_count()) > fft_threshold(p):
        return _sumset_fft(a, b, p)
    return _sumset_shift_or(a, b, p)


def _dilate_bits(bits: int, n: int, p: int) -> int:
    n %= p
    if n == 1 or not bits:
        return bits
    if p > 2048:
        idx = np.flatnonzero(_bits_to_array(bits, p)).astype(np.int64)
        return _indices_to_bits((idx * n) % p, p)
    out = 0
    for j in _elements(bits, p):
        out |= 1 << (j * n % p)
    return out


def _cover(bits: int, p: int):
    """(start, length) of the smallest cyclic interval containing ``bits``; None if full."""
    if bits == (1 << p) - 1:
        return None
    el = _elements(bits, p)
    if len(el) == 1:
        return el[0], 1
    if p > 2048:
        e = np.asarray(el, dtype=np.int64)
        gaps = np.diff(np.append(e, e[0] + p)) - 1
        # gap i sits just after element i; the cover starts at element i+1
        starts = np.roll(e, -1)
        g = gaps.max()
        start = int(starts[gaps == g].min())
        return start, p - int(g)
    best_gap, best_start = -1, None
    c = len(el)
    for i in range(c):
        nxt = el[(i + 1) % c]
        gap = (nxt - el[i] - 1) % p
        if gap > best_gap or (gap == best_gap and nxt < best_start):
            best_gap, best_start = gap, nxt
    return best_start, p - best_gap


def _cover_len(bits: int, p: int) -> int:
    c = _cover(bits, p)
    return p if c is None else c[1]


def _runs_bits(bits: int, p: int) -> list[tuple[int, int]]:
    el = _elements(bits, p)
    if not el:
        return []
    if len(el) == p:
        return [(0, p)]
    out = []
    start = prev = el[0]
    for j in el[1:]:
        if j != prev + 1:
            out.append((start, prev - start + 1))
            start = j
        prev = j
    out.append((start, prev - start + 1))
    if len(out) > 1 and out[0][0] == 0 and out[-1][0] + out[-1][1] == p:
        s, t = out.pop()
        out[0] = (s, t + out[0][1])
        out.sort()
    return out


def _longest_run(bits: int, p: int) -> int:
    r = _runs_bits(bits, p)
    return max((t for _, t in r), default=0)


# --- public operations ------------------------------------------------------


def sumset_zp(A: ZpSet, B: ZpSet) -> ZpSet:
    _same_modulus(A, B)
    return ZpSet(A.p, _sumset_bits(A.bits, B.bits, A.p))


def dilate_zp(A: ZpSet, n: int) -> ZpSet:
    if n % A.p == 0:
        raise ValueError("dilation factor must be non-zero mod p")
    return ZpSet(A.p, _dilate_bits(A.bits, n, A.p))


def abs_p(s: int, p: int) -> int:
    """|s|_p: absolute value of the representative of s in (-p/2, p/2)."""
    s %= p
    return min(s, p - s)


def runs(B: ZpSet) -> list[tuple[int, int]]:
    """Maximal cyclic runs of B as (start, length), sorted by start.

    Z_p is one run of length p; the empty set has none.
    """
    return _runs_bits(B.bits, B.p)


def min_covering_interval_zp(B: ZpSet):
    """(start, length) of the smallest cyclic interval containing B.

    Returns None when B = Z_p. Ties go to the smallest start.
    """
    if not B.bits:
        raise ValueError("covering interval of the empty set is undefined")
    return _cover(B.bits, B.p)


def n_diameter_zp(B: ZpSet, n: int) -> Fraction:
    nB = dilate_zp(B, n)
    c = min_covering_interval_zp(nB)
    return Fraction(1) if c is None else Fraction(c[1], B.p)


_CHUNK = 1 << 20


def _roots(k: np.ndarray, p: int, table) -> np.ndarray:
    return table[k] if table is not None else np.exp(2j * np.pi * k / p)


def fourier_coefficients(B: ZpSet, s) -> np.ndarray:
    """Complex 1_B^(s) for an array of frequencies, using the per-run closed form."""
    p = B.p
    s = np.atleast_1d(np.asarray(s, dtype=np.int64)) % p
    out = np.zeros(s.shape, dtype=np.complex128)
    r = runs(B)
    if not r:
        return out
    zero = s == 0
    out[zero] = len(B) / p
    nz = ~zero
    sn = s[nz]
    if sn.size == 0:
        return out
    starts = np.array([a for a, _ in r], dtype=np.int64)
    ends = starts + np.array([t for _, t in r], dtype=np.int64)
    # a run [a, a+t) contributes (e(s(a+t)/p) - e(sa/p)) / (e(s/p) - 1)
    table = np.exp(2j * np.pi * np.arange(p) / p) if sn.size * len(r) > p else None
    acc = np.empty(sn.shape, dtype=np.complex128)
    step = max(1, _CHUNK // len(r))
    for i in range(0, sn.size, step):
        col = sn[i : i + step, None]
        acc[i : i + step] = (_roots(col * ends % p, p, table) - _roots(col * starts % p, p, table)).sum(axis=1)
    out[nz] = acc / (_roots(sn, p, table) - 1) / p
    return out


def fourier_mag(B: ZpSet, s: int) -> float:
    return float(abs(fourier_coefficients(B, [s])[0]))


def fourier_dft_oracle(B: ZpSet) -> np.ndarray:
    """All |1_B^(s)| at once via a length-p FFT; an independent cross-check."""
    x = _bits_to_array(B.bits, B.p).astype(np.float64)
    # numpy's ifft uses exp(+2 pi i sj/p) and divides by p.
    return np.abs(np.fft.ifft(x))


@dataclass(frozen=True)
class FourierReport:
    s: int
    magnitude: float
    bound: float
    satisfied: bool


@dataclass
class FourierDecay:
    """Magnitudes against the bound m/(2|s|_p) for every non-zero s."""

    p: int
    m: int
    s: np.ndarray
    magnitude: np.ndarray
    bound: np.ndarray
    satisfied: np.ndarray

    @property
    def all_satisfied(self) -> bool:
        return bool(self.satisfied.all())

    def __len__(self):
        return int(self.s.size)

    def __iter__(self) -> Iterator[FourierReport]:
        for s, mag, bd, ok in zip(self.s, self.magnitude, self.bound, self.satisfied):
            yield FourierReport(int(s), float(mag), float(bd), bool(ok))

    def large_spectrum(self, gamma: float) -> np.ndarray:
        return self.s[self.magnitude >= gamma]

    def frequency_bound_holds(self, gamma: float) -> bool:
        """Every s with |1_B^(s)| >= gamma has |s|_p <= m/(2 gamma)."""
        if gamma <= 0:
            raise ValueError("gamma must be positive")
        big = self.large_spectrum(gamma)
        sp = np.minimum(big, self.p - big)
        return bool((sp <= self.m / (2 * gamma) + SLACK).all())


def check_fourier_decay(B: ZpSet) -> FourierDecay:
    p = B.p
    s = np.arange(1, p, dtype=np.int64)
    mag = np.abs(fourier_coefficients(B, s))
    m = len(runs(B))
    bound = m / (2.0 * np.minimum(s, p - s))
    return FourierDecay(p, m, s, mag, bound, mag <= bound + SLACK)


@dataclass(frozen=True)
class LowerBoundCheck:
    lhs: float
    rhs: float
    interval: tuple[int, int]
    satisfied: bool


def check_fourier_lower(B: ZpSet, n: int, enforce_precondition: bool = True) -> LowerBoundCheck:
    """Compare |1_B^(n)| with (|B| - (1 - 2/pi)|I|)/p, I the minimal cover of n*B.

    The bound is only claimed when |I| < p/2; outside that regime pass
    ``enforce_precondition=False`` to evaluate it anyway.
    """
    p = B.p
    if not B.bits:
        raise PreconditionError("B must be non-empty")
    nB = dilate_zp(B, n)
    c = min_covering_interval_zp(nB)
    cover = (0, p) if c is None else c
    if enforce_precondition and 2 * cover[1] >= p:
        raise PreconditionError(
            f"cover of n*B has size {cover[1]} >= p/2 = {p / 2}; the lower bound can fail here"
        )
    lhs = fourier_mag(B, n)
    rhs = (len(B) - LOWER_BOUND_FACTOR * cover[1]) / p
    return LowerBoundCheck(lhs, rhs, cover, lhs > rhs - SLACK)


@dataclass(frozen=True)
class FrequencyBoundCheck:
    lhs: int
    rhs: float
    diameter: Fraction
    beta: Fraction
    m: int
    satisfied: bool


def check_dilation_freq_bound(B: ZpSet, n: int) -> FrequencyBoundCheck:
    """|n|_p <= m / (2 (beta - (1 - 2/pi) D_n(B))) under D_n(B) < min(1/2, beta/(1 - 2/pi))."""
    p = B.p
    if n % p == 0:
        raise ValueError("n must be non-zero mod p")
    beta = Fraction(len(B), p)
    if beta == 0:
        raise PreconditionError("B must be non-empty")
    D = n_diameter_zp(B, n)
    if not (D < Fraction(1, 2) and float(D) < float(beta) / LOWER_BOUND_FACTOR):
        raise PreconditionError(
            f"D_n(B) = {D} is not below min(1/2, beta/(1 - 2/pi)) with beta = {beta}"
        )
    m = len(runs(B))
    rhs = m / (2 * (float(beta) - LOWER_BOUND_FACTOR * float(D)))
    lhs = abs_p(n, p)
    return FrequencyBoundCheck(lhs, rhs, D, beta, m, lhs <= rhs + SLACK)


def discretize(S: SimpleSet, p: int) -> ZpSet:
    """A_p = S intersected with the grid (1/p)Z_p; bit j set iff j/p in S."""
    _check_prime(p)
    bits = 0
    for a, b, lc, rc in _merge(_segments(S)):
        lo = a * p
        lo_i = math.ceil(lo)
        if lo_i == lo and not lc:
            lo_i += 1
        hi = b * p
        hi_i = math.floor(hi)
        if hi_i == hi and not rc:
            hi_i -= 1
        hi_i = min(hi_i, p - 1)
        if hi_i >= lo_i:
            bits |= ((1 << (hi_i - lo_i + 1)) - 1) << lo_i
    return ZpSet(p, bits)

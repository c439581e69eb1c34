"""Hypothesis strategies and brute-force oracles shared by the test modules."""

from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from torus_sumset_lab.circle import CircleInterval, canonicalize
from torus_sumset_lab.real_line import RealInterval, real_set

GRID = 24


@st.composite
def circle_intervals(draw, grid=GRID, max_len=None):
    start = Fraction(draw(st.integers(0, grid - 1)), grid)
    top = grid if max_len is None else max_len
    length = Fraction(draw(st.integers(0, top)), grid)
    lc, rc = draw(st.booleans()), draw(st.booleans())
    if length == 0:
        lc = rc = True
    return CircleInterval(start, length, lc, rc)


@st.composite
def circle_sets(draw, grid=GRID, max_parts=4, max_len=None):
    parts = draw(st.lists(circle_intervals(grid, max_len), min_size=0, max_size=max_parts))
    return canonicalize(parts)


@st.composite
def nonempty_circle_sets(draw, grid=GRID, max_parts=4, max_len=None):
    parts = draw(st.lists(circle_intervals(grid, max_len), min_size=1, max_size=max_parts))
    return canonicalize(parts)


@st.composite
def real_sets(draw, grid=GRID, lo=0, hi=1, max_parts=4, closed=False):
    n = draw(st.integers(1, max_parts))
    out = []
    for _ in range(n):
        a = draw(st.integers(lo * grid, hi * grid))
        b = draw(st.integers(a, hi * grid))
        lc = True if closed else draw(st.booleans())
        rc = True if closed else draw(st.booleans())
        if a == b:
            lc = rc = True
        out.append(RealInterval(Fraction(a, grid), Fraction(b, grid), lc, rc))
    return real_set(*out)


def grid_points(den):
    return [Fraction(j, den) for j in range(den)]


def member_sum(A, B, x, den):
    """x in A+B, by search over a grid fine enough for sets with endpoints on 1/GRID."""
    return any(a in A and (x - a) in B for a in grid_points(den))


def member_dilate(A, n, x):
    return any(Fraction(x + j, n) in A for j in range(n))


def _cluster(lo, hi, rng, holes, hole_den):
    """[lo, hi] with a few tiny holes punched away from the ends; returns (intervals, removed)."""
    if lo == hi:
        return [RealInterval(lo, hi)], F0
    cuts = sorted({int(x) for x in rng.integers(1, 9, size=holes)})
    width = hi - lo
    out, removed, start = [], F0, lo
    for c in cuts:
        at = lo + width * Fraction(c, 10)
        h = Fraction(int(rng.integers(1, 4)), hole_den)
        out.append(RealInterval(start, at))
        start = at + h
        removed += h
    out.append(RealInterval(start, hi))
    return out, removed


F0 = Fraction(0)


def end_cluster_set(rng, eps, grid=1000):
    """A closed set {0 ... a} + {1-b ... 1} with tiny interior holes and doubling close to 3.

    Either end may collapse to a single point. Holes are sized so that their
    total stays well below eps * lambda / 3, which keeps lambda(A+A) within
    (3 + eps) lambda(A).
    """
    while True:
        a = Fraction(int(rng.integers(1, 200)), grid) * int(rng.random() > 0.15)
        b = Fraction(int(rng.integers(1, 200)), grid) * int(rng.random() > 0.15)
        if a + b > 0:
            break
    hole_den = int(10 / (eps * (a + b))) * 10
    left, h1 = _cluster(F0, a, rng, int(rng.integers(0, 3)), hole_den)
    right, h2 = _cluster(1 - b, Fraction(1), rng, int(rng.integers(0, 3)), hole_den)
    return real_set(*left, *right), a, b, h1 + h2


def wide_end_set(rng, grid=1000):
    """[0, a] + [1-b, 1] with a + b > 3/4, whose sumset is all of [0, 2]."""
    while True:
        a = Fraction(int(rng.integers(1, grid)), grid)
        b = Fraction(int(rng.integers(1, grid)), grid)
        if Fraction(3, 4) < a + b < 1 and 2 * a + b >= 1 and a + 2 * b >= 1:
            return real_set(RealInterval(0, a), RealInterval(1 - b, 1)), a, b


def random_circle_set(rng, max_parts=5, den=997):
    """Canonical union of up to ``max_parts`` random intervals with random closure flags."""
    from torus_sumset_lab.circle import CircleInterval

    parts = []
    for _ in range(int(rng.integers(1, max_parts + 1))):
        start = Fraction(int(rng.integers(0, den)), den)
        length = Fraction(int(rng.integers(0, den // 3)), den)
        lc, rc = bool(rng.random() < 0.5), bool(rng.random() < 0.5)
        if length == 0:
            lc = rc = True
        parts.append(CircleInterval(start, length, lc, rc))
    return canonicalize(parts)


def random_runs(rng, p, m):
    """Bits of a union of at most m disjoint cyclic runs in Z_p."""
    cuts = np.sort(rng.choice(p, size=2 * m, replace=False))
    arr = np.zeros(p, dtype=bool)
    for lo, hi in zip(cuts[0::2], cuts[1::2]):
        arr[lo:hi] = True
    arr = np.roll(arr, int(rng.integers(0, p)))
    return int("".join("1" if x else "0" for x in arr[::-1]) or "0", 2)

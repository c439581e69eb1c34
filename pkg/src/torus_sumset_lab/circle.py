"""Exact set algebra for simple sets on the circle T = R/Z.

A simple set is a finite union of intervals. Points of T are stored as
fractions in [0, 1); an interval is stored as ``(start, length)`` plus two
closure flags and may wrap past 1. Every operation returns a canonical
:class:`SimpleSet`, so two sets are equal as point sets iff they compare
equal.

Internally most operations "unfold" a set into linear segments of
[0, 1). In that form the point 1 never appears as a closed right endpoint;
it is represented by the point 0 instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rat = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x: Rat) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class CircleInterval:
    """Interval of T starting at ``start`` and running ``length`` to the right.

    ``length == 1`` is either the full circle (normalized to both flags
    closed) or, with both flags open, the circle minus the single point
    ``start``.
    """

    start: Fraction
    length: Fraction
    left_closed: bool = True
    right_closed: bool = True

    def __post_init__(self):
        start = frac(self.start) % 1
        length = frac(self.length)
        if not ZERO <= length <= ONE:
            raise ValueError(f"interval length must lie in [0, 1], got {length}")
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "length", length)

    @property
    def end(self) -> Fraction:
        """Right endpoint as a real number in [start, start + 1]."""
        return self.start + self.length

    @property
    def is_full(self) -> bool:
        return self.length == 1 and (self.left_closed or self.right_closed)

    @property
    def is_point(self) -> bool:
        return self.length == 0

    def __repr__(self):
        lb = "[" if self.left_closed else "("
        rb = "]" if self.right_closed else ")"
        end = self.end if self.end <= 1 else self.end - 1
        return f"CircleInterval({lb}{self.start},{end}{rb})"


def interval(a: Rat, b: Rat, left_closed: bool = True, right_closed: bool = True) -> CircleInterval:
    """Build the interval from ``a`` to ``b`` going counter-clockwise.

    If ``0 <= b - a <= 1`` the real difference is the length; otherwise the
    length is ``(b - a) mod 1``, so ``interval(3/4, 1/8)`` wraps through 0.
    """
    a, b = frac(a), frac(b)
    d = b - a
    if not ZERO <= d <= ONE:
        d %= 1
    return CircleInterval(a, d, left_closed, right_closed)


@dataclass(frozen=True)
class SimpleSet:
    components: tuple[CircleInterval, ...] = ()

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __bool__(self):
        return bool(self.components)

    def __contains__(self, x) -> bool:
        return contains(self, x)

    def __add__(self, other: SimpleSet) -> SimpleSet:
        return sumset(self, other)

    def __and__(self, other: SimpleSet) -> SimpleSet:
        return intersect(self, other)

    def __or__(self, other: SimpleSet) -> SimpleSet:
        return union(self, other)

    def __invert__(self) -> SimpleSet:
        return complement(self)

    def __rmul__(self, n: int) -> SimpleSet:
        return dilate(self, n)

    @property
    def measure(self) -> Fraction:
        return measure(self)

    @property
    def is_full(self) -> bool:
        return len(self.components) == 1 and self.components[0].is_full

    def __str__(self):
        from .literals import format_circle_set

        return format_circle_set(self)

    def __repr__(self):
        return f"SimpleSet({str(self)!r})"


EMPTY = SimpleSet(())
FULL = SimpleSet((CircleInterval(0, 1, True, True),))


def empty_set() -> SimpleSet:
    return EMPTY


def full_circle() -> SimpleSet:
    return FULL


def simple_set(*intervals: CircleInterval) -> SimpleSet:
    return canonicalize(intervals)


# --- linear segments --------------------------------------------------------
# A segment is (a, b, lc, rc) with 0 <= a <= b <= 1, a < 1, and rc False
# whenever b == 1.


def _unfold(iv: CircleInterval) -> list[tuple]:
    s, length, lc, rc = iv.start, iv.length, iv.left_closed, iv.right_closed
    if iv.is_full:
        return [(ZERO, ONE, True, False)]
    e = s + length
    if e < 1:
        return [(s, e, lc, rc)]
    if e == 1:
        segs = [(s, ONE, lc, False)]
        if rc:
            segs.append((ZERO, ZERO, True, True))
        return segs
    return [(s, ONE, lc, False), (ZERO, e - 1, True, rc)]


def _segments(S: SimpleSet) -> list[tuple]:
    out = []
    for iv in S.components:
        out.extend(_unfold(iv))
    return out


def _valid(seg) -> bool:
    a, b, lc, rc = seg
    return a < b or (a == b and lc and rc)


def _merge(segs: Iterable[tuple]) -> list[tuple]:
    segs = sorted((s for s in segs if _valid(s)), key=lambda s: (s[0], not s[2]))
    merged: list[list] = []
    for a, b, lc, rc in segs:
        if merged:
            cur = merged[-1]
            if a < cur[1] or (a == cur[1] and (cur[3] or lc)):
                if a == cur[0]:
                    cur[2] = cur[2] or lc
                if b > cur[1]:
                    cur[1], cur[3] = b, rc
                elif b == cur[1]:
                    cur[3] = cur[3] or rc
                continue
        merged.append([a, b, lc, rc])
    return [tuple(m) for m in merged]


def _from_segments(segs: Iterable[tuple]) -> SimpleSet:
    m = _merge(segs)
    if not m:
        return EMPTY
    if len(m) == 1 and m[0][0] == 0 and m[0][1] == 1 and m[0][2]:
        return FULL
    wrap = None
    first, last = m[0], m[-1]
    if len(m) >= 2 and first[0] == 0 and first[2] and last[1] == 1:
        wrap = CircleInterval(last[0], 1 - last[0] + first[1], last[2], first[3])
        m = m[1:-1]
    comps = [CircleInterval(a, b - a, lc, rc) for a, b, lc, rc in m]
    if wrap is not None:
        comps.append(wrap)
    return SimpleSet(tuple(comps))


# --- operations -------------------------------------------------------------


def canonicalize(raw: Iterable[CircleInterval]) -> SimpleSet:
    """Return the unique canonical form of a union of circle intervals."""
    segs = []
    for iv in raw:
        segs.extend(_unfold(iv))
    return _from_segments(segs)


def measure(S: SimpleSet) -> Fraction:
    return sum((iv.length for iv in S.components), ZERO)


def contains(S: SimpleSet, x: Rat) -> bool:
    x = frac(x) % 1
    for iv in S.components:
        if iv.is_full:
            return True
        d = (x - iv.start) % 1
        if d == 0:
            if iv.left_closed or (iv.length == 0 and iv.right_closed):
                return True
        elif d < iv.length:
            return True
        elif d == iv.length and iv.right_closed:
            return True
    return False


def union(S: SimpleSet, T: SimpleSet) -> SimpleSet:
    return _from_segments(_segments(S) + _segments(T))


def translate(S: SimpleSet, t: Rat) -> SimpleSet:
    t = frac(t)
    return canonicalize(
        CircleInterval(iv.start + t, iv.length, iv.left_closed, iv.right_closed) for iv in S
    )


def negate(S: SimpleSet) -> SimpleSet:
    """Image of S under x -> -x."""
    return canonicalize(
        CircleInterval(-iv.end, iv.length, iv.right_closed, iv.left_closed) for iv in S
    )


def _add_intervals(I: CircleInterval, J: CircleInterval) -> CircleInterval:
    length = I.length + J.length
    if length > 1:
        return FULL.components[0]
    return CircleInterval(
        I.start + J.start,
        length,
        I.left_closed and J.left_closed,
        I.right_closed and J.right_closed,
    )


def sumset(S: SimpleSet, T: SimpleSet) -> SimpleSet:
    """Minkowski sum mod 1.

    An endpoint of a pairwise interval sum is attained iff both contributing
    endpoints are attained.
    """
    pieces = []
    for I in S.components:
        for J in T.components:
            K = _add_intervals(I, J)
            if K.is_full:
                return FULL
            pieces.append(K)
    return canonicalize(pieces)


def dilate(S: SimpleSet, n: int) -> SimpleSet:
    """Image of S under x -> n x, for a positive integer n."""
    if n < 1:
        raise ValueError(f"dilation factor must be a positive integer, got {n}")
    pieces = []
    for iv in S.components:
        length = n * iv.length
        if length > 1:
            return FULL
        pieces.append(CircleInterval(n * iv.start, length, iv.left_closed, iv.right_closed))
    return canonicalize(pieces)


def preimage_divide(X: SimpleSet, k: int) -> SimpleSet:
    """The set k^{-1} X = {t : k t in X}: k shrunk copies of X spaced 1/k apart."""
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    return canonicalize(
        CircleInterval((iv.start + j) / k, iv.length / k, iv.left_closed, iv.right_closed)
        for iv in X.components
        for j in range(k)
    )


def complement(S: SimpleSet) -> SimpleSet:
    gaps = []
    cur, cur_closed = ZERO, True
    for a, b, lc, rc in _merge(_segments(S)):
        gaps.append((cur, a, cur_closed, not lc))
        cur, cur_closed = b, not rc
    if cur < 1:
        gaps.append((cur, ONE, cur_closed, False))
    return _from_segments(gaps)


def _intersect_segs(s, t):
    a1, b1, l1, r1 = s
    a2, b2, l2, r2 = t
    if a1 > a2:
        a, lc = a1, l1
    elif a2 > a1:
        a, lc = a2, l2
    else:
        a, lc = a1, l1 and l2
    if b1 < b2:
        b, rc = b1, r1
    elif b2 < b1:
        b, rc = b2, r2
    else:
        b, rc = b1, r1 and r2
    return (a, b, lc, rc)


def intersect(S: SimpleSet, T: SimpleSet) -> SimpleSet:
    ss, ts = _merge(_segments(S)), _merge(_segments(T))
    return _from_segments(_intersect_segs(s, t) for s in ss for t in ts)


def difference(S: SimpleSet, T: SimpleSet) -> SimpleSet:
    return intersect(S, complement(T))


def is_subset(S: SimpleSet, T: SimpleSet) -> bool:
    return difference(S, T) == EMPTY


class _FullCircleCover:
    """Returned by :func:`covering_interval` when no gap of positive length exists."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "FULL_CIRCLE"


FULL_CIRCLE = _FullCircleCover()


def covering_interval(S: SimpleSet):
    """Smallest closed interval containing S, with its measure.

    Computed as the complement of the largest open gap of S; ties on gap
    length go to the gap with the smallest start. Returns ``FULL_CIRCLE``
    when S has no gap of positive length.
    """
    if not S:
        raise ValueError("covering interval of the empty set is undefined")
    best = None
    for g in complement(S).components:
        if g.length > 0 and (best is None or g.length > best.length):
            best = g
    if best is None:
        return FULL_CIRCLE
    cover = CircleInterval(best.end, 1 - best.length, True, True)
    return cover, cover.length


def n_diameter(S: SimpleSet, n: int) -> Fraction:
    """Measure of the smallest closed interval containing n * S."""
    cov = covering_interval(dilate(S, n))
    return ONE if cov is FULL_CIRCLE else cov[1]


def dilate_measure_profile(S: SimpleSet, n_max: int) -> list[tuple[int, Fraction]]:
    """(n, mu(n * S)) for n = 1..n_max."""
    return [(n, measure(dilate(S, n))) for n in range(1, n_max + 1)]


def sample_point(S: SimpleSet) -> Fraction:
    """A deterministic rational point of a non-empty set."""
    for iv in S.components:
        if iv.is_full:
            return ZERO
        if iv.left_closed:
            return iv.start
        if iv.length == 1:
            return (iv.start + Fraction(1, 2)) % 1
        return (iv.start + iv.length / 2) % 1
    raise ValueError("empty set has no points")

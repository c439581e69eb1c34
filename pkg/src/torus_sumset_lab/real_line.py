"""Simple sets on the real line and their relation to the circle.

A :class:`RealSimpleSet` is a finite union of bounded intervals with
rational endpoints. Besides plain set algebra this module holds two
constructive routines for closed sets of doubling below 4 in [0, 1]:

* :func:`doubling_structure` finds a small ``n`` for which ``n * A mod 1``
  fits in a short closed interval, and splits ``A`` accordingly;
* :func:`egm_interval` finds an interval on which ``A`` has density
  noticeably above 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .circle import (
    FULL_CIRCLE,
    CircleInterval,
    SimpleSet,
    _merge,
    canonicalize,
    covering_interval,
    dilate,
    frac,
    measure,
    sumset,
)

ZERO = Fraction(0)
ONE = Fraction(1)
EPS_WINDOW = Fraction(1, 10**4)


class HypothesisError(ValueError):
    """An input violates a named hypothesis of a structural routine."""

    def __init__(self, name: str, detail: str):
        self.name = name
        super().__init__(f"{name}: {detail}")


class NoWitnessError(RuntimeError):
    """The search ran to its bound without finding a witness."""

    def __init__(self, message: str, scan: list):
        self.scan = scan
        super().__init__(message)


@dataclass(frozen=True)
class RealInterval:
    a: Fraction
    b: Fraction
    left_closed: bool = True
    right_closed: bool = True

    def __post_init__(self):
        a, b = frac(self.a), frac(self.b)
        if b < a:
            raise ValueError(f"empty orientation: right endpoint {b} below left endpoint {a}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def length(self) -> Fraction:
        return self.b - self.a

    @property
    def is_empty(self) -> bool:
        return self.a == self.b and not (self.left_closed and self.right_closed)

    def __repr__(self):
        lb = "[" if self.left_closed else "("
        rb = "]" if self.right_closed else ")"
        return f"RealInterval({lb}{self.a},{self.b}{rb})"


def closed(a, b) -> RealInterval:
    return RealInterval(a, b, True, True)


@dataclass(frozen=True)
class RealSimpleSet:
    components: tuple[RealInterval, ...] = ()

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __bool__(self):
        return bool(self.components)

    def __add__(self, other: RealSimpleSet) -> RealSimpleSet:
        return sumset_R(self, other)

    def __and__(self, other: RealSimpleSet) -> RealSimpleSet:
        return intersect_R(self, other)

    def __contains__(self, x) -> bool:
        return contains_R(self, x)

    @property
    def measure(self) -> Fraction:
        return measure_R(self)

    @property
    def is_closed(self) -> bool:
        return all(iv.left_closed and iv.right_closed for iv in self.components)

    def __str__(self):
        from .literals import format_real_set

        return format_real_set(self)

    def __repr__(self):
        return f"RealSimpleSet({str(self)!r})"


def _to_segs(S: RealSimpleSet):
    return [(iv.a, iv.b, iv.left_closed, iv.right_closed) for iv in S.components]


def _from_segs(segs) -> RealSimpleSet:
    return RealSimpleSet(tuple(RealInterval(a, b, lc, rc) for a, b, lc, rc in _merge(segs)))


def real_set(*intervals: RealInterval) -> RealSimpleSet:
    return _from_segs((iv.a, iv.b, iv.left_closed, iv.right_closed) for iv in intervals)


def measure_R(S: RealSimpleSet) -> Fraction:
    return sum((iv.length for iv in S.components), ZERO)


def contains_R(S: RealSimpleSet, x) -> bool:
    x = frac(x)
    for iv in S.components:
        if iv.a < x < iv.b:
            return True
        if x == iv.a and iv.left_closed or x == iv.b and iv.right_closed:
            return True
    return False


def sumset_R(S: RealSimpleSet, T: RealSimpleSet) -> RealSimpleSet:
    return _from_segs(
        (s[0] + t[0], s[1] + t[1], s[2] and t[2], s[3] and t[3])
        for s in _to_segs(S)
        for t in _to_segs(T)
    )


def intersect_R(S: RealSimpleSet, T: RealSimpleSet) -> RealSimpleSet:
    from .circle import _intersect_segs

    return _from_segs(_intersect_segs(s, t) for s in _to_segs(S) for t in _to_segs(T))


def union_R(S: RealSimpleSet, T: RealSimpleSet) -> RealSimpleSet:
    return _from_segs(_to_segs(S) + _to_segs(T))


def translate_R(S: RealSimpleSet, t) -> RealSimpleSet:
    t = frac(t)
    return _from_segs((a + t, b + t, lc, rc) for a, b, lc, rc in _to_segs(S))


def scale_R(S: RealSimpleSet, c) -> RealSimpleSet:
    """Image of S under x -> c x for c > 0."""
    c = frac(c)
    if c <= 0:
        raise ValueError("scale factor must be positive")
    return _from_segs((a * c, b * c, lc, rc) for a, b, lc, rc in _to_segs(S))


def inf_R(S: RealSimpleSet) -> Fraction:
    if not S:
        raise ValueError("empty set has no infimum")
    return S.components[0].a


def sup_R(S: RealSimpleSet) -> Fraction:
    if not S:
        raise ValueError("empty set has no supremum")
    return S.components[-1].b


def diameter(S: RealSimpleSet) -> Fraction:
    return sup_R(S) - inf_R(S) if S else ZERO


def normalize(S: RealSimpleSet):
    """Translate and rescale S so that inf = 0 and sup = 1.

    Returns ``(normalized, offset, scale)`` with ``S = offset + scale * normalized``.
    """
    d = diameter(S)
    if d == 0:
        raise ValueError("cannot normalize a set of zero diameter")
    lo = inf_R(S)
    return scale_R(translate_R(S, -lo), 1 / d), lo, d


def project_mod1(S: RealSimpleSet) -> SimpleSet:
    pieces = []
    for iv in S.components:
        if iv.length > 1:
            pieces.append(CircleInterval(0, 1))
        else:
            pieces.append(CircleInterval(iv.a, iv.length, iv.left_closed, iv.right_closed))
    return canonicalize(pieces)


def sigma2(S: RealSimpleSet) -> Fraction:
    """Measure of the points x in [0, 1) with both x and x + 1 in S + S."""
    if S and (inf_R(S) < 0 or sup_R(S) > 1):
        raise ValueError("set must lie within [0, 1]")
    SS = sumset_R(S, S)
    low = intersect_R(SS, real_set(RealInterval(0, 1, True, False)))
    high = translate_R(intersect_R(SS, real_set(RealInterval(1, 2, True, False))), -1)
    return measure_R(intersect_R(low, high))


# --- doubling structure ------------------------------------------------------


@dataclass
class DoublingDecomposition:
    """Pieces with ``A = union of (i/n + pieces[i])`` for i = 0..n.

    ``window`` is the lift through 0 of an arc J with n * J equal to the
    covering interval. Every piece lies inside ``window``.
    """

    n: int
    window: RealInterval
    pieces: list[RealSimpleSet]
    alphas: list[Fraction] = field(default_factory=list)
    d0: Fraction = ZERO
    dn: Fraction = ZERO

    def reassemble(self) -> RealSimpleSet:
        out = RealSimpleSet()
        for i, piece in enumerate(self.pieces):
            out = union_R(out, translate_R(piece, Fraction(i, self.n)))
        return out


@dataclass
class DoublingStructure:
    n: int
    interval: CircleInterval
    decomposition: DoublingDecomposition
    scan: list

    @property
    def interval_measure(self) -> Fraction:
        return self.interval.length


def _check_window(eps: Fraction) -> None:
    if not ZERO <= eps <= EPS_WINDOW:
        raise HypothesisError("eps-window", f"eps = {eps} outside [0, 1/10000]")


def _decompose(S: RealSimpleSet, n: int, I: CircleInterval) -> DoublingDecomposition:
    ell = I.length / n
    # lift of I.start / n into [0, 1/n); the copy of J through 0 may start below 0
    c = (I.start / n) % Fraction(1, n)
    if c + ell >= Fraction(1, n):
        c -= Fraction(1, n)
    window = closed(c, c + ell)
    win = real_set(window)
    pieces = []
    for i in range(n + 1):
        shift = Fraction(i, n)
        pieces.append(translate_R(intersect_R(S, translate_R(win, shift)), -shift))
    alphas = [measure_R(P) for P in pieces]
    return DoublingDecomposition(
        n, window, pieces, alphas, diameter(pieces[0]), diameter(pieces[n])
    )


def _structure_scan(S: RealSimpleSet, eps: Fraction, lam: Fraction, n_max: int):
    target = (1 + eps) * lam
    projected = project_mod1(S)
    scan = []
    for n in range(1, n_max + 1):
        cov = covering_interval(dilate(projected, n))
        size = ONE if cov is FULL_CIRCLE else cov[1]
        scan.append((n, size))
        if cov is not FULL_CIRCLE and size <= target:
            return n, cov[0], scan
    raise NoWitnessError(
        f"no n <= {n_max} puts n*A mod 1 in an interval of measure <= {target}", scan
    )


def doubling_structure(S: RealSimpleSet, eps) -> DoublingStructure:
    """Find n <= (1+eps)/(1-eps) with n*A mod 1 inside a closed interval of measure <= (1+eps)*lambda(A).

    ``S`` must be closed with inf 0 and sup 1 (see :func:`normalize`), and
    satisfy lambda(S+S) <= (3+eps) lambda(S) and 0 < lambda(S) < 1/(2(1+eps)).
    """
    eps = frac(eps)
    _check_window(eps)
    if not S:
        raise HypothesisError("non-empty", "set is empty")
    if not S.is_closed:
        raise HypothesisError("closed", "every component must be a closed interval")
    if inf_R(S) != 0 or sup_R(S) != 1:
        raise HypothesisError("normalized", "need inf = 0 and sup = 1; rescale with normalize()")
    lam = measure_R(S)
    if not ZERO < lam < 1 / (2 * (1 + eps)):
        raise HypothesisError("measure-range", f"lambda = {lam} not in (0, 1/(2(1+eps)))")
    ss = measure_R(sumset_R(S, S))
    if ss > (3 + eps) * lam:
        raise HypothesisError("doubling", f"lambda(A+A) = {ss} exceeds (3+eps) lambda(A)")
    n_max = math.floor((1 + eps) / (1 - eps))
    n, I, scan = _structure_scan(S, eps, lam, n_max)
    dec = _decompose(S, n, I)
    if dec.reassemble() != S:
        raise AssertionError("decomposition does not reassemble the set")
    if dec.alphas[0] + dec.alphas[n] > (1 + eps) * lam / n:
        raise AssertionError("end pieces exceed (1+eps) lambda / n")
    return DoublingStructure(n, I, dec, scan)


# --- effective dense interval ------------------------------------------------


@dataclass(frozen=True)
class DenseInterval:
    interval: RealInterval
    density: Fraction
    length_floor: Fraction
    density_floor: Fraction
    branch: str


def _dense(alpha: Fraction, d: Fraction, delta: Fraction) -> bool:
    return d > 0 and alpha >= (Fraction(1, 2) + delta / 2) * d


def _egm_normalized(A: RealSimpleSet, delta: Fraction, eps: Fraction):
    alpha = measure_R(A)
    if delta > alpha:
        if alpha == 1:
            # A = [0, 1]: its projection is all of T
            return closed(0, 1), "single-interval"
        n, I, _ = _structure_scan(A, ZERO, alpha, 1)
        s, e = I.start, I.end
        if e <= 1:
            return closed(s, e), "single-interval"
        left, right = closed(0, e - 1), closed(s, 1)
        return (left if left.length >= right.length else right), "split-cover"
    sub_eps = 1 - delta / alpha
    st = doubling_structure(A, sub_eps)
    dec, n = st.decomposition, st.n
    tilde = [dec.alphas[0] + dec.alphas[n]] + dec.alphas[1:n]
    i = next(j for j, m in enumerate(tilde) if m >= alpha / n)
    if i != 0:
        P = dec.pieces[i]
        shift = Fraction(i, n)
        return closed(shift + inf_R(P), shift + sup_R(P)), "inner-piece"
    a0, an, d0, dn = dec.alphas[0], dec.alphas[n], dec.d0, dec.dn
    dense0, densen = _dense(a0, d0, delta), _dense(an, dn, delta)
    head, tail = closed(0, d0), closed(1 - dn, 1)
    if dense0 and densen:
        return (head if d0 >= dn else tail), "both-ends"
    if not densen:
        return head, "head"
    return tail, "tail"


def egm_interval(S: RealSimpleSet, delta, eps) -> DenseInterval:
    """An interval I with lambda(I) >= min(delta/4, delta^2) and density >= 1/2 + delta/4.

    Hypotheses: S non-empty and closed, lambda(S+S) <= 4 lambda(S) - delta,
    lambda(S) < diam(S)/4 + delta/2 and delta > lambda(S) (1 - eps).
    Sets of diameter other than 1 are rescaled; the guarantees are checked
    on the rescaled instance, where they are exact.
    """
    delta, eps = frac(delta), frac(eps)
    _check_window(eps)
    if not S:
        raise HypothesisError("non-empty", "set is empty")
    if not S.is_closed:
        raise HypothesisError("closed", "every component must be a closed interval")
    if delta <= 0:
        raise HypothesisError("delta-positive", f"delta = {delta}")
    lam = measure_R(S)
    d = diameter(S)
    if d == 0:
        raise HypothesisError("diameter", "set has zero diameter")
    if measure_R(sumset_R(S, S)) > 4 * lam - delta:
        raise HypothesisError("doubling", "lambda(S+S) exceeds 4 lambda(S) - delta")
    if not lam < d / 4 + delta / 2:
        raise HypothesisError("measure-cap", "lambda(S) must be below diam/4 + delta/2")
    if not delta > lam * (1 - eps):
        raise HypothesisError("delta-floor", "delta must exceed lambda(S)(1 - eps)")

    A, lo, scale = normalize(S)
    dn = delta / scale
    IB, branch = _egm_normalized(A, dn, eps)
    length_floor = min(dn / 4, dn * dn)
    density_floor = Fraction(1, 2) + dn / 4
    inside_B = measure_R(intersect_R(A, real_set(IB)))
    if IB.length < length_floor or inside_B < density_floor * IB.length:
        raise AssertionError(f"branch {branch} returned {IB}, which misses the guarantees")
    I = closed(lo + scale * IB.a, lo + scale * IB.b)
    return DenseInterval(I, inside_B / IB.length, length_floor, density_floor, branch)
